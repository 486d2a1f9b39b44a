//! Feedforward convolutional encoding, tail-biting codeword enumeration and dual states.

mod sequence;

use std::fmt;

pub use sequence::SymbolSequence;

use crate::bits;
use crate::error::{Error, Result};
use crate::gf2poly::{CoeffExpansion, PolyMatrix};
use crate::synformer::{SyndromeFormer, SyndromeFormerState};

/// Dual state of an encoder state: a syndrome-former state of the paired `H(D)`.
pub type DualState = SyndromeFormerState;

/// Largest `k0 * N` accepted by [`enumerate_tailbiting_codewords`].
pub const CODEWORD_BUDGET_BITS: u32 = 24;

/// Encoder memory contents.
///
/// For input row `r` of degree `d_r` the state holds
/// `(u^{(r)}_{k-d_r+1}, ..., u^{(r)}_k)`, oldest first, rows in order. The
/// current input is part of the state, so for `G(D) = (D+D^2, D^2, 1+D)` the
/// state at time `k` is `(u_{k-1}, u_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EncoderState {
    pub bits: u32,
    pub width: usize,
}

impl fmt::Display for EncoderState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits::fmt_tuple(self.bits, self.width))
    }
}

/// Feedforward encoder for a `k0 x n` generator matrix.
#[derive(Debug, Clone)]
pub struct Encoder {
    g: PolyMatrix,
    expansion: CoeffExpansion,
    row_degrees: Vec<u32>,
    // Offset of each row's block inside the state tuple.
    offsets: Vec<usize>,
    state_bits: usize,
}

impl Encoder {
    pub fn new(g: &PolyMatrix) -> Result<Self> {
        if g.cols() > SymbolSequence::MAX_WIDTH || g.rows() > SymbolSequence::MAX_WIDTH {
            return Err(Error::Dimension("at most 32 inputs and outputs supported".into()));
        }
        let row_degrees = g.row_degrees()?;
        let mut offsets = Vec::with_capacity(row_degrees.len());
        let mut acc = 0usize;
        for &d in &row_degrees {
            offsets.push(acc);
            acc += d as usize;
        }
        if acc > 30 {
            return Err(Error::Dimension(format!("{acc} encoder state bits, at most 30 supported")));
        }
        Ok(Encoder {
            g: g.clone(),
            expansion: g.expand(),
            row_degrees,
            offsets,
            state_bits: acc,
        })
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.g
    }

    pub fn inputs(&self) -> usize {
        self.g.rows()
    }

    pub fn outputs(&self) -> usize {
        self.g.cols()
    }

    pub fn state_bits(&self) -> usize {
        self.state_bits
    }

    pub fn memory(&self) -> usize {
        self.g.memory_length()
    }

    pub fn row_degrees(&self) -> &[u32] {
        &self.row_degrees
    }

    /// `u^{(r)}_{k-age}` as stored in state `state` (the state at time `k`);
    /// `age < d_r`.
    pub(crate) fn state_input(&self, state: u32, r: usize, age: usize) -> bool {
        let d = self.row_degrees[r] as usize;
        bits::get(state, self.state_bits, self.offsets[r] + d - 1 - age)
    }

    /// Assembles a state from `input(r, age)` = `u^{(r)}_{k-age}`.
    pub(crate) fn state_from_inputs<F: Fn(usize, usize) -> bool>(&self, input: F) -> u32 {
        let mut out = 0u32;
        for r in 0..self.inputs() {
            let d = self.row_degrees[r] as usize;
            for age in 0..d {
                if input(r, age) {
                    out |= bits::unit(self.state_bits, self.offsets[r] + d - 1 - age);
                }
            }
        }
        out
    }

    /// Clocks in the `k0`-bit input `u` from `state` (time `k-1`), returning
    /// the state at time `k` and the code symbol `y_k`.
    pub fn step(&self, state: u32, u: u32) -> (u32, u32) {
        let (k0, n) = (self.inputs(), self.outputs());
        let mut y = 0u32;
        let mut next = 0u32;
        for r in 0..k0 {
            let d = self.row_degrees[r] as usize;
            let current = bits::get(u, k0, r);
            // y += sum_i u_{k-i} G_i[r]
            for i in 0..=d {
                let bit = if i == 0 {
                    current
                } else {
                    // u_{k-i} with i >= 1 is age i-1 relative to time k-1.
                    self.state_input(state, r, i - 1)
                };
                if bit {
                    let gi = &self.expansion.matrices()[i];
                    for j in 0..n {
                        if gi.get(r, j) {
                            y ^= bits::unit(n, j);
                        }
                    }
                }
            }
            // Shift the row block: drop the oldest, append u_k.
            for pos in 0..d {
                let bit = if pos + 1 < d {
                    // new position pos holds age d-1-pos at time k = age d-2-pos at k-1
                    self.state_input(state, r, d - 2 - pos)
                } else {
                    current
                };
                if bit {
                    next |= bits::unit(self.state_bits, self.offsets[r] + pos);
                }
            }
        }
        (next, y)
    }

    /// Encoder state `beta_k` of the cyclic information sequence `u`.
    pub fn state_at(&self, u: &SymbolSequence, k: i64) -> EncoderState {
        let k0 = self.inputs();
        let mut bits_out = 0u32;
        for r in 0..k0 {
            let d = self.row_degrees[r] as usize;
            for pos in 0..d {
                let t = k - (d as i64 - 1 - pos as i64);
                if bits::get(u.cyclic(t), k0, r) {
                    bits_out |= bits::unit(self.state_bits, self.offsets[r] + pos);
                }
            }
        }
        EncoderState {
            bits: bits_out,
            width: self.state_bits,
        }
    }
}

/// Tail-biting encoding by cyclic convolution: `y_k = sum_i u_{<k-i>} G_i`.
pub fn encode_tailbiting(g: &PolyMatrix, u: &SymbolSequence) -> Result<SymbolSequence> {
    let (k0, n) = (g.rows(), g.cols());
    if u.width() != k0 {
        return Err(Error::Dimension(format!(
            "information symbols have {} bits, expected {k0}",
            u.width()
        )));
    }
    let mem = g.memory_length();
    if u.len() < mem.max(1) {
        return Err(Error::LengthTooShort {
            length: u.len(),
            required: mem.max(1),
        });
    }
    let exp = g.expand();
    let mut out = Vec::with_capacity(u.len());
    for k in 1..=u.len() as i64 {
        let mut y = 0u32;
        for (i, gi) in exp.matrices().iter().enumerate() {
            let ui = u.cyclic(k - i as i64);
            for r in 0..k0 {
                if bits::get(ui, k0, r) {
                    for j in 0..n {
                        if gi.get(r, j) {
                            y ^= bits::unit(n, j);
                        }
                    }
                }
            }
        }
        out.push(y);
    }
    SymbolSequence::new(n, out)
}

/// A tail-biting codeword together with its information word and start state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Codeword {
    /// `beta_0 = beta_N`.
    pub start: EncoderState,
    pub code: SymbolSequence,
    pub info: SymbolSequence,
}

/// Every tail-biting codeword of length `n`, sorted by start state then code.
pub fn enumerate_tailbiting_codewords(g: &PolyMatrix, n: usize) -> Result<Vec<Codeword>> {
    let encoder = Encoder::new(g)?;
    let k0 = g.rows();
    let info_bits = (k0 * n) as u32;
    if info_bits > CODEWORD_BUDGET_BITS {
        return Err(Error::BudgetExceeded {
            required_bits: info_bits,
            budget_bits: CODEWORD_BUDGET_BITS,
        });
    }
    let mut out = Vec::with_capacity(1 << info_bits);
    for word in 0u64..(1u64 << info_bits) {
        let symbols = (0..n)
            .map(|k| ((word >> ((n - 1 - k) * k0)) & ((1 << k0) - 1)) as u32)
            .collect();
        let info = SymbolSequence::new(k0, symbols)?;
        let code = encode_tailbiting(g, &info)?;
        let start = encoder.state_at(&info, n as i64);
        out.push(Codeword { start, code, info });
    }
    out.sort();
    Ok(out)
}

/// `beta*_k`: the syndrome-former state of `h` driven by the code symbols
/// `(y_{k-M+1}, ..., y_k)`.
pub fn dual_state(h: &PolyMatrix, y_history: &[u32]) -> Result<DualState> {
    SyndromeFormer::new(h)?.state_from_history(y_history)
}

/// Dual state of encoder state `beta` of `g`, with respect to `h`.
///
/// The code symbols in the window are produced from the inputs stored in
/// `beta`; older inputs are taken as zero, which does not affect the result
/// when `G H^T = 0`.
pub fn dual_state_of(g: &PolyMatrix, h: &PolyMatrix, beta: EncoderState) -> Result<DualState> {
    if g.cols() != h.cols() {
        return Err(Error::Dimension(format!(
            "generator has {} columns, parity check has {}",
            g.cols(),
            h.cols()
        )));
    }
    let encoder = Encoder::new(g)?;
    if beta.width != encoder.state_bits() {
        return Err(Error::Dimension(format!(
            "encoder state has {} bits, expected {}",
            beta.width,
            encoder.state_bits()
        )));
    }
    let former = SyndromeFormer::new(h)?;
    let window = former.memory();
    // Replay the stored inputs from the zero state; the last `window` outputs are the history.
    let k0 = g.rows();
    let depth = encoder.row_degrees().iter().copied().max().unwrap_or(0) as usize;
    let mut state = 0u32;
    let mut outputs = Vec::with_capacity(depth);
    for age in (0..depth).rev() {
        let mut u = 0u32;
        for r in 0..k0 {
            if (age as u32) < encoder.row_degrees()[r] && encoder.state_input(beta.bits, r, age) {
                u |= bits::unit(k0, r);
            }
        }
        let (next, y) = encoder.step(state, u);
        state = next;
        outputs.push(y);
    }
    let mut history = vec![0u32; window.saturating_sub(outputs.len())];
    history.extend_from_slice(&outputs[outputs.len().saturating_sub(window)..]);
    former.state_from_history(&history)
}

/// `true` iff `G(D) H^T(D) = 0`.
pub fn check_duality(g: &PolyMatrix, h: &PolyMatrix) -> Result<bool> {
    if g.cols() != h.cols() {
        return Err(Error::Dimension(format!(
            "generator has {} columns, parity check has {}",
            g.cols(),
            h.cols()
        )));
    }
    Ok(g.mul(&h.transpose())?.is_zero())
}
