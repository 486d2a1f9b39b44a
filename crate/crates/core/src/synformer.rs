//! Observer-canonical (adjoint-obvious) realization of the syndrome former `H^T(D)`.
//!
//! The state holds `M x m` memory slots `sigma_{k,p}^{(q)}`, `p = 1..=M`,
//! `q = 1..=m`. Slot `(p, q)` exists only when `p <= deg(row q)`; the rest
//! are structural zeros. Dropping them gives the `nu`-bit compacted label
//! used by trellises, ordered `p`-major then `q`, the same order as the
//! full state vector.

use std::fmt;

use crate::bits;
use crate::convcode::SymbolSequence;
use crate::error::{Error, Result};
use crate::gf2poly::{CoeffExpansion, PolyMatrix};

/// Contents of the syndrome-former memory, including the masked slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SyndromeFormerState {
    bits: u64,
    memory: usize,
    m: usize,
    mask: u64,
}

/// Slot `(p, q)` (1-based) lives at bit `(p-1)*m + (m-q)`, so the low `m`
/// bits are `sigma^{(1)}` laid out like an MSB-first syndrome symbol and a
/// right shift by `m` advances every block by one.
fn slot_bit(m: usize, p: usize, q: usize) -> usize {
    (p - 1) * m + (m - q)
}

impl SyndromeFormerState {
    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn raw_bits(&self) -> u64 {
        self.bits
    }

    /// Mask of the slots that physically exist.
    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// `sigma^{(q)}_{p}`, both 1-based.
    pub fn slot(&self, p: usize, q: usize) -> bool {
        (self.bits >> slot_bit(self.m, p, q)) & 1 == 1
    }

    /// Number of unmasked slots.
    pub fn width(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Compacted label with masked slots dropped, MSB-first in slot order.
    pub fn compact(&self) -> u32 {
        let mut out = 0u32;
        for p in 1..=self.memory {
            for q in 1..=self.m {
                let b = slot_bit(self.m, p, q);
                if (self.mask >> b) & 1 == 1 {
                    out = (out << 1) | ((self.bits >> b) & 1) as u32;
                }
            }
        }
        out
    }

    /// Slot-wise sum.
    pub fn add(&self, other: &SyndromeFormerState) -> Result<SyndromeFormerState> {
        if self.mask != other.mask || self.memory != other.memory || self.m != other.m {
            return Err(Error::Dimension("states of different syndrome formers".into()));
        }
        Ok(SyndromeFormerState {
            bits: self.bits ^ other.bits,
            ..*self
        })
    }
}

impl fmt::Display for SyndromeFormerState {
    /// Compacted tuple, e.g. `(1,0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits::fmt_tuple(self.compact(), self.width()))
    }
}

/// Output of the two-pass tail-biting syndrome computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailbitingSyndrome {
    /// Final state of the first pass; also the initial and final state of the second.
    pub sigma_fin: SyndromeFormerState,
    /// Syndromes of the second pass, width `m`.
    pub syndrome: SymbolSequence,
}

/// The syndrome former of a fixed parity-check matrix.
#[derive(Debug, Clone)]
pub struct SyndromeFormer {
    h: PolyMatrix,
    expansion: CoeffExpansion,
    m: usize,
    n: usize,
    memory: usize,
    mask: u64,
    // Per input component j: e^{(j)} H_0^T as an m-bit symbol.
    h0_taps: Vec<u32>,
    // Per input component j: e^{(j)} (H_1^T, ..., H_M^T) as state bits.
    state_taps: Vec<u64>,
}

impl SyndromeFormer {
    pub fn new(h: &PolyMatrix) -> Result<Self> {
        let (m, n) = (h.rows(), h.cols());
        let degrees = h.row_degrees()?;
        let memory = h.memory_length();
        if m * memory > 64 {
            return Err(Error::Dimension(format!(
                "syndrome former needs {} memory slots, at most 64 supported",
                m * memory
            )));
        }
        if n > SymbolSequence::MAX_WIDTH || m > SymbolSequence::MAX_WIDTH {
            return Err(Error::Dimension("at most 32 columns and rows supported".into()));
        }
        let mut mask = 0u64;
        for p in 1..=memory {
            for (q, &d) in degrees.iter().enumerate() {
                if p as u32 <= d {
                    mask |= 1 << slot_bit(m, p, q + 1);
                }
            }
        }
        let expansion = h.expand();
        let mut h0_taps = vec![0u32; n];
        let mut state_taps = vec![0u64; n];
        for j in 0..n {
            for q in 1..=m {
                if expansion.matrices()[0].get(q - 1, j) {
                    h0_taps[j] |= bits::unit(m, q - 1);
                }
                for p in 1..=memory {
                    if expansion.matrices()[p].get(q - 1, j) {
                        state_taps[j] |= 1 << slot_bit(m, p, q);
                    }
                }
            }
        }
        Ok(SyndromeFormer {
            h: h.clone(),
            expansion,
            m,
            n,
            memory,
            mask,
            h0_taps,
            state_taps,
        })
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.h
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    /// `nu`, the number of physical memory slots.
    pub fn state_bits(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn zero_state(&self) -> SyndromeFormerState {
        self.state_from_bits(0)
    }

    fn state_from_bits(&self, bits: u64) -> SyndromeFormerState {
        SyndromeFormerState {
            bits: bits & self.mask,
            memory: self.memory,
            m: self.m,
            mask: self.mask,
        }
    }

    /// Inverse of [`SyndromeFormerState::compact`].
    pub fn state_from_compact(&self, label: u32) -> Result<SyndromeFormerState> {
        let width = self.state_bits();
        if width < 32 && label >> width != 0 {
            return Err(Error::UnknownState(bits::fmt_tuple(label, width.max(1))));
        }
        let mut out = 0u64;
        let mut pos = 0;
        for p in 1..=self.memory {
            for q in 1..=self.m {
                let b = slot_bit(self.m, p, q);
                if (self.mask >> b) & 1 == 1 {
                    if bits::get(label, width, pos) {
                        out |= 1 << b;
                    }
                    pos += 1;
                }
            }
        }
        Ok(self.state_from_bits(out))
    }

    fn check_symbol(&self, e: u32) -> Result<()> {
        if self.n < 32 && e >> self.n != 0 {
            return Err(Error::Dimension(format!("symbol does not fit in {} bits", self.n)));
        }
        Ok(())
    }

    /// State after the inputs `(e_{k-M+1}, ..., e_k)`, computed from the
    /// block-triangular `H_i^T` form directly:
    /// `sigma^{(p)} = sum_{i=p..M} e_{k-i+p} H_i^T`.
    pub fn state_from_history(&self, history: &[u32]) -> Result<SyndromeFormerState> {
        if history.len() != self.memory {
            return Err(Error::Dimension(format!(
                "history of {} symbols, expected {}",
                history.len(),
                self.memory
            )));
        }
        for &e in history {
            self.check_symbol(e)?;
        }
        let mem = self.memory;
        let mut out = 0u64;
        for p in 1..=mem {
            for q in 1..=self.m {
                let mut acc = false;
                for i in p..=mem {
                    // e_{k-(i-p)} sits at history[M-1-(i-p)].
                    let e = history[mem - 1 - (i - p)];
                    let hi = &self.expansion.matrices()[i];
                    for j in 0..self.n {
                        acc ^= bits::get(e, self.n, j) && hi.get(q - 1, j);
                    }
                }
                if acc {
                    out |= 1 << slot_bit(self.m, p, q);
                }
            }
        }
        Ok(self.state_from_bits(out))
    }

    /// One clock: `zeta_k = sigma_{k-1}^{(1)} + e_k H_0^T` and
    /// `sigma_k = (sigma_{k-1}^{(2)}, ..., sigma_{k-1}^{(M)}, 0) + e_k (H_1^T, ..., H_M^T)`.
    pub fn step(&self, state: &SyndromeFormerState, e: u32) -> (SyndromeFormerState, u32) {
        let mut zeta = (state.bits & ((1u64 << self.m) - 1)) as u32;
        let mut next = if self.m >= 64 { 0 } else { state.bits >> self.m };
        let mut rest = e;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let j = self.n - 1 - b;
            zeta ^= self.h0_taps[j];
            next ^= self.state_taps[j];
        }
        (self.state_from_bits(next), zeta)
    }

    /// Feeds `z` from `initial`, returning the final state and the syndromes.
    pub fn run(
        &self,
        initial: &SyndromeFormerState,
        z: &SymbolSequence,
    ) -> Result<(SyndromeFormerState, SymbolSequence)> {
        if z.width() != self.n {
            return Err(Error::Dimension(format!(
                "input symbols have {} bits, expected {}",
                z.width(),
                self.n
            )));
        }
        let mut state = *initial;
        let mut out = Vec::with_capacity(z.len());
        for &e in z.symbols() {
            let (next, zeta) = self.step(&state, e);
            out.push(zeta);
            state = next;
        }
        Ok((state, SymbolSequence::new(self.m, out)?))
    }

    /// Two passes over `z`: the first from the zero state yields
    /// `sigma_fin`; the second starts from `sigma_fin` and yields the
    /// syndromes, ending again in `sigma_fin`.
    pub fn tailbiting_syndrome(&self, z: &SymbolSequence) -> Result<TailbitingSyndrome> {
        if z.len() < self.memory.max(1) {
            return Err(Error::LengthTooShort {
                length: z.len(),
                required: self.memory.max(1),
            });
        }
        let (sigma_fin, _) = self.run(&self.zero_state(), z)?;
        let (end, syndrome) = self.run(&sigma_fin, z)?;
        assert_eq!(end, sigma_fin, "second pass must end in sigma_fin");
        Ok(TailbitingSyndrome {
            sigma_fin,
            syndrome,
        })
    }
}

/// State reached after `history = (e_{k-M+1}, ..., e_k)`.
pub fn state_from_history(h: &PolyMatrix, history: &[u32]) -> Result<SyndromeFormerState> {
    SyndromeFormer::new(h)?.state_from_history(history)
}

/// One syndrome-former clock, see [`SyndromeFormer::step`].
pub fn step(
    h: &PolyMatrix,
    state: &SyndromeFormerState,
    e: u32,
) -> Result<(SyndromeFormerState, u32)> {
    let former = SyndromeFormer::new(h)?;
    if state.mask != former.mask || state.memory != former.memory || state.m != former.m {
        return Err(Error::Dimension("state does not belong to this syndrome former".into()));
    }
    former.check_symbol(e)?;
    Ok(former.step(state, e))
}

/// Two-pass tail-biting syndrome computation, see [`SyndromeFormer::tailbiting_syndrome`].
pub fn tailbiting_syndrome(h: &PolyMatrix, z: &SymbolSequence) -> Result<TailbitingSyndrome> {
    SyndromeFormer::new(h)?.tailbiting_syndrome(z)
}
