//! Brute-force references for the trellis constructions.
//!
//! Nothing here touches the syndrome former, the encoder or the trellis
//! builders: syndromes and codewords are computed by plain cyclic
//! convolution with the coefficient matrices, and the coset is found by
//! scanning every error sequence. Intended for small parameters only.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::convcode::SymbolSequence;
use crate::error::{Error, Result};
use crate::gf2poly::PolyMatrix;

/// Largest number of free bits (`n * N` or `k0 * N`) the oracle scans.
pub const ORACLE_BUDGET_BITS: usize = 24;

pub type PathSet = BTreeSet<SymbolSequence>;

/// First sequence, in lexicographic order, in exactly one of two sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    OnlyLeft(SymbolSequence),
    OnlyRight(SymbolSequence),
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::OnlyLeft(s) => write!(f, "`{s}` only on the left"),
            Mismatch::OnlyRight(s) => write!(f, "`{s}` only on the right"),
        }
    }
}

pub fn assert_equal(left: &PathSet, right: &PathSet) -> std::result::Result<(), Mismatch> {
    let a = left.difference(right).next();
    let b = right.difference(left).next();
    match (a, b) {
        (None, None) => Ok(()),
        (Some(x), None) => Err(Mismatch::OnlyLeft(x.clone())),
        (None, Some(y)) => Err(Mismatch::OnlyRight(y.clone())),
        (Some(x), Some(y)) if x < y => Err(Mismatch::OnlyLeft(x.clone())),
        (_, Some(y)) => Err(Mismatch::OnlyRight(y.clone())),
    }
}

fn check_budget(bits: usize) -> Result<()> {
    if bits > ORACLE_BUDGET_BITS {
        return Err(Error::BudgetExceeded {
            required_bits: bits as u32,
            budget_bits: ORACLE_BUDGET_BITS as u32,
        });
    }
    Ok(())
}

fn bit(v: u32, width: usize, pos: usize) -> bool {
    (v >> (width - 1 - pos)) & 1 == 1
}

/// Bit `k * width + pos` of a flat word holds component `pos` of symbol `k` (0-based).
fn flat_to_sequence(flat: u32, width: usize, len: usize) -> SymbolSequence {
    let symbols = (0..len)
        .map(|k| {
            (0..width).fold(0u32, |acc, pos| {
                let b = (flat >> (k * width + pos)) & 1;
                acc | b << (width - 1 - pos)
            })
        })
        .collect();
    SymbolSequence::new(width, symbols).expect("width fits")
}

/// Cyclic `x H^T`, packed as bit `k * m + q`.
fn cyclic_syndrome(h: &PolyMatrix, x: &[u32]) -> u128 {
    let (m, n, len) = (h.rows(), h.cols(), x.len());
    let mut out = 0u128;
    for k in 0..len {
        for q in 0..m {
            let mut acc = false;
            for j in 0..n {
                let p = h.get(q, j);
                for i in 0..=p.degree().finite().unwrap_or(0) {
                    if p.coeff(i) {
                        let t = (k + len * (i as usize / len + 1) - i as usize) % len;
                        acc ^= bit(x[t], n, j);
                    }
                }
            }
            if acc {
                out |= 1 << (k * m + q);
            }
        }
    }
    out
}

/// All `e` with the same cyclic syndrome as `z`, i.e. `z` plus every
/// tail-biting codeword.
pub fn coset_paths(h: &PolyMatrix, z: &SymbolSequence) -> Result<PathSet> {
    Ok(scan_coset(h, z)?.into_iter().map(|(e, _)| e).collect())
}

/// Coset members grouped by the syndrome-former state they leave at time `N`,
/// keyed by the compacted state label.
pub fn coset_paths_by_state(h: &PolyMatrix, z: &SymbolSequence) -> Result<BTreeMap<u32, PathSet>> {
    let mut out: BTreeMap<u32, PathSet> = BTreeMap::new();
    for (e, s) in scan_coset(h, z)? {
        out.entry(s).or_default().insert(e);
    }
    Ok(out)
}

/// `sigma^{(p)}_q = sum_{i >= p} e_{N-i+p} H_i^T`, compacted over slots
/// with `p <= deg(row q)`, `p`-major.
fn final_state(h: &PolyMatrix, e: &[u32]) -> u32 {
    let (m, n, len) = (h.rows(), h.cols(), e.len());
    let mem = h.memory_length();
    let mut label = 0u32;
    for p in 1..=mem {
        for q in 0..m {
            let deg = (0..n)
                .filter_map(|j| h.get(q, j).degree().finite())
                .max()
                .unwrap_or(0) as usize;
            if p > deg {
                continue;
            }
            let mut acc = false;
            for i in p..=mem {
                let t = (len * (mem / len + 1) + len - 1 - (i - p)) % len;
                for j in 0..n {
                    acc ^= h.get(q, j).coeff(i as u32) && bit(e[t], n, j);
                }
            }
            label = label << 1 | acc as u32;
        }
    }
    label
}

fn scan_coset(h: &PolyMatrix, z: &SymbolSequence) -> Result<Vec<(SymbolSequence, u32)>> {
    let (n, len) = (h.cols(), z.len());
    if z.width() != n {
        return Err(Error::Dimension(format!(
            "received symbols have {} bits, expected {n}",
            z.width()
        )));
    }
    if h.rows() * len > 128 {
        return Err(Error::Dimension("syndrome longer than 128 bits".into()));
    }
    let bits = n * len;
    check_budget(bits)?;
    let target = cyclic_syndrome(h, z.symbols());
    // Syndrome of each unit error, then a Gray-code walk over all errors.
    let units: Vec<u128> = (0..bits)
        .map(|b| {
            let seq = flat_to_sequence(1 << b, n, len);
            cyclic_syndrome(h, seq.symbols())
        })
        .collect();
    let mut out = Vec::new();
    let mut flat = 0u32;
    let mut syn = 0u128;
    for step in 0..(1u64 << bits) {
        if step > 0 {
            let b = step.trailing_zeros() as usize;
            flat ^= 1 << b;
            syn ^= units[b];
        }
        if syn == target {
            let e = flat_to_sequence(flat, n, len);
            let s = final_state(h, e.symbols());
            out.push((e, s));
        }
    }
    out.sort();
    Ok(out)
}

/// Tail-biting codeword of information sequence `u` by cyclic convolution.
fn cyclic_codeword(g: &PolyMatrix, u: &[u32]) -> Vec<u32> {
    let (k0, n, len) = (g.rows(), g.cols(), u.len());
    (0..len)
        .map(|k| {
            (0..n).fold(0u32, |acc, j| {
                let mut b = false;
                for r in 0..k0 {
                    let p = g.get(r, j);
                    for i in 0..=p.degree().finite().unwrap_or(0) as usize {
                        if p.coeff(i as u32) {
                            b ^= bit(u[(k + len * (i / len + 1) - i) % len], k0, r);
                        }
                    }
                }
                acc | (b as u32) << (n - 1 - j)
            })
        })
        .collect()
}

/// Every `(u, y)` pair of length `n_sections`, sorted by `u`.
pub fn codeword_pairs(g: &PolyMatrix, n_sections: usize) -> Result<Vec<(SymbolSequence, SymbolSequence)>> {
    let k0 = g.rows();
    let bits = k0 * n_sections;
    check_budget(bits)?;
    let mut out: Vec<_> = (0..1u32 << bits)
        .map(|flat| {
            let u = flat_to_sequence(flat, k0, n_sections);
            let y = SymbolSequence::new(g.cols(), cyclic_codeword(g, u.symbols()))
                .expect("width fits");
            (u, y)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The set of tail-biting codewords of length `n_sections`.
pub fn codewords(g: &PolyMatrix, n_sections: usize) -> Result<PathSet> {
    Ok(codeword_pairs(g, n_sections)?
        .into_iter()
        .map(|(_, y)| y)
        .collect())
}
