//! Random instances shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use tbtrellis::{BinaryPoly, PolyMatrix, SymbolSequence};

/// Largest entry degree drawn before any column delay is applied.
pub const MAX_ENTRY_DEGREE: u32 = 2;
/// Largest overall constraint length accepted, keeping trellises small.
pub const MAX_NU: u32 = 6;

/// A canonical parity-check matrix with `m` rows and `n` columns and no
/// zero column. With `delay`, one column is multiplied by `D^l` (`l` in
/// 1..=2) so that a forward reduction is available.
pub fn random_canonical<R: Rng>(rng: &mut R, m: usize, n: usize, delay: bool) -> PolyMatrix {
    loop {
        let rows: Vec<Vec<BinaryPoly>> = (0..m)
            .map(|_| {
                (0..n)
                    .map(|_| BinaryPoly::from_bits(rng.gen_range(0..1u64 << (MAX_ENTRY_DEGREE + 1))))
                    .collect()
            })
            .collect();
        let mut h = PolyMatrix::from_rows(rows).unwrap();
        if delay {
            let j = rng.gen_range(0..n);
            h = h.with_column_multiplied(j, rng.gen_range(1..=2));
        }
        if (0..n).any(|j| h.column(j).iter().all(|p| p.is_zero())) {
            continue;
        }
        if !h.is_canonical() {
            continue;
        }
        if h.overall_constraint_length().unwrap() > MAX_NU {
            continue;
        }
        return h;
    }
}

pub fn random_sequence<R: Rng>(rng: &mut R, width: usize, len: usize) -> SymbolSequence {
    let symbols = (0..len).map(|_| rng.gen_range(0..1u32 << width)).collect();
    SymbolSequence::new(width, symbols).unwrap()
}

/// Random `(m, n)` with `m < n`, `m` in {1, 2}, `n` in {2, 3, 4}.
pub fn random_shape<R: Rng>(rng: &mut R) -> (usize, usize) {
    loop {
        let m = rng.gen_range(1..=2);
        let n = rng.gen_range(2..=4);
        if m < n {
            return (m, n);
        }
    }
}
