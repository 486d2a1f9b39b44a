//! Small reference matrices and sequences used by tests, benchmarks and the CLI docs.
//!
//! `g1`/`h1` form a rate-1/3 code pair with a 4-state trellis whose third
//! parity-check column carries the factor `D`; `h2` has memory 3 and a `D^2`
//! factor in its first column.

use crate::convcode::SymbolSequence;
use crate::gf2poly::PolyMatrix;

/// `G1(D) = (D+D^2, D^2, 1+D)`.
pub fn g1() -> PolyMatrix {
    PolyMatrix::from_exponents(&[&[&[1, 2], &[2], &[0, 1]]]).expect("valid")
}

/// `(1+D, D, 1+D)`: `g1` with its first two columns divided by `D`.
pub fn g1_reduced() -> PolyMatrix {
    PolyMatrix::from_exponents(&[&[&[0, 1], &[1], &[0, 1]]]).expect("valid")
}

/// Parity-check matrix of `g1`:
/// ```text
/// 1, 0, D
/// D, 1+D, 0
/// ```
pub fn h1() -> PolyMatrix {
    PolyMatrix::from_exponents(&[&[&[0], &[], &[1]], &[&[1], &[0, 1], &[]]]).expect("valid")
}

/// `h1` with its third column divided by `D`.
pub fn h1_reduced() -> PolyMatrix {
    PolyMatrix::from_exponents(&[&[&[0], &[], &[0]], &[&[1], &[0, 1], &[]]]).expect("valid")
}

/// ```text
/// D^2+D^3, D, 1
/// D^2, 1+D+D^2, D^2
/// ```
pub fn h2() -> PolyMatrix {
    PolyMatrix::from_exponents(&[&[&[2, 3], &[1], &[0]], &[&[2], &[0, 1, 2], &[2]]])
        .expect("valid")
}

/// `h2` with its first column divided by `D^2`.
pub fn h2_reduced() -> PolyMatrix {
    PolyMatrix::from_exponents(&[&[&[0, 1], &[1], &[0]], &[&[0], &[0, 1, 2], &[2]]])
        .expect("valid")
}

/// `h2` with its second and third columns multiplied by `D^2`; each row is
/// `D^2` times the matching row of [`h2_reduced`].
pub fn h2_delayed() -> PolyMatrix {
    PolyMatrix::from_exponents(&[&[&[2, 3], &[3], &[2]], &[&[2], &[2, 3, 4], &[4]]])
        .expect("valid")
}

/// Received word `110 101 101 011`.
pub fn z1() -> SymbolSequence {
    "110 101 101 011".parse().expect("valid")
}
