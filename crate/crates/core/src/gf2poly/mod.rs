//! Polynomials and polynomial matrices over GF(2) in the delay operator `D`.

mod bitmatrix;
mod matrix;
mod parse;
mod poly;

pub use bitmatrix::{dot, rank_of, solve_affine, AffineSolution, BitMatrix};
pub use matrix::{CanonicityReport, CoeffExpansion, PolyMatrix, RowReduction};
pub use poly::{BinaryPoly, Degree};
