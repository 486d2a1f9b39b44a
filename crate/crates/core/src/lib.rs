//! Tail-biting code and error trellises for binary convolutional codes.
//!
//! * [`gf2poly`]: polynomials and polynomial matrices over GF(2).
//! * [`convcode`]: tail-biting encoding and the encoder state.
//! * [`synformer`]: the syndrome former and its two-pass tail-biting syndrome.
//! * [`trellis`]: trellis construction, path enumeration and DOT export.
//! * [`reduction`]: state reduction by cyclically shifting error or code components.
//! * [`oracle`]: brute-force references used for verification.
//!
//! Symbols are `u32` values read MSB-first: component 1 is the leftmost
//! printed bit.

pub mod bits;
pub mod catalog;
pub mod convcode;
pub mod error;
pub mod gf2poly;
pub mod oracle;
pub mod reduction;
pub mod synformer;
pub mod trellis;

pub use convcode::{encode_tailbiting, Encoder, EncoderState, SymbolSequence};
pub use error::{Error, Result};
pub use gf2poly::{BinaryPoly, Degree, PolyMatrix};
pub use reduction::{
    plan_backward_reduction, plan_forward_reduction, plan_from_shift, reduce_code_trellis, reduce_error_trellis,
    Direction, Shift, ShiftPlan,
};
pub use synformer::{SyndromeFormer, SyndromeFormerState};
pub use trellis::{build_code_trellis, build_error_trellis, TailBitingTrellis, TrellisPath};
