//! Exact computation with Hecke groups G_p, λ_p-binary quadratic forms, the
//! cycle map Φ_p and rational period functions of weight 2k.
//!
//! Every verdict is decided in exact arithmetic over Q(λ_p) or a real
//! quadratic extension Q(λ_p)(√D). Interval arithmetic is used only to fix
//! signs under the embedding λ_p ↦ 2cos(π/p) and as an independent numeric
//! cross-check.

pub mod dynamics;
pub mod error;
pub mod field;
pub mod heckealg;
pub mod numberfield;
pub mod ratfunc;
pub mod rpf;

pub use error::{Error, Result};
pub use field::Field;
pub use heckealg::{Bqf, Mat2};
pub use numberfield::{make_context, Context, NFElem, QElem};
