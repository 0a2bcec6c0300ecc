//! Exact arithmetic in Q(λ_p) and its real quadratic extensions.

mod context;
mod elem;
pub mod interval;
mod quad;
pub mod serial;

pub use context::{cyclotomic, make_context, totient, Context, ContextJson, NFContext};
pub use elem::{NFElem, SIGN_CAP_BITS, SIGN_START_BITS};
pub use quad::QElem;
