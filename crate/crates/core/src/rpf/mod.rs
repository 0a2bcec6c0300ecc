//! Builders for rational period functions, the exact verifier for the two
//! defining relations, and the pole audit.
//!
//! The verifier is the ground truth. Builders only produce candidates.

mod build;
mod spec;
mod verify;

pub use build::{assemble_class, build_general, build_symmetric, general_coeff_from_symmetric, q_k_0};
pub use spec::{ClassCoeff, ClassSpec, Mode, RpfSpec};
pub use verify::{
    numeric_residuals, pole_audit, relation_t, relation_u, verify, PoleAudit, PoleEntry, VerifyReport,
};

use crate::dynamics::{cycle_from, is_symmetric_cycle};
use crate::error::Result;
use crate::field::Field;
use crate::heckealg::{Branch, Bqf};
use crate::numberfield::{Context, NFElem, QElem};
use crate::ratfunc::{principal_part, q_k_alpha};

/// Check that principal parts at α_Q of RPFs built from Q's class are
/// multiples of q_{k,α}.
///
/// Two scalings (1 and 7) of the general assembly are compared, with ratio
/// exactly 7. For symmetric classes and odd k the symmetric builder is also
/// compared against the general one.
pub fn uniqueness_check(ctx: &Context, k: u32, q: &Bqf) -> Result<bool> {
    let cycle = cycle_from(ctx, q)?;
    let d = cycle.disc().clone();
    let alpha = q.alpha()?;
    let canon = q_k_alpha(q, k, Branch::Plus)?;
    let zero = NFElem::zero(ctx);

    let one = QElem::from_base(NFElem::one(ctx), &d);
    let seven = one.from_int(7);
    let f1 = assemble_class(ctx, k, &cycle, &one)?;
    let f7 = assemble_class(ctx, k, &cycle, &seven)?;
    let pp1 = principal_part(&f1, &alpha);
    let pp7 = principal_part(&f7, &alpha);
    let (Some(r1), Some(r7)) = (canon.ratio_to(&pp1), canon.ratio_to(&pp7)) else {
        return Ok(false);
    };
    if r7 != r1.mul(&seven) {
        return Ok(false);
    }

    if k % 2 == 1 && is_symmetric_cycle(ctx, &cycle)? {
        let sym = build_symmetric(ctx, k, &[(cycle.clone(), NFElem::one(ctx))], &zero, &zero, &zero)?;
        let pps = principal_part(&sym.lift_to(&d), &alpha);
        if canon.ratio_to(&pps).is_none() || pp1.ratio_to(&pps).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
