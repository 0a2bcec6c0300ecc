use thiserror::Error;

/// Errors raised by the exact-arithmetic layers and the builders on top of them.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("Hecke groups G_p require p >= 3, got p = {0}")]
    InvalidP(i64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands live in different number fields (p = {left} vs p = {right})")]
    ContextMismatch { left: u32, right: u32 },

    #[error("operands live over different quadratic extensions")]
    DiscriminantMismatch,

    #[error("sign determination exceeded the precision cap of {0} bits")]
    PrecisionCap(u32),

    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: i64, max: i64 },

    #[error("matrix is not hyperbolic ({0})")]
    NotHyperbolic(&'static str),

    #[error("fixed point lies at infinity (c = 0)")]
    FixedPointAtInfinity,

    #[error("form has A = 0, its root lies at infinity")]
    RootAtInfinity,

    #[error("form is not simple (need A > 0 > C)")]
    NotSimple,

    #[error("discriminant must be positive")]
    NonPositiveDiscriminant,

    #[error("Phi_p branch selection failed: {0} positive branches (input parabolic or nonpositive)")]
    BranchSelection(usize),

    #[error("discriminant is a square in Q(λ_p); the root is not a quadratic irrational")]
    SquareDiscriminant,

    #[error("cycle detection exceeded {0} iterations; input is not a simple form or is corrupted")]
    IterationCap(usize),

    #[error("evaluation point is too close to a pole")]
    PoleProximity,

    #[error("symmetric construction requires odd k, got k = {0}")]
    EvenWeight(u32),

    #[error("class {0} is not Hecke-symmetric")]
    AsymmetricClass(String),

    #[error("sqrt(D) did not cancel in the contribution of class {0}")]
    MalformedCombination(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
