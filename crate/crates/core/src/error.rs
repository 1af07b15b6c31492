//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by construction and by the fallible operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order must be at least 1")]
    ZeroOrder,

    #[error("order {0} exceeds the supported maximum {max}", max = crate::multicomplex::MAX_ORDER)]
    OrderTooLarge(usize),

    #[error("operand orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("unit index {index} out of range 1..={order}")]
    UnitOutOfRange { index: usize, order: usize },

    #[error("expected {expected} values for order {order}, got {got}")]
    LengthMismatch {
        expected: usize,
        got: usize,
        order: usize,
    },

    #[error("{got} values do not form a full angle or coordinate set for any supported order")]
    UnsupportedLength { got: usize },

    #[error("input contains a non-finite value")]
    NonFinite,

    #[error("angle {index} = {value} lies outside its domain {domain}")]
    AngleOutOfDomain {
        index: usize,
        value: f64,
        domain: &'static str,
    },

    #[error("input vector has norm {norm}, expected 1 within tolerance {tol}")]
    NonUnitInput { norm: f64, tol: f64 },

    #[error(
        "projection preimage is ambiguous: components e0..e{} are all below {tol}",
        collapsed - 1
    )]
    KernelAmbiguity { collapsed: usize, tol: f64 },

    #[error("point does not lie on the parameterized surface (residual {residual:e})")]
    OffSurface { residual: f64 },

    #[error("vector is not on the oriented polyspherical manifold (residual {residual:e})")]
    OffManifold { residual: f64 },

    #[error("torus radius {0} is invalid; every radius must be >= 1")]
    InvalidRadius(f64),

    #[error("grid of {size} evaluations exceeds the cap of {cap}")]
    GridTooLarge { size: u128, cap: u128 },

    #[error("resolution must be at least 2, got {0}")]
    ResolutionTooSmall(usize),

    #[error("operation requires order {expected}, got {got}")]
    UnsupportedOrder { expected: usize, got: usize },

    #[error("curve multiplier must be at least 1")]
    ZeroMultiplier,

    #[error("curve needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
