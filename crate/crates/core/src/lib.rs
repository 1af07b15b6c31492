//! Almost-invertible geometric dimensionality reduction from the unit sphere
//! in `R^(2^n)` onto the unit sphere in `R^(n+1)`.
//!
//! The pipeline runs in three stages:
//!
//! 1. [`polysphere`] fixes a particular recursive coordinate orientation of
//!    the `(2^n - 1)`-sphere whose columns line up with the blade expansion
//!    of a product of `n` commuting rotations.
//! 2. [`fibration::contract`] collapses the `2^n - 1` sphere angles onto the
//!    `n` rotor angles of that product, and [`fibration::project`] sends the
//!    rotor to a unit vector in `R^(n+1)`, replacing trailing rotation
//!    factors by the sign they contribute. Off a measure-zero kernel the
//!    projection inverts exactly ([`fibration::invert_projection`]).
//! 3. [`metrics`] measures how the projection distorts inner products and
//!    locates the pairs it leaves invariant.
//!
//! [`multicomplex`] supplies the underlying commutative algebra, [`curve`]
//! emits the parametric traces whose lobes and kinks characterize the map in
//! three dimensions, and [`verify`] bundles the whole property catalogue
//! into one reproducible report.

pub mod curve;
pub mod error;
pub mod fibration;
pub mod metrics;
pub mod multicomplex;
pub mod polysphere;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};

/// Default absolute tolerance for floating comparisons and kernel proximity.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub(crate) fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
