//! Inner-product distortion of the projection.
//!
//! For rotors `w1 = prod exp(i_k alpha_k)` and `w2 = prod exp(i_k beta_k)`
//! the inner product in `R^(2^n)` collapses to `prod_k cos(alpha_k - beta_k)`
//! because the real part of a product of independent rotations is the
//! product of the real parts. The difference function
//!
//! `D = | prod_k cos(alpha_k - beta_k) - <P(w1), P(w2)> |`
//!
//! measures how much the projection distorts that inner product; pairs with
//! `D = 0` keep their separation through the reduction. At order 2 the whole
//! expression simplifies to
//! `| sin(alpha_2) sin(beta_2) (cos(alpha_1 - beta_1) - s) |` with `s` the
//! product of the two lead half-circle signs, which pins the invariant
//! region in closed form.
//!
//! The difference surface is not smooth across the half-circle sign flips,
//! so the search for invariant regions is an exhaustive center-placed grid
//! scan, not a descent.

use crate::error::{Error, Result};
use crate::fibration::{project, projection_sign};
use crate::multicomplex::RotorAngles;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Two rotor-angle vectors of equal order, the operand of every metric.
#[derive(Debug, Clone, PartialEq)]
pub struct AnglePair {
    alpha: RotorAngles,
    beta: RotorAngles,
}

impl AnglePair {
    pub fn new(alpha: RotorAngles, beta: RotorAngles) -> Result<Self> {
        if alpha.order() != beta.order() {
            return Err(Error::OrderMismatch(alpha.order(), beta.order()));
        }
        Ok(Self { alpha, beta })
    }

    pub fn order(&self) -> usize {
        self.alpha.order()
    }

    pub fn alpha(&self) -> &RotorAngles {
        &self.alpha
    }

    pub fn beta(&self) -> &RotorAngles {
        &self.beta
    }
}

/// Inner product of the two rotors, in its closed form
/// `prod_k cos(alpha_k - beta_k)`.
pub fn rotor_inner(pair: &AnglePair) -> f64 {
    pair.alpha
        .theta()
        .iter()
        .zip(pair.beta.theta())
        .map(|(a, b)| (a - b).cos())
        .product()
}

/// The difference function: absolute gap between the rotor inner product
/// and the inner product of the two projections. Always in `[0, 2]`.
pub fn difference(pair: &AnglePair) -> f64 {
    let pa = project(&pair.alpha);
    let pb = project(&pair.beta);
    let projected: f64 = pa
        .coords()
        .iter()
        .zip(pb.coords())
        .map(|(a, b)| a * b)
        .sum();
    (rotor_inner(pair) - projected).abs()
}

/// Closed-form simplification of [`difference`] at order 2; validates the
/// step-by-step reduction of the general expression.
pub fn closed_form_difference_n2(pair: &AnglePair) -> Result<f64> {
    if pair.order() != 2 {
        return Err(Error::UnsupportedOrder {
            expected: 2,
            got: pair.order(),
        });
    }
    let (a1, a2) = (pair.alpha.theta_k(1), pair.alpha.theta_k(2));
    let (b1, b2) = (pair.beta.theta_k(1), pair.beta.theta_k(2));
    let sign = projection_sign(a1) * projection_sign(b1);
    Ok((a2.sin() * b2.sin() * ((a1 - b1).cos() - sign)).abs())
}

/// The order-2 invariance condition in closed form: the sine product
/// vanishes, or the lead-angle cosine equals the sign factor.
pub fn invariance_condition_n2(pair: &AnglePair, tol: f64) -> Result<bool> {
    if pair.order() != 2 {
        return Err(Error::UnsupportedOrder {
            expected: 2,
            got: pair.order(),
        });
    }
    let (a1, a2) = (pair.alpha.theta_k(1), pair.alpha.theta_k(2));
    let (b1, b2) = (pair.beta.theta_k(1), pair.beta.theta_k(2));
    let sign = projection_sign(a1) * projection_sign(b1);
    Ok((a2.sin() * b2.sin()).abs() <= tol || ((a1 - b1).cos() - sign).abs() <= tol)
}

/// Whether the pair's inner product survives the projection within `tol`.
pub fn is_invariant_pair(pair: &AnglePair, tol: f64) -> bool {
    difference(pair) <= tol
}

/// Grid specification for a difference scan.
#[derive(Debug, Clone, Serialize)]
pub struct ScanConfig {
    pub order: usize,
    /// Samples per angle; the grid has `resolution^(2n)` cells.
    pub resolution: usize,
    /// Threshold below which a pair counts as invariant.
    pub tol: f64,
    /// Upper bound on total evaluations.
    pub max_evaluations: u128,
}

impl ScanConfig {
    pub fn new(order: usize, resolution: usize, tol: f64) -> Self {
        Self {
            order,
            resolution,
            tol,
            max_evaluations: 100_000_000,
        }
    }

    fn evaluations(&self) -> u128 {
        (self.resolution as u128).pow(2 * self.order as u32)
    }
}

/// One evaluated grid cell.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub difference: f64,
}

/// Aggregates of a completed scan.
#[derive(Debug, Clone, Serialize)]
pub struct ScanSummary {
    pub evaluations: u64,
    pub min_difference: f64,
    pub max_difference: f64,
    pub invariant_count: u64,
    pub invariant_fraction: f64,
}

/// A difference scan with its rows retained.
#[derive(Debug, Clone, Serialize)]
pub struct DifferenceScan {
    pub config: ScanConfig,
    pub rows: Vec<ScanRow>,
    pub summary: ScanSummary,
}

/// Exhaustively evaluates the difference function over a center-placed grid
/// on both angle vectors, streaming each cell to `visit` in row-major order
/// (all alpha indices, then all beta indices, last index fastest).
///
/// Cell centers keep the lead angles off the `pi` sign flip and the other
/// angles off `pi/2`, where the surface is non-smooth.
pub fn scan_difference_with<F>(config: &ScanConfig, mut visit: F) -> Result<ScanSummary>
where
    F: FnMut(&[f64], &[f64], f64),
{
    if config.resolution < 2 {
        return Err(Error::ResolutionTooSmall(config.resolution));
    }
    let total = config.evaluations();
    if total > config.max_evaluations {
        return Err(Error::GridTooLarge {
            size: total,
            cap: config.max_evaluations,
        });
    }
    let n = config.order;
    let res = config.resolution;

    // grid values per angle slot: the lead angle spans the full circle,
    // the rest span the half circle
    let centers = |full: bool| -> Vec<f64> {
        let span = if full { TAU } else { PI };
        (0..res)
            .map(|i| (i as f64 + 0.5) * span / res as f64)
            .collect()
    };
    let full_centers = centers(true);
    let half_centers = centers(false);
    let value_at = |slot: usize, idx: usize| -> f64 {
        if slot.is_multiple_of(n) {
            full_centers[idx]
        } else {
            half_centers[idx]
        }
    };

    let mut index = vec![0usize; 2 * n];
    let mut alpha = vec![0.0; n];
    let mut beta = vec![0.0; n];
    let mut evaluations = 0u64;
    let mut min_difference = f64::INFINITY;
    let mut max_difference = f64::NEG_INFINITY;
    let mut invariant_count = 0u64;

    loop {
        for slot in 0..n {
            alpha[slot] = value_at(slot, index[slot]);
            beta[slot] = value_at(slot, index[n + slot]);
        }
        let pair = AnglePair::new(
            RotorAngles::new(alpha.clone())?,
            RotorAngles::new(beta.clone())?,
        )?;
        let d = difference(&pair);
        evaluations += 1;
        min_difference = min_difference.min(d);
        max_difference = max_difference.max(d);
        if d <= config.tol {
            invariant_count += 1;
        }
        visit(&alpha, &beta, d);

        // odometer, last slot fastest
        let mut slot = 2 * n;
        loop {
            if slot == 0 {
                return Ok(ScanSummary {
                    evaluations,
                    min_difference,
                    max_difference,
                    invariant_count,
                    invariant_fraction: invariant_count as f64 / evaluations as f64,
                });
            }
            slot -= 1;
            index[slot] += 1;
            if index[slot] < res {
                break;
            }
            index[slot] = 0;
        }
    }
}

/// Runs [`scan_difference_with`] and collects every row.
pub fn scan_difference(config: &ScanConfig) -> Result<DifferenceScan> {
    let mut rows = Vec::new();
    let summary = scan_difference_with(config, |alpha, beta, d| {
        rows.push(ScanRow {
            alpha: alpha.to_vec(),
            beta: beta.to_vec(),
            difference: d,
        });
    })?;
    Ok(DifferenceScan {
        config: config.clone(),
        rows,
        summary,
    })
}
