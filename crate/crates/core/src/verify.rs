//! Reproducible verification report over the whole property catalogue.
//!
//! Each suite draws seeded samples, measures its worst deviation, and passes
//! when that deviation stays within the configured tolerance. Sampling goes
//! through [`crate::sampling::SplitMix64`] and numbers are formatted with a
//! fixed 17-significant-digit convention, so a fixed seed yields a
//! byte-identical report on every run.

use crate::fibration::{invert_projection, mu, project, torus_embed};
use crate::metrics::{closed_form_difference_n2, difference, rotor_inner, AnglePair};
use crate::multicomplex::{closed_form_expansion, rotor_product};
use crate::sampling::SplitMix64;
use crate::{l2_norm, max_abs_diff, Result};
use serde::Serialize;
use std::fmt::Write as _;

/// Knobs of a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    /// Orders swept by the order-parametric suites.
    pub orders: Vec<usize>,
    pub seed: u64,
    /// Pass threshold for every suite.
    pub tolerance: f64,
    /// Draws per suite per order.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            orders: (2..=6).collect(),
            seed: 0,
            tolerance: 1e-9,
            samples: 1000,
        }
    }
}

/// Outcome of one suite at one order.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub property: &'static str,
    pub order: usize,
    pub samples: u64,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// The full report.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub results: Vec<PropertyResult>,
    pub all_pass: bool,
}

impl VerifyReport {
    /// CSV rendering: one row per property/order, full double precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("property,order,samples,max_deviation,tolerance,status\n");
        for r in &self.results {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.property,
                r.order,
                r.samples,
                format_f64(r.max_deviation),
                format_f64(r.tolerance),
                if r.pass { "pass" } else { "fail" }
            );
        }
        out
    }

    /// JSON rendering of the full report.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Full double precision: 17 significant digits in scientific notation.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Runs every suite and collects the report.
pub fn run_verification(config: &VerifyConfig) -> Result<VerifyReport> {
    let mut results = Vec::new();
    let mut rng = SplitMix64::new(config.seed);

    for &order in &config.orders {
        results.push(rotor_identity_suite(config, &mut rng, order));
    }
    for &order in &config.orders {
        results.push(projection_norm_suite(config, &mut rng, order));
    }
    for &order in &config.orders {
        results.push(round_trip_suite(config, &mut rng, order)?);
    }
    for &order in &config.orders {
        if order >= 2 {
            results.push(diagram_suite(config, &mut rng, order)?);
        }
    }
    for &order in &config.orders {
        results.push(inner_product_suite(config, &mut rng, order)?);
    }
    results.push(difference_simplification_suite(config, &mut rng)?);

    let all_pass = results.iter().all(|r| r.pass);
    Ok(VerifyReport {
        config: config.clone(),
        results,
        all_pass,
    })
}

fn outcome(
    property: &'static str,
    order: usize,
    samples: u64,
    max_deviation: f64,
    tolerance: f64,
) -> PropertyResult {
    PropertyResult {
        property,
        order,
        samples,
        max_deviation,
        tolerance,
        pass: max_deviation <= tolerance,
    }
}

/// Product of simple rotations vs its closed-form expansion.
fn rotor_identity_suite(
    config: &VerifyConfig,
    rng: &mut SplitMix64,
    order: usize,
) -> PropertyResult {
    let mut worst = 0.0f64;
    for _ in 0..config.samples {
        let angles = rng.rotor_angles(order);
        let direct = rotor_product(&angles);
        let expanded = closed_form_expansion(&angles).expect("valid angles");
        worst = worst.max(direct.max_abs_diff(&expanded));
    }
    outcome(
        "rotor-closed-form-identity",
        order,
        config.samples as u64,
        worst,
        config.tolerance,
    )
}

/// Projected points stay on the unit sphere.
fn projection_norm_suite(
    config: &VerifyConfig,
    rng: &mut SplitMix64,
    order: usize,
) -> PropertyResult {
    let mut worst = 0.0f64;
    for _ in 0..config.samples {
        let p = project(&rng.rotor_angles(order));
        worst = worst.max((l2_norm(p.coords()) - 1.0).abs());
    }
    outcome(
        "projection-norm",
        order,
        config.samples as u64,
        worst,
        config.tolerance,
    )
}

/// Inverting the projection recovers the rotor angles off the kernel.
fn round_trip_suite(
    config: &VerifyConfig,
    rng: &mut SplitMix64,
    order: usize,
) -> Result<PropertyResult> {
    let mut worst = 0.0f64;
    for _ in 0..config.samples {
        let angles = rng.rotor_angles_off_kernel(order, 1e-6);
        let recovered = invert_projection(&project(&angles), config.tolerance.max(1e-12))?;
        worst = worst.max(max_abs_diff(recovered.theta(), angles.theta()));
    }
    Ok(outcome(
        "projection-round-trip",
        order,
        config.samples as u64,
        worst,
        config.tolerance,
    ))
}

/// Projecting directly equals going through the torus and collapsing it.
fn diagram_suite(
    config: &VerifyConfig,
    rng: &mut SplitMix64,
    order: usize,
) -> Result<PropertyResult> {
    let mut worst = 0.0f64;
    for _ in 0..config.samples {
        let angles = rng.rotor_angles(order);
        let radii: Vec<f64> = (1..order).map(|_| rng.uniform(1.0, 3.0)).collect();
        let through = mu(
            &torus_embed(&angles, &radii)?,
            config.tolerance.max(1e-12),
        )?;
        worst = worst.max(max_abs_diff(through.coords(), project(&angles).coords()));
    }
    Ok(outcome(
        "diagram-commutativity",
        order,
        config.samples as u64,
        worst,
        config.tolerance,
    ))
}

/// The rotor inner product equals the product of angle-difference cosines.
fn inner_product_suite(
    config: &VerifyConfig,
    rng: &mut SplitMix64,
    order: usize,
) -> Result<PropertyResult> {
    let mut worst = 0.0f64;
    for _ in 0..config.samples {
        let alpha = rng.rotor_angles(order);
        let beta = rng.rotor_angles(order);
        let direct = rotor_product(&alpha).inner_product(&rotor_product(&beta))?;
        let closed = rotor_inner(&AnglePair::new(alpha, beta)?);
        worst = worst.max((direct - closed).abs());
    }
    Ok(outcome(
        "inner-product-identity",
        order,
        config.samples as u64,
        worst,
        config.tolerance,
    ))
}

/// The order-2 difference function equals its closed-form simplification.
fn difference_simplification_suite(
    config: &VerifyConfig,
    rng: &mut SplitMix64,
) -> Result<PropertyResult> {
    let mut worst = 0.0f64;
    for _ in 0..config.samples {
        let pair = AnglePair::new(rng.rotor_angles(2), rng.rotor_angles(2))?;
        worst = worst.max((difference(&pair) - closed_form_difference_n2(&pair)?).abs());
    }
    Ok(outcome(
        "difference-simplification",
        2,
        config.samples as u64,
        worst,
        config.tolerance,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config() -> VerifyConfig {
        VerifyConfig {
            orders: vec![2, 3],
            seed: 42,
            tolerance: 1e-9,
            samples: 50,
        }
    }

    #[test]
    fn default_configuration_passes() {
        let report = run_verification(&quick_config()).unwrap();
        assert!(report.all_pass, "{}", report.to_csv());
    }

    #[test]
    fn unattainable_tolerance_reports_failures() {
        let config = VerifyConfig {
            tolerance: 1e-20,
            ..quick_config()
        };
        let report = run_verification(&config).unwrap();
        assert!(!report.all_pass);
        assert!(report.results.iter().any(|r| !r.pass));
        // deviations are still reported
        assert!(report.results.iter().all(|r| r.max_deviation.is_finite()));
    }

    #[test]
    fn reports_are_byte_identical_for_a_fixed_seed() {
        let a = run_verification(&quick_config()).unwrap();
        let b = run_verification(&quick_config()).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn csv_has_one_row_per_result() {
        let report = run_verification(&quick_config()).unwrap();
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), report.results.len() + 1);
        assert!(lines[0].starts_with("property,order,"));
    }

    #[test]
    fn full_precision_formatting_round_trips() {
        for x in [0.1, 2.0 / 3.0, 1e-17, 123_456.789_123_456_78] {
            let s = format_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }
}
