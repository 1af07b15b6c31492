//! Parametric curves of the order-2 projection.
//!
//! Constraining the second rotor angle to a multiple of the first,
//! `theta_2 = a * theta_1`, traces a closed curve on the image sphere:
//!
//! * `x' = cos(theta_1) cos(a theta_1)`
//! * `y' = sin(theta_1) cos(a theta_1)`
//! * `z' = (-1)^floor(theta_1/pi) * sin(a theta_1)`
//!
//! The XY cross-section is the rose `r = cos(a theta)`: `2a` petals when `a`
//! is even, `a` when it is odd (odd roses are traced twice). The sign factor
//! kinks `z'` where the lead angle crosses a half circle; the two parameter
//! kinks land on one geometric point when `a` is odd and on two distinct
//! points when `a` is even. Both counts are measured from the sampled trace,
//! not assumed.

use crate::error::{Error, Result};
use crate::fibration::project;
use crate::multicomplex::RotorAngles;
use serde::Serialize;
use std::f64::consts::TAU;

/// A parametric curve request: `theta_2 = multiplier * theta_1`, sampled
/// uniformly over a full turn of `theta_1`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurveSpec {
    pub multiplier: u32,
    pub samples: usize,
}

impl CurveSpec {
    pub fn new(multiplier: u32, samples: usize) -> Result<Self> {
        if multiplier == 0 {
            return Err(Error::ZeroMultiplier);
        }
        if samples < 2 {
            return Err(Error::TooFewSamples(samples));
        }
        Ok(Self {
            multiplier,
            samples,
        })
    }
}

/// One sampled point: the projected coordinates next to the plain
/// polyspherical ones, so the two traces can be overlaid.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurveSample {
    pub theta1: f64,
    pub projected: [f64; 3],
    pub plain: [f64; 3],
}

/// Samples the curve at `theta_1 = i * 2pi / samples`, `i = 0..samples`.
pub fn sample_curve(spec: &CurveSpec) -> Vec<CurveSample> {
    let a = spec.multiplier as f64;
    (0..spec.samples)
        .map(|i| {
            let t1 = i as f64 * TAU / spec.samples as f64;
            let t2 = a * t1;
            let p = project(&RotorAngles::new(vec![t1, t2]).expect("finite angles"));
            CurveSample {
                theta1: t1,
                projected: [p.coords()[0], p.coords()[1], p.coords()[2]],
                plain: [t1.cos() * t2.cos(), t1.sin() * t2.cos(), t2.sin()],
            }
        })
        .collect()
}

/// Counts the distinct petals of the XY cross-section.
///
/// The signed radius along the trace is `r = cos(a theta_1)`; its zero
/// crossings bound the lobes. Each lobe's tip direction (the unit direction
/// of its farthest point) identifies it geometrically, which merges the
/// doubly-traced lobes of odd multipliers.
pub fn count_petals(spec: &CurveSpec) -> usize {
    let samples = sample_curve(spec);
    let n = samples.len();
    let radius: Vec<f64> = samples
        .iter()
        .map(|s| s.projected[0] * s.theta1.cos() + s.projected[1] * s.theta1.sin())
        .collect();

    // walk the cyclic trace, cutting a lobe at every sign change
    let mut lobes: Vec<(f64, f64)> = Vec::new(); // (tip angle, tip radius sign)
    let Some(start) = radius.iter().position(|r| r.abs() >= 1e-12) else {
        return 0;
    };
    let mut lobe: Vec<usize> = Vec::new();
    let mut prev_sign = radius[start].signum();
    for step in 0..=n {
        let i = (start + step) % n;
        let r = radius[i];
        if r.abs() < 1e-12 {
            continue;
        }
        if r.signum() != prev_sign && !lobe.is_empty() {
            lobes.push(lobe_tip(&samples, &radius, &lobe));
            lobe.clear();
            prev_sign = r.signum();
        }
        if step < n {
            lobe.push(i);
        }
    }
    if !lobe.is_empty() {
        lobes.push(lobe_tip(&samples, &radius, &lobe));
    }

    // merge lobes whose tip directions coincide
    let mut directions: Vec<f64> = Vec::new();
    for (angle, sign) in lobes {
        let dir = if sign >= 0.0 {
            angle.rem_euclid(TAU)
        } else {
            (angle + std::f64::consts::PI).rem_euclid(TAU)
        };
        let duplicate = directions
            .iter()
            .any(|&d| angular_distance(d, dir) < 0.05);
        if !duplicate {
            directions.push(dir);
        }
    }
    directions.len()
}

fn lobe_tip(samples: &[CurveSample], radius: &[f64], lobe: &[usize]) -> (f64, f64) {
    let &tip = lobe
        .iter()
        .max_by(|&&a, &&b| radius[a].abs().total_cmp(&radius[b].abs()))
        .expect("lobes are nonempty");
    (samples[tip].theta1, radius[tip].signum())
}

fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Counts the distinct points where the projected curve is not
/// differentiable.
///
/// The numerical derivative of `z'` over the cyclic trace jumps where the
/// half-circle sign flips; a step change above ten times the median step
/// change marks a kink. Adjacent marks merge into one event, and events are
/// deduplicated by their location in `R^3`, which folds the two parameter
/// kinks of an odd multiplier onto one geometric point.
pub fn count_nondifferentiable_points(spec: &CurveSpec) -> usize {
    let samples = sample_curve(spec);
    let n = samples.len();
    let dt = TAU / n as f64;
    let deriv: Vec<f64> = (0..n)
        .map(|i| (samples[(i + 1) % n].projected[2] - samples[i].projected[2]) / dt)
        .collect();
    let step: Vec<f64> = (0..n)
        .map(|i| (deriv[(i + 1) % n] - deriv[i]).abs())
        .collect();

    let mut sorted = step.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[n / 2];
    let threshold = 10.0 * median.max(f64::MIN_POSITIVE);

    let flagged: Vec<bool> = step.iter().map(|&s| s > threshold).collect();
    if flagged.iter().all(|&f| f) {
        return 0;
    }

    // group cyclically adjacent flags into events located at the flagged gap
    let mut events: Vec<[f64; 3]> = Vec::new();
    let mut i = 0;
    if flagged[n - 1] {
        // the leading run belongs to the wrap-around cluster
        while i < n && flagged[i] {
            i += 1;
        }
    }
    while i < n {
        if !flagged[i] {
            i += 1;
            continue;
        }
        let mut end = i;
        while flagged[(end + 1) % n] && end + 1 - i < n {
            end += 1;
        }
        let mid = (i + (end - i) / 2 + 1) % n; // the sample between the jumps
        events.push(samples[mid].projected);
        i = end + 1;
    }

    // deduplicate by geometric location
    let mut distinct: Vec<[f64; 3]> = Vec::new();
    for e in events {
        let close = distinct.iter().any(|d| {
            let dist2: f64 = d
                .iter()
                .zip(e.iter())
                .map(|(x, y)| (x - y) * (x - y))
                .sum();
            dist2.sqrt() < 0.1
        });
        if !close {
            distinct.push(e);
        }
    }
    distinct.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::projection_sign;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn spec_validation() {
        assert!(matches!(CurveSpec::new(0, 100), Err(Error::ZeroMultiplier)));
        assert!(matches!(CurveSpec::new(1, 1), Err(Error::TooFewSamples(1))));
    }

    #[test]
    fn first_sample_sits_on_the_first_axis() {
        let spec = CurveSpec::new(1, 64).unwrap();
        let samples = sample_curve(&spec);
        assert_eq!(samples[0].projected, [1.0, 0.0, 0.0]);
        assert_eq!(samples[0].plain, [1.0, 0.0, 0.0]);
    }

    #[test]
    fn quarter_turn_sample_of_the_unit_multiplier() {
        let spec = CurveSpec::new(1, 8).unwrap();
        let s = &sample_curve(&spec)[1]; // theta_1 = pi/4
        assert!((s.theta1 - FRAC_PI_4).abs() < 1e-15);
        assert!((s.projected[0] - 0.5).abs() < 1e-12);
        assert!((s.projected[1] - 0.5).abs() < 1e-12);
        assert!((s.projected[2] - FRAC_PI_4.sin()).abs() < 1e-12);
    }

    #[test]
    fn projected_matches_the_raw_sign_formula() {
        let spec = CurveSpec::new(3, 257).unwrap();
        for s in sample_curve(&spec) {
            let t2 = 3.0 * s.theta1;
            let raw = [
                s.theta1.cos() * t2.cos(),
                s.theta1.sin() * t2.cos(),
                projection_sign(s.theta1) * t2.sin(),
            ];
            for (got, want) in s.projected.iter().zip(raw) {
                assert!((got - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn petal_counts_follow_the_parity_rule() {
        for a in 1..=8u32 {
            let spec = CurveSpec::new(a, 4096).unwrap();
            let expected = if a % 2 == 0 { 2 * a as usize } else { a as usize };
            assert_eq!(count_petals(&spec), expected, "multiplier {a}");
        }
    }

    #[test]
    fn kink_counts_follow_the_parity_rule() {
        for a in 1..=8u32 {
            let spec = CurveSpec::new(a, 4096).unwrap();
            let expected = if a % 2 == 0 { 2 } else { 1 };
            assert_eq!(
                count_nondifferentiable_points(&spec),
                expected,
                "multiplier {a}"
            );
        }
    }

    #[test]
    fn counters_are_stable_across_sample_densities() {
        for samples in [1500, 3000, 8192] {
            assert_eq!(count_petals(&CurveSpec::new(3, samples).unwrap()), 3);
            assert_eq!(count_petals(&CurveSpec::new(4, samples).unwrap()), 8);
            assert_eq!(
                count_nondifferentiable_points(&CurveSpec::new(3, samples).unwrap()),
                1
            );
            assert_eq!(
                count_nondifferentiable_points(&CurveSpec::new(4, samples).unwrap()),
                2
            );
        }
    }
}
