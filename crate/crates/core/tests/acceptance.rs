//! Acceptance suite: every release-gating property at its pinned tolerance.
//!
//! One test per criterion; each prints a single summary line so a test run
//! reads as a checklist. Sample counts and tolerances are fixed here, not
//! configurable, and the seeds make every run identical.

use lgfib_core::curve::{count_nondifferentiable_points, count_petals, CurveSpec};
use lgfib_core::fibration::{
    invert_projection, mu, project, torus_embed, unit_radii,
};
use lgfib_core::metrics::{
    closed_form_difference_n2, difference, invariance_condition_n2, rotor_inner, AnglePair,
    ScanConfig,
};
use lgfib_core::multicomplex::{closed_form_expansion, rotor_product, RotorAngles};
use lgfib_core::polysphere::{embed_sphere, hopf, hopf_polyspherical, SphereAngles};
use lgfib_core::sampling::SplitMix64;
use lgfib_core::Error;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::time::Instant;

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn report(criterion: &str, detail: String) {
    println!("acceptance {criterion}: pass ({detail})");
}

#[test]
fn criterion_01_rotor_closed_form_identity() {
    let started = Instant::now();
    let tol = 1e-12;
    let mut rng = SplitMix64::new(0x01);
    let mut worst = 0.0f64;
    for order in 1..=8 {
        for _ in 0..1000 {
            let angles = rng.rotor_angles(order);
            let direct = rotor_product(&angles);
            let expanded = closed_form_expansion(&angles).unwrap();
            worst = worst.max(direct.max_abs_diff(&expanded));
        }
    }
    let elapsed = started.elapsed();
    assert!(worst <= tol, "worst deviation {worst:e} exceeds {tol:e}");
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "identity sweep took {elapsed:?}, budget is 10 s"
    );
    report(
        "01 rotor closed-form identity",
        format!("orders 1..=8, 1000 draws each, worst {worst:.3e}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_02_projection_norm() {
    let tol = 1e-12;
    let mut rng = SplitMix64::new(0x02);
    let mut worst = 0.0f64;
    for order in 2..=10 {
        for _ in 0..10_000 {
            let p = project(&rng.rotor_angles(order));
            worst = worst.max((l2(p.coords()) - 1.0).abs());
        }
    }
    assert!(worst <= tol, "worst norm deviation {worst:e}");
    report(
        "02 projection norm",
        format!("orders 2..=10, 10^4 draws each, worst {worst:.3e}"),
    );
}

#[test]
fn criterion_03_almost_invertibility() {
    let tol = 1e-9;
    let mut rng = SplitMix64::new(0x03);
    let mut worst = 0.0f64;
    for order in 2..=10 {
        for _ in 0..10_000 {
            let angles = rng.rotor_angles_off_kernel(order, 1e-6);
            let recovered = invert_projection(&project(&angles), 1e-9).unwrap();
            worst = worst.max(max_abs_diff(recovered.theta(), angles.theta()));
        }
    }
    assert!(worst <= tol, "worst round-trip deviation {worst:e}");

    // exact kernel angles must be refused, not inverted
    for order in 2..=10 {
        for pivot in 2..=order {
            let mut theta: Vec<f64> = (0..order).map(|_| rng.uniform(0.0, 1.0)).collect();
            theta[pivot - 1] = FRAC_PI_2;
            let point = project(&RotorAngles::new(theta).unwrap());
            assert!(
                matches!(
                    invert_projection(&point, 1e-9),
                    Err(Error::KernelAmbiguity { .. })
                ),
                "order {order}, pivot {pivot}: kernel input must be ambiguous"
            );
        }
    }
    report(
        "03 almost invertibility",
        format!("orders 2..=10, 10^4 draws each, worst {worst:.3e}; kernel inputs rejected"),
    );
}

#[test]
fn criterion_04_kernel_collapse() {
    let tol = 1e-12;
    let mut rng = SplitMix64::new(0x04);
    let mut worst = 0.0f64;
    for order in 2..=6 {
        for pivot in 2..=order {
            // reference: free angles zeroed, pivot at pi/2, tail fixed
            let tail: Vec<f64> = (pivot + 1..=order).map(|_| rng.uniform(0.0, PI)).collect();
            let mut theta = vec![0.0; order];
            theta[pivot - 1] = FRAC_PI_2;
            theta[pivot..].copy_from_slice(&tail);
            let reference = project(&RotorAngles::new(theta.clone()).unwrap());
            // free angles below the pivot range over the positive half-circle
            for _ in 0..100 {
                let mut sample = theta.clone();
                for slot in sample.iter_mut().take(pivot - 1) {
                    *slot = rng.uniform(0.0, PI);
                }
                let p = project(&RotorAngles::new(sample).unwrap());
                worst = worst.max(max_abs_diff(p.coords(), reference.coords()));
            }
        }
    }
    assert!(worst <= tol, "kernel collapse deviation {worst:e}");

    // the order-2 fiber splits into exactly +/- e_2 at theta_1 = pi
    for _ in 0..100 {
        let up = rng.uniform(0.0, PI);
        let p = project(&RotorAngles::new(vec![up, FRAC_PI_2]).unwrap());
        assert_eq!(p.coords()[2], 1.0);
        assert!(p.coords()[0].abs() <= tol && p.coords()[1].abs() <= tol);

        let down = rng.uniform(PI, TAU);
        let q = project(&RotorAngles::new(vec![down, FRAC_PI_2]).unwrap());
        assert_eq!(q.coords()[2], -1.0);
        assert!(q.coords()[0].abs() <= tol && q.coords()[1].abs() <= tol);
    }
    report(
        "04 kernel collapse",
        format!("orders 2..=6, every pivot, 100 free draws each, worst {worst:.3e}; fiber splits exactly at pi"),
    );
}

#[test]
fn criterion_05_diagram_commutativity() {
    let tol = 1e-12;
    let mut rng = SplitMix64::new(0x05);
    let mut worst = 0.0f64;
    for order in 2..=6 {
        for _ in 0..1000 {
            let angles = rng.rotor_angles(order);
            let radii: Vec<f64> = (1..order).map(|_| rng.uniform(1.0, 3.0)).collect();
            let through = mu(&torus_embed(&angles, &radii).unwrap(), 1e-9).unwrap();
            let direct = project(&angles);
            worst = worst.max(max_abs_diff(through.coords(), direct.coords()));
        }
    }
    assert!(worst <= tol, "diagram deviation {worst:e}");
    report(
        "05 diagram commutativity",
        format!("orders 2..=6, radii in [1,3], 10^3 draws each, worst {worst:.3e}"),
    );
}

#[test]
fn criterion_06_inner_product_identity() {
    let tol = 1e-12;
    let mut rng = SplitMix64::new(0x06);
    let mut worst = 0.0f64;
    // 100_000 pairs spread over the orders up to 8
    for order in 1..=8 {
        for _ in 0..12_500 {
            let alpha = rng.rotor_angles(order);
            let beta = rng.rotor_angles(order);
            let direct = rotor_product(&alpha)
                .inner_product(&rotor_product(&beta))
                .unwrap();
            let closed = rotor_inner(&AnglePair::new(alpha, beta).unwrap());
            worst = worst.max((direct - closed).abs());
        }
    }
    assert!(worst <= tol, "inner-product deviation {worst:e}");
    report(
        "06 inner-product identity",
        format!("10^5 pairs over orders 1..=8, worst {worst:.3e}"),
    );
}

#[test]
fn criterion_07_difference_function() {
    let tol = 1e-12;
    let mut rng = SplitMix64::new(0x07);
    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let pair = AnglePair::new(rng.rotor_angles(2), rng.rotor_angles(2)).unwrap();
        let gap = (difference(&pair) - closed_form_difference_n2(&pair).unwrap()).abs();
        worst = worst.max(gap);
    }
    assert!(worst <= tol, "simplification deviation {worst:e}");

    // center-placed 64^4 grid: the closed-form invariance condition must
    // agree with the thresholded difference cell by cell
    let config = ScanConfig {
        order: 2,
        resolution: 64,
        tol: 1e-9,
        max_evaluations: 20_000_000,
    };
    let mut cells = 0u64;
    let mut mismatches = 0u64;
    lgfib_core::metrics::scan_difference_with(&config, |alpha, beta, d| {
        let pair = AnglePair::new(
            RotorAngles::new(alpha.to_vec()).unwrap(),
            RotorAngles::new(beta.to_vec()).unwrap(),
        )
        .unwrap();
        let condition = invariance_condition_n2(&pair, 1e-9).unwrap();
        if condition != (d <= 1e-9) {
            mismatches += 1;
        }
        cells += 1;
    })
    .unwrap();
    assert_eq!(cells, 64u64.pow(4));
    assert_eq!(mismatches, 0, "invariance condition disagreed on {mismatches} cells");
    report(
        "07 difference function",
        format!("10^5 simplification pairs, worst {worst:.3e}; 64^4 grid, 0 condition mismatches"),
    );
}

#[test]
fn criterion_08_curve_figures() {
    let started = Instant::now();
    for a in 1..=8u32 {
        let spec = CurveSpec::new(a, 4096).unwrap();
        let petals = count_petals(&spec);
        let expected_petals = if a % 2 == 0 { 2 * a as usize } else { a as usize };
        assert_eq!(petals, expected_petals, "multiplier {a} petal count");
        let kinks = count_nondifferentiable_points(&spec);
        let expected_kinks = if a % 2 == 0 { 2 } else { 1 };
        assert_eq!(kinks, expected_kinks, "multiplier {a} kink count");
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "curve sweep took {elapsed:?}, budget is 5 s"
    );
    report(
        "08 curve figures",
        format!("multipliers 1..=8: petals 2a/a and kinks 2/1 by parity, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_09_quadratic_sphere_map_oracle() {
    let tol = 1e-12;
    let mut rng = SplitMix64::new(0x09);
    let mut worst_gap = 0.0f64;
    let mut worst_norm = 0.0f64;
    for _ in 0..10_000 {
        let angles = SphereAngles::new(vec![
            rng.uniform(0.0, PI),
            rng.uniform(0.0, TAU),
            rng.uniform(0.0, PI),
        ])
        .unwrap();
        let point = embed_sphere(&angles);
        let cartesian = hopf(&point, 1e-9).unwrap();
        let closed = hopf_polyspherical(&angles).unwrap();
        worst_gap = worst_gap.max(max_abs_diff(&cartesian, &closed));
        worst_norm = worst_norm.max((l2(&cartesian) - 1.0).abs());
    }
    assert!(worst_gap <= tol, "form disagreement {worst_gap:e}");
    assert!(worst_norm <= tol, "norm deviation {worst_norm:e}");
    report(
        "09 quadratic sphere-map oracle",
        format!("10^4 draws, forms agree within {worst_gap:.3e}, norm within {worst_norm:.3e}"),
    );
}

#[test]
fn pipeline_composition_matches_both_routes() {
    // supporting check: the full reduction equals both factorizations on
    // random inputs, including the contraction step from sphere angles
    let mut rng = SplitMix64::new(0x0a);
    for order in 2..=6 {
        for _ in 0..200 {
            let domains = lgfib_core::polysphere::angle_domains(order).unwrap();
            let theta: Vec<f64> = domains
                .iter()
                .map(|d| match d {
                    lgfib_core::polysphere::AngleDomain::FullCircle => rng.uniform(0.0, TAU),
                    _ => rng.uniform(0.0, PI),
                })
                .collect();
            let sphere = SphereAngles::new(theta).unwrap();
            let rotor = lgfib_core::fibration::contract(&sphere);
            let direct = lgfib_core::fibration::lg(&sphere);
            let via_project = project(&rotor);
            assert_eq!(direct.coords(), via_project.coords());
            let via_torus = mu(
                &torus_embed(&rotor, &unit_radii(order)).unwrap(),
                1e-9,
            )
            .unwrap();
            assert!(max_abs_diff(direct.coords(), via_torus.coords()) <= 1e-12);
        }
    }
    report(
        "pipeline composition",
        "orders 2..=6, 200 draws each, both factorizations agree".to_string(),
    );
}
