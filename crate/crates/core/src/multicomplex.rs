//! Commutative multicomplex arithmetic.
//!
//! The order-`n` multicomplex ring extends the reals with `n` commuting
//! imaginary units `i_1, ..., i_n`, each squaring to -1. Products of distinct
//! units form the basis blades, and every subset of units names exactly one
//! blade, so a blade is indexed by the bitmask of the units it contains
//! (bit `k-1` set means `i_k` is a factor; index 0 is the real unit). An
//! element is a dense vector of `2^n` coefficients over that basis.
//!
//! The ring contains zero divisors, so there is no division here; what makes
//! it useful is the abelian group of rotors `prod_k exp(i_k theta_k)`, which
//! lives on the unit sphere of `R^(2^n)`.

use crate::error::{Error, Result};
use std::f64::consts::{PI, TAU};

/// Largest supported order; caps coefficient storage at `2^20` slots.
pub const MAX_ORDER: usize = 20;

/// Multiplies two basis blades given as unit bitmasks.
///
/// Units shared by both operands square to -1, so the sign is
/// `(-1)^popcount(a & b)`; the surviving units are `a ^ b`.
pub fn blade_mul(a: usize, b: usize) -> (f64, usize) {
    let sign = if (a & b).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    (sign, a ^ b)
}

/// A multicomplex number: `2^order` real coefficients over the blade basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Multicomplex {
    order: usize,
    coeffs: Vec<f64>,
}

impl Multicomplex {
    /// Builds an element from its full coefficient vector.
    pub fn new(order: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_order(order)?;
        if coeffs.len() != 1 << order {
            return Err(Error::LengthMismatch {
                expected: 1 << order,
                got: coeffs.len(),
                order,
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { order, coeffs })
    }

    /// The real scalar `x` embedded at the given order.
    pub fn scalar(order: usize, x: f64) -> Result<Self> {
        check_order(order)?;
        let mut coeffs = vec![0.0; 1 << order];
        coeffs[0] = x;
        Ok(Self { order, coeffs })
    }

    /// The multiplicative identity at the given order.
    pub fn one(order: usize) -> Result<Self> {
        Self::scalar(order, 1.0)
    }

    /// The basis blade with the given unit bitmask.
    pub fn blade(order: usize, mask: usize) -> Result<Self> {
        check_order(order)?;
        if mask >= 1 << order {
            return Err(Error::UnitOutOfRange {
                index: mask,
                order,
            });
        }
        let mut coeffs = vec![0.0; 1 << order];
        coeffs[mask] = 1.0;
        Ok(Self { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of the blade with the given unit bitmask.
    pub fn coeff(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    /// Ring product, extended bilinearly from [`blade_mul`].
    ///
    /// Terms landing on the same output blade are accumulated over unordered
    /// index pairs, so `x.mul(y)` and `y.mul(x)` agree bit for bit.
    pub fn mul(&self, rhs: &Multicomplex) -> Result<Multicomplex> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch(self.order, rhs.order));
        }
        let dim = self.coeffs.len();
        let mut out = vec![0.0; dim];
        for (blade, slot) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for a in 0..dim {
                let b = a ^ blade;
                if a > b {
                    continue;
                }
                let (sign, _) = blade_mul(a, b);
                let term = if a == b {
                    self.coeffs[a] * rhs.coeffs[b]
                } else {
                    self.coeffs[a] * rhs.coeffs[b] + self.coeffs[b] * rhs.coeffs[a]
                };
                acc += sign * term;
            }
            *slot = acc;
        }
        Ok(Multicomplex {
            order: self.order,
            coeffs: out,
        })
    }

    /// Componentwise sum.
    pub fn add(&self, rhs: &Multicomplex) -> Result<Multicomplex> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch(self.order, rhs.order));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Multicomplex {
            order: self.order,
            coeffs,
        })
    }

    /// Scales every coefficient.
    pub fn scale(&self, factor: f64) -> Multicomplex {
        Multicomplex {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Euclidean norm of the coefficient vector in `R^(2^n)`.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Standard inner product of the two coefficient vectors in `R^(2^n)`.
    pub fn inner_product(&self, rhs: &Multicomplex) -> Result<f64> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch(self.order, rhs.order));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a * b)
            .sum())
    }

    /// Largest absolute coefficient difference; the comparison used by the
    /// oracle tests.
    pub fn max_abs_diff(&self, rhs: &Multicomplex) -> f64 {
        self.coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge(order));
    }
    Ok(())
}

/// Reduces an angle into `[0, 2*pi)`.
pub(crate) fn reduce_full_circle(x: f64) -> f64 {
    let mut t = x.rem_euclid(TAU);
    // rem_euclid can round a tiny negative input up to exactly 2*pi
    if t >= TAU {
        t = 0.0;
    }
    t
}

/// Reduces an angle into `[0, pi)`; the flag reports whether a `pi` was
/// stripped, which negates the factor `exp(i_k theta)`.
pub(crate) fn reduce_half_circle(x: f64) -> (f64, bool) {
    let t = reduce_full_circle(x);
    if t >= PI {
        (t - PI, true)
    } else {
        (t, false)
    }
}

/// The `n` rotation angles `(theta_1, ..., theta_n)` of a rotor
/// `prod_k exp(i_k theta_k)`.
///
/// Construction canonicalizes: `theta_1` lands in `[0, 2*pi)` and every later
/// angle in `[0, pi)`, using `exp(i_k (t + pi)) = -exp(i_k t)` with the sign
/// absorbed into `theta_1`. Every rotor has exactly one such representation.
#[derive(Debug, Clone, PartialEq)]
pub struct RotorAngles {
    theta: Vec<f64>,
}

impl RotorAngles {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        check_order(theta.len())?;
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut theta = theta;
        let mut flips = 0usize;
        for t in theta.iter_mut().skip(1) {
            let (reduced, flipped) = reduce_half_circle(*t);
            *t = reduced;
            flips += flipped as usize;
        }
        let lead = theta[0] + flips as f64 * PI;
        theta[0] = reduce_full_circle(lead);
        Ok(Self { theta })
    }

    pub fn order(&self) -> usize {
        self.theta.len()
    }

    /// Angles in order; slot `i` holds `theta_(i+1)`.
    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// 1-based accessor for `theta_k`.
    pub fn theta_k(&self, k: usize) -> f64 {
        self.theta[k - 1]
    }
}

/// `exp(i_k * theta)` at the given order: `cos theta` on the real blade and
/// `sin theta` on the blade of `i_k`.
pub fn exp_simple(k: usize, theta: f64, order: usize) -> Result<Multicomplex> {
    check_order(order)?;
    if k == 0 || k > order {
        return Err(Error::UnitOutOfRange { index: k, order });
    }
    let mut coeffs = vec![0.0; 1 << order];
    coeffs[0] = theta.cos();
    coeffs[1 << (k - 1)] = theta.sin();
    Multicomplex::new(order, coeffs)
}

/// The rotor `prod_{k=1..n} exp(i_k theta_k)`, evaluated as a chain of simple
/// rotations applied left to right.
///
/// Each factor pairs blade `b` (without `i_k`) with `b | unit_k`, so a step
/// is the plane rotation `(low, high) -> (c*low - s*high, c*high + s*low)`
/// over every such pair.
pub fn rotor_product(angles: &RotorAngles) -> Multicomplex {
    let n = angles.order();
    let dim = 1usize << n;
    let mut coeffs = vec![0.0; dim];
    coeffs[0] = 1.0;
    for (i, t) in angles.theta().iter().enumerate() {
        let unit = 1usize << i;
        let (s, c) = t.sin_cos();
        for b in 0..dim {
            if b & unit != 0 {
                continue;
            }
            let low = coeffs[b];
            let high = coeffs[b | unit];
            coeffs[b] = c * low - s * high;
            coeffs[b | unit] = c * high + s * low;
        }
    }
    Multicomplex { order: n, coeffs }
}

/// Inner product of two rotors through their full coefficient vectors.
///
/// This is the slow reference route; `metrics::rotor_inner` computes the
/// same value as a product of cosines.
pub fn inner_product_of_rotors(alpha: &RotorAngles, beta: &RotorAngles) -> Result<f64> {
    rotor_product(alpha).inner_product(&rotor_product(beta))
}

/// Closed-form expansion of the same rotor:
///
/// `prod_k cos(theta_k)
///  + sum_k i_k * sin(theta_k) * prod_{l>k} cos(theta_l) * prod_{m<k} exp(i_m theta_m)`
///
/// Evaluated term by term through the general ring product, it is the
/// independent oracle for [`rotor_product`]; the two must agree to floating
/// tolerance at every order.
pub fn closed_form_expansion(angles: &RotorAngles) -> Result<Multicomplex> {
    let n = angles.order();
    let th = angles.theta();
    let dim = 1usize << n;
    let mut out = vec![0.0; dim];
    out[0] = th.iter().map(|t| t.cos()).product();

    // prefix holds prod_{m<k} exp(i_m theta_m), grown one factor per term
    let mut prefix = Multicomplex::one(n)?;
    for k in 1..=n {
        let trailing_cos: f64 = th[k..].iter().map(|t| t.cos()).product();
        let weight = th[k - 1].sin() * trailing_cos;
        let unit = 1usize << (k - 1);
        for (b, &coeff) in prefix.coeffs().iter().enumerate() {
            if coeff == 0.0 {
                continue;
            }
            let (sign, blade) = blade_mul(b, unit);
            out[blade] += sign * coeff * weight;
        }
        if k < n {
            prefix = prefix.mul(&exp_simple(k, th[k - 1], n)?)?;
        }
    }
    Multicomplex::new(n, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SplitMix64;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    const I1: usize = 0b01;
    const I2: usize = 0b10;

    #[test]
    fn blade_identity_is_neutral() {
        for b in 0..8 {
            assert_eq!(blade_mul(0, b), (1.0, b));
        }
    }

    #[test]
    fn simple_unit_squares_to_minus_one() {
        assert_eq!(blade_mul(I1, I1), (-1.0, 0));
    }

    #[test]
    fn mixed_blade_contracts_shared_unit() {
        // (i1 i2) * i2 = i1 * (i2)^2 = -i1
        assert_eq!(blade_mul(I1 | I2, I2), (-1.0, I1));
    }

    #[test]
    fn ring_identity() {
        let x = Multicomplex::new(2, vec![1.0, 1.0, 0.0, 0.0]).unwrap();
        let one = Multicomplex::one(2).unwrap();
        assert_eq!(x.mul(&one).unwrap(), x);
    }

    #[test]
    fn zero_divisor_product() {
        // (i + j)(i - j) = i^2 - j^2 = 0 even though neither factor is zero
        let sum = Multicomplex::new(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let diff = Multicomplex::new(2, vec![0.0, 1.0, -1.0, 0.0]).unwrap();
        let product = sum.mul(&diff).unwrap();
        assert!(product.norm() == 0.0, "expected the zero element");
    }

    #[test]
    fn two_factor_rotor_expansion() {
        let (theta, psi) = (0.9, 0.4);
        let w = exp_simple(1, theta, 2)
            .unwrap()
            .mul(&exp_simple(2, psi, 2).unwrap())
            .unwrap();
        let expected = [
            theta.cos() * psi.cos(),
            theta.sin() * psi.cos(),
            theta.cos() * psi.sin(),
            theta.sin() * psi.sin(),
        ];
        for (got, want) in w.coeffs().iter().zip(expected) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn exp_simple_at_zero_is_one() {
        let e = exp_simple(1, 0.0, 2).unwrap();
        assert_eq!(e.coeffs(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn exp_simple_at_pi_is_minus_one() {
        let e = exp_simple(2, PI, 2).unwrap();
        assert!((e.coeff(0) + 1.0).abs() < 1e-12);
        assert!(e.coeff(I2).abs() < 1e-12);
        assert!(e.coeff(I1).abs() == 0.0 && e.coeff(I1 | I2).abs() == 0.0);
    }

    #[test]
    fn exp_simple_third_turn() {
        let e = exp_simple(1, PI / 3.0, 2).unwrap();
        assert!((e.coeff(0) - 0.5).abs() < 1e-12);
        assert!((e.coeff(I1) - 0.866_025_403_784_438_6).abs() < 1e-12);
    }

    #[test]
    fn exp_simple_rejects_out_of_range_unit() {
        assert_eq!(
            exp_simple(3, 1.0, 2),
            Err(Error::UnitOutOfRange { index: 3, order: 2 })
        );
    }

    #[test]
    fn rotor_of_zero_angles_is_one() {
        let r = rotor_product(&RotorAngles::new(vec![0.0, 0.0, 0.0]).unwrap());
        assert_eq!(r.coeff(0), 1.0);
        assert!(r.coeffs()[1..].iter().all(|&c| c == 0.0));
    }

    #[test]
    fn rotor_matches_two_factor_expansion() {
        let (theta, psi) = (2.3, 0.7);
        let r = rotor_product(&RotorAngles::new(vec![theta, psi]).unwrap());
        let expected = [
            theta.cos() * psi.cos(),
            theta.sin() * psi.cos(),
            theta.cos() * psi.sin(),
            theta.sin() * psi.sin(),
        ];
        for (got, want) in r.coeffs().iter().zip(expected) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_form_base_case() {
        let t = 1.1;
        let e = closed_form_expansion(&RotorAngles::new(vec![t]).unwrap()).unwrap();
        assert!((e.coeff(0) - t.cos()).abs() < 1e-15);
        assert!((e.coeff(1) - t.sin()).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_rotor_order_three() {
        let angles = RotorAngles::new(vec![PI / 6.0, PI / 4.0, PI / 3.0]).unwrap();
        let direct = rotor_product(&angles);
        let expanded = closed_form_expansion(&angles).unwrap();
        assert!(direct.max_abs_diff(&expanded) < 1e-12);
    }

    #[test]
    fn rotor_self_inner_product_is_unit() {
        let r = rotor_product(&RotorAngles::new(vec![0.3, 1.4, 2.9]).unwrap());
        assert!((r.inner_product(&r).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_blades_have_zero_inner_product() {
        let one = Multicomplex::one(2).unwrap();
        let i1 = Multicomplex::blade(2, I1).unwrap();
        assert_eq!(one.inner_product(&i1).unwrap(), 0.0);
    }

    #[test]
    fn rotor_inner_product_against_cosine_product() {
        let a = rotor_product(&RotorAngles::new(vec![PI / 3.0, PI / 4.0]).unwrap());
        let b = rotor_product(&RotorAngles::new(vec![0.0, 0.0]).unwrap());
        let got = a.inner_product(&b).unwrap();
        let want = (PI / 3.0).cos() * (PI / 4.0).cos();
        assert!((got - want).abs() < 1e-12);
        assert!((got - 0.353_553_390_593_273_8).abs() < 1e-7);
    }

    #[test]
    fn inner_product_rejects_order_mismatch() {
        let a = Multicomplex::one(2).unwrap();
        let b = Multicomplex::one(3).unwrap();
        assert!(matches!(
            a.inner_product(&b),
            Err(Error::OrderMismatch(2, 3))
        ));
    }

    #[test]
    fn order_cap_is_enforced() {
        assert_eq!(
            Multicomplex::scalar(MAX_ORDER + 1, 1.0),
            Err(Error::OrderTooLarge(MAX_ORDER + 1))
        );
    }

    #[test]
    fn canonicalization_moves_half_turns_into_the_lead_angle() {
        // theta_2 = pi collapses to 0 and shifts theta_1 by pi
        let r = RotorAngles::new(vec![1.2, PI]).unwrap();
        assert!((r.theta_k(1) - (1.2 + PI)).abs() < 1e-15);
        assert_eq!(r.theta_k(2), 0.0);

        // two flips cancel
        let r = RotorAngles::new(vec![0.5, PI + 0.25, 3.0 * PI / 2.0]).unwrap();
        assert!((r.theta_k(1) - 0.5).abs() < 1e-12);
        assert!((r.theta_k(2) - 0.25).abs() < 1e-12);
        assert!((r.theta_k(3) - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn canonicalization_preserves_the_rotor() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..200 {
            let order = 1 + (rng.next_u64() % 5) as usize;
            let raw: Vec<f64> = (0..order).map(|_| rng.uniform(-10.0, 10.0)).collect();
            let canon = RotorAngles::new(raw.clone()).unwrap();
            // evaluate the raw product without canonicalization
            let mut direct = Multicomplex::one(order).unwrap();
            for (i, t) in raw.iter().enumerate() {
                direct = direct.mul(&exp_simple(i + 1, *t, order).unwrap()).unwrap();
            }
            assert!(
                rotor_product(&canon).max_abs_diff(&direct) < 1e-12,
                "canonical form must name the same rotor"
            );
        }
    }

    #[test]
    fn rotor_angle_domains_after_canonicalization() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..500 {
            let order = 1 + (rng.next_u64() % 6) as usize;
            let raw: Vec<f64> = (0..order).map(|_| rng.uniform(-20.0, 20.0)).collect();
            let r = RotorAngles::new(raw).unwrap();
            assert!((0.0..TAU).contains(&r.theta_k(1)));
            for k in 2..=order {
                assert!((0.0..PI).contains(&r.theta_k(k)));
            }
        }
    }

    #[test]
    fn kernel_rotor_coefficients_vanish_below_pivot() {
        // with theta_2 = pi/2 the blades free of i_2 lose their magnitude
        let r = rotor_product(&RotorAngles::new(vec![0.7, FRAC_PI_2]).unwrap());
        assert!(r.coeff(0).abs() < 1e-15);
        assert!(r.coeff(I1).abs() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn mul_commutes_exactly(
            xs in proptest::collection::vec(-1.0f64..1.0, 8),
            ys in proptest::collection::vec(-1.0f64..1.0, 8),
        ) {
            let x = Multicomplex::new(3, xs).unwrap();
            let y = Multicomplex::new(3, ys).unwrap();
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        }

        #[test]
        fn mul_is_associative_to_tolerance(
            xs in proptest::collection::vec(-1.0f64..1.0, 8),
            ys in proptest::collection::vec(-1.0f64..1.0, 8),
            zs in proptest::collection::vec(-1.0f64..1.0, 8),
        ) {
            let x = Multicomplex::new(3, xs).unwrap();
            let y = Multicomplex::new(3, ys).unwrap();
            let z = Multicomplex::new(3, zs).unwrap();
            let left = x.mul(&y).unwrap().mul(&z).unwrap();
            let right = x.mul(&y.mul(&z).unwrap()).unwrap();
            prop_assert!(left.max_abs_diff(&right) < 1e-12);
        }

        #[test]
        fn rotors_have_unit_norm(
            raw in proptest::collection::vec(0.0f64..TAU, 1..=6),
        ) {
            let r = rotor_product(&RotorAngles::new(raw).unwrap());
            prop_assert!((r.norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn closed_form_tracks_rotor_product(
            raw in proptest::collection::vec(0.0f64..TAU, 1..=6),
        ) {
            let angles = RotorAngles::new(raw).unwrap();
            let direct = rotor_product(&angles);
            let expanded = closed_form_expansion(&angles).unwrap();
            prop_assert!(direct.max_abs_diff(&expanded) < 1e-12);
        }
    }
}
