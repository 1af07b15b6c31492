//! Polyspherical coordinates in the particular orientation.
//!
//! A unit sphere of dimension `2^n - 1` splits recursively into two spheres
//! of half the dimension, one scaled by `cos` of a shared angle and one by
//! `sin`. The particular orientation used here fixes the angle domains so
//! that the resulting coordinate columns line up with the blade coefficients
//! of a rotor product:
//!
//! * the cosine branch is always a positive-hemisphere block, every angle in
//!   `[0, pi)`;
//! * the sine branch repeats the general block shape, whose base circle keeps
//!   the full `[0, 2*pi)` range;
//! * the single top-level split angle closes its interval at `pi`.
//!
//! That leaves exactly one full-circle angle, at index `2^n - n`, and one
//! closed-top angle, at index `2^n - 1`. The partition of all `2^n - 1`
//! angle indices into `n` groups (one per rotor angle) is computed by
//! [`theta_partition`].

use crate::error::{Error, Result};
use crate::multicomplex::{reduce_full_circle, MAX_ORDER};
use std::f64::consts::{PI, TAU};

/// Domain assigned to one polyspherical angle index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleDomain {
    /// `[0, pi)` — positive-hemisphere block angles.
    HalfOpen,
    /// `[0, 2*pi)` — the base circle of the general block.
    FullCircle,
    /// `[0, pi]` — the top-level split angle.
    ClosedTop,
}

impl AngleDomain {
    pub fn contains(self, x: f64) -> bool {
        match self {
            AngleDomain::HalfOpen => (0.0..PI).contains(&x),
            AngleDomain::FullCircle => (0.0..TAU).contains(&x),
            AngleDomain::ClosedTop => (0.0..=PI).contains(&x),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            AngleDomain::HalfOpen => "[0, pi)",
            AngleDomain::FullCircle => "[0, 2pi)",
            AngleDomain::ClosedTop => "[0, pi]",
        }
    }
}

/// Domain tags for all `2^n - 1` angles of the order-`n` sphere; slot `i`
/// describes `theta_(i+1)`.
pub fn angle_domains(order: usize) -> Result<Vec<AngleDomain>> {
    check_sphere_order(order)?;
    let mut domains = vec![AngleDomain::HalfOpen; (1 << order) - 1];
    fill_domains(&mut domains, false, true);
    Ok(domains)
}

fn fill_domains(block: &mut [AngleDomain], positive: bool, top_level: bool) {
    if block.len() == 1 {
        block[0] = if positive {
            AngleDomain::HalfOpen
        } else {
            AngleDomain::FullCircle
        };
        return;
    }
    let h = (block.len() - 1) / 2;
    let (lo, rest) = block.split_at_mut(h);
    let (hi, top) = rest.split_at_mut(h);
    fill_domains(lo, true, false);
    fill_domains(hi, positive, false);
    top[0] = if !positive && top_level {
        AngleDomain::ClosedTop
    } else {
        AngleDomain::HalfOpen
    };
}

/// The `2^n - 1` angles of a point on the particular orientation of the
/// `(2^n - 1)`-sphere.
///
/// Construction reduces each angle modulo `2*pi` and then validates it
/// against the domain of its index; out-of-domain angles name points the
/// orientation does not cover and are rejected rather than silently moved.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereAngles {
    order: usize,
    theta: Vec<f64>,
}

impl SphereAngles {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        let order = order_for_angle_count(theta.len())?;
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::NonFinite);
        }
        let domains = angle_domains(order)?;
        let mut theta = theta;
        for (i, t) in theta.iter_mut().enumerate() {
            let mut reduced = reduce_full_circle(*t);
            // a hair under 2*pi is the same direction as 0
            if TAU - reduced < 1e-12 {
                reduced = 0.0;
            }
            if !domains[i].contains(reduced) {
                return Err(Error::AngleOutOfDomain {
                    index: i + 1,
                    value: reduced,
                    domain: domains[i].describe(),
                });
            }
            *t = reduced;
        }
        Ok(Self { order, theta })
    }

    pub fn order(&self) -> usize {
        self.order
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

fn order_for_angle_count(len: usize) -> Result<usize> {
    let dim = len + 1;
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::UnsupportedLength { got: len });
    }
    let order = dim.trailing_zeros() as usize;
    check_sphere_order(order)?;
    Ok(order)
}

fn check_sphere_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge(order));
    }
    Ok(())
}

/// Evaluates the recursive embedding into `R^(2^n)`; the result is a unit
/// vector whose slots line up with the blade indexing of the rotor algebra.
pub fn embed_sphere(angles: &SphereAngles) -> Vec<f64> {
    let mut out = vec![0.0; 1 << angles.order()];
    embed_block(angles.theta(), &mut out);
    out
}

/// Evaluates the same recursion on a raw angle vector without domain
/// validation. The formula is total; only the canonical orientation
/// restricts domains. Contracted angle assignments land outside those
/// domains on purpose, which is what this entry point exists for.
pub fn embed_sphere_raw(theta: &[f64]) -> Result<Vec<f64>> {
    let order = order_for_angle_count(theta.len())?;
    if theta.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut out = vec![0.0; 1 << order];
    embed_block(theta, &mut out);
    Ok(out)
}

pub(crate) fn embed_block(theta: &[f64], out: &mut [f64]) {
    debug_assert_eq!(theta.len() + 1, out.len());
    if theta.len() == 1 {
        let (s, c) = theta[0].sin_cos();
        out[0] = c;
        out[1] = s;
        return;
    }
    let h = (theta.len() - 1) / 2;
    let half = out.len() / 2;
    let (lo, hi) = out.split_at_mut(half);
    embed_block(&theta[..h], lo);
    embed_block(&theta[h..2 * h], hi);
    let (s, c) = theta[theta.len() - 1].sin_cos();
    for x in lo.iter_mut() {
        *x *= c;
    }
    for x in hi.iter_mut() {
        *x *= s;
    }
}

/// One group of sphere-angle indices that the contraction maps onto a single
/// rotor angle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaGroup {
    /// Which rotor angle the group feeds (1-based).
    pub rotor_slot: usize,
    /// The index whose value survives the contraction.
    pub representative: usize,
    /// All member indices, sorted ascending; includes the representative.
    pub members: Vec<usize>,
}

/// Partition of the angle indices `1..=2^n-1` into `n` disjoint groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexPartition {
    order: usize,
    groups: Vec<ThetaGroup>,
}

impl IndexPartition {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Groups ordered by rotor slot.
    pub fn groups(&self) -> &[ThetaGroup] {
        &self.groups
    }

    /// Sphere-angle index feeding rotor angle `k` (1-based).
    pub fn representative(&self, k: usize) -> usize {
        self.groups[k - 1].representative
    }
}

/// Index sets of the contraction, built by the doubling recursion
/// `set_0 = {r}`, `set_l = set_(l-1) + shifted copy`, where the copy of a
/// seed `r = 2^m - 1` at step `l` is shifted by `2^(m+l-1) - 1`.
fn theta_set(m: usize, levels: usize) -> Vec<usize> {
    let mut set = vec![(1usize << m) - 1];
    for l in 1..=levels {
        let shift = (1usize << (m + l - 1)) - 1;
        let shifted: Vec<usize> = set.iter().map(|k| k + shift).collect();
        set.extend(shifted);
        set.sort_unstable();
    }
    set
}

/// Computes the index partition for the order-`n` contraction: the seed-1
/// set (holding the full-circle angle `2^n - n`) feeds rotor angle 1, and
/// for each `m` in `2..=n` the set seeded at `2^m - 1` feeds rotor angle `m`.
pub fn theta_partition(order: usize) -> Result<IndexPartition> {
    check_sphere_order(order)?;
    let mut groups = Vec::with_capacity(order);
    groups.push(ThetaGroup {
        rotor_slot: 1,
        representative: (1 << order) - order,
        members: theta_set(1, order - 1),
    });
    for m in 2..=order {
        groups.push(ThetaGroup {
            rotor_slot: m,
            representative: (1 << m) - 1,
            members: theta_set(m, order - m),
        });
    }
    Ok(IndexPartition { order, groups })
}

/// The classical quadratic sphere map `S^3 -> S^2`, kept as an independent
/// point of comparison for the rotor projection. Both output forms below
/// agree and preserve the unit norm:
///
/// * Cartesian: `(a^2+b^2-c^2-d^2, 2(ad-bc), 2(ac+bd))`
/// * polyspherical: `(cos 2t3, -sin 2t3 sin(t1-t2), sin 2t3 cos(t1-t2))`
pub fn hopf(p: &[f64], tol: f64) -> Result<[f64; 3]> {
    if p.len() != 4 {
        return Err(Error::LengthMismatch {
            expected: 4,
            got: p.len(),
            order: 2,
        });
    }
    let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > tol {
        return Err(Error::NonUnitInput { norm, tol });
    }
    let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
    Ok([
        a * a + b * b - c * c - d * d,
        2.0 * (a * d - b * c),
        2.0 * (a * c + b * d),
    ])
}

/// Closed polyspherical form of [`hopf`] on the order-2 sphere angles.
pub fn hopf_polyspherical(theta: &SphereAngles) -> Result<[f64; 3]> {
    if theta.order() != 2 {
        return Err(Error::UnsupportedOrder {
            expected: 2,
            got: theta.order(),
        });
    }
    let (t1, t2, t3) = (theta.theta_k(1), theta.theta_k(2), theta.theta_k(3));
    Ok([
        (2.0 * t3).cos(),
        -(2.0 * t3).sin() * (t1 - t2).sin(),
        (2.0 * t3).sin() * (t1 - t2).cos(),
    ])
}

/// Recovers the polyspherical angles of a unit vector, inverting
/// [`embed_sphere`].
///
/// Magnitudes come from block norms; signs resolve recursively because every
/// sine factor inside the orientation is nonnegative, so the sine half of a
/// block carries the sign of its enclosing scale. The reconstruction is
/// re-embedded and compared against the input; a residual above `tol` means
/// the vector is not on the oriented manifold.
pub fn recover_sphere_angles(coords: &[f64], tol: f64) -> Result<SphereAngles> {
    let dim = coords.len();
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::UnsupportedLength { got: dim });
    }
    check_sphere_order(dim.trailing_zeros() as usize)?;
    if coords.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let norm = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > tol {
        return Err(Error::NonUnitInput { norm, tol });
    }

    let mut theta = vec![0.0; dim - 1];
    invert_block(coords, &mut theta, false);

    let mut back = vec![0.0; dim];
    embed_block(&theta, &mut back);
    let residual = coords
        .iter()
        .zip(&back)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if residual > 10.0 * tol {
        return Err(Error::OffManifold { residual });
    }
    SphereAngles::new(theta).map_err(|_| Error::OffManifold { residual })
}

/// Recovers angles and the signed scale of one block. Positive blocks carry
/// their sign in the sine half (falling back to the cosine half when the
/// sine half vanishes); general blocks always return a nonnegative scale
/// because they only ever sit under sine factors.
fn invert_block(u: &[f64], theta: &mut [f64], positive: bool) -> f64 {
    if u.len() == 2 {
        return if positive {
            let sgn = base_sign(u[1], u[0]);
            theta[0] = (u[1] * sgn).atan2(u[0] * sgn);
            sgn * u[0].hypot(u[1])
        } else {
            theta[0] = reduce_full_circle(u[1].atan2(u[0]));
            u[0].hypot(u[1])
        };
    }
    let half = u.len() / 2;
    let h = half - 1;
    let top = theta.len() - 1;
    let (lo_theta, rest) = theta.split_at_mut(h);
    let (hi_theta, top_theta) = rest.split_at_mut(h);
    let lam_lo = invert_block(&u[..half], lo_theta, true);
    let lam_hi = invert_block(&u[half..], hi_theta, positive);
    debug_assert_eq!(top, 2 * h);
    if positive {
        let sgn = base_sign(lam_hi, lam_lo);
        top_theta[0] = (lam_hi * sgn).atan2(lam_lo * sgn);
        sgn * lam_lo.hypot(lam_hi)
    } else {
        // lam_hi >= 0 here, so the angle lands in [0, pi]
        top_theta[0] = lam_hi.atan2(lam_lo);
        lam_lo.hypot(lam_hi)
    }
}

fn base_sign(preferred: f64, fallback: f64) -> f64 {
    if preferred != 0.0 {
        preferred.signum()
    } else if fallback != 0.0 {
        fallback.signum()
    } else {
        1.0
    }
}
