//! The projection pipeline: contraction of sphere angles onto rotor angles,
//! projection of a rotor onto `S^n`, the explicit inverse off the kernel,
//! and the torus factorization that makes the reduction visualizable.
//!
//! The projection replaces each trailing rotation factor `exp(i_m theta_m)`
//! in the closed-form rotor expansion by the sign `(-1)^floor(theta_m / pi)`
//! it contributes, leaving a unit vector in `R^(n+1)`:
//!
//! `P(rotor) = (prod_k cos theta_k) e_0
//!           + sum_k sin(theta_k) * prod_{l>k} cos(theta_l)
//!                  * prod_{m<k} (-1)^floor(theta_m/pi) * e_k`
//!
//! With canonical angles (`theta_k` in `[0, pi)` for `k >= 2`) every
//! per-component sign product collapses to the single global sign
//! `(-1)^floor(theta_1/pi)` on components `e_2..e_n`.
//!
//! The map is bijective except where some `theta_k = pi/2` (`k >= 2`): the
//! cosine zero wipes out every component below `e_k`, so all lower angles
//! stop mattering (up to the half-circle sign split in `theta_1`). That
//! kernel set has measure zero, and [`invert_projection`] reports it as
//! [`Error::KernelAmbiguity`] instead of guessing a preimage.

use crate::error::{Error, Result};
use crate::multicomplex::{reduce_full_circle, RotorAngles};
use crate::polysphere::SphereAngles;
use crate::{l2_norm, max_abs_diff};
use std::f64::consts::{FRAC_PI_2, PI};

/// A point of `S^n` embedded in `R^(n+1)`, the image of the projection.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedPoint {
    coords: Vec<f64>,
}

impl ProjectedPoint {
    /// Wraps externally supplied coordinates, checking the unit norm.
    pub fn from_coords(coords: Vec<f64>, tol: f64) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::UnsupportedLength { got: coords.len() });
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = l2_norm(&coords);
        if (norm - 1.0).abs() > tol {
            return Err(Error::NonUnitInput { norm, tol });
        }
        Ok(Self { coords })
    }

    pub fn order(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// A point of the partial torus: the image of a rotor under the bijective
/// torus embedding, tagged with the radius offsets that shaped it.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    coords: Vec<f64>,
    radii: Vec<f64>,
}

impl TorusPoint {
    /// Wraps externally supplied torus coordinates with their radii.
    pub fn from_parts(coords: Vec<f64>, radii: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 || coords.len() != radii.len() + 2 {
            return Err(Error::LengthMismatch {
                expected: radii.len() + 2,
                got: coords.len(),
                order: radii.len() + 1,
            });
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        check_radii(&radii)?;
        Ok(Self { coords, radii })
    }

    pub fn order(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }
}

/// Result of probing rotor angles for kernel membership.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelReport {
    /// True when at least one `theta_k` (`k >= 2`) sits within `tol` of `pi/2`.
    pub is_kernel: bool,
    /// The offending indices `k`, ascending.
    pub offending_indices: Vec<usize>,
    /// Tolerance the probe used.
    pub tolerance: f64,
}

/// Description of the preimage set through a kernel point.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberClass {
    /// Smallest `m >= 2` with `theta_m = pi/2`, if any.
    pub pivot: Option<usize>,
    /// Indices whose values the projection discards: `1..m-1` on the kernel
    /// (for index 1 up to the half-circle sign split), empty off it.
    pub free_indices: Vec<usize>,
}

/// The sign `(-1)^floor(theta/pi)` contributed by a rotation factor whose
/// oscillating part is projected away.
pub fn projection_sign(theta: f64) -> f64 {
    if (theta.div_euclid(PI) as i64) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_radii(radii: &[f64]) -> Result<()> {
    for &a in radii {
        if a < 1.0 || !a.is_finite() {
            return Err(Error::InvalidRadius(a));
        }
    }
    Ok(())
}

/// Radius offsets of 1 for every minor circle, the default torus shape.
pub fn unit_radii(order: usize) -> Vec<f64> {
    vec![1.0; order.saturating_sub(1)]
}

/// Contracts the `2^n - 1` sphere angles onto `n` rotor angles by keeping
/// one representative per partition group: the full-circle angle at index
/// `2^n - n` leads, followed by the angles at indices `2^m - 1` for
/// `m = 2..=n`.
///
/// The closed top angle may equal `pi`; rotor canonicalization strips it to
/// `0` and shifts the lead angle by `pi`, which names the same rotor.
pub fn contract(angles: &SphereAngles) -> RotorAngles {
    let n = angles.order();
    let mut rotor = Vec::with_capacity(n);
    rotor.push(angles.theta_k((1 << n) - n));
    for m in 2..=n {
        rotor.push(angles.theta_k((1 << m) - 1));
    }
    RotorAngles::new(rotor).expect("contracted angles are valid rotor angles")
}

/// Projects a rotor onto `S^n` by the boxed sign-product formula; evaluates
/// the per-component sign products literally.
pub fn project(angles: &RotorAngles) -> ProjectedPoint {
    let th = angles.theta();
    let n = th.len();
    let mut suffix_cos = vec![1.0; n + 1];
    for k in (0..n).rev() {
        suffix_cos[k] = suffix_cos[k + 1] * th[k].cos();
    }
    let mut coords = vec![0.0; n + 1];
    coords[0] = suffix_cos[0];
    let mut sign_prefix = 1.0;
    for k in 1..=n {
        coords[k] = sign_prefix * th[k - 1].sin() * suffix_cos[k];
        sign_prefix *= projection_sign(th[k - 1]);
    }
    ProjectedPoint { coords }
}

/// The full reduction: contract, then project.
pub fn lg(angles: &SphereAngles) -> ProjectedPoint {
    project(&contract(angles))
}

/// Flags every `theta_k` (`k >= 2`) within `tol` of `pi/2`, the locus where
/// the projection stops being injective.
pub fn kernel_check(angles: &RotorAngles, tol: f64) -> KernelReport {
    let offending: Vec<usize> = (2..=angles.order())
        .filter(|&k| (angles.theta_k(k) - FRAC_PI_2).abs() <= tol)
        .collect();
    KernelReport {
        is_kernel: !offending.is_empty(),
        offending_indices: offending,
        tolerance: tol,
    }
}

/// Describes the preimage set through the given rotor: the smallest pivot
/// `m` with `theta_m = pi/2` frees every lower index, because
/// `cos(pi/2) = 0` scales all components below `e_m` away.
pub fn fiber_class(angles: &RotorAngles, tol: f64) -> FiberClass {
    let pivot = (2..=angles.order()).find(|&k| (angles.theta_k(k) - FRAC_PI_2).abs() <= tol);
    FiberClass {
        pivot,
        free_indices: pivot.map(|m| (1..m).collect()).unwrap_or_default(),
    }
}

/// Inverts the projection on its bijective region.
///
/// Magnitudes come from scale-free arctangents of each trailing component
/// against the norm of everything below it; the prefix norm through
/// component `k` equals `|prod_{l>k} cos(theta_l)|` exactly, so every gate
/// is relative and deep cosine products cost no precision. Signs chain
/// downward: the highest informative trailing component fixes the global
/// sign (every factor above it is an exact `+1`), consecutive informative
/// components fix each cosine sign, and the lead angle takes whichever of
/// its two half-circle candidates reproduces the global sign.
///
/// Kernel proximity is judged on the recovered angles: any `theta_k`
/// (`k >= 2`) within `tol` of `pi/2` means the lower angles were scaled
/// away and the preimage is a fiber, reported as ambiguity. Off the kernel
/// the recovered angles are re-projected and must reproduce the input.
pub fn invert_projection(point: &ProjectedPoint, tol: f64) -> Result<RotorAngles> {
    let c = point.coords();
    let n = point.order();
    let norm = l2_norm(c);
    if (norm - 1.0).abs() > tol {
        return Err(Error::NonUnitInput { norm, tol });
    }

    // prefix[k] = norm of components 0..k; for a point in the image,
    // prefix[k + 1] = |prod_{l>k} cos(theta_l)|
    let mut prefix = vec![0.0f64; n + 2];
    for (k, &x) in c.iter().enumerate() {
        prefix[k + 1] = prefix[k].hypot(x);
    }
    let informative = |k: usize| c[k].abs() > tol * prefix[k + 1];

    let mut theta = vec![0.0; n];
    let base = reduce_full_circle(c[1].atan2(c[0]));
    let Some(highest) = (2..=n).rev().find(|&k| informative(k)) else {
        // no trailing information: every theta_k (k >= 2) is 0 and the lead
        // angle is read straight off the first two components
        theta[0] = base;
        return finish_inversion(theta, point, tol);
    };
    let global_sign = c[highest].signum();

    // lead angle: the two candidates differ by pi and exactly one of them
    // produces the observed global sign
    let mut chain_sign; // sign of prod_{l > k} cos(theta_l) while ascending
    if projection_sign(base) == global_sign {
        theta[0] = base;
        chain_sign = 1.0;
    } else {
        theta[0] = reduce_full_circle(base + PI);
        chain_sign = -1.0;
    }

    for k in 2..=n {
        if informative(k) {
            let sign_here = global_sign * c[k].signum();
            let cos_sign = chain_sign * sign_here;
            let t = c[k].abs().atan2(prefix[k]);
            theta[k - 1] = if cos_sign >= 0.0 { t } else { PI - t };
            chain_sign = sign_here;
        }
        // an uninformative component forces theta_k = 0, keeping the chain
    }

    let near_kernel: Vec<usize> = (2..=n)
        .filter(|&k| (theta[k - 1] - FRAC_PI_2).abs() <= tol)
        .collect();
    if let Some(&collapsed) = near_kernel.last() {
        return Err(Error::KernelAmbiguity { collapsed, tol });
    }
    finish_inversion(theta, point, tol)
}

fn finish_inversion(theta: Vec<f64>, point: &ProjectedPoint, tol: f64) -> Result<RotorAngles> {
    let rotor = RotorAngles::new(theta)?;
    let residual = max_abs_diff(project(&rotor).coords(), point.coords());
    if residual > 10.0 * tol {
        return Err(Error::OffSurface { residual });
    }
    Ok(rotor)
}

/// Embeds a rotor onto the partial torus: minor circles are offset by the
/// radii `a_2..a_n` so every factor `a_k + cos(theta_k)` stays positive and
/// the map is bijective for fixed radii.
pub fn torus_embed(angles: &RotorAngles, radii: &[f64]) -> Result<TorusPoint> {
    let th = angles.theta();
    let n = th.len();
    if radii.len() + 1 != n {
        return Err(Error::LengthMismatch {
            expected: n - 1,
            got: radii.len(),
            order: n,
        });
    }
    check_radii(radii)?;
    Ok(TorusPoint {
        coords: torus_coords(th, radii),
        radii: radii.to_vec(),
    })
}

fn torus_coords(th: &[f64], radii: &[f64]) -> Vec<f64> {
    let n = th.len();
    let mut suffix = vec![1.0; n + 1];
    for k in (2..=n).rev() {
        suffix[k - 1] = suffix[k] * (radii[k - 2] + th[k - 1].cos());
    }
    let sign = projection_sign(th[0]);
    let mut coords = vec![0.0; n + 1];
    coords[0] = th[0].cos() * suffix[1];
    coords[1] = th[0].sin() * suffix[1];
    for k in 2..=n {
        coords[k] = sign * th[k - 1].sin() * suffix[k];
    }
    coords
}

const TORUS_SEARCH_CAP: usize = 1 << 16;

/// Recovers the unique rotor angles of a torus point.
///
/// The lead angle and the total minor-circle product come straight from the
/// first two components. Ascending through the remaining components, each
/// level yields the ratio `g = sin(theta_k) / (a_k + cos(theta_k))`, whose
/// quadratic has one admissible root when `a_k = 1` and up to two when
/// `a_k > 1`; the spurious branches die against the re-embedding residual.
pub fn torus_invert(point: &TorusPoint, tol: f64) -> Result<RotorAngles> {
    let c = point.coords();
    let n = point.order();
    let rho = c[0].hypot(c[1]);
    if rho == 0.0 {
        // only reachable through underflow; the lead angle is unobservable
        return Err(Error::OffSurface { residual: rho });
    }
    let theta1 = reduce_full_circle(c[1].atan2(c[0]));
    let sign = projection_sign(theta1);

    let mut search = TorusSearch {
        point,
        sign,
        rho,
        theta1,
        partial: Vec::with_capacity(n.saturating_sub(1)),
        best: None,
        visits: 0,
    };
    search.descend(2, 1.0);

    let Some((mut residual, mut theta)) = search.best else {
        return Err(Error::OffSurface {
            residual: f64::INFINITY,
        });
    };
    // the branch search can lose half the mantissa where the two candidate
    // roots nearly coincide; a few least-squares steps against the full
    // coordinate residual restore machine precision
    if let Some((polished_residual, polished)) = polish_torus_angles(&theta, point) {
        if polished_residual < residual {
            residual = polished_residual;
            theta = polished;
        }
    }
    if residual <= 10.0 * tol {
        RotorAngles::new(theta)
    } else {
        Err(Error::OffSurface { residual })
    }
}

/// Gauss-Newton refinement of recovered torus angles. Returns the best
/// iterate and its residual, or `None` when the normal equations degenerate.
fn polish_torus_angles(theta: &[f64], point: &TorusPoint) -> Option<(f64, Vec<f64>)> {
    let n = theta.len();
    let radii = point.radii();
    let target = point.coords();
    let residual_of = |th: &[f64]| max_abs_diff(&torus_coords(th, radii), target);

    let mut current = theta.to_vec();
    let mut best = (residual_of(&current), current.clone());
    for _ in 0..4 {
        if best.0 == 0.0 {
            break;
        }
        let coords = torus_coords(&current, radii);
        let gap: Vec<f64> = target.iter().zip(&coords).map(|(t, c)| t - c).collect();
        let jacobian = torus_jacobian(&current, radii);
        let step = solve_least_squares(&jacobian, &gap, n)?;

        // full step, halved while it leaves the angle domains or regresses
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..6 {
            let candidate: Vec<f64> = current
                .iter()
                .zip(&step)
                .map(|(t, d)| t + scale * d)
                .collect();
            let in_domain = candidate[1..].iter().all(|t| (0.0..PI).contains(t));
            if in_domain {
                let r = residual_of(&candidate);
                if r < best.0 {
                    best = (r, candidate.clone());
                    current = candidate;
                    accepted = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    // wrap the lead angle back into [0, 2*pi); a full-turn shift does not
    // move the torus point
    best.1[0] = reduce_full_circle(best.1[0]);
    Some(best)
}

/// Partial derivatives of the torus coordinates with respect to each angle,
/// with shared-factor products expanded explicitly so near-vanishing
/// offsets never appear in a denominator.
fn torus_jacobian(th: &[f64], radii: &[f64]) -> Vec<Vec<f64>> {
    let n = th.len();
    let sign = projection_sign(th[0]);
    let offset = |l: usize| radii[l - 2] + th[l - 1].cos(); // l >= 2
    let product_above = |k: usize, skip: usize| -> f64 {
        (k + 1..=n)
            .filter(|&l| l != skip)
            .map(offset)
            .product::<f64>()
    };

    let mut jac = vec![vec![0.0; n]; n + 1];
    let q1 = product_above(1, 0);
    jac[0][0] = -th[0].sin() * q1;
    jac[1][0] = th[0].cos() * q1;
    for m in 2..=n {
        let shared = -th[m - 1].sin() * product_above(1, m);
        jac[0][m - 1] = th[0].cos() * shared;
        jac[1][m - 1] = th[0].sin() * shared;
    }
    for k in 2..=n {
        jac[k][k - 1] = sign * th[k - 1].cos() * product_above(k, 0);
        for m in k + 1..=n {
            jac[k][m - 1] = sign * th[k - 1].sin() * -th[m - 1].sin() * product_above(k, m);
        }
    }
    jac
}

/// Solves `min || J x - r ||` through the normal equations with Gaussian
/// elimination; `None` when the system is numerically singular.
fn solve_least_squares(jacobian: &[Vec<f64>], gap: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut ata = vec![vec![0.0; n]; n];
    let mut atb = vec![0.0; n];
    for (row, &g) in jacobian.iter().zip(gap) {
        for i in 0..n {
            for j in 0..n {
                ata[i][j] += row[i] * row[j];
            }
            atb[i] += row[i] * g;
        }
    }
    // gaussian elimination with partial pivoting
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| ata[a][col].abs().total_cmp(&ata[b][col].abs()))?;
        if ata[pivot][col].abs() < 1e-300 {
            return None;
        }
        ata.swap(col, pivot);
        atb.swap(col, pivot);
        for row in col + 1..n {
            let factor = ata[row][col] / ata[col][col];
            let (upper, lower) = ata.split_at_mut(row);
            for (u, l) in upper[col][col..].iter().zip(&mut lower[0][col..]) {
                *l -= factor * u;
            }
            atb[row] -= factor * atb[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = atb[row];
        for j in row + 1..n {
            acc -= ata[row][j] * x[j];
        }
        x[row] = acc / ata[row][row];
    }
    Some(x)
}

struct TorusSearch<'a> {
    point: &'a TorusPoint,
    sign: f64,
    rho: f64,
    theta1: f64,
    partial: Vec<f64>,
    best: Option<(f64, Vec<f64>)>,
    visits: usize,
}

impl TorusSearch<'_> {
    /// `scale` carries `prod_{l=2}^{k-1} (a_l + cos(theta_l))` for the
    /// branch under construction.
    fn descend(&mut self, k: usize, scale: f64) {
        if self.visits > TORUS_SEARCH_CAP {
            return;
        }
        let n = self.point.order();
        if k > n {
            self.visits += 1;
            let mut theta = Vec::with_capacity(n);
            theta.push(self.theta1);
            theta.extend_from_slice(&self.partial);
            let Ok(angles) = RotorAngles::new(theta) else {
                return;
            };
            let Ok(back) = torus_embed(&angles, self.point.radii()) else {
                return;
            };
            let residual = max_abs_diff(back.coords(), self.point.coords());
            if self.best.as_ref().is_none_or(|(r, _)| residual < *r) {
                self.best = Some((residual, angles.theta().to_vec()));
            }
            return;
        }

        let a = self.point.radii()[k - 2];
        let g = self.sign * self.point.coords()[k] * scale / self.rho;
        if !g.is_finite() || g < -1e-9 {
            return; // sin(theta_k) cannot be negative
        }
        let g = g.max(0.0);
        let disc = 1.0 - g * g * (a * a - 1.0);
        if disc < -1e-12 {
            return;
        }
        let sqrt_disc = disc.max(0.0).sqrt();
        // both admissible values of a + cos(theta_k), written without the
        // cancellations that would shred precision as theta approaches pi
        let offset_plus = (1.0 + a * sqrt_disc) / (sqrt_disc + g * g * a);
        let offset_minus = (a - sqrt_disc) / (1.0 + g * g);
        let twin_roots = (offset_plus - offset_minus).abs() > 1e-12;
        for (i, offset) in [offset_plus, offset_minus].into_iter().enumerate() {
            if i == 1 && !twin_roots {
                break;
            }
            // offset = a + cos(theta_k) must stay positive and keep the
            // cosine in range; zero offset would mean theta_k = pi
            if offset <= 1e-300 || !offset.is_finite() || offset > a + 1.0 + 1e-9 {
                continue;
            }
            let cos_t = offset - a;
            let sin_t = (g * offset).clamp(0.0, 1.0);
            self.partial.push(sin_t.atan2(cos_t));
            self.descend(k + 1, scale * offset);
            self.partial.pop();
        }
    }
}

/// Collapses a torus point onto `S^n`: recover the angles, then re-evaluate
/// the parameterization with every radius offset sent to zero, which is
/// exactly the projection of the recovered rotor.
pub fn mu(point: &TorusPoint, tol: f64) -> Result<ProjectedPoint> {
    Ok(project(&torus_invert(point, tol)?))
}
