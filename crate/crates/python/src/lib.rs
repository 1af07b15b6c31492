//! Python bindings: the multicomplex algebra, the projection pipeline and
//! the distortion metrics, with angles passed as plain lists of radians.

use lgfib_core::{curve, fibration, metrics, multicomplex, polysphere, verify};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn lift<T>(result: lgfib_core::Result<T>) -> PyResult<T> {
    result.map_err(|err| PyValueError::new_err(err.to_string()))
}

fn rotor(theta: Vec<f64>) -> PyResult<multicomplex::RotorAngles> {
    lift(multicomplex::RotorAngles::new(theta))
}

fn sphere(theta: Vec<f64>) -> PyResult<polysphere::SphereAngles> {
    lift(polysphere::SphereAngles::new(theta))
}

/// A multicomplex number: 2^order coefficients over the blade basis.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Multicomplex {
    inner: multicomplex::Multicomplex,
}

#[pymethods]
impl Multicomplex {
    #[new]
    fn new(order: usize, coeffs: Vec<f64>) -> PyResult<Self> {
        Ok(Self {
            inner: lift(multicomplex::Multicomplex::new(order, coeffs))?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn coeffs(&self) -> Vec<f64> {
        self.inner.coeffs().to_vec()
    }

    fn mul(&self, other: &Multicomplex) -> PyResult<Multicomplex> {
        Ok(Multicomplex {
            inner: lift(self.inner.mul(&other.inner))?,
        })
    }

    fn add(&self, other: &Multicomplex) -> PyResult<Multicomplex> {
        Ok(Multicomplex {
            inner: lift(self.inner.add(&other.inner))?,
        })
    }

    fn scale(&self, factor: f64) -> Multicomplex {
        Multicomplex {
            inner: self.inner.scale(factor),
        }
    }

    fn inner_product(&self, other: &Multicomplex) -> PyResult<f64> {
        lift(self.inner.inner_product(&other.inner))
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    fn __repr__(&self) -> String {
        format!(
            "Multicomplex(order={}, coeffs={:?})",
            self.inner.order(),
            self.inner.coeffs()
        )
    }
}

/// Product of two basis blades: returns (sign, blade_index).
#[pyfunction]
fn blade_mul(a: usize, b: usize) -> (f64, usize) {
    multicomplex::blade_mul(a, b)
}

/// exp(i_k * theta) at the given order.
#[pyfunction]
fn exp_simple(k: usize, theta: f64, order: usize) -> PyResult<Multicomplex> {
    Ok(Multicomplex {
        inner: lift(multicomplex::exp_simple(k, theta, order))?,
    })
}

/// The rotor prod_k exp(i_k theta_k) as a multicomplex number.
#[pyfunction]
fn rotor_product(theta: Vec<f64>) -> PyResult<Multicomplex> {
    Ok(Multicomplex {
        inner: multicomplex::rotor_product(&rotor(theta)?),
    })
}

/// Closed-form expansion of the same rotor; the oracle for rotor_product.
#[pyfunction]
fn closed_form_expansion(theta: Vec<f64>) -> PyResult<Multicomplex> {
    Ok(Multicomplex {
        inner: lift(multicomplex::closed_form_expansion(&rotor(theta)?))?,
    })
}

/// Canonical rotor angles: theta_1 in [0, 2pi), the rest in [0, pi).
#[pyfunction]
fn canonical_rotor_angles(theta: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(rotor(theta)?.theta().to_vec())
}

/// Embeds 2^n - 1 sphere angles as a unit vector in R^(2^n).
#[pyfunction]
fn embed_sphere(theta: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(polysphere::embed_sphere(&sphere(theta)?))
}

/// Recovers the sphere angles of a unit vector in R^(2^n).
#[pyfunction]
#[pyo3(signature = (coords, tol = 1e-9))]
fn recover_sphere_angles(coords: Vec<f64>, tol: f64) -> PyResult<Vec<f64>> {
    Ok(lift(polysphere::recover_sphere_angles(&coords, tol))?
        .theta()
        .to_vec())
}

/// The contraction groups: list of (rotor_slot, representative, members).
#[pyfunction]
fn theta_partition(order: usize) -> PyResult<Vec<(usize, usize, Vec<usize>)>> {
    Ok(lift(polysphere::theta_partition(order))?
        .groups()
        .iter()
        .map(|g| (g.rotor_slot, g.representative, g.members.clone()))
        .collect())
}

/// The quadratic comparison map from the 3-sphere to the 2-sphere.
#[pyfunction]
#[pyo3(signature = (p, tol = 1e-9))]
fn hopf(p: Vec<f64>, tol: f64) -> PyResult<[f64; 3]> {
    lift(polysphere::hopf(&p, tol))
}

/// Contracts sphere angles onto rotor angles.
#[pyfunction]
fn contract(theta: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(fibration::contract(&sphere(theta)?).theta().to_vec())
}

/// Projects rotor angles onto the unit sphere in R^(n+1).
#[pyfunction]
fn project(theta: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(fibration::project(&rotor(theta)?).coords().to_vec())
}

/// The full reduction: contract sphere angles, then project.
#[pyfunction]
fn lg(theta: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(fibration::lg(&sphere(theta)?).coords().to_vec())
}

/// Inverts the projection; raises ValueError on kernel-ambiguous points.
#[pyfunction]
#[pyo3(signature = (coords, tol = 1e-9))]
fn invert_projection(coords: Vec<f64>, tol: f64) -> PyResult<Vec<f64>> {
    let point = lift(fibration::ProjectedPoint::from_coords(coords, tol))?;
    Ok(lift(fibration::invert_projection(&point, tol))?
        .theta()
        .to_vec())
}

/// Kernel probe: returns (is_kernel, offending_indices).
#[pyfunction]
#[pyo3(signature = (theta, tol = 1e-9))]
fn kernel_check(theta: Vec<f64>, tol: f64) -> PyResult<(bool, Vec<usize>)> {
    let report = fibration::kernel_check(&rotor(theta)?, tol);
    Ok((report.is_kernel, report.offending_indices))
}

/// Preimage description: returns (pivot or None, free_indices).
#[pyfunction]
#[pyo3(signature = (theta, tol = 1e-9))]
fn fiber_class(theta: Vec<f64>, tol: f64) -> PyResult<(Option<usize>, Vec<usize>)> {
    let class = fibration::fiber_class(&rotor(theta)?, tol);
    Ok((class.pivot, class.free_indices))
}

/// Embeds rotor angles onto the partial torus; radii default to 1.
#[pyfunction]
#[pyo3(signature = (theta, radii = None))]
fn torus_embed(theta: Vec<f64>, radii: Option<Vec<f64>>) -> PyResult<Vec<f64>> {
    let angles = rotor(theta)?;
    let radii = radii.unwrap_or_else(|| fibration::unit_radii(angles.order()));
    Ok(lift(fibration::torus_embed(&angles, &radii))?
        .coords()
        .to_vec())
}

/// Recovers the rotor angles of a torus point.
#[pyfunction]
#[pyo3(signature = (coords, radii, tol = 1e-9))]
fn torus_invert(coords: Vec<f64>, radii: Vec<f64>, tol: f64) -> PyResult<Vec<f64>> {
    let point = lift(fibration::TorusPoint::from_parts(coords, radii))?;
    Ok(lift(fibration::torus_invert(&point, tol))?
        .theta()
        .to_vec())
}

/// Collapses a torus point onto the image sphere.
#[pyfunction]
#[pyo3(signature = (coords, radii, tol = 1e-9))]
fn mu(coords: Vec<f64>, radii: Vec<f64>, tol: f64) -> PyResult<Vec<f64>> {
    let point = lift(fibration::TorusPoint::from_parts(coords, radii))?;
    Ok(lift(fibration::mu(&point, tol))?.coords().to_vec())
}

fn pair(alpha: Vec<f64>, beta: Vec<f64>) -> PyResult<metrics::AnglePair> {
    lift(metrics::AnglePair::new(
        lift(multicomplex::RotorAngles::new(alpha))?,
        lift(multicomplex::RotorAngles::new(beta))?,
    ))
}

/// Rotor inner product: prod_k cos(alpha_k - beta_k).
#[pyfunction]
fn rotor_inner(alpha: Vec<f64>, beta: Vec<f64>) -> PyResult<f64> {
    Ok(metrics::rotor_inner(&pair(alpha, beta)?))
}

/// Inner-product distortion of the projection for one angle pair.
#[pyfunction]
fn difference(alpha: Vec<f64>, beta: Vec<f64>) -> PyResult<f64> {
    Ok(metrics::difference(&pair(alpha, beta)?))
}

/// Closed-form simplification of the order-2 difference.
#[pyfunction]
fn closed_form_difference_n2(alpha: Vec<f64>, beta: Vec<f64>) -> PyResult<f64> {
    lift(metrics::closed_form_difference_n2(&pair(alpha, beta)?))
}

/// Whether the pair's inner product survives the projection within tol.
#[pyfunction]
#[pyo3(signature = (alpha, beta, tol = 1e-9))]
fn is_invariant_pair(alpha: Vec<f64>, beta: Vec<f64>, tol: f64) -> PyResult<bool> {
    Ok(metrics::is_invariant_pair(&pair(alpha, beta)?, tol))
}

/// Grid scan of the difference function; returns a summary dict, with the
/// rows included on request.
#[pyfunction]
#[pyo3(signature = (order, resolution, tol = 1e-9, include_rows = false))]
fn scan_difference(
    py: Python<'_>,
    order: usize,
    resolution: usize,
    tol: f64,
    include_rows: bool,
) -> PyResult<Py<PyDict>> {
    let config = metrics::ScanConfig::new(order, resolution, tol);
    let out = PyDict::new(py);
    out.set_item("order", order)?;
    out.set_item("resolution", resolution)?;
    out.set_item("tol", tol)?;
    if include_rows {
        let scan = lift(metrics::scan_difference(&config))?;
        let rows: Vec<(Vec<f64>, Vec<f64>, f64)> = scan
            .rows
            .iter()
            .map(|r| (r.alpha.clone(), r.beta.clone(), r.difference))
            .collect();
        out.set_item("rows", rows)?;
        set_summary(&out, &scan.summary)?;
    } else {
        let summary = lift(metrics::scan_difference_with(&config, |_, _, _| {}))?;
        set_summary(&out, &summary)?;
    }
    Ok(out.into())
}

fn set_summary(out: &Bound<'_, PyDict>, summary: &metrics::ScanSummary) -> PyResult<()> {
    out.set_item("evaluations", summary.evaluations)?;
    out.set_item("min_difference", summary.min_difference)?;
    out.set_item("max_difference", summary.max_difference)?;
    out.set_item("invariant_count", summary.invariant_count)?;
    out.set_item("invariant_fraction", summary.invariant_fraction)?;
    Ok(())
}

/// One curve row: (theta_1, projected xyz, plain xyz).
type CurveRow = (f64, [f64; 3], [f64; 3]);

/// Samples the curve theta_2 = a * theta_1.
#[pyfunction]
#[pyo3(signature = (a, samples = 1024))]
fn curve_table(a: u32, samples: usize) -> PyResult<Vec<CurveRow>> {
    let spec = lift(curve::CurveSpec::new(a, samples))?;
    Ok(curve::sample_curve(&spec)
        .into_iter()
        .map(|s| (s.theta1, s.projected, s.plain))
        .collect())
}

/// Distinct petals of the projected curve's XY cross-section.
#[pyfunction]
#[pyo3(signature = (a, samples = 4096))]
fn count_petals(a: u32, samples: usize) -> PyResult<usize> {
    Ok(curve::count_petals(&lift(curve::CurveSpec::new(a, samples))?))
}

/// Distinct non-differentiable points of the projected curve.
#[pyfunction]
#[pyo3(signature = (a, samples = 4096))]
fn count_nondifferentiable_points(a: u32, samples: usize) -> PyResult<usize> {
    Ok(curve::count_nondifferentiable_points(&lift(
        curve::CurveSpec::new(a, samples),
    )?))
}

/// Runs the property suites; returns the report as a CSV string.
#[pyfunction]
#[pyo3(signature = (seed = 0, tol = 1e-9, samples = 1000, orders = None))]
fn verify_report(
    seed: u64,
    tol: f64,
    samples: usize,
    orders: Option<Vec<usize>>,
) -> PyResult<String> {
    let config = verify::VerifyConfig {
        orders: orders.unwrap_or_else(|| (2..=6).collect()),
        seed,
        tolerance: tol,
        samples,
    };
    Ok(lift(verify::run_verification(&config))?.to_csv())
}

#[pymodule]
fn lgfib(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Multicomplex>()?;
    m.add_function(wrap_pyfunction!(blade_mul, m)?)?;
    m.add_function(wrap_pyfunction!(exp_simple, m)?)?;
    m.add_function(wrap_pyfunction!(rotor_product, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_rotor_angles, m)?)?;
    m.add_function(wrap_pyfunction!(embed_sphere, m)?)?;
    m.add_function(wrap_pyfunction!(recover_sphere_angles, m)?)?;
    m.add_function(wrap_pyfunction!(theta_partition, m)?)?;
    m.add_function(wrap_pyfunction!(hopf, m)?)?;
    m.add_function(wrap_pyfunction!(contract, m)?)?;
    m.add_function(wrap_pyfunction!(project, m)?)?;
    m.add_function(wrap_pyfunction!(lg, m)?)?;
    m.add_function(wrap_pyfunction!(invert_projection, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_check, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_class, m)?)?;
    m.add_function(wrap_pyfunction!(torus_embed, m)?)?;
    m.add_function(wrap_pyfunction!(torus_invert, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(rotor_inner, m)?)?;
    m.add_function(wrap_pyfunction!(difference, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_difference_n2, m)?)?;
    m.add_function(wrap_pyfunction!(is_invariant_pair, m)?)?;
    m.add_function(wrap_pyfunction!(scan_difference, m)?)?;
    m.add_function(wrap_pyfunction!(curve_table, m)?)?;
    m.add_function(wrap_pyfunction!(count_petals, m)?)?;
    m.add_function(wrap_pyfunction!(count_nondifferentiable_points, m)?)?;
    m.add_function(wrap_pyfunction!(verify_report, m)?)?;
    Ok(())
}
