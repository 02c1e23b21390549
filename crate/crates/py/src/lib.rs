//! Python bindings: fibered complexes, cohomology, Λ-Betti numbers, Hodge
//! reports, the Kronecker model and exact arc sets on the circle.

use lamcohom::circle::{self, ArcSet as CoreArcSet, CoboundaryAnswer, QuadReal};
use lamcohom::cohomology::betti_numbers;
use lamcohom::geometry::io::regions_from_json;
use lamcohom::l2::{self, L2Space};
use lamcohom::rational::{format_rational, parse_rational};
use lamcohom::subdivide::barycentric_subdivide;
use lamcohom::{constructions, CoeffKind, FiberedComplex};
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: lamcohom::Error) -> PyErr {
    match e {
        lamcohom::Error::WrongBackend(_) => PyTypeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn coeff(s: &str) -> PyResult<CoeffKind> {
    s.parse().map_err(PyValueError::new_err)
}

/// A fibered simplicial complex over a finite measured transversal.
#[pyclass(name = "Complex", module = "lamcohom", frozen)]
struct Complex(FiberedComplex);

#[pymethods]
impl Complex {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        FiberedComplex::from_json(text).map(Self).map_err(err)
    }

    /// Suspension of `t ↦ t + p` on `q` atoms of weight `1/q`.
    #[staticmethod]
    fn kronecker(q: usize, p: i64) -> PyResult<Self> {
        constructions::kronecker(q, p).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn validate(&self) -> Vec<String> {
        self.0.validate().iter().map(ToString::to_string).collect()
    }

    fn counts(&self) -> Vec<usize> {
        (0..self.0.num_dims()).map(|n| self.0.count(n)).collect()
    }

    fn atom_weights(&self) -> Vec<String> {
        self.0.transversal().weights().iter().map(format_rational).collect()
    }

    fn leaves(&self) -> Vec<Vec<usize>> {
        self.0.leaf_decomposition()
    }

    fn euler_characteristic(&self) -> i64 {
        self.0.euler_characteristic()
    }

    fn weighted_euler_characteristic(&self) -> String {
        format_rational(&l2::weighted_euler_characteristic(&self.0))
    }

    #[pyo3(signature = (coeff = "q"))]
    fn betti(&self, coeff: &str) -> PyResult<Vec<usize>> {
        betti_numbers(&self.0, self::coeff(coeff)?, None).map_err(err)
    }

    /// Exact Λ-Betti numbers as rational strings.
    fn lambda_betti(&self) -> PyResult<Vec<String>> {
        Ok(l2::l2_betti_numbers(&self.0).map_err(err)?.iter().map(format_rational).collect())
    }

    #[pyo3(signature = (tol = 1e-9))]
    fn lambda_betti_float(&self, tol: f64) -> PyResult<Vec<f64>> {
        (0..self.0.num_dims()).map(|n| l2::l2_betti_f64(&self.0, n, tol).map_err(err)).collect()
    }

    #[pyo3(signature = (degree, tol = 1e-9))]
    fn hodge<'py>(&self, py: Python<'py>, degree: usize, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        if degree >= self.0.num_dims() {
            return Err(PyValueError::new_err(format!("no simplices in degree {degree}")));
        }
        let r = L2Space::new(&self.0).map_err(err)?.report(degree, tol);
        let d = PyDict::new(py);
        d.set_item("degree", r.degree)?;
        d.set_item("kernel_dim", r.kernel_dim)?;
        d.set_item("lambda_betti", format_rational(&r.lambda_betti))?;
        d.set_item("lambda_betti_float", r.lambda_betti_float)?;
        d.set_item("harmonic_basis", r.harmonic_basis)?;
        d.set_item("orthogonality_residual", r.orthogonality_residual)?;
        d.set_item("eigen_residual", r.eigen_residual)?;
        Ok(d)
    }

    fn subdivide(&self) -> Self {
        Self(barycentric_subdivide(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("Complex(counts={:?}, atoms={})", self.counts(), self.0.transversal().len())
    }
}

/// Element `a + b√d` of a real quadratic field.
#[pyclass(name = "Quad", module = "lamcohom", frozen, from_py_object)]
#[derive(Clone)]
struct Quad(QuadReal);

#[pymethods]
impl Quad {
    #[new]
    #[pyo3(signature = (a, b = "0", d = 5))]
    fn new(a: &str, b: &str, d: u32) -> PyResult<Self> {
        let a = parse_rational(a).map_err(err)?;
        let b = parse_rational(b).map_err(err)?;
        QuadReal::new(a, b, d).map(Self).map_err(err)
    }

    /// `(√5 − 1)/2`.
    #[staticmethod]
    fn golden() -> Self {
        Self(QuadReal::golden())
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Quad({})", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }
}

/// Finite union of half-open arcs on `ℝ/ℤ`.
#[pyclass(name = "ArcSet", module = "lamcohom", frozen)]
struct ArcSet(CoreArcSet);

#[pymethods]
impl ArcSet {
    #[new]
    fn new(arcs: Vec<(Quad, Quad)>) -> Self {
        Self(CoreArcSet::from_arcs(arcs.into_iter().map(|(a, b)| (a.0, b.0))))
    }

    fn arcs(&self) -> Vec<(Quad, Quad)> {
        self.0.arcs().iter().map(|(a, b)| (Quad(a.clone()), Quad(b.clone()))).collect()
    }

    fn length(&self) -> Quad {
        Quad(self.0.length())
    }

    fn contains(&self, x: &Quad) -> bool {
        self.0.contains(&x.0)
    }

    fn rotate(&self, theta: &Quad) -> Self {
        Self(self.0.rotate(&theta.0))
    }

    fn complement(&self) -> Self {
        Self(self.0.complement())
    }

    fn __xor__(&self, other: &Self) -> Self {
        Self(self.0.xor(&other.0))
    }

    fn __and__(&self, other: &Self) -> Self {
        Self(self.0.and(&other.0))
    }

    fn __or__(&self, other: &Self) -> Self {
        Self(self.0.or(&other.0))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    /// Arc set where `χ_B(x + α) ≠ χ_B(x)`.
    fn coboundary(&self, alpha: &Quad) -> Self {
        Self(circle::indicator_coboundary(&self.0, &alpha.0))
    }

    fn __repr__(&self) -> String {
        let parts: Vec<String> = self.0.arcs().iter().map(|(a, b)| format!("[{a}, {b})")).collect();
        format!("ArcSet({})", parts.join(" ∪ "))
    }
}

/// Zero set of `δχ_{B_i}` along every `α_i`.
#[pyfunction]
fn zero_set(sets: Vec<PyRef<'_, ArcSet>>, alphas: Vec<Quad>) -> PyResult<ArcSet> {
    let sets: Vec<CoreArcSet> = sets.iter().map(|s| s.0.clone()).collect();
    let alphas: Vec<QuadReal> = alphas.into_iter().map(|a| a.0).collect();
    circle::zero_set(&sets, &alphas).map(ArcSet).map_err(err)
}

/// `(True, f)` with `f∘R − f = 1`, or `(False, orbit_sum)`.
#[pyfunction]
fn one_is_coboundary(py: Python<'_>, q: usize, p: i64) -> PyResult<(bool, Py<PyAny>)> {
    Ok(match circle::one_is_coboundary(q, p).map_err(err)? {
        CoboundaryAnswer::Coboundary { f } => (true, f.into_iter().map(u32::from).collect::<Vec<_>>().into_pyobject(py)?.into_any().unbind()),
        CoboundaryAnswer::Obstruction { orbit_sum } => (false, orbit_sum.into_pyobject(py)?.into_any().unbind()),
    })
}

/// Exact volumes of the regions in a JSON region list.
#[pyfunction]
fn region_volumes(text: &str) -> PyResult<Vec<String>> {
    regions_from_json(text)
        .and_then(|rs| rs.iter().map(|r| r.volume().map(|v| format_rational(&v))).collect())
        .map_err(err)
}

#[pymodule]
#[pyo3(name = "lamcohom")]
fn lamcohom_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Complex>()?;
    m.add_class::<Quad>()?;
    m.add_class::<ArcSet>()?;
    m.add_function(wrap_pyfunction!(zero_set, m)?)?;
    m.add_function(wrap_pyfunction!(one_is_coboundary, m)?)?;
    m.add_function(wrap_pyfunction!(region_volumes, m)?)?;
    Ok(())
}
