//! Python bindings: root data, centers and duals, symplectic modules of central
//! cohomology, skeleton dualization, Heisenberg scalars and the grading rotation.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyComplex;

use dualskel::duality::{
    dualization_report, fm_grading_map, involution_sweep, is_self_dual as self_dual, m_skeleton, regression_suite,
    GradedDims, RegressionItem,
};
use dualskel::heis::{absolve, maslov_scalar, partition_vector, HeisenbergGroup, Splitting};
use dualskel::registry::resolve;
use dualskel::rootdata::{algebra_label, center, langlands_dual, parse_algebra, root_datum_isomorphic, Form, RootDatum};
use dualskel::symp::{annihilator, enumerate_lagrangians, is_lagrangian, Subgroup, SymplecticModule, DEFAULT_CAP};
use dualskel::zmod::{FinAbGroup, Phase, PhasePairing};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Hands a serializable value to Python as plain dicts and lists.
fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(err)?;
    py.import("json")?.call_method1("loads", (s,))
}

fn group_label(g: &FinAbGroup) -> String {
    if g.is_trivial() {
        "trivial".into()
    } else {
        g.to_string()
    }
}

/// A root datum, built from a group name or from an algebra and a form.
#[pyclass(name = "RootDatum", module = "pydualskel", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRootDatum {
    inner: RootDatum,
}

#[pymethods]
impl PyRootDatum {
    /// `SL(5)`, `SO(8)`, `GSp(4)`, `E6_sc`, ...
    #[staticmethod]
    fn from_name(name: &str) -> PyResult<Self> {
        Ok(PyRootDatum { inner: resolve(name).map_err(err)?.datum })
    }

    /// `form` is `"sc"` or `"ad"`.
    #[staticmethod]
    #[pyo3(signature = (algebra, form = "sc"))]
    fn semisimple(algebra: &str, form: &str) -> PyResult<Self> {
        let types = parse_algebra(algebra).map_err(err)?;
        let form = match form {
            "sc" => Form::SimplyConnected,
            "ad" => Form::Adjoint,
            f => return Err(PyValueError::new_err(format!("unknown form {f:?}"))),
        };
        Ok(PyRootDatum { inner: RootDatum::semisimple(&types, &form).map_err(err)? })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn semisimple_rank(&self) -> usize {
        self.inner.semisimple_rank()
    }

    #[getter]
    fn algebra(&self) -> String {
        algebra_label(self.inner.types())
    }

    fn cartan_matrix(&self) -> Vec<Vec<String>> {
        let c = self.inner.cartan_matrix();
        (0..c.rows()).map(|i| (0..c.cols()).map(|j| c[(i, j)].to_string()).collect()).collect()
    }

    fn num_roots(&self) -> usize {
        self.inner.num_roots()
    }

    /// Invariant factors of the center, e.g. `[2, 2]` for `Spin(8)`.
    fn center(&self) -> PyResult<Vec<u64>> {
        Ok(center(&self.inner).map_err(err)?.group.factors_u64())
    }

    fn center_label(&self) -> PyResult<String> {
        Ok(group_label(&center(&self.inner).map_err(err)?.group))
    }

    fn is_simply_connected(&self) -> bool {
        self.inner.is_simply_connected()
    }

    fn is_adjoint(&self) -> bool {
        self.inner.is_adjoint()
    }

    fn langlands_dual(&self) -> Self {
        PyRootDatum { inner: langlands_dual(&self.inner) }
    }

    fn is_isomorphic(&self, other: &PyRootDatum) -> bool {
        root_datum_isomorphic(&self.inner, &other.inner).is_some()
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!("RootDatum({}, rank {})", self.algebra(), self.inner.rank())
    }
}

/// `H¹(C; A)` with its intersection pairing; subgroups are lists of digit vectors.
#[pyclass(name = "SymplecticModule", module = "pydualskel", frozen)]
struct PySymplecticModule {
    inner: SymplecticModule,
}

impl PySymplecticModule {
    fn sub(&self, gens: Vec<Vec<u64>>) -> PyResult<Subgroup> {
        self.inner.subgroup(&gens).map_err(err)
    }
}

#[pymethods]
impl PySymplecticModule {
    /// Central coefficients of the simply connected group of `algebra`.
    #[staticmethod]
    fn for_algebra(algebra: &str, genus: usize) -> PyResult<Self> {
        let types = parse_algebra(algebra).map_err(err)?;
        Ok(PySymplecticModule { inner: SymplecticModule::for_algebra(&types, genus).map_err(err)? })
    }

    /// Coefficients `Z/n_1 x ...` with the pairing `diag(1/n_i)`.
    #[staticmethod]
    fn cyclic(orders: Vec<u64>, genus: usize) -> PyResult<Self> {
        let a = FinAbGroup::from_orders(&orders);
        let d = a.factors_u64();
        let gram = (0..d.len())
            .map(|i| (0..d.len()).map(|j| if i == j { Phase::new(1, d[i] as i64) } else { Phase::new(0, 1) }).collect())
            .collect();
        let pairing = PhasePairing { left: a.clone(), right: a.clone(), gram };
        Ok(PySymplecticModule { inner: SymplecticModule::new(a, pairing, genus).map_err(err)? })
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    #[getter]
    fn moduli(&self) -> Vec<u64> {
        self.inner.moduli().to_vec()
    }

    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus
    }

    /// `ω(x, y)` as `(numerator, denominator)` of a phase in `Q/Z`.
    fn omega(&self, x: Vec<u64>, y: Vec<u64>) -> PyResult<(i64, i64)> {
        let p = self.inner.omega_digits(&x, &y).map_err(err)?;
        Ok((p.numerator(), p.denominator()))
    }

    /// Canonical generators of the subgroup spanned by `gens`.
    fn span(&self, gens: Vec<Vec<u64>>) -> PyResult<Vec<Vec<u64>>> {
        Ok(self.sub(gens)?.generators)
    }

    fn subgroup_order(&self, gens: Vec<Vec<u64>>) -> PyResult<u64> {
        Ok(self.sub(gens)?.order())
    }

    fn annihilator(&self, gens: Vec<Vec<u64>>) -> PyResult<Vec<Vec<u64>>> {
        Ok(annihilator(&self.inner, &self.sub(gens)?).generators)
    }

    fn is_lagrangian(&self, gens: Vec<Vec<u64>>) -> PyResult<bool> {
        Ok(is_lagrangian(&self.inner, &self.sub(gens)?))
    }

    #[pyo3(signature = (cap = DEFAULT_CAP))]
    fn lagrangians(&self, cap: u64) -> PyResult<Vec<Vec<Vec<u64>>>> {
        Ok(enumerate_lagrangians(&self.inner, cap).map_err(err)?.into_iter().map(|l| l.generators).collect())
    }

    /// Scalar from composing the Fourier intertwiners around three Lagrangians.
    fn maslov_scalar<'py>(
        &self,
        py: Python<'py>,
        l1: Vec<Vec<u64>>,
        l2: Vec<Vec<u64>>,
        l3: Vec<Vec<u64>>,
    ) -> PyResult<Bound<'py, PyComplex>> {
        let h = HeisenbergGroup::new(self.inner.clone()).map_err(err)?;
        let split = |g: Vec<Vec<u64>>| -> PyResult<Splitting> { Splitting::canonical(&h, &self.sub(g)?).map_err(err) };
        let c = maslov_scalar(&h, &split(l1)?, &split(l2)?, &split(l3)?).map_err(err)?;
        Ok(PyComplex::from_doubles(py, c.re, c.im))
    }

    /// Partition vector of the standard polarization projected onto the line fixed by
    /// the Lagrangian.
    fn absolve<'py>(&self, py: Python<'py>, lagrangian: Vec<Vec<u64>>) -> PyResult<Bound<'py, PyAny>> {
        let h = HeisenbergGroup::new(self.inner.clone()).map_err(err)?;
        let v = partition_vector(&h).map_err(err)?;
        let s = Splitting::canonical(&h, &self.sub(lagrangian)?).map_err(err)?;
        to_py(py, &absolve(&h, &v, &s).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("SymplecticModule(moduli={:?}, genus={})", self.inner.moduli(), self.inner.genus)
    }
}

/// Center label of a named group.
#[pyfunction]
fn center_of(name: &str) -> PyResult<String> {
    let g = resolve(name).map_err(err)?;
    Ok(group_label(&center(&g.datum).map_err(err)?.group))
}

/// Dualization report `{input, dual, swap_checks, certificate}`.
#[pyfunction]
fn dualize<'py>(py: Python<'py>, algebra: &str, genus: usize, gamma: Vec<Vec<u64>>) -> PyResult<Bound<'py, PyAny>> {
    let types = parse_algebra(algebra).map_err(err)?;
    let s = m_skeleton(&types, genus, &gamma).map_err(err)?;
    to_py(py, &dualization_report(&s).map_err(err)?)
}

#[pyfunction]
fn is_self_dual(algebra: &str, genus: usize, gamma: Vec<Vec<u64>>) -> PyResult<bool> {
    let types = parse_algebra(algebra).map_err(err)?;
    Ok(self_dual(&types, genus, &gamma).map_err(err)?.self_dual)
}

/// Dualizes every subgroup twice; returns the sweep summary.
#[pyfunction]
#[pyo3(signature = (algebra, genus, cap = DEFAULT_CAP))]
fn sweep<'py>(py: Python<'py>, algebra: &str, genus: usize, cap: u64) -> PyResult<Bound<'py, PyAny>> {
    let types = parse_algebra(algebra).map_err(err)?;
    to_py(py, &involution_sweep(&types, genus, cap).map_err(err)?)
}

/// `(m, n, count)` triples under the grading rotation.
#[pyfunction]
fn fm_map(dims: Vec<(i64, i64, u64)>) -> Vec<(i64, i64, u64)> {
    fm_grading_map(&GradedDims::from(dims)).into()
}

#[pyfunction]
fn regressions() -> bool {
    regression_suite(&RegressionItem::ALL, false).passed
}

#[pymodule]
fn pydualskel(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootDatum>()?;
    m.add_class::<PySymplecticModule>()?;
    m.add_function(wrap_pyfunction!(center_of, m)?)?;
    m.add_function(wrap_pyfunction!(dualize, m)?)?;
    m.add_function(wrap_pyfunction!(is_self_dual, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(fm_map, m)?)?;
    m.add_function(wrap_pyfunction!(regressions, m)?)?;
    Ok(())
}
