//! Python bindings: `import zelkl`.

use num_bigint::BigInt;
use num_rational::Rational64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyType;

use zelkl_core::branching::{self, ExtMode, SuiteConfig};
use zelkl_core::coxeter::{self, Permutation as CorePermutation};
use zelkl_core::grothendieck::{self, GrothendieckVector, RegularBlock};
use zelkl_core::klpoly::{self, KlCache};
use zelkl_core::zelevinsky::{self, Multisegment as CoreMultisegment, Segment, Side};
use zelkl_core::{Error, Limits};

pyo3::create_exception!(zelkl, ResourceLimitError, PyRuntimeError);
pyo3::create_exception!(zelkl, InductionFailureError, PyRuntimeError);

fn to_py(err: Error) -> PyErr {
    match err {
        Error::ResourceLimit { .. } => ResourceLimitError::new_err(err.to_string()),
        Error::InductionFailure { .. } => InductionFailureError::new_err(err.to_string()),
        Error::Overflow(_) | Error::Cache { .. } | Error::Io(_) => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// A permutation in one-line notation.
#[pyclass(module = "zelkl", frozen, eq, hash, ord, str, skip_from_py_object)]
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    inner: CorePermutation,
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.inner.fmt(f)
    }
}

#[pymethods]
impl Permutation {
    /// Accepts `"3412"`, `"10,1,2,..."` or a list of images.
    #[new]
    pub fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner = if let Ok(text) = value.extract::<String>() {
            text.parse().map_err(to_py)?
        } else {
            CorePermutation::new(value.extract::<Vec<usize>>()?).map_err(to_py)?
        };
        Ok(Permutation { inner })
    }

    #[classmethod]
    fn identity(_cls: &Bound<'_, PyType>, n: usize) -> Self {
        Permutation { inner: CorePermutation::identity(n) }
    }

    #[classmethod]
    fn longest(_cls: &Bound<'_, PyType>, n: usize) -> Self {
        Permutation { inner: CorePermutation::longest(n) }
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn images(&self) -> Vec<usize> {
        self.inner.images().to_vec()
    }

    fn length(&self) -> usize {
        self.inner.length()
    }

    fn inverse(&self) -> Self {
        Permutation { inner: self.inner.inverse() }
    }

    /// `(self * other)(i) = self(other(i))`.
    fn compose(&self, other: &Permutation) -> PyResult<Self> {
        Ok(Permutation { inner: self.inner.compose(&other.inner).map_err(to_py)? })
    }

    fn bruhat_leq(&self, other: &Permutation) -> PyResult<bool> {
        coxeter::bruhat_leq(&self.inner, &other.inner).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Permutation('{}')", self.inner)
    }
}

/// A multisegment in canonical standard order.
#[pyclass(module = "zelkl", frozen, eq, hash, str, skip_from_py_object)]
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multisegment {
    inner: CoreMultisegment,
}

impl std::fmt::Display for Multisegment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.inner.fmt(f)
    }
}

fn ms(inner: CoreMultisegment) -> Multisegment {
    Multisegment { inner }
}

#[pymethods]
impl Multisegment {
    /// Parses `"{[0,1]@rho, [1/2,1/2]@pi~pic(2)}"`.
    #[new]
    pub fn new(text: &str) -> PyResult<Self> {
        Ok(ms(text.parse().map_err(to_py)?))
    }

    #[getter]
    fn segments(&self) -> Vec<String> {
        self.inner.segments().iter().map(ToString::to_string).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn absolute_length(&self) -> usize {
        self.inner.absolute_length()
    }

    fn dual(&self) -> Self {
        ms(self.inner.dual())
    }

    /// Twist by `nu^{numer/denom}`.
    #[pyo3(signature = (numer, denom = 1))]
    fn twist(&self, numer: i64, denom: i64) -> PyResult<Self> {
        if denom == 0 {
            return Err(PyValueError::new_err("zero denominator"));
        }
        Ok(ms(self.inner.twist(Rational64::new(numer, denom))))
    }

    /// Cuspidal support as a sorted list of points, with multiplicity.
    fn csupp(&self) -> Vec<String> {
        self.inner
            .csupp()
            .iter()
            .flat_map(|(p, k)| std::iter::repeat_n(p.to_string(), k))
            .collect()
    }

    fn is_generic(&self) -> bool {
        self.inner.is_generic()
    }

    fn __repr__(&self) -> String {
        format!("Multisegment('{}')", self.inner)
    }
}

/// Coefficients of `P_{x,w}`, lowest degree first.
#[pyfunction]
pub fn kl_polynomial(x: &Permutation, w: &Permutation) -> PyResult<Vec<BigInt>> {
    let p = KlCache::global().kl_polynomial(&x.inner, &w.inner).map_err(to_py)?;
    Ok(p.coefficients().to_vec())
}

/// `P_{x,w}` rendered as text, e.g. `"1+q"`.
#[pyfunction]
pub fn kl_polynomial_str(x: &Permutation, w: &Permutation) -> PyResult<String> {
    Ok(KlCache::global().kl_polynomial(&x.inner, &w.inner).map_err(to_py)?.to_string())
}

#[pyfunction]
pub fn mu(x: &Permutation, w: &Permutation) -> PyResult<BigInt> {
    klpoly::mu(&x.inner, &w.inner).map_err(to_py)
}

#[pyfunction]
pub fn r_polynomial(x: &Permutation, w: &Permutation) -> PyResult<Vec<BigInt>> {
    Ok(klpoly::r_polynomial(&x.inner, &w.inner).map_err(to_py)?.coefficients().to_vec())
}

/// Elements of `S_n` ordered by length, then one-line notation.
#[pyfunction]
pub fn enumerate_sn(n: usize) -> PyResult<Vec<Permutation>> {
    Ok(coxeter::enumerate_sn(n, &Limits::default())
        .map_err(to_py)?
        .into_iter()
        .map(|inner| Permutation { inner })
        .collect())
}

type StratumTuple = (Permutation, usize, usize, Vec<(usize, usize)>);
type StepTuple = (String, usize, usize, Option<String>, String);

/// `(element, coset_index, cell_dim, y_pairs)` for every element of `W~`.
#[pyfunction]
pub fn strata(n: usize) -> PyResult<Vec<StratumTuple>> {
    Ok(coxeter::enumerate_wtilde(n, &Limits::default())
        .map_err(to_py)?
        .into_iter()
        .map(|d| {
            (
                Permutation { inner: d.element },
                d.coset_index,
                d.cell_dim,
                d.y_pairs.into_iter().collect(),
            )
        })
        .collect())
}

/// Alternating-sum identity report for `S_n` as JSON.
#[pyfunction]
pub fn verify_kl_identity(n: usize) -> PyResult<String> {
    json(&grothendieck::verify_kl_identity(n, KlCache::global()).map_err(to_py)?)
}

/// `[(multisegment, coefficient)]` for the irreducible labelled by `w` in the
/// standard regular block of rank `w.rank`.
#[pyfunction]
pub fn decompose(w: &Permutation) -> PyResult<Vec<(String, i64)>> {
    let block = RegularBlock::standard(w.inner.rank(), &Limits::default()).map_err(to_py)?;
    let v = grothendieck::decompose_irreducible(&block, &w.inner, KlCache::global()).map_err(to_py)?;
    Ok(v.iter().map(|(m, c)| (m.to_string(), c)).collect())
}

fn vector(text: &str) -> PyResult<GrothendieckVector> {
    text.parse().map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (v1, v2, check_ranks = true))]
pub fn ep_pairing(v1: &str, v2: &str, check_ranks: bool) -> PyResult<i64> {
    grothendieck::ep_pairing(&vector(v1)?, &vector(v2)?, check_ranks).map_err(to_py)
}

#[pyfunction]
pub fn whittaker_dim(v: &str) -> PyResult<i64> {
    vector(v)?.whittaker_dim().map_err(to_py)
}

/// Derivative label of a segment, or `None` when it is empty.
#[pyfunction]
#[pyo3(signature = (segment, side, i, shifted = false))]
pub fn derivative(segment: &str, side: &str, i: usize, shifted: bool) -> PyResult<Option<String>> {
    let s: Segment = segment.parse().map_err(to_py)?;
    let side: Side = side.parse().map_err(to_py)?;
    Ok(s.derivative(side, i, shifted).map_err(to_py)?.map(|d| d.to_string()))
}

/// Filtration layers as JSON.
#[pyfunction]
pub fn bz_layers(outer: &Multisegment, inner: &Multisegment, side: &str) -> PyResult<String> {
    let side: Side = side.parse().map_err(to_py)?;
    json(&grothendieck::bz_layers(&outer.inner, &inner.inner, side).map_err(to_py)?)
}

#[pyfunction]
pub fn lstar(m: &Multisegment, m_prime: &Multisegment) -> usize {
    zelevinsky::lstar(&m.inner, &m_prime.inner)
}

/// `(point, case, anchor)` with case `"Case1"` or `"Case2"`.
#[pyfunction]
pub fn select_rho_star(m: &Multisegment, m_prime: &Multisegment) -> PyResult<(String, String, String)> {
    let r = branching::select_rho_star(&m.inner, &m_prime.inner).map_err(to_py)?;
    Ok((r.point.to_string(), format!("{:?}", r.case), r.anchor.to_string()))
}

/// `[(kind, lstar_before, lstar_after, rho_star, detail)]`; raises
/// `InductionFailureError` if the trace carries a failure marker.
#[pyfunction]
pub fn proof_trace(
    m: &Multisegment,
    m_prime: &Multisegment,
) -> PyResult<Vec<StepTuple>> {
    let trace = branching::proof_trace(&m.inner, &m_prime.inner).map_err(to_py)?;
    if let Some(reason) = trace.failure {
        return Err(InductionFailureError::new_err(reason));
    }
    Ok(trace
        .steps
        .into_iter()
        .map(|s| {
            (
                s.kind.to_string(),
                s.lstar_before,
                s.lstar_after,
                s.rho_star.map(|p| p.to_string()),
                s.detail,
            )
        })
        .collect())
}

#[pyfunction]
pub fn proof_trace_json(m: &Multisegment, m_prime: &Multisegment) -> PyResult<String> {
    json(&branching::proof_trace(&m.inner, &m_prime.inner).map_err(to_py)?)
}

/// `(hom_dim, ext_vanishing_degree)`, or `None` when not determined.
#[pyfunction]
#[pyo3(signature = (m, m_prime, mode = "branching"))]
pub fn ext_dims(m: &Multisegment, m_prime: &Multisegment, mode: &str) -> PyResult<Option<(u64, u64)>> {
    let mode: ExtMode = mode.parse().map_err(to_py)?;
    let p = branching::ext_dims(&m.inner, &m_prime.inner, mode).map_err(to_py)?;
    Ok(p.hom_dim.zip(p.ext_vanishing_degree))
}

/// Seeded randomized trace suite report as JSON.
#[pyfunction]
#[pyo3(signature = (count = 1000, seed = 0))]
pub fn random_traces(count: usize, seed: u64) -> PyResult<String> {
    json(&branching::run_random_suite(count, seed, &SuiteConfig::default()))
}

#[pymodule]
fn zelkl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Permutation>()?;
    m.add_class::<Multisegment>()?;
    m.add("ResourceLimitError", m.py().get_type::<ResourceLimitError>())?;
    m.add("InductionFailureError", m.py().get_type::<InductionFailureError>())?;
    m.add_function(wrap_pyfunction!(kl_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(kl_polynomial_str, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(r_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_sn, m)?)?;
    m.add_function(wrap_pyfunction!(strata, m)?)?;
    m.add_function(wrap_pyfunction!(verify_kl_identity, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(ep_pairing, m)?)?;
    m.add_function(wrap_pyfunction!(whittaker_dim, m)?)?;
    m.add_function(wrap_pyfunction!(derivative, m)?)?;
    m.add_function(wrap_pyfunction!(bz_layers, m)?)?;
    m.add_function(wrap_pyfunction!(lstar, m)?)?;
    m.add_function(wrap_pyfunction!(select_rho_star, m)?)?;
    m.add_function(wrap_pyfunction!(proof_trace, m)?)?;
    m.add_function(wrap_pyfunction!(proof_trace_json, m)?)?;
    m.add_function(wrap_pyfunction!(ext_dims, m)?)?;
    m.add_function(wrap_pyfunction!(random_traces, m)?)?;
    Ok(())
}
