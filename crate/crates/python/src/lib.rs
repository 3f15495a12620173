//! Python module `rmt_py`: closed forms, transform series, the numerical
//! oracle and the catalog.
//!
//! Coefficient functions come either from a built-in family key or from a
//! Python callable. A callable that raises or returns a non-number yields
//! NaN at that point, which the closed forms report as a pole.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use rmt_core::catalog::{self, Catalog};
use rmt_core::mellin::{self, Parity};
use rmt_core::oracle;
use rmt_core::report;
use rmt_core::series;
use rmt_core::specfun;
use rmt_core::transforms::{self, Regime};
use rmt_core::{CoefficientFn, Error, SeriesKind};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::UnknownEntry(_) | Error::UnknownParam { .. } => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_kind(kind: &str) -> PyResult<SeriesKind> {
    Ok(match kind {
        "exp" | "exp_alternating" => SeriesKind::ExpAlternating,
        "plain" | "plain_alternating" => SeriesKind::PlainAlternating,
        "cos" | "cos_type" => SeriesKind::CosType,
        "sin" | "sin_type" => SeriesKind::SinType,
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown series kind `{kind}`"
            )))
        }
    })
}

fn parse_parity(p: &str) -> PyResult<Parity> {
    match p {
        "cos" => Ok(Parity::Cos),
        "sin" => Ok(Parity::Sin),
        _ => Err(PyValueError::new_err(format!(
            "parity must be `cos` or `sin`, got `{p}`"
        ))),
    }
}

fn parse_regime(r: &str) -> PyResult<Regime> {
    match r {
        "convergent" => Ok(Regime::Convergent),
        "asymptotic" => Ok(Regime::Asymptotic),
        _ => Err(PyValueError::new_err(format!(
            "regime must be `convergent` or `asymptotic`, got `{r}`"
        ))),
    }
}

fn snake<T: std::fmt::Debug>(v: T) -> String {
    let s = format!("{v:?}");
    let mut out = String::new();
    for (i, c) in s.chars().enumerate() {
        if c.is_uppercase() && i > 0 {
            out.push('_');
        }
        out.extend(c.to_lowercase());
    }
    out
}

/// Call a Python function of one float.
fn py_real_fn(f: Py<PyAny>) -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    move |x| {
        Python::attach(|py| {
            f.bind(py)
                .call1((x,))
                .and_then(|v| v.extract::<f64>())
                .unwrap_or(f64::NAN)
        })
    }
}

/// Series description: coefficient function, series shape, exponents.
#[pyclass(name = "SeriesSpec", frozen)]
struct PySeriesSpec {
    inner: series::SeriesSpec,
}

#[pymethods]
impl PySeriesSpec {
    /// Built-in family, e.g. `SeriesSpec.family("gamma_ratio", "exp", {"alpha": 1, "beta": 1})`.
    #[staticmethod]
    #[pyo3(signature = (family, kind, params = BTreeMap::new()))]
    fn family(family: &str, kind: &str, params: BTreeMap<String, f64>) -> PyResult<Self> {
        let inner = catalog::family_spec(family, parse_kind(kind)?, &params).map_err(to_py)?;
        Ok(Self { inner })
    }

    /// Coefficient φ as a Python callable on reals; `direct` optionally
    /// evaluates the integrand itself.
    #[new]
    #[pyo3(signature = (phi, kind, p = 0.0, q = 1.0, direct = None))]
    fn new(
        phi: Py<PyAny>,
        kind: &str,
        p: f64,
        q: f64,
        direct: Option<Py<PyAny>>,
    ) -> PyResult<Self> {
        let coeff = CoefficientFn::new("python callable", py_real_fn(phi));
        let mut inner = series::SeriesSpec::new(coeff, parse_kind(kind)?)
            .with_powers(p, q)
            .map_err(to_py)?;
        if let Some(d) = direct {
            inner = inner.with_direct(py_real_fn(d));
        }
        Ok(Self { inner })
    }

    #[getter]
    fn kind(&self) -> String {
        snake(self.inner.kind())
    }

    #[getter]
    fn p(&self) -> f64 {
        self.inner.p()
    }

    #[getter]
    fn q(&self) -> f64 {
        self.inner.q()
    }

    /// φ at a real argument.
    fn phi(&self, x: f64) -> f64 {
        self.inner.phi().eval(x)
    }

    /// Partial sums of the series at x, to relative `tol`.
    #[pyo3(signature = (x, tol = 1e-14))]
    fn eval(&self, x: f64, tol: f64) -> PyResult<PyOracleResult> {
        series::eval_series(&self.inner, x, tol)
            .map(Into::into)
            .map_err(to_py)
    }

    /// The integrand from the direct evaluator, if one was given.
    fn direct(&self, x: f64) -> Option<f64> {
        self.inner.direct().map(|f| f(x))
    }

    fn __repr__(&self) -> String {
        format!(
            "SeriesSpec(φ: {}, kind={}, p={}, q={})",
            self.inner.phi().description(),
            self.kind(),
            self.p(),
            self.q()
        )
    }
}

#[pyclass(name = "ClosedFormResult", frozen, get_all)]
struct PyClosedForm {
    value: f64,
    rule: String,
    trace: Vec<String>,
    validity_notes: Vec<String>,
    status: String,
}

#[pymethods]
impl PyClosedForm {
    fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    fn __repr__(&self) -> String {
        format!(
            "ClosedFormResult(rule={}, value={:.17e}, status={})",
            self.rule, self.value, self.status
        )
    }
}

impl From<mellin::ClosedFormResult> for PyClosedForm {
    fn from(r: mellin::ClosedFormResult) -> Self {
        Self {
            value: r.value,
            rule: r.rule,
            trace: r.trace,
            validity_notes: r.validity_notes,
            status: snake(r.status),
        }
    }
}

#[pyclass(name = "OracleResult", frozen, get_all)]
struct PyOracleResult {
    value: f64,
    error_estimate: f64,
    evaluations: usize,
    status: String,
}

#[pymethods]
impl PyOracleResult {
    fn is_converged(&self) -> bool {
        self.status == "converged"
    }

    fn __repr__(&self) -> String {
        format!(
            "OracleResult(value={:.17e}, error_estimate={:.2e}, status={})",
            self.value, self.error_estimate, self.status
        )
    }
}

impl From<oracle::OracleResult> for PyOracleResult {
    fn from(r: oracle::OracleResult) -> Self {
        Self {
            value: r.value,
            error_estimate: r.error_estimate,
            evaluations: r.evaluations,
            status: snake(r.status),
        }
    }
}

#[pyclass(name = "SeriesSolution", frozen, get_all)]
struct PySeriesSolution {
    value: f64,
    regime: String,
    terms_used: usize,
    error_estimate: f64,
    status: String,
    trace: Vec<String>,
}

impl From<transforms::SeriesSolution> for PySeriesSolution {
    fn from(s: transforms::SeriesSolution) -> Self {
        Self {
            value: s.value,
            regime: snake(s.regime),
            terms_used: s.terms_used,
            error_estimate: s.error_estimate,
            status: snake(s.status),
            trace: s.trace,
        }
    }
}

#[pyclass(name = "Report", frozen, get_all)]
struct PyReport {
    entry_id: String,
    closed_value: f64,
    oracle_value: Option<f64>,
    rel_gap: Option<f64>,
    rule: String,
    trace: Vec<String>,
    status: String,
    json: String,
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!(
            "Report({}, status={}, rel_gap={:?})",
            self.entry_id, self.status, self.rel_gap
        )
    }
}

impl From<report::Report> for PyReport {
    fn from(r: report::Report) -> Self {
        let json = r.to_json();
        Self {
            entry_id: r.entry_id,
            closed_value: r.closed_value,
            oracle_value: r.oracle_value,
            rel_gap: r.rel_gap,
            rule: r.rule,
            trace: r.trace,
            status: snake(r.status),
            json,
        }
    }
}

#[pyfunction]
fn rmt_general(spec: &PySeriesSpec, s: f64) -> PyClosedForm {
    mellin::rmt_general(&spec.inner, s).into()
}

#[pyfunction]
fn rmt_plain_general(spec: &PySeriesSpec, s: f64) -> PyClosedForm {
    mellin::rmt_plain_general(&spec.inner, s).into()
}

#[pyfunction]
fn rmt_zeta(spec: &PySeriesSpec, s: f64) -> PyClosedForm {
    mellin::rmt_zeta(&spec.inner, s).into()
}

#[pyfunction]
fn rmt_log(spec: &PySeriesSpec, s: f64, m: u32) -> PyClosedForm {
    mellin::rmt_log(&spec.inner, s, m).into()
}

#[pyfunction]
fn rmt_log_numeric(spec: &PySeriesSpec, s: f64, m: u32) -> PyClosedForm {
    mellin::rmt_log_numeric(&spec.inner, s, m).into()
}

#[pyfunction]
fn rmt_trig(spec: &PySeriesSpec, s: f64, parity: &str) -> PyResult<PyClosedForm> {
    Ok(mellin::rmt_trig(&spec.inner, s, parse_parity(parity)?).into())
}

#[pyfunction]
fn gaussian_cos_rmt(spec: &PySeriesSpec) -> PyClosedForm {
    mellin::gaussian_cos_rmt(&spec.inner).into()
}

#[pyfunction]
fn rmt_double(spec: &PySeriesSpec, s: f64) -> PyClosedForm {
    mellin::rmt_double(&spec.inner, s).into()
}

#[pyfunction]
fn fourier_series_solution(
    spec: &PySeriesSpec,
    s: f64,
    kernel: &str,
    regime: &str,
) -> PyResult<PySeriesSolution> {
    Ok(transforms::fourier_series_solution(
        &spec.inner,
        s,
        parse_parity(kernel)?,
        parse_regime(regime)?,
    )
    .into())
}

#[pyfunction]
fn laplace_series_solution(
    spec: &PySeriesSpec,
    s: f64,
    regime: &str,
) -> PyResult<PySeriesSolution> {
    Ok(transforms::laplace_series_solution(&spec.inner, s, parse_regime(regime)?).into())
}

#[pyfunction]
fn hankel0_series_solution(
    spec: &PySeriesSpec,
    s: f64,
    regime: &str,
) -> PyResult<PySeriesSolution> {
    Ok(transforms::hankel0_series_solution(&spec.inner, s, parse_regime(regime)?).into())
}

/// ∫₀^∞ f(x) g(x) dx from the exponential-series coefficients of f and g.
#[pyfunction]
#[pyo3(signature = (phi, psi, max_terms = 400))]
fn product_integral(phi: &PySeriesSpec, psi: &PySeriesSpec, max_terms: usize) -> PySeriesSolution {
    transforms::product_integral(phi.inner.phi(), psi.inner.phi(), max_terms).into()
}

/// ∫₀^∞ x^{s−1} lnᵐ(x) f(x) dx by tanh-sinh quadrature.
#[pyfunction]
#[pyo3(signature = (f, s, log_power = 0, tol = 1e-10))]
fn integrate_mellin(
    py: Python<'_>,
    f: Py<PyAny>,
    s: f64,
    log_power: u32,
    tol: f64,
) -> PyOracleResult {
    let g = py_real_fn(f);
    py.detach(|| oracle::integrate_mellin(g, s, log_power, tol))
        .into()
}

fn nan_on_pole(r: specfun::SpecResult) -> f64 {
    r.get().unwrap_or(f64::NAN)
}

#[pyfunction]
fn gamma(x: f64) -> f64 {
    nan_on_pole(specfun::gamma(x))
}

#[pyfunction]
fn digamma(x: f64) -> f64 {
    nan_on_pole(specfun::digamma(x))
}

#[pyfunction]
fn zeta(s: f64) -> f64 {
    nan_on_pole(specfun::zeta(s))
}

#[pyfunction]
fn bessel_j(alpha: f64, x: f64) -> f64 {
    nan_on_pole(specfun::bessel_j(alpha, x))
}

#[pyfunction]
fn bessel_k0(x: f64) -> f64 {
    nan_on_pole(specfun::bessel_k0(x))
}

/// Ids of the loaded catalog, built-in entries first.
#[pyfunction]
fn list_entries() -> PyResult<Vec<String>> {
    Ok(Catalog::load()
        .map_err(to_py)?
        .entries()
        .iter()
        .map(|e| e.id.clone())
        .collect())
}

/// Closed form and oracle for a catalog entry; `tol` overrides the pass threshold.
#[pyfunction]
#[pyo3(signature = (id, overrides = BTreeMap::new(), tol = None))]
fn run_entry(
    py: Python<'_>,
    id: &str,
    overrides: BTreeMap<String, f64>,
    tol: Option<f64>,
) -> PyResult<PyReport> {
    let catalog = Catalog::load().map_err(to_py)?;
    let run = py
        .detach(|| catalog.run_entry(id, &overrides))
        .map_err(to_py)?;
    Ok(report::Report::from_run(&run, tol).into())
}

#[pymodule]
fn rmt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeriesSpec>()?;
    m.add_class::<PyClosedForm>()?;
    m.add_class::<PyOracleResult>()?;
    m.add_class::<PySeriesSolution>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(rmt_general, m)?)?;
    m.add_function(wrap_pyfunction!(rmt_plain_general, m)?)?;
    m.add_function(wrap_pyfunction!(rmt_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(rmt_log, m)?)?;
    m.add_function(wrap_pyfunction!(rmt_log_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(rmt_trig, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_cos_rmt, m)?)?;
    m.add_function(wrap_pyfunction!(rmt_double, m)?)?;
    m.add_function(wrap_pyfunction!(fourier_series_solution, m)?)?;
    m.add_function(wrap_pyfunction!(laplace_series_solution, m)?)?;
    m.add_function(wrap_pyfunction!(hankel0_series_solution, m)?)?;
    m.add_function(wrap_pyfunction!(product_integral, m)?)?;
    m.add_function(wrap_pyfunction!(integrate_mellin, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(digamma, m)?)?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_k0, m)?)?;
    m.add_function(wrap_pyfunction!(list_entries, m)?)?;
    m.add_function(wrap_pyfunction!(run_entry, m)?)?;
    Ok(())
}
