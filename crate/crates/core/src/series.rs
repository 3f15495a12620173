//! Integrands described by their series coefficients.
//!
//! A [`SeriesSpec`] couples a coefficient function φ (a caller-supplied
//! analytic continuation of the discrete coefficients) with one of four term
//! templates and the power offset `p` / stride `q`:
//!
//! | kind               | raw index k | term                                  |
//! |--------------------|-------------|---------------------------------------|
//! | `ExpAlternating`   | n           | (−1)ⁿ φ(n) x^{qn+p} / n!              |
//! | `PlainAlternating` | n           | (−1)ⁿ φ(n) x^{qn+p}                   |
//! | `CosType`          | 2n          | (−1)ⁿ φ(2n) x^{2qn+p} / (2n)!         |
//! | `SinType`          | 2n+1        | (−1)ⁿ φ(2n+1) x^{q(2n+1)+p} / (2n+1)! |
//!
//! The alternating sign lives in the kind, never in φ.
//!
//! Callables stored here must be reentrant; specs are shared across threads.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::oracle::{OracleResult, OracleStatus};
use crate::specfun::ln_gamma;
use crate::{Error, Result};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Arguments at which a coefficient function is singular.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum PoleSet {
    #[default]
    None,
    Points(Vec<f64>),
    /// `first, first − 1, first − 2, …`
    DescendingFrom(f64),
}

impl PoleSet {
    /// Distance from `x` to the nearest pole (`+∞` when there is none).
    pub fn distance(&self, x: f64) -> f64 {
        match self {
            PoleSet::None => f64::INFINITY,
            PoleSet::Points(pts) => pts
                .iter()
                .map(|p| (x - p).abs())
                .fold(f64::INFINITY, f64::min),
            PoleSet::DescendingFrom(first) => {
                if x >= *first {
                    x - first
                } else {
                    let off = first - x;
                    (off - off.round()).abs()
                }
            }
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.distance(x) <= 1e-12 * x.abs().max(1.0)
    }
}

/// The analytic continuation φ of a discrete coefficient sequence.
#[derive(Clone)]
pub struct CoefficientFn {
    eval: RealFn,
    poles: PoleSet,
    description: String,
}

impl CoefficientFn {
    pub fn new(
        description: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(f),
            poles: PoleSet::None,
            description: description.into(),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("φ(n) = {c}"), move |_| c)
    }

    pub fn with_poles(mut self, poles: PoleSet) -> Self {
        self.poles = poles;
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// φ(x), or [`Error::Pole`] when `x` is a declared pole or the value is
    /// not finite.
    pub fn try_eval(&self, x: f64) -> Result<f64> {
        if self.poles.contains(x) {
            return Err(Error::Pole(x));
        }
        let v = self.eval(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Pole(x))
        }
    }

    pub fn poles(&self) -> &PoleSet {
        &self.poles
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

impl fmt::Debug for CoefficientFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientFn")
            .field("description", &self.description)
            .field("poles", &self.poles)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    ExpAlternating,
    PlainAlternating,
    CosType,
    SinType,
}

impl SeriesKind {
    /// Raw power index used by the n-th term.
    pub fn raw_index(self, n: usize) -> usize {
        match self {
            SeriesKind::ExpAlternating | SeriesKind::PlainAlternating => n,
            SeriesKind::CosType => 2 * n,
            SeriesKind::SinType => 2 * n + 1,
        }
    }

    fn has_factorial(self) -> bool {
        !matches!(self, SeriesKind::PlainAlternating)
    }
}

#[derive(Clone)]
pub struct SeriesSpec {
    phi: CoefficientFn,
    kind: SeriesKind,
    p: f64,
    q: f64,
    direct: Option<RealFn>,
}

impl SeriesSpec {
    /// A spec with `p = 0`, `q = 1` and no direct evaluator.
    pub fn new(phi: CoefficientFn, kind: SeriesKind) -> Self {
        Self {
            phi,
            kind,
            p: 0.0,
            q: 1.0,
            direct: None,
        }
    }

    pub fn with_powers(mut self, p: f64, q: f64) -> Result<Self> {
        if !(q > 0.0) || !q.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "power stride q must be > 0, got {q}"
            )));
        }
        if !(p >= 0.0) || !p.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "power offset p must be >= 0, got {p}"
            )));
        }
        self.p = p;
        self.q = q;
        Ok(self)
    }

    /// Attach a closed-form evaluator of the integrand, valid on all of [0, ∞).
    pub fn with_direct(mut self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.direct = Some(Arc::new(f));
        self
    }

    pub fn phi(&self) -> &CoefficientFn {
        &self.phi
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn direct(&self) -> Option<&RealFn> {
        self.direct.as_ref()
    }

    pub fn is_standard_powers(&self) -> bool {
        self.p == 0.0 && self.q == 1.0
    }

    /// Exponent of x in the n-th term.
    pub fn exponent(&self, n: usize) -> f64 {
        self.q * self.kind.raw_index(n) as f64 + self.p
    }

    /// Value of the n-th term at `x ≥ 0`.
    pub fn term(&self, n: usize, x: f64) -> Result<f64> {
        let k = self.kind.raw_index(n);
        let phi = self.phi.try_eval(k as f64)?;
        if phi == 0.0 {
            return Ok(0.0);
        }
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let e = self.exponent(n);
        if x == 0.0 {
            return Ok(if e == 0.0 { sign * phi } else { 0.0 });
        }
        if !self.kind.has_factorial() {
            return Ok(sign * phi * x.powf(e));
        }
        let direct = x.powf(e) / factorial(k);
        if direct.is_finite() && direct != 0.0 {
            return Ok(sign * phi * direct);
        }
        Ok(sign * phi * (e * x.ln() - ln_gamma(k as f64 + 1.0)).exp())
    }
}

impl fmt::Debug for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesSpec")
            .field("phi", &self.phi)
            .field("kind", &self.kind)
            .field("p", &self.p)
            .field("q", &self.q)
            .field("direct", &self.direct.is_some())
            .finish()
    }
}

/// Literal coefficient of the n-th term, sign and factorial included.
pub fn coefficient(spec: &SeriesSpec, n: usize) -> Result<f64> {
    let k = spec.kind.raw_index(n);
    let phi = spec.phi.try_eval(k as f64)?;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let fact = if spec.kind.has_factorial() {
        factorial(k)
    } else {
        1.0
    };
    Ok(sign * phi / fact)
}

/// k! as a float; exact through 22!, correctly rounded products beyond.
fn factorial(k: usize) -> f64 {
    (2..=k).fold(1.0, |acc, j| acc * j as f64)
}

const MAX_TERMS: usize = 1_000_000;
const MAX_GROWTH_RUN: usize = 20;

/// Sum the terms of any index → value sequence until three consecutive terms
/// are below `tol` relative to the partial sum.
pub(crate) fn sum_terms(
    mut term: impl FnMut(usize) -> Result<f64>,
    tol: f64,
) -> Result<OracleResult> {
    let mut partial = 0.0;
    let mut abs_sum = 0.0;
    let mut small_run = 0;
    let mut growth_run = 0;
    let mut prev = f64::INFINITY;
    for n in 0..MAX_TERMS {
        let t = term(n)?;
        if !t.is_finite() {
            return Err(Error::NonConvergent { terms: n });
        }
        partial += t;
        abs_sum += t.abs();
        growth_run = if t.abs() > prev { growth_run + 1 } else { 0 };
        if growth_run >= MAX_GROWTH_RUN {
            return Err(Error::NonConvergent { terms: n + 1 });
        }
        prev = t.abs();
        small_run = if t.abs() <= tol * partial.abs() {
            small_run + 1
        } else {
            0
        };
        if small_run >= 3 {
            let omitted = term(n + 1).map(f64::abs).unwrap_or(0.0);
            return Ok(OracleResult {
                value: partial,
                error_estimate: omitted + 2.0 * f64::EPSILON * abs_sum,
                evaluations: n + 2,
                status: OracleStatus::Converged,
            });
        }
    }
    Err(Error::NonConvergent { terms: MAX_TERMS })
}

/// Evaluate the integrand at `x ≥ 0`.
///
/// With a direct evaluator the value is returned as exact; otherwise the
/// series is truncated once three consecutive terms fall below
/// `tol · |partial sum|`, and the first omitted term (plus a rounding floor)
/// is the error estimate.
pub fn eval_series(spec: &SeriesSpec, x: f64, tol: f64) -> Result<OracleResult> {
    if !(x >= 0.0) {
        return Err(Error::InvalidSpec(format!(
            "series argument must be >= 0, got {x}"
        )));
    }
    if let Some(f) = &spec.direct {
        return Ok(OracleResult {
            value: f(x),
            error_estimate: 0.0,
            evaluations: 1,
            status: OracleStatus::Converged,
        });
    }
    sum_terms(|n| spec.term(n, x), tol)
}

/// Same as [`eval_series`] but ignores any direct evaluator.
pub fn eval_series_truncated(spec: &SeriesSpec, x: f64, tol: f64) -> Result<OracleResult> {
    if !(x >= 0.0) {
        return Err(Error::InvalidSpec(format!(
            "series argument must be >= 0, got {x}"
        )));
    }
    sum_terms(|n| spec.term(n, x), tol)
}
