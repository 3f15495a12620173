//! Series solutions of Fourier, Laplace and Hankel (order 0) transforms of
//! exponential-type integrands f(x) = Σ (−1)ⁿ φ(n) xⁿ/n!, and the product
//! integral ∫ f·g.
//!
//! Each transform has a convergent small-s series in φ at negative
//! arguments and an asymptotic large-s series in φ at non-negative ones:
//!
//! | transform | convergent                         | asymptotic                          |
//! |-----------|------------------------------------|-------------------------------------|
//! | cos       | Σ (−1)ⁿ φ(−2n−1) s^{2n}            | Σ (−1)ⁿ φ(2n+1) / s^{2n+2}          |
//! | sin       | Σ (−1)ⁿ φ(−2n−2) s^{2n+1}          | Σ (−1)ⁿ φ(2n) / s^{2n+1}            |
//! | Laplace   | Σ (−1)ⁿ φ(−n−1) sⁿ                 | Σ (−1)ⁿ φ(n) / s^{n+1}              |
//! | Hankel₀   | Σ C(−3/2, n) φ(−2n−2) s^{2n}       | Σ C(−3/2, n) φ(2n+1) / s^{2n+3}     |
//!
//! Asymptotic series are cut at optimal truncation: summation stops before
//! the first term whose magnitude is not smaller than its predecessor, and
//! that term's magnitude is the error estimate.

use serde::{Deserialize, Serialize};

use crate::mellin::Parity;
use crate::oracle::{abel_sum, accelerate_best, euler_transform, AccelMethod, OracleStatus};
use crate::series::{sum_terms, CoefficientFn, SeriesKind, SeriesSpec};
use crate::specfun::gen_binomial;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Convergent,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionStatus {
    Ok,
    NonConvergent,
    OptimalTruncationHit,
    Pole,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesSolution {
    pub value: f64,
    pub regime: Regime,
    pub terms_used: usize,
    pub error_estimate: f64,
    pub status: SolutionStatus,
    pub trace: Vec<String>,
}

impl SeriesSolution {
    /// A usable value: `Ok` or stopped at optimal truncation.
    pub fn has_value(&self) -> bool {
        matches!(
            self.status,
            SolutionStatus::Ok | SolutionStatus::OptimalTruncationHit
        )
    }

    fn failed(regime: Regime, status: SolutionStatus, terms_used: usize, reason: String) -> Self {
        Self {
            value: f64::NAN,
            regime,
            terms_used,
            error_estimate: f64::INFINITY,
            status,
            trace: vec![reason],
        }
    }
}

const CONVERGENT_TOL: f64 = 1e-16;
/// Asymptotic sums also stop once terms fall below this relative size.
const ASYMPTOTIC_TOL: f64 = 1e-17;
const ASYMPTOTIC_MAX_TERMS: usize = 10_000;

fn check_spec(spec: &SeriesSpec, s: f64, regime: Regime) -> Result<(), SeriesSolution> {
    if spec.kind() != SeriesKind::ExpAlternating || !spec.is_standard_powers() {
        return Err(SeriesSolution::failed(
            regime,
            SolutionStatus::NonConvergent,
            0,
            "transform series need an exponential-type spec with p = 0, q = 1".into(),
        ));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(SeriesSolution::failed(
            regime,
            SolutionStatus::NonConvergent,
            0,
            format!("needs s > 0, got {s}"),
        ));
    }
    Ok(())
}

/// Sum `term(n)` under the contract of `regime`.
fn sum_regime(
    regime: Regime,
    label: String,
    term: impl Fn(usize) -> Result<f64, Error>,
) -> SeriesSolution {
    match regime {
        Regime::Convergent => match sum_terms(&term, CONVERGENT_TOL) {
            Ok(r) => SeriesSolution {
                value: r.value,
                regime,
                terms_used: r.evaluations - 1,
                error_estimate: r.error_estimate,
                status: SolutionStatus::Ok,
                trace: vec![format!(
                    "{label}: {} terms, sum {}",
                    r.evaluations - 1,
                    r.value
                )],
            },
            Err(Error::Pole(x)) => SeriesSolution::failed(
                regime,
                SolutionStatus::Pole,
                0,
                format!("φ is singular at {x}"),
            ),
            Err(Error::NonConvergent { terms }) => SeriesSolution::failed(
                regime,
                SolutionStatus::NonConvergent,
                terms,
                format!("{label}: terms do not decay (s outside the radius of convergence)"),
            ),
            Err(e) => {
                SeriesSolution::failed(regime, SolutionStatus::NonConvergent, 0, e.to_string())
            }
        },
        Regime::Asymptotic => optimal_truncation(label, term),
    }
}

fn optimal_truncation(label: String, term: impl Fn(usize) -> Result<f64, Error>) -> SeriesSolution {
    let regime = Regime::Asymptotic;
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut prev = f64::INFINITY;
    for n in 0..ASYMPTOTIC_MAX_TERMS {
        let t = match term(n) {
            Ok(t) => t,
            Err(Error::Pole(x)) => {
                return SeriesSolution::failed(
                    regime,
                    SolutionStatus::Pole,
                    n,
                    format!("φ is singular at {x}"),
                )
            }
            Err(e) => {
                return SeriesSolution::failed(
                    regime,
                    SolutionStatus::NonConvergent,
                    n,
                    e.to_string(),
                )
            }
        };
        let mag = t.abs();
        if !t.is_finite() || (n > 0 && mag >= prev && mag != 0.0) {
            return SeriesSolution {
                value: sum,
                regime,
                terms_used: n,
                error_estimate: if t.is_finite() { mag } else { prev },
                status: SolutionStatus::OptimalTruncationHit,
                trace: vec![format!("{label}: smallest term at index {}, stopped after {n} terms, first omitted |t| = {mag:e}", n - 1)],
            };
        }
        if n > 0 && sum != 0.0 && mag <= ASYMPTOTIC_TOL * sum.abs() {
            return SeriesSolution {
                value: sum,
                regime,
                terms_used: n,
                error_estimate: mag + 2.0 * f64::EPSILON * abs_sum,
                status: SolutionStatus::Ok,
                trace: vec![format!(
                    "{label}: terms below rounding after {n} terms, sum {sum}"
                )],
            };
        }
        sum += t;
        abs_sum += mag;
        prev = mag;
    }
    SeriesSolution::failed(
        regime,
        SolutionStatus::NonConvergent,
        ASYMPTOTIC_MAX_TERMS,
        format!("{label}: neither converged nor reached a smallest term"),
    )
}

fn alt(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Series solution of ∫₀^∞ cos(sx) f(x) dx or ∫₀^∞ sin(sx) f(x) dx.
pub fn fourier_series_solution(
    spec: &SeriesSpec,
    s: f64,
    kernel: Parity,
    regime: Regime,
) -> SeriesSolution {
    if let Err(r) = check_spec(spec, s, regime) {
        return r;
    }
    let phi = spec.phi();
    let ln_s = s.ln();
    match (kernel, regime) {
        (Parity::Cos, Regime::Convergent) => {
            sum_regime(regime, "Σ(−1)ⁿφ(−2n−1)s^{2n}".into(), |n| {
                let k = n as f64;
                Ok(alt(n) * phi.try_eval(-2.0 * k - 1.0)? * (2.0 * k * ln_s).exp())
            })
        }
        (Parity::Cos, Regime::Asymptotic) => {
            sum_regime(regime, "Σ(−1)ⁿφ(2n+1)/s^{2n+2}".into(), |n| {
                let k = n as f64;
                Ok(alt(n) * phi.try_eval(2.0 * k + 1.0)? * (-(2.0 * k + 2.0) * ln_s).exp())
            })
        }
        (Parity::Sin, Regime::Convergent) => {
            sum_regime(regime, "Σ(−1)ⁿφ(−2n−2)s^{2n+1}".into(), |n| {
                let k = n as f64;
                Ok(alt(n) * phi.try_eval(-2.0 * k - 2.0)? * ((2.0 * k + 1.0) * ln_s).exp())
            })
        }
        (Parity::Sin, Regime::Asymptotic) => {
            sum_regime(regime, "Σ(−1)ⁿφ(2n)/s^{2n+1}".into(), |n| {
                let k = n as f64;
                Ok(alt(n) * phi.try_eval(2.0 * k)? * (-(2.0 * k + 1.0) * ln_s).exp())
            })
        }
    }
}

/// Series solution of ∫₀^∞ e^{−sx} f(x) dx.
pub fn laplace_series_solution(spec: &SeriesSpec, s: f64, regime: Regime) -> SeriesSolution {
    if let Err(r) = check_spec(spec, s, regime) {
        return r;
    }
    let phi = spec.phi();
    let ln_s = s.ln();
    match regime {
        Regime::Convergent => sum_regime(regime, "Σ(−1)ⁿφ(−n−1)sⁿ".into(), |n| {
            let k = n as f64;
            Ok(alt(n) * phi.try_eval(-k - 1.0)? * (k * ln_s).exp())
        }),
        Regime::Asymptotic => sum_regime(regime, "Σ(−1)ⁿφ(n)/s^{n+1}".into(), |n| {
            let k = n as f64;
            Ok(alt(n) * phi.try_eval(k)? * (-(k + 1.0) * ln_s).exp())
        }),
    }
}

/// Series solution of ∫₀^∞ x J₀(sx) f(x) dx.
pub fn hankel0_series_solution(spec: &SeriesSpec, s: f64, regime: Regime) -> SeriesSolution {
    if let Err(r) = check_spec(spec, s, regime) {
        return r;
    }
    let phi = spec.phi();
    let ln_s = s.ln();
    match regime {
        Regime::Convergent => sum_regime(regime, "ΣC(−3/2,n)φ(−2n−2)s^{2n}".into(), |n| {
            let k = n as f64;
            Ok(gen_binomial(-1.5, n as u32)
                * phi.try_eval(-2.0 * k - 2.0)?
                * (2.0 * k * ln_s).exp())
        }),
        Regime::Asymptotic => sum_regime(regime, "ΣC(−3/2,n)φ(2n+1)/s^{2n+3}".into(), |n| {
            let k = n as f64;
            Ok(gen_binomial(-1.5, n as u32)
                * phi.try_eval(2.0 * k + 1.0)?
                * (-(2.0 * k + 3.0) * ln_s).exp())
        }),
    }
}

/// Euler fallback sizes; partial sums of geometric-type terms stay exact
/// in binary up to about 2⁵⁰.
const EULER_SIZES: [usize; 5] = [16, 24, 32, 40, 48];
const PRODUCT_TOL: f64 = 1e-12;

/// ∫₀^∞ f(x) g(x) dx = Σ (−1)ⁿ φ(n) ψ(−n−1), where φ and ψ are the
/// exponential-series coefficients of f and g.
///
/// Decaying terms are accelerated directly. Otherwise the sum is read in
/// the Abel sense, and failing that in the Euler (E,1) sense; the trace
/// names the method that produced the value.
pub fn product_integral(
    phi: &CoefficientFn,
    psi: &CoefficientFn,
    max_terms: usize,
) -> SeriesSolution {
    let regime = Regime::Convergent;
    let term = |n: usize| -> Result<f64, Error> {
        let k = n as f64;
        let a = phi.try_eval(k)?;
        if a == 0.0 {
            return Ok(0.0);
        }
        Ok(alt(n) * a * psi.try_eval(-k - 1.0)?)
    };
    let n_terms = max_terms.max(8);
    let mut terms = Vec::with_capacity(n_terms);
    for n in 0..n_terms {
        match term(n) {
            Ok(t) => terms.push(t),
            Err(Error::Pole(x)) => {
                return SeriesSolution::failed(
                    regime,
                    SolutionStatus::Pole,
                    n,
                    format!("coefficient singular at {x}"),
                )
            }
            Err(e) => {
                return SeriesSolution::failed(
                    regime,
                    SolutionStatus::NonConvergent,
                    n,
                    e.to_string(),
                )
            }
        }
    }
    let mut trace = vec![format!(
        "Σ(−1)ⁿφ(n)ψ(−n−1), φ: {}, ψ: {}",
        phi.description(),
        psi.description()
    )];

    let head = terms[..n_terms / 2]
        .iter()
        .fold(0.0_f64, |m, t| m.max(t.abs()));
    let finite = terms.iter().all(|t| t.is_finite());
    if finite && terms[n_terms - 1].abs() <= 0.5 * head {
        let (r, method) = accelerate_best(&terms, PRODUCT_TOL);
        if r.status == OracleStatus::Converged {
            trace.push(format!(
                "terms decay; {method:?} acceleration over {n_terms} terms → {}",
                r.value
            ));
            return SeriesSolution {
                value: r.value,
                regime,
                terms_used: n_terms,
                error_estimate: r.error_estimate,
                status: SolutionStatus::Ok,
                trace,
            };
        }
        trace.push(format!("acceleration did not settle ({:?})", r.status));
    }

    let abel = abel_sum(|n| term(n).unwrap_or(f64::NAN), PRODUCT_TOL);
    if abel.status == OracleStatus::Converged {
        trace.push(format!("terms do not decay; Abel sum → {}", abel.value));
        return SeriesSolution {
            value: abel.value,
            regime,
            terms_used: abel.evaluations,
            error_estimate: abel.error_estimate,
            status: SolutionStatus::Ok,
            trace,
        };
    }
    trace.push(format!("Abel summation failed ({:?})", abel.status));

    for &n in EULER_SIZES.iter().filter(|&&n| n <= n_terms) {
        let e = euler_transform(&terms[..n]);
        if e.error <= PRODUCT_TOL * e.value.abs() {
            trace.push(format!(
                "{:?} (E,1) transform over {n} terms → {}",
                AccelMethod::Euler,
                e.value
            ));
            return SeriesSolution {
                value: e.value,
                regime,
                terms_used: n,
                error_estimate: e.error,
                status: SolutionStatus::Ok,
                trace,
            };
        }
    }
    let mut r = SeriesSolution::failed(
        regime,
        SolutionStatus::NonConvergent,
        n_terms,
        "non-summable: Abel and Euler both failed".into(),
    );
    r.trace.splice(0..0, trace);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    fn one() -> SeriesSpec {
        SeriesSpec::new(CoefficientFn::constant(1.0), SeriesKind::ExpAlternating)
    }

    fn factorial() -> SeriesSpec {
        let phi = CoefficientFn::new("n!", |x| gamma(x + 1.0).value)
            .with_poles(crate::series::PoleSet::DescendingFrom(-1.0));
        SeriesSpec::new(phi, SeriesKind::ExpAlternating)
    }

    #[test]
    fn fourier_examples() {
        let r = fourier_series_solution(&one(), 0.5, Parity::Cos, Regime::Convergent);
        assert!((r.value - 0.8).abs() < 1e-15);
        let r = fourier_series_solution(&one(), 10.0, Parity::Sin, Regime::Asymptotic);
        assert!((r.value - 10.0 / 101.0).abs() <= r.error_estimate + 1e-16);
        let r = fourier_series_solution(&one(), 2.0, Parity::Cos, Regime::Convergent);
        assert_eq!(r.status, SolutionStatus::NonConvergent);
        let r = fourier_series_solution(&one(), 0.5, Parity::Sin, Regime::Convergent);
        assert!((r.value - 0.4).abs() < 1e-15);
        let r = fourier_series_solution(&one(), 10.0, Parity::Cos, Regime::Asymptotic);
        assert!((r.value - 1.0 / 101.0).abs() < 1e-15);
    }

    #[test]
    fn laplace_examples() {
        let r = laplace_series_solution(&one(), 0.25, Regime::Convergent);
        assert!((r.value - 0.8).abs() < 1e-15);
        let r = laplace_series_solution(&one(), 20.0, Regime::Asymptotic);
        assert!((r.value - 1.0 / 21.0).abs() <= r.error_estimate);
        let r = laplace_series_solution(&factorial(), 5.0, Regime::Asymptotic);
        assert_eq!(r.status, SolutionStatus::OptimalTruncationHit);
        assert!((r.value - 0.170_422_176_382_247_8).abs() <= r.error_estimate);
        let r = laplace_series_solution(&factorial(), 0.5, Regime::Convergent);
        assert_eq!(r.status, SolutionStatus::Pole);
    }

    #[test]
    fn hankel_examples() {
        let r = hankel0_series_solution(&one(), 0.5, Regime::Convergent);
        assert!((r.value - 1.25f64.powf(-1.5)).abs() < 1e-15);
        let r = hankel0_series_solution(&one(), 10.0, Regime::Asymptotic);
        assert!((r.value - 101f64.powf(-1.5)).abs() <= r.error_estimate + 1e-18);
        let r = hankel0_series_solution(&one(), 2.0, Regime::Convergent);
        assert_eq!(r.status, SolutionStatus::NonConvergent);
    }

    #[test]
    fn product_examples() {
        let one = CoefficientFn::constant(1.0);
        let r = product_integral(&one, &one, 200);
        assert!((r.value - 0.5).abs() < 1e-10, "{r:?}");
        let half = CoefficientFn::new("2⁻ⁿ", |x| 2f64.powf(-x));
        let r = product_integral(&half, &one, 200);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-12);
        let r = product_integral(&one, &half, 200);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-9, "{r:?}");
    }
}
