//! Alternating-sum identities obtained from reciprocal functional equations
//! h(x) + h(1/x) = C, checked by accelerated summation.
//!
//! | kind        | left side                                  | right side  |
//! |-------------|--------------------------------------------|-------------|
//! | `OddArctan` | Σ_{n≥0} (−1)ⁿ/(2n+1)·(φ(2n+1) + φ(−2n−1))  | (π/2)·φ(0)  |
//! | `PmOne`     | Σ_{n≥1} (−1)^{n+1}·(φ(n) + φ(−n))          | φ(0)        |
//! | `LogDeriv`  | Σ_{n≥1} (−1)^{n+1}/n·(φ(n) − φ(−n))        | φ′(0)       |
//!
//! φ at negative integers comes from the caller's continuation; no symmetry
//! of φ is assumed.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::diff::{default_step, first_derivative};
use crate::oracle::{accelerate_best, AccelMethod, OracleStatus};
use crate::series::{CoefficientFn, RealFn};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumKind {
    OddArctan,
    PmOne,
    LogDeriv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumVerdict {
    /// Accelerated numerical sum.
    pub lhs: f64,
    /// Closed form.
    pub rhs: f64,
    pub lhs_error: f64,
    pub terms_used: usize,
    pub method: AccelMethod,
    /// Domain warnings; the verdict is still computed.
    pub flags: Vec<String>,
}

impl SumVerdict {
    pub fn abs_gap(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

const TERM_SCHEDULE: [usize; 6] = [25, 50, 100, 200, 1000, 10_000];

/// Accelerate Σ term(n) for n from `start`, growing the term count until
/// the accelerated value converges. Exact zeros are dropped first, since
/// they break the alternation the accelerators rely on.
fn accelerated_sum(
    term: impl Fn(usize) -> Result<f64>,
    start: usize,
    tol: f64,
) -> Result<(f64, f64, usize, AccelMethod)> {
    let mut raw = Vec::new();
    let mut last_err = Error::NonConvergent { terms: 0 };
    for &n_terms in TERM_SCHEDULE.iter() {
        while raw.len() < n_terms {
            let t = term(start + raw.len())?;
            if !t.is_finite() {
                return Err(Error::NonConvergent { terms: raw.len() });
            }
            raw.push(t);
        }
        let terms: Vec<f64> = raw.iter().copied().filter(|t| *t != 0.0).collect();
        if terms.is_empty() {
            return Ok((0.0, 0.0, n_terms, AccelMethod::Direct));
        }
        let direct: f64 = terms.iter().sum();
        let tail = terms
            .iter()
            .rev()
            .take(5)
            .fold(0.0_f64, |m, t| m.max(t.abs()));
        if tail <= 1e-2 * tol * direct.abs() {
            return Ok((direct, tail, n_terms, AccelMethod::Direct));
        }
        let (r, method) = accelerate_best(&terms, tol);
        if r.status == OracleStatus::Converged {
            return Ok((r.value, r.error_estimate, n_terms, method));
        }
        last_err = Error::NonConvergent { terms: n_terms };
    }
    Err(last_err)
}

fn sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Right side of the identity for `kind`. For `LogDeriv` without a
/// supplied φ′(0) the derivative is taken by central differences.
pub fn sum_closed_form(
    kind: SumKind,
    phi: &CoefficientFn,
    phi_prime_at_0: Option<f64>,
) -> Result<f64> {
    match kind {
        SumKind::OddArctan => Ok(FRAC_PI_2 * phi.try_eval(0.0)?),
        SumKind::PmOne => phi.try_eval(0.0),
        SumKind::LogDeriv => match phi_prime_at_0 {
            Some(d) => Ok(d),
            None => numeric_phi_prime_at_0(phi),
        },
    }
}

/// One of the three sum analogs: the accelerated left side against
/// [`sum_closed_form`].
pub fn ramanujan_sum(
    kind: SumKind,
    phi: &CoefficientFn,
    phi_prime_at_0: Option<f64>,
    tol: f64,
) -> Result<SumVerdict> {
    let rhs = sum_closed_form(kind, phi, phi_prime_at_0)?;
    let (lhs, lhs_error, terms_used, method) = match kind {
        SumKind::OddArctan => {
            let term = |n: usize| {
                let k = (2 * n + 1) as f64;
                Ok(sign(n) / k * (phi.try_eval(k)? + phi.try_eval(-k)?))
            };
            accelerated_sum(term, 0, tol)?
        }
        SumKind::PmOne => {
            let term = |n: usize| {
                let k = n as f64;
                Ok(-sign(n) * (phi.try_eval(k)? + phi.try_eval(-k)?))
            };
            accelerated_sum(term, 1, tol)?
        }
        SumKind::LogDeriv => {
            let term = |n: usize| {
                let k = n as f64;
                Ok(-sign(n) / k * (phi.try_eval(k)? - phi.try_eval(-k)?))
            };
            accelerated_sum(term, 1, tol)?
        }
    };
    Ok(SumVerdict {
        lhs,
        rhs,
        lhs_error,
        terms_used,
        method,
        flags: vec![],
    })
}

/// φ′(0) by a fourth-order central stencil with one Richardson level.
pub fn numeric_phi_prime_at_0(phi: &CoefficientFn) -> Result<f64> {
    let h = default_step(0.0);
    if phi.poles().distance(0.0) <= 2.0 * h {
        return Err(Error::Pole(0.0));
    }
    let d = first_derivative(|x| phi.eval(x), 0.0, h);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(Error::Pole(0.0))
    }
}

/// Σ_{k≥0} η(k)·(φ(k) + φ(−k)) against C·φ(0).
pub fn general_reciprocal_relation(
    eta: &CoefficientFn,
    c: f64,
    phi: &CoefficientFn,
    tol: f64,
) -> Result<SumVerdict> {
    let term = |k: usize| {
        let e = eta.try_eval(k as f64)?;
        if e == 0.0 {
            return Ok(0.0);
        }
        let x = k as f64;
        Ok(e * (phi.try_eval(x)? + phi.try_eval(-x)?))
    };
    let (lhs, lhs_error, terms_used, method) = accelerated_sum(term, 0, tol)?;
    Ok(SumVerdict {
        lhs,
        rhs: c * phi.try_eval(0.0)?,
        lhs_error,
        terms_used,
        method,
        flags: vec![],
    })
}

/// h(x) = g(x) − g(1/x) + C/2, which satisfies h(x) + h(1/x) = C for x > 0.
pub fn make_reciprocal_h(g: impl Fn(f64) -> f64 + Send + Sync + 'static, c: f64) -> RealFn {
    Arc::new(move |x: f64| g(x) - g(1.0 / x) + 0.5 * c)
}

/// Warning when θ lies outside the interval on which the sum identity for
/// `kind` holds for trigonometric φ.
pub fn theta_domain_flag(kind: SumKind, theta: f64) -> Option<String> {
    let (lim, what) = match kind {
        SumKind::OddArctan => (FRAC_PI_2, "(−π/2, π/2)"),
        SumKind::PmOne | SumKind::LogDeriv => (PI, "(−π, π)"),
    };
    (theta.abs() >= lim)
        .then(|| format!("θ = {theta} is outside {what}; the closed form changes branch there"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::accelerate_with;

    fn cos_n(theta: f64, a: f64) -> CoefficientFn {
        CoefficientFn::new("a·cos(nθ)", move |x| a * (x * theta).cos())
    }

    fn sin_n(theta: f64, a: f64) -> CoefficientFn {
        CoefficientFn::new("a·sin(nθ)", move |x| a * (x * theta).sin())
    }

    #[test]
    fn quarter_pi_series() {
        let v = ramanujan_sum(SumKind::OddArctan, &cos_n(0.7, 0.5), None, 1e-12).unwrap();
        assert!((v.lhs - PI / 4.0).abs() < 1e-10, "{v:?}");
        assert!(v.abs_gap() < 1e-10);
        assert!(v.terms_used <= 200);
    }

    #[test]
    fn half_theta_series() {
        let v = ramanujan_sum(SumKind::LogDeriv, &sin_n(1.0, 0.5), Some(0.5), 1e-12).unwrap();
        assert!((v.lhs - 0.5).abs() < 1e-10, "{v:?}");
        let numeric = ramanujan_sum(SumKind::LogDeriv, &sin_n(1.0, 0.5), None, 1e-12).unwrap();
        assert!((numeric.rhs - 0.5).abs() < 1e-8);
    }

    #[test]
    fn triangular_wave() {
        let theta = 0.5;
        let phi = CoefficientFn::new("a·sin(nθ)/n", move |x| {
            if x == 0.0 {
                0.5 * theta
            } else {
                0.5 * (x * theta).sin() / x
            }
        });
        let v = ramanujan_sum(SumKind::OddArctan, &phi, None, 1e-12).unwrap();
        assert!((v.lhs - PI * theta / 4.0).abs() < 1e-10, "{v:?}");
        assert!((v.rhs - PI * theta / 4.0).abs() < 1e-15);
    }

    #[test]
    fn pm_one_even_cosines() {
        for &theta in &[0.3, 1.0, 1.4] {
            let v = ramanujan_sum(SumKind::PmOne, &cos_n(theta, 1.0), None, 1e-10).unwrap();
            assert!((v.lhs - 1.0).abs() <= 1e-10 * 2.0, "θ = {theta}: {v:?}");
        }
    }

    #[test]
    fn general_relation_reproduces_special_cases() {
        let eta = CoefficientFn::new("(−1)^{k+1}, k ≥ 1", |k| {
            if k == 0.0 {
                0.0
            } else {
                -sign(k as usize)
            }
        });
        let v = general_reciprocal_relation(&eta, 1.0, &cos_n(1.0, 1.0), 1e-12).unwrap();
        assert!((v.lhs - 1.0).abs() < 1e-10, "{v:?}");

        let odd = CoefficientFn::new("odd arctan weights", |k| {
            let k = k as usize;
            if k.is_multiple_of(2) {
                0.0
            } else {
                sign((k - 1) / 2) / k as f64
            }
        });
        let v = general_reciprocal_relation(&odd, FRAC_PI_2, &cos_n(0.7, 0.5), 1e-12).unwrap();
        assert!((v.lhs - PI / 4.0).abs() < 1e-10);
    }

    #[test]
    fn lorentzian_does_not_satisfy_pm_one() {
        // 2Σ(−1)^{k+1}/(1+k²) = 1 − π/sinh π, not φ(0) = 1
        let eta = CoefficientFn::new("(−1)^{k+1}, k ≥ 1", |k| {
            if k == 0.0 {
                0.0
            } else {
                -sign(k as usize)
            }
        });
        let phi = CoefficientFn::new("1/(1+k²)", |k| 1.0 / (1.0 + k * k));
        let v = general_reciprocal_relation(&eta, 1.0, &phi, 1e-12).unwrap();
        assert!((v.lhs - (1.0 - PI / PI.sinh())).abs() < 1e-11, "{v:?}");
        assert!(v.abs_gap() > 0.2);
    }

    #[test]
    fn reciprocal_h() {
        let h = make_reciprocal_h(|x| x, 0.0);
        assert!((h(2.0) + h(0.5)).abs() < 1e-15);
        let h = make_reciprocal_h(f64::ln_1p, PI);
        assert!((h(2.0) + h(0.5) - PI).abs() < 1e-15);
    }

    #[test]
    fn euler_and_levin_agree() {
        let terms: Vec<f64> = (1..200)
            .map(|n| -sign(n) * (n as f64).sin() / n as f64)
            .collect();
        let e = accelerate_with(&terms, AccelMethod::Euler).unwrap();
        let l = accelerate_with(&terms, AccelMethod::Levin).unwrap();
        assert!((e.value - 0.5).abs() < 1e-10);
        if l.error < 1e-10 {
            assert!((e.value - l.value).abs() < 1e-9);
        }
    }

    #[test]
    fn theta_flags() {
        assert!(theta_domain_flag(SumKind::OddArctan, 0.5).is_none());
        assert!(theta_domain_flag(SumKind::OddArctan, 1.7).is_some());
        assert!(theta_domain_flag(SumKind::LogDeriv, 3.5).is_some());
    }
}
