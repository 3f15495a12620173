//! Convergence acceleration and summability for alternating and formally
//! divergent series.

use serde::{Deserialize, Serialize};

use super::{OracleResult, OracleStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AccelMethod {
    Euler,
    Levin,
    Direct,
}

/// Outcome of one acceleration attempt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accelerated {
    pub value: f64,
    pub error: f64,
    /// Magnitude scale of the data; rounding limits the error to ~ε·scale.
    pub scale: f64,
    pub method: AccelMethod,
}

impl Accelerated {
    fn converged(&self, tol: f64) -> bool {
        self.error.is_finite()
            && (self.error <= tol * self.value.abs()
                || self.error <= 8.0 * f64::EPSILON * self.scale)
    }

    fn into_result(self, tol: f64, evaluations: usize) -> OracleResult {
        let status = if self.converged(tol) {
            OracleStatus::Converged
        } else if !self.error.is_finite() || self.error > self.value.abs() {
            OracleStatus::DivergentSuspected
        } else {
            OracleStatus::MaxEffort
        };
        OracleResult {
            value: self.value,
            error_estimate: self.error,
            evaluations,
            status,
        }
    }
}

fn partial_sums(terms: &[f64]) -> Vec<f64> {
    terms
        .iter()
        .scan(0.0, |acc, t| {
            *acc += t;
            Some(*acc)
        })
        .collect()
}

/// Euler transformation as repeated averaging of partial sums.
///
/// Level k holds `T[k][n] = (T[k−1][n] + T[k−1][n+1]) / 2`. Each level is
/// scored by the spread of its last three entries; the best-scoring level
/// supplies the value, and the spread is its error estimate.
pub fn euler_transform(terms: &[f64]) -> Accelerated {
    let mut row = partial_sums(terms);
    if row.is_empty() {
        return Accelerated {
            value: 0.0,
            error: 0.0,
            scale: 0.0,
            method: AccelMethod::Euler,
        };
    }
    if row.len() < 3 {
        let v = *row.last().unwrap();
        let e = terms.last().unwrap().abs();
        return Accelerated {
            value: v,
            error: e,
            scale: v.abs(),
            method: AccelMethod::Euler,
        };
    }
    let mut best = Accelerated {
        value: f64::NAN,
        error: f64::INFINITY,
        scale: 0.0,
        method: AccelMethod::Euler,
    };
    while row.len() >= 3 {
        let m = row.len();
        let (a, b, c) = (row[m - 3], row[m - 2], row[m - 1]);
        let spread = (c - b).abs().max((b - a).abs());
        let scale = a.abs().max(b.abs()).max(c.abs());
        let err = spread.max(4.0 * f64::EPSILON * scale);
        if err < best.error {
            best = Accelerated {
                value: c,
                error: err,
                scale,
                method: AccelMethod::Euler,
            };
        }
        for i in 0..m - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
    }
    best
}

/// Levin u-transform with β = 1. `None` when a term vanishes (the remainder
/// estimates become singular) or fewer than three terms are given.
pub fn levin_u(terms: &[f64]) -> Option<Accelerated> {
    const BETA: f64 = 1.0;
    const KMAX: usize = 30;
    if terms.len() < 3 || terms.iter().any(|t| *t == 0.0 || !t.is_finite()) {
        return None;
    }
    let sums = partial_sums(terms);
    let kmax = (terms.len() - 1).min(KMAX);
    let mut prev = f64::NAN;
    let mut best: Option<Accelerated> = None;
    let scale = sums.iter().fold(0.0_f64, |m, s| m.max(s.abs()));
    for k in 1..=kmax {
        let kf = k as f64;
        let mut num = 0.0;
        let mut den = 0.0;
        let mut binom = 1.0;
        for j in 0..=k {
            let jf = j as f64;
            let w = binom * ((BETA + jf) / (BETA + kf)).powi(k as i32 - 1);
            let omega = (BETA + jf) * terms[j];
            let signed = if j % 2 == 0 { w } else { -w };
            num += signed * sums[j] / omega;
            den += signed / omega;
            binom *= (kf - jf) / (jf + 1.0);
        }
        let est = num / den;
        if !est.is_finite() {
            break;
        }
        if prev.is_finite() {
            let err = (est - prev).abs().max(4.0 * f64::EPSILON * scale);
            if best.is_none_or(|b| err < b.error) {
                best = Some(Accelerated {
                    value: est,
                    error: err,
                    scale,
                    method: AccelMethod::Levin,
                });
            }
        }
        prev = est;
    }
    best
}

/// Run one specific method.
pub fn accelerate_with(terms: &[f64], method: AccelMethod) -> Option<Accelerated> {
    match method {
        AccelMethod::Euler => Some(euler_transform(terms)),
        AccelMethod::Levin => levin_u(terms),
        AccelMethod::Direct => {
            let sums = partial_sums(terms);
            let v = *sums.last()?;
            let scale = sums.iter().fold(0.0_f64, |m, s| m.max(s.abs()));
            Some(Accelerated {
                value: v,
                error: terms.last()?.abs().max(4.0 * f64::EPSILON * scale),
                scale,
                method: AccelMethod::Direct,
            })
        }
    }
}

/// Euler transformation first; Levin-u when Euler misses `tol`. The more
/// accurate of the two is returned, along with the method that produced it.
pub fn accelerate_best(terms: &[f64], tol: f64) -> (OracleResult, AccelMethod) {
    let euler = euler_transform(terms);
    let chosen = if euler.converged(tol) {
        euler
    } else {
        match levin_u(terms) {
            Some(l) if l.error < euler.error => l,
            _ => euler,
        }
    };
    (chosen.into_result(tol, terms.len()), chosen.method)
}

/// Sum a sequence of terms that eventually alternate in sign.
pub fn accelerate_alternating(terms: &[f64], tol: f64) -> OracleResult {
    accelerate_best(terms, tol).0
}

/// Abel sum lim_{η→1⁻} Σ term(n) ηⁿ on the grid η = 1 − 2^{−(j+1)},
/// Richardson-extrapolated in h = 1 − η.
pub fn abel_sum(mut term: impl FnMut(usize) -> f64, tol: f64) -> OracleResult {
    const LEVELS: usize = 11;
    let mut evaluations = 0usize;
    let mut raw: Vec<f64> = Vec::new();
    let mut table: Vec<Vec<f64>> = Vec::new();
    let mut last = (f64::NAN, f64::INFINITY);

    for j in 0..LEVELS {
        let h = 0.5_f64.powi(j as i32 + 1);
        let eta = 1.0 - h;
        let Some((a, used)) = power_sum(&mut term, eta) else {
            return OracleResult {
                value: f64::NAN,
                error_estimate: f64::INFINITY,
                evaluations: evaluations.max(1),
                status: OracleStatus::DivergentSuspected,
            };
        };
        evaluations += used;
        raw.push(a);

        let mut row = vec![a];
        if let Some(prev) = table.last() {
            for k in 1..=j {
                let r = row[k - 1] + (row[k - 1] - prev[k - 1]) / ((1u64 << k) as f64 - 1.0);
                row.push(r);
            }
        }
        let est = *row.last().unwrap();
        table.push(row);
        if j >= 2 {
            let err = (est - last.0).abs().max(8.0 * f64::EPSILON * a.abs());
            if err < last.1 || !last.1.is_finite() {
                last = (est, err);
            } else {
                last.0 = est;
            }
            if err <= tol * est.abs() || err == 0.0 {
                return OracleResult {
                    value: est,
                    error_estimate: err,
                    evaluations,
                    status: OracleStatus::Converged,
                };
            }
        } else {
            last.0 = est;
        }
    }

    let n = raw.len();
    let growing =
        raw[n - 1].abs() > 1.5 * raw[n - 2].abs() && raw[n - 2].abs() > 1.5 * raw[n - 3].abs();
    let status = if growing || last.1 > last.0.abs() {
        OracleStatus::DivergentSuspected
    } else {
        OracleStatus::MaxEffort
    };
    OracleResult {
        value: last.0,
        error_estimate: last.1,
        evaluations,
        status,
    }
}

/// Σ term(n) ηⁿ summed to rounding level; `None` if it does not settle.
fn power_sum(term: &mut impl FnMut(usize) -> f64, eta: f64) -> Option<(f64, usize)> {
    let decay = -eta.ln();
    let cap = (2.0 * 40.0 / decay) as usize + 200;
    let mut sum = 0.0;
    let mut pow = 1.0;
    let mut quiet = 0;
    for n in 0..cap {
        let t = term(n) * pow;
        if !t.is_finite() {
            return None;
        }
        sum += t;
        quiet = if t.abs() <= 1e-17 * sum.abs().max(1e-300) {
            quiet + 1
        } else {
            0
        };
        if (quiet >= 5 && n >= 10) || pow == 0.0 {
            return Some((sum, n + 1));
        }
        pow *= eta;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn sign(n: usize) -> f64 {
        if n.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    #[test]
    fn ln2_in_thirty_terms() {
        let terms: Vec<f64> = (0..30).map(|n| sign(n) / (n as f64 + 1.0)).collect();
        let r = accelerate_alternating(&terms, 1e-12);
        assert_eq!(r.status, OracleStatus::Converged);
        assert!((r.value - LN_2).abs() < 1e-12, "{}", r.value - LN_2);
        let e = euler_transform(&terms);
        assert!((e.value - LN_2).abs() < 1e-12);
    }

    #[test]
    fn grandi_series() {
        let terms: Vec<f64> = (0..20).map(sign).collect();
        let r = accelerate_alternating(&terms, 1e-12);
        assert_eq!(r.value, 0.5);
        assert_eq!(r.status, OracleStatus::Converged);
    }

    #[test]
    fn zeros() {
        let r = accelerate_alternating(&[0.0; 10], 1e-12);
        assert_eq!(r.value, 0.0);
        assert_eq!(r.status, OracleStatus::Converged);
        assert!(r.evaluations > 0);
    }

    #[test]
    fn levin_on_ln2() {
        let terms: Vec<f64> = (0..20).map(|n| sign(n) / (n as f64 + 1.0)).collect();
        let l = levin_u(&terms).unwrap();
        assert!((l.value - LN_2).abs() < 1e-12);
        assert!(levin_u(&[1.0, 0.0, 1.0, 2.0]).is_none());
    }

    #[test]
    fn euler_sums_ratio_minus_two_geometric() {
        // Σ 2(−2)ⁿ, (E,1)-summable to 2/3
        let terms: Vec<f64> = (0..48).map(|n| 2.0 * (-2.0_f64).powi(n)).collect();
        let e = euler_transform(&terms);
        assert!((e.value - 2.0 / 3.0).abs() < 1e-12, "{}", e.value);
    }

    #[test]
    fn abel_examples() {
        let r = abel_sum(sign, 1e-12);
        assert_eq!(r.status, OracleStatus::Converged);
        assert!((r.value - 0.5).abs() < 1e-12);

        let r = abel_sum(|n| sign(n) * (n as f64 + 1.0), 1e-10);
        assert_eq!(r.status, OracleStatus::Converged);
        assert!((r.value - 0.25).abs() < 1e-10, "{}", r.value);

        let r = abel_sum(|_| 1.0, 1e-10);
        assert_eq!(r.status, OracleStatus::DivergentSuspected);
    }

    #[test]
    fn abel_rejects_radius_below_one() {
        let r = abel_sum(|n| 2.0 * (-2.0_f64).powi(n as i32), 1e-10);
        assert_eq!(r.status, OracleStatus::DivergentSuspected);
    }
}
