//! Independent numerical evaluation of the integrals and sums that the
//! closed forms claim to solve.
//!
//! Nothing here consults a closed form. Integrals use tanh-sinh quadrature
//! on (0, 1] panels; oscillatory tails are cut at kernel zeros and the
//! panel sequence is accelerated.

mod accel;
mod tanh_sinh;

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::bessel_j;

pub use accel::{
    abel_sum, accelerate_alternating, accelerate_best, accelerate_with, euler_transform, levin_u,
    AccelMethod, Accelerated,
};
pub use tanh_sinh::{Quadrature, TanhSinh};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Converged,
    MaxEffort,
    DivergentSuspected,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: f64,
    /// Absolute error estimate.
    pub error_estimate: f64,
    pub evaluations: usize,
    pub status: OracleStatus,
}

impl OracleResult {
    pub fn is_converged(&self) -> bool {
        self.status == OracleStatus::Converged
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// cos(sx)
    Cos,
    /// sin(sx)
    Sin,
    /// x·J₀(sx)
    J0Weighted,
}

/// Per-panel tolerance relative to the caller's.
fn panel_tol(tol: f64) -> f64 {
    (tol * 1e-2).max(1e-15)
}

fn status_from(converged: bool, divergent: bool) -> OracleStatus {
    if divergent {
        OracleStatus::DivergentSuspected
    } else if converged {
        OracleStatus::Converged
    } else {
        OracleStatus::MaxEffort
    }
}

/// ∫₀^∞ x^{s−1} lnᵐ(x) f(x) dx.
///
/// Split at x = 1; the upper half is mapped to (0, 1] by x → 1/x. Points
/// where f returns exactly zero contribute zero regardless of the weight,
/// so integrands that underflow far out are safe.
pub fn integrate_mellin(
    mut f: impl FnMut(f64) -> f64,
    s: f64,
    log_power: u32,
    tol: f64,
) -> OracleResult {
    let ts = TanhSinh::new(panel_tol(tol));
    let m = log_power as i32;
    let lower = ts.integrate(
        |x| {
            let y = f(x);
            if y == 0.0 {
                return 0.0;
            }
            let l = x.ln();
            weighted(y, (s - 1.0) * l) * l.powi(m)
        },
        0.0,
        1.0,
    );
    let upper = ts.integrate(
        |t| {
            let y = f(1.0 / t);
            if y == 0.0 {
                return 0.0;
            }
            let l = t.ln();
            weighted(y, (-s - 1.0) * l) * (-l).powi(m)
        },
        0.0,
        1.0,
    );
    combine(&[lower, upper], tol)
}

/// y·e^{lw} without overflowing when the product itself is representable.
#[inline]
fn weighted(y: f64, lw: f64) -> f64 {
    y.signum() * (lw + y.abs().ln()).exp()
}

fn combine(parts: &[Quadrature], tol: f64) -> OracleResult {
    let value: f64 = parts.iter().map(|q| q.value).sum();
    let error: f64 = parts.iter().map(|q| q.error).sum();
    let l1: f64 = parts.iter().map(|q| q.l1).sum();
    let evaluations = parts.iter().map(|q| q.evaluations).sum::<usize>().max(1);
    let divergent = parts.iter().any(|q| q.endpoint_mass);
    let converged = parts.iter().all(|q| q.converged)
        && (error <= tol * value.abs() || error <= 16.0 * f64::EPSILON * l1);
    OracleResult {
        value,
        error_estimate: error,
        evaluations,
        status: status_from(converged, divergent),
    }
}

const FIRST_PANELS: usize = 32;
const MAX_PANELS: usize = 8192;

/// Σₖ panel(k), accelerated. The panel count doubles until the accelerated
/// sum plus the accumulated quadrature error meets `tol`.
pub fn integrate_panels(mut panel: impl FnMut(usize) -> Quadrature, tol: f64) -> OracleResult {
    let mut values = Vec::new();
    let mut quad_err = 0.0;
    let mut l1 = 0.0;
    let mut evaluations = 0usize;
    let mut target = FIRST_PANELS;
    loop {
        while values.len() < target {
            let q = panel(values.len());
            values.push(q.value);
            quad_err += q.error;
            l1 += q.l1;
            evaluations += q.evaluations;
        }
        let (acc, _) = accelerate_best(&values, tol);
        let error = acc.error_estimate + quad_err;
        let floor = 16.0 * f64::EPSILON * l1;
        // Panels that grow through the tail mean a divergent integral, even
        // when the accelerator settles on its analytic continuation.
        let n = values.len();
        let growing = values[n - 1].abs() > values[n / 2].abs() && values[n - 1].abs() > floor;
        let converged = !growing && (error <= tol * acc.value.abs() || error <= floor);
        if growing {
            return OracleResult {
                value: acc.value,
                error_estimate: error.max(floor),
                evaluations: evaluations.max(1),
                status: OracleStatus::DivergentSuspected,
            };
        }
        if converged || target >= MAX_PANELS {
            let status = if converged {
                OracleStatus::Converged
            } else if acc.status == OracleStatus::DivergentSuspected {
                OracleStatus::DivergentSuspected
            } else {
                OracleStatus::MaxEffort
            };
            return OracleResult {
                value: acc.value,
                error_estimate: error.max(floor),
                evaluations: evaluations.max(1),
                status,
            };
        }
        target *= 2;
    }
}

/// ∫₀^∞ g over panels [b(k), b(k+1)], with b(0) = 0 and b increasing.
pub fn integrate_partitioned(
    g: impl Fn(f64) -> f64,
    breakpoints: impl Fn(usize) -> f64,
    tol: f64,
) -> OracleResult {
    let ts = TanhSinh::new(panel_tol(tol));
    integrate_panels(
        |k| ts.integrate(&g, breakpoints(k), breakpoints(k + 1)),
        tol,
    )
}

/// k-th positive zero of J₀ (k ≥ 1): McMahon expansion refined by Newton
/// steps. One step suffices from k = 3 on; the first zeros take two or three.
pub fn j0_zero(k: usize) -> f64 {
    let b = (k as f64 - 0.25) * PI;
    let b2 = b * b;
    let mut z = b + 1.0 / (8.0 * b) - 31.0 / (384.0 * b * b2) + 3779.0 / (15360.0 * b * b2 * b2);
    for _ in 0..4 {
        let dz = bessel_j(0.0, z).value / bessel_j(1.0, z).value;
        z += dz;
        if dz.abs() <= 1e-15 * z {
            break;
        }
    }
    z
}

/// k-th positive zero of J_α (k ≥ 1), McMahon's leading terms. Used only as
/// panel boundaries, which need not be exact.
pub fn bessel_zero_estimate(alpha: f64, k: usize) -> f64 {
    let b = (k as f64 + 0.5 * alpha - 0.25) * PI;
    let mu = 4.0 * alpha * alpha;
    b - (mu - 1.0) / (8.0 * b)
}

/// ∫₀^∞ K(sx) f(x) dx for the trig kernels, ∫₀^∞ x J₀(sx) f(x) dx for
/// `J0Weighted`.
pub fn integrate_oscillatory(
    f: impl Fn(f64) -> f64,
    kernel: Kernel,
    s: f64,
    tol: f64,
) -> Result<OracleResult> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidSpec(format!(
            "oscillatory kernel needs s > 0, got {s}"
        )));
    }
    let r = match kernel {
        Kernel::Cos => integrate_partitioned(
            |x| (s * x).cos() * f(x),
            |k| {
                if k == 0 {
                    0.0
                } else {
                    (k as f64 - 0.5) * PI / s
                }
            },
            tol,
        ),
        Kernel::Sin => integrate_partitioned(|x| (s * x).sin() * f(x), |k| k as f64 * PI / s, tol),
        Kernel::J0Weighted => integrate_partitioned(
            |x| x * bessel_j(0.0, s * x).value * f(x),
            |k| if k == 0 { 0.0 } else { j0_zero(k) / s },
            tol,
        ),
    };
    Ok(r)
}

/// ∫₀^∞ f(x)/√(x² + ξ²) dx for ξ > 0, panels cut at (k ± ½)π.
///
/// The first panel uses x = ξ sinh u, removing the near-singularity at
/// small ξ.
pub fn inner_hyperbolic(f: &impl Fn(f64) -> f64, xi: f64, tol: f64) -> OracleResult {
    let ts = TanhSinh::new(panel_tol(tol));
    let u_max = (FRAC_PI_2 / xi).asinh();
    integrate_panels(
        |k| {
            if k == 0 {
                ts.integrate(|u| f(xi * u.sinh()), 0.0, u_max)
            } else {
                let a = (k as f64 - 0.5) * PI;
                ts.integrate(|x| f(x) / x.hypot(xi), a, a + PI)
            }
        },
        tol,
    )
}

/// ∫₀^∞ dξ ξ^{s−1} ∫₀^∞ dx f(x)/√(x² + ξ²).
///
/// Inner values below their own error estimate are taken as zero. The
/// reported error adds the outer estimate and the Mellin integral of the
/// inner error estimates, taken over the cached inner results.
pub fn integrate_double_mellin(f: impl Fn(f64) -> f64, s: f64, tol: f64) -> OracleResult {
    let inner_tol = (tol * 1e-3).max(1e-13);
    // Keys are bit patterns of positive nodes, so key order is numeric order.
    let mut cache: BTreeMap<u64, OracleResult> = BTreeMap::new();
    let mut evaluations = 0usize;
    let mut inner_ok = true;
    let outer = integrate_mellin(
        |xi| {
            let r = *cache.entry(xi.to_bits()).or_insert_with(|| {
                let r = inner_hyperbolic(&f, xi, inner_tol);
                evaluations += r.evaluations;
                r
            });
            if r.value.abs() <= 2.0 * r.error_estimate {
                return 0.0;
            }
            inner_ok &= r.status != OracleStatus::DivergentSuspected;
            r.value
        },
        s,
        0,
        tol,
    );
    // Error weight of each inner result: its estimate, or its whole value
    // where that value was zeroed.
    let weight = |r: &OracleResult| {
        if r.value.abs() <= 2.0 * r.error_estimate {
            r.value.abs().max(r.error_estimate)
        } else {
            r.error_estimate
        }
    };
    // Integrated from the cache alone, interpolating log weight against
    // log ξ between cached neighbours; tail weights follow power laws, and
    // nearest-neighbour steps across sparse tail nodes would overstate them.
    // Beyond the sampled range the outer estimate already covers
    // truncation, so weight is zero.
    let propagated = integrate_mellin(
        |xi| {
            let key = xi.to_bits();
            let (Some((&kb, rb)), Some((&ka, ra))) =
                (cache.range(..=key).next_back(), cache.range(key..).next())
            else {
                return 0.0;
            };
            let (wb, wa) = (weight(rb), weight(ra));
            if kb == ka || wb == wa {
                return wb;
            }
            if wb <= 0.0 || wa <= 0.0 {
                return 0.0;
            }
            let (lb, la) = (f64::from_bits(kb).ln(), f64::from_bits(ka).ln());
            let t = (xi.ln() - lb) / (la - lb);
            ((1.0 - t) * wb.ln() + t * wa.ln()).exp()
        },
        s,
        0,
        1e-1,
    );
    let error = outer.error_estimate + propagated.value.abs();
    let status = match outer.status {
        OracleStatus::Converged if !inner_ok => OracleStatus::MaxEffort,
        OracleStatus::Converged if error > tol * outer.value.abs() && outer.value != 0.0 => {
            OracleStatus::MaxEffort
        }
        st => st,
    };
    OracleResult {
        value: outer.value,
        error_estimate: error,
        evaluations: evaluations.max(1),
        status,
    }
}
