//! Built-in coefficient families. A catalog entry names one by key; the
//! family owns the continuation φ, its poles, and the direct integrand for
//! each series shape it supports.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::series::{CoefficientFn, PoleSet, RealFn, SeriesKind, SeriesSpec};
use crate::specfun::{bessel_j, gamma};
use crate::{Error, Result};

pub const PHI_FAMILIES: &[&str] = &[
    "const_one",
    "power",
    "gamma_ratio",
    "binomial_plain",
    "bessel_coeff",
    "inv_factorial",
    "factorial",
    "sinc",
    "cos_ntheta",
    "sin_ntheta",
    "sin_ntheta_over_n",
    "inv_one_plus_sq",
];

pub const ETA_FAMILIES: &[&str] = &["alt_from_one", "odd_arctan"];

pub const G_FAMILIES: &[&str] = &["identity", "ln1p", "arctan"];

/// Read access to an entry's parameters. The view for a second family
/// looks up each name with the suffix `_psi`.
pub(crate) struct Params<'a> {
    map: &'a BTreeMap<String, f64>,
    suffix: &'static str,
}

impl<'a> Params<'a> {
    pub fn new(map: &'a BTreeMap<String, f64>) -> Self {
        Params { map, suffix: "" }
    }

    pub fn aux(&self) -> Self {
        Params {
            map: self.map,
            suffix: "_psi",
        }
    }

    fn lookup(&self, name: &str) -> Option<f64> {
        self.map.get(&format!("{name}{}", self.suffix)).copied()
    }

    pub fn get(&self, name: &str) -> Result<f64> {
        self.lookup(name)
            .ok_or_else(|| Error::Catalog(format!("missing parameter `{name}{}`", self.suffix)))
    }

    pub fn get_or(&self, name: &str, default: f64) -> f64 {
        self.lookup(name).unwrap_or(default)
    }
}

fn no_form(family: &str, kind: SeriesKind) -> Error {
    Error::Catalog(format!("family `{family}` has no {kind:?} form"))
}

fn unknown(family: &str) -> Error {
    Error::Catalog(format!("unknown coefficient family `{family}`"))
}

/// 1/Γ(x), zero at the poles of Γ.
fn rgamma(x: f64) -> f64 {
    let g = gamma(x);
    if g.value.is_nan() {
        0.0
    } else {
        1.0 / g.value
    }
}

/// Coefficient function alone, for products and sums.
pub(crate) fn coefficient(family: &str, p: &Params) -> Result<CoefficientFn> {
    Ok(match family {
        "const_one" => CoefficientFn::constant(1.0),
        "power" => {
            let l = p.get("lambda")?;
            if !(l > 0.0) {
                return Err(Error::Catalog(format!(
                    "power family needs lambda > 0, got {l}"
                )));
            }
            CoefficientFn::new(format!("λⁿ, λ = {l}"), move |x| l.powf(x))
        }
        "gamma_ratio" => {
            let beta = p.get("beta")?;
            let gb = gamma(beta).value;
            CoefficientFn::new(format!("Γ(β+n)/Γ(β), β = {beta}"), move |x| {
                gamma(beta + x).value / gb
            })
            .with_poles(PoleSet::DescendingFrom(-beta))
        }
        "binomial_plain" => {
            let beta = p.get("beta")?;
            let gb = gamma(beta).value;
            CoefficientFn::new(format!("Γ(β+n)/(Γ(β)·n!), β = {beta}"), move |x| {
                gamma(beta + x).value * rgamma(x + 1.0) / gb
            })
            .with_poles(PoleSet::DescendingFrom(-beta))
        }
        "bessel_coeff" => {
            let alpha = p.get("alpha")?;
            CoefficientFn::new(
                format!("2^(−2n−α)/Γ(n+α+1), α = {alpha}"),
                move |x| 2f64.powf(-2.0 * x - alpha) * rgamma(x + alpha + 1.0),
            )
        }
        "inv_factorial" => CoefficientFn::new("1/n!", |x| rgamma(x + 1.0)),
        "factorial" => CoefficientFn::new("n!", |x| gamma(x + 1.0).value)
            .with_poles(PoleSet::DescendingFrom(-1.0)),
        "sinc" => CoefficientFn::new("1/(n+1)", |x| 1.0 / (x + 1.0))
            .with_poles(PoleSet::Points(vec![-1.0])),
        "cos_ntheta" => {
            let (t, a) = (p.get("theta")?, p.get_or("amplitude", 1.0));
            CoefficientFn::new(format!("a·cos(nθ), a = {a}, θ = {t}"), move |x| {
                a * (x * t).cos()
            })
        }
        "sin_ntheta" => {
            let (t, a) = (p.get("theta")?, p.get_or("amplitude", 1.0));
            CoefficientFn::new(format!("a·sin(nθ), a = {a}, θ = {t}"), move |x| {
                a * (x * t).sin()
            })
        }
        "sin_ntheta_over_n" => {
            let (t, a) = (p.get("theta")?, p.get_or("amplitude", 1.0));
            CoefficientFn::new(format!("a·sin(nθ)/n, a = {a}, θ = {t}"), move |x| {
                if x == 0.0 {
                    a * t
                } else {
                    a * (x * t).sin() / x
                }
            })
        }
        "inv_one_plus_sq" => CoefficientFn::new("1/(1+n²)", |x| 1.0 / (1.0 + x * x)),
        _ => return Err(unknown(family)),
    })
}

/// Full series description with the direct integrand.
pub(crate) fn spec(family: &str, kind: SeriesKind, p: &Params) -> Result<SeriesSpec> {
    let phi = coefficient(family, p)?;
    let spec = SeriesSpec::new(phi, kind);
    use SeriesKind::*;
    Ok(match (family, kind) {
        ("const_one", ExpAlternating) => spec.with_direct(|x| (-x).exp()),
        ("const_one", PlainAlternating) => spec.with_direct(|x| 1.0 / (1.0 + x)),
        ("const_one", CosType) => spec.with_direct(f64::cos),
        ("const_one", SinType) => spec.with_direct(f64::sin),
        ("power", _) => {
            let l = p.get("lambda")?;
            match kind {
                ExpAlternating => spec.with_direct(move |x| (-l * x).exp()),
                PlainAlternating => spec.with_direct(move |x| 1.0 / (1.0 + l * x)),
                CosType => spec.with_direct(move |x| (l * x).cos()),
                SinType => spec.with_direct(move |x| (l * x).sin()),
            }
        }
        ("gamma_ratio", ExpAlternating) | ("binomial_plain", PlainAlternating) => {
            let (alpha, beta) = (p.get("alpha")?, p.get("beta")?);
            spec.with_powers(0.0, alpha)?
                .with_direct(move |x| (-beta * (alpha * x.ln()).exp().ln_1p()).exp())
        }
        ("bessel_coeff", ExpAlternating) => {
            let (alpha, m) = (p.get("alpha")?, p.get("m")?);
            spec.with_powers(alpha * m, 2.0 * m)?
                .with_direct(move |x| bessel_j(alpha, x.powf(m)).value)
        }
        ("inv_factorial", PlainAlternating) => {
            spec.with_powers(0.0, 2.0)?.with_direct(|x| (-x * x).exp())
        }
        ("factorial", ExpAlternating) => spec.with_direct(|x| 1.0 / (1.0 + x)),
        ("factorial", CosType) => spec.with_direct(|x| 1.0 / (1.0 + x * x)),
        ("sinc", CosType) => spec.with_direct(|x| if x == 0.0 { 1.0 } else { x.sin() / x }),
        _ => {
            if PHI_FAMILIES.contains(&family) {
                return Err(no_form(family, kind));
            }
            return Err(unknown(family));
        }
    })
}

/// Z(x) = Σ_{n≥1} f(nx) in closed form, for families that have one.
pub(crate) fn zeta_direct(family: &str, p: &Params) -> Result<RealFn> {
    match family {
        "const_one" => Ok(Arc::new(|x: f64| 1.0 / x.exp_m1())),
        "power" => {
            let l = p.get("lambda")?;
            Ok(Arc::new(move |x: f64| 1.0 / (l * x).exp_m1()))
        }
        _ => Err(Error::Catalog(format!(
            "family `{family}` has no closed form for Σ f(nx)"
        ))),
    }
}

/// Angular frequency of the trig integrand, for families f = cos(λx) / sin(λx).
pub(crate) fn frequency(family: &str, p: &Params) -> Result<f64> {
    match family {
        "const_one" => Ok(1.0),
        "power" => p.get("lambda"),
        _ => Err(Error::Catalog(format!(
            "family `{family}` is not a pure oscillation"
        ))),
    }
}

pub(crate) fn eta(family: &str) -> Result<CoefficientFn> {
    Ok(match family {
        "alt_from_one" => CoefficientFn::new("(−1)^(k+1) for k ≥ 1", |k| {
            if k == 0.0 {
                0.0
            } else if k % 2.0 == 0.0 {
                -1.0
            } else {
                1.0
            }
        }),
        "odd_arctan" => CoefficientFn::new("(−1)^((k−1)/2)/k for odd k", |k| {
            if k % 2.0 == 0.0 {
                0.0
            } else if ((k - 1.0) / 2.0) % 2.0 == 0.0 {
                1.0 / k
            } else {
                -1.0 / k
            }
        }),
        _ => return Err(Error::Catalog(format!("unknown weight family `{family}`"))),
    })
}

pub(crate) fn g_function(family: &str) -> Result<RealFn> {
    Ok(match family {
        "identity" => Arc::new(|x: f64| x),
        "ln1p" => Arc::new(f64::ln_1p),
        "arctan" => Arc::new(f64::atan),
        _ => return Err(Error::Catalog(format!("unknown g family `{family}`"))),
    })
}
