//! Special functions against reference values computed with mpmath at 40
//! digits, frozen here.

use rmt_core::specfun::{bessel_j, bessel_k0, digamma, gamma, gen_binomial, trigamma, zeta};
use rmt_core::SpecStatus;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Relative error, or absolute when the reference is below 1 in size.
fn mixed(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

const GAMMA: &[(f64, f64)] = &[
    (0.5, 1.772453850905516),
    (1.5, 0.886226925452758),
    (4.7, 15.431411600047436),
    (-2.5, -0.9453087204829419),
    (10.3, 716430.6890623764),
    (0.01, 99.4325851191506),
    (-0.5, -3.544907701811032),
    (33.25, 6.288735965374881e+35),
    (-7.3, 0.000418387873013548),
    (150.5, 4.661072627097378e+261),
];

const DIGAMMA: &[(f64, f64)] = &[
    (0.1, -10.423754940411076),
    (1.0, -0.5772156649015329),
    (2.5, 0.7031566406452432),
    (-0.5, 0.03648997397857652),
    (15.0, 2.6743466616607936),
    (0.5, -1.9635100260214235),
    (-3.7, -0.8450768588704194),
    (100.0, 4.600161852738087),
];

const TRIGAMMA: &[(f64, f64)] = &[
    (0.1, 101.43329915079275),
    (1.0, 1.6449340668482264),
    (3.3, 0.3535015418410618),
    (-1.5, 9.379246644989124),
    (0.5, 4.934802200544679),
    (40.0, 0.02531510384129103),
];

const ZETA: &[(f64, f64)] = &[
    (1.5, 2.612375348685488),
    (2.0, 1.6449340668482264),
    (3.7, 1.1062882414646793),
    (4.0, 1.0823232337111381),
    (20.0, 1.0000009539620338),
    (1.001, 1000.5772884760116),
    (1.1, 10.584448464950801),
    (7.5, 1.005826727536523),
];

const BESSEL_J: &[(f64, f64, f64)] = &[
    (0.0, 1.0, 0.7651976865579666),
    (1.0, 1.0, 0.4400505857449335),
    (1.0, 2.5, 0.49709410246427405),
    (0.5, 10.0, -0.1372637357550505),
    (2.0, 50.0, -0.05971280079425882),
    (3.5, 0.1, 2.4016486669206174e-06),
    (0.0, 100.0, 0.019985850304223122),
    (10.0, 5.0, 0.0014678026473104741),
    (1.5, 30.0, -0.027267945711177688),
    (0.0, 22.0, -0.12065147570486719),
    (0.0, 27.0, 0.07274191800588709),
    (2.5, 24.5, 0.07893140490507027),
    (4.0, 1000.0, 0.024748265003654773),
];

const BESSEL_K0: &[(f64, f64)] = &[
    (0.01, 4.721244730161095),
    (0.5, 0.9244190712276659),
    (1.0, 0.42102443824070834),
    (2.0, 0.11389387274953344),
    (5.0, 0.0036910983340425942),
    (18.0, 4.468753337309383e-09),
    (30.0, 2.1324774964630563e-14),
    (50.0, 3.4101677497894956e-23),
    (3.3, 0.02461063214583932),
    (9.9, 1.9746725315662e-05),
];

#[test]
fn gamma_reference_values() {
    for &(x, v) in GAMMA {
        let g = gamma(x);
        assert_eq!(g.status, SpecStatus::Ok, "x = {x}");
        assert!(rel(g.value, v) <= 1e-12, "Γ({x}) = {} vs {v}", g.value);
    }
}

#[test]
fn gamma_poles() {
    for x in [0.0, -1.0, -2.0, -17.0] {
        assert_eq!(gamma(x).status, SpecStatus::Pole, "x = {x}");
    }
    assert_eq!(gamma(1.0).value, 1.0);
}

#[test]
fn digamma_reference_values() {
    for &(x, v) in DIGAMMA {
        let d = digamma(x);
        assert_eq!(d.status, SpecStatus::Ok);
        assert!(mixed(d.value, v) <= 1e-12, "ψ₀({x}) = {} vs {v}", d.value);
    }
    assert_eq!(digamma(-3.0).status, SpecStatus::Pole);
}

#[test]
fn trigamma_reference_values() {
    for &(x, v) in TRIGAMMA {
        let t = trigamma(x);
        assert_eq!(t.status, SpecStatus::Ok);
        assert!(rel(t.value, v) <= 1e-12, "ψ₁({x}) = {} vs {v}", t.value);
    }
    assert_eq!(trigamma(0.0).status, SpecStatus::Pole);
}

#[test]
fn zeta_reference_values() {
    for &(s, v) in ZETA {
        let z = zeta(s);
        assert_eq!(z.status, SpecStatus::Ok);
        assert!(rel(z.value, v) <= 1e-13, "ζ({s}) = {} vs {v}", z.value);
    }
    assert_eq!(zeta(1.0).status, SpecStatus::Pole);
    assert_eq!(zeta(0.5).status, SpecStatus::DomainError);
    assert_eq!(zeta(-2.0).status, SpecStatus::DomainError);
}

#[test]
fn bessel_j_reference_values() {
    for &(a, x, v) in BESSEL_J {
        let j = bessel_j(a, x);
        assert_eq!(j.status, SpecStatus::Ok);
        assert!(rel(j.value, v) <= 1e-10, "J_{a}({x}) = {} vs {v}", j.value);
    }
    assert_eq!(bessel_j(0.0, 0.0).value, 1.0);
    assert!(bessel_j(0.0, 2.404_825_557_695_773).value.abs() <= 1e-10);
}

#[test]
fn bessel_k0_reference_values() {
    for &(x, v) in BESSEL_K0 {
        let k = bessel_k0(x);
        assert_eq!(k.status, SpecStatus::Ok);
        assert!(rel(k.value, v) <= 1e-10, "K₀({x}) = {} vs {v}", k.value);
    }
    assert_eq!(bessel_k0(0.0).status, SpecStatus::DomainError);
    assert_eq!(bessel_k0(-1.0).status, SpecStatus::DomainError);
}

#[test]
fn binomial_products() {
    assert_eq!(gen_binomial(-1.5, 0), 1.0);
    assert_eq!(gen_binomial(-1.5, 1), -1.5);
    assert_eq!(gen_binomial(-1.5, 2), 1.875);
    assert_eq!(gen_binomial(5.0, 7), 0.0);
}
