//! Catalog-wide checks: every entry's closed form against its expected value
//! and its oracle, plus the invariants on the entry set itself.

use std::collections::{BTreeMap, BTreeSet};

use rmt_core::catalog::{
    closed_form, list_entries, oracle, rules_covered, run_entry, Provenance, Rule,
};
use rmt_core::{Catalog, OracleStatus};

fn no_overrides() -> BTreeMap<String, f64> {
    BTreeMap::new()
}

#[test]
fn ids_unique_and_rules_known() {
    let entries = list_entries();
    let ids: BTreeSet<_> = entries.iter().map(|e| e.id.as_str()).collect();
    assert_eq!(ids.len(), entries.len());
    for e in &entries {
        e.rule().unwrap_or_else(|err| panic!("{}: {err}", e.id));
    }
}

#[test]
fn every_rule_has_an_entry() {
    let covered = rules_covered(&list_entries());
    let missing: Vec<_> = Rule::ALL.iter().filter(|r| !covered.contains(r)).collect();
    assert!(missing.is_empty(), "{missing:?}");
}

#[test]
fn literature_entries_name_their_source() {
    for e in list_entries() {
        if e.expected_provenance == Provenance::Literature {
            assert!(e.description.contains("source:"), "{}", e.id);
        }
    }
}

#[test]
fn landmark_entries_listed() {
    let entries = list_entries();
    for id in ["pi_cubed_log2", "zeta_bose_integral", "triangular_wave_sum"] {
        assert!(entries.iter().any(|e| e.id == id), "{id}");
    }
    let again: Vec<_> = list_entries().into_iter().map(|e| e.id).collect();
    assert_eq!(
        again,
        entries.iter().map(|e| e.id.clone()).collect::<Vec<_>>()
    );
}

#[test]
fn closed_forms_match_expected_values() {
    for e in list_entries() {
        let Some(want) = e.expected else { continue };
        let r = closed_form(&e).unwrap();
        assert!(r.is_ok(), "{}: {r:?}", e.id);
        assert!(
            (r.value - want).abs() <= 1e-9 * want.abs().max(1.0),
            "{}: {} vs {want}",
            e.id,
            r.value
        );
    }
}

#[test]
fn closed_forms_match_oracles() {
    for e in list_entries() {
        let r = closed_form(&e).unwrap();
        let o = oracle(&e).unwrap();
        assert_eq!(o.status, OracleStatus::Converged, "{}: {o:?}", e.id);
        let allowed = match e.tolerance {
            Some(t) => t * o.value.abs(),
            None => (1e-7 * o.value.abs()).max(10.0 * o.error_estimate),
        };
        assert!(
            (r.value - o.value).abs() <= allowed,
            "{}: {} vs {} ± {:.2e}",
            e.id,
            r.value,
            o.value,
            o.error_estimate
        );
    }
}

#[test]
fn oracle_error_estimates_are_calibrated() {
    for e in list_entries() {
        let Some(want) = e.expected else { continue };
        let o = oracle(&e).unwrap();
        let true_err = (o.value - want).abs();
        let floor = 4.0 * f64::EPSILON * want.abs();
        assert!(
            true_err <= 10.0 * o.error_estimate + floor,
            "{}: true {true_err:.3e} vs estimate {:.3e}",
            e.id,
            o.error_estimate
        );
    }
}

#[test]
fn product_integral_symmetric_under_swap() {
    for id in ["product_exp_exp", "product_exp_half"] {
        let a = run_entry(id, &no_overrides()).unwrap();
        let b = run_entry(id, &BTreeMap::from([("swap".to_string(), 1.0)])).unwrap();
        assert!(
            (a.closed.value - b.closed.value).abs() <= 1e-9 * a.closed.value.abs(),
            "{id}: {} vs {}",
            a.closed.value,
            b.closed.value
        );
    }
}

#[test]
fn run_entry_reports_both_sides() {
    let run = run_entry("pi_cubed_log2", &no_overrides()).unwrap();
    let pi3 = std::f64::consts::PI.powi(3);
    assert!((run.closed.value - pi3).abs() <= 1e-9 * pi3);
    assert!(run.rel_gap.unwrap() <= 1e-6);

    let run = run_entry(
        "zeta_bose_integral",
        &BTreeMap::from([("s".to_string(), 4.0)]),
    )
    .unwrap();
    let want = std::f64::consts::PI.powi(4) / 15.0;
    assert!((run.closed.value - want).abs() <= 1e-9 * want);
    assert!(run.rel_gap.unwrap() <= 1e-6);

    let run = run_entry("triangular_wave_sum", &no_overrides()).unwrap();
    assert!((run.closed.value - std::f64::consts::FRAC_PI_4 * 0.5).abs() <= 1e-12);
}

#[test]
fn run_entry_rejects_unknowns() {
    assert!(run_entry("no_such_entry", &no_overrides()).is_err());
    assert!(run_entry(
        "pi_cubed_log2",
        &BTreeMap::from([("bogus".to_string(), 1.0)])
    )
    .is_err());
    let c = Catalog::builtin();
    assert!(c
        .resolve(
            "zeta_bose_integral",
            &BTreeMap::from([("s".to_string(), 100.0)])
        )
        .is_err());
}
