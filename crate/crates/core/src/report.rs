//! Verification reports.
//!
//! Floats are written with 17 significant digits, so parsing a report
//! reproduces every value bit for bit. Non-finite values become `null`; a
//! `null` closed value reads back as NaN.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::catalog::EntryRun;
use crate::mellin::ClosedFormStatus;
use crate::oracle::OracleStatus;

/// Pass threshold when neither the caller nor the entry sets one.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    Pass,
    Fail,
    OracleSkipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub entry_id: String,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub closed_value: f64,
    #[serde(serialize_with = "ser_opt", deserialize_with = "de_opt")]
    pub oracle_value: Option<f64>,
    #[serde(serialize_with = "ser_opt", deserialize_with = "de_opt")]
    pub rel_gap: Option<f64>,
    pub rule: String,
    pub trace: Vec<String>,
    pub status: ReportStatus,
    pub closed_status: ClosedFormStatus,
    pub validity_notes: Vec<String>,
    pub oracle_status: Option<OracleStatus>,
    #[serde(serialize_with = "ser_opt", deserialize_with = "de_opt")]
    pub oracle_error: Option<f64>,
    #[serde(serialize_with = "ser_opt", deserialize_with = "de_opt")]
    pub tolerance: Option<f64>,
    #[serde(serialize_with = "ser_map")]
    pub params: BTreeMap<String, f64>,
}

impl Report {
    /// Build from a run. `tolerance` overrides the entry's own threshold.
    pub fn from_run(run: &EntryRun, tolerance: Option<f64>) -> Self {
        let mut trace = run.closed.trace.clone();
        let oracle = run.oracle.as_ref();
        let tol = oracle.map(|_| {
            tolerance
                .or(run.entry.tolerance)
                .unwrap_or(DEFAULT_TOLERANCE)
        });
        let status = match (oracle, run.rel_gap, tol) {
            (None, _, _) => ReportStatus::OracleSkipped,
            (Some(_), Some(gap), Some(tol)) if gap <= tol => ReportStatus::Pass,
            _ => ReportStatus::Fail,
        };
        if let Some(o) = oracle {
            trace.push(format!(
                "oracle: {} ± {:.2e} ({:?}, {} evaluations)",
                fmt17(o.value),
                o.error_estimate,
                o.status,
                o.evaluations
            ));
        }
        if status == ReportStatus::Fail {
            match (run.rel_gap, tol) {
                (Some(gap), Some(tol)) => {
                    trace.push(format!(
                        "relative gap {gap:.3e} exceeds tolerance {tol:.1e}"
                    ));
                    trace.extend(
                        run.closed
                            .validity_notes
                            .iter()
                            .filter(|n| n.contains("asymptotic"))
                            .cloned(),
                    );
                }
                _ if !run.closed.is_ok() => {
                    trace.push(format!("closed form unavailable: {:?}", run.closed.status))
                }
                _ => trace.push("oracle produced no value".into()),
            }
        }
        Report {
            entry_id: run.entry.id.clone(),
            closed_value: run.closed.value,
            oracle_value: oracle.map(|o| o.value).filter(|v| v.is_finite()),
            rel_gap: run.rel_gap,
            rule: run.closed.rule.clone(),
            trace,
            status,
            closed_status: run.closed.status,
            validity_notes: run.closed.validity_notes.clone(),
            oracle_status: oracle.map(|o| o.status),
            oracle_error: oracle.map(|o| o.error_estimate).filter(|v| v.is_finite()),
            tolerance: tol,
            params: run.entry.params.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// 17 significant digits, or `null` for non-finite values.
pub fn fmt17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".into()
    }
}

fn raw(v: f64) -> Box<RawValue> {
    RawValue::from_string(fmt17(v)).expect("formatted float is valid JSON")
}

fn ser_f64<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw(*v).serialize(s)
}

fn ser_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => raw(*v).serialize(s),
        None => s.serialize_none(),
    }
}

fn ser_map<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
    let mut out = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        out.serialize_entry(k, &raw(*v))?;
    }
    out.end()
}

fn de_f64<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

fn de_opt<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
    Option::<f64>::deserialize(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [
            std::f64::consts::PI,
            0.1,
            -0.0,
            5e-324,
            1.7976931348623157e308,
            31.006276680397022,
        ] {
            let back: f64 = fmt17(v).parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{v}");
        }
        assert_eq!(fmt17(f64::NAN), "null");
    }

    #[test]
    fn report_json_round_trip() {
        let c = Catalog::builtin();
        let run = c.run_entry("pi_cubed_log2", &BTreeMap::new()).unwrap();
        let r = Report::from_run(&run, None);
        assert_eq!(r.status, ReportStatus::Pass);
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.closed_value.to_bits(), r.closed_value.to_bits());
    }

    #[test]
    fn skipped_without_oracle() {
        let c = Catalog::builtin();
        let run = c.eval_entry("gamma_s_basic", &BTreeMap::new()).unwrap();
        let r = Report::from_run(&run, None);
        assert_eq!(r.status, ReportStatus::OracleSkipped);
        assert!(r.oracle_value.is_none() && r.tolerance.is_none());
    }

    #[test]
    fn entry_tolerance_and_override() {
        let c = Catalog::builtin();
        let run = c
            .run_entry("laplace_asymptotic_hard", &BTreeMap::new())
            .unwrap();
        assert_eq!(Report::from_run(&run, None).status, ReportStatus::Pass);
        let strict = Report::from_run(&run, Some(1e-12));
        assert_eq!(strict.status, ReportStatus::Fail);
        assert!(
            strict.trace.iter().any(|t| t.contains("asymptotic")),
            "{:?}",
            strict.trace
        );
    }
}
