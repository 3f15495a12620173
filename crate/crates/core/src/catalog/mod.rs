//! Registry of worked examples. Each entry binds a coefficient family, a
//! closed-form rule and default parameters; [`Catalog::run_entry`] evaluates
//! the rule and the matching numerical oracle side by side.
//!
//! The built-in entries ship embedded. A user file named by
//! `RMT_CATALOG_PATH` is merged at load; its entries may use only built-in
//! families and rules.
//!
//! `spec_key` names the family, with a second family after `/` for rules
//! that take two (a product's ψ, a reciprocal relation's φ). Parameters of
//! the second family carry the suffix `_psi`.

pub mod families;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::mellin::{
    gaussian_cos_rmt, rmt_double, rmt_general, rmt_log, rmt_log_numeric, rmt_plain_general,
    rmt_trig, rmt_zeta, ClosedFormResult, ClosedFormStatus, Parity,
};
use crate::oracle::{
    bessel_zero_estimate, integrate_double_mellin, integrate_mellin, integrate_oscillatory,
    integrate_partitioned, Kernel, OracleResult, OracleStatus,
};
use crate::series::{SeriesKind, SeriesSpec};
use crate::specfun::bessel_j;
use crate::sums::{
    general_reciprocal_relation, make_reciprocal_h, ramanujan_sum, sum_closed_form,
    theta_domain_flag, SumKind,
};
use crate::transforms::{
    fourier_series_solution, hankel0_series_solution, laplace_series_solution, product_integral,
    Regime, SeriesSolution, SolutionStatus,
};
use crate::{Error, Result};
use families::Params;

const BUILTIN: &str = include_str!("catalog.json");

/// Environment variable naming an extra catalog file.
pub const CATALOG_PATH_VAR: &str = "RMT_CATALOG_PATH";

const QUAD_TOL: f64 = 1e-12;
const OSC_TOL: f64 = 1e-11;
const DOUBLE_TOL: f64 = 1e-8;
const SUM_TOL: f64 = 1e-12;
const PRODUCT_TERMS: usize = 400;

/// Where an entry's expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// A published identity; the description names its source.
    #[serde(alias = "paper")]
    Literature,
    Trivial,
    /// Computed independently at high precision.
    Derived,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub spec_key: String,
    pub rule: String,
    pub params: BTreeMap<String, f64>,
    /// Inclusive bounds for overrides. Parameters without a range accept
    /// any finite value.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ranges: BTreeMap<String, [f64; 2]>,
    /// Value at the default parameters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    pub expected_provenance: Provenance,
    /// Relative gap that counts as a pass when the caller gives none.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl CatalogEntry {
    pub fn rule(&self) -> Result<Rule> {
        self.rule.parse()
    }

    fn families(&self) -> (&str, Option<&str>) {
        match self.spec_key.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (self.spec_key.as_str(), None),
        }
    }
}

/// Closed-form operations an entry can bind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    RmtGeneral,
    RmtPlainGeneral,
    RmtZeta,
    RmtLog,
    RmtLogNumeric,
    RmtTrig,
    GaussianCosRmt,
    RmtDouble,
    FourierSeriesSolution,
    LaplaceSeriesSolution,
    Hankel0SeriesSolution,
    ProductIntegral,
    RamanujanSum,
    GeneralReciprocalRelation,
    MakeReciprocalH,
}

impl Rule {
    pub const ALL: [Rule; 15] = [
        Rule::RmtGeneral,
        Rule::RmtPlainGeneral,
        Rule::RmtZeta,
        Rule::RmtLog,
        Rule::RmtLogNumeric,
        Rule::RmtTrig,
        Rule::GaussianCosRmt,
        Rule::RmtDouble,
        Rule::FourierSeriesSolution,
        Rule::LaplaceSeriesSolution,
        Rule::Hankel0SeriesSolution,
        Rule::ProductIntegral,
        Rule::RamanujanSum,
        Rule::GeneralReciprocalRelation,
        Rule::MakeReciprocalH,
    ];

    /// Name of the library operation, as written in catalog files.
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::RmtGeneral => "rmt_general",
            Rule::RmtPlainGeneral => "rmt_plain_general",
            Rule::RmtZeta => "rmt_zeta",
            Rule::RmtLog => "rmt_log",
            Rule::RmtLogNumeric => "rmt_log_numeric",
            Rule::RmtTrig => "rmt_trig",
            Rule::GaussianCosRmt => "gaussian_cos_rmt",
            Rule::RmtDouble => "rmt_double",
            Rule::FourierSeriesSolution => "fourier_series_solution",
            Rule::LaplaceSeriesSolution => "laplace_series_solution",
            Rule::Hankel0SeriesSolution => "hankel0_series_solution",
            Rule::ProductIntegral => "product_integral",
            Rule::RamanujanSum => "ramanujan_sum",
            Rule::GeneralReciprocalRelation => "general_reciprocal_relation",
            Rule::MakeReciprocalH => "make_reciprocal_h",
        }
    }

    fn takes_two_families(self) -> bool {
        matches!(
            self,
            Rule::ProductIntegral | Rule::GeneralReciprocalRelation
        )
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Catalog(format!("unknown rule `{s}`")))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Closed form and oracle for one entry at resolved parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryRun {
    /// The entry with overrides applied.
    pub entry: CatalogEntry,
    pub closed: ClosedFormResult,
    pub oracle: Option<OracleResult>,
    /// |closed − oracle| / |oracle|, or the absolute gap when the oracle
    /// value is zero. Absent unless both sides produced values.
    pub rel_gap: Option<f64>,
}

pub fn relative_gap(closed: f64, oracle: f64) -> f64 {
    let d = (closed - oracle).abs();
    if oracle == 0.0 {
        d
    } else {
        d / oracle.abs()
    }
}

/// Parse a catalog document: a JSON array of entries, or a sequence of
/// entry objects (one per line, or pretty-printed).
pub fn parse_entries(text: &str) -> Result<Vec<CatalogEntry>> {
    let trimmed = text.trim_start_matches('\u{feff}').trim();
    if trimmed.starts_with('[') {
        return Ok(serde_json::from_str(trimmed)?);
    }
    serde_json::Deserializer::from_str(trimmed)
        .into_iter()
        .map(|e| e.map_err(Error::from))
        .collect()
}

/// Loaded, validated catalog. Immutable once built.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Built-in entries only.
    pub fn builtin() -> Self {
        let entries = parse_entries(BUILTIN).expect("embedded catalog parses");
        let mut c = Catalog { entries: vec![] };
        c.extend(entries).expect("embedded catalog validates");
        c
    }

    /// Built-in entries plus the file named by `RMT_CATALOG_PATH`, if set.
    pub fn load() -> Result<Self> {
        let mut c = Self::builtin();
        if let Some(path) = std::env::var_os(CATALOG_PATH_VAR) {
            c.merge_file(Path::new(&path))?;
        }
        Ok(c)
    }

    pub fn merge_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        self.extend(parse_entries(&text)?)
    }

    /// Validate and append entries. Nothing is added if any entry fails.
    pub fn extend(&mut self, entries: Vec<CatalogEntry>) -> Result<()> {
        let mut ids: std::collections::HashSet<String> =
            self.entries.iter().map(|e| e.id.clone()).collect();
        for e in &entries {
            if !ids.insert(e.id.clone()) {
                return Err(Error::Catalog(format!("duplicate entry id `{}`", e.id)));
            }
            validate(e)?;
        }
        self.entries.extend(entries);
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Entries whose id or rule contains `pattern`.
    pub fn filter(&self, pattern: &str) -> Vec<&CatalogEntry> {
        self.entries
            .iter()
            .filter(|e| e.id.contains(pattern) || e.rule.contains(pattern))
            .collect()
    }

    pub fn get(&self, id: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEntry(id.into()))
    }

    /// The entry with overrides applied and checked against its ranges.
    pub fn resolve(&self, id: &str, overrides: &BTreeMap<String, f64>) -> Result<CatalogEntry> {
        let mut entry = self.get(id)?.clone();
        for (name, &value) in overrides {
            if !entry.params.contains_key(name) {
                return Err(Error::UnknownParam {
                    entry: id.into(),
                    name: name.clone(),
                });
            }
            let (lo, hi) = entry
                .ranges
                .get(name)
                .map_or((f64::NEG_INFINITY, f64::INFINITY), |r| (r[0], r[1]));
            if !(value.is_finite() && value >= lo && value <= hi) {
                return Err(Error::ParamOutOfRange {
                    name: name.clone(),
                    value,
                    lo,
                    hi,
                });
            }
            entry.params.insert(name.clone(), value);
        }
        Ok(entry)
    }

    /// Closed form only.
    pub fn eval_entry(&self, id: &str, overrides: &BTreeMap<String, f64>) -> Result<EntryRun> {
        let entry = self.resolve(id, overrides)?;
        let closed = closed_form(&entry)?;
        Ok(EntryRun {
            entry,
            closed,
            oracle: None,
            rel_gap: None,
        })
    }

    /// Closed form and oracle.
    pub fn run_entry(&self, id: &str, overrides: &BTreeMap<String, f64>) -> Result<EntryRun> {
        let entry = self.resolve(id, overrides)?;
        let closed = closed_form(&entry)?;
        let oracle = oracle(&entry)?;
        let rel_gap = (closed.is_ok() && oracle.value.is_finite())
            .then(|| relative_gap(closed.value, oracle.value));
        Ok(EntryRun {
            entry,
            closed,
            oracle: Some(oracle),
            rel_gap,
        })
    }
}

/// Series description for a built-in family, with its direct integrand.
pub fn family_spec(
    family: &str,
    kind: SeriesKind,
    params: &BTreeMap<String, f64>,
) -> Result<SeriesSpec> {
    families::spec(family, kind, &Params::new(params))
}

/// Coefficient function of a built-in family.
pub fn family_coefficient(
    family: &str,
    params: &BTreeMap<String, f64>,
) -> Result<crate::CoefficientFn> {
    families::coefficient(family, &Params::new(params))
}

/// Built-in entries in file order.
pub fn list_entries() -> Vec<CatalogEntry> {
    Catalog::builtin().entries
}

/// Run a built-in or user entry (see [`Catalog::load`]).
pub fn run_entry(id: &str, overrides: &BTreeMap<String, f64>) -> Result<EntryRun> {
    Catalog::load()?.run_entry(id, overrides)
}

fn validate(e: &CatalogEntry) -> Result<()> {
    let ctx = |msg: String| Error::Catalog(format!("entry `{}`: {msg}", e.id));
    if e.id.is_empty() || e.id.chars().any(char::is_whitespace) {
        return Err(ctx("id must be non-empty without whitespace".into()));
    }
    let rule = e.rule().map_err(|err| ctx(err.to_string()))?;
    let (first, second) = e.families();
    if rule.takes_two_families() != second.is_some() {
        return Err(ctx(format!(
            "rule `{rule}` does not fit spec_key `{}`",
            e.spec_key
        )));
    }
    for (name, v) in &e.params {
        if !v.is_finite() {
            return Err(ctx(format!("parameter `{name}` is not finite")));
        }
    }
    for (name, [lo, hi]) in &e.ranges {
        let Some(v) = e.params.get(name) else {
            return Err(ctx(format!("range for undeclared parameter `{name}`")));
        };
        if !(lo <= hi && v >= lo && v <= hi) {
            return Err(ctx(format!("default {name} = {v} is outside [{lo}, {hi}]")));
        }
    }
    if e.expected_provenance == Provenance::Literature && !e.description.contains("source:") {
        return Err(ctx(
            "literature values must name their source (`source:` in the description)".into(),
        ));
    }
    let known = match rule {
        Rule::GeneralReciprocalRelation => families::ETA_FAMILIES.contains(&first),
        Rule::MakeReciprocalH => families::G_FAMILIES.contains(&first),
        _ => families::PHI_FAMILIES.contains(&first),
    };
    if !known || second.is_some_and(|f| !families::PHI_FAMILIES.contains(&f)) {
        return Err(ctx(format!("unknown family in spec_key `{}`", e.spec_key)));
    }
    // Building the closed form resolves every family and parameter lookup.
    closed_form(e).map_err(|err| ctx(err.to_string()))?;
    Ok(())
}

fn mode(p: &Params, name: &str, max: u32) -> Result<u32> {
    let v = p.get(name)?;
    if v.fract() != 0.0 || v < 0.0 || v > max as f64 {
        return Err(Error::ParamOutOfRange {
            name: name.into(),
            value: v,
            lo: 0.0,
            hi: max as f64,
        });
    }
    Ok(v as u32)
}

fn parity(p: &Params, name: &str) -> Result<Parity> {
    Ok(if mode(p, name, 1)? == 0 {
        Parity::Cos
    } else {
        Parity::Sin
    })
}

fn regime(p: &Params) -> Result<Regime> {
    Ok(if mode(p, "regime", 1)? == 0 {
        Regime::Convergent
    } else {
        Regime::Asymptotic
    })
}

fn sum_kind(p: &Params) -> Result<SumKind> {
    Ok(match mode(p, "kind", 2)? {
        0 => SumKind::OddArctan,
        1 => SumKind::PmOne,
        _ => SumKind::LogDeriv,
    })
}

fn log_order(p: &Params) -> Result<u32> {
    let m = p.get("m")?;
    if m.fract() != 0.0 || !(0.0..=8.0).contains(&m) {
        return Err(Error::ParamOutOfRange {
            name: "m".into(),
            value: m,
            lo: 0.0,
            hi: 8.0,
        });
    }
    Ok(m as u32)
}

/// Series shape of the single-family rules.
fn kind_of(rule: Rule, p: &Params) -> Result<SeriesKind> {
    Ok(match rule {
        Rule::RmtPlainGeneral => SeriesKind::PlainAlternating,
        Rule::RmtTrig => match parity(p, "parity")? {
            Parity::Cos => SeriesKind::CosType,
            Parity::Sin => SeriesKind::SinType,
        },
        Rule::GaussianCosRmt | Rule::RmtDouble => SeriesKind::CosType,
        _ => SeriesKind::ExpAlternating,
    })
}

fn solution_to_closed(rule: Rule, sol: SeriesSolution) -> ClosedFormResult {
    let mut trace = sol.trace;
    trace.push(format!(
        "{} terms, error estimate {:e}",
        sol.terms_used, sol.error_estimate
    ));
    match sol.status {
        SolutionStatus::Ok => ClosedFormResult::ok(rule.as_str(), sol.value, trace, vec![]),
        SolutionStatus::OptimalTruncationHit => ClosedFormResult::ok(
            rule.as_str(),
            sol.value,
            trace,
            vec![format!(
                "asymptotic series stopped at its smallest term; accuracy floor ≈ {:e}",
                sol.error_estimate
            )],
        ),
        SolutionStatus::NonConvergent | SolutionStatus::Pole => {
            let status = if sol.status == SolutionStatus::Pole {
                ClosedFormStatus::Pole
            } else {
                ClosedFormStatus::NonConvergent
            };
            let mut r = ClosedFormResult::failed(rule.as_str(), status, trace.remove(0));
            r.trace.extend(trace);
            r
        }
    }
}

fn sum_family_derivative(family: &str, p: &Params) -> Result<Option<f64>> {
    Ok(match family {
        "sin_ntheta" => Some(p.get_or("amplitude", 1.0) * p.get("theta")?),
        "cos_ntheta" | "sin_ntheta_over_n" | "const_one" | "inv_one_plus_sq" => Some(0.0),
        "power" => Some(p.get("lambda")?.ln()),
        _ => None,
    })
}

fn single_spec(e: &CatalogEntry, rule: Rule) -> Result<SeriesSpec> {
    let p = Params::new(&e.params);
    families::spec(e.families().0, kind_of(rule, &p)?, &p)
}

/// Evaluate the bound rule.
pub fn closed_form(e: &CatalogEntry) -> Result<ClosedFormResult> {
    let rule = e.rule()?;
    let p = Params::new(&e.params);
    let (fam, aux) = e.families();
    Ok(match rule {
        Rule::RmtGeneral => rmt_general(&single_spec(e, rule)?, p.get("s")?),
        Rule::RmtPlainGeneral => rmt_plain_general(&single_spec(e, rule)?, p.get("s")?),
        Rule::RmtZeta => rmt_zeta(&single_spec(e, rule)?, p.get("s")?),
        Rule::RmtLog => rmt_log(&single_spec(e, rule)?, p.get("s")?, log_order(&p)?),
        Rule::RmtLogNumeric => rmt_log_numeric(&single_spec(e, rule)?, p.get("s")?, log_order(&p)?),
        Rule::RmtTrig => rmt_trig(&single_spec(e, rule)?, p.get("s")?, parity(&p, "parity")?),
        Rule::GaussianCosRmt => gaussian_cos_rmt(&single_spec(e, rule)?),
        Rule::RmtDouble => rmt_double(&single_spec(e, rule)?, p.get("s")?),
        Rule::FourierSeriesSolution => solution_to_closed(
            rule,
            fourier_series_solution(
                &single_spec(e, rule)?,
                p.get("s")?,
                parity(&p, "kernel")?,
                regime(&p)?,
            ),
        ),
        Rule::LaplaceSeriesSolution => solution_to_closed(
            rule,
            laplace_series_solution(&single_spec(e, rule)?, p.get("s")?, regime(&p)?),
        ),
        Rule::Hankel0SeriesSolution => solution_to_closed(
            rule,
            hankel0_series_solution(&single_spec(e, rule)?, p.get("s")?, regime(&p)?),
        ),
        Rule::ProductIntegral => {
            let (phi, psi) = product_pair(e)?;
            let sol = if mode(&p, "swap", 1)? == 1 {
                product_integral(&psi, &phi, PRODUCT_TERMS)
            } else {
                product_integral(&phi, &psi, PRODUCT_TERMS)
            };
            solution_to_closed(rule, sol)
        }
        Rule::RamanujanSum => {
            let kind = sum_kind(&p)?;
            let phi = families::coefficient(fam, &p)?;
            let d = sum_family_derivative(fam, &p)?;
            let mut r = match sum_closed_form(kind, &phi, d) {
                Ok(v) => ClosedFormResult::ok(
                    rule.as_str(),
                    v,
                    vec![format!("{kind:?} right side, φ = {}", phi.description())],
                    vec![],
                ),
                Err(err) => {
                    ClosedFormResult::failed(rule.as_str(), ClosedFormStatus::Pole, err.to_string())
                }
            };
            if let Some(flag) = p.get("theta").ok().and_then(|t| theta_domain_flag(kind, t)) {
                r = r.with_note(flag);
            }
            r
        }
        Rule::GeneralReciprocalRelation => {
            let phi = families::coefficient(aux.unwrap_or_default(), &p.aux())?;
            let c = p.get("c")?;
            match phi.try_eval(0.0) {
                Ok(v) => ClosedFormResult::ok(
                    rule.as_str(),
                    c * v,
                    vec![format!("C·φ(0) = {c}·{v}")],
                    vec![],
                ),
                Err(err) => {
                    ClosedFormResult::failed(rule.as_str(), ClosedFormStatus::Pole, err.to_string())
                }
            }
        }
        Rule::MakeReciprocalH => {
            families::g_function(fam)?;
            let c = p.get("c")?;
            p.get("x")?;
            ClosedFormResult::ok(
                rule.as_str(),
                c,
                vec![format!("h(x) + h(1/x) = C = {c}")],
                vec![],
            )
        }
    })
}

fn product_pair(e: &CatalogEntry) -> Result<(crate::CoefficientFn, crate::CoefficientFn)> {
    let p = Params::new(&e.params);
    let (fam, aux) = e.families();
    let aux = aux.ok_or_else(|| Error::Catalog("product needs two families".into()))?;
    Ok((
        families::coefficient(fam, &p)?,
        families::coefficient(aux, &p.aux())?,
    ))
}

fn failed_oracle(evaluations: usize) -> OracleResult {
    OracleResult {
        value: f64::NAN,
        error_estimate: f64::INFINITY,
        evaluations,
        status: OracleStatus::MaxEffort,
    }
}

fn direct_of(spec: &SeriesSpec) -> Result<crate::series::RealFn> {
    spec.direct()
        .cloned()
        .ok_or_else(|| Error::Catalog("family has no direct integrand".into()))
}

/// Evaluate the independent numerical side.
pub fn oracle(e: &CatalogEntry) -> Result<OracleResult> {
    let rule = e.rule()?;
    let p = Params::new(&e.params);
    let (fam, aux) = e.families();
    Ok(match rule {
        Rule::RmtGeneral if fam == "bessel_coeff" => {
            let (alpha, m, s) = (p.get("alpha")?, p.get("m")?, p.get("s")?);
            integrate_partitioned(
                |x| {
                    let j = bessel_j(alpha, x.powf(m)).value;
                    if j == 0.0 {
                        0.0
                    } else {
                        x.powf(s - 1.0) * j
                    }
                },
                |k| {
                    if k == 0 {
                        0.0
                    } else {
                        bessel_zero_estimate(alpha, k).powf(1.0 / m)
                    }
                },
                OSC_TOL,
            )
        }
        Rule::RmtGeneral | Rule::RmtPlainGeneral => {
            let f = direct_of(&single_spec(e, rule)?)?;
            integrate_mellin(|x| f(x), p.get("s")?, 0, QUAD_TOL)
        }
        Rule::RmtZeta => {
            let z = families::zeta_direct(fam, &p)?;
            integrate_mellin(|x| z(x), p.get("s")?, 0, QUAD_TOL)
        }
        Rule::RmtLog | Rule::RmtLogNumeric => {
            let f = direct_of(&single_spec(e, rule)?)?;
            integrate_mellin(|x| f(x), p.get("s")?, log_order(&p)?, QUAD_TOL)
        }
        Rule::RmtTrig => {
            let s = p.get("s")?;
            let kernel = match parity(&p, "parity")? {
                Parity::Cos => Kernel::Cos,
                Parity::Sin => Kernel::Sin,
            };
            integrate_oscillatory(
                |x| x.powf(s - 1.0),
                kernel,
                families::frequency(fam, &p)?,
                OSC_TOL,
            )?
        }
        Rule::GaussianCosRmt => {
            let f = direct_of(&single_spec(e, rule)?)?;
            integrate_mellin(|x| (-x * x).exp() * f(x), 1.0, 0, QUAD_TOL)
        }
        Rule::RmtDouble => {
            let f = direct_of(&single_spec(e, rule)?)?;
            integrate_double_mellin(|x| f(x), p.get("s")?, DOUBLE_TOL)
        }
        Rule::FourierSeriesSolution => {
            let f = direct_of(&single_spec(e, rule)?)?;
            let kernel = match parity(&p, "kernel")? {
                Parity::Cos => Kernel::Cos,
                Parity::Sin => Kernel::Sin,
            };
            integrate_oscillatory(|x| f(x), kernel, p.get("s")?, OSC_TOL)?
        }
        Rule::LaplaceSeriesSolution => {
            let f = direct_of(&single_spec(e, rule)?)?;
            let s = p.get("s")?;
            integrate_mellin(|x| (-s * x).exp() * f(x), 1.0, 0, QUAD_TOL)
        }
        Rule::Hankel0SeriesSolution => {
            let f = direct_of(&single_spec(e, rule)?)?;
            integrate_oscillatory(|x| f(x), Kernel::J0Weighted, p.get("s")?, OSC_TOL)?
        }
        Rule::ProductIntegral => {
            let aux = aux.unwrap_or_default();
            let f = direct_of(&families::spec(fam, SeriesKind::ExpAlternating, &p)?)?;
            let g = direct_of(&families::spec(aux, SeriesKind::ExpAlternating, &p.aux())?)?;
            integrate_mellin(|x| f(x) * g(x), 1.0, 0, QUAD_TOL)
        }
        Rule::RamanujanSum => {
            let kind = sum_kind(&p)?;
            let phi = families::coefficient(fam, &p)?;
            let d = sum_family_derivative(fam, &p)?;
            match ramanujan_sum(kind, &phi, d, SUM_TOL) {
                Ok(v) => OracleResult {
                    value: v.lhs,
                    error_estimate: v.lhs_error,
                    evaluations: v.terms_used,
                    status: OracleStatus::Converged,
                },
                Err(Error::NonConvergent { terms }) => failed_oracle(terms),
                Err(err) => return Err(err),
            }
        }
        Rule::GeneralReciprocalRelation => {
            let eta = families::eta(fam)?;
            let phi = families::coefficient(aux.unwrap_or_default(), &p.aux())?;
            match general_reciprocal_relation(&eta, p.get("c")?, &phi, SUM_TOL) {
                Ok(v) => OracleResult {
                    value: v.lhs,
                    error_estimate: v.lhs_error,
                    evaluations: v.terms_used,
                    status: OracleStatus::Converged,
                },
                Err(Error::NonConvergent { terms }) => failed_oracle(terms),
                Err(err) => return Err(err),
            }
        }
        Rule::MakeReciprocalH => {
            let g = families::g_function(fam)?;
            let (x, c) = (p.get("x")?, p.get("c")?);
            if !(x > 0.0) {
                return Err(Error::ParamOutOfRange {
                    name: "x".into(),
                    value: x,
                    lo: 0.0,
                    hi: f64::INFINITY,
                });
            }
            let h = make_reciprocal_h(move |t| g(t), c);
            let v = h(x) + h(1.0 / x);
            let scale = h(x).abs() + h(1.0 / x).abs();
            OracleResult {
                value: v,
                error_estimate: 4.0 * f64::EPSILON * scale,
                evaluations: 2,
                status: OracleStatus::Converged,
            }
        }
    })
}

/// Rules referenced by at least one of `entries`.
pub fn rules_covered(entries: &[CatalogEntry]) -> std::collections::BTreeSet<Rule> {
    entries.iter().filter_map(|e| e.rule().ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads_and_covers_every_rule() {
        let c = Catalog::builtin();
        assert!(c.entries().len() >= 15);
        let covered = rules_covered(c.entries());
        for r in Rule::ALL {
            assert!(covered.contains(&r), "rule {r} has no entry");
        }
    }

    #[test]
    fn rule_names_round_trip() {
        for r in Rule::ALL {
            assert_eq!(r.as_str().parse::<Rule>().unwrap(), r);
        }
        assert!("rmt_nothing".parse::<Rule>().is_err());
    }

    #[test]
    fn overrides_are_checked() {
        let c = Catalog::builtin();
        let mut o = BTreeMap::new();
        o.insert("zz".to_string(), 1.0);
        assert!(matches!(
            c.resolve("gamma_s_basic", &o),
            Err(Error::UnknownParam { .. })
        ));
        let mut o = BTreeMap::new();
        o.insert("s".to_string(), -5.0);
        assert!(matches!(
            c.resolve("gamma_s_basic", &o),
            Err(Error::ParamOutOfRange { .. })
        ));
        assert!(matches!(
            c.resolve("nope", &BTreeMap::new()),
            Err(Error::UnknownEntry(_))
        ));
    }

    #[test]
    fn json_lines_and_strict_fields() {
        let line = r#"{"id":"x1","description":"d","spec_key":"const_one","rule":"rmt_general","params":{"s":2},"expected_provenance":"trivial"}"#;
        let two = format!("{line}\n\n{}", line.replace("x1", "x2"));
        assert_eq!(parse_entries(&two).unwrap().len(), 2);
        let pretty = line.replace(",\"", ",\n  \"");
        assert_eq!(parse_entries(&pretty).unwrap()[0].id, "x1");
        let bad = line.replace("\"params\"", "\"extra\":1,\"params\"");
        assert!(parse_entries(&bad).is_err());
    }

    #[test]
    fn user_entries_validated() {
        let mut c = Catalog::builtin();
        let mk = |id: &str, key: &str, rule: &str| CatalogEntry {
            id: id.into(),
            description: "user".into(),
            spec_key: key.into(),
            rule: rule.into(),
            params: [("s".to_string(), 2.0)].into_iter().collect(),
            ranges: BTreeMap::new(),
            expected: None,
            expected_provenance: Provenance::Derived,
            tolerance: None,
        };
        assert!(c
            .extend(vec![mk("gamma_s_basic", "const_one", "rmt_general")])
            .is_err());
        assert!(c.extend(vec![mk("u1", "my_phi", "rmt_general")]).is_err());
        assert!(c.extend(vec![mk("u2", "const_one", "rmt_bogus")]).is_err());
        c.extend(vec![mk("u3", "const_one", "rmt_general")])
            .unwrap();
        let r = c.run_entry("u3", &BTreeMap::new()).unwrap();
        assert!((r.closed.value - 1.0).abs() < 1e-14);
    }
}
