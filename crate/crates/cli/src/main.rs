//! `rmt`: list catalog entries, evaluate closed forms, verify them against
//! the numerical oracle.
//!
//! Exit codes: 0 pass, 1 verification failed, 2 usage error or unknown
//! entry/parameter, 3 closed form unavailable (pole, inapplicable rule,
//! non-convergent coefficient series), 4 oracle did not converge. With
//! `verify --all` the largest code over all entries is returned.

mod params;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use rmt_core::catalog::{Catalog, CatalogEntry};
use rmt_core::report::{fmt17, Report, ReportStatus};
use rmt_core::{ClosedFormStatus, Error, OracleStatus};

use params::{parse_trailing, Format, Trailing};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CLOSED: u8 = 3;
const EXIT_ORACLE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "rmt",
    version,
    about = "Closed-form Mellin integrals and sums, checked against a numerical oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print id, rule and description of each entry.
    List {
        /// Keep entries whose id or rule contains this text.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Evaluate the closed form only. Parameters follow the entry as
    /// `--name value`; `--seed-params` prints the defaults instead.
    Eval {
        /// Catalog entry id, as printed by `list`.
        entry: String,
        /// `structured` prints JSON with 17-significant-digit floats.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(
            trailing_var_arg = true,
            allow_hyphen_values = true,
            value_name = "PARAMS"
        )]
        /// Parameter overrides as `--name value` or `--name=value`.
        params: Vec<String>,
    },
    /// Evaluate closed form and oracle and compare them.
    Verify {
        /// Catalog entry id, as printed by `list`.
        #[arg(required_unless_present = "all")]
        entry: Option<String>,
        /// Verify every entry with its default parameters.
        #[arg(long, conflicts_with = "entry")]
        all: bool,
        /// Relative-gap threshold; defaults to the entry's own, else 1e-6.
        #[arg(long)]
        tol: Option<f64>,
        /// `structured` prints JSON with 17-significant-digit floats.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(
            trailing_var_arg = true,
            allow_hyphen_values = true,
            value_name = "PARAMS"
        )]
        /// Parameter overrides as `--name value` or `--name=value`.
        params: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let catalog = match Catalog::load() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let code = match cli.command {
        Command::List { filter } => list(&catalog, filter.as_deref()),
        Command::Eval {
            entry,
            format,
            params,
        } => with_trailing(&params, |t| {
            eval(&catalog, &entry, t.format.unwrap_or(format), &t)
        }),
        Command::Verify {
            entry,
            all,
            tol,
            format,
            params,
        } => with_trailing(&params, |t| {
            let tol = t.tol.or(tol);
            let format = t.format.unwrap_or(format);
            match entry {
                Some(id) if !all => verify_one(&catalog, &id, tol, format, &t),
                _ if t.overrides.is_empty() && !t.seed_params => verify_all(&catalog, tol, format),
                _ => usage("`verify --all` takes no parameters"),
            }
        }),
    };
    ExitCode::from(code)
}

fn usage(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn with_trailing(raw: &[String], run: impl FnOnce(Trailing) -> u8) -> u8 {
    match parse_trailing(raw) {
        Ok(t) => run(t),
        Err(msg) => usage(&msg),
    }
}

fn list(catalog: &Catalog, filter: Option<&str>) -> u8 {
    let entries: Vec<&CatalogEntry> = match filter {
        Some(f) => catalog.filter(f),
        None => catalog.entries().iter().collect(),
    };
    for e in entries {
        println!("{}\t{}\t{}", e.id, e.rule, e.description);
    }
    0
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Pole(_) | Error::NonConvergent { .. } | Error::InvalidSpec(_) => EXIT_CLOSED,
        _ => EXIT_USAGE,
    }
}

fn seed_params(catalog: &Catalog, id: &str, format: Format) -> u8 {
    let entry = match catalog.get(id) {
        Ok(e) => e,
        Err(e) => return usage(&e.to_string()),
    };
    match format {
        Format::Text => {
            for (k, v) in &entry.params {
                println!("--{k} {}", fmt17(*v));
            }
        }
        Format::Structured => {
            let body: Vec<String> = entry
                .params
                .iter()
                .map(|(k, v)| format!("  \"{k}\": {}", fmt17(*v)))
                .collect();
            println!("{{\n{}\n}}", body.join(",\n"));
        }
    }
    0
}

fn eval(catalog: &Catalog, id: &str, format: Format, t: &Trailing) -> u8 {
    if t.seed_params {
        return seed_params(catalog, id, format);
    }
    if t.tol.is_some() {
        return usage("`--tol` applies to verify only");
    }
    match catalog.eval_entry(id, &t.overrides) {
        Ok(run) => {
            let report = Report::from_run(&run, None);
            emit(&report, format);
            closed_code(&report).unwrap_or(0)
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}

fn closed_code(r: &Report) -> Option<u8> {
    (r.closed_status != ClosedFormStatus::Ok).then(|| {
        let why = r.trace.first().map(String::as_str).unwrap_or("no detail");
        eprintln!(
            "{}: closed form unavailable ({:?}): {why}",
            r.entry_id, r.closed_status
        );
        EXIT_CLOSED
    })
}

fn verify_code(r: &Report) -> u8 {
    if let Some(c) = closed_code(r) {
        return c;
    }
    if r.oracle_status != Some(OracleStatus::Converged) {
        eprintln!(
            "{}: oracle did not converge ({:?})",
            r.entry_id, r.oracle_status
        );
        return EXIT_ORACLE;
    }
    match r.status {
        ReportStatus::Pass => 0,
        _ => EXIT_FAIL,
    }
}

fn verify_one(catalog: &Catalog, id: &str, tol: Option<f64>, format: Format, t: &Trailing) -> u8 {
    if t.seed_params {
        return seed_params(catalog, id, format);
    }
    match catalog.run_entry(id, &t.overrides) {
        Ok(run) => {
            let report = Report::from_run(&run, tol);
            emit(&report, format);
            verify_code(&report)
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}

fn verify_all(catalog: &Catalog, tol: Option<f64>, format: Format) -> u8 {
    let ids: Vec<&str> = catalog.entries().iter().map(|e| e.id.as_str()).collect();
    let results: Vec<Result<Report, (String, Error)>> = ids
        .par_iter()
        .map(|id| {
            catalog
                .run_entry(id, &Default::default())
                .map(|run| Report::from_run(&run, tol))
                .map_err(|e| (id.to_string(), e))
        })
        .collect();
    let mut worst = 0;
    let mut docs = Vec::new();
    for r in results {
        match r {
            Ok(report) => {
                worst = worst.max(verify_code(&report));
                match format {
                    Format::Text => println!(
                        "{:<6} {:<28} rel_gap = {}",
                        status_word(report.status),
                        report.entry_id,
                        report.rel_gap.map_or("n/a".into(), fmt17)
                    ),
                    Format::Structured => docs.push(report.to_json()),
                }
            }
            Err((id, e)) => {
                eprintln!("{id}: error: {e}");
                worst = worst.max(error_code(&e));
            }
        }
    }
    if format == Format::Structured {
        println!("[\n{}\n]", docs.join(",\n"));
    }
    worst
}

fn status_word(s: ReportStatus) -> &'static str {
    match s {
        ReportStatus::Pass => "pass",
        ReportStatus::Fail => "fail",
        ReportStatus::OracleSkipped => "skip",
    }
}

fn emit(r: &Report, format: Format) {
    match format {
        Format::Structured => println!("{}", r.to_json()),
        Format::Text => {
            println!("entry        {}", r.entry_id);
            println!("rule         {}", r.rule);
            for (k, v) in &r.params {
                println!("  {k:<10} {}", fmt17(*v));
            }
            println!("closed       {}", fmt17(r.closed_value));
            if let Some(o) = r.oracle_value {
                println!("oracle       {}", fmt17(o));
            }
            if let Some(e) = r.oracle_error {
                println!("oracle_err   {}", fmt17(e));
            }
            if let Some(g) = r.rel_gap {
                println!("rel_gap      {}", fmt17(g));
            }
            if let Some(t) = r.tolerance {
                println!("tolerance    {}", fmt17(t));
            }
            println!("status       {}", status_word(r.status));
            for n in &r.validity_notes {
                println!("note         {n}");
            }
            println!("trace:");
            for line in &r.trace {
                println!("  {line}");
            }
        }
    }
}
