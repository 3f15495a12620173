//! `--key value` overrides that follow the entry name.

use std::collections::BTreeMap;

/// Output shape of `eval` and `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Default)]
pub struct Trailing {
    pub overrides: BTreeMap<String, f64>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub seed_params: bool,
}

/// Mode words accepted in place of their numeric codes.
fn word_value(word: &str) -> Option<f64> {
    Some(match word {
        "convergent" | "cos" | "odd_arctan" => 0.0,
        "asymptotic" | "sin" | "pm_one" => 1.0,
        "log_deriv" => 2.0,
        _ => return None,
    })
}

pub fn parse_value(key: &str, raw: &str) -> Result<f64, String> {
    word_value(raw)
        .or_else(|| raw.parse::<f64>().ok())
        .ok_or_else(|| format!("`--{key}` expects a number, got `{raw}`"))
}

/// Parse `--key value` and `--key=value` pairs. `--tol`, `--format` and
/// `--seed-params` are recognised here too, so they may follow the entry.
pub fn parse_trailing(args: &[String]) -> Result<Trailing, String> {
    let mut out = Trailing::default();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let Some(flag) = arg.strip_prefix("--") else {
            return Err(format!(
                "unexpected argument `{arg}`; parameters are given as --name value"
            ));
        };
        if flag == "seed-params" {
            out.seed_params = true;
            continue;
        }
        let (key, value) = match flag.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it
                    .next()
                    .ok_or_else(|| format!("`--{flag}` is missing its value"))?;
                (flag.to_string(), v.clone())
            }
        };
        if key.is_empty() {
            return Err(format!("malformed flag `{arg}`"));
        }
        match key.as_str() {
            "tol" => out.tol = Some(parse_value(&key, &value)?),
            "format" => {
                out.format = Some(<Format as clap::ValueEnum>::from_str(&value, true).map_err(
                    |_| format!("unknown format `{value}`; expected text or structured"),
                )?)
            }
            _ => {
                let v = parse_value(&key, &value)?;
                if out.overrides.insert(key.clone(), v).is_some() {
                    return Err(format!("`--{key}` given twice"));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn pairs_words_and_options() {
        let t = parse_trailing(&strs(&[
            "--s",
            "0.5",
            "--regime=asymptotic",
            "--tol",
            "1e-12",
            "--format",
            "structured",
        ]))
        .unwrap();
        assert_eq!(t.overrides["s"], 0.5);
        assert_eq!(t.overrides["regime"], 1.0);
        assert_eq!(t.tol, Some(1e-12));
        assert_eq!(t.format, Some(Format::Structured));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_trailing(&strs(&["s", "1"])).is_err());
        assert!(parse_trailing(&strs(&["--s"])).is_err());
        assert!(parse_trailing(&strs(&["--s", "abc"])).is_err());
        assert!(parse_trailing(&strs(&["--s", "1", "--s", "2"])).is_err());
        assert!(parse_trailing(&strs(&["--format", "xml"])).is_err());
    }

    #[test]
    fn negative_values_are_values() {
        let t = parse_trailing(&strs(&["--theta", "-0.5"])).unwrap();
        assert_eq!(t.overrides["theta"], -0.5);
    }
}
