use std::fmt::Write as _;
use std::fs;
use std::io::BufReader;
use std::path::PathBuf;

use serde_json::json;
use signed_grid::gridclass::length_histogram;
use signed_grid::oracle::verify_against;
use signed_grid::{
    complete_and_compact, DistanceFamily, Error, LengthHistogram, Limits, PermSet, Polynomial,
    SignedPerm, Style,
};

use crate::cache::{Cache, DistanceEngine};
use crate::{Cli, CliError, Command, ConfigArgs, DistanceArgs, OutputFormat};

/// Resolved settings shared by every command.
#[derive(Clone, Debug)]
pub struct Config {
    pub cache_dir: Option<PathBuf>,
    pub limits: Limits,
    pub format: OutputFormat,
}

impl Config {
    pub fn resolve(args: &ConfigArgs) -> Self {
        let cache_dir = if args.no_cache {
            None
        } else {
            args.cache_dir.clone().or_else(default_cache_dir)
        };
        let limits = Limits {
            max_pancake_k: args.max_pancake_k,
            max_reversal_k: args.max_reversal_k,
            max_oracle_n: if args.large_oracle {
                Limits::LARGE_ORACLE_N
            } else {
                Limits::default().max_oracle_n
            },
        };
        Self {
            cache_dir,
            limits,
            format: args.format,
        }
    }

    fn engine(&self) -> DistanceEngine {
        DistanceEngine::new(self.cache_dir.as_ref().map(Cache::new), self.limits)
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("signed-grid"))
}

/// What a command printed and how the process should exit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            ..Self::default()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let config = Config::resolve(&cli.config);
    match &cli.command {
        Command::Enumerate {
            perm,
            input,
            eval,
            verbose,
        } => cmd_enumerate(&config, perm, input.as_ref(), *eval, *verbose),
        Command::Pancake(args) => cmd_distance(&config, DistanceFamily::PrefixReversal, args),
        Command::Reversal(args) => cmd_distance(&config, DistanceFamily::BlockReversal, args),
        Command::Verify {
            family,
            k_max,
            n_max,
        } => cmd_verify(&config, *family, *k_max, *n_max),
        Command::Downset { perm } => cmd_downset(&config, perm),
        Command::Compactify { perm } => cmd_compactify(&config, perm),
    }
}

fn parse_perm_arg(text: &str) -> Result<SignedPerm, CliError> {
    text.parse()
        .map_err(|e| CliError::Usage(format!("--perm {text:?}: {e}")))
}

fn read_perm_file(path: &PathBuf) -> Result<PermSet, CliError> {
    let file = fs::File::open(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    PermSet::parse_lines(BufReader::new(file)).map_err(|e| match e {
        Error::Line { .. } | Error::Format { .. } => {
            CliError::Usage(format!("{}: {e}", path.display()))
        }
        other => other.into(),
    })
}

fn render_polynomial(poly: &Polynomial, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => format!("{}\n", poly.format(Style::CoeffArray)),
        OutputFormat::Latex => format!("{}\n", poly.format(Style::Latex)),
        OutputFormat::Json => format!(
            "{}\n",
            serde_json::to_string(&poly.to_record()).expect("serializable")
        ),
    }
}

fn render_value(poly: &Polynomial, n: i64, format: OutputFormat) -> Result<String, CliError> {
    if n < 1 {
        return Err(CliError::Usage(format!(
            "--eval {n}: polynomials are valid for n >= 1 only"
        )));
    }
    let value = poly.evaluate_at(n);
    if !value.is_integer() {
        return Err(CliError::Internal(format!(
            "value {value} at n = {n} is not an integer; the polynomial {poly} is not a counting polynomial"
        )));
    }
    let value = value.to_integer();
    Ok(match format {
        OutputFormat::Json => format!("{}\n", json!({ "n": n, "value": value.to_string() })),
        _ => format!("{value}\n"),
    })
}

fn render_histogram(hist: &LengthHistogram, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => String::new(),
        _ => {
            let mut out = String::new();
            if hist.has_epsilon() {
                out.push_str("length 0: 1\n");
            }
            for (m, c) in hist.iter() {
                writeln!(out, "length {m}: {c}").unwrap();
            }
            writeln!(
                out,
                "total: {}",
                hist.total() + u64::from(hist.has_epsilon())
            )
            .unwrap();
            out
        }
    }
}

fn histogram_json(hist: &LengthHistogram) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    if hist.has_epsilon() {
        map.insert("0".into(), json!(1));
    }
    for (m, c) in hist.iter() {
        map.insert(m.to_string(), json!(c));
    }
    serde_json::Value::Object(map)
}

fn polynomial_report(
    poly: &Polynomial,
    hist: Option<&LengthHistogram>,
    eval: Option<i64>,
    format: OutputFormat,
) -> Result<String, CliError> {
    if let Some(n) = eval {
        return render_value(poly, n, format);
    }
    match (hist, format) {
        (Some(h), OutputFormat::Json) => Ok(format!(
            "{}\n",
            json!({ "polynomial": poly.to_record(), "compact_by_length": histogram_json(h) })
        )),
        (Some(h), _) => Ok(render_polynomial(poly, format) + &render_histogram(h, format)),
        (None, _) => Ok(render_polynomial(poly, format)),
    }
}

fn cmd_enumerate(
    config: &Config,
    perms: &[String],
    input: Option<&PathBuf>,
    eval: Option<i64>,
    verbose: bool,
) -> Result<Outcome, CliError> {
    if perms.is_empty() && input.is_none() {
        return Err(CliError::Usage("enumerate needs --perm or --input".into()));
    }
    let mut set = PermSet::new();
    for text in perms {
        set.insert(parse_perm_arg(text)?);
    }
    if let Some(path) = input {
        set.extend(read_perm_file(path)?.iter().cloned());
    }
    let s = complete_and_compact(&set);
    let hist = length_histogram(&s);
    let poly = Polynomial::from_histogram(&hist);
    let mut outcome = Outcome::ok(polynomial_report(
        &poly,
        verbose.then_some(&hist),
        eval,
        config.format,
    )?);
    if set.iter().all(SignedPerm::is_empty) {
        outcome.stderr =
            "note: the empty permutation only contributes at n = 0; the class is empty for n >= 1\n".into();
    }
    Ok(outcome)
}

fn cmd_distance(
    config: &Config,
    family: DistanceFamily,
    args: &DistanceArgs,
) -> Result<Outcome, CliError> {
    let engine = config.engine();
    let poly = if args.exact {
        engine.exact_polynomial(family, args.k)?
    } else {
        engine.polynomial(family, args.k)?
    };
    let hist = if args.verbose {
        Some(engine.histogram(family, args.k)?)
    } else {
        None
    };
    Ok(Outcome::ok(polynomial_report(
        &poly,
        hist.as_ref(),
        args.eval,
        config.format,
    )?))
}

fn cmd_verify(
    config: &Config,
    family: DistanceFamily,
    k_max: usize,
    n_max: usize,
) -> Result<Outcome, CliError> {
    let engine = config.engine();
    if n_max > config.limits.max_oracle_n {
        return Err(signed_grid::Error::CeilingExceeded {
            what: "oracle n",
            requested: n_max,
            ceiling: config.limits.max_oracle_n,
        }
        .into());
    }
    let polys = (0..=k_max)
        .map(|k| engine.polynomial(family, k))
        .collect::<Result<Vec<_>, _>>()?;
    let report = verify_against(family, &polys, n_max, &config.limits)?;
    let stdout = match config.format {
        OutputFormat::Json => format!(
            "{}\n",
            serde_json::to_string(&report.rows).expect("serializable")
        ),
        _ => {
            let mut out = report.table();
            for hist in &report.histograms {
                writeln!(out, "diameter(n = {}) = {}", hist.n, hist.diameter()).unwrap();
            }
            out
        }
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        exit_code: if report.all_match() { 0 } else { 1 },
    })
}

fn cmd_downset(config: &Config, perm: &str) -> Result<Outcome, CliError> {
    let perm = parse_perm_arg(perm)?;
    let s = complete_and_compact(&PermSet::singleton(perm));
    let stdout = match config.format {
        OutputFormat::Json => {
            let items: Vec<String> = s.iter().map(ToString::to_string).collect();
            format!("{}\n", json!(items))
        }
        _ => s.to_lines(),
    };
    Ok(Outcome::ok(stdout))
}

fn cmd_compactify(config: &Config, perm: &str) -> Result<Outcome, CliError> {
    let perm = parse_perm_arg(perm)?;
    let (core, vector) = perm.compactify();
    let stdout = match config.format {
        OutputFormat::Json => format!(
            "{}\n",
            json!({ "core": core.to_string(), "vector": vector.sizes() })
        ),
        _ => format!("core: {core}\nvector: {vector}\n"),
    };
    Ok(Outcome::ok(stdout))
}

#[cfg(test)]
mod tests {
    use clap::Parser;

    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome, CliError> {
        let mut full = vec!["signed-grid", "--no-cache"];
        full.extend_from_slice(args);
        run(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn cache_env_name_is_stable() {
        assert_eq!(crate::CACHE_ENV, "SIGNED_GRID_CACHE_DIR");
    }

    #[test]
    fn enumerate_worked_example() {
        let out = run_args(&["enumerate", "--perm", "-2 1 3"]).unwrap();
        assert_eq!(out.stdout, "[1, 1/2, 1/2]\n");
        let out = run_args(&["enumerate", "--perm", "-2 1 3", "--eval", "3"]).unwrap();
        assert_eq!(out.stdout, "7\n");
        let out = run_args(&["enumerate", "--perm", "-2 1 3", "--verbose"]).unwrap();
        assert_eq!(
            out.stdout,
            "[1, 1/2, 1/2]\nlength 0: 1\nlength 1: 2\nlength 2: 2\nlength 3: 1\ntotal: 6\n"
        );
    }

    #[test]
    fn enumerate_empty_permutation() {
        let out = run_args(&["enumerate", "--perm", ""]).unwrap();
        assert_eq!(out.stdout, "[]\n");
        assert!(out.stderr.contains("empty permutation"));
    }

    #[test]
    fn enumerate_rejects_bad_input() {
        let err = run_args(&["enumerate", "--perm", "1 1"]).unwrap_err();
        assert!(err.to_string().contains("more than once"), "{err}");
        let err = run_args(&["enumerate", "--perm", "1 0"]).unwrap_err();
        assert!(err.to_string().contains("zero entry"), "{err}");
        let err = run_args(&["enumerate", "--perm", "1 5"]).unwrap_err();
        assert!(err.to_string().contains("out of range"), "{err}");
        assert!(run_args(&["enumerate"]).is_err());
        assert!(run_args(&["enumerate", "--perm", "1", "--eval", "0"]).is_err());
    }

    #[test]
    fn formats() {
        let out = run_args(&["--format", "json", "enumerate", "--perm", "-2 1 3"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["coeffs"], json!(["1", "1/2", "1/2"]));
        assert_eq!(v["basis"], "monomial");
        assert_eq!(v["valid_for"], "n>=1");
        let out = run_args(&["--format", "latex", "pancake", "--k", "2"]).unwrap();
        assert_eq!(out.stdout, "n^{2} + 1\n");
    }

    #[test]
    fn distance_commands() {
        assert_eq!(
            run_args(&["pancake", "--k", "2"]).unwrap().stdout,
            "[1, 0, 1]\n"
        );
        assert_eq!(
            run_args(&["reversal", "--k", "1"]).unwrap().stdout,
            "[1, 1/2, 1/2]\n"
        );
        assert_eq!(
            run_args(&["pancake", "--k", "4", "--exact"])
                .unwrap()
                .stdout,
            "[0, -3/2, 4, -7/2, 1]\n"
        );
        assert_eq!(
            run_args(&["pancake", "--k", "3", "--eval", "3"])
                .unwrap()
                .stdout,
            "22\n"
        );
        let err = run_args(&["pancake", "--k", "11"]).unwrap_err();
        assert!(err.to_string().contains("ceiling"), "{err}");
        assert!(run_args(&["--max-pancake-k", "2", "pancake", "--k", "3"]).is_err());
    }

    #[test]
    fn verify_command() {
        let out = run_args(&[
            "verify", "--family", "pancake", "--k-max", "0", "--n-max", "2",
        ])
        .unwrap();
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("0 mismatches"));
        let out = run_args(&[
            "--format", "json", "verify", "--family", "reversal", "--k-max", "1", "--n-max", "3",
        ])
        .unwrap();
        let rows: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(rows.as_array().unwrap().len(), 6);
        assert!(rows.as_array().unwrap().iter().all(|r| r["match"] == true));
        assert!(
            run_args(&["verify", "--family", "pancake", "--k-max", "1", "--n-max", "8"]).is_err()
        );
    }

    #[test]
    fn downset_and_compactify() {
        let out = run_args(&["downset", "--perm", "-2 1 3"]).unwrap();
        assert_eq!(out.stdout, "\n1\n-1\n-1 2\n-2 1\n-2 1 3\n");
        let out = run_args(&["compactify", "--perm", "-3 -2 -1 4 5 6"]).unwrap();
        assert_eq!(out.stdout, "core: -1 2\nvector: 3 3\n");
        let out = run_args(&["compactify", "--perm", "1"]).unwrap();
        assert_eq!(out.stdout, "core: 1\nvector: 1\n");
    }
}
