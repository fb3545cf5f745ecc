//! Command-line front end. The `sqzint` binary is a thin wrapper around
//! [`main_with_args`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::distprob::{probability, route_for};
use crate::error::{Error, Result};
use crate::hafnian::ideal_probability;
use crate::matchings::MatchingSet;
use crate::measure::{
    indistinguishability_report, pair_cutoff_for_tail, photon_number_distribution, q2n,
    two_mode_noise_estimate, TAIL_MASS_TOL,
};
use crate::model::{validate_unitary, ExperimentConfig, OutputPattern, SchmidtSpectrum};
use crate::oracle;
use crate::reduce::with_threads;

/// Exit status for command-line usage errors.
pub const EXIT_USAGE: i32 = 64;

/// Pair cutoff cap when `tvd-bound` picks its own cutoff.
const AUTO_CUTOFF_LIMIT: usize = 400;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "sqzint",
    version,
    about = "Photon-counting statistics of multimode squeezed light"
)]
pub struct RunRequest {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Upper bound on worker threads. Falls back to the config's `threads`
    /// option, then to the number of available cores.
    #[arg(long, global = true, env = "SQZINT_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a config.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Probability of one output pattern.
    Prob {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        pattern: OutputPattern,
    },
    /// Probabilities of every pattern with a given photon number.
    ProbAll {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        photons: usize,
    },
    /// Probability with every source treated as single-mode.
    Ideal {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        pattern: OutputPattern,
    },
    /// Indistinguishability of `n` pairs.
    Q2n {
        /// Schmidt weights, e.g. `0.5,0.5`.
        #[arg(long, value_parser = parse_spectrum, conflicts_with = "config")]
        spectrum: Option<SchmidtSpectrum>,
        /// Take the common spectrum of this config.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        n: usize,
    },
    /// Pair-number distribution of the sources.
    PhotonDist {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_pairs: usize,
    },
    /// Averaged indistinguishability and the total-variation bound.
    TvdBound {
        #[arg(long)]
        config: PathBuf,
        /// Pair cutoff; chosen from the tail mass when omitted.
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Two-mode noise estimate from purity and mean photon number.
    Estimate {
        #[arg(long)]
        purity: f64,
        #[arg(long)]
        photons: f64,
    },
    /// Compare every probability up to a pair cutoff with the Fock oracle.
    OracleCheck {
        #[arg(long)]
        config: PathBuf,
        /// Defaults to the config's `photon_cutoff`.
        #[arg(long)]
        max_pairs: Option<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// All perfect matchings of `2n` points as 1-based pairs.
    MatchingsDump {
        #[arg(long)]
        n: usize,
    },
}

impl Command {
    pub fn config_path(&self) -> Option<&PathBuf> {
        match self {
            Command::Validate { config }
            | Command::Prob { config, .. }
            | Command::ProbAll { config, .. }
            | Command::Ideal { config, .. }
            | Command::PhotonDist { config, .. }
            | Command::TvdBound { config, .. }
            | Command::OracleCheck { config, .. } => Some(config),
            Command::Q2n { config, .. } => config.as_ref(),
            Command::Estimate { .. } | Command::MatchingsDump { .. } => None,
        }
    }
}

fn parse_spectrum(s: &str) -> std::result::Result<SchmidtSpectrum, String> {
    let weights = s
        .split(',')
        .map(|w| w.trim().parse::<f64>().map_err(|e| format!("{w:?}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    SchmidtSpectrum::from_weights(weights).map_err(|e| e.to_string())
}

/// One line of a pattern table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub pattern: String,
    pub probability: f64,
    pub photons: usize,
}

/// Result of a command: a JSON document, an optional table for CSV, and
/// the exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub document: Value,
    pub rows: Option<Vec<Row>>,
    pub status: i32,
}

impl Report {
    fn ok(document: Value) -> Self {
        Self {
            document,
            rows: None,
            status: 0,
        }
    }

    fn table(rows: Vec<Row>, mut document: Value) -> Self {
        document["rows"] = serde_json::to_value(&rows).expect("rows serialize");
        Self {
            document,
            rows: Some(rows),
            status: 0,
        }
    }

    /// Renders the report with every float rounded to 15 significant digits.
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&round_floats(&self.document))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let rows = self.rows.as_ref().ok_or_else(|| {
                    Error::Usage("csv output is only available for pattern tables".into())
                })?;
                let mut w = csv::Writer::from_writer(Vec::new());
                for r in rows {
                    w.serialize(Row {
                        probability: significant(r.probability),
                        ..r.clone()
                    })?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
        }
    }
}

fn significant(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().expect("round trip")
}

fn round_floats(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => json!(significant(n.as_f64().expect("f64"))),
        Value::Array(a) => Value::Array(a.iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(
            o.iter()
                .map(|(k, v)| (k.clone(), round_floats(v)))
                .collect(),
        ),
        other => other.clone(),
    }
}

fn load(path: &Path) -> Result<ExperimentConfig> {
    ExperimentConfig::from_path(path)
}

fn pattern_row(pattern: &OutputPattern, p: f64) -> Row {
    Row {
        pattern: pattern.to_string(),
        probability: p,
        photons: pattern.total(),
    }
}

/// Executes one request. Tolerance failures of `oracle-check` come back as
/// a report with status 4 so the comparison is still emitted.
pub fn run(request: &RunRequest) -> Result<Report> {
    match &request.command {
        Command::Validate { config } => {
            let cfg = load(config)?;
            let unitarity =
                validate_unitary(cfg.interferometer().matrix(), cfg.options.unitarity_tol)?;
            Ok(Report::ok(json!({
                "ports": cfg.ports(),
                "sources": cfg.sources().len(),
                "route": route_for(&cfg),
                "unitarity_deviation": unitarity.max_deviation,
                "common_spectrum": cfg.common_spectrum(crate::distprob::SPECTRUM_MATCH_TOL).is_some(),
                "spectra_disjoint": cfg.spectra_disjoint(),
                "pair_modes": cfg.pair_modes().len(),
            })))
        }
        Command::Prob { config, pattern } => {
            let cfg = load(config)?;
            let p = probability(&cfg, pattern)?;
            Ok(Report::table(
                vec![pattern_row(pattern, p)],
                json!({ "route": route_for(&cfg) }),
            ))
        }
        Command::ProbAll { config, photons } => {
            let cfg = load(config)?;
            let rows = OutputPattern::all_with_total(cfg.ports(), *photons)
                .iter()
                .map(|m| Ok(pattern_row(m, probability(&cfg, m)?)))
                .collect::<Result<Vec<_>>>()?;
            let total: f64 = rows.iter().map(|r| r.probability).sum();
            Ok(Report::table(
                rows,
                json!({ "route": route_for(&cfg), "photons": photons, "total": total }),
            ))
        }
        Command::Ideal { config, pattern } => {
            let cfg = load(config)?;
            let p = ideal_probability(&cfg, pattern)?;
            Ok(Report::table(vec![pattern_row(pattern, p)], json!({})))
        }
        Command::Q2n {
            spectrum,
            config,
            n,
        } => {
            let spectrum = match (spectrum, config) {
                (Some(s), _) => s.clone(),
                (None, Some(path)) => load(path)?
                    .common_spectrum(crate::distprob::SPECTRUM_MATCH_TOL)
                    .cloned()
                    .ok_or_else(|| Error::Precondition("sources do not share a spectrum".into()))?,
                (None, None) => {
                    return Err(Error::Usage("q2n needs --spectrum or --config".into()))
                }
            };
            Ok(Report::ok(json!({
                "n": n,
                "purity": spectrum.purity(),
                "q2n": q2n(&spectrum, *n)?,
            })))
        }
        Command::PhotonDist { config, max_pairs } => {
            let cfg = load(config)?;
            let dist = photon_number_distribution(cfg.sources(), *max_pairs);
            let tail = (1.0 - dist.iter().sum::<f64>()).max(0.0);
            let rows = dist
                .iter()
                .enumerate()
                .map(|(n, &p)| Row {
                    pattern: String::new(),
                    probability: p,
                    photons: 2 * n,
                })
                .collect();
            Ok(Report::table(rows, json!({ "tail_mass": tail })))
        }
        Command::TvdBound { config, cutoff } => {
            let cfg = load(config)?;
            let spectrum = cfg
                .common_spectrum(crate::distprob::SPECTRUM_MATCH_TOL)
                .ok_or_else(|| {
                    Error::Precondition("tvd-bound needs sources sharing one spectrum".into())
                })?;
            let cutoff = cutoff.unwrap_or_else(|| {
                pair_cutoff_for_tail(cfg.sources(), TAIL_MASS_TOL, AUTO_CUTOFF_LIMIT)
            });
            let mut doc = serde_json::to_value(indistinguishability_report(
                cfg.sources(),
                spectrum,
                cutoff,
            )?)?;
            doc["cutoff"] = json!(cutoff);
            Ok(Report::ok(doc))
        }
        Command::Estimate { purity, photons } => Ok(Report::ok(serde_json::to_value(
            two_mode_noise_estimate(*purity, *photons)?,
        )?)),
        Command::OracleCheck {
            config,
            max_pairs,
            tol,
        } => {
            let cfg = load(config)?;
            let pairs = max_pairs.unwrap_or(cfg.options.photon_cutoff);
            oracle_check(&cfg, pairs, *tol)
        }
        Command::MatchingsDump { n } => {
            let set = MatchingSet::new(*n, crate::matchings::HARD_MAX_PAIRS)?;
            let all: Vec<Vec<(usize, usize)>> = set
                .iter()
                .map(|m| m.pairs().map(|(a, b)| (a + 1, b + 1)).collect())
                .collect();
            Ok(Report::ok(json!(all)))
        }
    }
}

/// Every pattern with at most `pairs` pairs, computed both ways.
pub fn oracle_check(cfg: &ExperimentConfig, pairs: usize, tol: f64) -> Result<Report> {
    let (state, reference) = oracle::output_distribution(cfg, pairs)?;
    let mut worst = 0.0f64;
    let mut rows = Vec::with_capacity(reference.len());
    let mut deviations = BTreeMap::new();
    for (m, &p_oracle) in &reference {
        let p = probability(cfg, m)?;
        let d = (p - p_oracle).abs();
        worst = worst.max(d);
        deviations.insert(m.to_string(), d);
        rows.push(pattern_row(m, p));
    }
    let passed = worst <= tol;
    let mut report = Report::table(
        rows,
        json!({
            "route": route_for(cfg),
            "max_pairs": pairs,
            "patterns": reference.len(),
            "max_abs_deviation": worst,
            "tolerance": tol,
            "tail_mass": state.tail_mass(),
            "passed": passed,
        }),
    );
    if !passed {
        report.status = Error::Tolerance(String::new()).exit_code();
    }
    Ok(report)
}

/// Parses `args`, runs the command, writes the output and returns the
/// process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let request = match RunRequest::try_parse_from(args) {
        Ok(r) => r,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let threads = request.threads.or_else(|| {
        request
            .command
            .config_path()
            .and_then(|p| ExperimentConfig::from_path(p).ok())
            .and_then(|c| c.options.threads)
    });
    let outcome = with_threads(threads, || {
        run(&request).and_then(|report| Ok((report.render(request.format)?, report.status)))
    });
    match outcome {
        Ok((text, status)) => match write_output(request.output.as_ref(), &text) {
            Ok(()) => status,
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
