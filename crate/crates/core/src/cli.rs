//! Command-line front end. [`run`] turns parsed arguments into the text to
//! print and an exit status, so the binary stays a thin wrapper.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::TiesPolicy;
use crate::figures::{emit_figure_data, to_csv, FigureId};
use crate::model::HistorySummary;
use crate::numeric::{parse_rational, to_decimal, Precision, Rational};
use crate::prior::{GammaPrior, MixtureFile, PmfFile};
use crate::report::{classify_report, extend_report, hazard_report, predict_report, ExtendRequest};
use crate::verify::{self, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "maturity", version, about = "Exact gambler's-belief and maturity analysis for finite exchangeable trials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sequence probability and predictive P(next = 1 | history).
    Predict {
        #[command(flatten)]
        prior: PriorArgs,
        /// Observed outcomes as a 0/1 string, e.g. 0110.
        #[arg(long, conflicts_with = "summary")]
        history: Option<String>,
        /// History summarized as trial count and number of ones.
        #[arg(long, num_args = 2, value_names = ["n", "s"])]
        summary: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Streak hazard r(m) for every m with positive probability.
    Hazard {
        #[command(flatten)]
        prior: PriorArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Tightness verdicts and exhaustive belief checks.
    Classify {
        #[command(flatten)]
        prior: PriorArgs,
        /// Treatment of histories with equally many ones and zeros.
        #[arg(long, value_enum, default_value_t = Ties::Strict)]
        ties: Ties,
    },
    /// Check every theorem and parametric claim over built-in corpora.
    ///
    /// Exits 1 when a theorem check fails. Diagnostic claims are reported
    /// but never change the exit status.
    Verify {
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = VerifyOptions::default().random_count)]
        random_count: usize,
        #[arg(long, default_value_t = VerifyOptions::default().max_n)]
        max_n: usize,
    },
    /// Finite extendibility to a population of N + M members.
    Extend {
        #[command(flatten)]
        prior: PriorArgs,
        #[command(flatten)]
        size: ExtendSize,
    },
    /// Plot data for the prior-shape and tightness figures.
    Figures {
        /// prior-shapes, tighter-looser or tightness-ratio.
        #[arg(long)]
        figure: String,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ties {
    Strict,
    Skip,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ExtendSize {
    /// Single extension size.
    #[arg(long = "M")]
    pub m: Option<usize>,
    /// Profile over M = 1..=M-max.
    #[arg(long = "M-max")]
    pub m_max: Option<usize>,
}

/// Prior constructor plus the precision used by approximate priors.
#[derive(Debug, Args)]
pub struct PriorArgs {
    #[command(flatten)]
    pub choice: PriorChoice,
    #[command(flatten)]
    pub precision: PrecisionArgs,
}

/// Exactly one prior constructor per invocation.
#[derive(Debug, Args)]
#[group(id = "prior", required = true, multiple = false)]
pub struct PriorChoice {
    /// Binomial(N, p) count of ones.
    #[arg(long, num_args = 2, value_names = ["N", "p"], allow_hyphen_values = true)]
    pub binomial: Option<Vec<String>>,
    /// Beta-Binomial(N, alpha, beta).
    #[arg(long = "beta-binomial", num_args = 3, value_names = ["N", "alpha", "beta"], allow_hyphen_values = true)]
    pub beta_binomial: Option<Vec<String>>,
    /// Conway-Maxwell-Binomial: weights C(N, i)^nu p^i (1-p)^(N-i).
    #[arg(long, num_args = 3, value_names = ["N", "p", "nu"], allow_hyphen_values = true)]
    pub cmp: Option<Vec<String>>,
    /// Ones among n draws without replacement from T items, a of them ones.
    #[arg(long, num_args = 3, value_names = ["T", "a", "n"])]
    pub hypergeometric: Option<Vec<String>>,
    /// Point mass at g ones.
    #[arg(long, num_args = 2, value_names = ["N", "g"])]
    pub degenerate: Option<Vec<String>>,
    /// Uniform count of ones on 0..=N.
    #[arg(long, value_name = "N")]
    pub uniform: Option<String>,
    /// JSON file `{"N": .., "pmf": ["num/den", ..]}`.
    #[arg(long = "pmf-file")]
    pub pmf_file: Option<PathBuf>,
    /// JSON file `{"N": .., "components": [{"weight": .., "p": ..}, ..]}`.
    #[arg(long = "mixture-file")]
    pub mixture_file: Option<PathBuf>,
}

/// Precision for irrational CMP weights. `MATURITY_PRECISION_BITS` sets the
/// default bit count.
#[derive(Debug, Args)]
#[group(id = "precision", required = false, multiple = true)]
pub struct PrecisionArgs {
    /// Fractional bits for non-integer nu (default 256 or MATURITY_PRECISION_BITS).
    #[arg(long = "precision-bits")]
    pub precision_bits: Option<u32>,
    /// Relative comparison tolerance, e.g. 1e-30 or 1/1000.
    #[arg(long)]
    pub tolerance: Option<String>,
}

impl PrecisionArgs {
    fn resolve(&self) -> Result<Precision> {
        let mut precision = Precision::from_env();
        if let Some(bits) = self.precision_bits {
            precision.bits = bits;
        }
        if let Some(text) = &self.tolerance {
            precision.tolerance = parse_rational(text).context("--tolerance")?;
        }
        Precision::new(precision.bits, precision.tolerance).context("--precision-bits/--tolerance")
    }
}

fn size_arg(flag: &str, name: &str, text: &str) -> Result<usize> {
    text.trim().parse::<usize>().map_err(|_| anyhow!("{flag}: {name} must be a nonnegative integer, got {text:?}"))
}

fn rational_arg(flag: &str, name: &str, text: &str) -> Result<Rational> {
    parse_rational(text).with_context(|| format!("{flag}: {name}"))
}

impl PriorArgs {
    pub fn build(&self) -> Result<GammaPrior> {
        let c = &self.choice;
        let prior = if let Some(v) = &c.binomial {
            let flag = "--binomial";
            GammaPrior::from_binomial(size_arg(flag, "N", &v[0])?, &rational_arg(flag, "p", &v[1])?).context(flag)?
        } else if let Some(v) = &c.beta_binomial {
            let flag = "--beta-binomial";
            let n = size_arg(flag, "N", &v[0])?;
            GammaPrior::from_beta_binomial(n, &rational_arg(flag, "alpha", &v[1])?, &rational_arg(flag, "beta", &v[2])?)
                .context(flag)?
        } else if let Some(v) = &c.cmp {
            let flag = "--cmp";
            let n = size_arg(flag, "N", &v[0])?;
            let (p, nu) = (rational_arg(flag, "p", &v[1])?, rational_arg(flag, "nu", &v[2])?);
            GammaPrior::from_cmp_binomial_with_precision(n, &p, &nu, &self.precision.resolve()?).context(flag)?
        } else if let Some(v) = &c.hypergeometric {
            let flag = "--hypergeometric";
            let (t, a, n) = (size_arg(flag, "T", &v[0])?, size_arg(flag, "a", &v[1])?, size_arg(flag, "n", &v[2])?);
            GammaPrior::from_hypergeometric(t, a, n).context(flag)?
        } else if let Some(v) = &c.degenerate {
            let flag = "--degenerate";
            GammaPrior::from_degenerate(size_arg(flag, "N", &v[0])?, size_arg(flag, "g", &v[1])?).context(flag)?
        } else if let Some(v) = &c.uniform {
            GammaPrior::uniform(size_arg("--uniform", "N", v)?).context("--uniform")?
        } else if let Some(path) = &c.pmf_file {
            let text = std::fs::read_to_string(path).with_context(|| format!("--pmf-file: reading {}", path.display()))?;
            PmfFile::parse(&text).with_context(|| format!("--pmf-file: {}", path.display()))?
        } else if let Some(path) = &c.mixture_file {
            let text =
                std::fs::read_to_string(path).with_context(|| format!("--mixture-file: reading {}", path.display()))?;
            MixtureFile::parse(&text).with_context(|| format!("--mixture-file: {}", path.display()))?
        } else {
            bail!("exactly one prior flag is required");
        };
        Ok(prior)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, exit_code: 0 }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

fn csv_table<const K: usize>(header: [&str; K], rows: impl IntoIterator<Item = [String; K]>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    for row in rows {
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Predict { prior, history, summary, format } => {
            let prior = prior.build()?;
            let history = match (history, summary) {
                (Some(text), _) => Some(HistorySummary::parse(&text).context("--history")?),
                (None, Some(v)) => {
                    Some(HistorySummary::checked(v[0], v[1]).ok_or_else(|| anyhow!("--summary: s must not exceed n"))?)
                }
                (None, None) => None,
            };
            let flag = if history.is_some() { "history" } else { "prior" };
            let report = predict_report(&prior, history).with_context(|| format!("predict ({flag})"))?;
            Ok(Outcome::ok(match format {
                Format::Json => json(&report),
                Format::Csv => csv_table(
                    ["n", "s", "sequence_probability", "predictive"],
                    report.entries.iter().map(|e| {
                        [e.n.to_string(), e.s.to_string(), e.sequence_probability.to_string(), e.predictive.to_string()]
                    }),
                ),
            }))
        }
        Command::Hazard { prior, format } => {
            let report = hazard_report(&prior.build()?);
            Ok(Outcome::ok(match format {
                Format::Json => json(&report),
                Format::Csv => csv_table(["m", "r_m"], report.hazards.iter().map(|h| [h.m.to_string(), h.r.to_string()])),
            }))
        }
        Command::Classify { prior, ties } => {
            let ties = match ties {
                Ties::Strict => TiesPolicy::Strict,
                Ties::Skip => TiesPolicy::Skip,
            };
            Ok(Outcome::ok(json(&classify_report(&prior.build()?, ties))))
        }
        Command::Verify { seed, random_count, max_n } => {
            if max_n < 2 {
                bail!("--max-n must be at least 2");
            }
            let certificate = verify::run(&VerifyOptions { seed, random_count, max_n });
            Ok(Outcome { output: json(&certificate), exit_code: if certificate.passed { 0 } else { 1 } })
        }
        Command::Extend { prior, size } => {
            let prior = prior.build()?;
            let request = match (size.m, size.m_max) {
                (Some(m), _) => ExtendRequest::Single(m),
                (None, Some(max)) => ExtendRequest::Profile(max),
                (None, None) => bail!("one of --M or --M-max is required"),
            };
            let flag = if matches!(request, ExtendRequest::Single(_)) { "--M" } else { "--M-max" };
            let report = extend_report(&prior, request).with_context(|| format!("extend ({flag} or prior mode)"))?;
            Ok(Outcome::ok(json(&report)))
        }
        Command::Figures { figure, n, format } => {
            let id: FigureId = figure.parse().context("--figure")?;
            let points = emit_figure_data(id, n).context("--N")?;
            Ok(Outcome::ok(match format {
                Format::Csv => to_csv(&points),
                Format::Json => json(&serde_json::json!({
                    "schema": crate::report::SCHEMA,
                    "figure": id,
                    "N": n,
                    "points": points
                        .iter()
                        .map(|p| serde_json::json!({
                            "i": p.i,
                            "curve": p.curve,
                            "value": to_decimal(&p.value, crate::figures::SIGNIFICANT_DIGITS),
                            "exact": p.value.to_string(),
                        }))
                        .collect::<Vec<_>>(),
                })),
            }))
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Result<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run(Cli::try_parse_from(args)?)
}
