//! Command-line front end for the `gsembed` engine.
//!
//! Every subcommand writes one JSON document to stdout. Exit codes: `0` on
//! success, `2` when the engine could not decide, `1` on error.

pub mod repro;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use gsembed::embanalyzer::{analyze, AnalysisKind, EmbeddingProblem, SpaceScale};
use gsembed::seqcore::{boyd_indices, certify_admissible, equivalent, from_edmunds_netrusov, standardize, Equivalence};
use gsembed::seqdsl::{canonicalize, parse, parse_omega};
use gsembed::seqspacelab::{
    embedding_norm_closed, embedding_norm_search, entropy_bounds, entropy_properties, finite_section,
    nuclear_norm_oracle, nuclear_norm_tong, rate_fit, rate_fit_unchecked, FiniteSection, ENTROPY_CAP, NORM_CAP,
};
use gsembed::{Exponent, SeqExpr};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

/// Environment variable overriding the seed of randomised lab searches.
pub const SEED_ENV: &str = "GSEMBED_SEED";

#[derive(Debug, Parser)]
#[command(name = "gsembed", version, about = "Embeddings of Besov spaces of generalised smoothness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Smoothness-sequence utilities.
    #[command(subcommand)]
    Seq(SeqCommand),
    /// Decide compactness, nuclearity or entropy asymptotics.
    Analyze(AnalyzeArgs),
    /// Numerical checks on finite sections.
    #[command(subcommand)]
    Lab(LabCommand),
    /// Run a corpus case by id, or `all`.
    Reproduce {
        #[arg(required_unless_present = "list")]
        id: Option<String>,
        /// Print the corpus instead of running it.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Subcommand)]
enum SeqCommand {
    /// Parse and print the canonical form and profile.
    Parse { expr: String },
    /// Evaluate at `j = from..=to`.
    Eval {
        expr: String,
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long, default_value_t = 8)]
        to: u64,
    },
    /// Boyd indices, exact when possible.
    Boyd {
        expr: String,
        #[arg(long, default_value_t = 256)]
        k: u64,
    },
    /// Two-sided ratio certificate.
    Admissible {
        expr: String,
        #[arg(long, default_value_t = 64)]
        window: u64,
    },
    /// Dyadic reindexing along a frequency sequence `N`.
    Standardize {
        sigma: String,
        #[arg(long = "n")]
        n: String,
        #[arg(long)]
        kappa0: Option<u32>,
    },
    /// Decide whether two sequences are equivalent.
    Equivalent {
        left: String,
        right: String,
        #[arg(long, default_value_t = 256)]
        window: u64,
    },
    /// Smoothness sequence of a parameter function `omega(t)`.
    FromOmega {
        omega: String,
        #[arg(long, requires = "c")]
        l: Option<f64>,
        #[arg(long, requires = "l")]
        c: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScaleArg {
    B,
    F,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Compact,
    Nuclear,
    Entropy,
    Classify,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long, value_enum, ignore_case = true, default_value = "b")]
    scale: ScaleArg,
    #[arg(long)]
    sigma: String,
    #[arg(long)]
    tau: String,
    #[arg(long)]
    p1: Exponent,
    #[arg(long)]
    q1: Exponent,
    #[arg(long)]
    p2: Exponent,
    #[arg(long)]
    q2: Exponent,
    #[arg(long)]
    dim: u32,
    #[arg(long, value_enum, default_value = "classify")]
    kind: KindArg,
}

#[derive(Debug, Args)]
struct SectionArgs {
    /// Problem file (JSON) to truncate instead of an inline section.
    #[arg(long, conflicts_with_all = ["beta", "m"])]
    from_problem: Option<PathBuf>,
    /// Top level `L` when truncating a problem.
    #[arg(long, default_value_t = 2)]
    top: usize,
    /// Block-size constant: `M_j = round(c·2^{jd})`.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, value_delimiter = ',')]
    beta: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    m: Vec<usize>,
    #[arg(long)]
    p1: Option<Exponent>,
    #[arg(long)]
    q1: Option<Exponent>,
    #[arg(long)]
    p2: Option<Exponent>,
    #[arg(long)]
    q2: Option<Exponent>,
}

#[derive(Debug, Subcommand)]
enum LabCommand {
    /// Closed-form operator norm and a randomised lower bound.
    Norm {
        #[command(flatten)]
        section: SectionArgs,
        #[arg(long, default_value_t = 50)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Nuclear norm by the Tong formula and by the oracle.
    Nuclear {
        #[command(flatten)]
        section: SectionArgs,
    },
    /// Two-sided entropy-number bounds.
    Entropy {
        #[command(flatten)]
        section: SectionArgs,
        #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 4])]
        k: Vec<u32>,
        /// Also check monotonicity and multiplicativity.
        #[arg(long)]
        properties: bool,
    },
    /// Slope of `e_{2n}` along growing sections.
    Ratefit {
        #[arg(long)]
        from_problem: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3])]
        levels: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Skip the non-limiting regime check.
        #[arg(long)]
        unchecked: bool,
    },
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((doc, code)) => match serde_json::to_string_pretty(&doc) {
            Ok(text) => {
                let _ = writeln!(out, "{text}");
                code
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_ERROR
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

type Outcome = (serde_json::Value, i32);

fn ok<T: Serialize>(v: &T) -> Result<Outcome> {
    Ok((serde_json::to_value(v)?, EXIT_OK))
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Seq(c) => seq(c),
        Command::Analyze(a) => analyze_cmd(a),
        Command::Lab(c) => lab(c),
        Command::Reproduce { id, list } => reproduce_cmd(id.as_deref().unwrap_or("all"), list),
    }
}

fn expr(text: &str) -> Result<SeqExpr> {
    parse(text).with_context(|| format!("cannot parse `{text}`"))
}

fn seq(cmd: SeqCommand) -> Result<Outcome> {
    match cmd {
        SeqCommand::Parse { expr: text } => {
            let e = expr(&text)?;
            ok(&json!({ "expr": e.render(), "ast": e, "profile": canonicalize(&e) }))
        }
        SeqCommand::Eval { expr: text, from, to } => {
            if from > to {
                bail!("empty range {from}..={to}");
            }
            let e = expr(&text)?;
            let values: Vec<_> = (from..=to).map(|j| json!({ "j": j, "value": e.eval(j) })).collect();
            ok(&json!({ "expr": e.render(), "values": values }))
        }
        SeqCommand::Boyd { expr: text, k } => {
            let e = expr(&text)?;
            ok(&json!({ "expr": e.render(), "boyd": boyd_indices(&e, k) }))
        }
        SeqCommand::Admissible { expr: text, window } => {
            let e = expr(&text)?;
            ok(&json!({ "expr": e.render(), "certificate": certify_admissible(&e, window) }))
        }
        SeqCommand::Standardize { sigma, n, kappa0 } => {
            let s = standardize(&expr(&sigma)?, &expr(&n)?, kappa0)?;
            ok(&s)
        }
        SeqCommand::Equivalent { left, right, window } => {
            let r = equivalent(&expr(&left)?, &expr(&right)?, window);
            let code = if r == Equivalence::Undecided { EXIT_INCONCLUSIVE } else { EXIT_OK };
            Ok((serde_json::to_value(&r)?, code))
        }
        SeqCommand::FromOmega { omega, l, c } => {
            let w = parse_omega(&omega).with_context(|| format!("cannot parse `{omega}`"))?;
            let r = from_edmunds_netrusov(&w, l.zip(c))?;
            ok(&r)
        }
    }
}

fn analyze_cmd(a: AnalyzeArgs) -> Result<Outcome> {
    let scale = match a.scale {
        ScaleArg::B => SpaceScale::B,
        ScaleArg::F => SpaceScale::F,
    };
    let kind = match a.kind {
        KindArg::Compact => AnalysisKind::Compact,
        KindArg::Nuclear => AnalysisKind::Nuclear,
        KindArg::Entropy => AnalysisKind::Entropy,
        KindArg::Classify => AnalysisKind::Classify,
    };
    let prob = EmbeddingProblem::besov(expr(&a.sigma)?, expr(&a.tau)?, a.p1, a.q1, a.p2, a.q2, a.dim).with_scale(scale);
    let report = analyze(&prob, kind)?;
    let code = if report.is_inconclusive() { EXIT_INCONCLUSIVE } else { EXIT_OK };
    Ok((serde_json::to_value(&report)?, code))
}

fn read_problem(path: &Path) -> Result<EmbeddingProblem> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let prob: EmbeddingProblem =
        serde_json::from_str(&text).with_context(|| format!("{} is not a problem file", path.display()))?;
    prob.validate()?;
    Ok(prob)
}

fn section(a: &SectionArgs, cap: usize) -> Result<FiniteSection> {
    if let Some(path) = &a.from_problem {
        return Ok(finite_section(&read_problem(path)?, a.top, a.c, cap)?);
    }
    let (Some(p1), Some(q1), Some(p2), Some(q2)) = (a.p1, a.q1, a.p2, a.q2) else {
        bail!("an inline section needs --beta, --m, --p1, --q1, --p2 and --q2");
    };
    let s = FiniteSection::manual(a.beta.clone(), a.m.clone(), p1, q1, p2, q2)?;
    s.require_dim(cap)?;
    Ok(s)
}

fn seed(default: u64) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().with_context(|| format!("{SEED_ENV}={v:?} is not an unsigned integer")),
        Err(_) => Ok(default),
    }
}

fn lab(cmd: LabCommand) -> Result<Outcome> {
    match cmd {
        LabCommand::Norm { section: a, iters, seed: s } => {
            let sec = section(&a, NORM_CAP)?;
            let seed = seed(s)?;
            let closed = embedding_norm_closed(&sec);
            let search = embedding_norm_search(&sec, iters, seed);
            ok(&json!({ "section": sec, "closed": closed, "search": search, "iters": iters, "seed": seed }))
        }
        LabCommand::Nuclear { section: a } => {
            let sec = section(&a, NORM_CAP)?;
            let tong = nuclear_norm_tong(&sec)?;
            let oracle = nuclear_norm_oracle(&sec)?;
            ok(&json!({ "section": sec, "tong": tong, "oracle": oracle }))
        }
        LabCommand::Entropy { section: a, k, properties } => {
            let sec = section(&a, ENTROPY_CAP)?;
            if properties {
                let p = entropy_properties(&sec, &k)?;
                let code = if p.ok() { EXIT_OK } else { EXIT_ERROR };
                return Ok((json!({ "section": sec, "properties": p }), code));
            }
            let bounds = k.iter().map(|&k| entropy_bounds(&sec, k)).collect::<Result<Vec<_>, _>>()?;
            ok(&json!({ "section": sec, "bounds": bounds }))
        }
        LabCommand::Ratefit { from_problem, levels, c, unchecked } => {
            let prob = read_problem(&from_problem)?;
            let fit = if unchecked { rate_fit_unchecked(&prob, &levels, c)? } else { rate_fit(&prob, &levels, c)? };
            ok(&json!({ "fit": fit, "slope_ratio": fit.slope_ratio() }))
        }
    }
}

fn reproduce_cmd(id: &str, list: bool) -> Result<Outcome> {
    if list {
        return ok(&repro::corpus());
    }
    let outcomes = repro::reproduce(id)?;
    let code = if outcomes.iter().all(|o| o.pass) {
        EXIT_OK
    } else if outcomes.iter().all(|o| o.pass || o.inconclusive()) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_ERROR
    };
    let passed = outcomes.iter().filter(|o| o.pass).count();
    Ok((json!({ "cases": outcomes, "passed": passed, "total": outcomes.len() }), code))
}
