mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, ReadingArg, RunConfig};
use tropcalc_core::syntax::Dialect;

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 1.
    User(String),
    /// Broken invariant: exit code 2.
    Internal(String),
}

#[derive(Parser, Debug)]
#[command(name = "tropcalc", version, about = "Tropical semantics of typed lambda-calculi")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    #[arg(long, global = true, default_value = "stlc", value_parser = ["stlc", "bstlc", "stdlc", "pcfl"])]
    dialect: String,
    /// Largest multiset enumerated.
    #[arg(long, global = true)]
    kmax: Option<u32>,
    /// Largest numeral.
    #[arg(long, global = true)]
    nmax: Option<u32>,
    /// Fixpoint iterations.
    #[arg(long, global = true)]
    fixmax: Option<u32>,
    /// Reduction depth cap.
    #[arg(long, global = true)]
    depth: Option<u32>,
    /// Taylor degree cap.
    #[arg(long, global = true)]
    degree: Option<u32>,
    /// Truncation threshold, default 1/100.
    #[arg(long, global = true)]
    eps: Option<String>,
    /// Ball radius for `lipschitz`, default 1.
    #[arg(long, global = true)]
    delta: Option<String>,
    /// Seed for sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// How choice labels become weights.
    #[arg(long, global = true, value_enum, default_value = "tropical")]
    reading: ReadingArg,
    /// Parameter assignment, e.g. `a=0.5,b=1`.
    #[arg(long, global = true)]
    params: Option<String>,
    /// Typing context, e.g. `x:o, z:o->o->o`.
    #[arg(long, global = true)]
    ctx: Option<String>,
    /// Cap overrides, e.g. `kmax=2,depth=20`. Explicit flags win.
    #[arg(long, env = "TROPCALC_CAPS", hide_env_values = true)]
    caps: Option<String>,
}

/// A series given literally or by univariate coefficients.
#[derive(Args, Debug)]
pub struct SeriesInput {
    #[arg(long, conflicts_with = "coeffs")]
    series: Option<String>,
    /// `degree:value` pairs, e.g. `0:1,1:1/2`.
    #[arg(long)]
    coeffs: Option<String>,
    /// Variable name for `--coeffs`.
    #[arg(long, default_value = "x")]
    var: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and typecheck a term file.
    Check { file: PathBuf },
    /// Interpret a term as a tropical matrix.
    Interpret { file: PathBuf },
    /// Evaluate a series at `--params`.
    Eval {
        #[command(flatten)]
        input: SeriesInput,
    },
    /// Tropical roots of a univariate series.
    Roots {
        #[command(flatten)]
        input: SeriesInput,
    },
    /// Drop monomials that never attain the minimum on `[eps, inf)`.
    Truncate {
        #[command(flatten)]
        input: SeriesInput,
    },
    /// Resource terms of the Taylor expansion up to `--degree`.
    Taylor { file: PathBuf },
    /// Local Lipschitz constant on the `--delta` ball around `--params`.
    Lipschitz {
        #[command(flatten)]
        input: SeriesInput,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Ball multiplier for the corner evaluation.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..=3))]
        radius: u32,
    },
    /// Best-case reduction weight to a numeral.
    Bestcase {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        target: u32,
        #[arg(long, default_value = "a")]
        alpha: String,
        #[arg(long, default_value = "b")]
        beta: String,
    },
    /// Maximum-likelihood choice probability for a likelihood series.
    Mle {
        #[command(flatten)]
        input: SeriesInput,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(100..))]
        grid: u64,
        #[arg(long, default_value = "a")]
        alpha: String,
        #[arg(long, default_value = "b")]
        beta: String,
    },
    /// Compare the denotation of a closed term with its best-case reduction.
    Adequacy {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        target: u32,
    },
    /// Sample a univariate series on a grid.
    Plot {
        #[command(flatten)]
        input: SeriesInput,
        #[arg(long, default_value = "0")]
        lo: String,
        #[arg(long, default_value = "3")]
        hi: String,
        #[arg(long, default_value = "1/8")]
        step: String,
    },
}

fn resolve(g: &Global) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(spec) = &g.caps {
        cfg.apply_env(spec)?;
    }
    cfg.dialect = g.dialect.parse::<Dialect>().map_err(CliError::User)?;
    if let Some(n) = g.kmax {
        cfg.set_kmax(n)?;
    }
    if let Some(n) = g.nmax {
        cfg.set_nmax(n)?;
    }
    if let Some(n) = g.fixmax {
        cfg.set_fixmax(n)?;
    }
    if let Some(n) = g.depth {
        cfg.set_depth(n)?;
    }
    if let Some(n) = g.degree {
        cfg.set_degree(n)?;
    }
    if let Some(s) = &g.eps {
        cfg.set_eps(s)?;
    }
    if let Some(s) = &g.delta {
        cfg.set_delta(s)?;
    }
    cfg.seed = g.seed;
    cfg.format = g.format;
    cfg.reading = g.reading.into();
    Ok(cfg)
}

fn run(cli: Cli) -> Result<commands::Report, CliError> {
    let cfg = resolve(&cli.global)?;
    let params = cli.global.params.as_deref().map(config::params).transpose()?.unwrap_or_default();
    let ctx = cli.global.ctx.as_deref().unwrap_or("");
    use commands as c;
    match cli.command {
        Command::Check { file } => c::check(&cfg, &file, ctx),
        Command::Interpret { file } => c::interpret(&cfg, &file, ctx, &params),
        Command::Eval { input } => c::eval(&input, &params),
        Command::Roots { input } => c::roots(&input),
        Command::Truncate { input } => c::truncate(&cfg, &input),
        Command::Taylor { file } => c::taylor(&cfg, &file, ctx),
        Command::Lipschitz { input, samples, radius } => c::lipschitz(&cfg, &input, &params, samples, radius),
        Command::Bestcase { file, target, alpha, beta } => c::bestcase(&cfg, &file, target, &alpha, &beta),
        Command::Mle { input, grid, alpha, beta } => c::mle(&input, grid as usize, &alpha, &beta),
        Command::Adequacy { file, target } => c::adequacy(&cfg, &file, target),
        Command::Plot { input, lo, hi, step } => c::plot(&input, &lo, &hi, &step),
    }
    .map(|r| r.with_format(cfg.format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(report)) => {
            report.emit();
            ExitCode::SUCCESS
        }
        Ok(Err(CliError::User(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Ok(Err(CliError::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(2),
    }
}
