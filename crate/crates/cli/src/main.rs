//! `superpds`: exact verification suites and bracket calculators for the
//! supercircle symbol algebras.

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use superpds_cli::{
    compute_bracket, field_text, gamma_psl, gamma_table_text, gamma_verify, parse_param_value,
    render_report, run_suites, CliError, Format, Report,
};
use superpds::suites::SuiteParams;

#[derive(Parser)]
#[command(name = "superpds", version)]
#[command(about = "exact symbolic verification for supercircle symbol superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Parameter value: `symbolic` or an exact rational like `-1` or `1/2`.
    #[arg(long, default_value = "symbolic")]
    alpha: String,

    /// Deformation parameter: `symbolic` or an exact rational.
    #[arg(long, default_value = "symbolic")]
    h: String,

    /// Weight parameter: `symbolic` or an exact rational.
    #[arg(long, default_value = "symbolic")]
    mu: String,

    /// Mode window: checks run over |n| <= range.
    #[arg(long, default_value_t = 3)]
    range: i64,

    /// Truncation floor for nonterminating expansions (tau exponent).
    #[arg(long, default_value_t = -12)]
    cutoff: i64,

    /// Echoed into the report; reports are byte-identical per config.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output format.
    #[arg(long, default_value = "text")]
    format: String,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite (or `all`).
    Suite {
        /// One of: gamma-thm41, gamma-thm52, gamma-thm63, k4-closure,
        /// cocycles, matrix-embed-I, dictionary-IJ, rep-consistency,
        /// contraction, psl, remark64, all.
        #[arg(long)]
        suite: String,

        #[command(flatten)]
        params: ParamArgs,

        /// Record wall-clock timing (breaks byte-identity of reports).
        #[arg(long)]
        timings: bool,
    },

    /// Compute a bracket (or the Weyl normal-form product) of two
    /// expressions.
    Bracket {
        /// poisson | circ-h | contact | weyl
        #[arg(long)]
        calculus: String,

        /// Truncation floor for the deformed calculus.
        #[arg(long, default_value_t = -12)]
        cutoff: i64,

        expr1: String,
        expr2: String,
    },

    /// Print a labeled field, e.g. `K4:G3[2]`, `S2:h[-1]`, `Sa1:D1[0]`,
    /// `Ga:F1`.
    Field {
        spec: String,

        #[arg(long, default_value = "symbolic")]
        alpha: String,

        /// `zero` or `formal` (deformed) for families that distinguish.
        #[arg(long, default_value = "zero")]
        h: String,

        /// Generator variant for `Ga:` labels:
        /// poisson | deformed | pseudo-h | pseudo-limit | matrices.
        #[arg(long, default_value = "poisson")]
        variant: String,

        #[arg(long, default_value_t = -12)]
        cutoff: i64,
    },

    /// The 17-dimensional family: tables and verification.
    Gamma {
        #[command(subcommand)]
        command: GammaCommand,
    },
}

#[derive(Subcommand)]
enum GammaCommand {
    /// Print the structure table at given parameters, e.g. `--sigma 2,-3,1`.
    Table {
        #[arg(long)]
        sigma: String,
    },

    /// Verify one realization against the abstract family, per basis pair.
    Verify {
        /// poisson | deformed | pseudo-h | pseudo-limit | matrices
        #[arg(long, default_value = "poisson")]
        variant: String,

        #[command(flatten)]
        params: ParamArgs,
    },

    /// Check the degenerate-value picture at an assigned parameter.
    Psl {
        #[arg(long)]
        alpha: String,

        #[arg(long, default_value = "text")]
        format: String,

        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_format(s: &str) -> Result<Format, CliError> {
    match s {
        "text" => Ok(Format::Text),
        "json" => Ok(Format::Json),
        other => Err(CliError::Usage(format!(
            "unknown format {other} (expected text or json)"
        ))),
    }
}

fn suite_params(args: &ParamArgs) -> Result<SuiteParams, CliError> {
    Ok(SuiteParams {
        alpha: parse_param_value(&args.alpha)?,
        h: parse_param_value(&args.h)?,
        mu: parse_param_value(&args.mu)?,
        range: args.range,
        cutoff: args.cutoff,
        seed: args.seed,
    })
}

fn emit(report: &Report, format: &str, out: &Option<PathBuf>) -> Result<ExitCode, CliError> {
    let format = parse_format(format)?;
    let rendered = render_report(report, format);
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| CliError::Operation(format!("cannot write {}: {e}", path.display())))?;
            f.write_all(rendered.as_bytes())
                .map_err(|e| CliError::Operation(e.to_string()))?;
        }
        None => print!("{rendered}"),
    }
    Ok(if report.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run() -> Result<ExitCode, CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Suite {
            suite,
            params,
            timings,
        } => {
            let sp = suite_params(&params)?;
            let report = run_suites(&suite, &sp, timings)?;
            emit(&report, &params.format, &params.out)
        }
        Command::Bracket {
            calculus,
            cutoff,
            expr1,
            expr2,
        } => {
            let text = compute_bracket(&calculus, &expr1, &expr2, cutoff)?;
            println!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Field {
            spec,
            alpha,
            h,
            variant,
            cutoff,
        } => {
            let alpha = parse_param_value(&alpha)?;
            let text = field_text(&spec, &alpha, &h, &variant, cutoff)?;
            println!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Gamma { command } => match command {
            GammaCommand::Table { sigma } => {
                let text = gamma_table_text(&sigma)?;
                print!("{text}");
                Ok(ExitCode::SUCCESS)
            }
            GammaCommand::Verify { variant, params } => {
                let sp = suite_params(&params)?;
                let report = gamma_verify(&variant, &sp)?;
                emit(&report, &params.format, &params.out)
            }
            GammaCommand::Psl { alpha, format, out } => {
                let report = gamma_psl(&alpha, &SuiteParams::default())?;
                emit(&report, &format, &out)
            }
        },
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
