use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use lcsk_cli::{parse_spec, run, Command, Options};
use lcsk_core::Convention;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Partial,
    Shifted,
}

/// Exact checks and solvers for finite-rank Lie conformal superalgebras.
#[derive(Parser, Debug)]
#[command(name = "lcsk", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Algebra specification file (TOML).
    spec: PathBuf,
    /// Bound on ∂-degrees of unknown coefficients.
    #[arg(long)]
    deg_d: Option<usize>,
    /// Bound on λ-degrees of unknown coefficients.
    #[arg(long)]
    deg_l: Option<usize>,
    /// Tensor with ℚ[t]/(t^N), overriding any [coefficients] section.
    #[arg(long, value_name = "N")]
    tensor: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Convention for centroid and commuting-map unknowns.
    #[arg(long, value_enum, default_value = "partial")]
    convention: ConventionArg,
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match std::fs::read(&cli.spec) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("lcsk: cannot read {}: {e}", cli.spec.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let text = match std::str::from_utf8(&input) {
        Ok(t) => t,
        Err(_) => {
            eprintln!("lcsk: {} is not valid UTF-8", cli.spec.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let spec = match parse_spec(text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("lcsk: {}:{e}", cli.spec.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let opts = Options {
        deg_d: cli.deg_d,
        deg_l: cli.deg_l,
        tensor: cli.tensor,
        convention: match cli.convention {
            ConventionArg::Partial => Convention::PartialCommuting,
            ConventionArg::Shifted => Convention::LambdaShifted,
        },
    };
    let report = match run(cli.command, &spec, &input, &opts) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("lcsk: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Machine => print!("{}", report.to_json()),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
