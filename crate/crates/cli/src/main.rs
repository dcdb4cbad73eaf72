//! `di4`: the v1-periodic homotopy of DI(4) from the command line.

mod commands;

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use di4_core::{Error, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Json,
}

#[derive(Parser)]
#[command(
    name = "di4",
    version,
    about = "Exact K-theory and v1-periodic homotopy of DI(4)"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve psi^2 psi^3 = psi^3 psi^2 for the off-diagonal entries of psi^3.
    AdamsVerify {
        /// Add 1 to the psi^3 entry (row, col), 1-based, before checking.
        #[arg(long, value_name = "ROW,COL", value_parser = parse_pair)]
        perturb: Option<(usize, usize)>,
    },
    /// Solve 3^(4L+2) = rhs mod 2^P for L.
    SolveL {
        #[arg(long, default_value_t = 21, value_parser = clap::value_parser!(u32).range(4..=40))]
        prec: u32,
    },
    /// KO^* and K^* of Phi_1 DI(4) with their Adams operations.
    KoPhi1,
    /// v1^-1 pi_(8i+d) DI(4) for i in [min, max] and d = 1..8.
    Homotopy {
        #[arg(long, allow_negative_numbers = true)]
        min: i64,
        #[arg(long, allow_negative_numbers = true)]
        max: i64,
    },
    /// Reconstruct pi_*(T) from pi_*(T /\ M(2^21)).
    PseudospherePi,
    /// Compare the Adams module of Phi_1 DI(4) with that of a suspension of T /\ M(2^21).
    Match {
        #[arg(long, allow_negative_numbers = true, default_value_t = di4_core::SHIFT_L as i64)]
        l: i64,
    },
    /// Run the full verification suite.
    Selftest {
        /// Print the check names without running them.
        #[arg(long)]
        list: bool,
        /// Corrupt one expected constant (gamma, shift-l, lifting, ko5).
        #[arg(long, value_name = "FAULT")]
        inject_fault: Option<di4_core::checks::Fault>,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected ROW,COL, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// What a command produced: a report, and optionally its own markdown layout.
pub struct Output {
    pub report: Report,
    pub markdown: Option<String>,
}

impl From<Report> for Output {
    fn from(report: Report) -> Self {
        Output {
            report,
            markdown: None,
        }
    }
}

fn run(command: Command) -> Result<Output, Error> {
    match command {
        Command::AdamsVerify { perturb } => commands::adams_verify(perturb).map(Into::into),
        Command::SolveL { prec } => commands::solve_l(prec).map(Into::into),
        Command::KoPhi1 => commands::ko_phi1().map(Into::into),
        Command::Homotopy { min, max } => commands::homotopy(min, max),
        Command::PseudospherePi => commands::pseudosphere_pi().map(Into::into),
        Command::Match { l } => commands::match_l(l).map(Into::into),
        Command::Selftest { list, inject_fault } => commands::selftest(list, inject_fault),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => out.report.to_json() + "\n",
                Format::Md => out
                    .markdown
                    .clone()
                    .unwrap_or_else(|| out.report.to_markdown()),
            };
            if let Err(e) = std::io::stdout().lock().write_all(text.as_bytes()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if let Some(c) = out.report.first_failure() {
                eprintln!("check failed: {}", c.name);
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e @ (Error::InternalMismatch(_) | Error::ContradictionNotFound(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
