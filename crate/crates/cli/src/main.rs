use clap::{Parser, Subcommand};
use cseig_cli::{bench, oscillator, spectrum, verify, CliError};
use std::process::ExitCode;

/// Eigenvalues and eigenvectors of complex symmetric matrices.
///
/// Exit codes: 0 success, 1 verification failure or I/O error,
/// 2 parse or validation error, 3 breakdown, 4 no convergence.
#[derive(Parser)]
#[command(name = "cseig", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonalize a matrix file.
    Spectrum(spectrum::SpectrumArgs),
    /// Solve an anharmonic oscillator model.
    Oscillator(oscillator::OscillatorArgs),
    /// Check the eigenpairs of a report against its matrix.
    Verify(verify::VerifyArgs),
    /// Time the reduction and QL phases on random matrices.
    Bench(bench::BenchArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum(args) => {
            let report = spectrum::run(&args)?;
            if args.output.is_none() {
                print!("{}", report.render(args.format));
            }
        }
        Command::Oscillator(args) => {
            let run = oscillator::run(&args)?;
            print!("{}", run.report.render(args.format));
        }
        Command::Verify(args) => {
            println!("{}", verify::run(&args)?.summary());
        }
        Command::Bench(args) => {
            print!("{}", bench::run(&args)?.to_csv());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
