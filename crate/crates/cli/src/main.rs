//! `currents`: the verification driver for the exact current-algebra
//! toolkit. Exit codes: 0 all checks pass, 1 a check failed, 2 a
//! configuration or window error.

mod explain;
mod report;
mod suites;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use report::{write_report, Format};
use suites::{SuiteError, SuiteSpec};

#[derive(Parser)]
#[command(name = "currents", version, about = "exact checks for higher current algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a report.
    Run {
        /// One of: ad-cohomology, residue, extension-check, lqt,
        /// hopf-homology, free-field-d1, anomaly-integral, clifford.
        suite: String,
        #[arg(long)]
        dim: Option<usize>,
        /// Built-in algebra name (sl2, gl1..gl3, abelian1..abelian3) or
        /// a path to a structured text file.
        #[arg(long)]
        lie: Option<String>,
        #[arg(long)]
        rep: Option<String>,
        /// Invariant polynomial: killing or trace.
        #[arg(long)]
        theta: Option<String>,
        /// Radius of the symmetric weight box.
        #[arg(long)]
        weight_box: Option<i64>,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        deg_max: Option<u32>,
        #[arg(long)]
        sym_cutoff: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Include wall-clock timing (breaks byte-identical output).
        #[arg(long)]
        timings: bool,
    },
    /// Describe a suite: its contract, anchor, and window semantics.
    Explain { check: String },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Explain { check } => match explain::explain(&check) {
            Some(text) => {
                println!("{}", text);
                ExitCode::SUCCESS
            }
            None => {
                eprintln!(
                    "unknown check '{}'; known: ad-cohomology, residue, \
                     extension-check, lqt, hopf-homology, free-field-d1, \
                     anomaly-integral, clifford",
                    check
                );
                ExitCode::from(2)
            }
        },
        Command::Run {
            suite,
            dim,
            lie,
            rep,
            theta,
            weight_box,
            kmax,
            deg_max,
            sym_cutoff,
            samples,
            seed,
            out,
            format,
            timings,
        } => {
            let spec = SuiteSpec {
                suite,
                dim,
                lie,
                rep,
                theta,
                weight_box,
                kmax,
                deg_max,
                sym_cutoff,
                samples,
                seed,
            };
            let started = Instant::now();
            match suites::run(&spec) {
                Ok(mut report) => {
                    if timings {
                        report.elapsed_ms = Some(started.elapsed().as_millis());
                    }
                    let result = match out {
                        Some(path) => std::fs::File::create(&path)
                            .and_then(|mut f| write_report(&report, format, &mut f)),
                        None => {
                            let stdout = std::io::stdout();
                            let mut lock = stdout.lock();
                            write_report(&report, format, &mut lock).and_then(|_| lock.flush())
                        }
                    };
                    if let Err(e) = result {
                        eprintln!("cannot write report: {}", e);
                        return ExitCode::from(2);
                    }
                    if report.all_pass() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e @ SuiteError::Config(_)) | Err(e @ SuiteError::Window(_)) => {
                    eprintln!("{}", e);
                    ExitCode::from(2)
                }
            }
        }
    }
}
