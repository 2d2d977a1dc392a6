use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rtype::cli::{run_corpus, run_job, DomainFile, Invariant, JobSpec, Report, EXIT_ERROR, EXIT_OK};
use rtype::engine::{LatticePreset, OracleConfig};

/// Exact type invariants of boundary points of Reinhardt domains.
#[derive(Parser)]
#[command(name = "rtype", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sampled convexity checks of the domain and the local germ.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute type invariants at the point.
    Type {
        file: PathBuf,
        /// One or more of: check, line, regular, variety, qtypes, multitype, oracle.
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        invariant: Vec<Invariant>,
        #[arg(long)]
        max_order: Option<u32>,
        #[arg(long)]
        json: bool,
        /// Include per-invariant wall-clock times in the JSON report.
        #[arg(long)]
        timings: bool,
    },
    /// Run the jet oracle alone.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_deg: usize,
        #[arg(long, default_value = "default")]
        lattice: String,
        #[arg(long, default_value_t = 2_000_000)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run every `.dom` file in a directory against its expectations.
    Corpus {
        dir: PathBuf,
        /// Glob on file names, e.g. `sphere*`.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn emit(report: &Report, json: bool) -> i32 {
    if json {
        println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
    } else {
        println!("{}", report.text);
    }
    report.exit
}

fn job(file: &Path, invariants: &[Invariant]) -> rtype::Result<JobSpec> {
    JobSpec::new(DomainFile::load(file)?, invariants)
}

fn run(cli: Cli) -> rtype::Result<i32> {
    Ok(match cli.command {
        Command::Check { file, json } => emit(&run_job(&job(&file, &[Invariant::Check])?)?, json),
        Command::Type { file, invariant, max_order, json, timings } => {
            let mut j = job(&file, &invariant)?;
            if let Some(k) = max_order {
                j.max_order = k;
            }
            j.timings = timings;
            emit(&run_job(&j)?, json)
        }
        Command::Oracle { file, max_deg, lattice, budget, json } => {
            let preset: LatticePreset = lattice.parse()?;
            let mut j = job(&file, &[Invariant::Oracle])?;
            j.oracle = OracleConfig::new(max_deg, preset, budget);
            j.lattice = preset;
            emit(&run_job(&j)?, json)
        }
        Command::Corpus { dir, filter, json } => {
            let r = run_corpus(&dir, filter.as_deref())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable"));
            } else {
                print!("{}", r.table());
            }
            r.exit
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
