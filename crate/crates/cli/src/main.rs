//! `kpsh`: compute with symmetric functions and character tables, and run
//! verification checks singly or as suites.
//!
//! Exit codes: 0 when everything expected to pass passed, 1 on a
//! verification failure, 2 on bad input.

mod checks;
mod output;
mod resolve;
mod suite;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use kpsh_core::groupkit::{character_table, restriction_matrix};
use kpsh_core::symfunc::{comul, hopf_power, lr_coeff, mul, Partition, SchurVector};
use kpsh_core::tensor_hopf::{psi_matrix, GradedVector, HopfMatrix};

use checks::{CheckName, Params};
use suite::{Expected, JobSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Structured,
}

#[derive(Parser)]
#[command(name = "kpsh", version, about = "Symmetric functions, twisted PSH modules and wreath product characters")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Littlewood-Richardson coefficient c^λ_{μν}
    Lr { lambda: Partition, mu: Partition, nu: Partition },
    /// Product of two Schur vectors, e.g. `s[2] + 2*s[1,1]`
    Mul { left: SchurVector, right: SchurVector },
    /// Coproduct of a Schur vector
    Comul { vector: SchurVector },
    /// Hopf power map Ψ^k
    HopfPower { k: u64, vector: SchurVector },
    /// Matrix Hopf map Ψ^M applied to a tensor such as `s[1] ⊗ s[2]`
    PsiMatrix {
        /// File with one matrix row per line
        #[arg(short = 'M', long = "matrix")]
        matrix: PathBuf,
        vector: GradedVector,
    },
    /// Character table of a group
    CharTable {
        #[arg(long)]
        group: String,
    },
    /// Restriction multiplicity matrix: rows irr(H), columns irr(G)
    Mhg {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
    },
    /// Run a single check
    Verify {
        #[arg(value_enum)]
        check: CheckName,
        #[command(flatten)]
        params: Params,
        /// Run the check as expected to be informational
        #[arg(long)]
        informational: bool,
    },
    /// Run every job of a suite file
    RunSuite {
        config: PathBuf,
        /// Maximum number of jobs run at once
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Compare the job reports with a stored report
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Write the job reports to the `--golden` file instead of comparing
        #[arg(long, requires = "golden")]
        bless: bool,
        /// Print wall times
        #[arg(long)]
        timing: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means a verification failure.
fn run(cli: Cli) -> Result<bool> {
    let format = cli.format;
    let here = Path::new(".");
    match cli.command {
        Command::Lr { lambda, mu, nu } => {
            println!("{}", lr_coeff(&lambda, &mu, &nu));
        }
        Command::Mul { left, right } => print!("{}", output::schur(&mul(&left, &right), format)),
        Command::Comul { vector } => print!("{}", output::tensor(&comul(&vector), format)),
        Command::HopfPower { k, vector } => print!("{}", output::schur(&hopf_power(k, &vector), format)),
        Command::PsiMatrix { matrix, vector } => {
            let text = std::fs::read_to_string(&matrix).with_context(|| format!("reading {}", matrix.display()))?;
            let m: HopfMatrix = text.parse()?;
            print!("{}", output::tensor(&psi_matrix(&m, &vector)?, format));
        }
        Command::CharTable { group } => {
            let g = resolve::group(&group, here)?;
            print!("{}", output::char_table(&character_table(&g)?, format));
        }
        Command::Mhg { group, subgroup } => {
            let g = resolve::group(&group, here)?;
            let emb = resolve::subgroup(&g, &subgroup, here)?;
            let m = restriction_matrix(&emb, &character_table(emb.sub())?, &character_table(&g)?)?;
            print!("{}", output::matrix(&m, format));
        }
        Command::Verify { check, params, informational } => {
            let spec = JobSpec {
                name: check.as_str(),
                check,
                expect: if informational { Expected::Informational } else { Expected::Pass },
                group: params.group.clone(),
                subgroup: params.subgroup.clone(),
                cutoff: params.cutoff,
                power: params.power,
                blocks: params.blocks.clone(),
                instances: params.instances,
                seed: params.seed,
                matrices: Default::default(),
            };
            let report = suite::run(std::slice::from_ref(&spec), here, 1)?;
            print!("{}", output::suite(&report, format, false)?);
            return Ok(report.all_ok());
        }
        Command::RunSuite { config, jobs, golden, bless, timing } => {
            let specs = suite::load(&config)?;
            let base = config.parent().unwrap_or(here);
            let report = suite::run(&specs, base, jobs)?;
            print!("{}", output::suite(&report, format, timing)?);
            let mut ok = report.all_ok();
            if let Some(golden) = golden {
                if bless {
                    std::fs::write(&golden, output::golden(&report)?)
                        .with_context(|| format!("writing {}", golden.display()))?;
                } else if let Some(diff) = output::compare_golden(&report, &golden)? {
                    println!("golden report mismatch: {diff}");
                    ok = false;
                }
            }
            return Ok(ok);
        }
    }
    Ok(true)
}
