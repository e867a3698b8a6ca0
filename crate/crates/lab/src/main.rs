use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thomason_core::filtration::{monoid_filtration_report, muro_hom_filtration, FiltrationReport};
use thomason_core::homology::homology;
use thomason_lab::formats::{read_json, to_json, CategoryDoc, MonoidProblemDoc, MuroInstanceDoc, SsetDoc};
use thomason_lab::scenarios::{self, Options, SCENARIOS};

#[derive(Parser)]
#[command(name = "thomason-lab", version, about = "Checks finite models of small categories and simplicial sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named scenario, or `all`.
    Scenario {
        name: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = thomason_core::category::DEFAULT_MAX_PATH_LEN)]
        max_path_len: usize,
        /// Treat checks stopped by a cap as passing.
        #[arg(long)]
        allow_unknown: bool,
        #[arg(long, default_value_t = thomason_core::dwyer::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        /// Largest dimension for the w-factorization scenario.
        #[arg(long, default_value_t = 2)]
        w_max_dim: usize,
    },
    /// Integral homology of a simplicial set file.
    Homology {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decide whether a full subcategory is a (Cisinski-)Dwyer inclusion.
    DwyerCheck {
        /// A poset or a category presentation.
        file: PathBuf,
        /// Comma-separated object names.
        #[arg(long, value_delimiter = ',')]
        sub: Vec<String>,
        #[arg(long, default_value_t = thomason_core::dwyer::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Build a cell filtration and compare it with its oracle.
    Filtration {
        #[command(subcommand)]
        kind: FiltrationKind,
    },
}

#[derive(Subcommand)]
enum FiltrationKind {
    Monoid {
        problem: PathBuf,
        #[arg(long, default_value_t = 3)]
        stages: usize,
    },
    Muro {
        instance: PathBuf,
        #[arg(long, default_value_t = 3)]
        stages: usize,
    },
}

fn filtration_output(r: &FiltrationReport) -> serde_json::Value {
    json!({
        "passed": r.passed(),
        "stage_sizes": r.stage_sizes,
        "oracle_sizes": r.oracle_sizes,
        "first_mismatch": r.first_mismatch,
    })
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Scenario { name, format, max_path_len, allow_unknown, budget, w_max_dim } => {
            let opts = Options { max_path_len, budget, w_max_dim };
            let names: Vec<&str> = if name == "all" { SCENARIOS.to_vec() } else { vec![name.as_str()] };
            let mut reports = Vec::new();
            for n in names {
                reports.push(scenarios::run(n, &opts)?);
            }
            match format {
                Format::Json if reports.len() == 1 => println!("{}", to_json(&reports[0])),
                Format::Json => println!("{}", to_json(&reports)),
                Format::Text => reports.iter().for_each(|r| print!("{}", r.to_text())),
            }
            Ok(reports.iter().all(|r| r.passed(allow_unknown)))
        }
        Command::Homology { file, format } => {
            let x = read_json::<SsetDoc>(&file)?.to_sset()?;
            let h = homology(&x);
            match format {
                Format::Json => println!("{}", to_json(&json!({ "H": scenarios::profile_json(&h) }))),
                Format::Text => println!("{h}"),
            }
            Ok(true)
        }
        Command::DwyerCheck { file, sub, budget } => {
            let cat = Arc::new(read_json::<CategoryDoc>(&file)?.to_category()?);
            let members = sub
                .iter()
                .map(|s| cat.object_index(s).ok_or_else(|| anyhow!("unknown object {s}")))
                .collect::<Result<Vec<_>>>()?;
            let verdict = scenarios::dwyer_check(&cat, &members, budget)?;
            println!("{}", to_json(&verdict));
            Ok(true)
        }
        Command::Filtration { kind } => {
            let report = match kind {
                FiltrationKind::Monoid { problem, stages } => {
                    monoid_filtration_report(&read_json::<MonoidProblemDoc>(&problem)?.to_problem()?, stages)?
                }
                FiltrationKind::Muro { instance, stages } => {
                    muro_hom_filtration(&read_json::<MuroInstanceDoc>(&instance)?.to_problem()?, stages)?.1
                }
            };
            println!("{}", to_json(&filtration_output(&report)));
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
