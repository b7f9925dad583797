use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use affine_coxeter::catalog::{fixture_graph, fixtures, run_catalog};
use affine_coxeter::sweep::{sweep_path5, SolutionStatus};
use affine_coxeter::{analyze, parse_graph, AnalysisConfig};

#[derive(Parser)]
#[command(name = "affine-coxeter", version, about = "Exact reflection representations of Coxeter graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a decorated graph file.
    Analyze {
        file: PathBuf,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Translation search radius; 0 disables the search.
        #[arg(long)]
        max_word_len: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Built-in fixtures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Search label tuples for vanishing discriminants.
    Sweep {
        #[arg(long, value_enum, default_value_t = SweepFamily::Path5)]
        family: SweepFamily,
        /// Labels to try on every edge.
        #[arg(long, value_delimiter = ',', default_values_t = [3, 4, 5, 6])]
        labels: Vec<u32>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Check every fixture against its expectations.
    Run,
    /// List fixture names.
    List,
    /// Print the graph file of a fixture.
    Show { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFamily {
    Path5,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { file, json, max_word_len, seed } => cmd_analyze(&file, json, max_word_len, seed),
        Command::Catalog { action } => cmd_catalog(action),
        Command::Sweep { family: SweepFamily::Path5, labels, json } => cmd_sweep(&labels, json),
    }
}

fn cmd_analyze(file: &PathBuf, json: bool, max_word_len: Option<usize>, seed: u64) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let g = match parse_graph(&text) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let mut cfg = AnalysisConfig::for_graph(&g);
    cfg.seed = seed;
    if let Some(n) = max_word_len {
        cfg.max_word_len = n;
    }
    match analyze(&g, &cfg) {
        Ok(r) if json => {
            println!("{}", r.to_json());
            ExitCode::SUCCESS
        }
        Ok(r) => {
            print!("{}", r.to_text());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_catalog(action: CatalogAction) -> ExitCode {
    match action {
        CatalogAction::List => match fixtures() {
            Ok(fs) => {
                for f in fs {
                    println!("{}\t{}", f.name, f.file);
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
        CatalogAction::Show { name } => match fixture_graph(&name) {
            Ok(g) => {
                print!("{}", g.serialize());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        CatalogAction::Run => {
            let outcomes = match run_catalog() {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            };
            let mut failed = 0;
            println!("{:<22} {:<14} {:<6} {:<30} actual", "fixture", "key", "status", "expected");
            for o in &outcomes {
                for c in &o.checks {
                    let status = if c.passed { "ok" } else { "FAIL" };
                    println!("{:<22} {:<14} {:<6} {:<30} {}", o.name, c.key, status, c.expected, c.actual);
                    if !c.passed {
                        failed += 1;
                    }
                }
            }
            let total: usize = outcomes.iter().map(|o| o.checks.len()).sum();
            println!("{} of {total} checks passed", total - failed);
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn cmd_sweep(labels: &[u32], json: bool) -> ExitCode {
    let sols = sweep_path5(labels);
    if json {
        println!("{}", serde_json::to_string_pretty(&sols).expect("serialisable"));
        return ExitCode::SUCCESS;
    }
    for s in &sols {
        let status = match s.status {
            SolutionStatus::Known => "known",
            SolutionStatus::Mirror => "mirror",
            SolutionStatus::Additional => "additional",
        };
        let labels: Vec<String> = s.labels.iter().map(u32::to_string).collect();
        println!("({})  alpha = ({})  {status}", labels.join(","), s.alphas.join(", "));
    }
    println!("{} solutions", sols.len());
    ExitCode::SUCCESS
}
