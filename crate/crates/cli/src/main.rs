use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dle_cli::report::{to_json, Report};
use dle_cli::scenarios::{list_scenarios, run_many, Params};
use dle_cli::script::run_script;
use dle_cli::{homology_options, CliError};

#[derive(Parser)]
#[command(name = "dle", version, about = "Derived exterior powers and multiplicative Euler characteristics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Highest internal degree examined in graded homology.
    #[arg(long, global = true)]
    cutoff: Option<i64>,
    /// Trailing zero degrees required to certify finite length.
    #[arg(long, global = true)]
    window: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run named scenarios, or `all`.
    Run {
        #[arg(required = true)]
        names: Vec<String>,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        rmax: Option<usize>,
        /// Comma-separated chi values of composition factors (prop_4_4).
        #[arg(long)]
        chi: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        /// Also compute lambda^3 of the residue field directly.
        #[arg(long)]
        expensive: bool,
        /// Number of scenarios run concurrently.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
    /// Execute a script file.
    Script { path: PathBuf },
    /// List scenarios with their parameters.
    List,
}

fn emit(reports: &[Report], format: Format) {
    match format {
        Format::Json => println!("{}", to_json(reports)),
        Format::Text => {
            for r in reports {
                print!("{}", r.to_text());
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let env = std::env::var("DLE_CUTOFF").ok();
    let options = homology_options(cli.cutoff, cli.window, env.as_deref())?;
    match cli.command {
        Command::List => {
            for s in list_scenarios() {
                let params: Vec<String> = s.params.iter().map(|(k, d)| format!("{k}={d}")).collect();
                println!("{:<20} {:<40} {}", s.name, params.join(" "), s.anchor);
            }
            Ok(true)
        }
        Command::Script { path } => {
            let report = run_script(&path, &options)?;
            emit(std::slice::from_ref(&report), cli.format);
            Ok(report.passed())
        }
        Command::Run { names, prime, poly, f, g, rmax, chi, seed, samples, expensive, parallel } => {
            let mut params = Params { options, ..Default::default() };
            let given = [("prime", prime.map(|v| v.to_string())), ("poly", poly), ("f", f), ("g", g), ("rmax", rmax.map(|v| v.to_string())), ("chi", chi), ("seed", seed.map(|v| v.to_string())), ("samples", samples.map(|v| v.to_string()))];
            for (k, v) in given {
                if let Some(v) = v {
                    params.set(k, v);
                }
            }
            if expensive {
                params.set("expensive", true);
            }
            let names: Vec<String> = if names.iter().any(|n| n == "all") {
                list_scenarios().iter().map(|s| s.name.to_string()).collect()
            } else {
                names
            };
            let reports = run_many(&names, &params, parallel)?;
            emit(&reports, cli.format);
            Ok(reports.iter().all(Report::passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {} ({})", e, e.name());
            ExitCode::from(2)
        }
    }
}
