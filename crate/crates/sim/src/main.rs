use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser};

use proptime_sim::config::key_reference;
use proptime_sim::{execute, output, Scenario, ScenarioConfig, SimError, ERROR_FILE};

/// Run a proptime scenario from a config file.
#[derive(Parser, Debug)]
#[command(name = "proptime-sim", version, about)]
struct Cli {
    /// Scenario to run (see --list-scenarios)
    #[arg(required_unless_present = "list_scenarios")]
    scenario: Option<String>,

    /// TOML config file with dotted sections
    #[arg(long, short, required_unless_present = "list_scenarios")]
    config: Option<PathBuf>,

    /// Output directory; replaces output.directory from the config
    #[arg(long, short)]
    out: Option<PathBuf>,

    /// key=value applied after the config file, e.g. physics.tau=2
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    /// Print the resolved config and exit without running
    #[arg(long)]
    print_config: bool,

    /// List the available scenarios
    #[arg(long)]
    list_scenarios: bool,
}

fn long_help() -> String {
    format!(
        "Config keys and their defaults (schrodinger; other scenarios change a few, \
see the reference files under configs/):\n{}\n\n\
Exit codes:\n  0  success\n  2  invalid config or arguments\n  3  file system error\n  \
4  resource limit (Fock dimension)\n  5  numerical failure\n\n\
On failure a JSON error report is printed to stderr and written to error.json in the output directory.",
        key_reference(Scenario::Schrodinger)
    )
}

struct Failure {
    error: SimError,
    scenario: Option<String>,
    /// where error.json goes, if known
    out: Option<PathBuf>,
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let fail = |error: SimError, out: Option<PathBuf>| Failure { error, scenario: cli.scenario.clone(), out };
    let scenario: Scenario =
        cli.scenario.as_deref().unwrap_or_default().parse().map_err(|e| fail(e, cli.out.clone()))?;
    let path = cli.config.as_ref().expect("required by clap");
    let text = fs::read_to_string(path).map_err(|e| fail(SimError::io(path, e), cli.out.clone()))?;
    let mut cfg = ScenarioConfig::parse(scenario, &text, &cli.overrides).map_err(|e| fail(e, cli.out.clone()))?;
    if let Some(out) = &cli.out {
        cfg.output.directory = out.display().to_string();
    }
    if cli.print_config {
        print!("{}", cfg.to_toml());
        return Ok(());
    }
    let out = PathBuf::from(&cfg.output.directory);
    let written = execute(&cfg, &out).map_err(|e| fail(e, Some(out.clone())))?;
    for p in written {
        println!("{}", p.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let matches = Cli::command().after_long_help(long_help()).get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if cli.list_scenarios {
        for s in Scenario::ALL {
            println!("{:<12} {}", s.name(), s.summary());
        }
        return ExitCode::SUCCESS;
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let report = f.error.report(f.scenario.as_deref());
            if let Some(dir) = &f.out {
                if fs::create_dir_all(dir).is_ok() {
                    let file = output::OutputFile::json(ERROR_FILE, &report);
                    let _ = output::write_atomic(dir, ERROR_FILE, &file.contents);
                }
            }
            eprintln!("{}", serde_json::to_string(&report).expect("serializable"));
            ExitCode::from(f.error.exit_code() as u8)
        }
    }
}
