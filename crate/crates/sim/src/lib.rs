//! Configuration-driven runs of the proptime-core scenarios, with CSV and
//! JSON output and a run manifest.

pub mod config;
pub mod error;
pub mod output;
pub mod scenarios;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

pub use config::{Scenario, ScenarioConfig};
pub use error::SimError;

pub const MANIFEST: &str = "run_manifest.json";
pub const ERROR_FILE: &str = "error.json";

#[derive(Serialize)]
struct Manifest<'a> {
    schema: &'static str,
    schema_version: u32,
    scenario: String,
    library_version: &'static str,
    config: &'a ScenarioConfig,
    files: Vec<String>,
    wall_time_seconds: f64,
}

/// Run a validated config and write its files under `out`. Returns the
/// written paths, manifest last.
pub fn execute(cfg: &ScenarioConfig, out: &Path) -> Result<Vec<PathBuf>, SimError> {
    let start = Instant::now();
    let files = scenarios::run(cfg)?;
    fs::create_dir_all(out).map_err(|e| SimError::io(out, e))?;
    let stale = out.join(ERROR_FILE);
    if stale.exists() {
        fs::remove_file(&stale).map_err(|e| SimError::io(&stale, e))?;
    }
    let mut written = Vec::with_capacity(files.len() + 1);
    for f in &files {
        written.push(output::write_atomic(out, &f.name, &f.contents)?);
    }
    let manifest = Manifest {
        schema: "proptime-sim/run_manifest",
        schema_version: scenarios::SCHEMA_VERSION,
        scenario: cfg.scenario.to_string(),
        library_version: env!("CARGO_PKG_VERSION"),
        config: cfg,
        files: files.iter().map(|f| f.name.clone()).collect(),
        wall_time_seconds: start.elapsed().as_secs_f64(),
    };
    let m = output::OutputFile::json(MANIFEST, &manifest);
    written.push(output::write_atomic(out, &m.name, &m.contents)?);
    Ok(written)
}
