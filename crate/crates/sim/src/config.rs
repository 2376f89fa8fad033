//! Scenario configuration.
//!
//! A config file is a TOML document whose keys are grouped in dotted
//! sections (`grid.n = 64` or a `[grid]` table). Parsing starts from the
//! defaults of the chosen scenario, merges the document and then any
//! `--override key=value` pairs, rejects unknown keys and checks every range
//! before anything runs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use toml::{Table, Value};

use crate::error::SimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Schrodinger,
    Dirac,
    Kg,
    Classical,
    Fock,
    Algebra,
    Propagator,
    Hj,
}

impl Scenario {
    pub const ALL: [Scenario; 8] = [
        Scenario::Schrodinger,
        Scenario::Dirac,
        Scenario::Kg,
        Scenario::Classical,
        Scenario::Fock,
        Scenario::Algebra,
        Scenario::Propagator,
        Scenario::Hj,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Schrodinger => "schrodinger",
            Scenario::Dirac => "dirac",
            Scenario::Kg => "kg",
            Scenario::Classical => "classical",
            Scenario::Fock => "fock",
            Scenario::Algebra => "algebra",
            Scenario::Propagator => "propagator",
            Scenario::Hj => "hj",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            Scenario::Schrodinger => {
                "scalar field evolved in w0 with the nonrelativistic or relativistic time function"
            }
            Scenario::Dirac => "spinor field evolved with the Dirac time function",
            Scenario::Kg => "real Klein-Gordon field on the proper-time shell with its T and Y charges",
            Scenario::Classical => "leapfrog integration of the dual Hamilton equations in m_V",
            Scenario::Fock => "truncated Fock space, time-interval spectrum and field commutators",
            Scenario::Algebra => "Poincare and canonical commutator residuals",
            Scenario::Propagator => "sliced path integral against the spectral oracle",
            Scenario::Hj => "time function from a Hamilton-Jacobi complete integral",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, SimError> {
        Scenario::ALL.into_iter().find(|sc| sc.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Scenario::ALL.iter().map(|s| s.name()).collect();
            SimError::Config(format!("unknown scenario \"{s}\"{}", suggest(s, names.iter().copied())))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub dims: usize,
    pub n: usize,
    pub box_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicsConfig {
    pub tau: f64,
    /// nonrelativistic | relativistic
    pub variant: String,
    /// none | quadratic | linear | abs
    pub time_potential: String,
    /// kappa, slope or strength of the time potential
    pub potential_strength: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    /// gaussian | random
    pub kind: String,
    pub center: Vec<f64>,
    pub width: f64,
    pub amplitude: f64,
    pub carrier: Vec<f64>,
    pub seed: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub dw0: f64,
    pub dm_v: f64,
    pub steps: usize,
    pub snapshot_every: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalConfig {
    pub y: Vec<f64>,
    pub w: Vec<f64>,
    pub reference_tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantizationConfig {
    pub cutoff: usize,
    pub n_max: u32,
    pub dimension_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    /// scalar | dirac
    pub spin: String,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropagatorConfig {
    pub w_start: f64,
    pub w_end: f64,
    pub w0_interval: f64,
    pub ladder: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HjConfig {
    /// free | oscillator
    pub system: String,
    pub mass: f64,
    pub omega: f64,
    pub q: f64,
    pub t: f64,
    pub energy: f64,
    pub h: f64,
    /// coarse step of the order test; the fine step is half of it
    pub order_h: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub directory: String,
    pub formats: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub grid: GridConfig,
    pub physics: PhysicsConfig,
    pub initial: InitialConfig,
    pub run: RunConfig,
    pub classical: ClassicalConfig,
    pub quantization: QuantizationConfig,
    pub algebra: AlgebraConfig,
    pub propagator: PropagatorConfig,
    pub hj: HjConfig,
    pub output: OutputConfig,
}

impl ScenarioConfig {
    pub fn defaults(scenario: Scenario) -> Self {
        let mut cfg = ScenarioConfig {
            scenario,
            grid: GridConfig { dims: 1, n: 64, box_length: 16.0 },
            physics: PhysicsConfig {
                tau: 1.0,
                variant: "nonrelativistic".into(),
                time_potential: "none".into(),
                potential_strength: 0.0,
            },
            initial: InitialConfig {
                kind: "gaussian".into(),
                center: vec![0.0],
                width: 1.0,
                amplitude: 1.0,
                carrier: vec![0.0],
                seed: 0,
            },
            run: RunConfig { dw0: 0.01, dm_v: 1e-3, steps: 100, snapshot_every: 0 },
            classical: ClassicalConfig { y: vec![0.0], w: vec![1.0], reference_tolerance: 1e-13 },
            quantization: QuantizationConfig { cutoff: 0, n_max: 3, dimension_limit: 4096 },
            algebra: AlgebraConfig { spin: "dirac".into(), width: 1.0 },
            propagator: PropagatorConfig { w_start: 0.0, w_end: 1.0, w0_interval: 0.5, ladder: vec![4, 8, 16, 32, 64] },
            hj: HjConfig {
                system: "free".into(),
                mass: 1.0,
                omega: 1.0,
                q: 1.0,
                t: 0.5,
                energy: 0.5,
                h: 1e-4,
                order_h: 1e-2,
            },
            output: OutputConfig { directory: "out".into(), formats: vec!["csv".into(), "json".into()] },
        };
        match scenario {
            Scenario::Classical => {
                cfg.physics.time_potential = "quadratic".into();
                cfg.physics.potential_strength = 0.04;
                cfg.run.steps = 10_000;
                cfg.run.snapshot_every = 100;
            }
            Scenario::Propagator => {
                cfg.grid = GridConfig { dims: 1, n: 512, box_length: 256.0 };
                cfg.physics.time_potential = "quadratic".into();
                cfg.physics.potential_strength = 0.25;
            }
            Scenario::Algebra => {
                cfg.grid = GridConfig { dims: 2, n: 64, box_length: 16.0 };
                cfg.initial.center = vec![0.0, 0.0];
                cfg.initial.carrier = vec![0.0, 0.0];
            }
            _ => {}
        }
        cfg
    }

    /// Parse a document for `scenario`, then apply `key=value` overrides.
    pub fn parse(scenario: Scenario, text: &str, overrides: &[String]) -> Result<Self, SimError> {
        let doc: Table = text
            .parse()
            .map_err(|e: toml::de::Error| SimError::Config(format!("malformed config: {}", e.message())))?;
        let mut merged = flatten(&defaults_table(scenario));
        let known: Vec<String> = merged.keys().cloned().collect();
        let mut incoming = flatten(&doc);
        for item in overrides {
            let (key, value) = parse_override(item)?;
            incoming.insert(key, value);
        }
        for (key, value) in incoming {
            if !merged.contains_key(&key) {
                return Err(SimError::Config(format!(
                    "unknown key \"{key}\"{}",
                    suggest(&key, known.iter().map(String::as_str))
                )));
            }
            merged.insert(key, value);
        }
        if let Some(Value::String(name)) = merged.get("scenario") {
            if name != scenario.name() {
                return Err(SimError::Config(format!(
                    "config is for scenario \"{name}\" but \"{scenario}\" was requested"
                )));
            }
        }
        let cfg: ScenarioConfig = Value::Table(unflatten(merged))
            .try_into()
            .map_err(|e: toml::de::Error| SimError::Config(format!("bad value: {}", e.message().trim())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Complete TOML document with every key.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let dims = self.grid.dims;
        check(matches!(dims, 1..=3), "grid.dims must be 1, 2 or 3")?;
        check(self.grid.n >= 2, "grid.n must be >= 2")?;
        positive(self.grid.box_length, "grid.box_length")?;
        positive(self.physics.tau, "tau")?;
        one_of(&self.physics.variant, "physics.variant", &["nonrelativistic", "relativistic"])?;
        one_of(&self.physics.time_potential, "physics.time_potential", &["none", "quadratic", "linear", "abs"])?;
        check(self.physics.potential_strength.is_finite(), "physics.potential_strength must be finite")?;
        one_of(&self.initial.kind, "initial.kind", &["gaussian", "random"])?;
        check(
            self.initial.kind == "gaussian" || self.scenario == Scenario::Kg,
            "initial.kind = \"random\" is only available in the kg scenario",
        )?;
        check(self.initial.center.iter().all(|v| v.is_finite()), "initial.center must be finite")?;
        check(self.initial.carrier.iter().all(|v| v.is_finite()), "initial.carrier must be finite")?;
        positive(self.initial.width, "initial.width")?;
        check(self.initial.amplitude.is_finite(), "initial.amplitude must be finite")?;
        check(self.run.dw0.is_finite(), "run.dw0 must be finite")?;
        positive(self.run.dm_v, "run.dm_v")?;
        check(self.run.steps >= 1, "run.steps must be >= 1")?;
        check(
            self.classical.y.iter().chain(&self.classical.w).all(|v| v.is_finite()),
            "classical.y and classical.w must be finite",
        )?;
        check(
            self.classical.y.len() == self.classical.w.len(),
            "classical.y and classical.w must have the same length",
        )?;
        check(matches!(self.classical.y.len(), 1..=3), "classical.y must have 1 to 3 components")?;
        positive(self.classical.reference_tolerance, "classical.reference_tolerance")?;
        check(self.quantization.n_max >= 1, "quantization.n_max must be >= 1")?;
        check(self.quantization.dimension_limit >= 1, "quantization.dimension_limit must be >= 1")?;
        one_of(&self.algebra.spin, "algebra.spin", &["scalar", "dirac"])?;
        positive(self.algebra.width, "algebra.width")?;
        check(
            self.propagator.w_start.is_finite() && self.propagator.w_end.is_finite(),
            "propagator endpoints must be finite",
        )?;
        positive(self.propagator.w0_interval, "propagator.w0_interval")?;
        check(!self.propagator.ladder.is_empty(), "propagator.ladder must not be empty")?;
        check(self.propagator.ladder.iter().all(|&n| n >= 1), "propagator.ladder entries must be >= 1")?;
        one_of(&self.hj.system, "hj.system", &["free", "oscillator"])?;
        positive(self.hj.mass, "hj.mass")?;
        positive(self.hj.omega, "hj.omega")?;
        check(
            self.hj.q.is_finite() && self.hj.t.is_finite() && self.hj.energy.is_finite(),
            "hj.q, hj.t and hj.energy must be finite",
        )?;
        positive(self.hj.h, "hj.h")?;
        positive(self.hj.order_h, "hj.order_h")?;
        check(!self.output.directory.is_empty(), "output.directory must not be empty")?;
        check(!self.output.formats.is_empty(), "output.formats must name at least one of csv, json")?;
        for f in &self.output.formats {
            one_of(f, "output.formats", &["csv", "json"])?;
        }
        match self.scenario {
            Scenario::Schrodinger | Scenario::Dirac | Scenario::Kg | Scenario::Algebra => {
                check(self.initial.center.len() == dims, "initial.center must have grid.dims components")?;
                check(self.initial.carrier.len() == dims, "initial.carrier must have grid.dims components")?;
            }
            Scenario::Propagator => check(dims == 1, "the propagator scenario needs grid.dims = 1")?,
            _ => {}
        }
        if self.scenario == Scenario::Dirac {
            check(dims != 2, "the dirac scenario supports grid.dims 1 or 3")?;
        }
        Ok(())
    }

    pub fn wants(&self, format: &str) -> bool {
        self.output.formats.iter().any(|f| f == format)
    }
}

fn check(ok: bool, message: &str) -> Result<(), SimError> {
    if ok {
        Ok(())
    } else {
        Err(SimError::Config(message.to_string()))
    }
}

fn positive(v: f64, name: &str) -> Result<(), SimError> {
    check(v.is_finite() && v > 0.0, &format!("{name} must be > 0"))
}

fn one_of(v: &str, name: &str, choices: &[&str]) -> Result<(), SimError> {
    check(choices.contains(&v), &format!("{name} must be one of {}, got \"{v}\"", choices.join(", ")))
}

fn defaults_table(scenario: Scenario) -> Table {
    match Value::try_from(ScenarioConfig::defaults(scenario)) {
        Ok(Value::Table(t)) => t,
        _ => unreachable!("defaults serialize to a table"),
    }
}

/// Dotted key -> leaf value. Arrays are leaves.
pub fn flatten(table: &Table) -> BTreeMap<String, Value> {
    fn walk(prefix: &str, table: &Table, out: &mut BTreeMap<String, Value>) {
        for (k, v) in table {
            let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
            match v {
                Value::Table(t) => walk(&key, t, out),
                other => {
                    out.insert(key, other.clone());
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    walk("", table, &mut out);
    out
}

fn unflatten(flat: BTreeMap<String, Value>) -> Table {
    let mut root = Table::new();
    for (key, value) in flat {
        let mut parts: Vec<&str> = key.split('.').collect();
        let leaf = parts.pop().unwrap_or_default();
        let mut table = &mut root;
        for p in parts {
            table = match table.entry(p.to_string()).or_insert_with(|| Value::Table(Table::new())) {
                Value::Table(t) => t,
                _ => unreachable!("sections and leaves do not collide"),
            };
        }
        table.insert(leaf.to_string(), value);
    }
    root
}

/// `section.key=value` with a TOML right-hand side; bare words are strings.
pub fn parse_override(item: &str) -> Result<(String, Value), SimError> {
    let (key, raw) = item
        .split_once('=')
        .ok_or_else(|| SimError::Config(format!("override \"{item}\" is not of the form key=value")))?;
    let key = key.trim();
    let raw = raw.trim();
    if key.is_empty() || key.split('.').any(str::is_empty) {
        return Err(SimError::Config(format!("override \"{item}\" has an empty key")));
    }
    let value = match format!("v = {raw}").parse::<Table>() {
        Ok(mut t) => t.remove("v").unwrap_or(Value::String(raw.to_string())),
        Err(_) => Value::String(raw.to_string()),
    };
    Ok((key.to_string(), value))
}

/// ", did you mean ...?" for the closest candidate, if any is close.
fn suggest<'a>(word: &str, candidates: impl Iterator<Item = &'a str>) -> String {
    let leaf = |s: &str| s.rsplit('.').next().unwrap_or(s).to_string();
    let best = candidates
        .map(|c| {
            let score = strsim::jaro_winkler(word, c).max(strsim::jaro_winkler(&leaf(word), &leaf(c)));
            (score, c)
        })
        .max_by(|a, b| a.0.total_cmp(&b.0));
    match best {
        Some((score, c)) if score > 0.8 => format!(", did you mean \"{c}\"?"),
        _ => String::new(),
    }
}

/// Key reference for `--help`: every dotted key with its default.
pub fn key_reference(scenario: Scenario) -> String {
    flatten(&defaults_table(scenario)).into_iter().map(|(k, v)| format!("  {k} = {v}")).collect::<Vec<_>>().join("\n")
}
