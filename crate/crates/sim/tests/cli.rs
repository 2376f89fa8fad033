use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const SCENARIOS: [&str; 8] = ["schrodinger", "dirac", "kg", "classical", "fock", "algebra", "propagator", "hj"];

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_proptime-sim"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(format!("{name}.toml"))
}

/// Overrides that keep each run short.
fn quick(name: &str) -> Vec<&'static str> {
    match name {
        "schrodinger" | "dirac" => vec!["run.steps=40", "run.snapshot_every=20"],
        "kg" => vec!["run.steps=40", "run.snapshot_every=20", "grid.n=32"],
        "classical" => vec!["run.steps=500", "run.dm_v=0.01"],
        "propagator" => vec!["propagator.ladder=[4, 8]"],
        _ => vec![],
    }
}

fn run(name: &str, out: &Path, extra: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.arg(name).arg("--config").arg(config(name)).arg("--out").arg(out);
    for o in quick(name).iter().chain(extra) {
        cmd.arg("--override").arg(o);
    }
    cmd.output().expect("binary runs")
}

fn schema_for(doc: &Value) -> Value {
    let tag = doc["schema"].as_str().expect("schema tag");
    let name = tag.strip_prefix("proptime-sim/").expect("prefix");
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&fs::read_to_string(path).expect("schema file")).expect("schema json")
}

fn assert_valid(path: &Path) {
    let doc: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    let schema = schema_for(&doc);
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(&doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{} does not match its schema: {msgs:?}", path.display());
}

fn files(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> =
        fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    names
}

#[test]
fn every_scenario_runs_and_matches_schemas() {
    let tmp = tempfile::tempdir().unwrap();
    for name in SCENARIOS {
        let out = tmp.path().join(name);
        let o = run(name, &out, &[]);
        assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        let listed = files(&out);
        assert!(listed.contains(&"run_manifest.json".to_string()));
        assert!(!listed.iter().any(|f| f.starts_with('.')), "temporary files left behind in {name}");
        for f in &listed {
            if f.ends_with(".json") {
                assert_valid(&out.join(f));
            }
        }
        let manifest: Value =
            serde_json::from_str(&fs::read_to_string(out.join("run_manifest.json")).unwrap()).unwrap();
        let mut in_manifest: Vec<String> =
            manifest["files"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
        in_manifest.push("run_manifest.json".into());
        in_manifest.sort();
        assert_eq!(in_manifest, listed);
    }
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    for name in SCENARIOS {
        let a = tmp.path().join(format!("{name}_a"));
        let b = tmp.path().join(format!("{name}_b"));
        assert!(run(name, &a, &[]).status.success());
        assert!(run(name, &b, &[]).status.success());
        assert_eq!(files(&a), files(&b));
        for f in files(&a) {
            if f == "run_manifest.json" {
                continue;
            }
            assert_eq!(fs::read(a.join(&f)).unwrap(), fs::read(b.join(&f)).unwrap(), "{name}/{f} differs");
        }
    }
}

#[test]
fn seed_changes_kg_output() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    assert!(run("kg", &a, &["initial.seed=1"]).status.success());
    assert!(run("kg", &b, &["initial.seed=2"]).status.success());
    assert_ne!(fs::read(a.join("field_0.csv")).unwrap(), fs::read(b.join("field_0.csv")).unwrap());
}

fn expect_failure(o: &Output, code: i32, kind: &str, out: &Path) {
    assert_eq!(o.status.code(), Some(code), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_slice(o.stderr.trim_ascii()).expect("stderr is one JSON report");
    assert_eq!(report["kind"], kind);
    assert_eq!(report["exit_code"], code);
    let path = out.join("error.json");
    assert!(path.exists());
    assert_valid(&path);
    assert!(!out.join("run_manifest.json").exists());
}

#[test]
fn unknown_key_is_a_config_error_with_suggestion() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run("fock", tmp.path(), &["physics.tua=2"]);
    expect_failure(&o, 2, "config", tmp.path());
    assert!(String::from_utf8_lossy(&o.stderr).contains("physics.tau"));
}

#[test]
fn invalid_value_is_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    expect_failure(&run("schrodinger", tmp.path(), &["physics.tau=-1"]), 2, "config", tmp.path());
}

#[test]
fn missing_config_is_an_io_error() {
    let tmp = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["fock", "--config"])
        .arg(tmp.path().join("absent.toml"))
        .arg("--out")
        .arg(tmp.path())
        .output()
        .unwrap();
    expect_failure(&o, 3, "io", tmp.path());
}

#[test]
fn oversized_fock_space_is_a_resource_error() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run("fock", tmp.path(), &["quantization.cutoff=3", "quantization.n_max=6"]);
    expect_failure(&o, 4, "resource", tmp.path());
}

#[test]
fn free_propagator_oracle_is_a_numerical_error() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run("propagator", tmp.path(), &["physics.time_potential=none"]);
    expect_failure(&o, 5, "numerical", tmp.path());
}

#[test]
fn success_clears_a_stale_error_report() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(run("fock", tmp.path(), &["physics.tau=0"]).status.code(), Some(2));
    assert!(tmp.path().join("error.json").exists());
    assert!(run("fock", tmp.path(), &[]).status.success());
    assert!(!tmp.path().join("error.json").exists());
}

#[test]
fn csv_only_output() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(run("hj", tmp.path(), &["output.formats=[\"csv\"]"]).status.success());
    assert_eq!(files(tmp.path()), ["hj.csv", "run_manifest.json"]);
}

#[test]
fn list_and_print_config() {
    let o = bin().arg("--list-scenarios").output().unwrap();
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    for name in SCENARIOS {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing from list");
    }
    let o = bin()
        .args(["hj", "--print-config", "--override", "hj.mass=2"])
        .arg("--config")
        .arg(config("hj"))
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().contains("mass = 2.0"));
}

#[test]
fn unknown_scenario_is_a_config_error() {
    let o = bin().args(["shrodinger", "--config"]).arg(config("schrodinger")).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("schrodinger"));
}

#[test]
fn csv_numbers_parse_back() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(run("classical", tmp.path(), &[]).status.success());
    let text = fs::read_to_string(tmp.path().join("trajectory.csv")).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let columns = lines.next().unwrap().split(',').count();
    for l in lines {
        let cells: Vec<f64> = l.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells.len(), columns);
    }
}

#[test]
fn schemas_reject_tampered_documents() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(run("hj", tmp.path(), &[]).status.success());
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(tmp.path().join("hj.json")).unwrap()).unwrap();
    let schema = schema_for(&doc);
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    assert!(compiled.is_valid(&doc));
    doc["consistent_sign"] = Value::from("sideways");
    assert!(!compiled.is_valid(&doc));
    doc["consistent_sign"] = Value::from("minus");
    doc["extra"] = Value::from(1);
    assert!(!compiled.is_valid(&doc));
}
