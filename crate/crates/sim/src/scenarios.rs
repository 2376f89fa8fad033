//! One function per scenario. Each returns its data files in memory; the
//! caller writes them only after the whole run has succeeded.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use proptime_core::classical::{
    integrate_dual_hamilton, integrate_reference, time_function_eval, verify_hamilton_jacobi_duality, DualPhasePoint,
    FreeParticle, HarmonicOscillator, HjResiduals, HjSystem,
};
use proptime_core::dirac::DiracRep;
use proptime_core::evolution::{
    evolve_dual_dirac, evolve_dual_kg, evolve_dual_schrodinger, kg_charges, KgState, TimeFunctionSpec, TimePotential,
    Variant,
};
use proptime_core::grid::{sample_field, EnergyGrid, EventField, FieldDescriptor, SpinorEventField};
use proptime_core::operators::{lie_algebra_check, Sector, SpinRep};
use proptime_core::propagator::{convergence_table, PathIntegralConfig};
use proptime_core::quantization::{
    build_fock_space_with_limit, build_mode_set, charge_operators, field_commutator_check,
};

use crate::config::{Scenario, ScenarioConfig};
use crate::error::SimError;
use crate::output::{Csv, OutputFile};

pub const SCHEMA_VERSION: u32 = 1;

pub fn run(cfg: &ScenarioConfig) -> Result<Vec<OutputFile>, SimError> {
    cfg.validate()?;
    let files = match cfg.scenario {
        Scenario::Schrodinger => schrodinger(cfg)?,
        Scenario::Dirac => dirac(cfg)?,
        Scenario::Kg => kg(cfg)?,
        Scenario::Classical => classical(cfg)?,
        Scenario::Fock => fock(cfg)?,
        Scenario::Algebra => algebra(cfg)?,
        Scenario::Propagator => propagator(cfg)?,
        Scenario::Hj => hj(cfg)?,
    };
    Ok(files.into_iter().filter(|f| cfg.wants(if f.name.ends_with(".csv") { "csv" } else { "json" })).collect())
}

fn potential(cfg: &ScenarioConfig) -> Option<TimePotential> {
    let s = cfg.physics.potential_strength;
    match cfg.physics.time_potential.as_str() {
        "quadratic" => Some(TimePotential::Quadratic { kappa: s }),
        "linear" => Some(TimePotential::Linear { slope: s }),
        "abs" => Some(TimePotential::Abs { strength: s }),
        _ => None,
    }
}

fn with_potential(spec: TimeFunctionSpec, cfg: &ScenarioConfig) -> TimeFunctionSpec {
    match potential(cfg) {
        Some(v) => spec.with_potential(v),
        None => spec,
    }
}

fn scalar_spec(cfg: &ScenarioConfig) -> Result<TimeFunctionSpec, SimError> {
    let variant = match cfg.physics.variant.as_str() {
        "relativistic" => Variant::RelativisticScalar,
        _ => Variant::Nonrelativistic,
    };
    Ok(with_potential(TimeFunctionSpec::new(variant, cfg.physics.tau)?, cfg))
}

fn grid(cfg: &ScenarioConfig) -> Result<EnergyGrid, SimError> {
    Ok(EnergyGrid::new(cfg.grid.dims, cfg.grid.n, cfg.grid.box_length)?)
}

fn header(cfg: &ScenarioConfig) -> Vec<String> {
    let mut lines = vec![
        format!("proptime-sim {} scenario {}", env!("CARGO_PKG_VERSION"), cfg.scenario),
        format!("tau = {}", cfg.physics.tau),
    ];
    match cfg.scenario {
        Scenario::Schrodinger | Scenario::Dirac | Scenario::Kg => {
            lines.push(format!(
                "grid: dims = {}, n = {}, box_length = {}",
                cfg.grid.dims, cfg.grid.n, cfg.grid.box_length
            ));
            lines.push(format!("dw0 = {}, steps = {}", cfg.run.dw0, cfg.run.steps));
        }
        Scenario::Classical => lines.push(format!("dm_v = {}, steps = {}", cfg.run.dm_v, cfg.run.steps)),
        _ => {}
    }
    if cfg.physics.time_potential != "none" {
        lines.push(format!(
            "time potential {} with strength {}",
            cfg.physics.time_potential, cfg.physics.potential_strength
        ));
    }
    lines
}

fn axis_names(prefix: &str, dims: usize) -> Vec<String> {
    (1..=dims).map(|k| format!("{prefix}_{k}")).collect()
}

/// Steps after which a field snapshot is taken; always includes 0 and the last.
fn snapshot_steps(cfg: &ScenarioConfig) -> Vec<usize> {
    let every = cfg.run.snapshot_every;
    let mut steps: Vec<usize> = if every == 0 { vec![0] } else { (0..=cfg.run.steps).step_by(every).collect() };
    if steps.last() != Some(&cfg.run.steps) {
        steps.push(cfg.run.steps);
    }
    steps
}

fn field_dump(
    cfg: &ScenarioConfig,
    grid: &EnergyGrid,
    index: usize,
    w0: f64,
    names: &[String],
    values: impl Fn(usize) -> Vec<f64>,
) -> OutputFile {
    let mut comments = header(cfg);
    comments.push(format!("snapshot {index} at w0 = {w0:.16e}"));
    let mut columns = axis_names("w", grid.dims());
    columns.extend(names.iter().cloned());
    let mut csv = Csv::new(&comments, &columns);
    for j in 0..grid.len() {
        let mut row: Vec<f64> = grid.site(j)[..grid.dims()].to_vec();
        row.extend(values(j));
        csv.row(&row);
    }
    csv.finish(&format!("field_{index}.csv"))
}

#[derive(Serialize)]
struct EvolutionSummary {
    schema: &'static str,
    schema_version: u32,
    scenario: String,
    steps: usize,
    w0_initial: f64,
    w0_final: f64,
    norm_initial: f64,
    norm_final: f64,
    max_relative_norm_drift: f64,
    snapshots: usize,
}

fn initial_gaussian(cfg: &ScenarioConfig, grid: &EnergyGrid) -> Result<EventField, SimError> {
    let i = &cfg.initial;
    Ok(sample_field(
        grid,
        &FieldDescriptor::Gaussian {
            center: i.center.clone(),
            width: i.width,
            amplitude: i.amplitude,
            carrier: i.carrier.clone(),
        },
    )?)
}

fn schrodinger(cfg: &ScenarioConfig) -> Result<Vec<OutputFile>, SimError> {
    let grid = grid(cfg)?;
    let spec = scalar_spec(cfg)?;
    let mut field = initial_gaussian(cfg, &grid)?;
    let snapshots = snapshot_steps(cfg);
    let n0 = field.norm_squared();
    let mut traj = Csv::new(&header(cfg), &["w0".into(), "norm".into()]);
    let mut files = Vec::new();
    let mut drift = 0.0f64;
    for step in 0..=cfg.run.steps {
        if step > 0 {
            field = evolve_dual_schrodinger(&field, &spec, cfg.run.dw0, 1)?;
        }
        let n = field.norm_squared();
        drift = drift.max((n - n0).abs() / n0);
        traj.row(&[field.w0, n.sqrt()]);
        if let Ok(k) = snapshots.binary_search(&step) {
            let a = &field.amplitudes;
            files.push(field_dump(cfg, &grid, k, field.w0, &["re".into(), "im".into()], |j| vec![a[j].re, a[j].im]));
        }
    }
    let summary = EvolutionSummary {
        schema: "proptime-sim/evolution_summary",
        schema_version: SCHEMA_VERSION,
        scenario: cfg.scenario.to_string(),
        steps: cfg.run.steps,
        w0_initial: 0.0,
        w0_final: field.w0,
        norm_initial: n0.sqrt(),
        norm_final: field.norm(),
        max_relative_norm_drift: drift,
        snapshots: snapshots.len(),
    };
    files.insert(0, traj.finish("trajectory.csv"));
    files.push(OutputFile::json("summary.json", &summary));
    Ok(files)
}

fn dirac(cfg: &ScenarioConfig) -> Result<Vec<OutputFile>, SimError> {
    let grid = grid(cfg)?;
    let spec = with_potential(TimeFunctionSpec::dirac(cfg.physics.tau)?, cfg);
    let rep = DiracRep::for_spatial_dims(grid.dims())?;
    let mut spinor = vec![Complex64::new(0.0, 0.0); rep.spinor_dim()];
    spinor[0] = Complex64::new(1.0, 0.0);
    let mut psi = SpinorEventField::from_profile(&initial_gaussian(cfg, &grid)?, &spinor)?;
    let snapshots = snapshot_steps(cfg);
    let n0 = psi.norm_squared();
    let mut traj = Csv::new(&header(cfg), &["w0".into(), "norm".into()]);
    let names: Vec<String> = (0..rep.spinor_dim()).flat_map(|c| [format!("re_{c}"), format!("im_{c}")]).collect();
    let mut files = Vec::new();
    let mut drift = 0.0f64;
    for step in 0..=cfg.run.steps {
        if step > 0 {
            psi = evolve_dual_dirac(&psi, &spec, cfg.run.dw0, 1)?;
        }
        let n = psi.norm_squared();
        drift = drift.max((n - n0).abs() / n0);
        traj.row(&[psi.w0, n.sqrt()]);
        if let Ok(k) = snapshots.binary_search(&step) {
            let comps = &psi.components;
            files.push(field_dump(cfg, &grid, k, psi.w0, &names, |j| {
                comps.iter().flat_map(|c| [c[j].re, c[j].im]).collect()
            }));
        }
    }
    let summary = EvolutionSummary {
        schema: "proptime-sim/evolution_summary",
        schema_version: SCHEMA_VERSION,
        scenario: cfg.scenario.to_string(),
        steps: cfg.run.steps,
        w0_initial: 0.0,
        w0_final: psi.w0,
        norm_initial: n0.sqrt(),
        norm_final: psi.norm(),
        max_relative_norm_drift: drift,
        snapshots: snapshots.len(),
    };
    files.insert(0, traj.finish("trajectory.csv"));
    files.push(OutputFile::json("summary.json", &summary));
    Ok(files)
}

/// Sum of a few seeded Gaussian bumps, real-valued and well inside the box.
pub fn random_smooth_field(grid: &EnergyGrid, width: f64, rng: &mut ChaCha8Rng) -> EventField {
    let reach = grid.box_length() / 4.0;
    let bumps: Vec<(Vec<f64>, f64, f64)> = (0..4)
        .map(|_| {
            let center = (0..grid.dims()).map(|_| rng.gen_range(-reach..reach)).collect();
            (center, width * rng.gen_range(0.5..1.5), rng.gen_range(-1.0..1.0))
        })
        .collect();
    EventField::from_fn(*grid, |w| {
        let v: f64 = bumps
            .iter()
            .map(|(c, s, a)| {
                let r2: f64 = w.iter().zip(c).map(|(x, c)| (x - c) * (x - c)).sum();
                a * (-r2 / (2.0 * s * s)).exp()
            })
            .sum();
        Complex64::new(v, 0.0)
    })
}

#[derive(Serialize)]
struct KgSummary {
    schema: &'static str,
    schema_version: u32,
    scenario: String,
    steps: usize,
    w0_final: f64,
    t_initial: f64,
    t_final: f64,
    y_initial: Vec<f64>,
    y_final: Vec<f64>,
    max_relative_t_drift: f64,
    max_relative_y_drift: f64,
    snapshots: usize,
}

fn kg(cfg: &ScenarioConfig) -> Result<Vec<OutputFile>, SimError> {
    let grid = grid(cfg)?;
    let tau = cfg.physics.tau;
    let spec = TimeFunctionSpec::free_kg(tau)?;
    let (phi, pi) = match cfg.initial.kind.as_str() {
        "random" => {
            let mut rng = ChaCha8Rng::seed_from_u64(u64::from(cfg.initial.seed));
            let phi = random_smooth_field(&grid, cfg.initial.width, &mut rng);
            (phi, random_smooth_field(&grid, cfg.initial.width, &mut rng))
        }
        _ => (initial_gaussian(cfg, &grid)?.map(|a| Complex64::new(a.re, 0.0)), EventField::zeros(grid)),
    };
    let mut state = KgState::new(phi, pi)?;
    let q0 = kg_charges(&state, tau)?;
    let snapshots = snapshot_steps(cfg);
    let mut columns = vec!["w0".to_string(), "T".to_string()];
    columns.extend(axis_names("Y", grid.dims()));
    let mut traj = Csv::new(&header(cfg), &columns);
    let mut files = Vec::new();
    let (mut t_drift, mut y_drift) = (0.0f64, 0.0f64);
    let mut q = q0.clone();
    for step in 0..=cfg.run.steps {
        if step > 0 {
            state = evolve_dual_kg(&state, &spec, cfg.run.dw0, 1)?;
            q = kg_charges(&state, tau)?;
        }
        t_drift = t_drift.max((q.t - q0.t).abs() / q0.t.abs());
        // Y can vanish, so measure its drift against T
        y_drift = y_drift.max(q.y.iter().zip(&q0.y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / q0.t.abs());
        let mut row = vec![state.w0, q.t];
        row.extend(&q.y);
        traj.row(&row);
        if let Ok(k) = snapshots.binary_search(&step) {
            let (f, p) = (&state.phi.amplitudes, &state.phi_prime.amplitudes);
            files.push(field_dump(cfg, &grid, k, state.w0, &["phi".into(), "pi".into()], |j| vec![f[j].re, p[j].re]));
        }
    }
    let summary = KgSummary {
        schema: "proptime-sim/kg_summary",
        schema_version: SCHEMA_VERSION,
        scenario: cfg.scenario.to_string(),
        steps: cfg.run.steps,
        w0_final: state.w0,
        t_initial: q0.t,
        t_final: q.t,
        y_initial: q0.y.clone(),
        y_final: q.y.clone(),
        max_relative_t_drift: t_drift,
        max_relative_y_drift: y_drift,
        snapshots: snapshots.len(),
    };
    files.insert(0, traj.finish("trajectory.csv"));
    files.push(OutputFile::json("summary.json", &summary));
    Ok(files)
}

#[derive(Serialize)]
struct ClassicalSummary {
    schema: &'static str,
    schema_version: u32,
    steps: usize,
    dm_v: f64,
    t_initial: f64,
    max_relative_t_drift: f64,
    end_y: Vec<f64>,
    end_w: Vec<f64>,
    reference_y: Vec<f64>,
    reference_w: Vec<f64>,
    endpoint_error: f64,
}

fn classical(cfg: &ScenarioConfig) -> Result<Vec<OutputFile>, SimError> {
    let spec = scalar_spec(cfg)?;
    let d = cfg.classical.y.len();
    let start = DualPhasePoint::new(cfg.classical.y.clone(), cfg.classical.w.clone(), 0.0)?;
    let traj = integrate_dual_hamilton(&start, &spec, cfg.run.dm_v, cfg.run.steps)?;
    let t0 = time_function_eval(&spec, &start.y, &start.w)?;
    let mut columns = vec!["m_v".to_string()];
    columns.extend(axis_names("y", d));
    columns.extend(axis_names("w", d));
    columns.push("T".into());
    let mut csv = Csv::new(&header(cfg), &columns);
    let every = cfg.run.snapshot_every.max(1);
    let mut drift = 0.0f64;
    for (n, p) in traj.iter().enumerate() {
        let t = time_function_eval(&spec, &p.y, &p.w)?;
        drift = drift.max((t - t0).abs() / t0.abs().max(f64::MIN_POSITIVE));
        if n % every == 0 || n == cfg.run.steps {
            let mut row = vec![p.m_v];
            row.extend(&p.y);
            row.extend(&p.w);
            row.push(t);
            csv.row(&row);
        }
    }
    let end = traj.last().expect("trajectory includes the start");
    let reference = integrate_reference(&start, &spec, end.m_v, cfg.classical.reference_tolerance)?;
    let endpoint_error = end
        .y
        .iter()
        .chain(&end.w)
        .zip(reference.y.iter().chain(&reference.w))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let summary = ClassicalSummary {
        schema: "proptime-sim/classical_summary",
        schema_version: SCHEMA_VERSION,
        steps: cfg.run.steps,
        dm_v: cfg.run.dm_v,
        t_initial: t0,
        max_relative_t_drift: drift,
        end_y: end.y.clone(),
        end_w: end.w.clone(),
        reference_y: reference.y,
        reference_w: reference.w,
        endpoint_error,
    };
    Ok(vec![csv.finish("trajectory.csv"), OutputFile::json("summary.json", &summary)])
}

#[derive(Serialize)]
struct ModeEntry {
    index: Vec<i64>,
    y: Vec<f64>,
    y0: f64,
}

#[derive(Serialize)]
struct CommutatorEntry {
    site_a: usize,
    site_b: usize,
    expected_imag: f64,
    phi_pi: f64,
    phi_phi: f64,
    pi_pi: f64,
}

#[derive(Serialize)]
struct Spectrum {
    schema: &'static str,
    schema_version: u32,
    tau: f64,
    n_max: u32,
    dimension: usize,
    modes: Vec<ModeEntry>,
    t_eigenvalues: Vec<f64>,
    vacuum_t: f64,
    zero_point_mode_sum: f64,
    y_eigenvalues: Vec<Vec<f64>>,
    full_mode_set: bool,
    commutators: Vec<CommutatorEntry>,
}

fn fock(cfg: &ScenarioConfig) -> Result<Vec<OutputFile>, SimError> {
    let grid = grid(cfg)?;
    let q = &cfg.quantization;
    let set = build_mode_set(&grid, cfg.physics.tau, q.cutoff)?;
    let fock = build_fock_space_with_limit(&set, q.n_max, q.dimension_limit)?;
    let charges = charge_operators(&fock);
    let sorted = |m: &proptime_core::sparse::SparseMatrix| {
        let mut v: Vec<f64> = m.diagonal().iter().map(|c| c.re).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let vacuum = fock.basis_index(&vec![0; set.len()]);
    let zero_point: f64 = set
        .modes
        .iter()
        .map(|m| {
            0.5 * (m.index.iter().map(|&n| grid.interval(n).powi(2)).sum::<f64>() + cfg.physics.tau.powi(2)).sqrt()
        })
        .sum();
    let commutators = if set.is_full() {
        (0..grid.len())
            .map(|b| {
                let r = field_commutator_check(&fock, (0, b), 0.0)?;
                Ok(CommutatorEntry {
                    site_a: 0,
                    site_b: b,
                    expected_imag: r.expected.im,
                    phi_pi: r.phi_pi,
                    phi_phi: r.phi_phi,
                    pi_pi: r.pi_pi,
                })
            })
            .collect::<Result<Vec<_>, SimError>>()?
    } else {
        Vec::new()
    };
    let spectrum = Spectrum {
        schema: "proptime-sim/spectrum",
        schema_version: SCHEMA_VERSION,
        tau: cfg.physics.tau,
        n_max: q.n_max,
        dimension: fock.dimension,
        modes: set.modes.iter().map(|m| ModeEntry { index: m.index.clone(), y: m.y.clone(), y0: m.y0 }).collect(),
        t_eigenvalues: sorted(&charges.t_op),
        vacuum_t: charges.t_op.get(vacuum, vacuum).re,
        zero_point_mode_sum: zero_point,
        y_eigenvalues: charges.y_ops.iter().map(sorted).collect(),
        full_mode_set: set.is_full(),
        commutators,
    };
    let mut columns = vec!["state".to_string()];
    columns.extend((1..=set.len()).map(|k| format!("n_{k}")));
    columns.push("T".into());
    columns.extend(axis_names("Y", grid.dims()));
    let mut csv = Csv::new(&header(cfg), &columns);
    let t = charges.t_op.diagonal();
    let ys: Vec<Vec<Complex64>> = charges.y_ops.iter().map(|m| m.diagonal()).collect();
    for s in 0..fock.dimension {
        let labels: Vec<String> =
            std::iter::once(s).chain(fock.occupations(s).iter().map(|&n| n as usize)).map(|v| v.to_string()).collect();
        let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
        let mut row = vec![t[s].re];
        row.extend(ys.iter().map(|y| y[s].re));
        csv.mixed_row(&labels, &row);
    }
    Ok(vec![OutputFile::json("spectrum.json", &spectrum), csv.finish("spectrum.csv")])
}

#[derive(Serialize)]
struct RelationEntry {
    sector: &'static str,
    relation: String,
    residual: f64,
}

#[derive(Serialize)]
struct SectorMax {
    sector: &'static str,
    max_residual: f64,
}

#[derive(Serialize)]
struct Residuals {
    schema: &'static str,
    schema_version: u32,
    dims: usize,
    spin: String,
    relations: Vec<RelationEntry>,
    sectors: Vec<SectorMax>,
}

fn sector_name(s: Sector) -> &'static str {
    match s {
        Sector::Grid => "grid",
        Sector::Spin => "spin",
        Sector::DualPolynomial => "dual_polynomial",
        Sector::PositionPolynomial => "position_polynomial",
    }
}

fn algebra(cfg: &ScenarioConfig) -> Result<Vec<OutputFile>, SimError> {
    let grid = grid(cfg)?;
    let spin = match cfg.algebra.spin.as_str() {
        "dirac" => SpinRep::Dirac(DiracRep::four_component()),
        _ => SpinRep::Scalar,
    };
    let center = &cfg.initial.center;
    let shifted: Vec<f64> =
        center.iter().enumerate().map(|(k, c)| c + 0.3 * if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let tests = [
        sample_field(&grid, &FieldDescriptor::gaussian(center, cfg.algebra.width))?,
        sample_field(&grid, &FieldDescriptor::gaussian(&shifted, 0.9 * cfg.algebra.width))?,
    ];
    let rows = lie_algebra_check(&grid, &spin, &tests)?;
    let mut sectors: Vec<SectorMax> = Vec::new();
    for r in &rows {
        let name = sector_name(r.sector);
        match sectors.iter_mut().find(|s| s.sector == name) {
            Some(s) => s.max_residual = s.max_residual.max(r.residual),
            None => sectors.push(SectorMax { sector: name, max_residual: r.residual }),
        }
    }
    let mut csv = Csv::new(&header(cfg), &["sector".into(), "relation".into(), "residual".into()]);
    for r in &rows {
        csv.mixed_row(&[sector_name(r.sector), &format!("\"{}\"", r.relation)], &[r.residual]);
    }
    let residuals = Residuals {
        schema: "proptime-sim/residuals",
        schema_version: SCHEMA_VERSION,
        dims: grid.dims(),
        spin: cfg.algebra.spin.clone(),
        relations: rows
            .iter()
            .map(|r| RelationEntry {
                sector: sector_name(r.sector),
                relation: r.relation.clone(),
                residual: r.residual,
            })
            .collect(),
        sectors,
    };
    Ok(vec![OutputFile::json("residuals.json", &residuals), csv.finish("residuals.csv")])
}

#[derive(Serialize)]
struct ConvergenceEntry {
    n: usize,
    real: f64,
    imag: f64,
    abs_error_vs_oracle: f64,
}

#[derive(Serialize)]
struct Convergence {
    schema: &'static str,
    schema_version: u32,
    tau: f64,
    w_start: f64,
    w_end: f64,
    w0_interval: f64,
    oracle_real: f64,
    oracle_imag: f64,
    rows: Vec<ConvergenceEntry>,
    relative_error_last: f64,
    monotone: bool,
}

pub fn path_integral_config(cfg: &ScenarioConfig) -> PathIntegralConfig {
    let p = &cfg.propagator;
    PathIntegralConfig {
        tau: cfg.physics.tau,
        w_start: p.w_start,
        w_end: p.w_end,
        w0_interval: p.w0_interval,
        n_slices: p.ladder[0],
        points: cfg.grid.n,
        box_length: cfg.grid.box_length,
        time_potential: potential(cfg),
    }
}

fn propagator(cfg: &ScenarioConfig) -> Result<Vec<OutputFile>, SimError> {
    let pic = path_integral_config(cfg);
    let (oracle, rows) = convergence_table(&pic, &cfg.propagator.ladder)?;
    let mut comments = header(cfg);
    comments.push(format!(
        "w_start = {}, w_end = {}, w0_interval = {}, lattice {} points over {}",
        pic.w_start, pic.w_end, pic.w0_interval, pic.points, pic.box_length
    ));
    comments.push(format!("oracle = {:.16e} {:+.16e}i", oracle.re, oracle.im));
    let columns: Vec<String> = ["N", "real", "imag", "abs_error_vs_oracle"].iter().map(|s| s.to_string()).collect();
    let mut csv = Csv::new(&comments, &columns);
    for r in &rows {
        csv.mixed_row(&[&r.n_slices.to_string()], &[r.amplitude.re, r.amplitude.im, r.abs_error]);
    }
    let summary = Convergence {
        schema: "proptime-sim/convergence",
        schema_version: SCHEMA_VERSION,
        tau: pic.tau,
        w_start: pic.w_start,
        w_end: pic.w_end,
        w0_interval: pic.w0_interval,
        oracle_real: oracle.re,
        oracle_imag: oracle.im,
        relative_error_last: rows.last().map_or(0.0, |r| r.abs_error / oracle.norm()),
        monotone: rows.windows(2).all(|w| w[1].abs_error <= w[0].abs_error),
        rows: rows
            .iter()
            .map(|r| ConvergenceEntry {
                n: r.n_slices,
                real: r.amplitude.re,
                imag: r.amplitude.im,
                abs_error_vs_oracle: r.abs_error,
            })
            .collect(),
    };
    Ok(vec![csv.finish("convergence.csv"), OutputFile::json("convergence.json", &summary)])
}

#[derive(Serialize)]
struct HjPair {
    h: f64,
    r1: f64,
    r2: f64,
    r1_flipped: f64,
    r2_flipped: f64,
}

impl HjPair {
    fn new(h: f64, r: HjResiduals) -> Self {
        HjPair { h, r1: r.r1, r2: r.r2, r1_flipped: r.r1_flipped, r2_flipped: r.r2_flipped }
    }
}

#[derive(Serialize)]
struct HjReport {
    schema: &'static str,
    schema_version: u32,
    system: String,
    mass: f64,
    omega: Option<f64>,
    q: f64,
    t: f64,
    energy: f64,
    residuals: HjPair,
    order_coarse: HjPair,
    order_fine: HjPair,
    order_ratio: f64,
    /// which overall sign of T = -dA/dH makes both residuals small
    consistent_sign: &'static str,
}

fn hj(cfg: &ScenarioConfig) -> Result<Vec<OutputFile>, SimError> {
    let c = &cfg.hj;
    let free = FreeParticle { mass: c.mass };
    let osc = HarmonicOscillator { mass: c.mass, omega: c.omega };
    let sys: &dyn HjSystem = if c.system == "oscillator" { &osc } else { &free };
    let at = |h: f64| verify_hamilton_jacobi_duality(sys, c.q, c.t, c.energy, h);
    let main = at(c.h)?;
    let coarse = at(c.order_h)?;
    let fine = at(0.5 * c.order_h)?;
    let ratio = (coarse.r1 + coarse.r2) / (fine.r1 + fine.r2);
    let stated = main.r1.max(main.r2);
    let flipped = main.r1_flipped.max(main.r2_flipped);
    let report = HjReport {
        schema: "proptime-sim/hj",
        schema_version: SCHEMA_VERSION,
        system: c.system.clone(),
        mass: c.mass,
        omega: (c.system == "oscillator").then_some(c.omega),
        q: c.q,
        t: c.t,
        energy: c.energy,
        residuals: HjPair::new(c.h, main),
        order_coarse: HjPair::new(c.order_h, coarse),
        order_fine: HjPair::new(0.5 * c.order_h, fine),
        order_ratio: ratio,
        consistent_sign: if stated <= flipped { "minus" } else { "plus" },
    };
    let mut csv =
        Csv::new(&header(cfg), &["h".into(), "r1".into(), "r2".into(), "r1_flipped".into(), "r2_flipped".into()]);
    for (h, r) in [(c.h, main), (c.order_h, coarse), (0.5 * c.order_h, fine)] {
        csv.row(&[h, r.r1, r.r2, r.r1_flipped, r.r2_flipped]);
    }
    Ok(vec![OutputFile::json("hj.json", &report), csv.finish("hj.csv")])
}
