use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use proptime_core::dirac::DiracRep;
use proptime_core::evolution::*;
use proptime_core::grid::{sample_field, EnergyGrid, EventField, FieldDescriptor, SpinorEventField};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn gaussian(grid: &EnergyGrid, center: &[f64], width: f64) -> EventField {
    sample_field(grid, &FieldDescriptor::gaussian(center, width)).unwrap()
}

fn relative_drift(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn free_gaussian_spreads_in_closed_form() {
    let (sigma, tau, s) = (1.0, 2.0, 1.5);
    let grid = EnergyGrid::new(1, 256, 40.0).unwrap();
    let f = gaussian(&grid, &[0.0], sigma);
    let out = evolve_dual_schrodinger(&f, &TimeFunctionSpec::nonrelativistic(tau).unwrap(), s, 1).unwrap();
    let sc2 = Complex64::new(sigma * sigma, -s / tau);
    let expected =
        EventField::from_fn(grid, |w| (c(sigma * sigma) / sc2).sqrt() * (-c(w[0] * w[0]) / (2.0 * sc2)).exp());
    assert!(out.max_abs_diff(&expected) < 1e-12);
}

#[test]
fn two_dimensional_gaussian_factorizes() {
    let (sigma, tau, s) = (0.8, 1.0, 0.6);
    let grid = EnergyGrid::new(2, 128, 24.0).unwrap();
    let f = gaussian(&grid, &[0.0, 0.0], sigma);
    let out = evolve_dual_schrodinger(&f, &TimeFunctionSpec::nonrelativistic(tau).unwrap(), s / 3.0, 3).unwrap();
    let sc2 = Complex64::new(sigma * sigma, -s / tau);
    let expected =
        EventField::from_fn(grid, |w| c(sigma * sigma) / sc2 * (-c(w[0] * w[0] + w[1] * w[1]) / (2.0 * sc2)).exp());
    assert!(out.max_abs_diff(&expected) < 1e-12);
}

#[test]
fn norm_conserved_over_thousand_steps() {
    let grid = EnergyGrid::new(1, 64, 16.0).unwrap();
    let f = sample_field(
        &grid,
        &FieldDescriptor::Gaussian { center: vec![1.0], width: 1.0, amplitude: 1.0, carrier: vec![0.7] },
    )
    .unwrap();
    let n0 = f.norm_squared();
    for spec in [
        TimeFunctionSpec::nonrelativistic(1.0).unwrap(),
        TimeFunctionSpec::relativistic(1.0).unwrap(),
        TimeFunctionSpec::nonrelativistic(1.0).unwrap().with_potential(TimePotential::Quadratic { kappa: 0.3 }),
    ] {
        let mut g = f.clone();
        for _ in 0..1000 {
            g = evolve_dual_schrodinger(&g, &spec, 0.01, 1).unwrap();
        }
        assert!(relative_drift(g.norm_squared(), n0) < 1e-12, "{spec:?}");
        assert!((g.w0 - 10.0).abs() < 1e-9);
    }
}

#[test]
fn dirac_norm_conserved_over_thousand_steps() {
    let grid = EnergyGrid::new(1, 64, 16.0).unwrap();
    let g = gaussian(&grid, &[0.0], 1.2);
    let psi = SpinorEventField::from_profile(&g, &[c(0.6), Complex64::new(0.0, 0.8)]).unwrap();
    let n0 = psi.norm_squared();
    for spec in [
        TimeFunctionSpec::dirac(1.0).unwrap(),
        TimeFunctionSpec::dirac(1.0).unwrap().with_potential(TimePotential::Quadratic { kappa: 0.3 }),
    ] {
        let mut p = psi.clone();
        for _ in 0..1000 {
            p = evolve_dual_dirac(&p, &spec, 0.01, 1).unwrap();
        }
        assert!(relative_drift(p.norm_squared(), n0) < 1e-12);
    }
}

#[test]
fn evolution_is_reversible() {
    let grid = EnergyGrid::new(1, 64, 16.0).unwrap();
    let f = gaussian(&grid, &[0.5], 1.0);
    let spec = TimeFunctionSpec::relativistic(1.0).unwrap().with_potential(TimePotential::Quadratic { kappa: 0.1 });
    let there = evolve_dual_schrodinger(&f, &spec, 0.05, 40).unwrap();
    let back = evolve_dual_schrodinger(&there, &spec, -0.05, 40).unwrap();
    assert!(back.max_abs_diff(&f) < 1e-12);
    assert!(back.w0.abs() < 1e-14);
}

fn strang_error(dt: f64, reference: &EventField, f: &EventField, spec: &TimeFunctionSpec, total: f64) -> f64 {
    let steps = (total / dt).round() as usize;
    evolve_dual_schrodinger(f, spec, dt, steps).unwrap().max_abs_diff(reference)
}

#[test]
fn strang_splitting_is_second_order() {
    let grid = EnergyGrid::new(1, 128, 24.0).unwrap();
    let f = gaussian(&grid, &[1.0], 1.0);
    let spec = TimeFunctionSpec::nonrelativistic(1.0).unwrap().with_potential(TimePotential::Quadratic { kappa: 0.5 });
    let total = 0.8;
    let reference = evolve_dual_schrodinger(&f, &spec, total / 8192.0, 8192).unwrap();
    let e1 = strang_error(0.1, &reference, &f, &spec, total);
    let e2 = strang_error(0.05, &reference, &f, &spec, total);
    let e3 = strang_error(0.025, &reference, &f, &spec, total);
    assert!(e1 / e2 >= 3.8, "{e1} {e2}");
    assert!(e2 / e3 >= 3.8, "{e2} {e3}");
}

fn to_nalgebra(m: &proptime_core::matrix::CMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.dim(), m.dim(), |i, j| m[(i, j)])
}

#[test]
fn dirac_mode_eigenvalues_match_eigensolver() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for rep in [DiracRep::two_component(), DiracRep::four_component()] {
        let dims = if rep.spinor_dim() == 2 { 1 } else { 3 };
        for _ in 0..50 {
            let y: Vec<f64> = (0..dims).map(|_| rng.gen_range(-20.0..20.0)).collect();
            let tau = rng.gen_range(0.1..5.0);
            let m = dirac_mode_matrix(&rep, &y, tau);
            let e = (y.iter().map(|v| v * v).sum::<f64>() + tau * tau).sqrt();
            let mut eig: Vec<f64> = SymmetricEigen::new(to_nalgebra(&m)).eigenvalues.iter().copied().collect();
            eig.sort_by(f64::total_cmp);
            let half = eig.len() / 2;
            for (k, v) in eig.iter().enumerate() {
                let want = if k < half { -e } else { e };
                assert!((v - want).abs() < 1e-12 * e.max(1.0), "{v} vs {want}");
            }
        }
    }
}

#[test]
fn dirac_time_function_squares_to_shell() {
    let grid = EnergyGrid::new(3, 16, 10.0).unwrap();
    let g = gaussian(&grid, &[0.2, 0.0, -0.3], 1.0);
    let psi = SpinorEventField::from_profile(&g, &[c(1.0), c(0.0), Complex64::new(0.0, 0.5), c(-0.2)]).unwrap();
    assert!(dirac_squared_residual(&psi, 1.3).unwrap() < 1e-12);
}

#[test]
fn every_on_shell_plane_wave_solves_kg() {
    let grid = EnergyGrid::new(1, 32, 9.0).unwrap();
    let (lo, hi) = grid.mode_range();
    for m in lo..hi {
        assert!(kg_plane_wave_residual(&grid, &[m], 1.0, 0.37).unwrap() < 1e-12);
    }
    let grid = EnergyGrid::new(2, 8, 5.0).unwrap();
    for m in -4..4 {
        for n in -4..4 {
            assert!(kg_plane_wave_residual(&grid, &[m, n], 0.5, 2.0).unwrap() < 1e-12);
        }
    }
    assert!(kg_plane_wave_residual(&grid, &[4, 0], 0.5, 0.0).is_err());
}

fn random_smooth_real(grid: &EnergyGrid, rng: &mut ChaCha8Rng) -> EventField {
    let terms: Vec<(f64, f64, f64)> =
        (0..5).map(|_| (rng.gen_range(-3.0..3.0), rng.gen_range(0.5..1.5), rng.gen_range(-1.0..1.0))).collect();
    EventField::from_fn(*grid, |w| {
        c(terms.iter().map(|(x0, s, a)| a * (-(w[0] - x0) * (w[0] - x0) / (2.0 * s * s)).exp()).sum())
    })
}

#[test]
fn kg_charges_conserved_on_random_data() {
    let grid = EnergyGrid::new(1, 64, 20.0).unwrap();
    let spec = TimeFunctionSpec::free_kg(1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..4 {
        let mut state = KgState::new(random_smooth_real(&grid, &mut rng), random_smooth_real(&grid, &mut rng)).unwrap();
        let q0 = kg_charges(&state, 1.0).unwrap();
        for _ in 0..500 {
            state = evolve_dual_kg(&state, &spec, 0.02, 1).unwrap();
        }
        let q1 = kg_charges(&state, 1.0).unwrap();
        assert!(relative_drift(q1.t, q0.t) < 1e-10);
        assert!((q1.y[0] - q0.y[0]).abs() < 1e-10 * q0.t);
    }
}

#[test]
fn travelling_wave_carries_interval_charge() {
    let grid = EnergyGrid::new(1, 32, 8.0).unwrap();
    let (tau, k) = (1.0, grid.interval(2));
    let y0 = (k * k + tau * tau).sqrt();
    let phi = EventField::from_fn(grid, |w| c((k * w[0]).cos()));
    let pi = EventField::from_fn(grid, |w| c(y0 * (k * w[0]).sin()));
    let state = KgState::new(phi, pi).unwrap();
    let q = kg_charges(&state, tau).unwrap();
    assert!((q.y[0] - k * y0 * 4.0).abs() < 1e-10);
    assert!((q.t - 0.5 * (y0 * y0 + k * k + tau * tau) * 4.0).abs() < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn splitting_preserves_norm(kappa in 0.0f64..1.0, dw0 in -0.2f64..0.2, tau in 0.2f64..3.0, shift in -2.0f64..2.0) {
        let grid = EnergyGrid::new(1, 64, 16.0).unwrap();
        let f = gaussian(&grid, &[shift], 1.0);
        let spec = TimeFunctionSpec::nonrelativistic(tau).unwrap().with_potential(TimePotential::Quadratic { kappa });
        let g = evolve_dual_schrodinger(&f, &spec, dw0, 25).unwrap();
        prop_assert!(relative_drift(g.norm_squared(), f.norm_squared()) < 1e-12);
    }

    #[test]
    fn free_evolution_composes(a in -1.0f64..1.0, b in -1.0f64..1.0) {
        let grid = EnergyGrid::new(1, 64, 16.0).unwrap();
        let f = gaussian(&grid, &[0.0], 1.0);
        let spec = TimeFunctionSpec::relativistic(1.0).unwrap();
        let two = evolve_dual_schrodinger(&evolve_dual_schrodinger(&f, &spec, a, 1).unwrap(), &spec, b, 1).unwrap();
        let one = evolve_dual_schrodinger(&f, &spec, a + b, 1).unwrap();
        prop_assert!(two.max_abs_diff(&one) < 1e-12);
    }
}
