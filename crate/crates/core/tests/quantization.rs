use core::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use proptest::prelude::*;

use proptime_core::grid::EnergyGrid;
use proptime_core::quantization::*;
use proptime_core::sparse::SparseMatrix;
use proptime_core::Error;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn eigenvalues(m: &SparseMatrix) -> Vec<f64> {
    let n = m.dim();
    let dense = DMatrix::from_fn(n, n, |i, j| m.get(i, j));
    let mut e: Vec<f64> = SymmetricEigen::new(dense).eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

#[test]
fn single_mode_spectrum_from_ladders() {
    let grid = EnergyGrid::new(1, 8, 2.0 * PI).unwrap();
    let fock = build_fock_space(&build_mode_set(&grid, 1.0, 0).unwrap(), 3).unwrap();
    let y0 = fock.modes.modes[0].y0;
    let number = fock.adag_ops[0].matmul(&fock.a_ops[0]);
    let t = number.combine(c(y0), &SparseMatrix::identity(fock.dimension), c(0.5 * y0));
    for (got, want) in eigenvalues(&t).iter().zip([0.5, 1.5, 2.5, 3.5]) {
        assert!((got - want).abs() < 1e-12);
    }
    for (got, want) in eigenvalues(&charge_operators(&fock).t_op).iter().zip([0.5, 1.5, 2.5, 3.5]) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn three_mode_vacuum() {
    let grid = EnergyGrid::new(1, 8, 2.0 * PI).unwrap();
    let set = build_mode_set(&grid, 1.0, 1).unwrap();
    let fock = build_fock_space(&set, 2).unwrap();
    let t = charge_operators(&fock).t_op;
    let vacuum = fock.basis_index(&[0, 0, 0]);
    let direct: f64 = [-1.0f64, 0.0, 1.0].iter().map(|y| 0.5 * (y * y + 1.0).sqrt()).sum();
    assert!((t.get(vacuum, vacuum).re - direct).abs() < 1e-12);
    assert!((direct - (0.5 + 2.0f64.sqrt())).abs() < 1e-12);
}

#[test]
fn charges_commute_with_ladders_as_expected() {
    let grid = EnergyGrid::new(1, 8, 5.0).unwrap();
    let fock = build_fock_space(&build_mode_set(&grid, 0.7, 1).unwrap(), 2).unwrap();
    let q = charge_operators(&fock);
    let mask = fock.sub_cutoff();
    for (k, mode) in fock.modes.modes.iter().enumerate() {
        let lhs = q.t_op.commutator(&fock.a_ops[k]);
        let r = lhs.combine(c(1.0), &fock.a_ops[k], c(mode.y0));
        assert!(r.max_abs_in_columns(&mask) < 1e-12);
        let lhs = q.y_ops[0].commutator(&fock.adag_ops[k]);
        let r = lhs.combine(c(1.0), &fock.adag_ops[k], c(-mode.y[0]));
        assert!(r.max_abs_in_columns(&mask) < 1e-12);
    }
}

#[test]
fn interval_charge_on_paired_modes() {
    let grid = EnergyGrid::new(1, 4, 3.0).unwrap();
    let set = build_mode_set(&grid, 1.0, 1).unwrap();
    let fock = build_fock_space(&set, 3).unwrap();
    let y = &charge_operators(&fock).y_ops[0];
    assert!(y.is_diagonal());
    let k = grid.interval(1);
    for n_minus in 0..=3u32 {
        for n_plus in 0..=3u32 {
            let s = fock.basis_index(&[n_minus, 1, n_plus]);
            assert!((y.get(s, s).re - k * (n_plus as f64 - n_minus as f64)).abs() < 1e-12);
        }
    }
}

#[test]
fn equal_time_commutators_full_lattice() {
    let grid = EnergyGrid::new(1, 4, 3.0).unwrap();
    let set = build_mode_set(&grid, 1.0, 2).unwrap();
    assert!(set.is_full());
    let fock = build_fock_space(&set, 2).unwrap();
    for w0 in [0.0, 0.9] {
        for a in 0..4 {
            for b in 0..4 {
                let r = field_commutator_check(&fock, (a, b), w0).unwrap();
                assert!(r.phi_pi < 1e-12 && r.phi_phi < 1e-12 && r.pi_pi < 1e-12, "{a} {b} {r:?}");
                let want = if a == b { 1.0 / grid.spacing() } else { 0.0 };
                assert_eq!(r.expected, Complex64::new(0.0, want));
                assert_eq!(r.subspace_states, 16);
            }
        }
    }
}

#[test]
fn commutator_matches_c_number_mode_sum() {
    // on truncated states [phi(a), pi(b)] is i/V sum_y cos(y (w_a - w_b)) restricted to the kept modes
    let grid = EnergyGrid::new(1, 8, 4.0).unwrap();
    let set = build_mode_set(&grid, 1.0, 2).unwrap();
    let fock = build_fock_space(&set, 1).unwrap();
    let mask = fock.sub_cutoff();
    for (a, b) in [(0, 0), (1, 3), (2, 7)] {
        let (phi, _) = field_operators(&fock, a, 0.4).unwrap();
        let (_, pi) = field_operators(&fock, b, 0.4).unwrap();
        let (wa, wb) = (grid.site(a)[0], grid.site(b)[0]);
        let sum: f64 = set.modes.iter().map(|m| (m.y[0] * (wa - wb)).cos()).sum::<f64>() / set.volume;
        let r = phi.commutator(&pi).combine(c(1.0), &SparseMatrix::identity(fock.dimension), Complex64::new(0.0, -sum));
        assert!(r.max_abs_in_columns(&mask) < 1e-12);
    }
    assert_eq!(field_commutator_check(&fock, (0, 0), 0.0), Err(Error::PartialModeSet));
}

#[test]
fn two_dimensional_full_lattice() {
    let grid = EnergyGrid::new(2, 2, 2.0).unwrap();
    let fock = build_fock_space(&build_mode_set(&grid, 1.0, 1).unwrap(), 2).unwrap();
    let r = field_commutator_check(&fock, (1, 1), 0.0).unwrap();
    assert!(r.phi_pi < 1e-12 && r.phi_phi < 1e-12);
    assert!((r.expected.im - 1.0).abs() < 1e-15);
}

#[test]
fn oversized_spaces_are_refused() {
    let grid = EnergyGrid::new(2, 8, 2.0).unwrap();
    let set = build_mode_set(&grid, 1.0, 4).unwrap();
    assert!(matches!(build_fock_space(&set, 3), Err(Error::DimensionLimit { .. })));
    assert!(build_fock_space(&build_mode_set(&grid, 1.0, 1).unwrap(), 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn ladder_pairs_are_canonical_below_cutoff(n_max in 1u32..4, tau in 0.1f64..3.0) {
        let grid = EnergyGrid::new(1, 4, 2.0).unwrap();
        let fock = build_fock_space(&build_mode_set(&grid, tau, 1).unwrap(), n_max).unwrap();
        let mask = fock.sub_cutoff();
        let id = SparseMatrix::identity(fock.dimension);
        for k in 0..fock.modes.len() {
            for l in 0..fock.modes.len() {
                let comm = fock.a_ops[k].commutator(&fock.adag_ops[l]);
                let want = if k == l { c(1.0) } else { c(0.0) };
                prop_assert!(comm.combine(c(1.0), &id, -want).max_abs_in_columns(&mask) < 1e-12);
                prop_assert!(fock.a_ops[k].commutator(&fock.a_ops[l]).max_abs() < 1e-12);
            }
        }
        let t = charge_operators(&fock).t_op;
        prop_assert!(t.combine(c(1.0), &t.adjoint(), c(-1.0)).max_abs() == 0.0);
    }
}
