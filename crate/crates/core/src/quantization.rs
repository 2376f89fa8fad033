//! Canonical quantization of the real event field in a periodic box.
//!
//! The field is expanded over conjugate-lattice modes,
//! `phi(w) = sum_y (2 y0 V)^(-1/2) [a(y) e^{-i theta} + a(y)^+ e^{i theta}]`
//! with `theta = y0 w0 - y.w` and `y0 = sqrt(y^2 + tau^2)`. Occupations are
//! truncated at `n_max` per mode, so ladder commutators are exact only on
//! states with every occupation below the cutoff.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::EnergyGrid;
use crate::sparse::SparseMatrix;

pub const DEFAULT_DIMENSION_LIMIT: usize = 4096;
pub const DEFAULT_N_MAX: u32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Mode {
    /// conjugate-lattice indices per axis
    pub index: Vec<i64>,
    pub y: Vec<f64>,
    pub y0: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    pub grid: EnergyGrid,
    pub tau: f64,
    pub cutoff: usize,
    pub modes: Vec<Mode>,
    pub volume: f64,
}

impl ModeSet {
    /// Whether the set covers the whole conjugate lattice.
    pub fn is_full(&self) -> bool {
        self.cutoff == self.grid.points_per_axis() / 2
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }
}

/// All lattice modes with |n| <= cutoff on every axis, first axis slowest.
pub fn build_mode_set(grid: &EnergyGrid, tau: f64, cutoff: usize) -> Result<ModeSet> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::OutOfRange { name: "tau", value: tau, expected: "> 0" });
    }
    let max = grid.points_per_axis() / 2;
    if cutoff > max {
        return Err(Error::CutoffTooLarge { cutoff, max });
    }
    let (lo, hi) = grid.mode_range();
    let lo = lo.max(-(cutoff as i64));
    let hi = hi.min(cutoff as i64 + 1);
    let per_axis = (hi - lo) as usize;
    let count = per_axis.pow(grid.dims() as u32);
    let modes = (0..count)
        .map(|mut flat| {
            let mut index = vec![0i64; grid.dims()];
            for slot in index.iter_mut().rev() {
                *slot = lo + (flat % per_axis) as i64;
                flat /= per_axis;
            }
            let y: Vec<f64> = index.iter().map(|&n| grid.interval(n)).collect();
            let y0 = (y.iter().map(|v| v * v).sum::<f64>() + tau * tau).sqrt();
            Mode { index, y, y0 }
        })
        .collect();
    Ok(ModeSet { grid: *grid, tau, cutoff, modes, volume: grid.volume() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockSpace {
    pub modes: ModeSet,
    pub n_max: u32,
    pub dimension: usize,
    pub a_ops: Vec<SparseMatrix>,
    pub adag_ops: Vec<SparseMatrix>,
}

impl FockSpace {
    fn stride(&self, mode: usize) -> usize {
        (self.n_max as usize + 1).pow((self.modes.len() - 1 - mode) as u32)
    }

    /// Occupation numbers of a basis state (first mode most significant).
    pub fn occupations(&self, mut state: usize) -> Vec<u32> {
        let base = self.n_max as usize + 1;
        let mut occ = vec![0u32; self.modes.len()];
        for slot in occ.iter_mut().rev() {
            *slot = (state % base) as u32;
            state /= base;
        }
        occ
    }

    pub fn basis_index(&self, occupations: &[u32]) -> usize {
        occupations.iter().fold(0, |acc, &n| acc * (self.n_max as usize + 1) + n as usize)
    }

    /// a^+ a for one mode.
    pub fn number_op(&self, mode: usize) -> SparseMatrix {
        let n: Vec<Complex64> =
            (0..self.dimension).map(|s| Complex64::new(self.occupations(s)[mode] as f64, 0.0)).collect();
        SparseMatrix::from_diagonal(&n)
    }

    /// Mask of basis states with every occupation below n_max.
    pub fn sub_cutoff(&self) -> Vec<bool> {
        (0..self.dimension).map(|s| self.occupations(s).iter().all(|&n| n < self.n_max)).collect()
    }
}

pub fn build_fock_space(modes: &ModeSet, n_max: u32) -> Result<FockSpace> {
    build_fock_space_with_limit(modes, n_max, DEFAULT_DIMENSION_LIMIT)
}

pub fn build_fock_space_with_limit(modes: &ModeSet, n_max: u32, limit: usize) -> Result<FockSpace> {
    if n_max < 1 {
        return Err(Error::OutOfRange { name: "n_max", value: n_max as f64, expected: ">= 1" });
    }
    let dimension = (n_max as u128 + 1).checked_pow(modes.len() as u32).unwrap_or(u128::MAX);
    if dimension > limit as u128 {
        return Err(Error::DimensionLimit { dimension, limit });
    }
    let dimension = dimension as usize;
    let mut fock = FockSpace { modes: modes.clone(), n_max, dimension, a_ops: Vec::new(), adag_ops: Vec::new() };
    for k in 0..modes.len() {
        let stride = fock.stride(k);
        let a = SparseMatrix::from_triplets(
            dimension,
            (0..dimension).filter_map(|s| {
                let n = fock.occupations(s)[k];
                (n > 0).then(|| (s - stride, s, Complex64::new((n as f64).sqrt(), 0.0)))
            }),
        );
        fock.adag_ops.push(a.adjoint());
        fock.a_ops.push(a);
    }
    Ok(fock)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChargeOps {
    /// sum_y y0 (N_y + 1/2)
    pub t_op: SparseMatrix,
    /// sum_y y^k N_y per axis
    pub y_ops: Vec<SparseMatrix>,
}

pub fn charge_operators(fock: &FockSpace) -> ChargeOps {
    let modes = &fock.modes.modes;
    let dims = fock.modes.grid.dims();
    let mut t = vec![0.0; fock.dimension];
    let mut y = vec![vec![0.0; fock.dimension]; dims];
    let zero_point = vacuum_zero_point(&fock.modes);
    for (s, slot) in t.iter_mut().enumerate() {
        let occ = fock.occupations(s);
        *slot = zero_point + modes.iter().zip(&occ).map(|(m, &n)| m.y0 * n as f64).sum::<f64>();
        for (k, yk) in y.iter_mut().enumerate() {
            yk[s] = modes.iter().zip(&occ).map(|(m, &n)| m.y[k] * n as f64).sum();
        }
    }
    let diag = |v: &[f64]| SparseMatrix::from_diagonal(&v.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>());
    ChargeOps { t_op: diag(&t), y_ops: y.iter().map(|v| diag(v)).collect() }
}

/// Vacuum expectation of T, half the sum of y0 over the modes.
pub fn vacuum_zero_point(modes: &ModeSet) -> f64 {
    0.5 * modes.modes.iter().map(|m| m.y0).sum::<f64>()
}

/// phi(w0, w) and pi(w0, w) = d phi / d w0 at one lattice site.
pub fn field_operators(fock: &FockSpace, site: usize, w0: f64) -> Result<(SparseMatrix, SparseMatrix)> {
    let grid = fock.modes.grid;
    if site >= grid.len() {
        return Err(Error::BadIndex { index: site, limit: grid.len() });
    }
    let w = grid.site(site);
    let mut phi = Vec::new();
    let mut pi = Vec::new();
    for (k, mode) in fock.modes.modes.iter().enumerate() {
        let c = 1.0 / (2.0 * mode.y0 * fock.modes.volume).sqrt();
        let theta = mode.y0 * w0 - mode.y.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
        let e = Complex64::from_polar(c, -theta);
        let iy0 = Complex64::new(0.0, mode.y0);
        for (i, j, v) in fock.a_ops[k].triplets() {
            phi.push((i, j, v * e));
            pi.push((i, j, -iy0 * v * e));
        }
        for (i, j, v) in fock.adag_ops[k].triplets() {
            phi.push((i, j, v * e.conj()));
            pi.push((i, j, iy0 * v * e.conj()));
        }
    }
    Ok((SparseMatrix::from_triplets(fock.dimension, phi), SparseMatrix::from_triplets(fock.dimension, pi)))
}

/// Deviations of the equal-w0 commutators from their canonical values,
/// measured on the columns of states below the occupation cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldCommutatorReport {
    /// i times the lattice delta, i / dw^dims on coincident sites
    pub expected: Complex64,
    pub phi_pi: f64,
    pub phi_phi: f64,
    pub pi_pi: f64,
    pub subspace_states: usize,
}

pub fn field_commutator_check(fock: &FockSpace, sites: (usize, usize), w0: f64) -> Result<FieldCommutatorReport> {
    if !fock.modes.is_full() {
        return Err(Error::PartialModeSet);
    }
    let (phi_a, pi_a) = field_operators(fock, sites.0, w0)?;
    let (phi_b, pi_b) = field_operators(fock, sites.1, w0)?;
    let grid = fock.modes.grid;
    let delta = if sites.0 == sites.1 { 1.0 / grid.cell_volume() } else { 0.0 };
    let expected = Complex64::new(0.0, delta);
    let mask = fock.sub_cutoff();
    let phi_pi =
        phi_a.commutator(&pi_b).combine(Complex64::new(1.0, 0.0), &SparseMatrix::identity(fock.dimension), -expected);
    Ok(FieldCommutatorReport {
        expected,
        phi_pi: phi_pi.max_abs_in_columns(&mask),
        phi_phi: phi_a.commutator(&phi_b).max_abs_in_columns(&mask),
        pi_pi: pi_a.commutator(&pi_b).max_abs_in_columns(&mask),
        subspace_states: mask.iter().filter(|&&m| m).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn one_dimensional_modes() {
        let grid = EnergyGrid::new(1, 8, 2.0 * PI).unwrap();
        let set = build_mode_set(&grid, 1.0, 1).unwrap();
        let ys: Vec<f64> = set.modes.iter().map(|m| m.y[0]).collect();
        assert_eq!(ys.len(), 3);
        for (y, e) in ys.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((y - e).abs() < 1e-15);
        }
        assert_eq!(set.modes[1].y0, 1.0);
        assert!((set.modes[0].y0 - 2.0f64.sqrt()).abs() < 1e-15);
        assert!((vacuum_zero_point(&set) - 0.5 * (1.0 + 2.0 * 2.0f64.sqrt())).abs() < 1e-15);
        assert!(matches!(build_mode_set(&grid, 1.0, 5), Err(Error::CutoffTooLarge { .. })));
    }

    #[test]
    fn two_dimensional_count() {
        let grid = EnergyGrid::new(2, 8, 3.0).unwrap();
        assert_eq!(build_mode_set(&grid, 1.0, 1).unwrap().len(), 9);
        assert_eq!(build_mode_set(&grid, 1.0, 4).unwrap().len(), 64);
    }

    #[test]
    fn ladder_entries() {
        let grid = EnergyGrid::new(1, 8, 2.0 * PI).unwrap();
        let fock = build_fock_space(&build_mode_set(&grid, 1.0, 0).unwrap(), 3).unwrap();
        let adag = &fock.adag_ops[0];
        for n in 1..=3 {
            assert_eq!(adag.get(n, n - 1), Complex64::new((n as f64).sqrt(), 0.0));
        }
        assert_eq!(adag.nnz(), 3);
        let t = charge_operators(&fock).t_op.diagonal();
        assert_eq!(t, [0.5, 1.5, 2.5, 3.5].map(|x| Complex64::new(x, 0.0)));
    }

    #[test]
    fn dimension_limit() {
        let grid = EnergyGrid::new(1, 16, 1.0).unwrap();
        let set = build_mode_set(&grid, 1.0, 8).unwrap();
        assert!(matches!(build_fock_space(&set, 3), Err(Error::DimensionLimit { .. })));
        assert!(build_fock_space_with_limit(&set, 1, 1 << 16).is_ok());
    }
}
