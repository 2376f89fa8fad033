//! Sliced phase-space path integral for energy-translation amplitudes with
//! the nonrelativistic time function, and an independent spectral oracle.
//!
//! Intermediate momentum coordinates run over the sites of a periodic 1D
//! lattice and each interval integral `dy / 2 pi` is the sum over the
//! conjugate lattice divided by the box length. One slice of length
//! `d = dw0 / N` carries the kernel
//!
//! `K(a, b) = e^{i d V(a)/2} (1/L) sum_y e^{i y (a - b) + i T(y) d} e^{i d V(b)/2}`
//!
//! and slices compose with the lattice measure `dw`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::evolution::{evolve_dual_schrodinger, TimeFunctionSpec, TimePotential};
use crate::grid::{EnergyGrid, EventField};

const PI_F: f64 = core::f64::consts::PI;

/// Strang substeps used by the oracle when a time potential is present.
pub const ORACLE_SUBSTEPS: usize = 4096;
/// Allowed amplitude in the outer eighth of the box, relative to the peak.
pub const CONTAMINATION_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathIntegralConfig {
    pub tau: f64,
    pub w_start: f64,
    pub w_end: f64,
    pub w0_interval: f64,
    pub n_slices: usize,
    /// lattice sites; also the number of interval nodes per slice
    pub points: usize,
    pub box_length: f64,
    pub time_potential: Option<TimePotential>,
}

impl PathIntegralConfig {
    /// tau = 1, dw0 = 0.5, kappa = 0.25 on 512 sites over a box of 256.
    pub fn reference(w_end: f64, n_slices: usize) -> Self {
        PathIntegralConfig {
            tau: 1.0,
            w_start: 0.0,
            w_end,
            w0_interval: 0.5,
            n_slices,
            points: 512,
            box_length: 256.0,
            time_potential: Some(TimePotential::Quadratic { kappa: 0.25 }),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau.is_finite() && self.tau > 0.0) {
            return Err(Error::OutOfRange { name: "tau", value: self.tau, expected: "> 0" });
        }
        if !(self.w0_interval.is_finite() && self.w0_interval > 0.0) {
            return Err(Error::OutOfRange { name: "w0_interval", value: self.w0_interval, expected: "> 0" });
        }
        if self.n_slices < 1 {
            return Err(Error::OutOfRange { name: "n_slices", value: 0.0, expected: ">= 1" });
        }
        if self.points < 16 {
            return Err(Error::OutOfRange { name: "points", value: self.points as f64, expected: ">= 16" });
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<EnergyGrid> {
        EnergyGrid::new(1, self.points, self.box_length)
    }

    fn spec(&self) -> Result<TimeFunctionSpec> {
        let spec = TimeFunctionSpec::nonrelativistic(self.tau)?;
        Ok(match self.time_potential {
            Some(v) => spec.with_potential(v),
            None => spec,
        })
    }
}

/// Index of the lattice site at coordinate `w`.
pub fn lattice_site(grid: &EnergyGrid, w: f64) -> Result<usize> {
    let x = (w + 0.5 * grid.box_length()) / grid.spacing();
    let j = x.round();
    if (x - j).abs() > 1e-9 || j < 0.0 || j >= grid.points_per_axis() as f64 {
        return Err(Error::InvalidGrid(alloc::format!("w = {w} is not a lattice site")));
    }
    Ok(j as usize)
}

fn check_sampling(cfg: &PathIntegralConfig, grid: &EnergyGrid) -> Result<()> {
    let d = cfg.w0_interval / cfg.n_slices as f64;
    let dy = 2.0 * PI_F / grid.box_length();
    let y_max = PI_F / grid.spacing();
    // phase advance of e^{i T(y) d} between neighbouring interval nodes
    let gradient = y_max / cfg.tau * d;
    if gradient * dy > PI_F {
        return Err(Error::Undersampled { spacing: dy, limit: PI_F / gradient });
    }
    if let Some(v) = cfg.time_potential {
        let slope = v.max_slope(0.5 * grid.box_length(), 1) * d;
        if slope * grid.spacing() > PI_F {
            return Err(Error::Undersampled { spacing: grid.spacing(), limit: PI_F / slope });
        }
    }
    Ok(())
}

/// Kernel of one slice as a dense row-major matrix over lattice sites.
pub fn slice_kernel(cfg: &PathIntegralConfig) -> Result<Vec<Complex64>> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    check_sampling(cfg, &grid)?;
    let n = grid.points_per_axis();
    let d = cfg.w0_interval / cfg.n_slices as f64;
    let (lo, hi) = grid.mode_range();
    // circulant part, indexed by the site difference modulo n
    let circulant: Vec<Complex64> = (0..n)
        .map(|diff| {
            let sum: Complex64 = (lo..hi)
                .map(|m| {
                    let y = grid.interval(m);
                    let phase = 2.0 * PI_F * ((m * diff as i64).rem_euclid(n as i64)) as f64 / n as f64
                        + y * y / (2.0 * cfg.tau) * d;
                    Complex64::from_polar(1.0, phase)
                })
                .sum();
            sum / grid.box_length()
        })
        .collect();
    let kick: Vec<Complex64> = (0..n)
        .map(|j| {
            let v = cfg.time_potential.map_or(0.0, |p| p.value(&[grid.axis_coordinate(j)]));
            Complex64::from_polar(1.0, 0.5 * d * v)
        })
        .collect();
    let mut k = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            k[i * n + j] = kick[i] * circulant[(i + n - j) % n] * kick[j];
        }
    }
    Ok(k)
}

/// Single-slice kernel K(w_end, w_start) with slice length dw0 / N.
pub fn short_step_kernel(cfg: &PathIntegralConfig) -> Result<Complex64> {
    let grid = cfg.grid()?;
    let (a, b) = (lattice_site(&grid, cfg.w_end)?, lattice_site(&grid, cfg.w_start)?);
    Ok(slice_kernel(cfg)?[a * grid.points_per_axis() + b])
}

/// N-slice amplitude <w_end, dw0 | w_start, 0> in continuum normalization.
pub fn path_integral_amplitude(cfg: &PathIntegralConfig) -> Result<Complex64> {
    let grid = cfg.grid()?;
    let start = lattice_site(&grid, cfg.w_start)?;
    let end = lattice_site(&grid, cfg.w_end)?;
    let k = slice_kernel(cfg)?;
    let n = grid.points_per_axis();
    let dw = grid.spacing();
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[start] = Complex64::new(1.0 / dw, 0.0);
    for _ in 0..cfg.n_slices {
        v = (0..n).map(|i| k[i * n..(i + 1) * n].iter().zip(&v).map(|(a, b)| a * b).sum::<Complex64>() * dw).collect();
    }
    Ok(v[end])
}

/// Lattice delta at w_start evolved spectrally through dw0; amplitudes are
/// in continuum kernel normalization.
pub fn spectral_kernel_row(cfg: &PathIntegralConfig) -> Result<EventField> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    let start = lattice_site(&grid, cfg.w_start)?;
    let mut delta = EventField::zeros(grid);
    delta.amplitudes[start] = Complex64::new(1.0 / grid.spacing(), 0.0);
    let spec = cfg.spec()?;
    let out = match spec.time_potential {
        None => evolve_dual_schrodinger(&delta, &spec, cfg.w0_interval, 1)?,
        Some(_) => evolve_dual_schrodinger(&delta, &spec, cfg.w0_interval / ORACLE_SUBSTEPS as f64, ORACLE_SUBSTEPS)?,
    };
    let n = grid.points_per_axis();
    let peak = out.peak();
    let edge = out
        .amplitudes
        .iter()
        .enumerate()
        .filter(|(j, _)| *j < n / 8 || *j >= n - n / 8)
        .map(|(_, a)| a.norm())
        .fold(0.0, f64::max);
    if peak > 0.0 && edge / peak > CONTAMINATION_LIMIT {
        return Err(Error::BoxTooSmall { contamination: edge / peak });
    }
    Ok(out)
}

pub fn spectral_propagator_oracle(cfg: &PathIntegralConfig) -> Result<Complex64> {
    let row = spectral_kernel_row(cfg)?;
    Ok(row.amplitudes[lattice_site(&row.grid, cfg.w_end)?])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n_slices: usize,
    pub amplitude: Complex64,
    pub abs_error: f64,
}

/// Path-integral amplitudes over a ladder of slice counts against the oracle.
pub fn convergence_table(cfg: &PathIntegralConfig, ladder: &[usize]) -> Result<(Complex64, Vec<ConvergenceRow>)> {
    let oracle = spectral_propagator_oracle(cfg)?;
    let rows = ladder
        .iter()
        .map(|&n_slices| {
            let amplitude = path_integral_amplitude(&PathIntegralConfig { n_slices, ..*cfg })?;
            Ok(ConvergenceRow { n_slices, amplitude, abs_error: (amplitude - oracle).norm() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((oracle, rows))
}
