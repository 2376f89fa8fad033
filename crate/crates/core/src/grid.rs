//! Periodic momentum-coordinate lattices and the fields that live on them.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::spectral::{signed_mode, FftNd};

/// Uniform periodic lattice in w-space, centered on the origin.
///
/// Sites sit at `w_j = -L/2 + j dw` on every axis; the conjugate (interval)
/// lattice is `y_n = 2 pi n / L` with `n` in `[-N/2, N/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyGrid {
    dims: usize,
    points: usize,
    box_length: f64,
}

impl EnergyGrid {
    pub fn new(dims: usize, points_per_axis: usize, box_length: f64) -> Result<Self> {
        if !(1..=3).contains(&dims) {
            return Err(Error::InvalidGrid(alloc::format!("dims = {dims}, expected 1, 2 or 3")));
        }
        if points_per_axis < 2 {
            return Err(Error::InvalidGrid(alloc::format!("points_per_axis = {points_per_axis}, expected >= 2")));
        }
        if !(box_length.is_finite() && box_length > 0.0) {
            return Err(Error::OutOfRange { name: "box_length", value: box_length, expected: "> 0" });
        }
        Ok(EnergyGrid { dims, points: points_per_axis, box_length })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn points_per_axis(&self) -> usize {
        self.points
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn spacing(&self) -> f64 {
        self.box_length / self.points as f64
    }

    /// V_w = L^dims
    pub fn volume(&self) -> f64 {
        self.box_length.powi(self.dims as i32)
    }

    /// dw^dims, the lattice measure.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dims as i32)
    }

    pub fn len(&self) -> usize {
        self.points.pow(self.dims as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Per-axis lattice indices of a flat (row-major) site index.
    pub fn unravel(&self, mut flat: usize) -> [usize; 3] {
        let mut idx = [0usize; 3];
        for axis in (0..self.dims).rev() {
            idx[axis] = flat % self.points;
            flat /= self.points;
        }
        idx
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter().take(self.dims).fold(0, |acc, &j| acc * self.points + j)
    }

    /// Coordinate of lattice index `j` along one axis.
    pub fn axis_coordinate(&self, j: usize) -> f64 {
        -0.5 * self.box_length + j as f64 * self.spacing()
    }

    /// Coordinates w^k of a site (unused axes are zero).
    pub fn site(&self, flat: usize) -> [f64; 3] {
        let idx = self.unravel(flat);
        let mut w = [0.0; 3];
        for axis in 0..self.dims {
            w[axis] = self.axis_coordinate(idx[axis]);
        }
        w
    }

    /// Interval y_n = 2 pi n / L.
    pub fn interval(&self, mode: i64) -> f64 {
        2.0 * PI * mode as f64 / self.box_length
    }

    pub fn mode_range(&self) -> (i64, i64) {
        let half = (self.points / 2) as i64;
        (-half, self.points as i64 - half)
    }

    pub fn check_mode(&self, mode: i64) -> Result<()> {
        let (lo, hi) = self.mode_range();
        if mode < lo || mode >= hi {
            return Err(Error::OffLattice { mode, half_width: -lo });
        }
        Ok(())
    }

    /// Conjugate-lattice vector of DFT bin `flat` (unused axes are zero).
    pub fn bin_interval(&self, flat: usize) -> [f64; 3] {
        let idx = self.unravel(flat);
        let mut y = [0.0; 3];
        for axis in 0..self.dims {
            y[axis] = self.interval(signed_mode(idx[axis], self.points));
        }
        y
    }

    pub fn plan(&self) -> FftNd {
        FftNd::new(self.points, self.dims)
    }

    /// Largest |amplitude| on the outermost lattice layers relative to the
    /// global peak; zero for the zero field.
    pub fn edge_ratio(&self, amplitudes: &[Complex64]) -> f64 {
        let mut peak = 0.0f64;
        let mut edge = 0.0f64;
        for (flat, a) in amplitudes.iter().enumerate() {
            let m = a.norm();
            peak = peak.max(m);
            let idx = self.unravel(flat);
            if idx[..self.dims].iter().any(|&j| j == 0 || j + 1 == self.points) {
                edge = edge.max(m);
            }
        }
        if peak == 0.0 {
            0.0
        } else {
            edge / peak
        }
    }
}

/// Closed-form field descriptions accepted by [`sample_field`].
#[derive(Debug, Clone, PartialEq)]
pub enum FieldDescriptor {
    Constant(Complex64),
    /// exp(i y_n . w) with integer conjugate-lattice indices per axis.
    PlaneWave {
        modes: Vec<i64>,
    },
    /// amplitude * exp(-|w - c|^2 / (2 width^2)) * exp(i k . w)
    Gaussian {
        center: Vec<f64>,
        width: f64,
        amplitude: f64,
        carrier: Vec<f64>,
    },
}

impl FieldDescriptor {
    pub fn gaussian(center: &[f64], width: f64) -> Self {
        FieldDescriptor::Gaussian { center: center.to_vec(), width, amplitude: 1.0, carrier: vec![0.0; center.len()] }
    }

    pub fn plane_wave(modes: &[i64]) -> Self {
        FieldDescriptor::PlaneWave { modes: modes.to_vec() }
    }
}

/// Complex scalar amplitudes on an [`EnergyGrid`] at one energy-parameter slice.
#[derive(Debug, Clone, PartialEq)]
pub struct EventField {
    pub grid: EnergyGrid,
    pub amplitudes: Vec<Complex64>,
    pub w0: f64,
}

impl EventField {
    pub fn zeros(grid: EnergyGrid) -> Self {
        EventField { grid, amplitudes: vec![Complex64::new(0.0, 0.0); grid.len()], w0: 0.0 }
    }

    pub fn from_amplitudes(grid: EnergyGrid, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        Ok(EventField { grid, amplitudes, w0: 0.0 })
    }

    pub fn from_fn(grid: EnergyGrid, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let amplitudes = (0..grid.len()).map(|j| f(&grid.site(j)[..grid.dims()])).collect();
        EventField { grid, amplitudes, w0: 0.0 }
    }

    pub fn norm_squared(&self) -> f64 {
        self.grid.cell_volume() * self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn peak(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn edge_ratio(&self) -> f64 {
        self.grid.edge_ratio(&self.amplitudes)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        self.map(|a| a * c)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        EventField { grid: self.grid, amplitudes: self.amplitudes.iter().map(|&a| f(a)).collect(), w0: self.w0 }
    }

    /// a * self + b * other on the same grid.
    pub fn combine(&self, a: Complex64, other: &EventField, b: Complex64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let amplitudes = self.amplitudes.iter().zip(&other.amplitudes).map(|(x, y)| a * x + b * y).collect();
        Ok(EventField { grid: self.grid, amplitudes, w0: self.w0 })
    }

    /// Multiply every site by f(w).
    pub fn multiply_sites(&self, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let grid = self.grid;
        let amplitudes = self.amplitudes.iter().enumerate().map(|(j, a)| a * f(&grid.site(j)[..grid.dims()])).collect();
        EventField { grid, amplitudes, w0: self.w0 }
    }

    /// Multiply every conjugate-lattice mode by `multiplier(y)`.
    pub fn apply_mode_multiplier(&self, multiplier: impl Fn(&[f64]) -> Complex64) -> Self {
        let mut data = self.amplitudes.clone();
        apply_multiplier_in_place(&self.grid, &mut data, multiplier);
        EventField { grid: self.grid, amplitudes: data, w0: self.w0 }
    }

    /// Spectral partial derivative along `axis`.
    pub fn derivative(&self, axis: usize) -> Result<Self> {
        if axis >= self.grid.dims() {
            return Err(Error::BadIndex { index: axis, limit: self.grid.dims() });
        }
        Ok(self.apply_mode_multiplier(|y| Complex64::new(0.0, y[axis])))
    }

    /// Largest pointwise difference |self - other|.
    pub fn max_abs_diff(&self, other: &EventField) -> f64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.amplitudes.iter().all(|a| a.im == 0.0)
    }
}

pub(crate) fn apply_multiplier_in_place(
    grid: &EnergyGrid,
    data: &mut [Complex64],
    multiplier: impl Fn(&[f64]) -> Complex64,
) {
    let plan = grid.plan();
    plan.forward(data);
    for (bin, x) in data.iter_mut().enumerate() {
        let y = grid.bin_interval(bin);
        *x *= multiplier(&y[..grid.dims()]);
    }
    plan.inverse(data);
}

/// Two-component (1+1D) or four-component (3+1D) amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorEventField {
    pub grid: EnergyGrid,
    pub components: Vec<Vec<Complex64>>,
    pub w0: f64,
}

impl SpinorEventField {
    /// Representation dimension required by a grid: 2 for 1D, 4 for 3D.
    pub fn spinor_dimension(grid: &EnergyGrid) -> Result<usize> {
        match grid.dims() {
            1 => Ok(2),
            3 => Ok(4),
            d => Err(Error::Representation(alloc::format!("Dirac fields are supported for dims 1 and 3, not {d}"))),
        }
    }

    pub fn new(grid: EnergyGrid, components: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = Self::spinor_dimension(&grid)?;
        if components.len() != dim {
            return Err(Error::Representation(alloc::format!("expected {dim} components, got {}", components.len())));
        }
        if components.iter().any(|c| c.len() != grid.len()) {
            return Err(Error::GridMismatch);
        }
        Ok(SpinorEventField { grid, components, w0: 0.0 })
    }

    /// Spinor `u` times a scalar profile.
    pub fn from_profile(field: &EventField, spinor: &[Complex64]) -> Result<Self> {
        let components = spinor.iter().map(|s| field.amplitudes.iter().map(|a| a * s).collect()).collect();
        let mut out = Self::new(field.grid, components)?;
        out.w0 = field.w0;
        Ok(out)
    }

    pub fn component(&self, index: usize) -> EventField {
        EventField { grid: self.grid, amplitudes: self.components[index].clone(), w0: self.w0 }
    }

    pub fn norm_squared(&self) -> f64 {
        self.grid.cell_volume() * self.components.iter().flatten().map(|a| a.norm_sqr()).sum::<f64>()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }
}

/// Evaluate a closed-form descriptor on the lattice.
pub fn sample_field(grid: &EnergyGrid, descriptor: &FieldDescriptor) -> Result<EventField> {
    let dims = grid.dims();
    match descriptor {
        FieldDescriptor::Constant(c) => Ok(EventField::from_fn(*grid, |_| *c)),
        FieldDescriptor::PlaneWave { modes } => {
            check_len(modes.len(), dims)?;
            for &m in modes {
                grid.check_mode(m)?;
            }
            let y: Vec<f64> = modes.iter().map(|&m| grid.interval(m)).collect();
            Ok(EventField::from_fn(*grid, |w| {
                let phase: f64 = w.iter().zip(&y).map(|(a, b)| a * b).sum();
                Complex64::new(0.0, phase).exp()
            }))
        }
        FieldDescriptor::Gaussian { center, width, amplitude, carrier } => {
            check_len(center.len(), dims)?;
            check_len(carrier.len(), dims)?;
            if width.is_nan() || *width <= 0.0 {
                return Err(Error::OutOfRange { name: "width", value: *width, expected: "> 0" });
            }
            Ok(EventField::from_fn(*grid, |w| {
                let r2: f64 = w.iter().zip(center).map(|(a, c)| (a - c) * (a - c)).sum();
                let phase: f64 = w.iter().zip(carrier).map(|(a, k)| a * k).sum();
                Complex64::from_polar(amplitude * (-r2 / (2.0 * width * width)).exp(), phase)
            }))
        }
    }
}

fn check_len(got: usize, dims: usize) -> Result<()> {
    if got != dims {
        return Err(Error::BadIndex { index: got, limit: dims });
    }
    Ok(())
}

/// dw^dims * sum conj(f) g
pub fn inner_product(f: &EventField, g: &EventField) -> Result<Complex64> {
    if f.grid != g.grid {
        return Err(Error::GridMismatch);
    }
    let sum: Complex64 = f.amplitudes.iter().zip(&g.amplitudes).map(|(a, b)| a.conj() * b).sum();
    Ok(sum * f.grid.cell_volume())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid1(n: usize, l: f64) -> EnergyGrid {
        EnergyGrid::new(1, n, l).unwrap()
    }

    #[test]
    fn lattice_geometry() {
        let g = grid1(8, 4.0);
        assert_eq!(g.spacing(), 0.5);
        assert_eq!(g.axis_coordinate(0), -2.0);
        assert_eq!(g.axis_coordinate(7), 1.5);
        assert_eq!(g.mode_range(), (-4, 4));
        assert!(g.check_mode(4).is_err());
        let g3 = EnergyGrid::new(3, 4, 2.0).unwrap();
        assert_eq!(g3.len(), 64);
        assert_eq!(g3.ravel(&g3.unravel(37)), 37);
        assert_eq!(g3.volume(), 8.0);
    }

    #[test]
    fn constant_field_norm_is_volume() {
        let g = grid1(8, 3.0);
        let f = sample_field(&g, &FieldDescriptor::Constant(Complex64::new(1.0, 0.0))).unwrap();
        assert!(f.amplitudes.iter().all(|a| *a == Complex64::new(1.0, 0.0)));
        assert!((f.norm_squared() - g.volume()).abs() < 1e-14);
        assert!((inner_product(&f, &f).unwrap().re - 3.0).abs() < 1e-14);
    }

    #[test]
    fn unit_plane_wave() {
        let g = grid1(16, 2.0 * PI);
        let f = sample_field(&g, &FieldDescriptor::plane_wave(&[1])).unwrap();
        for (j, a) in f.amplitudes.iter().enumerate() {
            let w = g.axis_coordinate(j);
            assert!((a - Complex64::new(w.cos(), w.sin())).norm() < 1e-15);
            assert!((a.norm() - 1.0).abs() < 1e-15);
        }
        assert!(matches!(sample_field(&g, &FieldDescriptor::plane_wave(&[8])), Err(Error::OffLattice { .. })));
    }

    #[test]
    fn gaussian_norm_matches_direct_sum() {
        let g = grid1(64, 16.0);
        let f = sample_field(&g, &FieldDescriptor::gaussian(&[0.0], 1.0)).unwrap();
        let direct: f64 = (0..64)
            .map(|j| {
                let w = -8.0 + j as f64 * 0.25;
                (-w * w).exp()
            })
            .sum::<f64>()
            * 0.25;
        assert!((f.norm_squared() - direct).abs() < 1e-14 * direct);
        let ip = inner_product(&f, &f).unwrap();
        assert!(ip.re > 0.0 && ip.im == 0.0);
    }

    #[test]
    fn distinct_plane_waves_are_orthogonal() {
        let g = EnergyGrid::new(2, 8, 5.0).unwrap();
        let f = sample_field(&g, &FieldDescriptor::plane_wave(&[1, -2])).unwrap();
        let h = sample_field(&g, &FieldDescriptor::plane_wave(&[-4, 3])).unwrap();
        assert!(inner_product(&f, &h).unwrap().norm() < 1e-12 * f.norm() * h.norm());
        assert!(matches!(inner_product(&f, &EventField::zeros(grid1(8, 5.0))), Err(Error::GridMismatch)));
    }

    #[test]
    fn spectral_derivative_of_plane_wave() {
        let g = grid1(32, 7.0);
        let f = sample_field(&g, &FieldDescriptor::plane_wave(&[3])).unwrap();
        let d = f.derivative(0).unwrap();
        let k = g.interval(3);
        for (a, b) in d.amplitudes.iter().zip(&f.amplitudes) {
            assert!((a - Complex64::new(0.0, k) * b).norm() < 1e-12);
        }
    }

    #[test]
    fn spinor_dimension_follows_grid() {
        assert_eq!(SpinorEventField::spinor_dimension(&grid1(4, 1.0)), Ok(2));
        assert!(SpinorEventField::spinor_dimension(&EnergyGrid::new(2, 4, 1.0).unwrap()).is_err());
    }
}
