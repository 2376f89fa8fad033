//! Energy translation of event fields.
//!
//! States obey `-i dphi/dw0 = T phi`, so a conjugate-lattice eigenmode with
//! time function value `t` advances as `exp(+i t dw0)`. On the lattice the
//! plane wave `exp(i y.w)` is an eigenfunction of the spatial interval
//! operator with eigenvalue `-y` (see [`crate::operators`]).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::dirac::DiracRep;
use crate::error::{Error, Result};
use crate::grid::{apply_multiplier_in_place, EnergyGrid, EventField, SpinorEventField};
use crate::matrix::CMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// T = y^2 / 2 tau
    Nonrelativistic,
    /// T = sqrt(y^2 + tau^2)
    RelativisticScalar,
    /// T = alpha . y + beta tau
    Dirac,
    /// second order, (d^mu d_mu + tau^2) phi = 0
    FreeKg,
}

/// Real additive term of the time function, a function of the spatial w.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimePotential {
    /// kappa |w|^2 / 2
    Quadratic { kappa: f64 },
    /// slope * w^1
    Linear { slope: f64 },
    /// strength * |w|, not differentiable at the origin
    Abs { strength: f64 },
}

impl TimePotential {
    pub fn value(&self, w: &[f64]) -> f64 {
        let r2: f64 = w.iter().map(|x| x * x).sum();
        match *self {
            TimePotential::Quadratic { kappa } => 0.5 * kappa * r2,
            TimePotential::Linear { slope } => slope * w.first().copied().unwrap_or(0.0),
            TimePotential::Abs { strength } => strength * r2.sqrt(),
        }
    }

    pub fn gradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        match *self {
            TimePotential::Quadratic { kappa } => Ok(w.iter().map(|x| kappa * x).collect()),
            TimePotential::Linear { slope } => {
                let mut g = vec![0.0; w.len()];
                if let Some(first) = g.first_mut() {
                    *first = slope;
                }
                Ok(g)
            }
            TimePotential::Abs { strength } => {
                let r = w.iter().map(|x| x * x).sum::<f64>().sqrt();
                if r == 0.0 {
                    return Err(Error::NonDifferentiable { at: w.to_vec() });
                }
                Ok(w.iter().map(|x| strength * x / r).collect())
            }
        }
    }

    /// Largest |grad V| over a box of half-width `half`.
    pub fn max_slope(&self, half: f64, dims: usize) -> f64 {
        match *self {
            TimePotential::Quadratic { kappa } => kappa.abs() * half * (dims as f64).sqrt(),
            TimePotential::Linear { slope } => slope.abs(),
            TimePotential::Abs { strength } => strength.abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeFunctionSpec {
    pub variant: Variant,
    pub tau: f64,
    pub time_potential: Option<TimePotential>,
}

impl TimeFunctionSpec {
    pub fn new(variant: Variant, tau: f64) -> Result<Self> {
        let spec = TimeFunctionSpec { variant, tau, time_potential: None };
        spec.validate()?;
        Ok(spec)
    }

    pub fn nonrelativistic(tau: f64) -> Result<Self> {
        Self::new(Variant::Nonrelativistic, tau)
    }

    pub fn relativistic(tau: f64) -> Result<Self> {
        Self::new(Variant::RelativisticScalar, tau)
    }

    pub fn dirac(tau: f64) -> Result<Self> {
        Self::new(Variant::Dirac, tau)
    }

    pub fn free_kg(tau: f64) -> Result<Self> {
        Self::new(Variant::FreeKg, tau)
    }

    pub fn with_potential(mut self, potential: TimePotential) -> Self {
        self.time_potential = Some(potential);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau.is_finite() && self.tau > 0.0) {
            return Err(Error::OutOfRange { name: "tau", value: self.tau, expected: "> 0" });
        }
        Ok(())
    }

    /// Scalar kinetic part as a function of |y|^2.
    pub fn kinetic(&self, y2: f64) -> Result<f64> {
        match self.variant {
            Variant::Nonrelativistic => Ok(y2 / (2.0 * self.tau)),
            Variant::RelativisticScalar => Ok((y2 + self.tau * self.tau).sqrt()),
            _ => Err(Error::Representation(alloc::format!("{:?} has no scalar time function", self.variant))),
        }
    }

    fn potential_at(&self, w: &[f64]) -> f64 {
        self.time_potential.map_or(0.0, |v| v.value(w))
    }
}

fn require(spec: &TimeFunctionSpec, allowed: &[Variant]) -> Result<()> {
    spec.validate()?;
    if !allowed.contains(&spec.variant) {
        return Err(Error::Representation(alloc::format!(
            "{:?} is not accepted here, expected one of {:?}",
            spec.variant,
            allowed
        )));
    }
    Ok(())
}

fn kick_phases(grid: &EnergyGrid, potential: &TimePotential, dt: f64) -> Vec<Complex64> {
    (0..grid.len())
        .map(|j| {
            let w = grid.site(j);
            Complex64::from_polar(1.0, potential.value(&w[..grid.dims()]) * dt)
        })
        .collect()
}

/// T phi for the nonrelativistic or relativistic scalar time function.
pub fn apply_time_function(field: &EventField, spec: &TimeFunctionSpec) -> Result<EventField> {
    require(spec, &[Variant::Nonrelativistic, Variant::RelativisticScalar])?;
    let y2 = |y: &[f64]| y.iter().map(|v| v * v).sum::<f64>();
    let kinetic = field.apply_mode_multiplier(|y| Complex64::new(spec.kinetic(y2(y)).unwrap_or(0.0), 0.0));
    match spec.time_potential {
        None => Ok(kinetic),
        Some(_) => {
            let pot = field.multiply_sites(|w| Complex64::new(spec.potential_at(w), 0.0));
            kinetic.combine(Complex64::new(1.0, 0.0), &pot, Complex64::new(1.0, 0.0))
        }
    }
}

/// Advance a scalar field by `steps * dw0`.
///
/// Without a time potential each mode gets its exact phase in one pass.
/// With one, every step is the Strang product of a half kick, a full kinetic
/// phase and a half kick.
pub fn evolve_dual_schrodinger(
    field: &EventField,
    spec: &TimeFunctionSpec,
    dw0: f64,
    steps: usize,
) -> Result<EventField> {
    require(spec, &[Variant::Nonrelativistic, Variant::RelativisticScalar])?;
    let grid = field.grid;
    let total = dw0 * steps as f64;
    let kinetic_phase = |dt: f64| {
        move |y: &[f64]| {
            let t = spec.kinetic(y.iter().map(|v| v * v).sum()).unwrap_or(0.0);
            Complex64::from_polar(1.0, t * dt)
        }
    };
    let mut out = field.clone();
    out.w0 = field.w0 + total;
    match spec.time_potential {
        None => {
            apply_multiplier_in_place(&grid, &mut out.amplitudes, kinetic_phase(total));
        }
        Some(potential) => {
            let half = kick_phases(&grid, &potential, 0.5 * dw0);
            let plan = grid.plan();
            let phases: Vec<Complex64> =
                (0..grid.len()).map(|bin| kinetic_phase(dw0)(&grid.bin_interval(bin)[..grid.dims()])).collect();
            let data = &mut out.amplitudes;
            for _ in 0..steps {
                data.iter_mut().zip(&half).for_each(|(a, k)| *a *= k);
                plan.forward(data);
                data.iter_mut().zip(&phases).for_each(|(a, k)| *a *= k);
                plan.inverse(data);
                data.iter_mut().zip(&half).for_each(|(a, k)| *a *= k);
            }
        }
    }
    Ok(out)
}

/// Matrix carried by the lattice mode `y`, M(y) = -alpha . y + beta tau.
pub fn dirac_mode_matrix(rep: &DiracRep, y: &[f64], tau: f64) -> CMatrix {
    let flipped: Vec<f64> = y.iter().map(|v| -v).collect();
    rep.time_function(&flipped, tau)
}

/// exp(i M dt) for a matrix with M^2 = E^2.
fn dirac_propagator(m: &CMatrix, energy: f64, dt: f64) -> CMatrix {
    let n = m.dim();
    let (s, c) = (energy * dt).sin_cos();
    &CMatrix::identity(n).scale(Complex64::new(c, 0.0)) + &m.scale(Complex64::new(0.0, s / energy))
}

fn spinor_transform(field: &SpinorEventField, forward: bool) -> Vec<Vec<Complex64>> {
    let plan = field.grid.plan();
    field
        .components
        .iter()
        .map(|c| {
            let mut data = c.clone();
            if forward {
                plan.forward(&mut data);
            } else {
                plan.inverse(&mut data);
            }
            data
        })
        .collect()
}

fn mix_modes(grid: &EnergyGrid, spectra: &mut [Vec<Complex64>], matrix: impl Fn(&[f64]) -> CMatrix) {
    let n = spectra.len();
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for bin in 0..grid.len() {
        let m = matrix(&grid.bin_interval(bin)[..grid.dims()]);
        for (slot, comp) in v.iter_mut().zip(spectra.iter()) {
            *slot = comp[bin];
        }
        for (comp, value) in spectra.iter_mut().zip(m.apply(&v)) {
            comp[bin] = value;
        }
    }
}

fn from_spectra(field: &SpinorEventField, spectra: Vec<Vec<Complex64>>) -> SpinorEventField {
    let tmp = SpinorEventField { grid: field.grid, components: spectra, w0: field.w0 };
    SpinorEventField { grid: field.grid, components: spinor_transform(&tmp, false), w0: field.w0 }
}

/// T phi for the Dirac time function, including any time potential.
pub fn apply_dirac_time_function(field: &SpinorEventField, spec: &TimeFunctionSpec) -> Result<SpinorEventField> {
    require(spec, &[Variant::Dirac])?;
    let rep = DiracRep::for_spatial_dims(field.grid.dims())?;
    let mut spectra = spinor_transform(field, true);
    mix_modes(&field.grid, &mut spectra, |y| dirac_mode_matrix(&rep, y, spec.tau));
    let mut out = from_spectra(field, spectra);
    if spec.time_potential.is_some() {
        let grid = field.grid;
        for (o, c) in out.components.iter_mut().zip(&field.components) {
            for (j, (a, b)) in o.iter_mut().zip(c).enumerate() {
                *a += b * spec.potential_at(&grid.site(j)[..grid.dims()]);
            }
        }
    }
    Ok(out)
}

/// Advance a spinor field by `steps * dw0` with the exact per-mode matrix
/// exponential (Strang split when a time potential is present).
pub fn evolve_dual_dirac(
    field: &SpinorEventField,
    spec: &TimeFunctionSpec,
    dw0: f64,
    steps: usize,
) -> Result<SpinorEventField> {
    require(spec, &[Variant::Dirac])?;
    let grid = field.grid;
    let rep = DiracRep::for_spatial_dims(grid.dims())?;
    if field.components.len() != rep.spinor_dim() {
        return Err(Error::Representation(alloc::format!(
            "expected {} components, got {}",
            rep.spinor_dim(),
            field.components.len()
        )));
    }
    let tau = spec.tau;
    let step_matrix = |dt: f64| {
        let rep = &rep;
        move |y: &[f64]| {
            let e = (y.iter().map(|v| v * v).sum::<f64>() + tau * tau).sqrt();
            dirac_propagator(&dirac_mode_matrix(rep, y, tau), e, dt)
        }
    };
    let total = dw0 * steps as f64;
    let mut out = match spec.time_potential {
        None => {
            let mut spectra = spinor_transform(field, true);
            mix_modes(&grid, &mut spectra, step_matrix(total));
            from_spectra(field, spectra)
        }
        Some(potential) => {
            let half = kick_phases(&grid, &potential, 0.5 * dw0);
            let plan = grid.plan();
            let mats: Vec<CMatrix> =
                (0..grid.len()).map(|bin| step_matrix(dw0)(&grid.bin_interval(bin)[..grid.dims()])).collect();
            let mut comps = field.components.clone();
            let mut v = vec![Complex64::new(0.0, 0.0); comps.len()];
            for _ in 0..steps {
                for c in comps.iter_mut() {
                    c.iter_mut().zip(&half).for_each(|(a, k)| *a *= k);
                    plan.forward(c);
                }
                for (bin, m) in mats.iter().enumerate() {
                    for (slot, c) in v.iter_mut().zip(comps.iter()) {
                        *slot = c[bin];
                    }
                    for (c, value) in comps.iter_mut().zip(m.apply(&v)) {
                        c[bin] = value;
                    }
                }
                for c in comps.iter_mut() {
                    plan.inverse(c);
                    c.iter_mut().zip(&half).for_each(|(a, k)| *a *= k);
                }
            }
            SpinorEventField { grid, components: comps, w0: field.w0 }
        }
    };
    out.w0 = field.w0 + total;
    Ok(out)
}

/// || T(T psi) - (-laplacian + tau^2) psi || / || psi ||, the statement that
/// the Dirac time function squares to the proper-time shell.
pub fn dirac_squared_residual(field: &SpinorEventField, tau: f64) -> Result<f64> {
    let spec = TimeFunctionSpec::dirac(tau)?;
    let twice = apply_dirac_time_function(&apply_dirac_time_function(field, &spec)?, &spec)?;
    let mut worst = 0.0f64;
    for (k, comp) in twice.components.iter().enumerate() {
        let shell = field
            .component(k)
            .apply_mode_multiplier(|y| Complex64::new(y.iter().map(|v| v * v).sum::<f64>() + tau * tau, 0.0));
        let diff: f64 = comp.iter().zip(&shell.amplitudes).map(|(a, b)| (a - b).norm_sqr()).sum();
        worst += diff;
    }
    let norm = field.norm();
    Ok((worst * field.grid.cell_volume()).sqrt() / norm)
}

/// Real field and its w0-derivative (the canonical conjugate pi).
#[derive(Debug, Clone, PartialEq)]
pub struct KgState {
    pub phi: EventField,
    pub phi_prime: EventField,
    pub w0: f64,
}

impl KgState {
    pub fn new(phi: EventField, phi_prime: EventField) -> Result<Self> {
        if phi.grid != phi_prime.grid {
            return Err(Error::GridMismatch);
        }
        if !phi.is_real() || !phi_prime.is_real() {
            return Err(Error::ComplexData);
        }
        let w0 = phi.w0;
        Ok(KgState { phi, phi_prime, w0 })
    }
}

/// Exact per-mode Klein-Gordon evolution with y0 = sqrt(y^2 + tau^2).
pub fn evolve_dual_kg(state: &KgState, spec: &TimeFunctionSpec, dw0: f64, steps: usize) -> Result<KgState> {
    require(spec, &[Variant::FreeKg])?;
    if state.phi.grid != state.phi_prime.grid {
        return Err(Error::GridMismatch);
    }
    if !state.phi.is_real() || !state.phi_prime.is_real() {
        return Err(Error::ComplexData);
    }
    let grid = state.phi.grid;
    let plan = grid.plan();
    let total = dw0 * steps as f64;
    let mut phi = state.phi.amplitudes.clone();
    let mut pi = state.phi_prime.amplitudes.clone();
    plan.forward(&mut phi);
    plan.forward(&mut pi);
    for (bin, (f, p)) in phi.iter_mut().zip(pi.iter_mut()).enumerate() {
        let y = grid.bin_interval(bin);
        let y0 = (y.iter().map(|v| v * v).sum::<f64>() + spec.tau * spec.tau).sqrt();
        let (s, c) = (y0 * total).sin_cos();
        let (f0, p0) = (*f, *p);
        *f = f0 * c + p0 * (s / y0);
        *p = -f0 * (y0 * s) + p0 * c;
    }
    plan.inverse(&mut phi);
    plan.inverse(&mut pi);
    let w0 = state.w0 + total;
    let real = |data: Vec<Complex64>| {
        let amplitudes = data.into_iter().map(|a| Complex64::new(a.re, 0.0)).collect();
        EventField { grid, amplitudes, w0 }
    };
    Ok(KgState { phi: real(phi), phi_prime: real(pi), w0 })
}

/// Time-interval charge T and spatial interval charges Y of a real state.
#[derive(Debug, Clone, PartialEq)]
pub struct KgCharges {
    pub t: f64,
    pub y: Vec<f64>,
}

pub fn kg_charges(state: &KgState, tau: f64) -> Result<KgCharges> {
    if state.phi.grid != state.phi_prime.grid {
        return Err(Error::GridMismatch);
    }
    if !state.phi.is_real() || !state.phi_prime.is_real() {
        return Err(Error::ComplexData);
    }
    let grid = state.phi.grid;
    let dv = grid.cell_volume();
    let gradients: Vec<EventField> = (0..grid.dims()).map(|k| state.phi.derivative(k)).collect::<Result<_>>()?;
    let mut t = 0.0;
    for (j, (f, p)) in state.phi.amplitudes.iter().zip(&state.phi_prime.amplitudes).enumerate() {
        let grad2: f64 = gradients.iter().map(|g| g.amplitudes[j].norm_sqr()).sum();
        t += 0.5 * (p.re * p.re + grad2 + tau * tau * f.re * f.re);
    }
    let y = gradients
        .iter()
        .map(|g| {
            let s: f64 = g.amplitudes.iter().zip(&state.phi_prime.amplitudes).map(|(d, p)| (p * d).re).sum();
            -dv * s
        })
        .collect();
    Ok(KgCharges { t: dv * t, y })
}

/// Residual of (d0^2 - laplacian + tau^2) on exp(-i (y0 w0 - y.w)) with
/// y0 on the proper-time shell. The temporal derivative is analytic and the
/// laplacian spectral.
pub fn kg_plane_wave_residual(grid: &EnergyGrid, modes: &[i64], tau: f64, w0: f64) -> Result<f64> {
    if modes.len() != grid.dims() {
        return Err(Error::BadIndex { index: modes.len(), limit: grid.dims() });
    }
    for &m in modes {
        grid.check_mode(m)?;
    }
    let y: Vec<f64> = modes.iter().map(|&m| grid.interval(m)).collect();
    let y2: f64 = y.iter().map(|v| v * v).sum();
    let y0 = (y2 + tau * tau).sqrt();
    let field = EventField::from_fn(*grid, |w| {
        let phase = y0 * w0 - w.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
        Complex64::from_polar(1.0, -phase)
    });
    let laplacian = field.apply_mode_multiplier(|k| Complex64::new(-k.iter().map(|v| v * v).sum::<f64>(), 0.0));
    let worst = field
        .amplitudes
        .iter()
        .zip(&laplacian.amplitudes)
        .map(|(f, l)| (f * (tau * tau - y0 * y0) - l).norm())
        .fold(0.0, f64::max);
    Ok(worst / field.peak())
}
