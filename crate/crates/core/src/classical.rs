//! Classical dual dynamics in the variable-mass parameter, and the
//! Hamilton-Jacobi construction that turns a complete integral into a time
//! function generating the same motion.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::evolution::{TimeFunctionSpec, Variant};

/// State (y_i, w^i) at parameter m_V.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPhasePoint {
    pub y: Vec<f64>,
    pub w: Vec<f64>,
    pub m_v: f64,
}

impl DualPhasePoint {
    pub fn new(y: Vec<f64>, w: Vec<f64>, m_v: f64) -> Result<Self> {
        if y.len() != w.len() {
            return Err(Error::BadIndex { index: w.len(), limit: y.len() });
        }
        Ok(DualPhasePoint { y, w, m_v })
    }
}

fn scalar_spec(spec: &TimeFunctionSpec) -> Result<()> {
    spec.validate()?;
    match spec.variant {
        Variant::Nonrelativistic | Variant::RelativisticScalar => Ok(()),
        v => Err(Error::Representation(alloc::format!("{v:?} has no classical scalar time function"))),
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

pub fn time_function_eval(spec: &TimeFunctionSpec, y: &[f64], w: &[f64]) -> Result<f64> {
    scalar_spec(spec)?;
    let kinetic = spec.kinetic(norm2(y))?;
    Ok(kinetic + spec.time_potential.map_or(0.0, |v| v.value(w)))
}

/// dT/dy for the free relativistic time function, y / sqrt(y^2 + tau^2).
pub fn group_velocity(y: &[f64], tau: f64) -> Vec<f64> {
    let t = (norm2(y) + tau * tau).sqrt();
    y.iter().map(|v| v / t).collect()
}

fn kinetic_gradient(spec: &TimeFunctionSpec, y: &[f64]) -> Vec<f64> {
    match spec.variant {
        Variant::Nonrelativistic => y.iter().map(|v| v / spec.tau).collect(),
        _ => group_velocity(y, spec.tau),
    }
}

fn potential_gradient(spec: &TimeFunctionSpec, w: &[f64]) -> Result<Vec<f64>> {
    match spec.time_potential {
        None => Ok(vec![0.0; w.len()]),
        Some(v) => v.gradient(w),
    }
}

/// Kahan-compensated running sums.
struct Compensated {
    sum: Vec<f64>,
    carry: Vec<f64>,
}

impl Compensated {
    fn new(start: &[f64]) -> Self {
        Compensated { sum: start.to_vec(), carry: vec![0.0; start.len()] }
    }

    fn add(&mut self, delta: &[f64], scale: f64) {
        for ((s, c), d) in self.sum.iter_mut().zip(self.carry.iter_mut()).zip(delta) {
            let y = d * scale - *c;
            let t = *s + y;
            *c = (t - *s) - y;
            *s = t;
        }
    }
}

/// Kick-drift-kick integration of dw/dm_V = dT/dy, dy/dm_V = -dT/dw.
///
/// Returns `steps + 1` points including the start.
pub fn integrate_dual_hamilton(
    start: &DualPhasePoint,
    spec: &TimeFunctionSpec,
    dm_v: f64,
    steps: usize,
) -> Result<Vec<DualPhasePoint>> {
    scalar_spec(spec)?;
    if start.y.len() != start.w.len() {
        return Err(Error::BadIndex { index: start.w.len(), limit: start.y.len() });
    }
    let mut y = Compensated::new(&start.y);
    let mut w = Compensated::new(&start.w);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(start.clone());
    let mut force = potential_gradient(spec, &start.w)?;
    for n in 1..=steps {
        y.add(&force, -0.5 * dm_v);
        w.add(&kinetic_gradient(spec, &y.sum), dm_v);
        force = potential_gradient(spec, &w.sum)?;
        y.add(&force, -0.5 * dm_v);
        out.push(DualPhasePoint { y: y.sum.clone(), w: w.sum.clone(), m_v: start.m_v + n as f64 * dm_v });
    }
    Ok(out)
}

/// Dormand-Prince 5(4) tableau, autonomous form.
const DP_A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_B: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const DP_E: [f64; 7] =
    [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];

/// Adaptive Dormand-Prince reference for the same flow, integrated from
/// `start` to `m_v_end` with mixed tolerance `tol` per component.
pub fn integrate_reference(
    start: &DualPhasePoint,
    spec: &TimeFunctionSpec,
    m_v_end: f64,
    tol: f64,
) -> Result<DualPhasePoint> {
    scalar_spec(spec)?;
    let d = start.y.len();
    if start.w.len() != d {
        return Err(Error::BadIndex { index: start.w.len(), limit: d });
    }
    // state layout: y then w
    let rhs = |x: &[f64]| -> Result<Vec<f64>> {
        let (y, w) = x.split_at(d);
        let mut out: Vec<f64> = potential_gradient(spec, w)?.iter().map(|g| -g).collect();
        out.extend(kinetic_gradient(spec, y));
        Ok(out)
    };
    let mut x: Vec<f64> = start.y.iter().chain(&start.w).copied().collect();
    let mut s = start.m_v;
    let span = m_v_end - start.m_v;
    let dir = if span < 0.0 { -1.0 } else { 1.0 };
    let mut h = dir * (span.abs() / 100.0).clamp(f64::MIN_POSITIVE, 0.01);
    let mut k: Vec<Vec<f64>> = vec![rhs(&x)?];
    let mut attempts = 0usize;
    while dir * (m_v_end - s) > 0.0 {
        attempts += 1;
        if attempts > 10_000_000 {
            return Err(Error::NoConvergence("reference integrator step control"));
        }
        if dir * (s + h - m_v_end) > 0.0 {
            h = m_v_end - s;
        }
        k.truncate(1);
        for (stage, row) in DP_A.iter().enumerate().skip(1) {
            let xs: Vec<f64> =
                (0..2 * d).map(|i| x[i] + h * (0..stage).map(|j| row[j] * k[j][i]).sum::<f64>()).collect();
            k.push(rhs(&xs)?);
        }
        let next: Vec<f64> = (0..2 * d).map(|i| x[i] + h * (0..7).map(|j| DP_B[j] * k[j][i]).sum::<f64>()).collect();
        let err = (0..2 * d)
            .map(|i| {
                let e = h * (0..7).map(|j| DP_E[j] * k[j][i]).sum::<f64>();
                let scale = tol * (1.0 + x[i].abs().max(next[i].abs()));
                (e / scale) * (e / scale)
            })
            .sum::<f64>()
            / (2 * d).max(1) as f64;
        let err = err.sqrt();
        if err <= 1.0 {
            s += h;
            x = next;
            // first-same-as-last
            let last = k.pop().unwrap_or_default();
            k.clear();
            k.push(last);
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
    }
    let (y, w) = x.split_at(d);
    Ok(DualPhasePoint { y: y.to_vec(), w: w.to_vec(), m_v: m_v_end })
}

/// Both sides of the small-interval expansion sqrt(tau^2 + y^2) ~ tau + y^2/2tau.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionError {
    pub exact: f64,
    pub approx: f64,
    /// tau (y^2/tau^2)^2 / 8
    pub bound: f64,
}

pub fn nonrel_expansion_error(y: &[f64], tau: f64) -> Result<ExpansionError> {
    if tau.is_nan() || tau <= 0.0 {
        return Err(Error::OutOfRange { name: "tau", value: tau, expected: "> 0" });
    }
    let y2 = norm2(y);
    if y2.sqrt() > tau {
        return Err(Error::OutOfRange { name: "|y|", value: y2.sqrt(), expected: "<= tau" });
    }
    let r = y2 / (tau * tau);
    Ok(ExpansionError { exact: (tau * tau + y2).sqrt(), approx: tau + y2 / (2.0 * tau), bound: tau * r * r / 8.0 })
}

/// One-degree-of-freedom system with a complete integral of its
/// Hamilton-Jacobi equation.
pub trait HjSystem {
    fn hamiltonian(&self, q: f64, p: f64) -> f64;
    /// Complete integral A(q, p, t), with p labelling the integration constant
    /// through H(q, p).
    fn action(&self, q: f64, p: f64, t: f64) -> f64;
    /// p on the positive branch of H(q, p) = energy.
    fn invert_h(&self, q: f64, energy: f64) -> Result<f64>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeParticle {
    pub mass: f64,
}

impl HjSystem for FreeParticle {
    fn hamiltonian(&self, _q: f64, p: f64) -> f64 {
        p * p / (2.0 * self.mass)
    }

    fn action(&self, q: f64, p: f64, t: f64) -> f64 {
        p * q - p * p * t / (2.0 * self.mass)
    }

    fn invert_h(&self, q: f64, energy: f64) -> Result<f64> {
        if energy.is_nan() || energy <= 0.0 {
            return Err(Error::NonInvertible { q, energy });
        }
        Ok((2.0 * self.mass * energy).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicOscillator {
    pub mass: f64,
    pub omega: f64,
}

impl HarmonicOscillator {
    /// Characteristic function W(q, E) with dW/dq = p.
    fn characteristic(&self, q: f64, energy: f64) -> f64 {
        let (m, w) = (self.mass, self.omega);
        let s = (2.0 * m * energy - m * m * w * w * q * q).sqrt();
        0.5 * q * s + (energy / w) * (q * w * (m / (2.0 * energy)).sqrt()).asin()
    }
}

impl HjSystem for HarmonicOscillator {
    fn hamiltonian(&self, q: f64, p: f64) -> f64 {
        p * p / (2.0 * self.mass) + 0.5 * self.mass * self.omega * self.omega * q * q
    }

    fn action(&self, q: f64, p: f64, t: f64) -> f64 {
        let e = self.hamiltonian(q, p);
        self.characteristic(q, e) - e * t
    }

    fn invert_h(&self, q: f64, energy: f64) -> Result<f64> {
        let p2 = 2.0 * self.mass * energy - (self.mass * self.omega * q).powi(2);
        if p2.is_nan() || p2 <= 0.0 {
            return Err(Error::NonInvertible { q, energy });
        }
        Ok(p2.sqrt())
    }
}

/// A(q, invert_H(q, H), t)
fn action_bar(sys: &dyn HjSystem, q: f64, energy: f64, t: f64) -> Result<f64> {
    Ok(sys.action(q, sys.invert_h(q, energy)?, t))
}

/// T(q, H, t) = -dA/dH by a central difference at step h.
pub fn hj_time_function(sys: &dyn HjSystem, q: f64, energy: f64, t: f64, h: f64) -> Result<f64> {
    let up = action_bar(sys, q, energy + h, t)?;
    let down = action_bar(sys, q, energy - h, t)?;
    Ok(-(up - down) / (2.0 * h))
}

/// |dA/dt + H(q, dA/dq)| at (q, H, t).
pub fn hj_equation_residual(sys: &dyn HjSystem, q: f64, energy: f64, t: f64, h: f64) -> Result<f64> {
    let dt = (action_bar(sys, q, energy, t + h)? - action_bar(sys, q, energy, t - h)?) / (2.0 * h);
    let dq = (action_bar(sys, q + h, energy, t)? - action_bar(sys, q - h, energy, t)?) / (2.0 * h);
    Ok((dt + sys.hamiltonian(q, dq)).abs())
}

/// Residual pairs of the dual Hamilton equations with H as the evolution
/// parameter and T as the generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HjResiduals {
    /// |dp/dH + dT/dq|
    pub r1: f64,
    /// |dq/dH - dT/dp|
    pub r2: f64,
    /// the same pair with T replaced by -T
    pub r1_flipped: f64,
    pub r2_flipped: f64,
}

/// Solve T(q, energy) = target for q near `guess` by the secant method.
fn solve_level(sys: &dyn HjSystem, target: f64, guess: f64, energy: f64, t: f64, h: f64) -> Result<f64> {
    let f = |q: f64| hj_time_function(sys, q, energy, t, h).map(|v| v - target);
    let mut q0 = guess;
    let mut q1 = guess + 1e-3 * (1.0 + guess.abs());
    let (mut f0, mut f1) = (f(q0)?, f(q1)?);
    let mut best = if f0.abs() < f1.abs() { (q0, f0) } else { (q1, f1) };
    for _ in 0..100 {
        if f1 == 0.0 || f1 == f0 || (q1 - q0).abs() <= 1e-15 * (1.0 + q1.abs()) {
            break;
        }
        let q2 = q1 - f1 * (q1 - q0) / (f1 - f0);
        q0 = q1;
        f0 = f1;
        q1 = q2;
        f1 = f(q1)?;
        if f1.abs() < best.1.abs() {
            best = (q1, f1);
        }
    }
    // T itself carries difference noise of order eps * |A| / h
    if best.1.abs() <= 1e-8 * (1.0 + target.abs()) {
        Ok(best.0)
    } else {
        Err(Error::NoConvergence("level set of the time function"))
    }
}

/// Check the dual equations dp/dH = -dT/dq, dq/dH = dT/dp on the family of
/// phase points that keeps T fixed while H varies, with every partial taken
/// by central differences at step `h`.
pub fn verify_hamilton_jacobi_duality(sys: &dyn HjSystem, q: f64, t: f64, energy: f64, h: f64) -> Result<HjResiduals> {
    if h.is_nan() || h <= 0.0 {
        return Err(Error::OutOfRange { name: "h", value: h, expected: "> 0" });
    }
    let p_of = |q: f64, e: f64| -> Result<f64> {
        Ok((action_bar(sys, q + h, e, t)? - action_bar(sys, q - h, e, t)?) / (2.0 * h))
    };
    let t0 = hj_time_function(sys, q, energy, t, h)?;
    let p0 = p_of(q, energy)?;
    let q_up = solve_level(sys, t0, q, energy + h, t, h)?;
    let q_down = solve_level(sys, t0, q, energy - h, t, h)?;
    let dq_dh = (q_up - q_down) / (2.0 * h);
    let dp_dh = (p_of(q_up, energy + h)? - p_of(q_down, energy - h)?) / (2.0 * h);

    // T as a function on phase space, T(q, H(q, p))
    let t_qp = |q: f64, p: f64| hj_time_function(sys, q, sys.hamiltonian(q, p), t, h);
    let dt_dq = (t_qp(q + h, p0)? - t_qp(q - h, p0)?) / (2.0 * h);
    let dt_dp = (t_qp(q, p0 + h)? - t_qp(q, p0 - h)?) / (2.0 * h);
    Ok(HjResiduals {
        r1: (dp_dh + dt_dq).abs(),
        r2: (dq_dh - dt_dp).abs(),
        r1_flipped: (dp_dh - dt_dq).abs(),
        r2_flipped: (dq_dh + dt_dp).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_function_examples() {
        let nr = TimeFunctionSpec::nonrelativistic(1.0).unwrap();
        let rel = TimeFunctionSpec::relativistic(1.0).unwrap();
        assert_eq!(time_function_eval(&nr, &[2.0, 0.0, 0.0], &[0.0; 3]), Ok(2.0));
        assert_eq!(time_function_eval(&rel, &[2.0, 0.0, 0.0], &[0.0; 3]), Ok(5.0f64.sqrt()));
        assert_eq!(time_function_eval(&rel, &[0.0; 3], &[0.0; 3]), Ok(1.0));
    }

    #[test]
    fn group_velocity_examples() {
        assert_eq!(group_velocity(&[3.0, 0.0, 0.0], 4.0), [0.6, 0.0, 0.0]);
        assert_eq!(group_velocity(&[0.0], 1.0), [0.0]);
    }

    #[test]
    fn expansion_examples() {
        let e = nonrel_expansion_error(&[0.0], 1.0).unwrap();
        assert_eq!(e.exact - e.approx, 0.0);
        let e = nonrel_expansion_error(&[0.1], 1.0).unwrap();
        assert!((e.exact - e.approx).abs() <= 1.25e-5 && (e.exact - e.approx).abs() <= e.bound);
        let e = nonrel_expansion_error(&[1.0], 1.0).unwrap();
        assert!(((e.exact - e.approx).abs() - 0.085786).abs() < 1e-6);
        assert_eq!(e.bound, 0.125);
        assert!(nonrel_expansion_error(&[1.5], 1.0).is_err());
    }

    #[test]
    fn free_particle_branch_point() {
        let sys = FreeParticle { mass: 1.0 };
        assert!(matches!(verify_hamilton_jacobi_duality(&sys, 1.0, 0.5, 0.0, 1e-4), Err(Error::NonInvertible { .. })));
    }

    #[test]
    fn oscillator_characteristic_gives_momentum() {
        let sys = HarmonicOscillator { mass: 1.3, omega: 0.7 };
        assert!(hj_equation_residual(&sys, 0.4, 0.9, 0.2, 1e-4).unwrap() < 1e-7);
    }
}
