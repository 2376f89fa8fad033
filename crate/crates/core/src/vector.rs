//! Minkowski four-vectors with metric diag(1, -1, -1, -1).

use core::ops::{Add, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Metric component g_{mu mu} (the metric is diagonal).
#[inline]
pub const fn metric(mu: usize) -> f64 {
    if mu == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Metric tensor g_{mu nu}.
#[inline]
pub fn metric_tensor(mu: usize, nu: usize) -> f64 {
    if mu == nu {
        metric(mu)
    } else {
        0.0
    }
}

/// Contravariant components (a^0, a^1, a^2, a^3).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);

    pub const fn new(t0: f64, v1: f64, v2: f64, v3: f64) -> Self {
        FourVector([t0, v1, v2, v3])
    }

    pub fn temporal(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    /// Covariant components a_mu = g_{mu nu} a^nu.
    pub fn lowered(&self) -> [f64; 4] {
        let a = self.0;
        [a[0], -a[1], -a[2], -a[3]]
    }

    pub fn norm_squared(&self) -> f64 {
        minkowski_dot(self, self)
    }
}

impl Add for FourVector {
    type Output = FourVector;

    fn add(self, rhs: FourVector) -> FourVector {
        let (a, b) = (self.0, rhs.0);
        FourVector([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]])
    }
}

impl Sub for FourVector {
    type Output = FourVector;

    fn sub(self, rhs: FourVector) -> FourVector {
        self + (-rhs)
    }
}

impl Neg for FourVector {
    type Output = FourVector;

    fn neg(self) -> FourVector {
        let a = self.0;
        FourVector([-a[0], -a[1], -a[2], -a[3]])
    }
}

/// a_0 b_0 - a_1 b_1 - a_2 b_2 - a_3 b_3
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    let (a, b) = (a.0, b.0);
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

/// Variable-mass parameter m_V = sqrt(w^mu w_mu).
///
/// Spacelike vectors are rejected instead of producing an imaginary mass.
pub fn variable_mass(w: &FourVector) -> Result<f64> {
    let norm = w.norm_squared();
    if norm < 0.0 {
        return Err(Error::Spacelike { norm });
    }
    Ok(norm.sqrt())
}

/// Momentum coordinate w = p + V for a constant four-potential V.
///
/// The result is not constrained to any mass shell.
pub fn shift_momentum_coordinate(p: &FourVector, potential: &FourVector) -> FourVector {
    *p + *potential
}
