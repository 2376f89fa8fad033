//! Dirac matrices in the standard (Dirac) representation.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::vector::metric;

const O: Complex64 = Complex64::new(0.0, 0.0);
const I1: Complex64 = Complex64::new(1.0, 0.0);
const IM: Complex64 = Complex64::new(0.0, 1.0);

/// gamma^mu, alpha^k = beta gamma^k and beta = gamma^0 for one spatial
/// dimensionality.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracRep {
    /// Upper-index gamma matrices, `1 + spatial_dims` of them.
    pub gamma: Vec<CMatrix>,
    pub alpha: Vec<CMatrix>,
    pub beta: CMatrix,
}

fn pauli(k: usize) -> CMatrix {
    match k {
        1 => CMatrix::from_rows(&[&[O, I1], &[I1, O]]),
        2 => CMatrix::from_rows(&[&[O, -IM], &[IM, O]]),
        3 => CMatrix::from_rows(&[&[I1, O], &[O, -I1]]),
        _ => CMatrix::identity(2),
    }
}

fn block(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix) -> CMatrix {
    let n = a.dim();
    let mut m = CMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = a[(i, j)];
            m[(i, j + n)] = b[(i, j)];
            m[(i + n, j)] = c[(i, j)];
            m[(i + n, j + n)] = d[(i, j)];
        }
    }
    m
}

impl DiracRep {
    /// 1+1 dimensions: alpha = sigma_1, beta = sigma_3.
    pub fn two_component() -> Self {
        let beta = pauli(3);
        let alpha = alloc::vec![pauli(1)];
        Self::assemble(beta, alpha)
    }

    /// 3+1 dimensions, Dirac representation.
    pub fn four_component() -> Self {
        let z = CMatrix::zeros(2);
        let id = CMatrix::identity(2);
        let beta = block(&id, &z, &z, &id.scale(-I1));
        let alpha = (1..=3).map(|k| block(&z, &pauli(k), &pauli(k), &z)).collect();
        Self::assemble(beta, alpha)
    }

    pub fn for_spatial_dims(dims: usize) -> Result<Self> {
        match dims {
            1 => Ok(Self::two_component()),
            3 => Ok(Self::four_component()),
            d => Err(Error::Representation(alloc::format!(
                "no Dirac representation configured for {d} spatial dimensions"
            ))),
        }
    }

    fn assemble(beta: CMatrix, alpha: Vec<CMatrix>) -> Self {
        let mut gamma = alloc::vec![beta.clone()];
        gamma.extend(alpha.iter().map(|a| &beta * a));
        DiracRep { gamma, alpha, beta }
    }

    pub fn spinor_dim(&self) -> usize {
        self.beta.dim()
    }

    /// Number of space-time indices, 1 + spatial dims.
    pub fn indices(&self) -> usize {
        self.gamma.len()
    }

    /// gamma_mu = g_{mu mu} gamma^mu
    pub fn gamma_lower(&self, mu: usize) -> CMatrix {
        self.gamma[mu].scale(Complex64::new(metric(mu), 0.0))
    }

    /// S_{mu nu} = (i/4) [gamma_mu, gamma_nu]
    pub fn spin(&self, mu: usize, nu: usize) -> CMatrix {
        self.gamma_lower(mu).commutator(&self.gamma_lower(nu)).scale(Complex64::new(0.0, 0.25))
    }

    /// alpha . y + beta tau, the matrix time function for a classical interval.
    pub fn time_function(&self, y: &[f64], tau: f64) -> CMatrix {
        let mut m = self.beta.scale(Complex64::new(tau, 0.0));
        for (a, &yk) in self.alpha.iter().zip(y) {
            m = &m + &a.scale(Complex64::new(yk, 0.0));
        }
        m
    }

    /// max over mu, nu of |{gamma^mu, gamma^nu} - 2 g^{mu nu}|
    pub fn clifford_residual(&self) -> f64 {
        let n = self.spinor_dim();
        let mut worst = 0.0f64;
        for mu in 0..self.indices() {
            for nu in 0..self.indices() {
                let mut expected = CMatrix::zeros(n);
                if mu == nu {
                    expected = CMatrix::identity(n).scale(Complex64::new(2.0 * metric(mu), 0.0));
                }
                let r = &self.gamma[mu].anticommutator(&self.gamma[nu]) - &expected;
                worst = worst.max(r.max_abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_algebra_is_exact() {
        assert_eq!(DiracRep::two_component().clifford_residual(), 0.0);
        assert_eq!(DiracRep::four_component().clifford_residual(), 0.0);
    }

    #[test]
    fn alpha_beta_relations() {
        for rep in [DiracRep::two_component(), DiracRep::four_component()] {
            let n = rep.spinor_dim();
            let id = CMatrix::identity(n);
            assert_eq!(&rep.beta * &rep.beta, id);
            for (i, ai) in rep.alpha.iter().enumerate() {
                assert_eq!(ai.anticommutator(&rep.beta).max_abs(), 0.0);
                for (j, aj) in rep.alpha.iter().enumerate() {
                    let expected = if i == j { id.scale(Complex64::new(2.0, 0.0)) } else { CMatrix::zeros(n) };
                    assert_eq!(ai.anticommutator(aj), expected);
                }
            }
        }
    }

    #[test]
    fn time_function_squares_to_proper_time_shell() {
        let rep = DiracRep::four_component();
        let (y, tau) = ([0.3, -1.2, 2.0], 0.7);
        let m = rep.time_function(&y, tau);
        let y2: f64 = y.iter().map(|v| v * v).sum();
        let expected = CMatrix::identity(4).scale(Complex64::new(y2 + tau * tau, 0.0));
        assert!((&(&m * &m) - &expected).max_abs() < 1e-14);
        assert!((&m - &m.adjoint()).max_abs() == 0.0);
    }

    #[test]
    fn spin_tensor_is_antisymmetric() {
        let rep = DiracRep::four_component();
        for mu in 0..4 {
            for nu in 0..4 {
                assert_eq!(rep.spin(mu, nu), rep.spin(nu, mu).scale(-I1));
            }
        }
    }
}
