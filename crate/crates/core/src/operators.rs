//! Interval operators, Poincare generators and a commutator harness.
//!
//! Sign table, used by every module:
//!
//! * metric `diag(1, -1, -1, -1)`;
//! * `y^0 = -i d/dw0` and `y^k = +i d/dw^k`, so `y_mu = -i d/dw^mu` for all mu;
//! * `[w^mu, y^nu] = i g^{mu nu}`;
//! * the lattice plane wave `exp(i y_n . w)` has `y^k` eigenvalue `-y_n^k`;
//! * position space uses `p^mu = i d^mu`, i.e. `p^k = -i d/dx^k`, and
//!   `[x^mu, p^nu] = -i g^{mu nu}`.
//!
//! On a single `w0` slice only the spatial operators act on lattice fields.
//! Boost generators act on solutions through their time function, and the
//! full algebra with temporal indices is checked on polynomials.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::dirac::DiracRep;
use crate::error::{Error, Result};
use crate::evolution::{apply_dirac_time_function, apply_time_function, TimeFunctionSpec};
use crate::grid::{EnergyGrid, EventField, SpinorEventField};
use crate::matrix::CMatrix;
use crate::vector::metric;

/// Test fields must fall below this fraction of their peak on the outermost
/// lattice layers before commutators are measured.
pub const LOCALIZATION_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_spatial(grid: &EnergyGrid, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::TemporalDerivative);
    }
    if k > grid.dims() {
        return Err(Error::BadIndex { index: k, limit: grid.dims() + 1 });
    }
    Ok(())
}

/// `y^mu` applied to a field, `i d/dw^k` by spectral differentiation.
pub fn interval_operator_apply(field: &EventField, mu: usize) -> Result<EventField> {
    check_spatial(&field.grid, mu)?;
    Ok(field.apply_mode_multiplier(|y| real(-y[mu - 1])))
}

/// Linear operators on a single slice, with spatial indices 1..=dims.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldOp {
    Identity,
    /// multiplication by w^k; index 0 multiplies by the slice's w0
    Coordinate(usize),
    /// y^k
    Interval(usize),
    /// y^nu y_nu restricted to the spatial axes (the laplacian)
    IntervalSquared,
    /// L_{mu nu} = y_mu w_nu - y_nu w_mu, spatial indices only
    Generator(usize, usize),
    Scaled(Complex64, Box<FieldOp>),
    Sum(Vec<FieldOp>),
    /// Composition; the last factor acts first.
    Product(Vec<FieldOp>),
}

impl FieldOp {
    pub fn scalar(c: Complex64) -> Self {
        FieldOp::Scaled(c, Box::new(FieldOp::Identity))
    }

    pub fn zero() -> Self {
        FieldOp::Sum(Vec::new())
    }

    pub fn scaled(c: Complex64, op: FieldOp) -> Self {
        FieldOp::Scaled(c, Box::new(op))
    }

    /// y_k = g_kk y^k
    pub fn lowered_interval(k: usize) -> Self {
        Self::scaled(real(metric(k)), FieldOp::Interval(k))
    }

    /// w_k = g_kk w^k
    pub fn lowered_coordinate(k: usize) -> Self {
        Self::scaled(real(metric(k)), FieldOp::Coordinate(k))
    }

    pub fn apply(&self, f: &EventField) -> Result<EventField> {
        let grid = f.grid;
        match self {
            FieldOp::Identity => Ok(f.clone()),
            FieldOp::Coordinate(0) => Ok(f.scaled(real(f.w0))),
            FieldOp::Coordinate(k) => {
                check_spatial(&grid, *k)?;
                Ok(f.multiply_sites(|w| real(w[k - 1])))
            }
            FieldOp::Interval(k) => interval_operator_apply(f, *k),
            FieldOp::IntervalSquared => Ok(f.apply_mode_multiplier(|y| real(-y.iter().map(|v| v * v).sum::<f64>()))),
            FieldOp::Generator(mu, nu) => {
                check_spatial(&grid, *mu)?;
                check_spatial(&grid, *nu)?;
                if mu == nu {
                    return Ok(EventField { amplitudes: vec![ZERO; grid.len()], ..f.clone() });
                }
                let a = Self::lowered_interval(*mu).apply(&Self::lowered_coordinate(*nu).apply(f)?)?;
                let b = Self::lowered_interval(*nu).apply(&Self::lowered_coordinate(*mu).apply(f)?)?;
                a.combine(ONE, &b, -ONE)
            }
            FieldOp::Scaled(c, op) => Ok(op.apply(f)?.scaled(*c)),
            FieldOp::Sum(ops) => {
                let mut acc = EventField { amplitudes: vec![ZERO; grid.len()], ..f.clone() };
                for op in ops {
                    acc = acc.combine(ONE, &op.apply(f)?, ONE)?;
                }
                Ok(acc)
            }
            FieldOp::Product(ops) => {
                let mut acc = f.clone();
                for op in ops.iter().rev() {
                    acc = op.apply(&acc)?;
                }
                Ok(acc)
            }
        }
    }
}

fn require_localized(test: &EventField) -> Result<()> {
    let edge_ratio = test.edge_ratio();
    if edge_ratio > LOCALIZATION_TOLERANCE {
        return Err(Error::NotLocalized { edge_ratio });
    }
    Ok(())
}

/// || (AB - BA - E) test || / || test ||
pub fn commutator_residual(a: &FieldOp, b: &FieldOp, expected: &FieldOp, test: &EventField) -> Result<f64> {
    require_localized(test)?;
    let norm = test.norm();
    if norm == 0.0 {
        return Ok(0.0);
    }
    let ab = a.apply(&b.apply(test)?)?;
    let ba = b.apply(&a.apply(test)?)?;
    let e = expected.apply(test)?;
    let diff = ab.combine(ONE, &ba, -ONE)?.combine(ONE, &e, -ONE)?;
    Ok(diff.norm() / norm)
}

/// Residuals of the position-space identities `[p^nu p_nu, x^k] = 2i p^k` and
/// `[m^2, x^k] = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MassShellReport {
    /// `None` when the test field reaches the periodic seam, where
    /// multiplication by x is discontinuous.
    pub momentum: Option<f64>,
    pub mass: f64,
}

/// The grid axes are read as position coordinates x^k.
pub fn mass_shell_commutator_check(test: &EventField, mass: f64) -> MassShellReport {
    let norm = test.norm();
    let dims = test.grid.dims();
    let m2 = mass * mass;
    let mass_op = |f: &EventField| f.multiply_sites(|_| real(m2));
    let mut mass_residual = 0.0f64;
    if norm > 0.0 {
        for k in 0..dims {
            let x = |f: &EventField| f.multiply_sites(|w| real(w[k]));
            let r = x(&mass_op(test)).combine(ONE, &mass_op(&x(test)), -ONE).map_or(f64::NAN, |d| d.norm() / norm);
            mass_residual = mass_residual.max(r);
        }
    }
    let momentum = if test.edge_ratio() > LOCALIZATION_TOLERANCE {
        None
    } else if norm == 0.0 {
        Some(0.0)
    } else {
        let p2 = |f: &EventField| f.apply_mode_multiplier(|y| real(-y.iter().map(|v| v * v).sum::<f64>()));
        let mut worst = 0.0f64;
        for k in 0..dims {
            let x = |f: &EventField| f.multiply_sites(|w| real(w[k]));
            let p = test.apply_mode_multiplier(|y| real(y[k]));
            let lhs = p2(&x(test)).combine(ONE, &x(&p2(test)), -ONE).ok();
            let r = lhs.and_then(|l| l.combine(ONE, &p, -2.0 * I).ok()).map_or(f64::NAN, |d| d.norm() / norm);
            worst = worst.max(r);
        }
        Some(worst)
    };
    MassShellReport { momentum, mass: mass_residual }
}

/// Spin part of a generator.
#[derive(Debug, Clone, PartialEq)]
pub enum SpinRep {
    Scalar,
    Dirac(DiracRep),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub mu: usize,
    pub nu: usize,
    pub spin: SpinRep,
}

fn check_generator_indices(grid: &EnergyGrid, spec: &GeneratorSpec) -> Result<()> {
    let limit = grid.dims() + 1;
    for index in [spec.mu, spec.nu] {
        if index >= limit {
            return Err(Error::BadIndex { index, limit });
        }
    }
    Ok(())
}

/// J_{mu nu} phi for a scalar field.
///
/// For a boost the field is taken to be a solution of `-i d phi/dw0 = T phi`,
/// so `y_0 phi = T phi` and `J_{0k} phi = -w^k T phi - w0 y_k phi`.
pub fn poincare_generator_apply(
    field: &EventField,
    spec: &GeneratorSpec,
    w0: f64,
    family: Option<&TimeFunctionSpec>,
) -> Result<EventField> {
    if spec.spin != SpinRep::Scalar {
        return Err(Error::Representation("scalar field with a spinor generator".into()));
    }
    check_generator_indices(&field.grid, spec)?;
    let (mu, nu) = (spec.mu, spec.nu);
    if mu == nu {
        return Ok(field.scaled(ZERO));
    }
    if mu != 0 && nu != 0 {
        return FieldOp::Generator(mu, nu).apply(field);
    }
    let (k, sign) = if mu == 0 { (nu, 1.0) } else { (mu, -1.0) };
    let family = family.ok_or(Error::TemporalDerivative)?;
    let t_phi = apply_time_function(field, family)?;
    let boost = t_phi.multiply_sites(|w| real(-w[k - 1])).combine(
        ONE,
        &FieldOp::lowered_interval(k).apply(field)?,
        real(-w0),
    )?;
    Ok(boost.scaled(real(sign)))
}

fn spinor_map(field: &SpinorEventField, f: impl Fn(&EventField) -> Result<EventField>) -> Result<SpinorEventField> {
    let components = (0..field.components.len())
        .map(|c| f(&field.component(c)).map(|e| e.amplitudes))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpinorEventField { grid: field.grid, components, w0: field.w0 })
}

fn spinor_axpy(a: &mut SpinorEventField, b: &SpinorEventField, c: Complex64) {
    for (x, y) in a.components.iter_mut().zip(&b.components) {
        x.iter_mut().zip(y).for_each(|(p, q)| *p += c * q);
    }
}

/// (L_{mu nu} + S_{mu nu}) psi for a spinor field.
pub fn poincare_generator_apply_spinor(
    field: &SpinorEventField,
    spec: &GeneratorSpec,
    w0: f64,
    family: Option<&TimeFunctionSpec>,
) -> Result<SpinorEventField> {
    let rep = match &spec.spin {
        SpinRep::Dirac(rep) if rep.spinor_dim() == field.components.len() => rep,
        _ => return Err(Error::Representation("spinor field needs a matching Dirac representation".into())),
    };
    check_generator_indices(&field.grid, spec)?;
    let (mu, nu) = (spec.mu, spec.nu);
    let mut out = if mu == nu {
        spinor_map(field, |c| Ok(c.scaled(ZERO)))?
    } else if mu != 0 && nu != 0 {
        spinor_map(field, |c| FieldOp::Generator(mu, nu).apply(c))?
    } else {
        let (k, sign) = if mu == 0 { (nu, 1.0) } else { (mu, -1.0) };
        let family = family.ok_or(Error::TemporalDerivative)?;
        let t_psi = apply_dirac_time_function(field, family)?;
        let mut boost = spinor_map(&t_psi, |c| Ok(c.multiply_sites(|w| real(-sign * w[k - 1]))))?;
        let shift = spinor_map(field, |c| FieldOp::lowered_interval(k).apply(c))?;
        spinor_axpy(&mut boost, &shift, real(-sign * w0));
        boost
    };
    let s = rep.spin(mu, nu);
    let mut v = vec![ZERO; field.components.len()];
    for j in 0..field.grid.len() {
        for (slot, c) in v.iter_mut().zip(&field.components) {
            *slot = c[j];
        }
        for (o, value) in out.components.iter_mut().zip(s.apply(&v)) {
            o[j] += value;
        }
    }
    Ok(out)
}

/// Where a Lie-algebra relation was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// spectral operators on lattice fields, spatial indices
    Grid,
    /// Dirac spin matrices, all indices
    Spin,
    /// exact polynomial arithmetic, momentum-coordinate representation
    DualPolynomial,
    /// exact polynomial arithmetic, position representation
    PositionPolynomial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationResidual {
    pub sector: Sector,
    pub relation: String,
    pub residual: f64,
}

fn generator_op(mu: usize, nu: usize) -> FieldOp {
    if mu == nu {
        FieldOp::zero()
    } else {
        FieldOp::Generator(mu, nu)
    }
}

/// -i (g_mr X_ns + g_ns X_mr - g_nr X_ms - g_ms X_nr)
fn closure_terms<T>(m: usize, n: usize, r: usize, s: usize, x: impl Fn(usize, usize) -> T) -> [(Complex64, T); 4] {
    let g = |a: usize, b: usize| if a == b { metric(a) } else { 0.0 };
    [
        (real(g(m, r)) * -I, x(n, s)),
        (real(g(n, s)) * -I, x(m, r)),
        (real(-g(n, r)) * -I, x(m, s)),
        (real(-g(m, s)) * -I, x(n, r)),
    ]
}

fn grid_relations(grid: &EnergyGrid, tests: &[EventField]) -> Result<Vec<RelationResidual>> {
    let d = grid.dims();
    let worst = |a: &FieldOp, b: &FieldOp, e: &FieldOp| -> Result<f64> {
        let mut r = 0.0f64;
        for t in tests {
            if t.grid != *grid {
                return Err(Error::GridMismatch);
            }
            r = r.max(commutator_residual(a, b, e, t)?);
        }
        Ok(r)
    };
    let g = |a: usize, b: usize| if a == b { metric(a) } else { 0.0 };
    let mut rows = Vec::new();
    let mut push =
        |relation: String, residual: f64| rows.push(RelationResidual { sector: Sector::Grid, relation, residual });
    for m in 1..=d {
        for n in 1..=d {
            let r = worst(&FieldOp::Coordinate(m), &FieldOp::Interval(n), &FieldOp::scalar(I * g(m, n)))?;
            push(format!("[w^{m}, y^{n}]"), r);
        }
    }
    for m in 1..=d {
        let r = worst(
            &FieldOp::IntervalSquared,
            &FieldOp::Coordinate(m),
            &FieldOp::scaled(-2.0 * I, FieldOp::Interval(m)),
        )?;
        push(format!("[y^2, w^{m}]"), r);
        // position form: p^k = -i d/dx^k is minus the dual interval operator
        let momentum = |k: usize| FieldOp::scaled(-ONE, FieldOp::Interval(k));
        let p2 = FieldOp::Sum(
            (1..=d)
                .map(|k| FieldOp::scaled(real(metric(k)), FieldOp::Product(vec![momentum(k), momentum(k)])))
                .collect(),
        );
        let r = worst(&p2, &FieldOp::Coordinate(m), &FieldOp::scaled(2.0 * I, momentum(m)))?;
        push(format!("[p^2, x^{m}]"), r);
    }
    for m in 1..=d {
        for n in m + 1..=d {
            let r = worst(&FieldOp::lowered_interval(m), &FieldOp::lowered_interval(n), &FieldOp::zero())?;
            push(format!("[y_{m}, y_{n}]"), r);
        }
    }
    for m in 1..=d {
        for n in m + 1..=d {
            for l in 1..=d {
                let expected = FieldOp::Sum(vec![
                    FieldOp::scaled(I * g(l, n), FieldOp::lowered_interval(m)),
                    FieldOp::scaled(-I * g(l, m), FieldOp::lowered_interval(n)),
                ]);
                let r = worst(&generator_op(m, n), &FieldOp::lowered_interval(l), &expected)?;
                push(format!("[J_{m}{n}, y_{l}]"), r);
            }
        }
    }
    for m in 1..=d {
        for n in m + 1..=d {
            for r in 1..=d {
                for s in r + 1..=d {
                    let expected = FieldOp::Sum(
                        closure_terms(m, n, r, s, generator_op)
                            .into_iter()
                            .map(|(c, op)| FieldOp::scaled(c, op))
                            .collect(),
                    );
                    let res = worst(&generator_op(m, n), &generator_op(r, s), &expected)?;
                    push(format!("[J_{m}{n}, J_{r}{s}]"), res);
                }
            }
        }
    }
    Ok(rows)
}

/// max over all index combinations of the spin-sector closure residual.
pub fn spin_closure_residual(rep: &DiracRep) -> f64 {
    let n = rep.indices();
    let spins: Vec<Vec<CMatrix>> = (0..n).map(|a| (0..n).map(|b| rep.spin(a, b)).collect()).collect();
    let mut worst = 0.0f64;
    for m in 0..n {
        for nu in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let mut diff = spins[m][nu].commutator(&spins[r][s]);
                    for (c, x) in closure_terms(m, nu, r, s, |a, b| &spins[a][b]) {
                        diff = &diff - &x.scale(c);
                    }
                    worst = worst.max(diff.max_abs());
                }
            }
        }
    }
    worst
}

/// Residual table for the algebra: spatial relations on the lattice for each
/// test field, the spin sector by matrix arithmetic, and every index
/// combination in both polynomial representations.
pub fn lie_algebra_check(grid: &EnergyGrid, spin: &SpinRep, tests: &[EventField]) -> Result<Vec<RelationResidual>> {
    let mut rows = grid_relations(grid, tests)?;
    if let SpinRep::Dirac(rep) = spin {
        rows.push(RelationResidual {
            sector: Sector::Spin,
            relation: "[S_mn, S_rs]".into(),
            residual: spin_closure_residual(rep),
        });
    }
    for (sector, rep) in [(Sector::DualPolynomial, PolyRep::Dual), (Sector::PositionPolynomial, PolyRep::Position)] {
        for (relation, residual) in polynomial_relations(rep) {
            rows.push(RelationResidual { sector, relation: relation.into(), residual });
        }
    }
    Ok(rows)
}

/// Polynomial in the four coordinates with complex coefficients.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Poly(BTreeMap<[u32; 4], Complex64>);

impl Poly {
    pub fn monomial(exponents: [u32; 4], c: Complex64) -> Self {
        let mut p = Poly::default();
        p.add_term(exponents, c);
        p
    }

    fn add_term(&mut self, e: [u32; 4], c: Complex64) {
        let v = *self.0.entry(e).or_insert(ZERO) + c;
        if v == ZERO {
            self.0.remove(&e);
        } else {
            self.0.insert(e, v);
        }
    }

    pub fn coefficient(&self, exponents: [u32; 4]) -> Complex64 {
        self.0.get(&exponents).copied().unwrap_or(ZERO)
    }

    /// multiply by the upper-index coordinate x^mu
    pub fn times_coordinate(&self, mu: usize) -> Poly {
        let mut out = Poly::default();
        for (e, c) in &self.0 {
            let mut e = *e;
            e[mu] += 1;
            out.add_term(e, *c);
        }
        out
    }

    /// d/dx^mu
    pub fn derivative(&self, mu: usize) -> Poly {
        let mut out = Poly::default();
        for (e, c) in &self.0 {
            if e[mu] > 0 {
                let mut d = *e;
                d[mu] -= 1;
                out.add_term(d, c * real(e[mu] as f64));
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Poly {
        let mut out = Poly::default();
        for (e, v) in &self.0 {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn plus(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, v) in &other.0 {
            out.add_term(*e, *v);
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.0.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Differential-operator realizations of the generators on polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyRep {
    /// y_mu = -i d/dw^mu, L_{mu nu} = y_mu w_nu - y_nu w_mu
    Dual,
    /// p_mu = i d/dx^mu, L_{mu nu} = x_mu p_nu - x_nu p_mu
    Position,
}

impl PolyRep {
    pub fn translation(self, mu: usize, p: &Poly) -> Poly {
        let c = match self {
            PolyRep::Dual => -I,
            PolyRep::Position => I,
        };
        p.derivative(mu).scale(c)
    }

    pub fn coordinate_lower(self, mu: usize, p: &Poly) -> Poly {
        p.times_coordinate(mu).scale(real(metric(mu)))
    }

    pub fn generator(self, mu: usize, nu: usize, p: &Poly) -> Poly {
        let term = |a: usize, b: usize| match self {
            PolyRep::Dual => self.translation(a, &self.coordinate_lower(b, p)),
            PolyRep::Position => self.coordinate_lower(a, &self.translation(b, p)),
        };
        term(mu, nu).plus(&term(nu, mu).scale(-ONE))
    }
}

fn test_polynomials() -> Vec<Poly> {
    let mut out = Vec::new();
    for total in 0..=2u32 {
        for a in 0..=total {
            for b in 0..=total - a {
                for c in 0..=total - a - b {
                    out.push(Poly::monomial([a, b, c, total - a - b - c], ONE));
                }
            }
        }
    }
    let mut mixed = Poly::monomial([1, 2, 0, 1], real(3.0));
    mixed.add_term([0, 1, 1, 1], Complex64::new(-2.0, 1.0));
    mixed.add_term([2, 0, 0, 0], real(0.5));
    out.push(mixed);
    out
}

/// Exact residuals of the canonical commutator and the three algebra lines,
/// maximized over all indices in 0..4 and a set of test polynomials.
pub fn polynomial_relations(rep: PolyRep) -> Vec<(&'static str, f64)> {
    let tests = test_polynomials();
    let g = |a: usize, b: usize| if a == b { metric(a) } else { 0.0 };
    let canonical_sign = match rep {
        PolyRep::Dual => I,
        PolyRep::Position => -I,
    };
    let (mut canon, mut line1, mut line2, mut line3) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in &tests {
        for m in 0..4 {
            for n in 0..4 {
                // [x^m, P^n] with P^n = g^nn P_n
                let pn = |q: &Poly| rep.translation(n, q).scale(real(metric(n)));
                let c = pn(p).times_coordinate(m).plus(&pn(&p.times_coordinate(m)).scale(-ONE));
                canon = canon.max(c.plus(&p.scale(-canonical_sign * g(m, n))).max_abs());

                let c = rep
                    .translation(m, &rep.translation(n, p))
                    .plus(&rep.translation(n, &rep.translation(m, p)).scale(-ONE));
                line1 = line1.max(c.max_abs());

                for l in 0..4 {
                    let c = rep
                        .generator(m, n, &rep.translation(l, p))
                        .plus(&rep.translation(l, &rep.generator(m, n, p)).scale(-ONE));
                    let e = rep.translation(m, p).scale(I * g(l, n)).plus(&rep.translation(n, p).scale(-I * g(l, m)));
                    line2 = line2.max(c.plus(&e.scale(-ONE)).max_abs());
                }
                for r in 0..4 {
                    for s in 0..4 {
                        let mut c = rep
                            .generator(m, n, &rep.generator(r, s, p))
                            .plus(&rep.generator(r, s, &rep.generator(m, n, p)).scale(-ONE));
                        for (k, (a, b)) in closure_terms(m, n, r, s, |a, b| (a, b)) {
                            c = c.plus(&rep.generator(a, b, p).scale(-k));
                        }
                        line3 = line3.max(c.max_abs());
                    }
                }
            }
        }
    }
    vec![("[x^m, P^n] - canonical", canon), ("[P_m, P_n]", line1), ("[J_mn, P_l]", line2), ("[J_mn, J_rs]", line3)]
}
