//! Row-compressed complex matrices for occupation-number spaces.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square sparse matrix; each row holds (column, value) pairs sorted by column.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl SparseMatrix {
    pub fn zeros(dim: usize) -> Self {
        SparseMatrix { dim, rows: vec![Vec::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(&vec![Complex64::new(1.0, 0.0); dim])
    }

    pub fn from_diagonal(values: &[Complex64]) -> Self {
        let rows = values.iter().enumerate().map(|(i, v)| if *v == ZERO { vec![] } else { vec![(i, *v)] }).collect();
        SparseMatrix { dim: values.len(), rows }
    }

    /// Duplicate entries are summed.
    pub fn from_triplets(dim: usize, entries: impl IntoIterator<Item = (usize, usize, Complex64)>) -> Self {
        let mut m = Self::zeros(dim);
        for (i, j, v) in entries {
            m.rows[i].push((j, v));
        }
        for row in m.rows.iter_mut() {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(row.len());
            for &(j, v) in row.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == j => last.1 += v,
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|e| e.1 != ZERO);
            *row = merged;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.rows[i].binary_search_by_key(&j, |e| e.0).map_or(ZERO, |k| self.rows[i][k].1)
    }

    pub fn row(&self, i: usize) -> &[(usize, Complex64)] {
        &self.rows[i]
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |&(j, v)| (i, j, v)))
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.triplets().all(|(i, j, _)| i == j)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_triplets(self.dim, self.triplets().map(|(i, j, v)| (i, j, v * c)))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.dim, self.triplets().map(|(i, j, v)| (j, i, v.conj())))
    }

    /// a * self + b * other
    pub fn combine(&self, a: Complex64, other: &SparseMatrix, b: Complex64) -> Self {
        assert_eq!(self.dim, other.dim);
        Self::from_triplets(
            self.dim,
            self.triplets().map(|(i, j, v)| (i, j, a * v)).chain(other.triplets().map(|(i, j, v)| (i, j, b * v))),
        )
    }

    pub fn matmul(&self, other: &SparseMatrix) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut acc = vec![ZERO; self.dim];
        let mut touched: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(self.dim);
        for row in &self.rows {
            for &(k, a) in row {
                for &(j, b) in &other.rows[k] {
                    if acc[j] == ZERO {
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                if acc[j] != ZERO {
                    out.push((j, acc[j]));
                }
                acc[j] = ZERO;
            }
            touched.clear();
            rows.push(out);
        }
        SparseMatrix { dim: self.dim, rows }
    }

    pub fn commutator(&self, other: &SparseMatrix) -> Self {
        self.matmul(other).combine(Complex64::new(1.0, 0.0), &other.matmul(self), Complex64::new(-1.0, 0.0))
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.rows.iter().map(|r| r.iter().map(|&(j, a)| a * v[j]).sum()).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.triplets().map(|e| e.2.norm()).fold(0.0, f64::max)
    }

    /// Largest |entry| in the given columns.
    pub fn max_abs_in_columns(&self, columns: &[bool]) -> f64 {
        self.triplets().filter(|e| columns[e.1]).map(|e| e.2.norm()).fold(0.0, f64::max)
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut out = vec![ZERO; self.dim * self.dim];
        for (i, j, v) in self.triplets() {
            out[i * self.dim + j] = v;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn product_matches_dense() {
        let a = SparseMatrix::from_triplets(
            3,
            [(0, 1, c(2.0)), (1, 2, c(-1.0)), (2, 0, Complex64::new(0.0, 1.0)), (0, 1, c(1.0))],
        );
        let b = SparseMatrix::from_triplets(3, [(1, 1, c(4.0)), (2, 2, c(1.0)), (0, 2, c(5.0))]);
        let p = a.matmul(&b);
        assert_eq!(p.get(0, 1), c(12.0));
        assert_eq!(p.get(1, 2), c(-1.0));
        assert_eq!(p.get(2, 2), Complex64::new(0.0, 5.0));
        assert_eq!(p.nnz(), 3);
        assert_eq!(a.adjoint().get(1, 0), c(3.0));
    }

    #[test]
    fn commutator_of_diagonals_vanishes() {
        let a = SparseMatrix::from_diagonal(&[c(1.0), c(2.0)]);
        let b = SparseMatrix::from_diagonal(&[c(3.0), c(-1.0)]);
        assert_eq!(a.commutator(&b).nnz(), 0);
    }
}
