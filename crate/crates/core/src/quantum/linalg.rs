//! Small dense complex linear algebra used by the coin construction.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `<x|y>`, conjugate-linear in the first argument.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

pub(crate) fn basis_vector(dim: usize, c: usize) -> Vec<Complex64> {
    let mut e = vec![ZERO; dim];
    e[c] = ONE;
    e
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// `sum_k |left_k><right_k|`.
    pub fn outer_sum(left: &[Vec<Complex64>], right: &[Vec<Complex64>]) -> Self {
        let rows = left.first().map_or(0, Vec::len);
        let cols = right.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (l, r) in left.iter().zip(right) {
            for i in 0..rows {
                for j in 0..cols {
                    m[(i, j)] += l[i] * r[j].conj();
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    m[(i, j)] += a * other[(k, j)];
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, x.len(), "vector length differs from column count");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest entrywise modulus of `self - I`.
    pub fn identity_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((self[(i, j)] - target).norm());
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Completes `a` to a linearly independent set of `a.len()` vectors.
///
/// Returns `[a] ++ zeta ++ rest`, where `zeta` holds the standard basis
/// vectors orthogonal to `a` (overlap at most `tol`) and `rest` holds the
/// remaining basis vectors minus the one with the largest overlap with `a`
/// (ties go to the smallest coin). The set misses only the dropped direction
/// and `a` overlaps it by at least `|a| / sqrt(dim)`, so it has full rank.
pub fn li_set(a: &[Complex64], tol: f64) -> Result<Vec<Vec<Complex64>>> {
    let dim = a.len();
    if dim == 0 || norm(a) <= tol {
        return Err(Error::ZeroVector);
    }
    let (zeta, rest): (Vec<usize>, Vec<usize>) = (0..dim).partition(|&c| a[c].norm() <= tol);
    let mut dropped = rest[0];
    for &c in &rest[1..] {
        if a[c].norm() > a[dropped].norm() {
            dropped = c;
        }
    }

    let mut set = Vec::with_capacity(dim);
    set.push(a.to_vec());
    set.extend(zeta.into_iter().map(|c| basis_vector(dim, c)));
    set.extend(
        rest.into_iter()
            .filter(|&c| c != dropped)
            .map(|c| basis_vector(dim, c)),
    );
    Ok(set)
}

/// Modified Gram-Schmidt with one re-orthogonalization pass.
///
/// Each prefix of the output spans the same subspace as the matching prefix of
/// the input, so the first output vector is the normalized first input. Fails
/// if a residual norm drops to `tol` or below.
pub fn gram_schmidt(vectors: &[Vec<Complex64>], tol: f64) -> Result<Vec<Vec<Complex64>>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for _pass in 0..2 {
            for q in &basis {
                let proj = inner(q, &w);
                w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= proj * qi);
            }
        }
        let residual = norm(&w);
        if residual <= tol {
            return Err(Error::DependentVectors { index, residual });
        }
        w.iter_mut().for_each(|wi| *wi /= residual);
        basis.push(w);
    }
    Ok(basis)
}
