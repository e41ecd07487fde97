//! Dense exact linear algebra over rationals: elimination, rank, nullspace,
//! linear solves and deterministic complement bases.
//!
//! Everything here is small and desk-scale; pivoting is by fixed column order
//! so quotient coordinates and complement bases are reproducible bit-for-bit.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            Error::check_dim(c, row.len())?;
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        Error::check_dim(self.cols, x.len())?;
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// In-place reduced row echelon form; returns the pivot columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let factor = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(i, j)] - &(&factor * &self[(r, j)]);
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace, one vector per free column, in the
    /// deterministic order induced by the column order.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec_ = vec![Rational::zero(); self.cols];
            vec_[free] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                vec_[c] = -m[(r, free)].clone();
            }
            basis.push(vec_);
        }
        basis
    }

    /// One solution of `self * x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        Error::check_dim(self.rows, b.len())?;
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None); // pivot in the RHS column: inconsistent
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        Error::check_dim(self.cols, other.rows)?;
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        Error::check_dim(self.rows, self.cols)?;
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(Some(inv))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Does `v` lie in the span of `basis`?
pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> Result<bool> {
    if basis.is_empty() {
        return Ok(v.iter().all(Zero::is_zero));
    }
    let m = Matrix::from_rows(basis.to_vec())?.transpose();
    Ok(m.solve(v)?.is_some())
}

/// Coordinates of `v` in `basis` (columns), or `None` if outside the span.
pub fn coords_in_span(basis: &[Vec<Rational>], v: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if basis.is_empty() {
        return Ok(if v.iter().all(Zero::is_zero) {
            Some(Vec::new())
        } else {
            None
        });
    }
    let m = Matrix::from_rows(basis.to_vec())?.transpose();
    m.solve(v)
}

/// Reduce a spanning set to an independent basis, keeping the first
/// independent vectors in the given order.
pub fn independent_subset(vectors: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    for v in vectors {
        if !in_span(&kept, v)? {
            kept.push(v.clone());
        }
    }
    Ok(kept)
}

/// Deterministic completion: standard basis vectors (in index order) that are
/// independent from `basis`, enough to span the whole space.
pub fn complete_basis(basis: &[Vec<Rational>], dim: usize) -> Result<Vec<Vec<Rational>>> {
    let mut current = basis.to_vec();
    let mut added = Vec::new();
    for k in 0..dim {
        if current.len() == dim {
            break;
        }
        let mut e = vec![Rational::zero(); dim];
        e[k] = Rational::one();
        if !in_span(&current, &e)? {
            current.push(e.clone());
            added.push(e);
        }
    }
    if current.len() != dim {
        return Err(Error::internal("basis completion failed"));
    }
    Ok(added)
}

/// Canonical positive scaling of a rational direction: coprime integer
/// entries, direction preserved. Two rays are equal exactly when their
/// canonical forms are.
pub fn canonical_direction(v: &[Rational]) -> Vec<Rational> {
    use num_bigint::BigInt;
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for n in &ints {
        gcd = num_integer::gcd(gcd, n.clone());
    }
    if gcd.is_zero() {
        return vec![Rational::zero(); v.len()];
    }
    ints.into_iter()
        .map(|n| Rational::from_integer(n / &gcd))
        .collect()
}
