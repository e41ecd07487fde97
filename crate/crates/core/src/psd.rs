//! Matrix-cone backend: hermitian d-by-d matrices in a fixed real basis,
//! Jacobi eigenvalues, operator norm, and a certified numerical-radius sweep.
//!
//! Coordinate convention (ambient dimension d^2): first the d diagonal units
//! E_kk, then for every pair i < j in row-major order two coordinates
//!   u_ij for E_ij + E_ji        (symmetric pair)
//!   v_ij for i(E_ij - E_ji)     (antisymmetric imaginary pair)
//! so the (i,j) entry of the matrix is u_ij + i v_ij.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Hermitian matrix as real and imaginary parts (re symmetric, im
/// antisymmetric).
#[derive(Debug, Clone)]
pub struct Herm {
    pub d: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl Herm {
    pub fn zeros(d: usize) -> Self {
        Herm {
            d,
            re: vec![vec![0.0; d]; d],
            im: vec![vec![0.0; d]; d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Herm::zeros(d);
        for i in 0..d {
            m.re[i][i] = 1.0;
        }
        m
    }

    /// c1*self + c2*other.
    pub fn combine(&self, c1: f64, other: &Herm, c2: f64) -> Herm {
        let d = self.d;
        let mut out = Herm::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.re[i][j] = c1 * self.re[i][j] + c2 * other.re[i][j];
                out.im[i][j] = c1 * self.im[i][j] + c2 * other.im[i][j];
            }
        }
        out
    }
}

/// Exact coordinates of the identity matrix.
pub fn identity_coords(d: usize) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); d * d];
    for i in 0..d {
        c[i] = Rational::one();
    }
    c
}

/// Ambient coordinates -> hermitian matrix.
pub fn coords_to_matrix(d: usize, coords: &[f64]) -> Result<Herm> {
    Error::check_dim(d * d, coords.len())?;
    let mut m = Herm::zeros(d);
    for i in 0..d {
        m.re[i][i] = coords[i];
    }
    let mut k = d;
    for i in 0..d {
        for j in (i + 1)..d {
            let u = coords[k];
            let v = coords[k + 1];
            k += 2;
            m.re[i][j] = u;
            m.re[j][i] = u;
            m.im[i][j] = v;
            m.im[j][i] = -v;
        }
    }
    Ok(m)
}

/// Hermitian matrix -> ambient coordinates.
pub fn matrix_to_coords(m: &Herm) -> Vec<f64> {
    let d = m.d;
    let mut coords = vec![0.0; d * d];
    for i in 0..d {
        coords[i] = m.re[i][i];
    }
    let mut k = d;
    for i in 0..d {
        for j in (i + 1)..d {
            coords[k] = m.re[i][j];
            coords[k + 1] = m.im[i][j];
            k += 2;
        }
    }
    coords
}

/// Coordinate index pairs (u, v) of the off-diagonal entries, row-major.
/// Diagonal entries occupy indices 0..d.
pub fn offdiag_coord_indices(d: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    let mut k = d;
    for _ in 0..d * (d - 1) / 2 {
        pairs.push((k, k + 1));
        k += 2;
    }
    pairs
}

/// Eigenvalues of a hermitian matrix, ascending. Uses the real symmetric
/// embedding [[re, -im], [im, re]] whose spectrum is the hermitian spectrum
/// with every eigenvalue doubled.
pub fn eigenvalues(m: &Herm) -> Vec<f64> {
    let d = m.d;
    let n = 2 * d;
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..d {
        for j in 0..d {
            a[i][j] = m.re[i][j];
            a[i][j + d] = -m.im[i][j];
            a[i + d][j] = m.im[i][j];
            a[i + d][j + d] = m.re[i][j];
        }
    }
    let mut ev = jacobi_eigenvalues(&mut a);
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    // doubled multiplicities: take every other entry
    (0..d).map(|i| ev[ 2 * i ]).collect()
}

pub fn min_eigenvalue(m: &Herm) -> f64 {
    eigenvalues(m)[0]
}

pub fn max_eigenvalue(m: &Herm) -> f64 {
    *eigenvalues(m).last().unwrap()
}

/// Cyclic Jacobi on a real symmetric matrix; returns unsorted eigenvalues.
fn jacobi_eigenvalues(a: &mut [Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let scale: f64 = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, &x| Float::max(acc, Float::abs(x)))
        .max(1e-300);
    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q] * a[p][q];
            }
        }
        if Float::sqrt(off) <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if Float::abs(apq) <= 1e-18 * scale {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + Float::sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + Float::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / Float::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// General complex matrix as (re, im) with no symmetry assumption.
#[derive(Debug, Clone)]
pub struct ComplexMatrix {
    pub d: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// The complex matrix x + iy built from two hermitian matrices.
pub fn element_matrix(x: &Herm, y: &Herm) -> ComplexMatrix {
    let d = x.d;
    let mut re = vec![vec![0.0; d]; d];
    let mut im = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..d {
            re[i][j] = x.re[i][j] - y.im[i][j];
            im[i][j] = x.im[i][j] + y.re[i][j];
        }
    }
    ComplexMatrix { d, re, im }
}

/// Does Z commute with its adjoint (within tol, relative to the scale)?
pub fn is_normal(z: &ComplexMatrix, tol: f64) -> bool {
    let d = z.d;
    let scale = z
        .re
        .iter()
        .chain(z.im.iter())
        .flat_map(|r| r.iter())
        .fold(1.0f64, |m, &x| Float::max(m, Float::abs(x)));
    // (Z Z*)_{ij} - (Z* Z)_{ij}, complex parts separately
    for i in 0..d {
        for j in 0..d {
            let mut re = 0.0;
            let mut im = 0.0;
            for k in 0..d {
                // Z Z*: sum_k z_ik conj(z_jk)
                re += z.re[i][k] * z.re[j][k] + z.im[i][k] * z.im[j][k];
                im += z.im[i][k] * z.re[j][k] - z.re[i][k] * z.im[j][k];
                // minus Z* Z: sum_k conj(z_ki) z_kj
                re -= z.re[k][i] * z.re[k][j] + z.im[k][i] * z.im[k][j];
                im -= z.re[k][i] * z.im[k][j] - z.im[k][i] * z.re[k][j];
            }
            if Float::abs(re) > tol * scale * scale || Float::abs(im) > tol * scale * scale {
                return false;
            }
        }
    }
    true
}

/// Operator norm sqrt(lambda_max(Z* Z)) of a complex matrix Z.
pub fn operator_norm(z: &ComplexMatrix) -> f64 {
    let d = z.d;
    // Z*Z = (R^T R + I^T I) + i (R^T I - I^T R), hermitian
    let mut h = Herm::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let mut re = 0.0;
            let mut im = 0.0;
            for k in 0..d {
                re += z.re[k][i] * z.re[k][j] + z.im[k][i] * z.im[k][j];
                im += z.re[k][i] * z.im[k][j] - z.im[k][i] * z.re[k][j];
            }
            h.re[i][j] = re;
            h.im[i][j] = im;
        }
    }
    Float::sqrt(Float::max(max_eigenvalue(&h), 0.0))
}

/// Certified bracket for the numerical radius of x + iy:
/// w = max over angles of lambda_max(cos t * x - sin t * y).
///
/// Interval bounds come from sublinearity of the support function: for
/// t in `[a,b]` (width < pi), g(t) <= (sin(b-t) g(a) + sin(t-a) g(b)) / sin(b-a),
/// whose maximum over the interval is the amplitude of that sinusoid.
pub fn numerical_radius(x: &Herm, y: &Herm, tol: f64, max_evals: usize) -> Result<(f64, f64)> {
    if tol <= 0.0 {
        return Err(Error::precondition("numerical radius needs tol > 0"));
    }
    let g = |t: f64| -> f64 {
        let m = x.combine(Float::cos(t), y, -Float::sin(t));
        max_eigenvalue(&m)
    };
    let two_pi = 2.0 * core::f64::consts::PI;
    let seeds = 64usize;
    let mut evals = 0usize;
    let mut lower = f64::NEG_INFINITY;
    // (a, b, g(a), g(b))
    let mut queue: Vec<(f64, f64, f64, f64)> = Vec::new();
    let mut prev_t = 0.0;
    let mut prev_g = g(0.0);
    evals += 1;
    lower = Float::max(lower, prev_g);
    for k in 1..=seeds {
        let t = two_pi * (k as f64) / (seeds as f64);
        let gt = g(t);
        evals += 1;
        lower = Float::max(lower, gt);
        queue.push((prev_t, t, prev_g, gt));
        prev_t = t;
        prev_g = gt;
    }
    let bound = |a: f64, b: f64, ga: f64, gb: f64| -> f64 {
        let sab = Float::sin(b - a);
        // amplitude of ga*sin(b-t) + gb*sin(t-a)
        let c1 = ga * Float::sin(b) - gb * Float::sin(a);
        let c2 = gb * Float::cos(a) - ga * Float::cos(b);
        let amp = Float::sqrt(c1 * c1 + c2 * c2);
        amp / sab * (1.0 + 1e-12) + 1e-12
    };
    loop {
        let (idx, ub) = queue
            .iter()
            .enumerate()
            .map(|(i, &(a, b, ga, gb))| (i, bound(a, b, ga, gb)))
            .fold((0, f64::NEG_INFINITY), |acc, cur| {
                if cur.1 > acc.1 {
                    cur
                } else {
                    acc
                }
            });
        if ub <= lower + tol {
            return Ok((lower, Float::max(ub, lower)));
        }
        if evals >= max_evals {
            return Err(Error::ToleranceUnmet(alloc::format!(
                "numerical radius bracket [{lower}, {ub}] wider than tol after {evals} evaluations"
            )));
        }
        let (a, b, ga, gb) = queue.swap_remove(idx);
        let mid = 0.5 * (a + b);
        let gm = g(mid);
        evals += 1;
        lower = Float::max(lower, gm);
        queue.push((a, mid, ga, gm));
        queue.push((mid, b, gm, gb));
    }
}
