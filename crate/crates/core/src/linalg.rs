//! Small dense complex linear algebra: a column-major matrix, products and a
//! least-squares solver (Householder QR with a ridge fallback).

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::{Error, Result, C64};

/// Relative ridge weight added to a trace-normalized Gram matrix when the
/// direct QR solve is rank deficient.
pub const RIDGE_WEIGHT: f64 = 1e-10;

/// `|R_kk|` ratio below which a QR factor is treated as rank deficient.
const RANK_TOLERANCE: f64 = 1e-10;

/// Dense complex matrix stored column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from `f(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from equally sized columns.
    pub fn from_columns(rows: usize, columns: impl IntoIterator<Item = Vec<C64>>) -> Result<Self> {
        let mut data = Vec::new();
        let mut cols = 0;
        for c in columns {
            if c.len() != rows {
                return Err(Error::mismatch("column length", rows, c.len()));
            }
            data.extend_from_slice(&c);
            cols += 1;
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[col * self.rows + row]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.data[col * self.rows + row] = value;
    }

    pub fn col(&self, j: usize) -> &[C64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [C64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[C64]> {
        // chunks_exact panics on a zero chunk size
        self.data.chunks_exact(self.rows.max(1)).take(self.cols)
    }

    /// Column-major backing storage.
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn scale(&mut self, factor: f64) {
        for v in &mut self.data {
            *v *= factor;
        }
    }

    /// Copies the listed columns, in order, into a new matrix.
    pub fn select_columns(&self, indices: &[usize]) -> CMatrix {
        let mut data = Vec::with_capacity(self.rows * indices.len());
        for &j in indices {
            data.extend_from_slice(self.col(j));
        }
        CMatrix {
            rows: self.rows,
            cols: indices.len(),
            data,
        }
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// `self * rhs`.
    pub fn matmul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::mismatch("matmul inner dimension", self.cols, rhs.rows));
        }
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            let dst = &mut out.data[j * self.rows..(j + 1) * self.rows];
            for (k, &coef) in rhs.col(j).iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                axpy(coef, self.col(k), dst);
            }
        }
        Ok(out)
    }

    /// `self * x`.
    pub fn mul_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.cols {
            return Err(Error::mismatch("matrix-vector product", self.cols, x.len()));
        }
        let mut out = vec![C64::zero(); self.rows];
        for (j, &coef) in x.iter().enumerate() {
            if !coef.is_zero() {
                axpy(coef, self.col(j), &mut out);
            }
        }
        Ok(out)
    }

    /// `self^H * y`.
    pub fn adjoint_mul_vec(&self, y: &[C64]) -> Result<Vec<C64>> {
        if y.len() != self.rows {
            return Err(Error::mismatch("adjoint product", self.rows, y.len()));
        }
        Ok(self.columns().map(|c| dot(c, y)).collect())
    }

    /// `self^H * self`.
    pub fn gram(&self) -> CMatrix {
        let n = self.cols;
        let mut g = CMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..=j {
                let v = dot(self.col(i), self.col(j));
                g.set(i, j, v);
                g.set(j, i, v.conj());
            }
        }
        g
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `x^H y`.
pub fn dot(x: &[C64], y: &[C64]) -> C64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        re += a.re * b.re + a.im * b.im;
        im += a.re * b.im - a.im * b.re;
    }
    C64::new(re, im)
}

pub fn norm_sqr(x: &[C64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum()
}

pub fn norm(x: &[C64]) -> f64 {
    norm_sqr(x).sqrt()
}

/// `y += alpha * x`.
pub fn axpy(alpha: C64, x: &[C64], y: &mut [C64]) {
    for (d, s) in y.iter_mut().zip(x) {
        *d += alpha * s;
    }
}

/// Solution of a least-squares sub-problem.
#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquares {
    pub x: Vec<C64>,
    /// True when the ridge fallback was used instead of the QR solve.
    pub regularized: bool,
}

/// Minimizes `||A x - y||_2`.
///
/// Uses Householder QR when `A` is tall and numerically full rank. Otherwise
/// solves the ridge system `(A^H A + w I) x = A^H y` with
/// `w = RIDGE_WEIGHT * trace(A^H A) / cols`.
pub fn lstsq(a: &CMatrix, y: &[C64]) -> Result<LeastSquares> {
    if y.len() != a.rows {
        return Err(Error::mismatch("least-squares rhs", a.rows, y.len()));
    }
    if a.cols == 0 {
        return Ok(LeastSquares {
            x: Vec::new(),
            regularized: false,
        });
    }
    if a.rows >= a.cols {
        if let Some(x) = householder_solve(a, y) {
            return Ok(LeastSquares {
                x,
                regularized: false,
            });
        }
    }
    ridge_solve(a, y).map(|x| LeastSquares {
        x,
        regularized: true,
    })
}

fn householder_solve(a: &CMatrix, y: &[C64]) -> Option<Vec<C64>> {
    let (m, n) = (a.rows, a.cols);
    let mut r = a.clone();
    let mut b = y.to_vec();
    let mut v = vec![C64::zero(); m];
    let mut diag_max: f64 = 0.0;
    let mut diag_min = f64::INFINITY;

    for k in 0..n {
        let x = &r.data[k * m + k..(k + 1) * m];
        let xnorm = norm(x);
        if xnorm == 0.0 {
            return None;
        }
        let x0 = x[0];
        let phase = if x0.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        let len = m - k;
        v[..len].copy_from_slice(x);
        v[0] -= alpha;
        let vnorm = norm(&v[..len]);
        diag_max = diag_max.max(xnorm);
        diag_min = diag_min.min(xnorm);
        if vnorm == 0.0 {
            continue;
        }
        for e in &mut v[..len] {
            *e /= vnorm;
        }
        let v = &v[..len];
        for j in k..n {
            let col = &mut r.data[j * m + k..(j + 1) * m];
            let s = dot(v, col) * 2.0;
            axpy(-s, v, col);
        }
        let s = dot(v, &b[k..]) * 2.0;
        axpy(-s, v, &mut b[k..]);
    }
    if diag_min < RANK_TOLERANCE * diag_max {
        return None;
    }

    let mut x = vec![C64::zero(); n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        for (j, xj) in x.iter().enumerate().skip(i + 1) {
            acc -= r.get(i, j) * xj;
        }
        x[i] = acc / r.get(i, i);
    }
    Some(x)
}

fn ridge_solve(a: &CMatrix, y: &[C64]) -> Result<Vec<C64>> {
    let mut g = a.gram();
    let n = g.cols;
    let trace: f64 = (0..n).map(|i| g.get(i, i).re).sum();
    if !(trace > 0.0) {
        return Err(Error::Singular);
    }
    let ridge = RIDGE_WEIGHT * trace / n as f64;
    for i in 0..n {
        let d = g.get(i, i);
        g.set(i, i, d + ridge);
    }
    let rhs = a.adjoint_mul_vec(y)?;
    cholesky_solve(g, &rhs)
}

/// Solves `G x = rhs` for Hermitian positive definite `G`.
pub fn cholesky_solve(mut g: CMatrix, rhs: &[C64]) -> Result<Vec<C64>> {
    let n = g.rows;
    if g.cols != n {
        return Err(Error::mismatch("cholesky square", n, g.cols));
    }
    if rhs.len() != n {
        return Err(Error::mismatch("cholesky rhs", n, rhs.len()));
    }
    // In-place lower factor: G = L L^H.
    for j in 0..n {
        let mut d = g.get(j, j).re;
        for k in 0..j {
            d -= g.get(j, k).norm_sqr();
        }
        if !(d > 0.0) {
            return Err(Error::Singular);
        }
        let ljj = d.sqrt();
        g.set(j, j, C64::new(ljj, 0.0));
        for i in j + 1..n {
            let mut s = g.get(i, j);
            for k in 0..j {
                s -= g.get(i, k) * g.get(j, k).conj();
            }
            g.set(i, j, s / ljj);
        }
    }
    let mut z = rhs.to_vec();
    for i in 0..n {
        for k in 0..i {
            let l = g.get(i, k);
            z[i] = z[i] - l * z[k];
        }
        z[i] /= g.get(i, i).re;
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            let l = g.get(k, i).conj();
            z[i] = z[i] - l * z[k];
        }
        z[i] /= g.get(i, i).re;
    }
    Ok(z)
}
