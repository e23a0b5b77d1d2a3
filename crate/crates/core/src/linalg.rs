//! Small dense linear algebra: complex square matrices and a Jacobi
//! eigenvalue solver for real symmetric matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_traits::Float;

/// Row-major complex `n × n` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(n: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), n * n);
        Matrix { n, data }
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        let n = self.n;
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    m.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        m
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

/// Eigenvalues of a real symmetric row-major `n × n` matrix, ascending.
/// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    let total: f64 = a.iter().map(|x| x * x).sum();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        if off <= 1e-30 * total.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let (app, aqq) = (a[p * n + p], a[q * n + q]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + Float::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / Float::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    ev
}

/// Number of eigenvalues above `relative · max |λ|`.
pub fn symmetric_rank(a: Vec<f64>, n: usize, relative: f64) -> usize {
    let ev = symmetric_eigenvalues(a, n);
    let top = ev.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if top == 0.0 {
        return 0;
    }
    ev.iter().filter(|x| x.abs() > relative * top).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_on_known_spectrum() {
        // Path graph P3 has eigenvalues -√2, 0, √2.
        let ev = symmetric_eigenvalues(vec![0., 1., 0., 1., 0., 1., 0., 1., 0.], 3);
        let r2 = core::f64::consts::SQRT_2;
        for (a, b) in ev.iter().zip([-r2, 0.0, r2]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(symmetric_rank(vec![0., 1., 0., 1., 0., 1., 0., 1., 0.], 3, 1e-8), 2);
        assert_eq!(symmetric_rank(vec![0.0; 4], 2, 1e-8), 0);
    }

    #[test]
    fn rank_of_outer_products() {
        // Sum of k rank-one symmetric matrices with independent vectors has rank k.
        let n = 6;
        let vs: Vec<Vec<f64>> = (0..4).map(|k| (0..n).map(|i| ((i * 7 + k * 3) % 5) as f64 - 2.0 + k as f64 * 0.1).collect()).collect();
        let mut a = vec![0.0; n * n];
        for v in &vs {
            for i in 0..n {
                for j in 0..n {
                    a[i * n + j] += v[i] * v[j];
                }
            }
        }
        assert_eq!(symmetric_rank(a, n, 1e-8), 4);
    }

    #[test]
    fn matrix_basics() {
        let i2 = Matrix::identity(2);
        assert_eq!((&i2 * &i2), i2);
        assert_eq!(i2.trace(), Complex64::new(2.0, 0.0));
        let v = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let p = Matrix::outer(&v);
        assert!((&p * &p).max_abs_diff(&p) < 1e-12);
        assert!(p.adjoint().max_abs_diff(&p) < 1e-12);
    }
}
