//! Small dense Hermitian matrices with a cyclic Jacobi eigensolver.
//!
//! Block recovery only ever deals with `K x K` matrices for small `K`, so a
//! self-contained Jacobi diagonalization is plenty: it is unconditionally
//! stable for Hermitian input and gives eigenvectors for free.

use num_complex::Complex64;

/// Dense Hermitian matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

/// Eigendecomposition sorted by descending eigenvalue magnitude.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Real eigenvalues, `|values[0]| >= |values[1]| >= ...`.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors; `vectors[i]` pairs with `values[i]`.
    pub vectors: Vec<Vec<Complex64>>,
}

impl HermitianMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Rank-one outer product `x x*`.
    pub fn from_outer(x: &[Complex64]) -> Self {
        let mut q = Self::zeros(x.len());
        for i in 0..x.len() {
            for j in i..x.len() {
                q.set_sym(i, j, x[i] * x[j].conj());
            }
        }
        q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    /// Set entry `(i, j)` and its conjugate mirror; diagonal entries are
    /// forced real.
    pub fn set_sym(&mut self, i: usize, j: usize, value: Complex64) {
        if i == j {
            self.data[i * self.dim + j] = Complex64::new(value.re, 0.0);
        } else {
            self.data[i * self.dim + j] = value;
            self.data[j * self.dim + i] = value.conj();
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// Full eigendecomposition by cyclic complex Jacobi rotations.
    pub fn eigen(&self) -> HermitianEigen {
        let n = self.dim;
        let mut a = self.clone();
        // Eigenvector accumulator, starts as identity.
        let mut v = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for (i, row) in v.iter_mut().enumerate() {
            row[i] = Complex64::new(1.0, 0.0);
        }
        let scale = self.frobenius_norm().max(f64::MIN_POSITIVE);
        let tol = 1e-15 * scale;

        for _sweep in 0..60 {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a.get(p, q).norm_sqr();
                }
            }
            if off.sqrt() <= tol {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.get(p, q);
                    let magnitude = apq.norm();
                    if magnitude <= tol / (n as f64) {
                        continue;
                    }
                    let app = a.get(p, p).re;
                    let aqq = a.get(q, q).re;
                    let phase = apq / magnitude;
                    // tan(2 theta) = 2|apq| / (aqq - app) zeroes the pivot.
                    let theta = 0.5 * (2.0 * magnitude).atan2(aqq - app);
                    let c = theta.cos();
                    let sig = theta.sin();
                    let s = phase * sig;

                    for i in 0..n {
                        if i == p || i == q {
                            continue;
                        }
                        let aip = a.get(i, p);
                        let aiq = a.get(i, q);
                        a.set_sym(i, p, c * aip - s.conj() * aiq);
                        a.set_sym(i, q, s * aip + c * aiq);
                    }
                    let new_pp = c * c * app - 2.0 * c * sig * magnitude + sig * sig * aqq;
                    let new_qq = sig * sig * app + 2.0 * c * sig * magnitude + c * c * aqq;
                    a.set_sym(p, p, Complex64::new(new_pp, 0.0));
                    a.set_sym(q, q, Complex64::new(new_qq, 0.0));
                    a.set_sym(p, q, Complex64::new(0.0, 0.0));

                    for row in v.iter_mut() {
                        let vip = row[p];
                        let viq = row[q];
                        row[p] = c * vip - s.conj() * viq;
                        row[q] = s * vip + c * viq;
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            a.get(j, j)
                .re
                .abs()
                .partial_cmp(&a.get(i, i).re.abs())
                .unwrap()
        });
        HermitianEigen {
            values: order.iter().map(|&i| a.get(i, i).re).collect(),
            vectors: order
                .iter()
                .map(|&col| (0..n).map(|row| v[row][col]).collect())
                .collect(),
        }
    }

    /// `|lambda_2| / trace`: how far the matrix is from rank one. Zero for an
    /// exact outer product, and defined as 0 when the trace vanishes.
    pub fn rank_one_residual(&self) -> f64 {
        let trace = self.trace();
        if trace.abs() <= f64::MIN_POSITIVE {
            return 0.0;
        }
        let eig = self.eigen();
        if eig.values.len() < 2 {
            return 0.0;
        }
        eig.values[1].abs() / trace.abs()
    }
}
