//! Minimal dense complex matrix support: products, adjoints and
//! determinants of the small matrices appearing in exterior-power lifts.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A dense square complex matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Permutation matrix: column j carries a 1 in row perm[j]-1
    /// (1-based images), so that e_j maps to e_{perm[j]}.
    pub fn permutation(perm: &[u8]) -> Self {
        let n = perm.len();
        let mut m = CMatrix::zeros(n);
        for (j, &img) in perm.iter().enumerate() {
            m[(img as usize - 1, j)] = Complex64::ONE;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.n != other.n {
            return Err(Error::MatrixSizeMismatch {
                expected: self.n,
                rows: other.n,
                cols: other.n,
            });
        }
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self[(i, l)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(l, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    /// Determinant of the submatrix with the given (0-based) rows and
    /// columns, by LU with partial pivoting.
    pub fn submatrix_det(&self, rows: &[usize], cols: &[usize]) -> Complex64 {
        debug_assert_eq!(rows.len(), cols.len());
        let k = rows.len();
        let mut a: Vec<Complex64> = Vec::with_capacity(k * k);
        for &r in rows {
            for &c in cols {
                a.push(self[(r, c)]);
            }
        }
        det_in_place(&mut a, k)
    }

    pub fn det(&self) -> Complex64 {
        let mut a = self.data.clone();
        det_in_place(&mut a, self.n)
    }

    /// Max entrywise deviation from the identity; used for unitarity checks.
    pub fn deviation_from_identity(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let target = if i == j {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                dev = dev.max((self[(i, j)] - target).norm());
            }
        }
        dev
    }
}

fn det_in_place(a: &mut [Complex64], k: usize) -> Complex64 {
    if k == 0 {
        return Complex64::ONE;
    }
    let mut det = Complex64::ONE;
    for col in 0..k {
        let pivot_row = (col..k)
            .max_by(|&i, &j| {
                a[i * k + col]
                    .norm_sqr()
                    .partial_cmp(&a[j * k + col].norm_sqr())
                    .unwrap()
            })
            .unwrap();
        if a[pivot_row * k + col] == Complex64::ZERO {
            return Complex64::ZERO;
        }
        if pivot_row != col {
            for j in 0..k {
                a.swap(col * k + j, pivot_row * k + j);
            }
            det = -det;
        }
        let pivot = a[col * k + col];
        det *= pivot;
        for i in (col + 1)..k {
            let factor = a[i * k + col] / pivot;
            for j in col..k {
                let sub = factor * a[col * k + j];
                a[i * k + j] -= sub;
            }
        }
    }
    det
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}
