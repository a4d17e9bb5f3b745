//! Dense complex matrices holding truncated operators in the basis `(e_m)`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::scalar::{ComplexSum, Real};

/// Row-major `dim × dim` complex matrix; entry `(j, m)` is `⟨A e_m, e_j⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
    hermitian: bool,
}

fn hermitian_tol<T: Real>() -> T {
    T::tol(1e-12, 64.0)
}

impl<T: Real> ComplexMatrix<T> {
    pub fn new(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(FockError::invalid(format!(
                "expected {} entries for dimension {dim}, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(FockError::invalid("matrix entries must be finite"));
        }
        let mut a = Self { dim, entries, hermitian: false };
        a.hermitian = a.hermitian_deviation() < hermitian_tol();
        Ok(a)
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Result<Self> {
        let mut entries = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for m in 0..dim {
                entries.push(f(j, m));
            }
        }
        Self::new(dim, entries)
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![T::one(); dim])
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex::new(T::zero(), T::zero()); dim * dim],
            hermitian: true,
        }
    }

    pub fn diagonal(values: &[T]) -> Self {
        let mut a = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            a.entries[i * a.dim + i] = Complex::new(*v, T::zero());
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn get(&self, j: usize, m: usize) -> Complex<T> {
        self.entries[j * self.dim + m]
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// `max |A - A^H|`.
    pub fn hermitian_deviation(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for j in 0..n {
            for m in j..n {
                worst = worst.max((self.get(j, m) - self.get(m, j).conj()).norm());
            }
        }
        worst
    }

    /// `(A + A^H) / 2`, exactly Hermitian.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        let half = T::of(0.5);
        let mut out = self.clone();
        for j in 0..n {
            out.entries[j * n + j] = Complex::new(self.get(j, j).re, T::zero());
            for m in j + 1..n {
                let v = (self.get(j, m) + self.get(m, j).conj()) * half;
                out.entries[j * n + m] = v;
                out.entries[m * n + j] = v.conj();
            }
        }
        out.hermitian = true;
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for j in 0..n {
            for m in 0..n {
                out.entries[m * n + j] = self.get(j, m).conj();
            }
        }
        out
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let entries: Vec<_> = self.entries.iter().map(|z| z * c).collect();
        let hermitian = self.hermitian && c.im == T::zero();
        Self { dim: self.dim, entries, hermitian }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(FockError::invalid("dimension mismatch in matrix product"));
        }
        let n = self.dim;
        let mut entries = vec![Complex::new(T::zero(), T::zero()); n * n];
        for j in 0..n {
            let row = &mut entries[j * n..(j + 1) * n];
            for k in 0..n {
                let a = self.get(j, k);
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for (m, out) in row.iter_mut().enumerate() {
                    *out += a * other.get(k, m);
                }
            }
        }
        Self::new(n, entries)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(FockError::invalid("dimension mismatch in matrix difference"));
        }
        Self::new(
            self.dim,
            self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        )
    }

    /// Upper-left `k × k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        let k = k.min(self.dim);
        let mut entries = Vec::with_capacity(k * k);
        for j in 0..k {
            entries.extend_from_slice(&self.entries[j * self.dim..j * self.dim + k]);
        }
        let mut out = Self { dim: k, entries, hermitian: false };
        out.hermitian = self.hermitian || out.hermitian_deviation() < hermitian_tol();
        out
    }

    pub fn max_abs(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// `⟨A x, y⟩ = Σ_{j,m} A_{jm} x_m conj(y_j)`.
    pub fn sesquilinear(&self, x: &[Complex<T>], y: &[Complex<T>]) -> Complex<T> {
        let n = self.dim;
        let mut acc = ComplexSum::new();
        for j in 0..n.min(y.len()) {
            let mut row = ComplexSum::new();
            for m in 0..n.min(x.len()) {
                row.add(self.get(j, m) * x[m]);
            }
            acc.add(row.total() * y[j].conj());
        }
        acc.total()
    }
}

/// JSON form `{"dim", "t", "hermitian", "entries": [[re, im], …]}`, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile<T> {
    pub dim: usize,
    pub t: T,
    pub hermitian: bool,
    pub entries: Vec<[T; 2]>,
}

impl<T: Real> MatrixFile<T> {
    pub fn from_matrix(a: &ComplexMatrix<T>, t: T) -> Self {
        Self {
            dim: a.dim(),
            t,
            hermitian: a.is_hermitian(),
            entries: a.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// The stored `hermitian` flag is recomputed from the entries.
    pub fn to_matrix(&self) -> Result<ComplexMatrix<T>> {
        ComplexMatrix::new(
            self.dim,
            self.entries.iter().map(|[re, im]| Complex::new(*re, *im)).collect(),
        )
    }
}
