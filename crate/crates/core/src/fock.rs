//! Fock-space primitives: parameters, reproducing kernels and their
//! coefficients in the monomial orthonormal basis `e_m(w) = w^m / √(t^m m!)`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::scalar::Real;
use crate::special::{ln_factorial, poisson_tail};

/// Gaussian weight parameter `t` and basis truncation `dim`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockParams<T> {
    t: T,
    dim: usize,
}

impl<T: Real> FockParams<T> {
    pub fn new(t: T, dim: usize) -> Result<Self> {
        if !(t > T::zero()) || !t.is_finite() {
            return Err(FockError::invalid(format!("t must be positive and finite, got {t}")));
        }
        if dim == 0 {
            return Err(FockError::invalid("truncation dimension must be at least 1"));
        }
        Ok(Self { t, dim })
    }

    pub fn t(&self) -> T {
        self.t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        Self::new(self.t, dim)
    }
}

/// Reproducing kernel `K_z(w) = e^{w z̄ / t}`.
pub fn kernel<T: Real>(z: Complex<T>, w: Complex<T>, p: &FockParams<T>) -> Complex<T> {
    (w * z.conj() / p.t()).exp()
}

/// Normalized kernel `k_z(w) = e^{w z̄/t - |z|²/(2t)}`.
pub fn normalized_kernel<T: Real>(z: Complex<T>, w: Complex<T>, p: &FockParams<T>) -> Complex<T> {
    (w * z.conj() / p.t() - Complex::from(z.norm_sqr() / (T::of(2.0) * p.t()))).exp()
}

/// `c_m(z) = ⟨k_z, e_m⟩ = e^{-|z|²/(2t)} z̄^m / √(t^m m!)`, assembled from its
/// log-magnitude and phase.
pub fn normalized_kernel_coeff<T: Real>(m: usize, z: Complex<T>, p: &FockParams<T>) -> Complex<T> {
    let t = p.t();
    let x = z.norm_sqr() / t;
    if m == 0 {
        return Complex::from((-x / T::of(2.0)).exp());
    }
    if z.norm_sqr() == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    let mf = T::of_usize(m);
    let log_mag = -x / T::of(2.0) + mf * z.norm().ln()
        - T::of(0.5) * (mf * t.ln() + ln_factorial::<T>(m));
    Complex::from_polar(log_mag.exp(), -mf * z.arg())
}

/// `(c_0(z), …, c_{n-1}(z))`.
pub fn kernel_coeffs<T: Real>(z: Complex<T>, n: usize, p: &FockParams<T>) -> Vec<Complex<T>> {
    (0..n).map(|m| normalized_kernel_coeff(m, z, p)).collect()
}

/// Mass of `|c_m(z)|²` beyond index `n`: the Poisson tail with mean `|z|²/t`.
pub fn coefficient_tail<T: Real>(z: Complex<T>, n: usize, p: &FockParams<T>) -> T {
    poisson_tail(n, z.norm_sqr() / p.t())
}

/// Smallest `M >= 1` whose Poisson(s²/t) tail `Σ_{m>=M}` is below `eps`.
pub fn truncation_dim<T: Real>(s: T, t: T, eps: T) -> usize {
    let lambda = s * s / t;
    let mut m = 1usize;
    // The tail is monotone in M; skip the bulk below the mean.
    let start = lambda.floor().to_usize().unwrap_or(0);
    if start > 1 && poisson_tail(start, lambda) >= eps {
        m = start;
    }
    while poisson_tail(m, lambda) >= eps {
        m += 1;
    }
    m
}
