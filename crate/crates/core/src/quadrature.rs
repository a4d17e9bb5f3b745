//! Gaussian quadrature via the Golub–Welsch eigenproblem, plus the polar
//! product grid used for integrals against the Gaussian weight on ℂ.

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{FockError, Result};
use crate::scalar::{ComplexSum, Real};
use crate::special::ln_gamma;

const QL_MAX_ITERATIONS: usize = 50;

/// Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL.
///
/// `diag` has length `n`; `offdiag[i]` couples rows `i` and `i + 1` (length `n - 1`).
/// Returns eigenvalues in ascending order.
pub fn tridiagonal_eigenvalues<T: Real>(diag: &[T], offdiag: &[T]) -> Result<Vec<T>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if offdiag.len() + 1 != n {
        return Err(FockError::invalid("off-diagonal must have length n - 1"));
    }
    let tol = T::tol(1e-14, 2.0);
    let two = T::of(2.0);
    let mut d = diag.to_vec();
    let mut e: Vec<T> = offdiag.to_vec();
    e.push(T::zero());

    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= tol * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > QL_MAX_ITERATIONS {
                return Err(FockError::TridiagonalNoConvergence {
                    index: l,
                    iterations: QL_MAX_ITERATIONS,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            let signed_r = if g >= T::zero() { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + signed_r);
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(d)
}

/// Three-term recurrence data of a family of orthonormal polynomials:
/// `b[k+1] p_{k+1} = (x - a[k]) p_k - b[k] p_{k-1}` with `p_0 = 1` for the
/// weight normalized to unit mass.
struct Recurrence<'a, T> {
    a: &'a [T],
    b: &'a [T], // b[0] unused, b[k] for k = 1..n-1
}

struct RecurrenceValue<T> {
    /// Monic-scaled `p_n(x)` (up to a positive factor) and its derivative.
    value: T,
    derivative: T,
    /// `ln Σ_{k<n} p_k(x)^2`.
    ln_christoffel: T,
}

impl<T: Real> Recurrence<'_, T> {
    fn evaluate(&self, x: T) -> RecurrenceValue<T> {
        let n = self.a.len();
        let limit = T::max_value().sqrt().sqrt();
        let limit_sq = limit * limit;
        let (mut p_prev, mut p) = (T::zero(), T::one());
        let (mut dp_prev, mut dp) = (T::zero(), T::zero());
        let mut sum = T::one();
        let mut log_scale = T::zero();
        for k in 0..n - 1 {
            let bk = if k == 0 { T::zero() } else { self.b[k] };
            let next = ((x - self.a[k]) * p - bk * p_prev) / self.b[k + 1];
            let dnext = (p + (x - self.a[k]) * dp - bk * dp_prev) / self.b[k + 1];
            p_prev = p;
            p = next;
            dp_prev = dp;
            dp = dnext;
            sum += p * p;
            if p.abs() > limit || dp.abs() > limit {
                p /= limit;
                p_prev /= limit;
                dp /= limit;
                dp_prev /= limit;
                sum /= limit_sq;
                log_scale += limit.ln();
            }
        }
        let k = n - 1;
        let bk = if k == 0 { T::zero() } else { self.b[k] };
        let value = (x - self.a[k]) * p - bk * p_prev;
        let derivative = p + (x - self.a[k]) * dp - bk * dp_prev;
        RecurrenceValue {
            value,
            derivative,
            ln_christoffel: sum.ln() + T::of(2.0) * log_scale,
        }
    }
}

/// Nodes and log normalized weights (summing to one) from recurrence coefficients.
fn golub_welsch<T: Real>(a: &[T], b: &[T]) -> Result<(Vec<T>, Vec<T>)> {
    let n = a.len();
    let mut nodes = tridiagonal_eigenvalues(a, &b[1..])?;
    let rec = Recurrence { a, b };
    let polish_tol = T::tol(1e-6, 1e8);
    let mut log_weights = Vec::with_capacity(n);
    for (i, x) in nodes.iter_mut().enumerate() {
        for _ in 0..3 {
            let v = rec.evaluate(*x);
            if v.derivative == T::zero() {
                break;
            }
            let step = v.value / v.derivative;
            if !step.is_finite() || step.abs() > polish_tol * (T::one() + x.abs()) {
                break;
            }
            *x -= step;
            if step.abs() <= T::epsilon() * x.abs() {
                break;
            }
        }
        let ln_c = rec.evaluate(*x).ln_christoffel;
        if !ln_c.is_finite() {
            return Err(FockError::QuadratureNoConvergence(format!(
                "non-finite Christoffel sum at node {i}"
            )));
        }
        log_weights.push(-ln_c);
    }
    Ok((nodes, log_weights))
}

/// A Gaussian rule for `∫_0^∞ q(u) u^α e^{-u} du`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    alpha: T,
    nodes: Vec<T>,
    /// Weights normalized to unit total mass, in log form.
    log_weights: Vec<T>,
    /// `ln Γ(α + 1)`, the total mass of the weight.
    log_mass: T,
}

impl<T: Real> QuadratureRule<T> {
    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn log_normalized_weights(&self) -> &[T] {
        &self.log_weights
    }

    pub fn normalized_weights(&self) -> Vec<T> {
        self.log_weights.iter().map(|w| w.exp()).collect()
    }

    /// Weights of `u^α e^{-u}`; they sum to `Γ(α + 1)`.
    pub fn weights(&self) -> Vec<T> {
        self.log_weights
            .iter()
            .map(|w| (*w + self.log_mass).exp())
            .collect()
    }

    /// `∫_0^∞ f(u) u^α e^{-u} du`.
    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        self.log_mass.exp() * self.average(f)
    }

    /// `∫ f(u) u^α e^{-u} du / Γ(α + 1)`.
    pub fn average(&self, f: impl Fn(T) -> T) -> T {
        let mut acc = crate::scalar::CompensatedSum::new();
        for (x, lw) in self.nodes.iter().zip(&self.log_weights) {
            acc.add(lw.exp() * f(*x));
        }
        acc.total()
    }
}

/// Generalized Gauss–Laguerre rule with weight `u^α e^{-u}` and `n` nodes.
pub fn gauss_laguerre<T: Real>(alpha: T, n: usize) -> Result<QuadratureRule<T>> {
    if n == 0 {
        return Err(FockError::invalid("quadrature order must be at least 1"));
    }
    if !(alpha >= T::zero()) || !alpha.is_finite() {
        return Err(FockError::invalid("Laguerre exponent must be finite and nonnegative"));
    }
    let a: Vec<T> = (0..n)
        .map(|k| T::of_usize(2 * k + 1) + alpha)
        .collect();
    let b: Vec<T> = (0..n)
        .map(|k| (T::of_usize(k) * (T::of_usize(k) + alpha)).sqrt())
        .collect();
    let (nodes, log_weights) = golub_welsch(&a, &b)?;
    Ok(QuadratureRule {
        alpha,
        nodes,
        log_weights,
        log_mass: ln_gamma(alpha + T::one()),
    })
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(n: usize) -> Result<(Vec<T>, Vec<T>)> {
    if n == 0 {
        return Err(FockError::invalid("quadrature order must be at least 1"));
    }
    let a = vec![T::zero(); n];
    let b: Vec<T> = (0..n)
        .map(|k| {
            if k == 0 {
                return T::zero();
            }
            let k = T::of_usize(k);
            k / (T::of(4.0) * k * k - T::one()).sqrt()
        })
        .collect();
    let (nodes, log_weights) = golub_welsch(&a, &b)?;
    let two = T::of(2.0);
    Ok((nodes, log_weights.iter().map(|w| two * w.exp()).collect()))
}

#[derive(Serialize, Deserialize)]
struct RuleWire<T> {
    alpha: T,
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> Serialize for QuadratureRule<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RuleWire {
            alpha: self.alpha,
            nodes: self.nodes.clone(),
            weights: self.weights(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: Real> Deserialize<'de> for QuadratureRule<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = RuleWire::<T>::deserialize(deserializer)?;
        if wire.nodes.len() != wire.weights.len() || wire.nodes.is_empty() {
            return Err(serde::de::Error::custom("nodes and weights must be nonempty and of equal length"));
        }
        let mass: T = wire.weights.iter().copied().sum();
        let log_mass = mass.ln();
        Ok(QuadratureRule {
            alpha: wire.alpha,
            log_weights: wire.weights.iter().map(|w| w.ln() - log_mass).collect(),
            nodes: wire.nodes,
            log_mass,
        })
    }
}

/// Product grid for averages against the Gaussian `(πt)^{-1} e^{-|w-c|²/t} dw`:
/// radial Gauss–Laguerre in `u = |w-c|²/t` times `K` equispaced angles.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid<T> {
    radial: QuadratureRule<T>,
    angles: usize,
}

impl<T: Real> PolarGrid<T> {
    pub fn new(radial_nodes: usize, angles: usize) -> Result<Self> {
        if angles < 4 || angles % 2 != 0 {
            return Err(FockError::invalid("angle count must be even and at least 4"));
        }
        Ok(Self {
            radial: gauss_laguerre(T::zero(), radial_nodes)?,
            angles,
        })
    }

    /// Default grid for an `m`-dimensional truncation: `K = 4m` angles.
    pub fn for_dim(dim: usize) -> Result<Self> {
        Self::new((dim + 48).max(64), (4 * dim).max(8))
    }

    pub fn radial(&self) -> &QuadratureRule<T> {
        &self.radial
    }

    pub fn angles(&self) -> usize {
        self.angles
    }

    /// Same grid with the radial order and angle count doubled.
    pub fn refined(&self) -> Result<Self> {
        Self::new(2 * self.radial.order(), 2 * self.angles)
    }

    /// Angles `2π(k + 1/2)/K`; the half-step keeps nodes off the coordinate axes.
    pub fn angle(&self, k: usize) -> T {
        T::TAU() * (T::of_usize(k) + T::of(0.5)) / T::of_usize(self.angles)
    }

    /// Average of `f` against the Gaussian probability measure centred at `center`.
    pub fn gaussian_average(
        &self,
        center: Complex<T>,
        t: T,
        f: impl Fn(Complex<T>) -> Complex<T>,
    ) -> Complex<T> {
        let k_inv = T::of_usize(self.angles).recip();
        let dirs: Vec<Complex<T>> = (0..self.angles)
            .map(|k| Complex::from_polar(T::one(), self.angle(k)))
            .collect();
        let mut acc = ComplexSum::new();
        for (u, lw) in self.radial.nodes.iter().zip(&self.radial.log_weights) {
            let r = (t * *u).sqrt();
            let mut ring = ComplexSum::new();
            for d in &dirs {
                ring.add(f(center + d * r));
            }
            acc.add(ring.total() * (lw.exp() * k_inv));
        }
        acc.total()
    }

    /// Discrete `⟨f, g⟩` in `L²(μ_t)`.
    pub fn inner_product(
        &self,
        t: T,
        f: impl Fn(Complex<T>) -> Complex<T>,
        g: impl Fn(Complex<T>) -> Complex<T>,
    ) -> Complex<T> {
        self.gaussian_average(Complex::new(T::zero(), T::zero()), t, |w| f(w) * g(w).conj())
    }
}
