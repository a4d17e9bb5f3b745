//! Truncated Toeplitz matrices `A_{jm} = ⟨T e_m, e_j⟩`.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::fock::{normalized_kernel_coeff, FockParams};
use crate::matrix::ComplexMatrix;
use crate::quadrature::{gauss_laguerre, PolarGrid};
use crate::scalar::{ComplexSum, Real};
use crate::special::{gamma_p_interval, gamma_q, ln_factorial, ln_gamma};
use crate::symbols::{RadialProfile, SignedAtomicMeasure, Symbol};

/// Initial Gauss–Laguerre order for radial eigenvalues; doubled on disagreement.
pub const RADIAL_NODES: usize = 96;
const RADIAL_NODES_MAX: usize = 768;
const RADIAL_AGREEMENT: f64 = 1e-8;
const ALIASING_TOLERANCE: f64 = 1e-7;

/// Diagonal `(λ_0, …, λ_{M-1})` of a radial Toeplitz operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSequence<T> {
    pub values: Vec<T>,
    pub params: FockParams<T>,
    pub profile: String,
}

impl<T: Real> EigenSequence<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sup_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// CSV with header `m,lambda`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| FockError::Io(e.to_string());
        w.write_record(["m", "lambda"]).map_err(io)?;
        for (m, v) in self.values.iter().enumerate() {
            w.write_record([m.to_string(), v.to_string()]).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| FockError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| FockError::Io(e.to_string()))
    }
}

/// `λ_m(f) = (1/m!) ∫_0^∞ f(√(t u)) u^m e^{-u} du` for `m < p.dim()`.
pub fn radial_eigenvalues<T: Real>(f: &RadialProfile<T>, p: &FockParams<T>) -> Result<EigenSequence<T>> {
    Ok(EigenSequence {
        values: radial_values(f, p.t(), p.dim())?,
        params: *p,
        profile: format!("radial:{f}"),
    })
}

fn radial_values<T: Real>(f: &RadialProfile<T>, t: T, n: usize) -> Result<Vec<T>> {
    match f {
        RadialProfile::Constant(c) => Ok(vec![*c; n]),
        RadialProfile::Indicator(r) => {
            let x = *r * *r / t;
            Ok((0..n)
                .into_par_iter()
                .map(|m| gamma_p_interval(T::of_usize(m + 1), T::zero(), x))
                .collect())
        }
        RadialProfile::PiecewiseConstant { edges, values, tail } => {
            let u: Vec<T> = edges.iter().map(|e| *e * *e / t).collect();
            Ok((0..n)
                .into_par_iter()
                .map(|m| {
                    let a = T::of_usize(m + 1);
                    let mut acc = crate::scalar::CompensatedSum::new();
                    for (l, v) in values.iter().enumerate() {
                        if *v != T::zero() {
                            acc.add(*v * gamma_p_interval(a, u[l], u[l + 1]));
                        }
                    }
                    if *tail != T::zero() {
                        acc.add(*tail * gamma_q(a, u[u.len() - 1]));
                    }
                    acc.total()
                })
                .collect())
        }
        RadialProfile::Sampled { radii, values } => {
            Ok((0..n).into_par_iter().map(|m| sampled_eigenvalue(radii, values, t, m)).collect())
        }
        RadialProfile::Scaled { factor, base } => {
            Ok(radial_values(base, t, n)?.into_iter().map(|v| v * *factor).collect())
        }
        RadialProfile::Power(_) | RadialProfile::Rational { .. } => (0..n)
            .into_par_iter()
            .map(|m| quadrature_eigenvalue(f, t, m))
            .collect(),
    }
}

/// Exact integral of the piecewise-linear interpolant via incomplete Gamma
/// functions of order `m + 1` (constant part) and `m + 3/2` (linear part).
fn sampled_eigenvalue<T: Real>(radii: &[T], values: &[T], t: T, m: usize) -> T {
    let a = T::of_usize(m + 1);
    let a_half = a + T::of(0.5);
    let half_moment = (ln_gamma(a_half) - ln_gamma(a)).exp() * t.sqrt();
    let u = |r: T| r * r / t;
    let k = radii.len();
    let mut acc = crate::scalar::CompensatedSum::new();
    acc.add(values[0] * gamma_p_interval(a, T::zero(), u(radii[0])));
    for i in 0..k - 1 {
        let (r0, r1) = (radii[i], radii[i + 1]);
        let slope = (values[i + 1] - values[i]) / (r1 - r0);
        let intercept = values[i] - slope * r0;
        let (u0, u1) = (u(r0), u(r1));
        acc.add(intercept * gamma_p_interval(a, u0, u1));
        acc.add(slope * half_moment * gamma_p_interval(a_half, u0, u1));
    }
    acc.add(values[k - 1] * gamma_q(a, u(radii[k - 1])));
    acc.total()
}

fn quadrature_eigenvalue<T: Real>(f: &RadialProfile<T>, t: T, m: usize) -> Result<T> {
    let alpha = T::of_usize(m);
    let eval = |n: usize| -> Result<T> {
        let rule = gauss_laguerre(alpha, n)?;
        Ok(rule.average(|u| f.eval((t * u).sqrt())))
    };
    let mut n = RADIAL_NODES;
    let mut coarse = eval(n)?;
    loop {
        let fine = eval(2 * n)?;
        let diff = (fine - coarse).abs();
        if diff <= T::tol(RADIAL_AGREEMENT, 64.0) * fine.abs().max(T::one()) {
            return Ok(fine);
        }
        if 4 * n > RADIAL_NODES_MAX {
            return Err(FockError::QuadratureNoConvergence(format!(
                "radial eigenvalue m={m}: orders {n} and {} disagree by {diff}",
                2 * n
            )));
        }
        n *= 2;
        coarse = fine;
    }
}

/// What to do when doubling the angle count changes the matrix by more than `1e-7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AliasCheck {
    Error,
    Report,
}

#[derive(Debug, Clone)]
pub struct Assembly<T> {
    pub matrix: ComplexMatrix<T>,
    /// `max |A_{2K} - A_K|` between the two angular resolutions.
    pub alias_disagreement: T,
}

/// Toeplitz matrix of any symbol. Radial profiles take the exact diagonal
/// path and measures the closed form; everything else goes through
/// [`assemble_quadrature`].
pub fn assemble_general<T: Real>(f: &Symbol<T>, p: &FockParams<T>, grid: &PolarGrid<T>) -> Result<ComplexMatrix<T>> {
    Ok(assemble_general_with(f, p, grid, AliasCheck::Error)?.matrix)
}

pub fn assemble_general_with<T: Real>(
    f: &Symbol<T>,
    p: &FockParams<T>,
    grid: &PolarGrid<T>,
    check: AliasCheck,
) -> Result<Assembly<T>> {
    match f {
        Symbol::Radial(profile) => Ok(Assembly {
            matrix: ComplexMatrix::diagonal(&radial_eigenvalues(profile, p)?.values),
            alias_disagreement: T::zero(),
        }),
        Symbol::AtomicMeasure(m) => Ok(Assembly {
            matrix: assemble_measure(m, p)?,
            alias_disagreement: T::zero(),
        }),
        _ => assemble_quadrature(f, p, grid, check),
    }
}

/// Polar-quadrature assembly:
/// `A_{jm} = (m! j!)^{-1/2} ∫_0^∞ u^{(m+j)/2} e^{-u} F_{m-j}(√(tu)) du` where
/// `F_n(r)` is the `n`-th angular Fourier coefficient of `θ ↦ f(r e^{iθ})`.
/// The angular coefficients are computed on `2K` points and on the nested
/// `K`-point subgrid; their disagreement is the aliasing diagnostic.
pub fn assemble_quadrature<T: Real>(
    f: &Symbol<T>,
    p: &FockParams<T>,
    grid: &PolarGrid<T>,
    check: AliasCheck,
) -> Result<Assembly<T>> {
    f.ensure_function()?;
    let dim = p.dim();
    let t = p.t();
    let k_fine = 2 * grid.angles();
    let rule = grid.radial();
    let nodes = rule.nodes();
    let log_w = rule.log_normalized_weights();
    let n_freq = 2 * dim - 1;

    let twiddle: Vec<Complex<T>> = (0..k_fine)
        .map(|q| Complex::from_polar(T::one(), T::TAU() * T::of_usize(q) / T::of_usize(k_fine)))
        .collect();

    // Fourier coefficients F_n(r_i), n = -(dim-1)..=(dim-1), at both resolutions.
    let coeffs: Vec<(Vec<Complex<T>>, Vec<Complex<T>>)> = nodes
        .par_iter()
        .map(|u| {
            let r = (t * *u).sqrt();
            let samples: Vec<Complex<T>> = (0..k_fine).map(|k| f.value(twiddle[k] * r, t)).collect();
            let mut fine = Vec::with_capacity(n_freq);
            let mut coarse = Vec::with_capacity(n_freq);
            for idx in 0..n_freq {
                let n = idx as i64 - (dim as i64 - 1);
                let mut s_fine = ComplexSum::new();
                let mut s_coarse = ComplexSum::new();
                for (k, v) in samples.iter().enumerate() {
                    let q = (n * k as i64).rem_euclid(k_fine as i64) as usize;
                    let term = v * twiddle[q];
                    s_fine.add(term);
                    if k % 2 == 0 {
                        s_coarse.add(term);
                    }
                }
                fine.push(s_fine.total() / T::of_usize(k_fine));
                coarse.push(s_coarse.total() / T::of_usize(k_fine / 2));
            }
            (fine, coarse)
        })
        .collect();

    // phi[i][m] = sqrt(w_i) u_i^{m/2} / sqrt(m!)
    let ln_fact: Vec<T> = (0..dim).map(ln_factorial).collect();
    let half = T::of(0.5);
    let phi: Vec<Vec<T>> = nodes
        .iter()
        .zip(log_w)
        .map(|(u, lw)| {
            let ln_u = u.ln();
            (0..dim)
                .map(|m| (half * *lw + half * (T::of_usize(m) * ln_u - ln_fact[m])).exp())
                .collect()
        })
        .collect();

    let rows: Vec<(Vec<Complex<T>>, T)> = (0..dim)
        .into_par_iter()
        .map(|j| {
            let mut row = Vec::with_capacity(dim);
            let mut worst = T::zero();
            for m in 0..dim {
                let idx = m + dim - 1 - j;
                let mut fine = ComplexSum::new();
                let mut coarse = ComplexSum::new();
                for (i, (cf, cc)) in coeffs.iter().enumerate() {
                    let g = phi[i][m] * phi[i][j];
                    fine.add(cf[idx] * g);
                    coarse.add(cc[idx] * g);
                }
                let value = fine.total();
                worst = worst.max((value - coarse.total()).norm());
                row.push(value);
            }
            (row, worst)
        })
        .collect();

    let alias_disagreement = rows.iter().fold(T::zero(), |m, (_, w)| m.max(*w));
    if check == AliasCheck::Error && alias_disagreement > T::tol(ALIASING_TOLERANCE, 64.0) {
        return Err(FockError::AngularAliasing { disagreement: alias_disagreement.as_f64() });
    }
    let entries = rows.into_iter().flat_map(|(r, _)| r).collect();
    let mut matrix = ComplexMatrix::new(dim, entries)?;
    if f.is_real() {
        matrix = matrix.hermitian_part();
    }
    Ok(Assembly { matrix, alias_disagreement })
}

/// Unitary Weyl operator `W_z` in the basis `(e_m)`:
/// for `j >= m`, `⟨W_z e_m, e_j⟩ = e^{-x/2} √(m!/j!) (z̄/√t)^{j-m} L_m^{(j-m)}(x)`,
/// for `j < m`, `e^{-x/2} √(j!/m!) (-z/√t)^{m-j} L_j^{(m-j)}(x)`, with `x = |z|²/t`.
/// The associated Laguerre values come from the forward three-term recurrence.
pub fn weyl_operator<T: Real>(z: Complex<T>, p: &FockParams<T>) -> Result<ComplexMatrix<T>> {
    let dim = p.dim();
    let t = p.t();
    if z.norm_sqr() == T::zero() {
        return Ok(ComplexMatrix::identity(dim));
    }
    let x = z.norm_sqr() / t;
    let ln_fact: Vec<T> = (0..dim).map(ln_factorial).collect();
    let ln_scaled = (z.norm() / t.sqrt()).ln();
    let upper_phase = z.conj().arg();
    let lower_phase = (-z).arg();
    let half = T::of(0.5);
    let mut entries = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for d in 0..dim {
        let df = T::of_usize(d);
        let (mut prev, mut cur) = (T::zero(), T::one());
        for n in 0..dim - d {
            if n == 1 {
                prev = T::one();
                cur = T::one() + df - x;
            } else if n > 1 {
                let nf = T::of_usize(n - 1);
                let next = ((T::of(2.0) * nf + T::one() + df - x) * cur - (nf + df) * prev) / (nf + T::one());
                prev = cur;
                cur = next;
            }
            if !cur.is_finite() {
                return Err(FockError::invalid("Laguerre recurrence overflowed; reduce the dimension"));
            }
            if cur == T::zero() {
                continue;
            }
            let log_mag = -half * x + half * (ln_fact[n] - ln_fact[n + d]) + df * ln_scaled + cur.abs().ln();
            let sign = if cur < T::zero() { -T::one() } else { T::one() };
            let mag = sign * log_mag.exp();
            // (j, m) = (n + d, n) below the diagonal, (n, n + d) above it.
            entries[(n + d) * dim + n] = Complex::from_polar(mag, df * upper_phase);
            if d > 0 {
                entries[n * dim + n + d] = Complex::from_polar(mag, df * lower_phase);
            }
        }
    }
    ComplexMatrix::new(dim, entries)
}

/// `T_{h_z} = e^{-|z|²/(2t)} W_z` for the Weyl phase symbol `h_z`.
pub fn assemble_weyl_phase<T: Real>(z: Complex<T>, p: &FockParams<T>) -> Result<ComplexMatrix<T>> {
    let factor = (-z.norm_sqr() / (T::of(2.0) * p.t())).exp();
    Ok(weyl_operator(z, p)?.scale(Complex::new(factor, T::zero())))
}

/// `A_{jm} = (πt)^{-1} Σ_i w_i e^{-|p_i|²/t} p_i^m p̄_i^j / √(t^{m+j} m! j!)`.
pub fn assemble_measure<T: Real>(m: &SignedAtomicMeasure<T>, p: &FockParams<T>) -> Result<ComplexMatrix<T>> {
    let dim = p.dim();
    let scale = (T::PI() * p.t()).recip();
    let coeffs: Vec<(T, Vec<Complex<T>>)> = m
        .atoms()
        .iter()
        .map(|a| {
            let c = (0..dim).map(|k| normalized_kernel_coeff(k, a.position, p)).collect();
            (a.weight * scale, c)
        })
        .collect();
    let mut entries = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        for col in 0..dim {
            let mut acc = ComplexSum::new();
            for (w, c) in &coeffs {
                // c_k(p) = e^{-|p|²/(2t)} p̄^k / √(t^k k!)
                acc.add(c[col].conj() * c[j] * *w);
            }
            entries.push(acc.total());
        }
    }
    ComplexMatrix::new(dim, entries)
}
