//! Eigenvalues, singular values, essential spectra and essential-positivity verdicts.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::berezin::heat_transform_symbol;
use crate::error::{FockError, Result};
use crate::fock::FockParams;
use crate::matrix::ComplexMatrix;
use crate::quadrature::PolarGrid;
use crate::scalar::Real;
use crate::symbols::{translate, vo_modulus, RadialProfile, Symbol};
use crate::toeplitz::{assemble_general_with, radial_eigenvalues, AliasCheck, EigenSequence};

const JACOBI_SWEEPS: usize = 30;
/// Shell samples used by the VO and symbol-liminf modes.
const SHELL_ANGLES: usize = 32;
/// Grid density handed to `vo_modulus`.
const VO_DENSITY: usize = 64;
/// Largest local oscillation accepted at the outermost VO radius.
pub const VO_OSCILLATION_LIMIT: f64 = 0.05;

/// Ascending eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn hermitian_eigs<T: Real>(a: &ComplexMatrix<T>) -> Result<Vec<T>> {
    if !a.is_hermitian() {
        return Err(FockError::NotHermitian { deviation: a.hermitian_deviation().as_f64() });
    }
    let n = a.dim();
    let mut m: Vec<Complex<T>> = a.entries().to_vec();
    let target = T::of(1e-12) * a.frobenius_norm();
    let off = |m: &[Complex<T>]| -> T {
        let mut s = T::zero();
        for j in 0..n {
            for k in 0..n {
                if j != k {
                    s += m[j * n + k].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    loop {
        let residual = off(&m);
        if residual <= target {
            break;
        }
        if sweeps == JACOBI_SWEEPS {
            return Err(FockError::JacobiNoConvergence { sweeps, off_norm: residual.as_f64() });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                let mag = apq.norm();
                if mag == T::zero() {
                    continue;
                }
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                let phase = apq / mag;
                let theta = (aqq - app) / (T::of(2.0) * mag);
                let tan = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = (tan * tan + T::one()).sqrt().recip();
                let s = tan * c;
                // J = [[c, s], [-s·conj(φ), c·conj(φ)]] on coordinates (p, q).
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;
                for k in 0..n {
                    let (kp, kq) = (m[k * n + p], m[k * n + q]);
                    m[k * n + p] = kp * c + kq * jqp;
                    m[k * n + q] = kp * s + kq * jqq;
                }
                for k in 0..n {
                    let (pk, qk) = (m[p * n + k], m[q * n + k]);
                    m[p * n + k] = pk * c + qk * jqp.conj();
                    m[q * n + k] = pk * s + qk * jqq.conj();
                }
                m[p * n + q] = Complex::new(T::zero(), T::zero());
                m[q * n + p] = Complex::new(T::zero(), T::zero());
                m[p * n + p].im = T::zero();
                m[q * n + q].im = T::zero();
            }
        }
    }
    let mut ev: Vec<T> = (0..n).map(|j| m[j * n + j].re).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    Ok(ev)
}

/// Ascending singular values, `√eig(AᴴA)` clamped at zero.
pub fn singular_values<T: Real>(a: &ComplexMatrix<T>) -> Result<Vec<T>> {
    gram_roots(&a.adjoint().matmul(a)?)
}

/// Singular values of the leading `k` columns restricted to the leading `k`
/// rows of `AᴴA`, i.e. the compression of `|A|²` to the first `k` modes.
pub fn leading_block_singular_values<T: Real>(a: &ComplexMatrix<T>, k: usize) -> Result<Vec<T>> {
    gram_roots(&a.adjoint().matmul(a)?.leading_block(k))
}

fn gram_roots<T: Real>(g: &ComplexMatrix<T>) -> Result<Vec<T>> {
    Ok(hermitian_eigs(&g.hermitian_part())?
        .into_iter()
        .map(|v| v.max(T::zero()).sqrt())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEstimate<T> {
    /// Cluster representatives.
    pub points: Vec<T>,
    pub liminf: T,
    pub limsup: T,
    /// Index window `[lo, hi)` the clusters were drawn from.
    pub window: (usize, usize),
    /// Limit of the `a + b/(m+1)` fit on the last quartile.
    pub fitted_limit: T,
    pub fit_residual: T,
    /// True when the fit was accepted and the estimates use its limit.
    pub extrapolated: bool,
}

/// Default cluster gap `0.05 (max - min + 1e-12)` over the window.
pub fn default_gap<T: Real>(values: &[T]) -> T {
    let (lo, hi) = min_max(values);
    T::of(0.05) * (hi - lo + T::of(1e-12))
}

fn min_max<T: Real>(values: &[T]) -> (T, T) {
    values
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), v| (lo.min(*v), hi.max(*v)))
}

/// Least-squares `a + b/(m+1)` over `(m, λ_m)`; returns `(a, max residual)`.
fn tail_fit<T: Real>(start: usize, values: &[T]) -> (T, T) {
    let n = T::of_usize(values.len());
    let xs: Vec<T> = (0..values.len()).map(|i| T::of_usize(start + i + 1).recip()).collect();
    let mx = xs.iter().copied().sum::<T>() / n;
    let my = values.iter().copied().sum::<T>() / n;
    let (mut sxx, mut sxy) = (T::zero(), T::zero());
    for (x, y) in xs.iter().zip(values) {
        sxx += (*x - mx) * (*x - mx);
        sxy += (*x - mx) * (*y - my);
    }
    let b = if sxx > T::zero() { sxy / sxx } else { T::zero() };
    let a = my - b * mx;
    let residual = xs
        .iter()
        .zip(values)
        .fold(T::zero(), |r, (x, y)| r.max((*y - a - b * *x).abs()));
    (a, residual)
}

/// Accumulation points of `(λ_m)` estimated on `m ∈ [⌊window_frac·M⌋, M)`.
///
/// When the last quartile is well described by `a + b/(m+1)` the sequence is
/// treated as convergent with limit `a`; otherwise the window values are
/// split into clusters wherever consecutive sorted values differ by more
/// than `gap`.
pub fn radial_essential_spectrum<T: Real>(e: &EigenSequence<T>, window_frac: T, gap: T) -> Result<SpectrumEstimate<T>> {
    let m = e.len();
    if m < 16 {
        return Err(FockError::invalid("essential spectrum estimate needs at least 16 eigenvalues"));
    }
    if !(window_frac >= T::zero() && window_frac < T::one()) {
        return Err(FockError::invalid("window fraction must lie in [0, 1)"));
    }
    let lo = (window_frac * T::of_usize(m)).floor().to_usize().unwrap_or(0).min(m - 1);
    let window = &e.values[lo..];
    let q = 3 * m / 4;
    let (fitted_limit, fit_residual) = tail_fit(q, &e.values[q..]);
    let (wmin, wmax) = min_max(window);
    let scale = T::one().max(fitted_limit.abs());
    let extrapolated = fit_residual <= T::of(1e-3) * scale;
    if extrapolated {
        return Ok(SpectrumEstimate {
            points: vec![fitted_limit],
            liminf: fitted_limit,
            limsup: fitted_limit,
            window: (lo, m),
            fitted_limit,
            fit_residual,
            extrapolated,
        });
    }
    let mut sorted = window.to_vec();
    sorted.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    let mut points = Vec::new();
    let mut cluster = vec![sorted[0]];
    for v in &sorted[1..] {
        if *v - cluster[cluster.len() - 1] > gap {
            points.push(cluster.iter().copied().sum::<T>() / T::of_usize(cluster.len()));
            cluster.clear();
        }
        cluster.push(*v);
    }
    points.push(cluster.iter().copied().sum::<T>() / T::of_usize(cluster.len()));
    Ok(SpectrumEstimate {
        points,
        liminf: wmin,
        limsup: wmax,
        window: (lo, m),
        fitted_limit,
        fit_residual,
        extrapolated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Positive,
    NotPositive,
    Inconclusive,
}

impl Verdict {
    /// Trichotomy on the margin: `>= τ`, `<= -τ`, or neither.
    pub fn from_margin<T: Real>(margin: T, tau: T) -> Self {
        if margin >= tau {
            Verdict::Positive
        } else if margin <= -tau {
            Verdict::NotPositive
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Radial,
    Vo,
    Limitops,
    SymbolLiminf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssPosReport<T> {
    pub verdict: Verdict,
    pub margin: T,
    pub mode: Mode,
    pub diagnostics: Vec<(String, T)>,
    pub heuristic: bool,
}

impl<T: Real> EssPosReport<T> {
    fn inconclusive(mode: Mode, reason: &str) -> Self {
        Self {
            verdict: Verdict::Inconclusive,
            margin: T::zero(),
            mode,
            diagnostics: vec![(reason.to_string(), T::zero())],
            heuristic: mode == Mode::Limitops,
        }
    }
}

/// Verdict from the tail of the eigenvalue sequence: margin = liminf estimate.
pub fn ess_positivity_radial<T: Real>(f: &RadialProfile<T>, p: &FockParams<T>, tau: T) -> Result<EssPosReport<T>> {
    ess_positivity_radial_with(f, p, tau, T::of(0.5))
}

pub fn ess_positivity_radial_with<T: Real>(
    f: &RadialProfile<T>,
    p: &FockParams<T>,
    tau: T,
    window_frac: T,
) -> Result<EssPosReport<T>> {
    let e = radial_eigenvalues(f, p)?;
    let lo = (window_frac * T::of_usize(e.len())).floor().to_usize().unwrap_or(0).min(e.len() - 1);
    let gap = default_gap(&e.values[lo..]);
    let est = radial_essential_spectrum(&e, window_frac, gap)?;
    let margin = est.liminf;
    let mut diagnostics = vec![
        ("lambda_0".to_string(), e.values[0]),
        (format!("lambda_{}", e.len() - 1), e.values[e.len() - 1]),
        ("fitted_limit".to_string(), est.fitted_limit),
        ("fit_residual".to_string(), est.fit_residual),
        ("liminf".to_string(), est.liminf),
        ("limsup".to_string(), est.limsup),
    ];
    for (i, pt) in est.points.iter().enumerate() {
        diagnostics.push((format!("cluster_{i}"), *pt));
    }
    Ok(EssPosReport {
        verdict: Verdict::from_margin(margin, tau),
        margin,
        mode: Mode::Radial,
        diagnostics,
        heuristic: false,
    })
}

fn shell(radius: f64, count: usize) -> Vec<Complex<f64>> {
    (0..count)
        .map(|k| Complex::from_polar(radius, std::f64::consts::TAU * k as f64 / count as f64))
        .collect()
}

/// Verdict from the Berezin (heat) transform on the outermost radius shell,
/// gated by a vanishing-oscillation trend check over `radii`.
pub fn ess_positivity_vo<T: Real>(s: &Symbol<T>, p: &FockParams<T>, radii: &[T], tau: T) -> Result<EssPosReport<T>> {
    if !s.is_real() {
        return Ok(EssPosReport::inconclusive(Mode::Vo, "symbol is not real-valued"));
    }
    if s.is_measure() {
        return Ok(EssPosReport::inconclusive(Mode::Vo, "measure symbols have no oscillation modulus"));
    }
    let Some(&outer) = radii.last() else {
        return Err(FockError::invalid("at least one radius is required"));
    };
    let mut diagnostics = Vec::new();
    let mut osc = Vec::with_capacity(radii.len());
    for r in radii {
        let v = vo_modulus(s, *r, p, VO_DENSITY)?;
        diagnostics.push((format!("vo_modulus(rho={r})"), v));
        osc.push(v);
    }
    let slack = T::of(1e-12);
    let decreasing = osc.windows(2).all(|w| w[1] <= w[0] + slack);
    if !decreasing || osc[osc.len() - 1] > T::of(VO_OSCILLATION_LIMIT) {
        return Ok(EssPosReport {
            verdict: Verdict::Inconclusive,
            margin: T::zero(),
            mode: Mode::Vo,
            diagnostics,
            heuristic: false,
        });
    }
    let grid = PolarGrid::for_dim(16)?;
    let values: Vec<Result<T>> = shell(outer.as_f64(), SHELL_ANGLES)
        .into_par_iter()
        .map(|z| {
            let z = Complex::new(T::of(z.re), T::of(z.im));
            Ok(heat_transform_symbol(s, z, p, &grid)?.re)
        })
        .collect();
    let mut margin = T::infinity();
    for v in values {
        margin = margin.min(v?);
    }
    diagnostics.push((format!("min_berezin(rho={outer})"), margin));
    Ok(EssPosReport {
        verdict: Verdict::from_margin(margin, tau),
        margin,
        mode: Mode::Vo,
        diagnostics,
        heuristic: false,
    })
}

/// Truncated matrix of `w ↦ f(w + ρe^{iθ})`, the operator seen from the far
/// point `ρe^{iθ}`: a finite stand-in for a limit operator in direction `θ`.
pub fn limit_operator_sample<T: Real>(f: &Symbol<T>, theta: T, rho: T, p: &FockParams<T>) -> Result<ComplexMatrix<T>> {
    Ok(limit_operator_sample_with(f, theta, rho, p, AliasCheck::Error)?.0)
}

/// As [`limit_operator_sample`], also returning the angular aliasing estimate.
pub fn limit_operator_sample_with<T: Real>(
    f: &Symbol<T>,
    theta: T,
    rho: T,
    p: &FockParams<T>,
    check: AliasCheck,
) -> Result<(ComplexMatrix<T>, T)> {
    let shifted = translate(f, -Complex::from_polar(rho, theta))?;
    let grid = PolarGrid::for_dim(p.dim())?;
    let a = assemble_general_with(&shifted, p, &grid, check)?;
    Ok((a.matrix, a.alias_disagreement))
}

/// Heuristic verdict from sampled limit operators.
///
/// For each direction `θ_k` and radius tier `ρ_j`, `e(θ, ρ)` is the smallest
/// eigenvalue of the leading `M/2` block of the sample. Positive when
/// `min_θ e(θ, ρ_max) >= τ` and no direction dropped by more than `τ` between
/// the last two tiers; not positive when some direction has `e <= -3τ` at
/// every tier.
pub fn ess_positivity_limitops<T: Real>(
    f: &Symbol<T>,
    p: &FockParams<T>,
    theta_count: usize,
    radii: &[T],
    tau: T,
) -> Result<EssPosReport<T>> {
    f.ensure_function()?;
    if !f.is_real() {
        return Err(FockError::NotRealValued(f.to_string()));
    }
    if theta_count == 0 || radii.is_empty() {
        return Err(FockError::invalid("need at least one direction and one radius"));
    }
    let half = (p.dim() / 2).max(1);
    let samples: Vec<(usize, usize)> = (0..theta_count).flat_map(|k| (0..radii.len()).map(move |j| (k, j))).collect();
    let results: Vec<Result<(T, T)>> = samples
        .par_iter()
        .map(|&(k, j)| {
            let theta = T::TAU() * T::of_usize(k) / T::of_usize(theta_count);
            let (a, alias) = limit_operator_sample_with(f, theta, radii[j], p, AliasCheck::Report)?;
            let ev = hermitian_eigs(&a.leading_block(half))?;
            Ok((ev[0], alias))
        })
        .collect();
    let mut e = vec![vec![T::zero(); radii.len()]; theta_count];
    let mut diagnostics = Vec::with_capacity(samples.len() + 1);
    let mut worst_alias = T::zero();
    for (&(k, j), r) in samples.iter().zip(results) {
        let (min_ev, alias) = r?;
        e[k][j] = min_ev;
        worst_alias = worst_alias.max(alias);
        let theta = T::TAU() * T::of_usize(k) / T::of_usize(theta_count);
        diagnostics.push((format!("min_eig(theta={theta},rho={})", radii[j]), min_ev));
    }
    diagnostics.push(("max_alias_disagreement".to_string(), worst_alias));
    let last = radii.len() - 1;
    let margin = e.iter().fold(T::infinity(), |m, row| m.min(row[last]));
    let stable = last == 0 || e.iter().all(|row| row[last] >= row[last - 1] - tau);
    let persistent = e.iter().any(|row| row.iter().all(|v| *v <= -T::of(3.0) * tau));
    let verdict = if persistent {
        Verdict::NotPositive
    } else if margin >= tau && stable {
        Verdict::Positive
    } else {
        Verdict::Inconclusive
    };
    Ok(EssPosReport { verdict, margin, mode: Mode::Limitops, diagnostics, heuristic: true })
}

/// Minimum of the symbol on the outermost radius shell; positive when it is
/// at least `τ`, otherwise inconclusive (a negative symbol liminf proves nothing).
pub fn ess_positivity_symbol_liminf<T: Real>(s: &Symbol<T>, p: &FockParams<T>, radii: &[T], tau: T) -> Result<EssPosReport<T>> {
    s.ensure_function()?;
    if !s.is_real() {
        return Err(FockError::NotRealValued(s.to_string()));
    }
    let mut diagnostics = Vec::with_capacity(radii.len());
    let mut margin = T::infinity();
    for r in radii {
        let m = symbol_shell_min(s, *r, p);
        diagnostics.push((format!("shell_min(rho={r})"), m));
        margin = m;
    }
    let verdict = match Verdict::from_margin(margin, tau) {
        Verdict::NotPositive => Verdict::Inconclusive,
        v => v,
    };
    Ok(EssPosReport { verdict, margin, mode: Mode::SymbolLiminf, diagnostics, heuristic: true })
}

/// `min_{|z| = ρ} Re f(z)` on a fine angular grid.
pub fn symbol_shell_min<T: Real>(s: &Symbol<T>, rho: T, p: &FockParams<T>) -> T {
    shell(rho.as_f64(), 4 * SHELL_ANGLES)
        .into_iter()
        .map(|z| s.value(Complex::new(T::of(z.re), T::of(z.im)), p.t()).re)
        .fold(T::infinity(), |m, v| m.min(v))
}
