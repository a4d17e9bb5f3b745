//! Berezin and heat transforms.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::fock::{coefficient_tail, kernel_coeffs, truncation_dim, FockParams};
use crate::matrix::ComplexMatrix;
use crate::quadrature::{gauss_legendre, PolarGrid};
use crate::scalar::{CompensatedSum, Real};
use crate::special::{poisson_pmf, poisson_tail};
use crate::symbols::{RadialProfile, SignedAtomicMeasure, Symbol};
use crate::toeplitz::EigenSequence;

/// Kernel-tail level above which a truncated Berezin value is flagged.
pub const TRUNCATION_EPS: f64 = 1e-10;
/// Default radii for asymptotic scans.
pub const SCAN_RADII: [f64; 6] = [1.0, 2.0, 4.0, 8.0, 12.0, 16.0];

const REFINEMENT_TOLERANCE: f64 = 1e-7;

/// A truncated transform value with a bound on what the truncation dropped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BerezinValue<T> {
    pub value: Complex<T>,
    pub tail_bound: T,
    /// Set when `M` is below `truncation_dim(|z|, t, 1e-10)`.
    pub truncated: bool,
}

/// `Ã(z) = Σ_{j,m<M} A_{jm} c_m(z) conj(c_j(z))`.
///
/// `tail_bound = 2‖A‖_F √τ` where `τ` is the kernel mass beyond `M`; it
/// bounds the error only if the untruncated operator has norm at most `‖A‖_F`.
pub fn berezin_from_matrix<T: Real>(a: &ComplexMatrix<T>, z: Complex<T>, p: &FockParams<T>) -> BerezinValue<T> {
    let dim = a.dim();
    let c = kernel_coeffs(z, dim, p);
    let tail = coefficient_tail(z, dim, p);
    BerezinValue {
        value: a.sesquilinear(&c, &c),
        tail_bound: T::of(2.0) * a.frobenius_norm() * tail.sqrt(),
        truncated: truncation_dim(z.norm(), p.t(), T::of(TRUNCATION_EPS)) > dim,
    }
}

/// `μ̃(z) = (πt)^{-1} Σ_i w_i e^{-|z - p_i|²/t}`.
pub fn heat_transform_measure<T: Real>(m: &SignedAtomicMeasure<T>, z: Complex<T>, p: &FockParams<T>) -> T {
    let t = p.t();
    let mut acc = CompensatedSum::new();
    for a in m.atoms() {
        acc.add(a.weight * (-(z - a.position).norm_sqr() / t).exp());
    }
    acc.total() / (T::PI() * t)
}

/// `f̃(z) = (πt)^{-1} ∫ f(w) e^{-|z-w|²/t} dw`.
///
/// Radial profiles are integrated in polar coordinates about the origin on
/// Gauss–Legendre panels split at the profile's breakpoints; other symbols
/// use the Gaussian-centred `grid`, checked against its refinement.
/// Measures reduce to [`heat_transform_measure`].
pub fn heat_transform_symbol<T: Real>(
    f: &Symbol<T>,
    z: Complex<T>,
    p: &FockParams<T>,
    grid: &PolarGrid<T>,
) -> Result<Complex<T>> {
    match f {
        Symbol::AtomicMeasure(m) => Ok(Complex::new(heat_transform_measure(m, z, p), T::zero())),
        Symbol::Radial(profile) => Ok(Complex::new(radial_heat(profile, z.norm(), p.t())?, T::zero())),
        _ => {
            let t = p.t();
            let coarse = grid.gaussian_average(z, t, |w| f.value(w, t));
            let fine = grid.refined()?.gaussian_average(z, t, |w| f.value(w, t));
            let diff = (fine - coarse).norm();
            if diff > T::tol(REFINEMENT_TOLERANCE, 64.0) * fine.norm().max(T::one()) {
                return Err(FockError::QuadratureNoConvergence(format!(
                    "heat transform at {z}: grid refinement changed the value by {diff}"
                )));
            }
            Ok(fine)
        }
    }
}

/// Heat transform with an error estimate in `tail_bound` instead of an error.
///
/// For grid-based symbols the grid is doubled up to `max_refinements` times
/// until two levels agree to the usual tolerance; `tail_bound` is the last
/// difference between levels and `truncated` is set when they never agreed.
/// Jump discontinuities converge only like `1/K` on a polar grid, so expect
/// the estimate rather than full precision for those.
pub fn heat_transform_estimate<T: Real>(
    f: &Symbol<T>,
    z: Complex<T>,
    p: &FockParams<T>,
    grid: &PolarGrid<T>,
    max_refinements: usize,
) -> Result<BerezinValue<T>> {
    if matches!(f, Symbol::AtomicMeasure(_) | Symbol::Radial(_)) {
        let value = heat_transform_symbol(f, z, p, grid)?;
        return Ok(BerezinValue { value, tail_bound: T::zero(), truncated: false });
    }
    let t = p.t();
    let mut g = grid.clone();
    let mut coarse = g.gaussian_average(z, t, |w| f.value(w, t));
    for level in 0.. {
        g = g.refined()?;
        let fine = g.gaussian_average(z, t, |w| f.value(w, t));
        let diff = (fine - coarse).norm();
        let ok = diff <= T::tol(REFINEMENT_TOLERANCE, 64.0) * fine.norm().max(T::one());
        if ok || level >= max_refinements {
            return Ok(BerezinValue { value: fine, tail_bound: diff, truncated: !ok });
        }
        coarse = fine;
    }
    unreachable!()
}

/// Mean of `e^{x(cos θ - 1)}` over the circle (`e^{-x} I_0(x)`). The
/// trapezoid error is about `e^{-K²/(2x)}`, so `K = 32 + 8√x` points reach
/// double precision.
fn ring_average<T: Real>(x: T) -> T {
    if x == T::zero() {
        return T::one();
    }
    let k = 32 + (T::of(8.0) * x.sqrt()).ceil().to_usize().unwrap_or(0);
    let mut acc = CompensatedSum::new();
    for q in 0..k {
        let theta = T::TAU() * (T::of_usize(q) + T::of(0.5)) / T::of_usize(k);
        acc.add((x * (theta.cos() - T::one())).exp());
    }
    acc.total() / T::of_usize(k)
}

/// `(2/t) ∫_0^∞ f(r) r e^{-(r-s)²/t} A(2rs/t) dr` with `A` the ring average.
fn radial_heat<T: Real>(f: &RadialProfile<T>, s: T, t: T) -> Result<T> {
    let reach = (T::of(45.0) * t).sqrt();
    let lo = (s - reach).max(T::zero());
    let hi = s + reach;
    let mut cuts = vec![lo];
    cuts.extend(f.breakpoints().into_iter().filter(|b| *b > lo && *b < hi));
    cuts.push(hi);
    let integrand = |r: T| {
        let g = r * (-(r - s) * (r - s) / t).exp() * ring_average(T::of(2.0) * r * s / t);
        f.eval(r) * g
    };
    let (x, w) = gauss_legendre::<T>(16)?;
    let integrate = |width: T| -> T {
        let mut acc = CompensatedSum::new();
        for pair in cuts.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let pieces = ((b - a) / width).ceil().to_usize().unwrap_or(1).max(1);
            let h = (b - a) / T::of_usize(pieces);
            for i in 0..pieces {
                let left = a + h * T::of_usize(i);
                for (xi, wi) in x.iter().zip(&w) {
                    acc.add(*wi * h * T::of(0.5) * integrand(left + h * T::of(0.5) * (*xi + T::one())));
                }
            }
        }
        acc.total() * T::of(2.0) / t
    };
    let coarse = integrate(T::of(0.5) * t.sqrt());
    let fine = integrate(T::of(0.25) * t.sqrt());
    let diff = (fine - coarse).abs();
    if diff > T::tol(REFINEMENT_TOLERANCE, 64.0) * fine.abs().max(T::one()) {
        return Err(FockError::QuadratureNoConvergence(format!(
            "radial heat transform at s={s}: panel refinement changed the value by {diff}"
        )));
    }
    Ok(fine)
}

/// `B(s) = e^{-s²/t} Σ_{m<M} λ_m (s²/t)^m / m!`; `tail_bound = sup|λ| · P(M, s²/t)`.
pub fn radial_berezin_series<T: Real>(e: &EigenSequence<T>, s: T) -> BerezinValue<T> {
    let t = e.params.t();
    let x = s * s / t;
    let mut acc = CompensatedSum::new();
    for (m, l) in e.values.iter().enumerate() {
        acc.add(*l * poisson_pmf(m, x));
    }
    BerezinValue {
        value: Complex::new(acc.total(), T::zero()),
        tail_bound: e.sup_abs() * poisson_tail(e.len(), x),
        truncated: truncation_dim(s, t, T::of(TRUNCATION_EPS)) > e.len(),
    }
}

/// One row of a Berezin scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow<T> {
    pub s: T,
    pub value: Complex<T>,
    pub tail_bound: T,
}

/// Series Berezin transform of a radial operator at each radius.
pub fn radial_scan<T: Real>(e: &EigenSequence<T>, radii: &[T]) -> Vec<ScanRow<T>> {
    radii
        .par_iter()
        .map(|s| {
            let b = radial_berezin_series(e, *s);
            ScanRow { s: *s, value: b.value, tail_bound: b.tail_bound }
        })
        .collect()
}

/// CSV with header `s,re,im,tail_bound`.
pub fn scan_to_csv<T: Real>(rows: &[ScanRow<T>]) -> Result<String> {
    let io = |e: csv::Error| FockError::Io(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["s", "re", "im", "tail_bound"]).map_err(io)?;
    for r in rows {
        w.write_record([r.s.to_string(), r.value.re.to_string(), r.value.im.to_string(), format!("{:e}", r.tail_bound.to_f64().unwrap_or(f64::NAN))])
            .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| FockError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| FockError::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toeplitz::{assemble_measure, assemble_weyl_phase, radial_eigenvalues};
    use approx::assert_relative_eq;

    fn params(t: f64, dim: usize) -> FockParams<f64> {
        FockParams::new(t, dim).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn identity_has_unit_berezin() {
        let p = params(2.0, 60);
        let id = ComplexMatrix::identity(60);
        for z in [c(0.0, 0.0), c(1.0, -2.0), c(3.0, 0.5)] {
            let b = berezin_from_matrix(&id, z, &p);
            assert!((b.value - c(1.0, 0.0)).norm() < 1e-12);
            assert!(!b.truncated);
        }
        let b = berezin_from_matrix(&ComplexMatrix::identity(4), c(5.0, 0.0), &p);
        assert!(b.truncated);
    }

    #[test]
    fn dirac_berezin_matches_heat() {
        let p = params(2.0, 60);
        let delta = SignedAtomicMeasure::dirac(c(0.0, 0.0), 1.0).unwrap();
        let a = assemble_measure(&delta, &p).unwrap();
        for z in [c(0.0, 0.0), c(1.0, 1.0), c(-2.0, 0.5)] {
            let heat = heat_transform_measure(&delta, z, &p);
            assert_relative_eq!(heat, (-z.norm_sqr() / 2.0).exp() / (2.0 * std::f64::consts::PI), max_relative = 1e-14);
            assert!((berezin_from_matrix(&a, z, &p).value.re - heat).abs() < 1e-14);
        }
        let shifted = SignedAtomicMeasure::dirac(c(0.7, -0.2), 1.0).unwrap();
        let z = c(1.1, 0.4);
        assert_relative_eq!(
            heat_transform_measure(&shifted, z, &p),
            heat_transform_measure(&delta, z - c(0.7, -0.2), &p),
            max_relative = 1e-14
        );
    }

    #[test]
    fn weyl_phase_berezin_modulus() {
        let p = params(2.0, 80);
        let z0 = c(1.0, 0.5);
        let expected = (-z0.norm_sqr() / 2.0).exp();
        let a = assemble_weyl_phase(z0, &p).unwrap();
        let grid = PolarGrid::for_dim(40).unwrap();
        let h = Symbol::WeylPhase(z0);
        for w in [c(0.0, 0.0), c(1.0, 0.0), c(-0.5, 1.5)] {
            assert!((berezin_from_matrix(&a, w, &p).value.norm() - expected).abs() < 1e-10);
            let heat = heat_transform_symbol(&h, w, &p, &grid).unwrap();
            assert!((heat.norm() - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn heat_of_constant_and_half_plane() {
        let p = params(2.0, 10);
        let grid = PolarGrid::for_dim(10).unwrap();
        let one = Symbol::Radial(RadialProfile::Constant(1.0));
        for s in [0.0, 1.0, 7.5] {
            assert!((heat_transform_symbol(&one, c(s, 0.0), &p, &grid).unwrap().re - 1.0).abs() < 1e-12);
        }
        let z = c(0.8, -1.3);
        let half = Symbol::General(crate::symbols::GeneralSymbol::new("hp", 1.0, true, move |w: Complex<f64>| {
            c(if w.re > 0.8 { 1.0 } else { 0.0 }, 0.0)
        }));
        let v = heat_transform_symbol(&half, z, &p, &grid).unwrap();
        assert!((v.re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn series_examples() {
        let p = params(2.0, 120);
        let e = radial_eigenvalues(&RadialProfile::Constant(-0.25), &p).unwrap();
        assert!((radial_berezin_series(&e, 3.0).value.re + 0.25).abs() < 1e-13);
        let e = radial_eigenvalues(&RadialProfile::Power(2), &p).unwrap();
        assert_eq!(radial_berezin_series(&e, 0.0).value.re, e.values[0]);
        let grid = PolarGrid::for_dim(10).unwrap();
        for s in [0.5, 1.0, 2.0, 4.0] {
            let b = radial_berezin_series(&e, s);
            assert!((b.value.re - (s * s + 2.0)).abs() < 1e-10);
            let heat = heat_transform_symbol(&Symbol::Radial(RadialProfile::Power(2)), c(0.0, s), &p, &grid).unwrap();
            assert!((heat.re - (s * s + 2.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn indicator_heat_matches_series() {
        let p = params(2.0, 100);
        let f = RadialProfile::indicator(1.0).unwrap();
        let e = radial_eigenvalues(&f, &p).unwrap();
        let grid = PolarGrid::for_dim(10).unwrap();
        for s in [0.0, 1.0, 2.0, 3.0] {
            let series = radial_berezin_series(&e, s).value.re;
            let heat = heat_transform_symbol(&Symbol::Radial(f.clone()), c(s, 0.0), &p, &grid).unwrap().re;
            assert!((series - heat).abs() < 1e-10, "s={s}: {series} vs {heat}");
        }
    }

    #[test]
    fn ring_average_matches_bessel_series() {
        // e^{-x} I_0(x) = e^{-x} Σ (x/2)^{2k} / (k!)²
        for x in [0.3f64, 2.0, 9.0, 25.0] {
            let mut term = 1.0;
            let mut sum = 1.0;
            for k in 1..200 {
                term *= (x / 2.0).powi(2) / (k as f64 * k as f64);
                sum += term;
            }
            assert_relative_eq!(ring_average(x), (-x).exp() * sum, max_relative = 1e-13);
        }
    }

    #[test]
    fn scan_csv_header() {
        let p = params(2.0, 40);
        let e = radial_eigenvalues(&RadialProfile::Constant(1.0), &p).unwrap();
        let csv = scan_to_csv(&radial_scan(&e, &[0.0, 1.0])).unwrap();
        assert!(csv.starts_with("s,re,im,tail_bound\n0,1,0,"));
    }

    #[test]
    fn heat_estimate_of_half_plane_is_normal_cdf() {
        let t = 2.0;
        let p = params(t, 16);
        let hp = crate::symbols::parse_symbol::<f64>("fn:halfplane").unwrap();
        let grid = PolarGrid::for_dim(16).unwrap();
        for s in [-1.5f64, 0.0, 0.5, 2.0] {
            // Re w is normal with mean s and variance t/2.
            let x = s * (2.0 / t).sqrt();
            let n = 100_000;
            let h = x / n as f64;
            let mid: f64 = (0..n).map(|k| (-((k as f64 + 0.5) * h).powi(2) / 2.0).exp()).sum::<f64>() * h;
            let oracle = 0.5 + mid / (2.0 * std::f64::consts::PI).sqrt();
            let b = heat_transform_estimate(&hp, c(s, 0.7), &p, &grid, 2).unwrap();
            let err = (b.value.re - oracle).abs();
            assert!(err <= 2.0 * b.tail_bound + 1e-9, "s={s}: {} vs {oracle}, bound {}", b.value.re, b.tail_bound);
            assert!(err < 1e-3);
            assert!(b.value.im.abs() < 1e-12);
        }
    }
}
