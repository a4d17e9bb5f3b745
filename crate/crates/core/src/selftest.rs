//! Fast invariant checks behind `focklab selftest`.

use num_complex::Complex;
use serde::Serialize;

use crate::berezin::{berezin_from_matrix, heat_transform_symbol, radial_berezin_series};
use crate::config::SearchConfig;
use crate::experiments::{counterexample_table, ratio_objective, search_minimize};
use crate::fock::{normalized_kernel, FockParams};
use crate::quadrature::{gauss_laguerre, PolarGrid};
use crate::spectra::{hermitian_eigs, leading_block_singular_values, Verdict};
use crate::symbols::{GeneralSymbol, RadialProfile, Symbol};
use crate::toeplitz::{assemble_general, assemble_weyl_phase, radial_eigenvalues};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, run: impl FnOnce() -> Result<(bool, String)>) -> CheckOutcome {
    let (passed, detail) = run().unwrap_or_else(|e| (false, e.to_string()));
    CheckOutcome { name: name.to_string(), passed, detail }
}

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

pub fn run_selftest() -> Vec<CheckOutcome> {
    vec![
        check("laguerre_moments", || {
            let rule = gauss_laguerre(3.0f64, 20)?;
            // ∫ u^k u^3 e^{-u} du = (k+3)!
            let mut worst = 0.0f64;
            let mut fact = 6.0;
            for k in 0..40 {
                if k > 0 {
                    fact *= (k + 3) as f64;
                }
                let q = rule.integrate(|u| u.powi(k));
                worst = worst.max((q / fact - 1.0).abs());
            }
            Ok((worst < 1e-9, format!("max relative error {worst:e}")))
        }),
        check("kernel_normalization", || {
            let p = FockParams::new(2.0, 8)?;
            let grid = PolarGrid::<f64>::new(64, 128)?;
            let z = c(2.0, -2.0);
            let v = grid.inner_product(2.0, |w| normalized_kernel(z, w, &p), |w| normalized_kernel(z, w, &p));
            Ok(((v.re - 1.0).abs() < 1e-10, format!("<k_z,k_z> = {v}")))
        }),
        check("radial_power_eigenvalues", || {
            let e = radial_eigenvalues(&RadialProfile::Power(2), &FockParams::new(2.0f64, 61)?)?;
            let worst = e.values.iter().enumerate().fold(0.0f64, |w, (m, v)| w.max((v / (2.0 * (m as f64 + 1.0)) - 1.0).abs()));
            Ok((worst < 1e-8, format!("max relative error {worst:e}")))
        }),
        check("berezin_cross_method", || {
            let p = FockParams::new(2.0f64, 60)?;
            let f = RadialProfile::rational(5.0, 1.0)?;
            let e = radial_eigenvalues(&f, &p)?;
            let a = assemble_general(&Symbol::Radial(f.clone()), &p, &PolarGrid::for_dim(60)?)?;
            let grid = PolarGrid::for_dim(16)?;
            let mut worst = 0.0f64;
            for s in [0.0, 1.0, 2.0] {
                let series = radial_berezin_series(&e, s).value.re;
                let heat = heat_transform_symbol(&Symbol::Radial(f.clone()), c(s, 0.0), &p, &grid)?.re;
                let matrix = berezin_from_matrix(&a, c(0.0, s), &p).value.re;
                worst = worst.max((series - heat).abs()).max((series - matrix).abs());
            }
            Ok((worst < 1e-6, format!("max pairwise difference {worst:e}")))
        }),
        check("general_assembly_hermitian", || {
            let p = FockParams::new(2.0f64, 24)?;
            let f = Symbol::General(GeneralSymbol::named("dir").expect("catalog"));
            let a = assemble_general(&f, &p, &PolarGrid::for_dim(24)?)?;
            let ev = hermitian_eigs(&a)?;
            let ok = a.is_hermitian() && ev.iter().all(|v| v.abs() <= 1.0 + 1e-8);
            Ok((ok, format!("eigenvalues in [{}, {}]", ev[0], ev[ev.len() - 1])))
        }),
        check("weyl_essential_norm", || {
            let p = FockParams::new(2.0f64, 60)?;
            let a = assemble_weyl_phase(c(1.2, 0.9), &p)?;
            let target = (-(1.44f64 + 0.81) / 4.0).exp();
            let sv = leading_block_singular_values(&a, 30)?;
            let worst = sv.iter().fold(0.0f64, |w, s| w.max((s - target).abs()));
            Ok((worst < 1e-3, format!("max deviation {worst:e}")))
        }),
        check("counterexample_ratio", || {
            let rows = counterexample_table(2.0f64, &[0.0, 1.0, 2.0], 60)?;
            let increasing = rows.windows(2).all(|w| w[1].ratio > w[0].ratio);
            Ok((increasing, format!("ratios {:?}", rows.iter().map(|r| r.ratio).collect::<Vec<_>>())))
        }),
        check("ratio_of_constant", || {
            let r = ratio_objective(&RadialProfile::Constant(0.7f64), &FockParams::new(2.0, 256)?, &SearchConfig::default().s_grid, 0.5)?;
            Ok(((r.ratio - 1.0).abs() < 1e-12, format!("R = {}", r.ratio)))
        }),
        check("verdict_trichotomy", || {
            let cases = [(1e-3, Verdict::Positive), (-1e-3, Verdict::NotPositive), (5e-4, Verdict::Inconclusive)];
            let ok = cases.iter().all(|(m, v)| Verdict::from_margin(*m, 1e-3f64) == *v);
            Ok((ok, "margin vs tau".to_string()))
        }),
        check("search_determinism", || {
            let cfg = SearchConfig { rings: 3, iters: 10, dim: 64, s_grid: vec![2.0, 4.0], ..SearchConfig::default() };
            let a = search_minimize(&cfg, 2.0f64)?;
            let b = search_minimize(&cfg, 2.0f64)?;
            Ok((a == b, format!("objective {}", a.objective)))
        }),
    ]
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_checks_pass() {
        for o in super::run_selftest() {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }
}
