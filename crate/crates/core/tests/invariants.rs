use focklab::berezin::radial_berezin_series;
use focklab::fock::{kernel, truncation_dim};
use focklab::quadrature::gauss_laguerre;
use focklab::special::ln_gamma;
use focklab::symbols::{hahn_jordan, Atom};
use focklab::symbols::{evaluate, parse_symbol, translate};
use focklab::toeplitz::{assemble_measure, radial_eigenvalues};
use focklab::{Complex64, FockParams, PolarGrid, RadialProfile, SignedAtomicMeasure, Symbol};
use proptest::prelude::*;

fn complex(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| Complex64::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn translations_compose(z in complex(3.0), w in complex(3.0), u in complex(5.0)) {
        let p = FockParams::new(2.0, 4).unwrap();
        for spec in ["fn:bump", "weyl:0.5-1i", "radial:rat:5,1", "fn:cosre"] {
            let s: Symbol<f64> = parse_symbol(spec).unwrap();
            let twice = translate(&translate(&s, z).unwrap(), w).unwrap();
            let once = translate(&s, z + w).unwrap();
            let a = evaluate(&twice, u, &p).unwrap();
            let b = evaluate(&once, u, &p).unwrap();
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn translated_weyl_phase_picks_up_a_phase(z in complex(2.0), w in complex(2.0), u in complex(4.0)) {
        let t = 2.0;
        let p = FockParams::new(t, 4).unwrap();
        let h = Symbol::WeylPhase(z);
        let lhs = evaluate(&translate(&h, w).unwrap(), u, &p).unwrap();
        let phase = Complex64::from_polar(1.0, -2.0 * (w * z.conj()).im / t);
        prop_assert!((lhs - phase * evaluate(&h, u, &p).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn hahn_jordan_recombines(weights in prop::collection::vec(-3.0f64..3.0, 1..8)) {
        let atoms: Vec<Atom<f64>> = weights
            .iter()
            .enumerate()
            .filter(|(_, w)| **w != 0.0)
            .map(|(i, w)| Atom { position: Complex64::new(i as f64, 0.5), weight: *w })
            .collect();
        let m = SignedAtomicMeasure::new(atoms.clone()).unwrap();
        let (pos, neg) = hahn_jordan(&m);
        prop_assert!(pos.atoms().iter().chain(neg.atoms()).all(|a| a.weight > 0.0));
        for a in &atoms {
            let plus: f64 = pos.atoms().iter().filter(|b| b.position == a.position).map(|b| b.weight).sum();
            let minus: f64 = neg.atoms().iter().filter(|b| b.position == a.position).map(|b| b.weight).sum();
            prop_assert_eq!(plus - minus, a.weight);
            prop_assert!(plus == 0.0 || minus == 0.0);
        }
    }

    #[test]
    fn laguerre_is_exact_on_polynomials(alpha in 0.0f64..6.0, coeffs in prop::collection::vec(-1.0f64..1.0, 1..20)) {
        let n = coeffs.len().div_ceil(2).max(1);
        let rule = gauss_laguerre(alpha, n).unwrap();
        let q = rule.integrate(|u| coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c));
        // ∫ u^{k+α} e^{-u} du = Γ(k+α+1)
        let exact: f64 = coeffs.iter().enumerate().map(|(k, c)| c * ln_gamma(k as f64 + alpha + 1.0).exp()).sum();
        let scale: f64 = coeffs.iter().enumerate().map(|(k, c)| c.abs() * ln_gamma(k as f64 + alpha + 1.0).exp()).sum();
        prop_assert!((q - exact).abs() <= 1e-9 * scale.max(1.0));
    }

    #[test]
    fn reproducing_property(coeffs in prop::collection::vec(complex(1.0), 1..10), z in complex(2.0)) {
        let t = 2.0;
        let p = FockParams::new(t, 4).unwrap();
        let grid = PolarGrid::<f64>::new(64, 128).unwrap();
        let g = |w: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c);
        let ip = grid.inner_product(t, g, |w| kernel(z, w, &p));
        prop_assert!((ip - g(z)).norm() < 1e-10 * (1.0 + g(z).norm()));
    }

    #[test]
    fn truncation_dim_is_monotone(s in 0.0f64..12.0, ds in 0.0f64..3.0) {
        prop_assert!(truncation_dim(s, 2.0, 1e-10) <= truncation_dim(s + ds, 2.0, 1e-10));
    }

    #[test]
    fn measure_matrices_are_hermitian(points in prop::collection::vec((complex(3.0), -2.0f64..2.0), 1..5)) {
        let atoms: Vec<Atom<f64>> = points
            .iter()
            .enumerate()
            .map(|(i, (z, w))| Atom { position: z + Complex64::new(0.0, 10.0 * i as f64), weight: if *w == 0.0 { 1.0 } else { *w } })
            .collect();
        let a = assemble_measure(&SignedAtomicMeasure::new(atoms).unwrap(), &FockParams::new(2.0, 12).unwrap()).unwrap();
        prop_assert!(a.hermitian_deviation() < 1e-10);
    }

    #[test]
    fn nonnegative_eigenvalues_give_nonnegative_series(r in 0.2f64..4.0, s in 0.0f64..6.0) {
        let e = radial_eigenvalues(&RadialProfile::indicator(r).unwrap(), &FockParams::new(2.0, 80).unwrap()).unwrap();
        prop_assert!(e.values.iter().all(|v| *v >= 0.0));
        prop_assert!(radial_berezin_series(&e, s).value.re >= 0.0);
    }

    #[test]
    fn eigenvalues_respect_the_symbol_bound(values in prop::collection::vec(-1.0f64..1.0, 2..6), tail in -1.0f64..1.0) {
        let edges: Vec<f64> = (0..=values.len()).map(|i| i as f64 * 0.7).collect();
        let f = RadialProfile::piecewise(edges, values, tail).unwrap();
        let e = radial_eigenvalues(&f, &FockParams::new(2.0, 64).unwrap()).unwrap();
        prop_assert!(e.sup_abs() <= f.sup_norm().unwrap() + 1e-12);
    }
}

#[test]
fn catalog_round_trips_through_the_printer() {
    let specs = [
        "radial:const:0.5",
        "radial:pow:2",
        "radial:ind:1.5",
        "radial:pw:0,1,2|-1,0.5|0",
        "radial:rat:5,1",
        "radial:samp:0,1,3|-0.5,0.2,0.8",
        "radial:scale:-1:rat:5,1",
        "weyl:1+0.5i",
        "measure:[(0,0,1);(1,-1,-2)]",
        "trans:2-1i:fn:dir",
        "fn:halfplane",
    ];
    for spec in specs {
        let s: Symbol<f64> = parse_symbol(spec).unwrap();
        let printed = s.to_string();
        let again: Symbol<f64> = parse_symbol(&printed).unwrap();
        assert_eq!(again.to_string(), printed, "{spec}");
    }
}
