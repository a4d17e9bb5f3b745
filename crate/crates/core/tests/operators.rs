use focklab::spectra::{hermitian_eigs, limit_operator_sample, singular_values};
use focklab::symbols::{translate, vo_modulus};
use focklab::toeplitz::{
    assemble_general, assemble_quadrature, assemble_weyl_phase, radial_eigenvalues, weyl_operator, AliasCheck,
};
use focklab::{Complex64, ComplexMatrix64, FockParams, GeneralSymbol, PolarGrid, RadialProfile, Symbol};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn leading_diff(a: &ComplexMatrix64, b: &ComplexMatrix64, k: usize) -> f64 {
    a.leading_block(k).max_abs_diff(&b.leading_block(k))
}

#[test]
fn weyl_composition_law() {
    let t = 2.0;
    let p = FockParams::new(t, 80).unwrap();
    for (z, w) in [(c(1.0, 0.5), c(-0.3, 1.2)), (c(-1.5, 0.0), c(0.0, 1.5)), (c(0.7, -0.7), c(0.2, 0.9))] {
        let uz = weyl_operator(z, &p).unwrap();
        let uw = weyl_operator(w, &p).unwrap();
        let uzw = weyl_operator(z + w, &p).unwrap();
        let phase = Complex64::from_polar(1.0, -(z * w.conj()).im / t);
        let lhs = uz.matmul(&uw).unwrap();
        assert!(leading_diff(&lhs, &uzw.scale(phase), 40) < 1e-6, "z={z} w={w}");
        // The real-exponent reading e^{-Im(z w̄)/t} is not unimodular and fails.
        let real_factor = c((-(z * w.conj()).im / t).exp(), 0.0);
        assert!(leading_diff(&lhs, &uzw.scale(real_factor), 40) > 1e-3);
    }
}

#[test]
fn weyl_phase_unitarity_on_leading_block() {
    let p = FockParams::new(2.0, 100).unwrap();
    for z in [c(1.0, 0.0), c(0.0, 2.0)] {
        let u = assemble_weyl_phase(z, &p).unwrap().scale(c((z.norm_sqr() / 4.0).exp(), 0.0));
        let g = u.adjoint().matmul(&u).unwrap();
        assert!(leading_diff(&g, &ComplexMatrix64::identity(100), 50) < 1e-5);
    }
}

#[test]
fn weyl_phase_quadrature_matches_exact() {
    let p = FockParams::new(2.0, 40).unwrap();
    let grid = PolarGrid::for_dim(40).unwrap();
    for z in [c(1.0, 1.0), c(-2.0, 0.0), c(0.5, -1.2)] {
        let quad = assemble_general(&Symbol::WeylPhase(z), &p, &grid).unwrap();
        let exact = assemble_weyl_phase(z, &p).unwrap();
        assert!(quad.max_abs_diff(&exact) < 1e-8, "z={z}");
    }
}

#[test]
fn translation_covariance() {
    let t = 2.0;
    let p = FockParams::new(t, 80).unwrap();
    let grid = PolarGrid::for_dim(80).unwrap();
    let f = Symbol::General(GeneralSymbol::named("bump").unwrap());
    let a = assemble_general(&f, &p, &grid).unwrap();
    for z in [c(1.0, 0.0), c(-0.4, 0.6), c(0.0, -1.0)] {
        let moved = assemble_general(&translate(&f, z).unwrap(), &p, &grid).unwrap();
        let u = weyl_operator(z, &p).unwrap();
        let conj = u.matmul(&a).unwrap().matmul(&u.adjoint()).unwrap();
        assert!(leading_diff(&moved, &conj, 40) < 1e-5, "z={z}");
    }
}

#[test]
fn radial_symbols_are_diagonal_under_quadrature() {
    let p = FockParams::new(2.0, 40).unwrap();
    let grid = PolarGrid::for_dim(40).unwrap();
    let f = RadialProfile::rational(5.0f64, 1.0).unwrap();
    let quad = assemble_quadrature(&Symbol::Radial(f.clone()), &p, &grid, AliasCheck::Error).unwrap().matrix;
    let e = radial_eigenvalues(&f, &p).unwrap();
    for j in 0..40 {
        for m in 0..40 {
            let v = quad.get(j, m);
            if j == m {
                assert!((v.re - e.values[m]).abs() < 1e-9 && v.im.abs() < 1e-10);
            } else {
                assert!(v.norm() < 1e-10);
            }
        }
    }
}

#[test]
fn spectral_theorem_sanity() {
    let p = FockParams::new(2.0, 60).unwrap();
    let grid = PolarGrid::for_dim(60).unwrap();
    let smooth = RadialProfile::rational(5.0f64, 1.0).unwrap();
    let kinked = RadialProfile::sampled(vec![0.0, 1.0, 3.0], vec![-0.5, 0.2, 0.8]).unwrap();
    for (f, quadrature) in [(smooth, true), (kinked, false)] {
        let s = Symbol::Radial(f.clone());
        let a = if quadrature {
            assemble_quadrature(&s, &p, &grid, AliasCheck::Error).unwrap().matrix
        } else {
            assemble_general(&s, &p, &grid).unwrap()
        };
        let mut e = radial_eigenvalues(&f, &p).unwrap().values;
        e.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let ev = hermitian_eigs(&a).unwrap();
        for (x, y) in ev.iter().zip(&e) {
            assert!((x - y).abs() < 1e-8, "{f}: {x} vs {y}");
        }
    }
}

#[test]
fn operator_norm_bounded_by_symbol() {
    let p = FockParams::new(2.0, 32).unwrap();
    let grid = PolarGrid::for_dim(32).unwrap();
    for name in ["dir", "absdir", "cosre", "bump"] {
        let f = Symbol::General(GeneralSymbol::named(name).unwrap());
        let a = assemble_quadrature(&f, &p, &grid, AliasCheck::Report).unwrap().matrix;
        let top = *singular_values(&a).unwrap().last().unwrap();
        assert!(top <= 1.0 + 1e-8, "{name}: {top}");
    }
    let w = assemble_weyl_phase(c(1.0, -1.0), &p).unwrap();
    assert!(*singular_values(&w).unwrap().last().unwrap() <= 1.0 + 1e-8);
}

#[test]
fn limit_samples_of_weyl_phase_share_spectra() {
    let p = FockParams::new(2.0, 24).unwrap();
    let h = Symbol::WeylPhase(c(0.8, 0.3));
    let base = singular_values(&limit_operator_sample(&h, 0.0, 0.0, &p).unwrap()).unwrap();
    for (theta, rho) in [(0.5, 4.0), (2.0, 8.0), (4.0, 16.0)] {
        let sv = singular_values(&limit_operator_sample(&h, theta, rho, &p).unwrap()).unwrap();
        for (x, y) in sv.iter().zip(&base) {
            assert!((x - y).abs() < 1e-8);
        }
    }
}

#[test]
fn radial_limit_samples_approach_the_tail_value() {
    let p = FockParams::new(2.0, 40).unwrap();
    let f = Symbol::Radial(RadialProfile::rational(5.0, 1.0).unwrap());
    let mins: Vec<f64> = [4.0, 8.0, 16.0]
        .iter()
        .map(|rho| hermitian_eigs(&limit_operator_sample(&f, 0.7, *rho, &p).unwrap().leading_block(20)).unwrap()[0])
        .collect();
    assert!(mins.windows(2).all(|w| (1.0 - w[1]).abs() < (1.0 - w[0]).abs()), "{mins:?}");
    assert!((1.0 - mins[2]).abs() < 0.2);
}

#[test]
fn vo_modulus_examples() {
    let p = FockParams::new(2.0f64, 8).unwrap();
    let re = Symbol::General(GeneralSymbol::named("re").unwrap());
    for rho in [1.0, 5.0, 30.0] {
        assert!((vo_modulus(&re, rho, &p, 64).unwrap() - 1.0).abs() < 1e-12);
    }
    assert_eq!(vo_modulus(&Symbol::Radial(RadialProfile::Constant(0.4)), 10.0, &p, 64).unwrap(), 0.0);
    for f in [RadialProfile::rational(5.0, 1.0).unwrap(), RadialProfile::sampled(vec![0.0, 2.0, 6.0], vec![1.0, -1.0, 0.5]).unwrap()] {
        let s = Symbol::Radial(f);
        let v: Vec<f64> = [5.0, 10.0, 20.0, 40.0].iter().map(|r| vo_modulus(&s, *r, &p, 64).unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] <= w[0]), "{v:?}");
    }
}

#[test]
fn single_precision_pipeline() {
    let p = FockParams::new(2.0f32, 16).unwrap();
    let e = radial_eigenvalues(&RadialProfile::Power(2), &p).unwrap();
    for (m, v) in e.values.iter().enumerate() {
        assert!((v / (2.0 * (m as f32 + 1.0)) - 1.0).abs() < 1e-4);
    }
    let w = assemble_weyl_phase(focklab::Complex::new(1.0f32, 0.0), &p).unwrap();
    assert!((w.get(0, 0).re - (-0.5f32).exp()).abs() < 1e-6);
}
