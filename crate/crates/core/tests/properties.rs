use std::f64::consts::PI;

use proptest::prelude::*;
use siegert_core::born::poles_exponential_sum;
use siegert_core::numerics::{bessel_j, complex_gamma, grid_scan, newton_complex, Region, RootFindConfig};
use siegert_core::potentials::oscillatory_to_exponential_sum;
use siegert_core::{Complex64, Potential};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// (1/2π)∮ cos(nτ − x sin τ) dτ by the trapezoid rule, spectrally accurate
/// for periodic integrands.
fn bessel_integral(n: i32, x: f64) -> f64 {
    let m = 512;
    let h = 2.0 * PI / m as f64;
    (0..m)
        .map(|i| (n as f64 * i as f64 * h - x * (i as f64 * h).sin()).cos())
        .sum::<f64>()
        / m as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gamma_recurrence(re in 0.01f64..19.0, im in -19.0f64..19.0) {
        let z = c(re, im);
        prop_assume!(z.norm() <= 20.0);
        let lhs = complex_gamma(z + 1.0).unwrap();
        let rhs = z * complex_gamma(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1e-300), "{} {} {}", z, lhs, rhs);
    }

    #[test]
    fn gamma_reflection(re in -3.0f64..3.0, im in 0.05f64..3.0) {
        let z = c(re, im);
        let lhs = complex_gamma(z).unwrap() * complex_gamma(1.0 - z).unwrap();
        let rhs = PI / (PI * z).sin();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm());
    }

    #[test]
    fn integer_bessel_matches_integral(n in 0i32..6, x in 0.0f64..10.0) {
        let j = bessel_j(c(n as f64, 0.0), c(x, 0.0)).unwrap();
        prop_assert!((j.re - bessel_integral(n, x)).abs() < 1e-10 && j.im.abs() < 1e-12);
    }

    #[test]
    fn bessel_three_term_recurrence(nr in -2.5f64..3.0, ni in -2.0f64..2.0, zr in 0.2f64..6.0, zi in -1.0f64..1.0) {
        let (nu, z) = (c(nr, ni), c(zr, zi));
        let lhs = bessel_j(nu - 1.0, z).unwrap() + bessel_j(nu + 1.0, z).unwrap();
        let rhs = 2.0 * nu / z * bessel_j(nu, z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * lhs.norm().max(rhs.norm()).max(1.0));
    }

    #[test]
    fn newton_meets_its_residual_tolerance(r0 in -3.0f64..3.0, i0 in -3.0f64..3.0, r1 in -3.0f64..3.0, i1 in -3.0f64..3.0) {
        let (a, b) = (c(r0, i0), c(r1, i1));
        prop_assume!((a - b).norm() > 0.3);
        let cfg = RootFindConfig::default();
        let seed = a + c(0.05, -0.04);
        let root = newton_complex(|k| Ok((k - a) * (k - b) * (k + 5.0)), seed, &cfg).unwrap();
        prop_assert!(root.residual <= cfg.residual_tolerance);
        prop_assert!((root.k - a).norm() < 1e-9);
    }

    #[test]
    fn grid_seeds_refine_to_all_roots(r0 in -2.0f64..-0.3, i0 in -1.8f64..1.8, r1 in 0.3f64..2.0, i1 in -1.8f64..1.8) {
        let roots = [c(r0, i0), c(r1, i1)];
        let f = |k: Complex64| Ok((k - roots[0]) * (k - roots[1]));
        let region = Region::new(-2.5, 2.5, -2.5, 2.5).unwrap();
        let cfg = RootFindConfig::default();
        for n in [41, 81] {
            let map = grid_scan(f, &region, n, n).unwrap();
            let found: Vec<Complex64> = map.seeds.iter().map(|s| newton_complex(f, s.k, &cfg).unwrap().k).collect();
            for r in roots {
                prop_assert!(found.iter().any(|k| (k - r).norm() < 1e-9), "n={} {:?}", n, found);
            }
        }
    }

    #[test]
    fn potentials_are_even_and_real(x in 0.0f64..20.0, v in -5.0f64..5.0, w in 0.2f64..3.0, lam in 1.0f64..5.0) {
        let ps = [
            Potential::exponential(v, w),
            Potential::cutoff(v, w, 3.0),
            Potential::gaussian(v, w),
            Potential::super_gaussian(v, w, lam),
            oscillatory_to_exponential_sum(v, w, 1.7),
        ];
        for p in &ps {
            let (a, b) = (p.evaluate(x), p.evaluate(-x));
            prop_assert!(a.is_finite() && a == b);
        }
    }

    #[test]
    fn conjugate_paired_sum_is_real(x in -30.0f64..30.0, v in -5.0f64..5.0, w in 0.2f64..3.0, om in 0.0f64..4.0) {
        let p = oscillatory_to_exponential_sum(v, w, om);
        prop_assert!(p.evaluate_complex(c(x.abs(), 0.0)).im.abs() < 1e-14);
    }

    #[test]
    fn closed_form_poles_come_in_pairs(v in -0.5f64..0.5, w in 0.3f64..3.0, om in 0.0f64..3.0) {
        let p = oscillatory_to_exponential_sum(v, w, om);
        let poles = poles_exponential_sum(&p).unwrap();
        for q in &poles {
            let m = -q.k.conj();
            prop_assert!(poles.iter().any(|o| o.parity == q.parity && (o.k - m).norm() < 1e-12));
        }
    }
}

#[test]
fn oscillatory_form_is_a_damped_cosine() {
    let (v0, k0, w0) = (0.4, 1.0, 2.0);
    let p = oscillatory_to_exponential_sum(v0, k0, w0);
    for i in 0..1000 {
        let x = -10.0 + 20.0 * i as f64 / 999.0;
        let want = -v0 * (-k0 * x.abs()).exp() * (w0 * x).cos();
        assert!((p.evaluate(x) - want).abs() < 1e-14, "{x}");
    }
}
