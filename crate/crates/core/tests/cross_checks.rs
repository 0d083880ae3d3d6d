use siegert_core::born::{
    poles_cutoff_asymptotic, poles_gaussian_asymptotic, residual_cutoff, residual_gaussian_sum, AsymptoticCoordinates,
};
use siegert_core::exact::{
    exact_poles_exponential, exact_residual_exponential, truncated_series_root, TruncatedSeriesParams,
};
use siegert_core::jost::{default_root_config, find_poles, refine_seed, JostConfig};
use siegert_core::numerics::{grid_scan, newton_complex, Region, RootFindConfig};
use siegert_core::probes::gaussian_coordinates;
use siegert_core::scattering::continued_amplitudes;
use siegert_core::{Classification, Complex64, Parity, Potential};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn jost_scan_reproduces_exact_anti_bound_ladder() {
    let (v0, k0) = (0.05, 1.0);
    let p = Potential::exponential(v0, k0);
    let cfg = JostConfig::for_potential(&p);
    let region = Region::new(-0.2, 0.2, -1.7, -0.1).unwrap();
    for parity in Parity::BOTH {
        let search = find_poles(&p, parity, &region, (21, 81), &cfg, &default_root_config()).unwrap();
        let mut axis: Vec<Complex64> = search
            .poles
            .iter()
            .filter(|q| q.classification == Some(Classification::AntiBound))
            .map(|q| q.k)
            .collect();
        axis.sort_by(|a, b| b.im.total_cmp(&a.im));
        assert!(axis.len() >= 3, "{parity:?} {axis:?}");
        let exact = exact_poles_exponential(v0, k0, parity, 3).unwrap().poles;
        for (j, e) in axis.iter().zip(&exact) {
            assert!((j - e.k).norm() < 1e-6 * k0, "{parity:?} {j} {}", e.k);
        }
    }
}

#[test]
fn exact_roots_stay_on_the_imaginary_axis() {
    let (v0, k0, n_max) = (0.3, 1.0, 4);
    for parity in Parity::BOTH {
        let r = exact_residual_exponential(v0, k0, parity).unwrap();
        let region = Region::new(-3.0 * k0, 3.0 * k0, -(n_max as f64 + 1.0) * k0 / 2.0, k0).unwrap();
        let map = grid_scan(|k| r.eval(k), &region, 61, 61).unwrap();
        for s in map.seeds.iter().filter(|s| s.value < 1e-6) {
            assert!(s.k.re.abs() < 1e-10 * k0, "{parity:?} off-axis minimum {}", s.k);
        }
        for q in exact_poles_exponential(v0, k0, parity, n_max).unwrap().poles {
            assert!(q.k.re.abs() < 1e-10 * k0);
        }
    }
}

#[test]
fn truncated_roots_converge_with_coupling() {
    let k0 = 1.0;
    for order in 1..=5u32 {
        let miss = |alpha: f64| {
            let t = truncated_series_root(TruncatedSeriesParams { order, alpha })
                .unwrap()
                .k(k0);
            let parity = if order % 2 == 1 { Parity::Odd } else { Parity::Even };
            let exact = exact_poles_exponential(alpha * k0 * k0, k0, parity, order)
                .unwrap()
                .poles;
            let target = -0.5 * order as f64 * k0;
            let e = exact
                .iter()
                .min_by(|a, b| (a.k.im - target).abs().total_cmp(&(b.k.im - target).abs()))
                .unwrap();
            (t - e.k).norm()
        };
        let (a, b) = (miss(0.02), miss(0.01));
        assert!(a / b > 2.0, "N={order}: {a} {b}");
    }
}

#[test]
fn transfer_amplitudes_conjugate_under_time_reversal() {
    let p = Potential::cutoff(10.0, 1.0, 2.0);
    for k in [0.3, 1.7, 4.2] {
        let (a, b) = continued_amplitudes(&p, c(k, 0.0)).unwrap();
        let (am, bm) = continued_amplitudes(&p, c(-k, 0.0)).unwrap();
        assert!((am - a.conj()).norm() < 1e-10 * a.norm() && (bm - b.conj()).norm() < 1e-10 * a.norm());
    }
}

#[test]
fn incoming_amplitude_vanishes_at_jost_poles() {
    let p = Potential::cutoff(10.0, 1.0, 2.0);
    let cfg = JostConfig::for_potential(&p);
    let region = Region::new(0.2, 5.2, -1.3, -0.2).unwrap();
    let root_cfg = RootFindConfig {
        residual_tolerance: 1e-9,
        step_tolerance: 1e-12,
        ..RootFindConfig::default()
    };
    let mut checked = 0;
    for parity in Parity::BOTH {
        let search = find_poles(&p, parity, &region, (51, 12), &cfg, &default_root_config()).unwrap();
        for q in &search.poles {
            let a = newton_complex(|k| Ok(continued_amplitudes(&p, k)?.0), q.k, &root_cfg).unwrap();
            assert!((a.k - q.k).norm() < 1e-6, "{} {}", a.k, q.k);
            checked += 1;
        }
    }
    assert!(checked >= 4, "{checked}");
}

#[test]
fn gaussian_asymptotic_poles_seed_born_roots() {
    for v0 in [0.1, 10.0] {
        let p = Potential::gaussian(v0, 1.0);
        let mut last = f64::INFINITY;
        for a in poles_gaussian_asymptotic(&p, 10, 40)
            .unwrap()
            .into_iter()
            .filter(|a| a.pole.k.re > 0.0)
        {
            let r = residual_gaussian_sum(&p, a.pole.parity).unwrap();
            let root = newton_complex(|k| r.eval(k), a.pole.k, &RootFindConfig::default()).unwrap();
            assert!((root.k - a.pole.k).norm() < 0.1, "{} {}", root.k, a.pole.k);
            let AsymptoticCoordinates::Gaussian { n, .. } = a.coordinates else {
                unreachable!()
            };
            // distance from the relation 2√n = V₀e^γ
            let (_, _, gamma) = gaussian_coordinates(root.k, 1.0);
            let miss = (gamma - (2.0 * (n as f64).sqrt() / v0).ln()).abs();
            assert!(miss < last, "V0={v0} n={n} {miss} {last}");
            last = miss;
        }
    }
}

#[test]
fn cutoff_asymptotic_spacing_approaches_quarter_wave() {
    // weak coupling keeps the σ-dependent shift of the real part small
    let b = 10.0;
    let p = Potential::cutoff(0.1, 1.0, b);
    let re = |n: i64| {
        poles_cutoff_asymptotic(&p, n, n)
            .unwrap()
            .into_iter()
            .find(|a| a.pole.k.re > 0.0)
            .unwrap()
            .pole
            .k
            .re
    };
    let expected = std::f64::consts::PI / (2.0 * b);
    for n in [20, 21] {
        let gap = re(n) - re(n - 1);
        assert!((gap / expected - 1.0).abs() < 0.05, "{gap} {expected}");
    }
}

#[test]
fn cutoff_born_roots_follow_the_parity_rule() {
    let b = 10.0;
    let p = Potential::cutoff(10.0, 1.0, b);
    let region = Region::new(2.0, 4.0, -1.0, -0.2).unwrap();
    let mut count = 0;
    for parity in Parity::BOTH {
        let r = residual_cutoff(&p, parity).unwrap();
        let map = grid_scan(|k| r.eval(k), &region, 161, 41).unwrap();
        for s in &map.seeds {
            let Ok(root) = newton_complex(|k| r.eval(k), s.k, &RootFindConfig::default()) else {
                continue;
            };
            if !region.contains(root.k, 0.0) {
                continue;
            }
            let n = (2.0 * b * root.k.re / std::f64::consts::PI + 0.5).round() as i64;
            let want = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
            assert_eq!(parity, want, "{}", root.k);
            count += 1;
        }
    }
    assert!(count >= 10, "{count}");
}

#[test]
fn exponential_born_pair_sits_near_jost_pair() {
    let p = Potential::exponential(0.001, 1.0);
    let cfg = JostConfig::for_potential(&p);
    for parity in Parity::BOTH {
        let born = c(0.0, -0.5 * (1.0 + parity.sigma() * 0.001));
        let q = refine_seed(&p, parity, born, &cfg, &default_root_config()).unwrap();
        assert!((q.k - born).norm() <= 2.0 * 1e-6, "{parity:?} {}", q.k);
    }
}
