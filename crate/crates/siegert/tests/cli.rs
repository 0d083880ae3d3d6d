use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;
use siegert::config::{
    Decay, ExpTermSpec, GaussTermSpec, ParitySelection, PotentialSpec, RegionSpec, RunConfig, SolverKind,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_siegert"))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(cmd: &str, config: &Path, out: &Path, extra: &[&str]) -> Output {
    bin()
        .arg(cmd)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .expect("spawn siegert")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn k_of(p: &Value) -> (f64, f64) {
    (p["k_re"].as_f64().unwrap(), p["k_im"].as_f64().unwrap())
}

#[test]
fn malformed_config_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), "bad.json", r#"{"potential": {"family": "square"}}"#);
    let out = run("scan", &bad, dir.path(), &[]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));

    let missing = run("poles", &dir.path().join("absent.json"), dir.path(), &[]);
    assert_eq!(missing.status.code(), Some(2));

    let region = write_config(
        dir.path(),
        "region.json",
        r#"{"potential": {"family": "exp_sum", "terms": [{"v": 0.4, "kappa": 1}]},
            "region": {"re_min": 1, "re_max": 0, "im_min": -1, "im_max": 0}}"#,
    );
    assert_eq!(run("scan", &region, dir.path(), &[]).status.code(), Some(2));

    let coarse = write_config(
        dir.path(),
        "coarse.json",
        r#"{"potential": {"family": "exp_sum", "terms": [{"v": 0.4, "kappa": 1}]},
            "region": {"re_min": 0, "re_max": 1, "im_min": -1, "im_max": 0}, "resolution": [2, 2]}"#,
    );
    assert_eq!(run("scan", &coarse, dir.path(), &[]).status.code(), Some(2));

    let exact = write_config(
        dir.path(),
        "exact.json",
        r#"{"potential": {"family": "gaussian_sum", "terms": [{"v": 0.1, "a": 1}]},
            "region": {"re_min": 0, "re_max": 1, "im_min": -1, "im_max": 0}, "solver": "exact"}"#,
    );
    assert_eq!(run("poles", &exact, dir.path(), &[]).status.code(), Some(2));
}

#[test]
fn integrator_failure_everywhere_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"potential": {"family": "gaussian_sum", "terms": [{"v": 0.1, "a": 1}]},
            "region": {"re_min": 0.5, "re_max": 1, "im_min": -1, "im_max": -0.5}, "resolution": [3, 3],
            "tolerances": {"ode_rel": 1e-300, "ode_abs": 1e-300}}"#,
    );
    let out = run("scan", &cfg, dir.path(), &["--parity", "even"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn poles_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let cfg = configs().join("exponential_weak.json");
    assert!(run("poles", &cfg, &a, &[]).status.success());
    assert!(run("poles", &cfg, &b, &[]).status.success());
    assert_eq!(
        fs::read(a.join("poles.json")).unwrap(),
        fs::read(b.join("poles.json")).unwrap()
    );
}

#[test]
fn weak_exponential_reports_the_anti_bound_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        "poles",
        &configs().join("exponential_weak.json"),
        dir.path(),
        &["--solver", "jost"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&dir.path().join("poles.json"));
    let poles = report["poles"].as_array().unwrap();
    assert!(poles.iter().all(|p| p["provenance"] == "jost"));
    let alpha: f64 = 0.01;
    for (parity, target) in [("even", -0.505), ("odd", -0.495)] {
        let best = poles
            .iter()
            .filter(|p| p["parity"] == parity && p["class"] == "anti-bound")
            .map(|p| {
                let (re, im) = k_of(p);
                re.hypot(im - target)
            })
            .fold(f64::INFINITY, f64::min);
        assert!(best <= 2.0 * alpha * alpha, "{parity}: {best}");
    }
    assert!(report.get("comparison").is_none());
}

#[test]
fn solver_all_adds_a_comparison_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run("poles", &configs().join("exponential_weak.json"), dir.path(), &[]);
    assert!(out.status.success());
    let report = json(&dir.path().join("poles.json"));
    let provenances: Vec<&str> = report["poles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["provenance"].as_str().unwrap())
        .collect();
    for name in ["jost", "exact-bessel", "born-refined"] {
        assert!(provenances.contains(&name), "{name} missing");
    }
    assert!(!report["comparison"].as_array().unwrap().is_empty());
}

#[test]
fn strong_gaussian_has_three_bound_states() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "g.json",
        r#"{"potential": {"family": "gaussian_sum", "terms": [{"v": 10, "a": 1}]},
            "region": {"re_min": -0.25, "re_max": 0.25, "im_min": 0.05, "im_max": 3}, "resolution": [11, 60]}"#,
    );
    assert!(run("poles", &cfg, dir.path(), &[]).status.success());
    let report = json(&dir.path().join("poles.json"));
    let bound = report["poles"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["class"] == "bound")
        .count();
    assert_eq!(bound, 3);
}

#[test]
fn resonances_come_with_mirrors() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(
        "poles",
        &configs().join("oscillatory.json"),
        dir.path(),
        &["--solver", "jost"]
    )
    .status
    .success());
    let report = json(&dir.path().join("poles.json"));
    let poles = report["poles"].as_array().unwrap();
    let resonant: Vec<_> = poles.iter().filter(|p| p["class"] == "resonant").collect();
    assert!(!resonant.is_empty());
    for r in resonant {
        let (re, im) = k_of(r);
        let mirrored = poles.iter().any(|p| {
            let (a, b) = k_of(p);
            p["parity"] == r["parity"] && p["class"] == "anti-resonant" && (a + re).hypot(b - im) < 1e-8
        });
        assert!(mirrored, "{re} {im}");
    }
    assert_eq!(report["unpaired"], 0);
}

#[test]
fn free_born_scan_has_no_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "free.json",
        r#"{"potential": {"family": "exp_sum", "terms": [{"v": 0, "kappa": 1}]},
            "region": {"re_min": 0.1, "re_max": 3, "im_min": -3, "im_max": -0.1}, "resolution": [21, 21], "solver": "born"}"#,
    );
    assert!(run("scan", &cfg, dir.path(), &[]).status.success());
    for parity in ["even", "odd"] {
        let scan = json(&dir.path().join(format!("scan_born_{parity}.json")));
        assert_eq!(scan["seeds"].as_array().unwrap().len(), 0, "{parity}");
    }
}

#[test]
fn cutoff_scan_resolves_the_ladder() {
    let dir = tempfile::tempdir().unwrap();
    let out = run("scan", &configs().join("cutoff_ladder.json"), dir.path(), &[]);
    assert!(out.status.success());
    let mut seeds = 0;
    for parity in ["even", "odd"] {
        let scan = json(&dir.path().join(format!("scan_jost_{parity}.json")));
        seeds += scan["seeds"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|s| s["k_re"].as_f64().unwrap() > 0.0 && s["k_re"].as_f64().unwrap() <= 4.0)
            .count();
        let csv = fs::read_to_string(dir.path().join(format!("density_jost_{parity}.csv"))).unwrap();
        assert_eq!(csv.lines().next(), Some("re_k,im_k,log10_abs_f"));
        assert_eq!(csv.lines().count(), 1 + 161 * 39);
    }
    assert!(seeds >= 12, "{seeds}");
}

#[test]
fn zero_cutoff_transmits_fully() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "t.json",
        r#"{"potential": {"family": "cutoff_exp", "v0": 10, "kappa0": 1, "b": 10},
            "transmit": {"cutoffs": [0, 1], "k_min": 0.1, "k_max": 5, "samples": 40}}"#,
    );
    let out = run("transmit", &cfg, dir.path(), &[]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_path(dir.path().join("transmission_b0.csv")).unwrap();
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        assert_eq!(rec[1].parse::<f64>().unwrap(), 1.0);
        assert_eq!(rec[2].parse::<f64>().unwrap(), 0.0);
        rows += 1;
    }
    assert_eq!(rows, 40);
    let report = json(&dir.path().join("transmission_report.json"));
    assert_eq!(report["curves"].as_array().unwrap().len(), 2);
    assert!(report["baseline"].is_null());
}

#[test]
fn transmit_rejects_other_families() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "t.json",
        r#"{"potential": {"family": "exp_sum", "terms": [{"v": 1, "kappa": 1}]},
            "transmit": {"cutoffs": [1], "k_min": 0.1, "k_max": 5, "samples": 40}}"#,
    );
    assert_eq!(run("transmit", &cfg, dir.path(), &[]).status.code(), Some(2));
}

fn potential_spec() -> impl Strategy<Value = PotentialSpec> {
    let v = -20.0..20.0f64;
    let pos = 0.05..5.0f64;
    prop_oneof![
        prop::collection::vec(
            (v.clone(), pos.clone(), prop::option::of(-3.0..3.0f64)).prop_map(|(v, k, im)| ExpTermSpec {
                v,
                kappa: im.map_or(Decay::Real(k), |im| Decay::Complex([k, im])),
            }),
            1..4
        )
        .prop_map(|terms| PotentialSpec::ExpSum { terms }),
        (v.clone(), pos.clone(), 0.0..20.0f64).prop_map(|(v0, kappa0, b)| PotentialSpec::CutoffExp { v0, kappa0, b }),
        prop::collection::vec((v.clone(), pos.clone()).prop_map(|(v, a)| GaussTermSpec { v, a }), 1..4)
            .prop_map(|terms| PotentialSpec::GaussianSum { terms }),
        (v, pos, 1.0..6.0f64).prop_map(|(v0, a0, lambda)| PotentialSpec::SuperGaussian { v0, a0, lambda }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn config_survives_a_json_round_trip(
        potential in potential_spec(),
        parity in prop_oneof![Just(ParitySelection::Even), Just(ParitySelection::Odd), Just(ParitySelection::Both)],
        solver in prop_oneof![Just(SolverKind::Born), Just(SolverKind::Exact), Just(SolverKind::Jost), Just(SolverKind::All)],
        (re_min, width, im_min, height) in (-5.0..5.0f64, 0.1..5.0f64, -5.0..0.0f64, 0.1..5.0f64),
        resolution in (2..200usize, 2..200usize),
        residual in prop::option::of(1e-14..1e-6f64),
    ) {
        let cfg = RunConfig {
            potential: Some(potential),
            parity,
            region: Some(RegionSpec { re_min, re_max: re_min + width, im_min, im_max: im_min + height }),
            resolution: [resolution.0, resolution.1],
            solver,
            tolerances: siegert::config::Tolerances { residual, ..Default::default() },
            transmit: None,
            conjecture: None,
            output: None,
        };
        let text = serde_json::to_string(&cfg).unwrap();
        prop_assert_eq!(RunConfig::from_json(&text).unwrap(), cfg);
    }
}
