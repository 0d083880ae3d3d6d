//! The four subcommands. Each validates its part of the configuration, runs
//! the solvers and writes its files into the output directory.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use siegert_core::jost::SeedFailure;
use siegert_core::numerics::Region;
use siegert_core::probes::{fit_pole_argument, ladder_stats, ArgumentFit, LadderStats};
use siegert_core::scattering::{peak_prominence, transmission_sample, TransmissionSample};
use siegert_core::{Classification, Complex64, Parity, Pole, Potential};

use crate::config::{
    ExponentCase, LadderProbe, PotentialSpec, RunConfig, SolverKind, Tolerances, DEFAULT_EXPONENT_REGION,
    DEFAULT_EXPONENT_RESOLUTION,
};
use crate::num::{nums, Num};
use crate::pipeline::{axis_tolerance, density_map, expand, residual, solve, sort_poles, unpaired, SolverRun};
use crate::report::{ensure_dir, label, pole_records, write_csv, write_json, FailureRecord, MapReport, PoleRecord};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Scan,
    Poles,
    Transmit,
    Conjecture,
}

pub fn run(cmd: Command, cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    match cmd {
        Command::Scan => cmd_scan(cfg, out),
        Command::Poles => cmd_poles(cfg, out),
        Command::Transmit => cmd_transmit(cfg, out),
        Command::Conjecture => cmd_conjecture(cfg, out),
    }
}

pub fn cmd_scan(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    cfg.validate_search()?;
    let p = cfg.potential()?;
    let spec = PotentialSpec::from_potential(&p);
    let scale = p.scale();
    let region = cfg.region(scale)?;
    let (nx, ny) = cfg.resolution()?;
    let jost_cfg = cfg.tolerances.jost_config(&p)?;
    ensure_dir(out)?;
    let mut files = Vec::new();
    for solver in expand(cfg.solver, &p) {
        for parity in cfg.parity.parities() {
            let f = residual(solver, &p, parity, &jost_cfg)?;
            let map = density_map(f, &region, nx, ny)?;
            let rows: Vec<Vec<f64>> = (0..ny)
                .flat_map(|j| (0..nx).map(move |i| (i, j)))
                .map(|(i, j)| {
                    let k = map.point(i, j) / scale;
                    vec![k.re, k.im, map.value(i, j).log10()]
                })
                .collect();
            let stem = format!("{}_{}", solver.name(), parity.name());
            files.push(write_csv(
                out,
                &format!("density_{stem}.csv"),
                &["re_k", "im_k", "log10_abs_f"],
                &rows,
            )?);
            let report = MapReport::new(solver.name(), parity, &spec, scale, &map);
            files.push(write_json(out, &format!("scan_{stem}.json"), &report)?);
        }
    }
    Ok(files)
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub parity: &'static str,
    pub jost_re: Num,
    pub jost_im: Num,
    pub born_re: Num,
    pub born_im: Num,
    pub born_distance: Num,
    pub exact_re: Num,
    pub exact_im: Num,
    pub exact_distance: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolesReport {
    pub potential: PotentialSpec,
    pub scale: Num,
    pub solver: &'static str,
    pub poles: Vec<PoleRecord>,
    pub unpaired: usize,
    pub failures: Vec<FailureRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Vec<Comparison>>,
}

/// Runs every selected solver and parity; the pole list of each run is
/// pair-completed.
pub fn search_all(cfg: &RunConfig) -> Result<(Potential, Vec<SolverRun>), CliError> {
    cfg.validate_search()?;
    let p = cfg.potential()?;
    let region = cfg.region(p.scale())?;
    let resolution = cfg.resolution()?;
    let jost_cfg = cfg.tolerances.jost_config(&p)?;
    let root_cfg = cfg.tolerances.root_config()?;
    let mut runs = Vec::new();
    for solver in expand(cfg.solver, &p) {
        for parity in cfg.parity.parities() {
            runs.push(solve(solver, &p, parity, &region, resolution, &jost_cfg, &root_cfg)?);
        }
    }
    Ok((p, runs))
}

fn nearest(poles: &[Pole], parity: Parity, k: Complex64) -> Option<Complex64> {
    poles
        .iter()
        .filter(|q| q.parity == parity)
        .map(|q| q.k)
        .min_by(|a, b| (a - k).norm().total_cmp(&(b - k).norm()))
}

fn comparison(runs: &[SolverRun], scale: f64) -> Vec<Comparison> {
    let of = |s: SolverKind| -> Vec<Pole> {
        runs.iter()
            .filter(|r| r.solver == s)
            .flat_map(|r| r.poles.iter().copied())
            .collect()
    };
    let (born, exact) = (of(SolverKind::Born), of(SolverKind::Exact));
    let mut jost = of(SolverKind::Jost);
    sort_poles(&mut jost);
    let cell = |other: Option<Complex64>, k: Complex64| match other {
        Some(o) => (Num(o.re / scale), Num(o.im / scale), Num((o - k).norm() / scale)),
        None => (Num(f64::NAN), Num(f64::NAN), Num(f64::NAN)),
    };
    jost.iter()
        .map(|q| {
            let (born_re, born_im, born_distance) = cell(nearest(&born, q.parity, q.k), q.k);
            let (exact_re, exact_im, exact_distance) = cell(nearest(&exact, q.parity, q.k), q.k);
            Comparison {
                parity: q.parity.name(),
                jost_re: Num(q.k.re / scale),
                jost_im: Num(q.k.im / scale),
                born_re,
                born_im,
                born_distance,
                exact_re,
                exact_im,
                exact_distance,
            }
        })
        .collect()
}

pub fn poles_report(cfg: &RunConfig, p: &Potential, runs: &[SolverRun]) -> PolesReport {
    let scale = p.scale();
    let tol = axis_tolerance(p);
    let mut poles: Vec<Pole> = runs.iter().flat_map(|r| r.poles.iter().copied()).collect();
    sort_poles(&mut poles);
    let unpaired_total = runs.iter().map(|r| unpaired(&r.poles, scale, tol)).sum();
    let failures = runs
        .iter()
        .flat_map(|r| {
            r.failures
                .iter()
                .map(|f| FailureRecord::new(f, scale, Some(r.parity), Some(r.solver.name())))
        })
        .collect();
    PolesReport {
        potential: PotentialSpec::from_potential(p),
        scale: Num(scale),
        solver: cfg.solver.name(),
        poles: pole_records(&poles, scale),
        unpaired: unpaired_total,
        failures,
        comparison: (cfg.solver == SolverKind::All).then(|| comparison(runs, scale)),
    }
}

pub fn cmd_poles(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let (p, runs) = search_all(cfg)?;
    ensure_dir(out)?;
    Ok(vec![write_json(out, "poles.json", &poles_report(cfg, &p, &runs))?])
}

pub fn transmission_curve(p: &Potential, ks: &[f64]) -> Result<Vec<TransmissionSample>, CliError> {
    let samples: Vec<_> = ks.par_iter().map(|k| transmission_sample(p, *k)).collect();
    Ok(samples.into_iter().collect::<siegert_core::Result<Vec<_>>>()?)
}

/// Evenly spaced wave numbers from k_min to k_max inclusive.
pub fn k_grid(k_min: f64, k_max: f64, samples: usize) -> Vec<f64> {
    (0..samples)
        .map(|i| k_min + (k_max - k_min) * i as f64 / (samples - 1) as f64)
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveReport {
    pub b: Num,
    pub file: String,
    pub prominence: Num,
    pub max_unitarity_error: Num,
    /// sup |T_b − T_baseline| over the sampled window.
    pub sup_diff_to_baseline: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransmitReport {
    pub v0: Num,
    pub kappa0: Num,
    pub k_min: Num,
    pub k_max: Num,
    pub samples: usize,
    pub baseline: Option<Num>,
    pub curves: Vec<CurveReport>,
    /// Prominence strictly decreasing along the cutoffs sorted by b.
    pub prominence_decreasing: bool,
}

pub fn cmd_transmit(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let (t, v0, kappa0) = cfg.validate_transmit()?;
    ensure_dir(out)?;
    let ks: Vec<f64> = k_grid(t.k_min, t.k_max, t.samples)
        .into_iter()
        .map(|k| k * kappa0)
        .collect();
    let baseline = match t.baseline {
        Some(b) => Some(transmission_curve(&Potential::cutoff(v0, kappa0, b / kappa0), &ks)?),
        None => None,
    };
    let mut files = Vec::new();
    let mut curves = Vec::new();
    for &b in &t.cutoffs {
        let s = transmission_curve(&Potential::cutoff(v0, kappa0, b / kappa0), &ks)?;
        let rows: Vec<Vec<f64>> = s.iter().map(|x| vec![x.k / kappa0, x.t, x.r]).collect();
        let name = format!("transmission_b{}.csv", label(b));
        files.push(write_csv(out, &name, &["k", "T", "R"], &rows)?);
        let sup = baseline
            .as_ref()
            .map(|base| s.iter().zip(base).map(|(a, c)| (a.t - c.t).abs()).fold(0.0, f64::max))
            .unwrap_or(f64::NAN);
        curves.push(CurveReport {
            b: Num(b),
            file: name,
            prominence: Num(peak_prominence(&s)),
            max_unitarity_error: Num(s.iter().map(|x| (x.t + x.r - 1.0).abs()).fold(0.0, f64::max)),
            sup_diff_to_baseline: Num(sup),
        });
    }
    let mut by_b: Vec<(f64, f64)> = curves.iter().map(|c| (c.b.0, c.prominence.0)).collect();
    by_b.sort_by(|a, b| a.0.total_cmp(&b.0));
    let report = TransmitReport {
        v0: Num(v0),
        kappa0: Num(kappa0),
        k_min: Num(t.k_min),
        k_max: Num(t.k_max),
        samples: t.samples,
        baseline: t.baseline.map(Num),
        curves,
        prominence_decreasing: by_b.windows(2).all(|w| w[1].1 < w[0].1),
    };
    files.push(write_json(out, "transmission_report.json", &report)?);
    Ok(files)
}

/// Jost poles of one cutoff exponential, both parities, in the strip below the
/// real axis where the cutoff ladder lives. `b` is in units of 1/κ₀.
#[derive(Debug, Clone)]
pub struct LadderRun {
    pub b: f64,
    pub poles: Vec<Pole>,
    pub failures: Vec<(Parity, SeedFailure)>,
    pub stats: LadderStats,
}

pub fn ladder_region(probe: &LadderProbe, b: f64) -> (Region, (usize, usize)) {
    let dx = PI / (2.0 * b) / probe.points_per_spacing as f64;
    let (im_min, im_max) = (-0.5 - 2.5 / b, -0.05);
    let nx = (probe.re_max / dx).ceil() as usize + 1;
    let ny = (((im_max - im_min) / dx).ceil() as usize + 1).min(400);
    let region = Region {
        re_min: 0.0,
        re_max: probe.re_max,
        im_min,
        im_max,
    }
    .scaled(probe.kappa0);
    (region, (nx, ny))
}

pub fn run_ladder(probe: &LadderProbe, b: f64, tol: &Tolerances) -> Result<LadderRun, CliError> {
    let p = Potential::cutoff(probe.v0, probe.kappa0, b / probe.kappa0);
    p.validate().map_err(|e| CliError::config(format!("ladder: {e}")))?;
    let (region, resolution) = ladder_region(probe, b);
    let jost_cfg = tol.jost_config(&p)?;
    let root_cfg = tol.root_config()?;
    let mut poles = Vec::new();
    let mut failures = Vec::new();
    for parity in Parity::BOTH {
        let run = solve(SolverKind::Jost, &p, parity, &region, resolution, &jost_cfg, &root_cfg)?;
        poles.extend(run.poles);
        failures.extend(run.failures.into_iter().map(|f| (parity, f)));
    }
    sort_poles(&mut poles);
    let stats = ladder_stats(&poles, probe.kappa0, b / probe.kappa0, probe.re_max * probe.kappa0);
    Ok(LadderRun {
        b,
        poles,
        failures,
        stats,
    })
}

#[derive(Debug, Clone)]
pub struct ExponentRun {
    pub case: ExponentCase,
    pub poles: Vec<Pole>,
    pub failures: Vec<(Parity, SeedFailure)>,
    pub fit: Option<ArgumentFit>,
}

impl ExponentRun {
    pub fn exploratory(&self) -> bool {
        self.case.lambda != 1.0 && self.case.lambda != 2.0
    }

    pub fn count(&self, class: Classification) -> usize {
        self.poles.iter().filter(|q| q.classification == Some(class)).count()
    }
}

pub fn run_exponent(case: &ExponentCase, outer: usize, tol: &Tolerances) -> Result<ExponentRun, CliError> {
    let p = Potential::super_gaussian(case.v0, case.a0, case.lambda);
    p.validate()
        .map_err(|e| CliError::config(format!("exponent case: {e}")))?;
    let region = case.region.unwrap_or(DEFAULT_EXPONENT_REGION).region(case.a0)?;
    let [nx, ny] = case.resolution.unwrap_or(DEFAULT_EXPONENT_RESOLUTION);
    let jost_cfg = tol.jost_config(&p)?;
    let root_cfg = tol.root_config()?;
    let mut poles = Vec::new();
    let mut failures = Vec::new();
    for parity in Parity::BOTH {
        let run = solve(SolverKind::Jost, &p, parity, &region, (nx, ny), &jost_cfg, &root_cfg)?;
        poles.extend(run.poles);
        failures.extend(run.failures.into_iter().map(|f| (parity, f)));
    }
    sort_poles(&mut poles);
    let fit = fit_pole_argument(&poles, case.lambda, outer);
    Ok(ExponentRun {
        case: case.clone(),
        poles,
        failures,
        fit,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderReport {
    pub b: Num,
    pub count: usize,
    pub mean_im: Num,
    pub expected_im: Num,
    pub im_offset: Num,
    pub mean_spacing: Num,
    pub expected_spacing: Num,
    pub spacing_ratio: Num,
    pub gaps: Vec<Num>,
    pub poles: Vec<PoleRecord>,
    pub failures: Vec<FailureRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExponentReport {
    pub lambda: Num,
    pub v0: Num,
    pub a0: Num,
    pub exploratory: bool,
    pub bound_states: usize,
    pub used: usize,
    pub fitted_argument: Num,
    pub expected_argument: Num,
    pub deviation: Num,
    pub below_line: Option<bool>,
    pub poles: Vec<PoleRecord>,
    pub failures: Vec<FailureRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub ladders: Vec<LadderReport>,
    pub exponents: Vec<ExponentReport>,
}

pub fn ladder_report(run: &LadderRun, kappa0: f64) -> LadderReport {
    let s = &run.stats;
    LadderReport {
        b: Num(run.b),
        count: s.count,
        mean_im: Num(s.mean_im / kappa0),
        expected_im: Num(-0.5),
        im_offset: Num(s.im_offset / kappa0),
        mean_spacing: Num(s.mean_spacing / kappa0),
        expected_spacing: Num(s.expected_spacing / kappa0),
        spacing_ratio: Num(s.mean_spacing / s.expected_spacing),
        gaps: nums(&s.gaps.iter().map(|g| g / kappa0).collect::<Vec<_>>()),
        poles: pole_records(&run.poles, kappa0),
        failures: run
            .failures
            .iter()
            .map(|(par, f)| FailureRecord::new(f, kappa0, Some(*par), None))
            .collect(),
    }
}

pub fn exponent_report(run: &ExponentRun) -> ExponentReport {
    let a0 = run.case.a0;
    let nan = Num(f64::NAN);
    ExponentReport {
        lambda: Num(run.case.lambda),
        v0: Num(run.case.v0),
        a0: Num(a0),
        exploratory: run.exploratory(),
        bound_states: run.count(Classification::Bound),
        used: run.fit.map_or(0, |f| f.used),
        fitted_argument: run.fit.map_or(nan, |f| Num(f.fitted_argument)),
        expected_argument: Num(-PI / (2.0 * run.case.lambda)),
        deviation: run.fit.map_or(nan, |f| Num(f.deviation)),
        below_line: run.fit.map(|f| f.below_line),
        poles: pole_records(&run.poles, a0),
        failures: run
            .failures
            .iter()
            .map(|(par, f)| FailureRecord::new(f, a0, Some(*par), None))
            .collect(),
    }
}

pub fn cmd_conjecture(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let c = cfg.validate_conjecture()?;
    ensure_dir(out)?;
    let mut ladders = Vec::new();
    if let Some(probe) = &c.ladder {
        for &b in &probe.cutoffs {
            ladders.push(ladder_report(&run_ladder(probe, b, &cfg.tolerances)?, probe.kappa0));
        }
    }
    let exponents = c
        .exponents
        .iter()
        .map(|case| run_exponent(case, c.outer, &cfg.tolerances).map(|r| exponent_report(&r)))
        .collect::<Result<Vec<_>, _>>()?;
    let report = ConjectureReport { ladders, exponents };
    Ok(vec![write_json(out, "conjecture_report.json", &report)?])
}
