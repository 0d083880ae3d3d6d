//! Parallel scans and pole searches. Every batch is collected in grid order,
//! so results do not depend on thread scheduling.

use rayon::prelude::*;
use siegert_core::born::residual_for;
use siegert_core::exact::{exact_poles_exponential, exact_residual_exponential};
use siegert_core::jost::{cell_margin, jost_residual, merge_refined, refine_seed, JostConfig, PoleSearch, SeedFailure};
use siegert_core::numerics::{grid_points, newton_complex, DensityMap, Region, RootFindConfig};
use siegert_core::{Classification, Complex64, Error, Parity, Pole, Potential, Provenance};

use crate::config::{exact_parameters, SolverKind};

pub type Residual<'a> = Box<dyn Fn(Complex64) -> siegert_core::Result<Complex64> + Sync + 'a>;

pub fn axis_tolerance(p: &Potential) -> f64 {
    1e-6 * p.scale()
}

/// |f| on the grid, evaluated in parallel. Failed samples become +inf; a map
/// with no successful sample is an error.
pub fn density_map<F>(f: F, region: &Region, nx: usize, ny: usize) -> siegert_core::Result<DensityMap>
where
    F: Fn(Complex64) -> siegert_core::Result<Complex64> + Sync,
{
    let points = grid_points(region, nx, ny)?;
    let samples: Vec<_> = points.par_iter().map(|k| f(*k)).collect();
    if let Some(Err(e)) = samples
        .iter()
        .find(|s| s.is_err())
        .filter(|_| samples.iter().all(|s| s.is_err()))
    {
        return Err(e.clone());
    }
    DensityMap::from_samples(*region, nx, ny, &samples)
}

/// The residual whose zeros the given single solver looks for.
pub fn residual<'a>(
    solver: SolverKind,
    p: &'a Potential,
    parity: Parity,
    cfg: &'a JostConfig,
) -> siegert_core::Result<Residual<'a>> {
    match solver {
        SolverKind::Born => {
            let r = residual_for(p, parity)?;
            Ok(Box::new(move |k| r.eval(k)))
        }
        SolverKind::Exact => {
            let (v0, k0) = exact_parameters(p).ok_or(Error::InvalidPotential("exact solver needs one exponential"))?;
            let r = exact_residual_exponential(v0, k0, parity)?;
            Ok(Box::new(move |k| r.eval(k)))
        }
        SolverKind::Jost | SolverKind::All => Ok(Box::new(move |k| jost_residual(p, parity, k, cfg))),
    }
}

fn refine_parallel<R>(map: &DensityMap, refine: R) -> Vec<(Complex64, siegert_core::Result<Pole>)>
where
    R: Fn(Complex64) -> siegert_core::Result<Pole> + Sync,
{
    map.seeds.par_iter().map(|s| (s.k, refine(s.k))).collect()
}

pub fn jost_search(
    p: &Potential,
    parity: Parity,
    region: &Region,
    (nx, ny): (usize, usize),
    cfg: &JostConfig,
    root_cfg: &RootFindConfig,
) -> siegert_core::Result<PoleSearch> {
    p.validate()?;
    cfg.validate()?;
    let map = density_map(|k| jost_residual(p, parity, k, cfg), region, nx, ny)?;
    let refined = refine_parallel(&map, |k| refine_seed(p, parity, k, cfg, root_cfg));
    let (poles, failures) = merge_refined(p, region, cell_margin(region, nx, ny), refined);
    Ok(PoleSearch { poles, failures, map })
}

pub fn born_refine(
    p: &Potential,
    parity: Parity,
    seed: Complex64,
    root_cfg: &RootFindConfig,
) -> siegert_core::Result<Pole> {
    let r = residual_for(p, parity)?;
    let root = newton_complex(|k| r.eval_regularized(k), seed, root_cfg)?;
    if root.k.norm() < 1e-8 * p.scale() {
        return Err(Error::InvalidArgument("seed converged to the threshold k = 0"));
    }
    Ok(Pole::new(
        root.k,
        parity,
        root.residual,
        Provenance::BornRefined,
        axis_tolerance(p),
    ))
}

pub fn born_search(
    p: &Potential,
    parity: Parity,
    region: &Region,
    (nx, ny): (usize, usize),
    root_cfg: &RootFindConfig,
) -> siegert_core::Result<PoleSearch> {
    p.validate()?;
    let r = residual_for(p, parity)?;
    let map = density_map(|k| r.eval(k), region, nx, ny)?;
    let refined = refine_parallel(&map, |k| born_refine(p, parity, k, root_cfg));
    let (poles, failures) = merge_refined(p, region, cell_margin(region, nx, ny), refined);
    Ok(PoleSearch { poles, failures, map })
}

/// Bessel-zero roots of a single exponential that fall inside the region.
pub fn exact_search(
    p: &Potential,
    parity: Parity,
    region: &Region,
) -> siegert_core::Result<(Vec<Pole>, Vec<SeedFailure>)> {
    let (v0, k0) = exact_parameters(p).ok_or(Error::InvalidPotential("exact solver needs one exponential"))?;
    let n_max = ((-2.0 * region.im_min / k0).ceil().max(0.0) as u32 + 1).max(1);
    let found = exact_poles_exponential(v0, k0, parity, n_max)?;
    let poles = found.poles.into_iter().filter(|q| region.contains(q.k, 0.0)).collect();
    let failures = found
        .failures
        .into_iter()
        .map(|(n, error)| SeedFailure {
            seed: Complex64::new(0.0, -0.5 * k0 * n as f64),
            error,
        })
        .collect();
    Ok((poles, failures))
}

/// Refines −conj(k) for every off-axis pole without a partner in the list.
pub fn complete_pairs_with<R>(poles: &[Pole], scale: f64, axis_tol: f64, refine: R) -> (Vec<Pole>, Vec<SeedFailure>)
where
    R: Fn(Parity, Complex64) -> siegert_core::Result<Pole> + Sync,
{
    let close = |a: Complex64, b: Complex64| (a - b).norm() <= 1e-6 * scale.max(b.norm());
    let missing: Vec<&Pole> = poles
        .iter()
        .filter(|q| q.k.re.abs() >= axis_tol)
        .filter(|q| !poles.iter().any(|o| o.parity == q.parity && close(o.k, -q.k.conj())))
        .collect();
    let refined: Vec<_> = missing
        .par_iter()
        .map(|q| {
            let target = -q.k.conj();
            (target, refine(q.parity, target))
        })
        .collect();
    let mut out = poles.to_vec();
    let mut failures = Vec::new();
    for (seed, r) in refined {
        match r {
            Ok(m) if close(m.k, seed) => {
                if !out.iter().any(|o| o.parity == m.parity && close(o.k, m.k)) {
                    out.push(m);
                }
            }
            Ok(_) => failures.push(SeedFailure {
                seed,
                error: Error::InvalidArgument("mirror seed converged elsewhere"),
            }),
            Err(error) => failures.push(SeedFailure { seed, error }),
        }
    }
    sort_poles(&mut out);
    (out, failures)
}

/// Off-axis poles whose mirror −conj(k) is absent.
pub fn unpaired(poles: &[Pole], scale: f64, axis_tol: f64) -> usize {
    poles
        .iter()
        .filter(|q| q.k.re.abs() >= axis_tol)
        .filter(|q| {
            let m = -q.k.conj();
            !poles
                .iter()
                .any(|o| o.parity == q.parity && (o.k - m).norm() <= 1e-6 * scale.max(m.norm()))
        })
        .count()
}

/// Sorted by (Re k, Im k), with axis poles keyed at Re k = 0 so that rounding
/// noise in their real parts does not reorder them.
pub fn sort_poles(poles: &mut [Pole]) {
    let re = |p: &Pole| match p.classification {
        Some(Classification::Bound | Classification::AntiBound) => 0.0,
        _ => p.k.re,
    };
    poles.sort_by(|a, b| {
        re(a)
            .total_cmp(&re(b))
            .then(a.k.im.total_cmp(&b.k.im))
            .then((a.parity == Parity::Odd).cmp(&(b.parity == Parity::Odd)))
    });
}

/// Result of one solver over one parity.
#[derive(Debug, Clone)]
pub struct SolverRun {
    pub solver: SolverKind,
    pub parity: Parity,
    pub poles: Vec<Pole>,
    pub failures: Vec<SeedFailure>,
}

/// Search, refine and pair-complete with one solver.
pub fn solve(
    solver: SolverKind,
    p: &Potential,
    parity: Parity,
    region: &Region,
    resolution: (usize, usize),
    cfg: &JostConfig,
    root_cfg: &RootFindConfig,
) -> siegert_core::Result<SolverRun> {
    let scale = p.scale();
    let tol = axis_tolerance(p);
    let (poles, mut failures) = match solver {
        SolverKind::Born => {
            let s = born_search(p, parity, region, resolution, root_cfg)?;
            let (poles, extra) = complete_pairs_with(&s.poles, scale, tol, |par, k| born_refine(p, par, k, root_cfg));
            (poles, [s.failures, extra].concat())
        }
        SolverKind::Exact => exact_search(p, parity, region)?,
        SolverKind::Jost | SolverKind::All => {
            let s = jost_search(p, parity, region, resolution, cfg, root_cfg)?;
            let (poles, extra) =
                complete_pairs_with(&s.poles, scale, tol, |par, k| refine_seed(p, par, k, cfg, root_cfg));
            (poles, [s.failures, extra].concat())
        }
    };
    failures.sort_by(|a, b| a.seed.re.total_cmp(&b.seed.re).then(a.seed.im.total_cmp(&b.seed.im)));
    Ok(SolverRun {
        solver,
        parity,
        poles,
        failures,
    })
}

/// Single solvers behind a selection; `All` expands to those applicable to p.
pub fn expand(solver: SolverKind, p: &Potential) -> Vec<SolverKind> {
    match solver {
        SolverKind::All => {
            let mut v = vec![SolverKind::Born];
            if exact_parameters(p).is_some_and(|(v0, _)| v0 > 0.0) {
                v.push(SolverKind::Exact);
            }
            v.push(SolverKind::Jost);
            v
        }
        s => vec![s],
    }
}
