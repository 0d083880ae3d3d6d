//! JSON run configuration. Regions and wave numbers are given in units of the
//! potential's decay scale (κ₀ or a₀).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use siegert_core::jost::JostConfig;
use siegert_core::numerics::{Region, RootFindConfig};
use siegert_core::potentials::{ExpTerm, GaussTerm};
use siegert_core::{Complex64, Parity, Potential};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Decay {
    Real(f64),
    Complex([f64; 2]),
}

impl Decay {
    fn value(&self) -> Complex64 {
        match *self {
            Decay::Real(x) => Complex64::new(x, 0.0),
            Decay::Complex([re, im]) => Complex64::new(re, im),
        }
    }

    fn from_value(z: Complex64) -> Self {
        if z.im == 0.0 {
            Decay::Real(z.re)
        } else {
            Decay::Complex([z.re, z.im])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpTermSpec {
    pub v: f64,
    pub kappa: Decay,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussTermSpec {
    pub v: f64,
    pub a: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    ExpSum { terms: Vec<ExpTermSpec> },
    CutoffExp { v0: f64, kappa0: f64, b: f64 },
    GaussianSum { terms: Vec<GaussTermSpec> },
    SuperGaussian { v0: f64, a0: f64, lambda: f64 },
}

impl PotentialSpec {
    pub fn build(&self) -> Result<Potential, CliError> {
        let p = match self {
            PotentialSpec::ExpSum { terms } => Potential::ExponentialSum(
                terms
                    .iter()
                    .map(|t| ExpTerm {
                        strength: t.v,
                        decay: t.kappa.value(),
                    })
                    .collect(),
            ),
            PotentialSpec::CutoffExp { v0, kappa0, b } => Potential::cutoff(*v0, *kappa0, *b),
            PotentialSpec::GaussianSum { terms } => Potential::GaussianSum(
                terms
                    .iter()
                    .map(|t| GaussTerm {
                        strength: t.v,
                        width: t.a,
                    })
                    .collect(),
            ),
            PotentialSpec::SuperGaussian { v0, a0, lambda } => Potential::super_gaussian(*v0, *a0, *lambda),
        };
        p.validate().map_err(|e| CliError::config(format!("potential: {e}")))?;
        Ok(p)
    }

    pub fn from_potential(p: &Potential) -> Self {
        match p {
            Potential::ExponentialSum(terms) => PotentialSpec::ExpSum {
                terms: terms
                    .iter()
                    .map(|t| ExpTermSpec {
                        v: t.strength,
                        kappa: Decay::from_value(t.decay),
                    })
                    .collect(),
            },
            Potential::CutoffExponential {
                strength,
                decay,
                cutoff,
            } => PotentialSpec::CutoffExp {
                v0: *strength,
                kappa0: *decay,
                b: *cutoff,
            },
            Potential::GaussianSum(terms) => PotentialSpec::GaussianSum {
                terms: terms
                    .iter()
                    .map(|t| GaussTermSpec {
                        v: t.strength,
                        a: t.width,
                    })
                    .collect(),
            },
            Potential::SuperGaussian {
                strength,
                width,
                exponent,
            } => PotentialSpec::SuperGaussian {
                v0: *strength,
                a0: *width,
                lambda: *exponent,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ParitySelection {
    Even,
    Odd,
    #[default]
    Both,
}

impl ParitySelection {
    pub fn parities(self) -> Vec<Parity> {
        match self {
            ParitySelection::Even => vec![Parity::Even],
            ParitySelection::Odd => vec![Parity::Odd],
            ParitySelection::Both => Parity::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Born,
    Exact,
    #[default]
    Jost,
    All,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Born => "born",
            SolverKind::Exact => "exact",
            SolverKind::Jost => "jost",
            SolverKind::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl RegionSpec {
    /// The rectangle in absolute units of k.
    pub fn region(&self, scale: f64) -> Result<Region, CliError> {
        Region::new(self.re_min, self.re_max, self.im_min, self.im_max)
            .map(|r| r.scaled(scale))
            .map_err(|e| CliError::config(format!("region: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub residual: Option<f64>,
    pub step: Option<f64>,
    pub max_iterations: Option<usize>,
    pub derivative_step: Option<f64>,
    pub ode_abs: Option<f64>,
    pub ode_rel: Option<f64>,
    /// In units of 1/scale.
    pub x_max: Option<f64>,
}

impl Tolerances {
    pub fn root_config(&self) -> Result<RootFindConfig, CliError> {
        let d = siegert_core::jost::default_root_config();
        let cfg = RootFindConfig {
            residual_tolerance: self.residual.unwrap_or(d.residual_tolerance),
            step_tolerance: self.step.unwrap_or(d.step_tolerance),
            max_iterations: self.max_iterations.unwrap_or(d.max_iterations),
            derivative_step: self.derivative_step.unwrap_or(d.derivative_step),
        };
        cfg.validate()
            .map_err(|e| CliError::config(format!("tolerances: {e}")))?;
        Ok(cfg)
    }

    pub fn jost_config(&self, p: &Potential) -> Result<JostConfig, CliError> {
        let d = JostConfig::for_potential(p);
        let cfg = JostConfig {
            abs_tol: self.ode_abs.unwrap_or(d.abs_tol),
            rel_tol: self.ode_rel.unwrap_or(d.rel_tol),
            x_max: self.x_max.map(|x| x / p.scale()).unwrap_or(d.x_max),
            ..d
        };
        cfg.validate()
            .map_err(|e| CliError::config(format!("tolerances: {e}")))?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransmitSpec {
    /// Cutoff radii in units of 1/κ₀; the potential's own b is replaced.
    pub cutoffs: Vec<f64>,
    pub k_min: f64,
    pub k_max: f64,
    pub samples: usize,
    /// Cutoff used as the no-cutoff stand-in for the sup-norm comparison.
    #[serde(default)]
    pub baseline: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderProbe {
    pub v0: f64,
    pub kappa0: f64,
    pub cutoffs: Vec<f64>,
    /// Upper end of the Re k window, units of κ₀.
    pub re_max: f64,
    /// Grid points per expected spacing π/(2b).
    #[serde(default = "default_points_per_spacing")]
    pub points_per_spacing: usize,
}

fn default_points_per_spacing() -> usize {
    6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentCase {
    pub lambda: f64,
    pub v0: f64,
    #[serde(default = "one")]
    pub a0: f64,
    #[serde(default)]
    pub region: Option<RegionSpec>,
    #[serde(default)]
    pub resolution: Option<[usize; 2]>,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjectureSpec {
    #[serde(default)]
    pub ladder: Option<LadderProbe>,
    #[serde(default)]
    pub exponents: Vec<ExponentCase>,
    /// Number of largest-|k| poles entering the argument fit.
    #[serde(default = "default_outer")]
    pub outer: usize,
}

fn default_outer() -> usize {
    3
}

pub const DEFAULT_EXPONENT_REGION: RegionSpec = RegionSpec {
    re_min: -0.25,
    re_max: 6.0,
    im_min: -6.0,
    im_max: 3.0,
};
pub const DEFAULT_EXPONENT_RESOLUTION: [usize; 2] = [101, 145];

fn default_resolution() -> [usize; 2] {
    [81, 81]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub potential: Option<PotentialSpec>,
    #[serde(default)]
    pub parity: ParitySelection,
    #[serde(default)]
    pub region: Option<RegionSpec>,
    #[serde(default = "default_resolution")]
    pub resolution: [usize; 2],
    #[serde(default)]
    pub solver: SolverKind,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub transmit: Option<TransmitSpec>,
    #[serde(default)]
    pub conjecture: Option<ConjectureSpec>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn potential(&self) -> Result<Potential, CliError> {
        self.potential
            .as_ref()
            .ok_or_else(|| CliError::config("missing \"potential\""))?
            .build()
    }

    pub fn region(&self, scale: f64) -> Result<Region, CliError> {
        self.region
            .ok_or_else(|| CliError::config("missing \"region\""))?
            .region(scale)
    }

    pub fn resolution(&self) -> Result<(usize, usize), CliError> {
        check_resolution(self.resolution)
    }

    /// Checks everything a scan or pole search needs.
    pub fn validate_search(&self) -> Result<(), CliError> {
        let p = self.potential()?;
        self.region(p.scale())?;
        self.resolution()?;
        self.tolerances.root_config()?;
        self.tolerances.jost_config(&p)?;
        if self.solver == SolverKind::Exact && exact_parameters(&p).is_none() {
            return Err(CliError::config(
                "the exact solver needs a single real exponential term",
            ));
        }
        Ok(())
    }

    pub fn validate_transmit(&self) -> Result<(&TransmitSpec, f64, f64), CliError> {
        let Some(PotentialSpec::CutoffExp { v0, kappa0, .. }) = &self.potential else {
            return Err(CliError::config("transmit needs a cutoff_exp potential"));
        };
        self.potential()?;
        let t = self
            .transmit
            .as_ref()
            .ok_or_else(|| CliError::config("missing \"transmit\""))?;
        if t.cutoffs.is_empty() || t.cutoffs.iter().any(|b| !(*b >= 0.0) || !b.is_finite()) {
            return Err(CliError::config("transmit.cutoffs must be non-negative"));
        }
        if !(t.k_min > 0.0 && t.k_max > t.k_min && t.k_max.is_finite()) || t.samples < 3 {
            return Err(CliError::config("transmit needs 0 < k_min < k_max and samples ≥ 3"));
        }
        if let Some(b) = t.baseline {
            if !(b > 0.0) {
                return Err(CliError::config("transmit.baseline must be positive"));
            }
        }
        Ok((t, *v0, *kappa0))
    }

    pub fn validate_conjecture(&self) -> Result<&ConjectureSpec, CliError> {
        let c = self
            .conjecture
            .as_ref()
            .ok_or_else(|| CliError::config("missing \"conjecture\""))?;
        if c.ladder.is_none() && c.exponents.is_empty() {
            return Err(CliError::config("conjecture needs a ladder probe or exponent cases"));
        }
        if let Some(l) = &c.ladder {
            Potential::exponential(l.v0, l.kappa0)
                .validate()
                .map_err(|e| CliError::config(format!("ladder: {e}")))?;
            if l.cutoffs.is_empty() || l.cutoffs.iter().any(|b| !(*b > 0.0)) || !(l.re_max > 0.0) {
                return Err(CliError::config("ladder needs positive cutoffs and re_max"));
            }
            if l.points_per_spacing < 2 {
                return Err(CliError::config("ladder.points_per_spacing must be at least 2"));
            }
        }
        for case in &c.exponents {
            let p = Potential::super_gaussian(case.v0, case.a0, case.lambda);
            p.validate()
                .map_err(|e| CliError::config(format!("exponent case: {e}")))?;
            case.region.unwrap_or(DEFAULT_EXPONENT_REGION).region(case.a0)?;
            check_resolution(case.resolution.unwrap_or(DEFAULT_EXPONENT_RESOLUTION))?;
        }
        if c.outer == 0 {
            return Err(CliError::config("conjecture.outer must be positive"));
        }
        Ok(c)
    }
}

fn check_resolution(r: [usize; 2]) -> Result<(usize, usize), CliError> {
    if r[0] < 3 || r[1] < 3 || r[0] * r[1] > 4_000_000 {
        return Err(CliError::config(
            "resolution must be at least 3×3 and at most 4e6 points",
        ));
    }
    Ok((r[0], r[1]))
}

/// (V₀, κ₀) when the potential is a single real exponential.
pub fn exact_parameters(p: &Potential) -> Option<(f64, f64)> {
    match p.canonical() {
        Potential::ExponentialSum(terms) if terms.len() == 1 && terms[0].decay.im == 0.0 => {
            Some((terms[0].strength, terms[0].decay.re))
        }
        _ => None,
    }
}
