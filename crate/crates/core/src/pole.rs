use num_complex::Complex64;

use crate::Parity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Resonant,
    AntiResonant,
    Bound,
    AntiBound,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Resonant => "resonant",
            Classification::AntiResonant => "anti-resonant",
            Classification::Bound => "bound",
            Classification::AntiBound => "anti-bound",
        }
    }
}

/// Which computation produced a pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    BornClosedForm,
    BornAsymptotic,
    BornRefined,
    ExactBessel,
    TruncatedSeries,
    Jost,
    TransferMatrix,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::BornClosedForm => "born-closed-form",
            Provenance::BornAsymptotic => "born-asymptotic",
            Provenance::BornRefined => "born-refined",
            Provenance::ExactBessel => "exact-bessel",
            Provenance::TruncatedSeries => "truncated-series",
            Provenance::Jost => "jost",
            Provenance::TransferMatrix => "transfer-matrix",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleWarning {
    /// Asymptotic formula evaluated outside its large-index regime.
    OutsideAsymptoticRegime,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub k: Complex64,
    pub energy: Complex64,
    pub parity: Parity,
    /// `None` only for the threshold k = 0 or a real-axis point.
    pub classification: Option<Classification>,
    pub residual: f64,
    pub provenance: Provenance,
    pub warning: Option<PoleWarning>,
}

impl Pole {
    pub fn new(k: Complex64, parity: Parity, residual: f64, provenance: Provenance, axis_tol: f64) -> Self {
        Self {
            k,
            energy: k * k,
            parity,
            classification: classify(k, axis_tol),
            residual,
            provenance,
            warning: None,
        }
    }

    /// Mirror partner −conj(k), same parity.
    pub fn mirror(&self, axis_tol: f64) -> Self {
        let k = -self.k.conj();
        Self {
            k,
            energy: k * k,
            classification: classify(k, axis_tol),
            ..*self
        }
    }
}

/// Sign-based classification; |Re k| < `axis_tol` counts as on the imaginary axis.
pub fn classify(k: Complex64, axis_tol: f64) -> Option<Classification> {
    let on_axis = k.re.abs() < axis_tol;
    match (on_axis, k.re > 0.0, k.im) {
        (_, _, 0.0) => None,
        (true, _, im) if im > 0.0 => Some(Classification::Bound),
        (true, _, _) => Some(Classification::AntiBound),
        (false, _, im) if im > 0.0 => None,
        (false, true, _) => Some(Classification::Resonant),
        (false, false, _) => Some(Classification::AntiResonant),
    }
}
