//! Memory functions `rho(s, alpha)` and their dense materialization.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::airy::airy_tr;
use crate::error::{Error, Result};
use crate::scaling::{self, ALPHA_MIN};

pub const DEFAULT_ALPHA_MAX: f64 = 0.3;
pub const DEFAULT_EPSILON: f64 = 1e-8;

/// Scale factor of the Airy argument `40 (s/T - alpha/2)`.
const AIRY_STRETCH: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MemoryKind {
    Exp,
    Poly,
    Delta,
    Airy,
}

impl MemoryKind {
    pub const ALL: [MemoryKind; 4] = [MemoryKind::Exp, MemoryKind::Poly, MemoryKind::Delta, MemoryKind::Airy];

    pub fn as_str(self) -> &'static str {
        match self {
            MemoryKind::Exp => "exp",
            MemoryKind::Poly => "poly",
            MemoryKind::Delta => "delta",
            MemoryKind::Airy => "airy",
        }
    }
}

impl fmt::Display for MemoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MemoryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp" => Ok(MemoryKind::Exp),
            "poly" => Ok(MemoryKind::Poly),
            "delta" => Ok(MemoryKind::Delta),
            "airy" => Ok(MemoryKind::Airy),
            other => Err(Error::Domain(format!("unknown memory kind {other:?}"))),
        }
    }
}

/// Everything needed to build a kernel: the kind, the strength `alpha`, the
/// maximum time index `T`, and the polynomial tail parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MemorySpec {
    pub kind: MemoryKind,
    pub alpha: f64,
    pub t_max: usize,
    pub alpha_max: f64,
    pub epsilon: f64,
}

impl MemorySpec {
    /// Spec with the default `alpha_max = 0.3` and `epsilon = 1e-8`.
    pub fn new(kind: MemoryKind, alpha: f64, t_max: usize) -> Result<Self> {
        Self::with_tail(kind, alpha, t_max, DEFAULT_ALPHA_MAX, DEFAULT_EPSILON)
    }

    pub fn with_tail(kind: MemoryKind, alpha: f64, t_max: usize, alpha_max: f64, epsilon: f64) -> Result<Self> {
        let spec = MemorySpec { kind, alpha, t_max, alpha_max, epsilon };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::Domain(format!("alpha {} outside [0, 1]", self.alpha)));
        }
        if matches!(self.kind, MemoryKind::Exp | MemoryKind::Poly) && self.alpha < ALPHA_MIN {
            return Err(Error::Domain(format!(
                "alpha {} below the minimum {ALPHA_MIN} for {} kernels",
                self.alpha, self.kind
            )));
        }
        if self.t_max < 1 {
            return Err(Error::Domain("T must be at least 1".into()));
        }
        if !(self.alpha_max > 0.0 && self.alpha_max < 1.0) {
            return Err(Error::Domain(format!("alpha_max {} outside (0, 1)", self.alpha_max)));
        }
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(Error::Domain(format!("epsilon {} must be positive", self.epsilon)));
        }
        Ok(())
    }
}

/// `rho(0), ..., rho(T)` together with the spec and scaling value that
/// produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryKernel {
    spec: MemorySpec,
    values: Vec<f64>,
    mu: Option<f64>,
    residual: Option<f64>,
}

impl MemoryKernel {
    /// Wraps explicit kernel values. Used for hand-built kernels in analysis.
    pub fn from_values(spec: MemorySpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.t_max + 1 {
            return Err(Error::LengthMismatch { expected: spec.t_max + 1, got: values.len() });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("kernel values must be finite".into()));
        }
        Ok(MemoryKernel { spec, values, mu: None, residual: None })
    }

    pub fn spec(&self) -> &MemorySpec {
        &self.spec
    }

    pub fn kind(&self) -> MemoryKind {
        self.spec.kind
    }

    pub fn t_max(&self) -> usize {
        self.spec.t_max
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Scaling value: decay scale (exp), exponent parameter (poly), offset
    /// (delta). `None` for Airy kernels.
    pub fn mu(&self) -> Option<f64> {
        self.mu
    }

    /// Constraint residual of the area-matching solve (exp only).
    pub fn residual(&self) -> Option<f64> {
        self.residual
    }

    /// Offset of a delta kernel.
    pub fn delta_offset(&self) -> Option<usize> {
        match self.spec.kind {
            MemoryKind::Delta => self.mu.map(|m| m as usize),
            _ => None,
        }
    }
}

/// Evaluates `rho(s)` for the given kind and scaling value.
pub fn eval_rho(spec: &MemorySpec, mu: f64, s: usize) -> Result<f64> {
    if s > spec.t_max {
        return Err(Error::Domain(format!("index {s} beyond T = {}", spec.t_max)));
    }
    match spec.kind {
        MemoryKind::Exp => {
            check_positive(MemoryKind::Exp, mu)?;
            Ok((-(s as f64) / mu).exp())
        }
        MemoryKind::Poly => {
            check_positive(MemoryKind::Poly, mu)?;
            Ok((1.0 + s as f64).powf(-1.0 / mu))
        }
        MemoryKind::Delta => {
            if !(mu >= 0.0 && mu.fract() == 0.0 && mu <= spec.t_max as f64) {
                return Err(Error::InvalidScale { kind: "delta", mu });
            }
            Ok(if s as f64 == mu { 1.0 } else { 0.0 })
        }
        MemoryKind::Airy => airy_tr(airy_argument(spec, s)),
    }
}

fn check_positive(kind: MemoryKind, mu: f64) -> Result<()> {
    if mu > 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidScale { kind: kind.as_str(), mu })
    }
}

/// `40 (s/T - alpha/2)`.
pub fn airy_argument(spec: &MemorySpec, s: usize) -> f64 {
    AIRY_STRETCH * (s as f64 / spec.t_max as f64 - spec.alpha / 2.0)
}

/// Solves the scaling function for `spec` and evaluates the kernel on
/// `0..=T`.
pub fn materialize(spec: MemorySpec) -> Result<MemoryKernel> {
    spec.validate()?;
    let (mu, residual) = match spec.kind {
        MemoryKind::Exp => {
            let solution = scaling::solve_mu_exp(spec.alpha, spec.t_max, spec.alpha_max)?;
            (Some(solution.mu), Some(solution.residual))
        }
        MemoryKind::Poly => (Some(scaling::mu_poly(spec.alpha, spec.alpha_max)), None),
        MemoryKind::Delta => (Some(scaling::mu_delta(spec.alpha, spec.t_max) as f64), None),
        MemoryKind::Airy => (None, None),
    };
    let values = (0..=spec.t_max)
        .map(|s| eval_rho(&spec, mu.unwrap_or(0.0), s))
        .collect::<Result<Vec<_>>>()?;
    Ok(MemoryKernel { spec, values, mu, residual })
}
