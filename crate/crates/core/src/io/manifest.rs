use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::memory::{materialize, MemoryKind, MemorySpec};
use crate::target::{Activation, TargetConfig, RNG_ALGORITHM};

pub const SCHEMA_VERSION: &str = "1";
pub const PRECISION: &str = "float64";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryEntry {
    pub kind: MemoryKind,
    pub alpha: f64,
    /// Solved scaling value; `null` for Airy kernels.
    pub mu: Option<f64>,
    pub alpha_max: f64,
    pub epsilon: f64,
    /// Area-matching residual (exp kernels only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Activations {
    pub sigma1: Activation,
    pub sigma2: Activation,
}

/// Describes how a dataset directory was generated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: String,
    pub memory: MemoryEntry,
    #[serde(rename = "T")]
    pub t_max: usize,
    pub n_sequences: usize,
    pub seed: u64,
    pub rng_algorithm: String,
    pub activations: Activations,
    pub precision: String,
    pub created_utc: String,
}

impl Manifest {
    pub fn from_config(config: &TargetConfig) -> Self {
        let spec = config.kernel.spec();
        Manifest {
            schema_version: SCHEMA_VERSION.to_string(),
            memory: MemoryEntry {
                kind: spec.kind,
                alpha: spec.alpha,
                mu: config.kernel.mu(),
                alpha_max: spec.alpha_max,
                epsilon: spec.epsilon,
                residual: config.kernel.residual(),
            },
            t_max: spec.t_max,
            n_sequences: config.n_sequences,
            seed: config.seed,
            rng_algorithm: RNG_ALGORITHM.to_string(),
            activations: Activations { sigma1: config.sigma1, sigma2: config.sigma2 },
            precision: PRECISION.to_string(),
            created_utc: chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Manifest(format!("unsupported schema version {:?}", self.schema_version)));
        }
        if self.precision != PRECISION {
            return Err(Error::Manifest(format!("precision must be {PRECISION:?}, got {:?}", self.precision)));
        }
        if self.n_sequences == 0 {
            return Err(Error::Manifest("n_sequences must be positive".into()));
        }
        self.memory_spec()?;
        Ok(())
    }

    pub fn memory_spec(&self) -> Result<MemorySpec> {
        let m = &self.memory;
        MemorySpec::with_tail(m.kind, m.alpha, self.t_max, m.alpha_max, m.epsilon)
            .map_err(|e| Error::Manifest(e.to_string()))
    }

    /// Rebuilds the generating config, checking the recorded scaling value
    /// against a fresh solve.
    pub fn target_config(&self) -> Result<TargetConfig> {
        self.validate()?;
        if self.rng_algorithm != RNG_ALGORITHM {
            return Err(Error::Manifest(format!(
                "dataset drawn with {:?}; this build uses {RNG_ALGORITHM:?}",
                self.rng_algorithm
            )));
        }
        let kernel = materialize(self.memory_spec()?)?;
        match (kernel.mu(), self.memory.mu) {
            (None, None) => {}
            (Some(fresh), Some(recorded)) if (fresh - recorded).abs() <= 1e-9 * fresh.abs().max(1.0) => {}
            (fresh, recorded) => {
                return Err(Error::Manifest(format!("recorded mu {recorded:?} disagrees with solved {fresh:?}")));
            }
        }
        Ok(TargetConfig {
            kernel,
            n_sequences: self.n_sequences,
            seed: self.seed,
            sigma1: self.activations.sigma1,
            sigma2: self.activations.sigma2,
        })
    }
}
