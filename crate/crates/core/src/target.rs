//! Target generation: `y(t) = sigma1( sum_{s=0}^t rho(s) sigma2(x(t-s)) )`
//! with i.i.d. standard normal inputs.

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc_inv;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::memory::MemoryKernel;

/// Name recorded in manifests for the input sampler below.
pub const RNG_ALGORITHM: &str = "chacha20-seed_from_u64-stream_per_row+inverse_normal_cdf/v1";

pub const DEFAULT_N_SEQUENCES: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    #[default]
    Tanh,
    Identity,
}

impl Activation {
    pub fn apply(self, v: f64) -> f64 {
        match self {
            Activation::Tanh => v.tanh(),
            Activation::Identity => v,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Activation::Tanh => "tanh",
            Activation::Identity => "identity",
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Activation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tanh" => Ok(Activation::Tanh),
            "identity" => Ok(Activation::Identity),
            other => Err(Error::Domain(format!("unknown activation {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TargetConfig {
    pub kernel: MemoryKernel,
    pub n_sequences: usize,
    pub seed: u64,
    pub sigma1: Activation,
    pub sigma2: Activation,
}

impl TargetConfig {
    /// Config with tanh activations on both sides.
    pub fn new(kernel: MemoryKernel, n_sequences: usize, seed: u64) -> Self {
        TargetConfig { kernel, n_sequences, seed, sigma1: Activation::Tanh, sigma2: Activation::Tanh }
    }

    pub fn with_activations(mut self, sigma1: Activation, sigma2: Activation) -> Self {
        self.sigma1 = sigma1;
        self.sigma2 = sigma2;
        self
    }

    /// Same config drawing from `seed + 1`, used for the held-out split.
    pub fn test_split(&self) -> Self {
        TargetConfig { seed: self.seed.wrapping_add(1), ..self.clone() }
    }

    pub fn seq_len(&self) -> usize {
        self.kernel.t_max() + 1
    }
}

/// Inputs `x` and targets `y`, each `n x (T+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub x: Matrix,
    pub y: Matrix,
    pub config: TargetConfig,
}

/// Applies the target functional to one input sequence by direct summation.
pub fn apply_target(kernel: &MemoryKernel, x: &[f64], sigma1: Activation, sigma2: Activation) -> Result<Vec<f64>> {
    let rho = kernel.values();
    if x.len() != rho.len() {
        return Err(Error::LengthMismatch { expected: rho.len(), got: x.len() });
    }
    let activated: Vec<f64> = x.iter().map(|&v| sigma2.apply(v)).collect();
    // zero weights contribute exactly nothing, so skip them
    let support: Vec<(usize, f64)> = rho.iter().copied().enumerate().filter(|&(_, r)| r != 0.0).collect();
    let y = (0..x.len())
        .map(|t| {
            let mut acc = 0.0;
            for &(s, r) in &support {
                if s > t {
                    break;
                }
                acc += r * activated[t - s];
            }
            sigma1.apply(acc)
        })
        .collect();
    Ok(y)
}

/// Standard normal draws for row `row` of a dataset with master seed `seed`.
///
/// Each row owns a ChaCha20 stream, so rows can be produced in any order or
/// in parallel with identical results.
pub fn normal_row(seed: u64, row: u64, len: usize) -> Vec<f64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(row);
    (0..len)
        .map(|_| {
            // 53-bit uniform on the open interval (0, 1)
            let u = ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64);
            -std::f64::consts::SQRT_2 * erfc_inv(2.0 * u)
        })
        .collect()
}

pub fn generate(config: &TargetConfig) -> Result<Dataset> {
    if config.n_sequences == 0 {
        return Err(Error::Domain("n_sequences must be at least 1".into()));
    }
    let len = config.seq_len();
    let rows: Vec<(Vec<f64>, Vec<f64>)> = (0..config.n_sequences)
        .into_par_iter()
        .map(|i| {
            let x = normal_row(config.seed, i as u64, len);
            let y = apply_target(&config.kernel, &x, config.sigma1, config.sigma2)?;
            Ok((x, y))
        })
        .collect::<Result<_>>()?;

    let mut x = Vec::with_capacity(config.n_sequences * len);
    let mut y = Vec::with_capacity(config.n_sequences * len);
    for (xr, yr) in rows {
        x.extend(xr);
        y.extend(yr);
    }
    Ok(Dataset {
        x: Matrix::from_vec(config.n_sequences, len, x)?,
        y: Matrix::from_vec(config.n_sequences, len, y)?,
        config: config.clone(),
    })
}
