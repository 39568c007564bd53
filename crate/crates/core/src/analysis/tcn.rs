//! Approximation bound for a single-channel dilated TCN.
//!
//! With filter size `l`, depth `K` and channel counts `M_1..M_K`, the network
//! sees `l^K` past inputs and has `M = sum_{k=2}^K M_k M_{k-1} - K` effective
//! filters. The bound has two parts:
//!
//! * coverage: `C(rho|[0, l^K), M+1)`, the tail energy inside the receptive
//!   field once the largest weights are matched exactly;
//! * truncation: `||rho|[l^K, T]||_2`, the weight the receptive field cannot
//!   see, over the materialized horizon only.
//!
//! The coverage term uses the squared tail energy even though the covering
//! argument bounds an absolute (l1) deviation; both terms are reported as
//! defined, not reconciled.

use serde::Serialize;

use super::complexity::profile_of;
use crate::error::{Error, Result};
use crate::memory::MemoryKernel;

/// Default cap on the receptive field `l^K`.
pub const DEFAULT_RECEPTIVE_CAP: u64 = 1 << 20;

/// Largest horizon accepted by [`best_m_term_error`].
pub const MAX_ENUMERATION_HORIZON: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TcnArch {
    filter_size: usize,
    channels: Vec<usize>,
    receptive_field: u64,
}

impl TcnArch {
    pub fn new(filter_size: usize, channels: Vec<usize>) -> Result<Self> {
        Self::with_cap(filter_size, channels, DEFAULT_RECEPTIVE_CAP)
    }

    pub fn with_cap(filter_size: usize, channels: Vec<usize>, cap: u64) -> Result<Self> {
        if filter_size < 2 {
            return Err(Error::Domain(format!("filter size {filter_size} must be at least 2")));
        }
        if channels.is_empty() {
            return Err(Error::Domain("depth must be at least 1".into()));
        }
        if channels.contains(&0) {
            return Err(Error::Domain("channel counts must be positive".into()));
        }
        let depth = channels.len();
        let overflow = Error::ReceptiveFieldOverflow { filter: filter_size, depth, cap };
        let receptive_field = u32::try_from(depth)
            .ok()
            .and_then(|d| (filter_size as u64).checked_pow(d))
            .filter(|&r| r <= cap)
            .ok_or(overflow)?;
        Ok(TcnArch { filter_size, channels, receptive_field })
    }

    pub fn filter_size(&self) -> usize {
        self.filter_size
    }

    pub fn depth(&self) -> usize {
        self.channels.len()
    }

    pub fn channels(&self) -> &[usize] {
        &self.channels
    }

    /// `l^K`.
    pub fn receptive_field(&self) -> u64 {
        self.receptive_field
    }

    /// `sum_{k=2}^K M_k M_{k-1} - K`. Negative for very small networks.
    pub fn effective_filters(&self) -> i64 {
        let pairs: i64 = self.channels.windows(2).map(|w| (w[0] * w[1]) as i64).sum();
        pairs - self.channels.len() as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TcnBoundReport {
    pub effective_filters: i64,
    pub receptive_field: u64,
    pub coverage_term: f64,
    pub truncation_term: f64,
    pub total: f64,
}

/// Evaluates both terms of the bound (scalar setting, `d = 1`).
pub fn tcn_bound(kernel: &MemoryKernel, arch: &TcnArch) -> TcnBoundReport {
    let rho = kernel.values();
    let window = usize::try_from(arch.receptive_field()).unwrap_or(usize::MAX).min(rho.len());
    let (inside, outside) = rho.split_at(window);

    let m = arch.effective_filters();
    let covered = usize::try_from(m + 1).unwrap_or(0);
    let coverage_term = profile_of(inside).at(covered);
    let truncation_term = outside.iter().map(|v| v * v).sum::<f64>().sqrt();

    TcnBoundReport {
        effective_filters: m,
        receptive_field: arch.receptive_field(),
        coverage_term,
        truncation_term,
        total: coverage_term + truncation_term,
    }
}

/// Minimum over all supports `S` of size `m` in `[0, horizon)` of
/// `sum_{s in [0, horizon) \ S} rho(s)^2`, by exhaustive enumeration.
pub fn best_m_term_error(kernel: &MemoryKernel, m: usize, horizon: usize) -> Result<f64> {
    if horizon > MAX_ENUMERATION_HORIZON {
        return Err(Error::HorizonTooLarge(horizon));
    }
    let rho = kernel.values();
    if horizon > rho.len() {
        return Err(Error::Domain(format!("horizon {horizon} beyond kernel length {}", rho.len())));
    }
    if m >= horizon {
        return Ok(0.0);
    }
    let squares: Vec<f64> = rho[..horizon].iter().map(|v| v * v).collect();
    let best = (0u32..1 << horizon)
        .filter(|mask| mask.count_ones() as usize == m)
        .map(|mask| {
            squares
                .iter()
                .enumerate()
                .filter(|(s, _)| mask & (1 << s) == 0)
                .map(|(_, sq)| sq)
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min);
    Ok(best)
}
