//! Synthetic sequence-to-sequence benchmarks with controllable memory.
//!
//! A target is `y(t) = sigma1( sum_{s=0}^t rho(s, alpha) sigma2(x(t-s)) )`
//! where the memory function `rho` is one of four families (exponential,
//! polynomial, impulse, truncated Airy) and `alpha` in `[0, 1]` controls how
//! strong the temporal dependence is. The crate builds these kernels,
//! generates datasets, computes difficulty diagnostics (tail energy, TCN
//! bound, causal-matrix spectrum) and aggregates training results.

pub mod airy;
pub mod analysis;
mod error;
pub mod io;
pub mod matrix;
pub mod memory;
pub mod scaling;
mod sum;
pub mod target;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use memory::{materialize, MemoryKernel, MemoryKind, MemorySpec};
pub use target::{generate, Activation, Dataset, TargetConfig};
