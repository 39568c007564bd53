//! Diagnostics that predict approximation difficulty of a memory kernel.

mod complexity;
mod loss;
mod spectrum;
mod tcn;

pub use complexity::{complexity_profile, profile_of, ComplexityProfile};
pub use loss::rmse;
pub use spectrum::{causal_matrix, singular_values, singular_values_with_tau, SpectrumResult, DEFAULT_TAU, MAX_SPECTRUM_SIZE};
pub use tcn::{best_m_term_error, tcn_bound, TcnArch, TcnBoundReport, DEFAULT_RECEPTIVE_CAP, MAX_ENUMERATION_HORIZON};
