use crate::memory::MemoryKernel;

/// Tail energy `C(rho, s)`: the energy left after removing the `s` largest
/// magnitudes, for `s = 0..=len`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityProfile {
    values: Vec<f64>,
    order: Vec<usize>,
}

impl ComplexityProfile {
    /// `C(rho, s)` for `s = 0..=len`; the last entry is 0.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `C(rho, s)`, zero past the end.
    pub fn at(&self, s: usize) -> f64 {
        self.values.get(s).copied().unwrap_or(0.0)
    }

    /// Time indices sorted by decreasing `|rho|`, ties by increasing index.
    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

pub fn complexity_profile(kernel: &MemoryKernel) -> ComplexityProfile {
    profile_of(kernel.values())
}

/// Profile of an arbitrary weight sequence.
pub fn profile_of(rho: &[f64]) -> ComplexityProfile {
    let mut order: Vec<usize> = (0..rho.len()).collect();
    // stable sort keeps equal magnitudes in index order
    order.sort_by(|&a, &b| rho[b].abs().total_cmp(&rho[a].abs()));

    let mut values = vec![0.0; rho.len() + 1];
    let mut acc = 0.0;
    for (rank, &t) in order.iter().enumerate().rev() {
        acc += rho[t] * rho[t];
        values[rank] = acc;
    }
    ComplexityProfile { values, order }
}
