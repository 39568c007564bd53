//! Scaling functions: maps from the memory strength `alpha` to kernel
//! parameters.
//!
//! * polynomial: `mu_poly(alpha) = alpha * alpha_max`, where `alpha_max`
//!   keeps the tail beyond `T` below a threshold `epsilon`;
//! * exponential: `mu_exp(alpha)` matches the area of the polynomial
//!   kernel over `[0, T]`;
//! * impulse: `mu_delta(alpha) = floor(alpha * T / 2)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

/// Smallest `alpha` accepted for exponential and polynomial kernels.
pub const ALPHA_MIN: f64 = 0.01;

/// Relative residual targeted by the bisection solvers.
pub const SOLVER_TOLERANCE: f64 = 1e-12;

pub const MAX_ITERATIONS: usize = 200;

const ALPHA_MAX_BRACKET: (f64, f64) = (0.06, 0.99);
const MU_EXP_LOWER: f64 = 1e-6;
const TAIL_EXPLICIT_TERMS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingSolution {
    pub mu: f64,
    /// Absolute constraint violation at `mu`.
    pub residual: f64,
    pub iterations: usize,
}

/// `sum_{s=T+1}^inf (1+s)^(-1/a)`.
///
/// Terms are summed explicitly up to `s = max(10 T, 1e6)`; the remainder is
/// the midpoint of the integral bracket `[int_{S+1}^inf, int_S^inf]` of
/// `u^(-p)`, whose error is `O(p (p-1) / S^2)` relative.
pub fn poly_tail(t_max: usize, a: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("tail parameter {a} must be positive")));
    }
    let exponent = 1.0 / a;
    if exponent <= 1.0 {
        return Err(Error::Divergence { exponent });
    }
    let last = (10 * t_max).max(TAIL_EXPLICIT_TERMS).max(t_max + 1);

    // terms (1+s)^-p for s in T+1..=last, i.e. n^-p for n in T+2..=last+1,
    // added smallest first
    let mut sum = NeumaierSum::default();
    for n in (t_max + 2..=last + 1).rev() {
        sum.add((n as f64).powf(-exponent));
    }
    let upper_limit = (last + 1) as f64;
    let integral_from = |u: f64| u.powf(1.0 - exponent) / (exponent - 1.0);
    // sum_{n > last+1} n^-p lies between int_{last+2} and int_{last+1}
    let remainder = 0.5 * (integral_from(upper_limit) + integral_from(upper_limit + 1.0));
    sum.add(remainder);
    Ok(sum.value())
}

/// Solves `poly_tail(T, a) = epsilon` for `a` by bisection on `[0.06, 0.99]`.
pub fn solve_alpha_max(t_max: usize, epsilon: f64) -> Result<ScalingSolution> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::Domain(format!("epsilon {epsilon} must be positive")));
    }
    // the tail grows with a
    bisect(ALPHA_MAX_BRACKET.0, ALPHA_MAX_BRACKET.1, epsilon, |a| poly_tail(t_max, a))
}

pub fn mu_poly(alpha: f64, alpha_max: f64) -> f64 {
    alpha * alpha_max
}

/// `sum_{s=0}^T exp(-s / mu)` in closed form.
pub fn exp_area(mu: f64, t_max: usize) -> f64 {
    let ratio = -(-1.0 / mu).exp_m1();
    if ratio == 1.0 {
        // exp(-1/mu) underflowed relative to 1
        return 1.0;
    }
    -(-((t_max + 1) as f64) / mu).exp_m1() / ratio
}

/// `sum_{s=0}^T (1+s)^(-1/mu)`, summed smallest term first.
pub fn poly_area(mu: f64, t_max: usize) -> f64 {
    let exponent = 1.0 / mu;
    let mut sum = NeumaierSum::default();
    for n in (1..=t_max + 1).rev() {
        sum.add((n as f64).powf(-exponent));
    }
    sum.value()
}

/// Finds `mu_exp(alpha)` so the exponential kernel has the same area over
/// `[0, T]` as the polynomial kernel with `mu_poly(alpha)`.
pub fn solve_mu_exp(alpha: f64, t_max: usize, alpha_max: f64) -> Result<ScalingSolution> {
    if !(ALPHA_MIN..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("alpha {alpha} outside [{ALPHA_MIN}, 1]")));
    }
    if !(alpha_max > 0.0 && alpha_max < 1.0) {
        return Err(Error::Domain(format!("alpha_max {alpha_max} outside (0, 1)")));
    }
    if t_max == 0 {
        return Err(Error::Domain("T must be at least 1".into()));
    }
    let target = poly_area(mu_poly(alpha, alpha_max), t_max);
    bisect(MU_EXP_LOWER, 10.0 * t_max as f64, target, |mu| Ok(exp_area(mu, t_max)))
}

/// `floor(alpha * T / 2)`.
pub fn mu_delta(alpha: f64, t_max: usize) -> usize {
    (alpha * t_max as f64 / 2.0).floor() as usize
}

/// Bisection for an increasing `f` with `f(x) = target`.
fn bisect<F>(mut lo: f64, mut hi: f64, target: f64, f: F) -> Result<ScalingSolution>
where
    F: Fn(f64) -> Result<f64>,
{
    let tolerance = SOLVER_TOLERANCE * target.abs();
    let (f_lo, f_hi) = (f(lo)? - target, f(hi)? - target);
    if f_lo.abs() <= tolerance {
        return Ok(ScalingSolution { mu: lo, residual: f_lo.abs(), iterations: 0 });
    }
    if f_hi.abs() <= tolerance {
        return Ok(ScalingSolution { mu: hi, residual: f_hi.abs(), iterations: 0 });
    }
    if f_lo > 0.0 || f_hi < 0.0 {
        return Err(Error::Bracket { lo, hi });
    }

    let mut best = ScalingSolution { mu: lo, residual: f_lo.abs(), iterations: 0 };
    for iteration in 1..=MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let value = f(mid)? - target;
        if value.abs() < best.residual {
            best = ScalingSolution { mu: mid, residual: value.abs(), iterations: iteration };
        }
        best.iterations = iteration;
        if value.abs() <= tolerance {
            return Ok(ScalingSolution { mu: mid, residual: value.abs(), iterations: iteration });
        }
        if value < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence { residual: best.residual, iterations: best.iterations })
}
