use crate::error::{Error, Result};

/// Relative mean squared error `sum |y_hat - y|^2 / sum |y|^2`.
pub fn rmse(y_hat: &[f64], y: &[f64]) -> Result<f64> {
    if y_hat.len() != y.len() {
        return Err(Error::LengthMismatch { expected: y.len(), got: y_hat.len() });
    }
    let denominator: f64 = y.iter().map(|v| v * v).sum();
    if !(denominator > 0.0) {
        return Err(Error::ZeroDenominator);
    }
    let numerator: f64 = y_hat.iter().zip(y).map(|(p, q)| (p - q) * (p - q)).sum();
    Ok(numerator / denominator)
}
