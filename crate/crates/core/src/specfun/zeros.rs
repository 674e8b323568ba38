//! Zeros of Ai on the negative axis, returned as positive magnitudes x_n
//! with Ai(-x_n) = 0.

use std::f64::consts::PI;

use super::airy::airy;
use crate::error::{Error, Result};

pub const NEWTON_MAX_ITER: usize = 50;
pub const NEWTON_STEP_TOL: f64 = 1e-13;

/// Leading-order estimate [3π/2 (n - 1/4)]^{2/3} of the n-th zero magnitude.
pub fn airy_zero_asymptotic(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("Airy zeros are indexed from n = 1"));
    }
    Ok((1.5 * PI * (n as f64 - 0.25)).powf(2.0 / 3.0))
}

/// The n-th zero magnitude x_n, refined by Newton iteration from the
/// asymptotic seed.
pub fn airy_zero(n: usize) -> Result<f64> {
    let mut x = airy_zero_asymptotic(n)?;
    for _ in 0..NEWTON_MAX_ITER {
        let v = airy(-x)?;
        if v.ai_prime == 0.0 {
            break;
        }
        // d/dx Ai(-x) = -Ai'(-x)
        let step = v.ai / v.ai_prime;
        x += step;
        if step.abs() < NEWTON_STEP_TOL * x.max(1.0) {
            return Ok(x);
        }
    }
    Err(Error::Numerical(format!(
        "Newton iteration for Airy zero n = {n} did not converge in {NEWTON_MAX_ITER} steps (last iterate {x})"
    )))
}

/// The first `count` zero magnitudes in ascending order.
pub fn airy_zeros(count: usize) -> Result<Vec<f64>> {
    let zeros = (1..=count).map(airy_zero).collect::<Result<Vec<_>>>()?;
    if let Some(w) = zeros.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::Numerical(format!(
            "Airy zeros out of order: {} followed by {}",
            w[0], w[1]
        )));
    }
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_index_rejected() {
        assert!(airy_zero(0).is_err());
        assert!(airy_zero_asymptotic(0).is_err());
    }

    #[test]
    fn zeros_ascend_and_interlace_with_seeds() {
        let zeros = airy_zeros(40).unwrap();
        for (k, w) in zeros.windows(2).enumerate() {
            assert!(w[0] < w[1]);
            // each seed sits just below its own zero, above the previous one

            let seed = airy_zero_asymptotic(k + 2).unwrap();
            assert!(seed > w[0] && seed < w[1]);
        }
    }
}
