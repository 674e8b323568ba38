//! Classical particle dropped from rest above a perfectly reflecting mirror.
//!
//! Between bounces the height is the free-fall parabola. With the particle
//! released at rest from `x0` at t = 0 it reaches the mirror after the drop
//! time `T = sqrt(2 x0 / g)` and returns to the apex at `2T`, so the
//! trajectory is periodic with period `2T`.
//!
//! Fourier convention: over one period the bounce is `x0 (1 - (t/T)²)` for
//! |t| ≤ T, whose cosine series is
//!
//! ```text
//! x(t) = (2/3) x0 - (4 x0 / π²) Σ_{n≥1} ((-1)^n / n²) cos(2π n t / (2T))
//! ```
//!
//! The variant with `+` in front of the sum and `cos(2π n t / T)` evaluates
//! to x0/3 at the apex and is convex between contacts, so it cannot
//! describe the bounce for any choice of time origin. The period-2T form
//! above is the one used here and by the quantum series.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Initial data for a drop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BounceSpec {
    x0: f64,
    v0: f64,
    g: f64,
}

impl BounceSpec {
    /// Released at rest from height `x0`.
    pub fn new(x0: f64, g: f64) -> Result<Self> {
        Self::with_velocity(x0, 0.0, g)
    }

    pub fn with_velocity(x0: f64, v0: f64, g: f64) -> Result<Self> {
        if !(x0.is_finite() && x0 >= 0.0) {
            return Err(Error::domain(format!("drop height must be finite and >= 0, got {x0}")));
        }
        if !v0.is_finite() {
            return Err(Error::domain(format!("initial velocity must be finite, got {v0}")));
        }
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::domain(format!("gravity must be positive, got {g}")));
        }
        Ok(Self { x0, v0, g })
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// T = sqrt(2 x0 / g)
    pub fn drop_time(&self) -> f64 {
        (2.0 * self.x0 / self.g).sqrt()
    }

    /// 2T, apex to apex.
    pub fn period(&self) -> f64 {
        2.0 * self.drop_time()
    }

    fn require_rest(&self) -> Result<()> {
        if self.v0 != 0.0 {
            return Err(Error::Unsupported(format!(
                "bounce trains are defined for release at rest, got v0 = {}",
                self.v0
            )));
        }
        Ok(())
    }
}

/// x0 + v0 t - g t²/2, ignoring the mirror.
pub fn free_fall(spec: &BounceSpec, t: f64) -> f64 {
    spec.x0 + spec.v0 * t - 0.5 * spec.g * t * t
}

/// v0 - g t, ignoring the mirror.
pub fn free_fall_velocity(spec: &BounceSpec, t: f64) -> f64 {
    spec.v0 - spec.g * t
}

/// Height above the mirror at time `t`, with elastic reflection.
///
/// Time is folded into the first period, so the cost does not grow with the
/// number of bounces.
pub fn bounce_trajectory(spec: &BounceSpec, t: f64) -> Result<f64> {
    spec.require_rest()?;
    if spec.x0 == 0.0 {
        return Ok(0.0);
    }
    let drop = spec.drop_time();
    let phase = t.rem_euclid(2.0 * drop);
    let since_apex = if phase <= drop { phase } else { 2.0 * drop - phase };
    let x = spec.x0 - 0.5 * spec.g * since_apex * since_apex;
    Ok(x.clamp(0.0, spec.x0))
}

/// The bounce train's cosine series truncated after `n_terms` harmonics.
pub fn bounce_fourier(spec: &BounceSpec, t: f64, n_terms: usize) -> Result<f64> {
    spec.require_rest()?;
    if n_terms == 0 {
        return Err(Error::domain("Fourier series needs at least one term"));
    }
    if spec.x0 == 0.0 {
        return Ok(0.0);
    }
    Ok(damped_bounce_series(spec.x0, spec.drop_time(), t, n_terms, |_| 1.0))
}

/// (2/3) x0 - (4 x0/π²) Σ_{n=1}^{N} ((-1)^n / n²) d(n) cos(π n t / T)
///
/// Shared by the classical series (d = 1) and the damped quantum series.
pub(crate) fn damped_bounce_series<D: Fn(usize) -> f64>(
    x0: f64,
    drop_time: f64,
    t: f64,
    n_terms: usize,
    damping: D,
) -> f64 {
    let omega = PI / drop_time;
    let sum: f64 = (1..=n_terms)
        .map(|n| {
            let nf = n as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sign / (nf * nf) * damping(n) * (nf * omega * t).cos()
        })
        .sum();
    2.0 / 3.0 * x0 - 4.0 * x0 / (PI * PI) * sum
}
