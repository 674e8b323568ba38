//! Closed-form semiclassical approximation of ⟨x(t)⟩ for a Gaussian packet,
//! and helpers for reading the oscillation envelope off a time series.

use std::f64::consts::PI;

use super::state::PacketSpec;
use crate::classical::damped_bounce_series;
use crate::error::{Error, Result};
use crate::scaling::UnitSystem;

/// π² x0 / (2σ²) with x0 and σ measured in l_g.
pub fn damping_exponent(packet: &PacketSpec, units: &UnitSystem) -> f64 {
    let x0 = packet.x0() / units.length();
    let sigma = packet.sigma() / units.length();
    PI * PI * x0 / (2.0 * sigma * sigma)
}

/// ⟨x(t)⟩ ≈ (2/3) x0 - (4 x0/π²) Σ ((-1)^n/n²) exp(-n² κ) cos(π n t / T),
/// κ = π² x0/(2σ²) in units of l_g, T the classical drop time.
///
/// Uses the same period-2T cosine convention as
/// [`crate::classical::bounce_fourier`].
pub fn expectation_x_series(packet: &PacketSpec, units: &UnitSystem, t: f64, n_terms: usize) -> Result<f64> {
    series_with_exponent(
        packet.x0(),
        units.gravity(),
        damping_exponent(packet, units),
        t,
        n_terms,
    )
}

/// The series with the damping exponent κ given directly; κ = 0 recovers
/// the classical Fourier series.
pub fn series_with_exponent(x0: f64, gravity: f64, exponent: f64, t: f64, n_terms: usize) -> Result<f64> {
    if n_terms == 0 {
        return Err(Error::domain("series needs at least one term"));
    }
    if exponent.is_nan() || exponent < 0.0 {
        return Err(Error::domain(format!("damping exponent must be >= 0, got {exponent}")));
    }
    let drop = (2.0 * x0 / gravity).sqrt();
    Ok(damped_bounce_series(x0, drop, t, n_terms, |n| {
        let nf = n as f64;
        (-nf * nf * exponent).exp()
    }))
}

/// Half peak-to-peak swing of `values` in consecutive windows of `window`
/// samples. A trailing partial window is dropped.
pub fn oscillation_amplitudes(values: &[f64], window: usize) -> Vec<f64> {
    if window == 0 {
        return Vec::new();
    }
    values
        .chunks_exact(window)
        .map(|w| {
            let (lo, hi) = w.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
            0.5 * (hi - lo)
        })
        .collect()
}

/// Where the amplitude sequence first falls below `collapse` times its first
/// entry and, after that, first rises above `revival` times it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseRevival {
    pub collapse_window: usize,
    pub revival_window: usize,
    pub min_ratio: f64,
    pub revival_ratio: f64,
}

pub fn find_collapse_revival(amplitudes: &[f64], collapse: f64, revival: f64) -> Option<CollapseRevival> {
    let first = *amplitudes.first()?;
    if first <= 0.0 {
        return None;
    }
    let collapse_window = amplitudes.iter().position(|&a| a < collapse * first)?;
    let revival_window = amplitudes[collapse_window..]
        .iter()
        .position(|&a| a > revival * first)?
        + collapse_window;
    let min_ratio = amplitudes[collapse_window..revival_window]
        .iter()
        .fold(f64::INFINITY, |m, &a| m.min(a))
        / first;
    Some(CollapseRevival {
        collapse_window,
        revival_window,
        min_ratio,
        revival_ratio: amplitudes[revival_window] / first,
    })
}
