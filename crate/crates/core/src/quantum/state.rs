//! Packets expanded over the eigenbasis and their unitary evolution.

use std::sync::Arc;

use num_complex::Complex64;

use super::basis::Eigenbasis;
use crate::error::{Error, Result};
use crate::specfun::{integrate_1d, QuadratureSpec};

/// Largest acceptable 1 - Σ|c_n|² after projection.
pub const MAX_TRUNCATION_LOSS: f64 = 1e-3;
/// Tolerance on negative variances produced by rounding.
pub const NEGATIVE_VARIANCE_TOL: f64 = 1e-10;

/// Gaussian packet Ψ(x, 0) = (2/(πσ²))^{1/4} exp(-(x - x0)²/σ²).
///
/// With this normalisation the position variance is σ²/4, not σ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketSpec {
    x0: f64,
    sigma: f64,
}

impl PacketSpec {
    pub fn new(x0: f64, sigma: f64) -> Result<Self> {
        if !(x0.is_finite() && x0 > 0.0) {
            return Err(Error::domain(format!("packet height must be positive, got {x0}")));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::domain(format!("packet width must be positive, got {sigma}")));
        }
        Ok(Self { x0, sigma })
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// x0 ≥ 4σ keeps the probability below the mirror under 1e-6.
    pub fn check_half_line(&self) -> Result<()> {
        if self.x0 < 4.0 * self.sigma {
            return Err(Error::domain(format!(
                "packet at x0 = {} with sigma = {} leaks below the mirror; need x0 >= 4 sigma",
                self.x0, self.sigma
            )));
        }
        Ok(())
    }

    /// Ψ(x, 0) in units of length^{-1/2}.
    pub fn amplitude(&self, x: f64) -> f64 {
        let d = (x - self.x0) / self.sigma;
        (2.0 / (std::f64::consts::PI * self.sigma * self.sigma)).powf(0.25) * (-d * d).exp()
    }
}

/// Expansion coefficients over an eigenbasis at time `time`.
#[derive(Debug, Clone)]
pub struct SpectralState {
    basis: Arc<Eigenbasis>,
    coefficients: Vec<Complex64>,
    time: f64,
}

impl SpectralState {
    pub fn new(basis: Arc<Eigenbasis>, coefficients: Vec<Complex64>, time: f64) -> Result<Self> {
        if coefficients.len() != basis.n_max() {
            return Err(Error::domain(format!(
                "{} coefficients for a basis of {} levels",
                coefficients.len(),
                basis.n_max()
            )));
        }
        Ok(Self {
            basis,
            coefficients,
            time,
        })
    }

    /// The k-th eigenstate at t = 0.
    pub fn eigenstate(basis: Arc<Eigenbasis>, k: usize) -> Result<Self> {
        let n = basis.n_max();
        if k >= n {
            return Err(Error::domain(format!("level index {k} outside basis of {n}")));
        }
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        c[k] = Complex64::new(1.0, 0.0);
        Self::new(basis, c, 0.0)
    }

    pub fn basis(&self) -> &Arc<Eigenbasis> {
        &self.basis
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// Σ|c_n|²
    pub fn norm_squared(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }

    /// 1 - Σ|c_n|², the weight outside the truncated basis.
    pub fn truncation_loss(&self) -> f64 {
        1.0 - self.norm_squared()
    }

    /// Ψ(x, t) reconstructed from the coefficients, units length^{-1/2}.
    pub fn wavefunction(&self, x: f64) -> Complex64 {
        let units = self.basis.units();
        let xs = x / units.length();
        let sum: Complex64 = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| c * self.basis.eigenfunction(k, xs))
            .sum();
        sum / units.length().sqrt()
    }

    /// Σ_{k,j} conj(c_k) c_j M_kj
    fn quadratic_form(&self, m: &super::basis::SymmetricMatrix) -> Complex64 {
        let c = &self.coefficients;
        c.iter()
            .enumerate()
            .map(|(k, ck)| {
                let row = m.row(k);
                let inner: Complex64 = row.iter().zip(c).map(|(mkj, cj)| cj * *mkj).sum();
                ck.conj() * inner
            })
            .sum()
    }
}

/// Projects a real amplitude `f` (dimensionless height, dimensionless
/// amplitude) onto the basis by quadrature over `[lower, upper]`.
fn project_with<F: Fn(f64) -> f64>(
    f: F,
    lower: f64,
    upper: f64,
    basis: &Eigenbasis,
    quad: &QuadratureSpec,
) -> Result<Vec<Complex64>> {
    (0..basis.n_max())
        .map(|k| {
            // beyond this point ψ_k is below machine precision
            let hi = upper.min(basis.zeros()[k] + 14.0);
            if hi <= lower {
                return Ok(Complex64::new(0.0, 0.0));
            }
            integrate_1d(|x| basis.eigenfunction(k, x) * f(x), lower, hi, quad)
                .map(|v| Complex64::new(v, 0.0))
                .map_err(|e| Error::BasisElement {
                    row: k,
                    col: k,
                    source: Box::new(e),
                })
        })
        .collect()
}

/// Projects an arbitrary real amplitude given in dimensionless units on
/// [0, upper]. No normalisation is applied.
pub fn project_function<F: Fn(f64) -> f64>(
    f: F,
    upper: f64,
    basis: &Arc<Eigenbasis>,
    quad: &QuadratureSpec,
) -> Result<SpectralState> {
    let c = project_with(f, 0.0, upper, basis, quad)?;
    SpectralState::new(Arc::clone(basis), c, 0.0)
}

/// Expands the Gaussian packet over the basis, c_n = ∫_0^∞ ψ_n Ψ(x, 0) dx.
///
/// The packet is renormalised to its weight on x ≥ 0 first. Fails if more
/// than [`MAX_TRUNCATION_LOSS`] of the weight lies outside the basis.
pub fn project_packet(packet: &PacketSpec, basis: &Arc<Eigenbasis>, quad: &QuadratureSpec) -> Result<SpectralState> {
    packet.check_half_line()?;
    let l = basis.units().length();
    let x0 = packet.x0() / l;
    let sigma = packet.sigma() / l;
    let scaled = PacketSpec::new(x0, sigma)?;

    // exp(-8²) is far below double precision
    let lower = (x0 - 8.0 * sigma).max(0.0);
    let upper = x0 + 8.0 * sigma;
    let weight = integrate_1d(|x| scaled.amplitude(x).powi(2), lower, upper, quad)?;
    let renorm = 1.0 / weight.sqrt();

    let c = project_with(|x| renorm * scaled.amplitude(x), lower, upper, basis, quad)?;
    let state = SpectralState::new(Arc::clone(basis), c, 0.0)?;
    let loss = state.truncation_loss();
    if loss > MAX_TRUNCATION_LOSS {
        return Err(Error::InsufficientBasis {
            loss,
            limit: MAX_TRUNCATION_LOSS,
            n_max: basis.n_max(),
        });
    }
    Ok(state)
}

/// Advances the state by `dt`: c_n → c_n exp(-i E_n dt / ħ).
pub fn evolve(state: &SpectralState, dt: f64) -> Result<SpectralState> {
    if !(dt.is_finite() && dt >= 0.0) {
        return Err(Error::domain(format!("evolution time must be >= 0, got {dt}")));
    }
    let units = state.basis.units();
    let phase_rate = dt / units.time();
    let coefficients = state
        .coefficients
        .iter()
        .zip(state.basis.zeros())
        .map(|(c, &x)| c * Complex64::from_polar(1.0, -x * phase_rate))
        .collect();
    Ok(SpectralState {
        basis: Arc::clone(&state.basis),
        coefficients,
        time: state.time + dt,
    })
}

/// ⟨x⟩ in units of length.
pub fn expectation_x(state: &SpectralState) -> f64 {
    state.quadratic_form(state.basis.position_matrix()).re * state.basis.units().length()
}

/// ⟨x²⟩ - ⟨x⟩² in units of length².
pub fn variance_x(state: &SpectralState) -> Result<f64> {
    let l = state.basis.units().length();
    let x = state.quadratic_form(state.basis.position_matrix()).re;
    let x2 = state.quadratic_form(state.basis.position_squared_matrix()?).re;
    let var = x2 - x * x;
    if var < -NEGATIVE_VARIANCE_TOL * x2.abs().max(1.0) {
        return Err(Error::Numerical(format!("negative position variance {var:e}")));
    }
    Ok(var.max(0.0) * l * l)
}
