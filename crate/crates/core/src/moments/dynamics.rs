//! Effective Hamiltonian and equations of motion of the moment hierarchy
//! for H = p²/2m + V(x), plus a fixed-step fourth-order integrator.
//!
//! Closure: moments of total order above the state's truncation order are
//! read as zero wherever they appear on the right-hand side.

use super::linear::uncertainty_product;
use super::potential::PolynomialPotential;
use super::state::MomentState;
use crate::error::{Error, Result};

/// Relative slack on ħ²/4 before the integrator flags a state.
pub const UNCERTAINTY_SLACK: f64 = 1e-6;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// ∂^{a+b} H / ∂p^a ∂x^b at (x, p).
fn hamiltonian_derivative(v: &PolynomialPotential, mass: f64, a: usize, b: usize, x: f64, p: f64) -> f64 {
    match (a, b) {
        (0, 0) => 0.5 * p * p / mass + v.value(x),
        (0, b) => v.derivative(b, x),
        (1, 0) => p / mass,
        (2, 0) => 1.0 / mass,
        _ => 0.0,
    }
}

/// H_Q = H(x, p) + Σ_{2≤a+b≤N} (1/(a! b!)) ∂^{a+b}H/∂p^a∂x^b G^{a,b}.
pub fn effective_hamiltonian(s: &MomentState, v: &PolynomialPotential, mass: f64) -> f64 {
    let classical = hamiltonian_derivative(v, mass, 0, 0, s.x, s.p);
    let corrections: f64 = s
        .indices()
        .map(|(a, b)| hamiltonian_derivative(v, mass, a, b, s.x, s.p) * s.g(a, b) / (factorial(a) * factorial(b)))
        .sum();
    classical + corrections
}

/// Time derivative of every component of `s`, returned in the same layout.
pub fn moment_eom(s: &MomentState, v: &PolynomialPotential, mass: f64) -> Result<MomentState> {
    if s.order() < 2 {
        return Err(Error::domain("moment equations need truncation order >= 2"));
    }
    let (x, p) = (s.x, s.p);
    let h = |a, b| hamiltonian_derivative(v, mass, a, b, x, p);

    let mut dx = h(1, 0);
    let mut dp = -h(0, 1);
    for (a, b) in s.indices() {
        let weight = s.g(a, b) / (factorial(a) * factorial(b));
        dx += h(a + 1, b) * weight;
        dp -= h(a, b + 1) * weight;
    }

    let mut out = MomentState::new(s.order(), dx, dp)?;
    let degree = v.degree();
    for (a, b) in s.indices() {
        let mut rate = 0.0;
        if b > 0 {
            rate += b as f64 / mass * s.g(a + 1, b - 1);
        }
        if a > 0 {
            let coupling: f64 = (2..=degree)
                .map(|n| {
                    v.derivative(n, x) / factorial(n - 1) * (s.g(0, n - 1) * s.g(a - 1, b) - s.g(a - 1, b + n - 1))
                })
                .sum();
            rate += a as f64 * coupling;
        }
        out.set(a, b, rate)?;
    }
    Ok(out)
}

/// A state flagged for violating G^{0,2}G^{2,0} - (G^{1,1})² ≥ ħ²/4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyWarning {
    pub t: f64,
    pub product: f64,
    pub bound: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<(f64, MomentState)>,
    pub warnings: Vec<UncertaintyWarning>,
}

impl Trajectory {
    pub fn last(&self) -> &MomentState {
        &self.samples.last().expect("trajectory holds the initial state").1
    }
}

/// Number of steps and the time of each step for a fixed step `dt`; the
/// final step is shortened to land on `t_end`.
pub(crate) fn step_times(t_end: f64, dt: f64) -> Vec<f64> {
    let ratio = t_end / dt;
    let mut n = ratio.ceil() as usize;
    if n > 0 && (ratio - (n - 1) as f64).abs() <= 1e-9 * ratio.max(1.0) {
        n -= 1;
    }
    let mut times: Vec<f64> = (0..=n).map(|k| (k as f64 * dt).min(t_end)).collect();
    if let Some(last) = times.last_mut() {
        *last = t_end;
    }
    times
}

/// Classical RK4 on the moment equations from t = 0 to `t_end`.
///
/// The state update uses compensated summation, so rounding does not
/// accumulate over long runs. States violating the uncertainty relation by
/// more than [`UNCERTAINTY_SLACK`] are reported in `warnings`; with
/// truncated hierarchies for nonlinear potentials this can happen and is
/// not treated as an error.
pub fn integrate(
    s0: &MomentState,
    v: &PolynomialPotential,
    mass: f64,
    hbar: f64,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::domain(format!("step must be positive, got {dt}")));
    }
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(Error::domain(format!("end time must be >= 0, got {t_end}")));
    }
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::domain(format!("mass must be positive, got {mass}")));
    }
    let order = s0.order();
    let rhs =
        |y: &[f64]| -> Result<Vec<f64>> { moment_eom(&MomentState::from_slice(order, y), v, mass).map(|d| d.to_vec()) };

    let times = step_times(t_end, dt);
    let bound = 0.25 * hbar * hbar;
    let mut y = s0.to_vec();
    let mut carry = vec![0.0; y.len()];
    let mut samples = Vec::with_capacity(times.len());
    let mut warnings = Vec::new();
    samples.push((0.0, s0.clone()));

    for w in times.windows(2) {
        let h = w[1] - w[0];
        let k1 = rhs(&y)?;
        let k2 = rhs(&axpy(&y, 0.5 * h, &k1))?;
        let k3 = rhs(&axpy(&y, 0.5 * h, &k2))?;
        let k4 = rhs(&axpy(&y, h, &k3))?;
        for i in 0..y.len() {
            let increment = h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            // Kahan update of y[i] += increment
            let corrected = increment - carry[i];
            let sum = y[i] + corrected;
            carry[i] = (sum - y[i]) - corrected;
            y[i] = sum;
        }
        let state = MomentState::from_slice(order, &y);
        let product = uncertainty_product(&state);
        if product < bound * (1.0 - UNCERTAINTY_SLACK) {
            warnings.push(UncertaintyWarning {
                t: w[1],
                product,
                bound,
            });
        }
        samples.push((w[1], state));
    }
    Ok(Trajectory { samples, warnings })
}

fn axpy(y: &[f64], a: f64, k: &[f64]) -> Vec<f64> {
    y.iter().zip(k).map(|(yi, ki)| yi + a * ki).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_grid() {
        assert_eq!(step_times(1.0, 0.25), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let t = step_times(1.0, 0.3);
        assert_eq!(t.len(), 5);
        assert_eq!(*t.last().unwrap(), 1.0);
        assert_eq!(step_times(0.0, 0.1), vec![0.0]);
    }

    #[test]
    fn linear_equations_of_motion() {
        let (m, g) = (2.0, 9.81);
        let v = PolynomialPotential::linear(m, g);
        let s = MomentState::second_order(4, 1.3, -0.7, 0.4, 0.15, 0.9).unwrap();
        let d = moment_eom(&s, &v, m).unwrap();
        assert_eq!(d.x, -0.7 / m);
        assert_eq!(d.p, -m * g);
        assert_eq!(d.g02(), 2.0 / m * 0.15);
        assert_eq!(d.g11(), 0.4 / m);
        assert_eq!(d.g20(), 0.0);
    }

    #[test]
    fn harmonic_equations_of_motion() {
        let (m, w) = (1.5, 2.0);
        let v = PolynomialPotential::harmonic(m, w);
        let (g20, g11, g02) = (0.4, 0.15, 0.9);
        let s = MomentState::second_order(2, 0.3, 0.1, g20, g11, g02).unwrap();
        let d = moment_eom(&s, &v, m).unwrap();
        let k = m * w * w;
        assert!((d.g11() - (g20 / m - k * g02)).abs() < 1e-15);
        assert!((d.g20() - (-2.0 * k * g11)).abs() < 1e-15);
        assert!((d.g02() - 2.0 * g11 / m).abs() < 1e-15);
        assert!((d.p + k * 0.3).abs() < 1e-15);
    }

    #[test]
    fn classical_limit_for_quartic() {
        let v = PolynomialPotential::new(vec![0.0, 0.5, -1.0, 0.2, 0.3]).unwrap();
        let s = MomentState::new(4, 0.8, 0.25).unwrap();
        let d = moment_eom(&s, &v, 1.0).unwrap();
        assert_eq!(d.p, -v.derivative(1, 0.8));
        assert_eq!(d.x, 0.25);
        assert!(s.indices().all(|(a, b)| d.g(a, b) == 0.0));
    }

    #[test]
    fn quartic_feeds_higher_moments_into_force() {
        // dp/dt = -V' - V''' G^{0,2}/2 - V'''' G^{0,3}/6
        let v = PolynomialPotential::new(vec![0.0, 0.0, 0.0, 1.0, 0.5]).unwrap();
        let mut s = MomentState::second_order(3, 0.4, 0.0, 0.2, 0.0, 0.3).unwrap();
        s.set(0, 3, 0.05).unwrap();
        let d = moment_eom(&s, &v, 1.0).unwrap();
        let expect = -v.derivative(1, 0.4) - v.derivative(3, 0.4) * 0.3 / 2.0 - v.derivative(4, 0.4) * 0.05 / 6.0;
        assert!((d.p - expect).abs() < 1e-14);
    }

    #[test]
    fn classical_hamiltonian_when_moments_vanish() {
        let v = PolynomialPotential::linear(1.0, 2.0);
        let s = MomentState::new(3, 1.5, 0.5).unwrap();
        assert_eq!(effective_hamiltonian(&s, &v, 1.0), 0.125 + 3.0);
    }

    #[test]
    fn bad_steps_rejected() {
        let v = PolynomialPotential::linear(1.0, 1.0);
        let s = MomentState::new(2, 0.0, 0.0).unwrap();
        assert!(integrate(&s, &v, 1.0, 1.0, 1.0, 0.0).is_err());
        assert!(integrate(&s, &v, 1.0, 1.0, -1.0, 0.1).is_err());
    }

    #[test]
    fn truncated_anharmonic_flow_can_flag_uncertainty() {
        // a minimum-uncertainty start in a double well quickly leaves the
        // second-order manifold
        let v = PolynomialPotential::new(vec![0.0, 0.0, -1.0, 0.0, 0.25]).unwrap();
        let s = MomentState::second_order(2, 0.0, 0.0, 0.5, 0.0, 0.5).unwrap();
        let traj = integrate(&s, &v, 1.0, 1.0, 5.0, 1e-3).unwrap();
        assert_eq!(traj.samples.len(), 5001);
        assert!(!traj.warnings.is_empty());
    }
}
