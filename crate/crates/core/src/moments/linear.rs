//! Exact second-order dispersions for the linear potential V = m g x,
//! saturated initial conditions and the dispersion envelope around the
//! classical bounce.
//!
//! For linear V the hierarchy decouples from (x, p) and closes at second
//! order: G^{2,0} = c0, G^{1,1} = c0 t/m + c1, G^{0,2} = c0 t²/m² + 2 c1 t/m + c2.
//! Saturation fixes c1 = 0 and c0 c2 = ħ²/4 with c2 = α l_g², so
//! c0 = ħ²/(4 α l_g²) = g m² l_g/(2α).

use super::state::MomentState;
use crate::classical::{bounce_trajectory, BounceSpec};
use crate::error::{Error, Result};
use crate::scaling::UnitSystem;

/// α = 1: initial position variance l_g².
pub const ALPHA_ONE: f64 = 1.0;
/// α = 0.4277: the second preset used for envelope comparisons.
pub const ALPHA_GROUND: f64 = 0.4277;

/// Initial second-order moments (c0, c1, c2) = (G^{2,0}, G^{1,1}, G^{0,2}) at t = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dispersions {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

/// Initial dispersions saturating the uncertainty relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaturatedIc {
    alpha: f64,
    dispersions: Dispersions,
}

impl SaturatedIc {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn c0(&self) -> f64 {
        self.dispersions.c0
    }

    pub fn c1(&self) -> f64 {
        self.dispersions.c1
    }

    pub fn c2(&self) -> f64 {
        self.dispersions.c2
    }

    pub fn dispersions(&self) -> Dispersions {
        self.dispersions
    }

    /// Constant energy added to the effective Hamiltonian by G^{2,0}/2m.
    pub fn energy_shift(&self, mass: f64) -> f64 {
        self.dispersions.c0 / (2.0 * mass)
    }

    /// Moment state at t = 0 with the given expectation values.
    pub fn state(&self, order: usize, x: f64, p: f64) -> Result<MomentState> {
        let d = self.dispersions;
        MomentState::second_order(order, x, p, d.c0, d.c1, d.c2)
    }
}

impl From<SaturatedIc> for Dispersions {
    fn from(ic: SaturatedIc) -> Self {
        ic.dispersions
    }
}

/// c1 = 0, c2 = α l_g², c0 = ħ²/(4 c2).
pub fn saturated_ic(alpha: f64, units: &UnitSystem) -> Result<SaturatedIc> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
    }
    let l = units.length();
    let c2 = alpha * l * l;
    let hbar = units.hbar();
    Ok(SaturatedIc {
        alpha,
        dispersions: Dispersions {
            c0: hbar * hbar / (4.0 * c2),
            c1: 0.0,
            c2,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondMoments {
    pub g20: f64,
    pub g11: f64,
    pub g02: f64,
}

pub fn closed_form_linear(ic: impl Into<Dispersions>, mass: f64, t: f64) -> SecondMoments {
    let Dispersions { c0, c1, c2 } = ic.into();
    let s = t / mass;
    SecondMoments {
        g20: c0,
        g11: c0 * s + c1,
        g02: (c0 * s + 2.0 * c1) * s + c2,
    }
}

/// G^{0,2}G^{2,0} - (G^{1,1})², each product formed with its exact
/// rounding error so nearly saturated states do not lose digits.
pub fn uncertainty_product(s: &MomentState) -> f64 {
    let (g02, g20, g11) = (s.g02(), s.g20(), s.g11());
    let a = g02 * g20;
    let a_err = g02.mul_add(g20, -a);
    let b = g11 * g11;
    let b_err = g11.mul_add(g11, -b);
    (a - b) + (a_err - b_err)
}

/// How the dispersion clock behaves at bounces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnvelopeMode {
    /// G^{0,2} evolves with the total elapsed time.
    #[default]
    Continuous,
    /// G^{0,2} restarts from its initial value at each apex (t mod 2T).
    ResetEachPeriod,
}

/// (x_cl(t) - √G^{0,2}, x_cl(t) + √G^{0,2}) around the folded classical
/// bounce dropped from rest at `x0`.
pub fn envelope(x0: f64, ic: &SaturatedIc, mass: f64, gravity: f64, t: f64, mode: EnvelopeMode) -> Result<(f64, f64)> {
    let spec = BounceSpec::new(x0, gravity)?;
    let centre = bounce_trajectory(&spec, t)?;
    let clock = match mode {
        EnvelopeMode::Continuous => t,
        EnvelopeMode::ResetEachPeriod if spec.period() > 0.0 => t.rem_euclid(spec.period()),
        EnvelopeMode::ResetEachPeriod => t,
    };
    let width = closed_form_linear(*ic, mass, clock).g02.sqrt();
    Ok((centre - width, centre + width))
}
