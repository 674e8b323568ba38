//! Semiclassical moment dynamics: expectation values plus central moments
//! G^{a,b} of a state evolving under H = p²/2m + V(x) with polynomial V.

mod dynamics;
mod linear;
mod potential;
mod state;

pub use dynamics::{effective_hamiltonian, integrate, moment_eom, Trajectory, UncertaintyWarning, UNCERTAINTY_SLACK};
pub use linear::{
    closed_form_linear, envelope, saturated_ic, uncertainty_product, Dispersions, EnvelopeMode, SaturatedIc,
    SecondMoments, ALPHA_GROUND, ALPHA_ONE,
};
pub use potential::{PolynomialPotential, MAX_DEGREE};
pub use state::MomentState;
