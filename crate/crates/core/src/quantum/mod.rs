//! Quantum bouncer: spectral evolution in the Airy eigenbasis of the
//! half-line, position observables, and the closed-form semiclassical
//! series for ⟨x(t)⟩.

mod basis;
mod series;
mod state;

pub use basis::{build_basis, Eigenbasis, SymmetricMatrix, NORM_CHECK_TOL};
pub use series::{
    damping_exponent, expectation_x_series, find_collapse_revival, oscillation_amplitudes, series_with_exponent,
    CollapseRevival,
};
pub use state::{
    evolve, expectation_x, project_function, project_packet, variance_x, PacketSpec, SpectralState,
    MAX_TRUNCATION_LOSS, NEGATIVE_VARIANCE_TOL,
};
