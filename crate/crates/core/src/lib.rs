//! Three descriptions of a quantum particle falling onto a mirror in a
//! uniform gravitational field:
//!
//! * [`classical`]: the exact bounce train and its Fourier series,
//! * [`quantum`]: spectral evolution in the Airy eigenbasis of the half-line,
//! * [`moments`]: effective dynamics of expectation values and central
//!   moments ⟨(p̂-p)^a (x̂-x)^b⟩.
//!
//! [`scaling`] holds the gravitational length, energy and time scales and
//! [`specfun`] the Airy function and quadrature underneath the spectral
//! solver. [`cli`] drives scenarios and writes CSV tables.

pub mod classical;
pub mod cli;
pub mod error;
pub mod moments;
pub mod quantum;
pub mod scaling;
pub mod specfun;

pub use error::{Error, Result};
