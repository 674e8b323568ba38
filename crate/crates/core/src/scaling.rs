//! Physical constants and the gravitational scales of a particle of mass
//! `m` in a field `g`:
//!
//! * length  l_g = (ħ² / (2 g m²))^{1/3}
//! * energy  E_g = m g l_g = (ħ² g² m / 2)^{1/3}
//! * time    t_g = ħ / E_g
//!
//! In units of (l_g, E_g, t_g) the stationary problem reads
//! ψ'' = (x - E) ψ and a level of energy E evolves with phase exp(-i E t).

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s (exact SI value).
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Joules per electronvolt (exact SI value).
pub const JOULE_PER_EV: f64 = 1.602_176_634e-19;
/// Speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Neutron rest energy used by the neutron preset, MeV.
pub const NEUTRON_REST_ENERGY_MEV: f64 = 940.0;
/// Standard gravity used by the neutron preset, m/s².
pub const STANDARD_GRAVITY: f64 = 9.81;

/// Kilograms per MeV/c².
pub const KG_PER_MEV_C2: f64 = 1e6 * JOULE_PER_EV / (SPEED_OF_LIGHT * SPEED_OF_LIGHT);

/// Mass, gravity and ħ together with the derived scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    mass: f64,
    gravity: f64,
    hbar: f64,
    length: f64,
    energy: f64,
    time: f64,
}

/// Named unit systems accepted by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// SI units, m = 940 MeV/c², g = 9.81 m/s².
    Neutron,
    /// m = 1/√2, g = 1, ħ = 1, so that l_g = 1.
    Natural,
}

impl Preset {
    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "neutron" => Some(Preset::Neutron),
            "natural" => Some(Preset::Natural),
            _ => None,
        }
    }

    pub fn units(self) -> UnitSystem {
        match self {
            Preset::Neutron => UnitSystem::neutron(),
            Preset::Natural => UnitSystem::natural(),
        }
    }
}

impl UnitSystem {
    pub fn new(mass: f64, gravity: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("gravity", gravity), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        let length = (hbar * hbar / (2.0 * gravity * mass * mass)).cbrt();
        let energy = mass * gravity * length;
        let time = hbar / energy;
        Ok(Self {
            mass,
            gravity,
            hbar,
            length,
            energy,
            time,
        })
    }

    pub fn neutron() -> Self {
        Self::new(NEUTRON_REST_ENERGY_MEV * KG_PER_MEV_C2, STANDARD_GRAVITY, HBAR_SI)
            .expect("neutron constants are positive")
    }

    pub fn natural() -> Self {
        Self::new(std::f64::consts::FRAC_1_SQRT_2, 1.0, 1.0).expect("natural constants are positive")
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn gravity(&self) -> f64 {
        self.gravity
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// l_g
    pub fn length(&self) -> f64 {
        self.length
    }

    /// E_g = m g l_g
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// t_g = ħ / E_g
    pub fn time(&self) -> f64 {
        self.time
    }

    /// E_g from its closed form (ħ² g² m / 2)^{1/3}, for cross-checking.
    pub fn energy_closed_form(&self) -> f64 {
        (self.hbar * self.hbar * self.gravity * self.gravity * self.mass / 2.0).cbrt()
    }

    /// (x / l_g, E / E_g, t / t_g)
    pub fn to_dimensionless(&self, x: f64, energy: f64, t: f64) -> (f64, f64, f64) {
        (x / self.length, energy / self.energy, t / self.time)
    }

    pub fn from_dimensionless(&self, x: f64, energy: f64, t: f64) -> (f64, f64, f64) {
        (x * self.length, energy * self.energy, t * self.time)
    }
}
