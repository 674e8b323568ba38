use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use crate::classical::BounceSpec;
use crate::error::{Error, Result};
use crate::scaling::{Preset, UnitSystem};

/// Default number of Fourier terms.
pub const DEFAULT_TERMS: usize = 200;
/// Default step as a fraction of the drop time.
pub const STEPS_PER_DROP: f64 = 1000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    Spectrum,
    Classical,
    Quantum,
    Moments,
    Compare,
}

impl ScenarioKind {
    fn name(self) -> &'static str {
        match self {
            Self::Spectrum => "spectrum",
            Self::Classical => "classical",
            Self::Quantum => "quantum",
            Self::Moments => "moments",
            Self::Compare => "compare",
        }
    }
}

/// Raw settings as read from flags or a config file. Every key of the file
/// is also a flag; flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// Unit preset: neutron (SI units) or natural (m = 1/√2, g = ħ = 1, so l_g = 1)
    #[arg(long)]
    pub preset: Option<String>,
    /// Particle mass
    #[arg(long)]
    pub mass: Option<f64>,
    /// Gravitational acceleration
    #[arg(long)]
    pub gravity: Option<f64>,
    /// Reduced Planck constant
    #[arg(long)]
    pub hbar: Option<f64>,
    /// Drop height (packet centre for quantum runs)
    #[arg(long)]
    pub x0: Option<f64>,
    /// Packet width in exp(-(x - x0)²/σ²)
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Initial position variance in units of l_g²
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Number of eigenstates
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Number of Fourier terms
    #[arg(long)]
    pub nterms: Option<usize>,
    /// End time
    #[arg(long)]
    pub tend: Option<f64>,
    /// Output time step (defaults to the drop time / 1000)
    #[arg(long)]
    pub dt: Option<f64>,
    /// Output CSV path (standard output when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Skip the spectral solver in `compare`
    #[arg(long)]
    #[serde(default)]
    pub no_quantum: bool,
    /// TOML file with any of the keys above
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// `self` with every value set in `flags` replaced.
    pub fn overridden_by(self, flags: Settings) -> Settings {
        Settings {
            preset: flags.preset.or(self.preset),
            mass: flags.mass.or(self.mass),
            gravity: flags.gravity.or(self.gravity),
            hbar: flags.hbar.or(self.hbar),
            x0: flags.x0.or(self.x0),
            sigma: flags.sigma.or(self.sigma),
            alpha: flags.alpha.or(self.alpha),
            nmax: flags.nmax.or(self.nmax),
            nterms: flags.nterms.or(self.nterms),
            tend: flags.tend.or(self.tend),
            dt: flags.dt.or(self.dt),
            out: flags.out.or(self.out),
            no_quantum: flags.no_quantum || self.no_quantum,
            config: flags.config.or(self.config),
        }
    }

    /// Reads the file named by `--config`, if any, and applies the flags on top.
    pub fn load(flags: Settings) -> Result<Settings> {
        match &flags.config {
            Some(path) => Ok(Settings::from_file(path)?.overridden_by(flags)),
            None => Ok(flags),
        }
    }
}

/// A validated scenario. Fields a scenario does not use may be `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub units: UnitSystem,
    pub x0: Option<f64>,
    pub sigma: Option<f64>,
    pub alpha: Option<f64>,
    pub n_max: Option<usize>,
    pub n_terms: usize,
    pub t_end: Option<f64>,
    pub dt: Option<f64>,
    pub out: Option<PathBuf>,
    pub quantum: bool,
}

fn missing(kind: ScenarioKind, field: &str) -> Error {
    Error::Config(format!("`{}` requires field `{field}`", kind.name()))
}

fn positive(field: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Config(format!("`{field}` must be positive, got {value}")))
    }
}

fn units(s: &Settings) -> Result<UnitSystem> {
    let explicit = [("mass", s.mass), ("gravity", s.gravity), ("hbar", s.hbar)];
    if let Some(name) = &s.preset {
        if explicit.iter().any(|(_, v)| v.is_some()) {
            return Err(Error::Config(
                "give either `preset` or `mass`, `gravity` and `hbar`, not both".into(),
            ));
        }
        return Preset::from_name(name)
            .map(Preset::units)
            .ok_or_else(|| Error::Config(format!("unknown preset `{name}`")));
    }
    if explicit.iter().all(|(_, v)| v.is_none()) {
        return Ok(UnitSystem::natural());
    }
    let mut values = [0.0; 3];
    for (slot, (field, value)) in values.iter_mut().zip(explicit) {
        *slot = positive(
            field,
            value.ok_or_else(|| Error::Config(format!("explicit units require field `{field}`")))?,
        )?;
    }
    UnitSystem::new(values[0], values[1], values[2])
}

impl ScenarioConfig {
    pub fn resolve(kind: ScenarioKind, s: &Settings) -> Result<Self> {
        use ScenarioKind::*;
        let units = units(s)?;
        let quantum = match kind {
            Quantum => true,
            Compare => !s.no_quantum,
            _ => false,
        };
        let needs_x0 = kind != Spectrum;
        let needs_sigma = quantum;
        let needs_alpha = matches!(kind, Moments | Compare);
        let needs_nmax = kind == Spectrum || quantum;
        let needs_time = kind != Spectrum;

        let require = |needed: bool, field: &str, value: Option<f64>| -> Result<Option<f64>> {
            match (needed, value) {
                (true, None) => Err(missing(kind, field)),
                (_, Some(v)) => positive(field, v).map(Some),
                (false, None) => Ok(None),
            }
        };
        let x0 = require(needs_x0, "x0", s.x0)?;
        let sigma = require(needs_sigma, "sigma", s.sigma)?;
        let alpha = require(needs_alpha, "alpha", s.alpha)?;
        let dt = require(false, "dt", s.dt)?;

        let n_max = match (needs_nmax, s.nmax) {
            (true, None) => return Err(missing(kind, "nmax")),
            (_, Some(0)) => return Err(Error::Config("`nmax` must be at least 1".into())),
            (_, n) => n,
        };
        let n_terms = match s.nterms {
            Some(0) => return Err(Error::Config("`nterms` must be at least 1".into())),
            Some(n) => n,
            None => DEFAULT_TERMS,
        };
        let t_end = match (needs_time, s.tend) {
            (true, None) => return Err(missing(kind, "tend")),
            (_, Some(t)) if !(t.is_finite() && t >= 0.0) => {
                return Err(Error::Config(format!("`tend` must be >= 0, got {t}")))
            }
            (_, t) => t,
        };

        Ok(Self {
            kind,
            units,
            x0,
            sigma,
            alpha,
            n_max,
            n_terms,
            t_end,
            dt,
            out: s.out.clone(),
            quantum,
        })
    }

    pub(crate) fn need<T: Copy>(&self, field: &str, value: Option<T>) -> Result<T> {
        value.ok_or_else(|| missing(self.kind, field))
    }

    /// Output step: `dt` if given, else the drop time from x0 over 1000.
    pub fn step(&self) -> Result<f64> {
        if let Some(dt) = self.dt {
            return Ok(dt);
        }
        let x0 = self.need("x0", self.x0)?;
        let drop = BounceSpec::new(x0, self.units.gravity())?.drop_time();
        Ok(drop / STEPS_PER_DROP)
    }
}

/// t_k = k dt for k = 0..=floor(t_end/dt).
pub fn time_grid(t_end: f64, dt: f64) -> Vec<f64> {
    let n = (t_end / dt + 1e-9).floor() as usize;
    (0..=n).map(|k| k as f64 * dt).collect()
}
