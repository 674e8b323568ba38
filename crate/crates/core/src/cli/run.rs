use std::sync::Arc;

use super::config::{time_grid, ScenarioConfig};
use super::table::{Cell, Table};
use crate::classical::{bounce_fourier, bounce_trajectory, BounceSpec};
use crate::error::{Error, Result};
use crate::moments::{envelope, integrate, saturated_ic, uncertainty_product, EnvelopeMode, PolynomialPotential};
use crate::quantum::{
    build_basis, evolve, expectation_x, expectation_x_series, project_packet, variance_x, PacketSpec,
};
use crate::specfun::{airy_zero_asymptotic, airy_zeros, QuadratureSpec};

/// A finished table plus diagnostics for standard error.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub table: Table,
    /// Non-fatal notes, e.g. uncertainty-relation violations.
    pub warnings: Vec<String>,
    /// Columns left empty because their computation failed.
    pub failures: Vec<(String, Error)>,
}

impl RunOutput {
    fn clean(table: Table) -> Self {
        Self {
            table,
            warnings: Vec::new(),
            failures: Vec::new(),
        }
    }
}

pub fn run(cfg: &ScenarioConfig) -> Result<RunOutput> {
    use super::config::ScenarioKind::*;
    match cfg.kind {
        Spectrum => run_spectrum(cfg),
        Classical => run_classical(cfg),
        Quantum => run_quantum(cfg),
        Moments => run_moments(cfg),
        Compare => run_compare(cfg),
    }
}

pub fn run_spectrum(cfg: &ScenarioConfig) -> Result<RunOutput> {
    let n_max = cfg.need("nmax", cfg.n_max)?;
    let zeros = airy_zeros(n_max)?;
    let mut table = Table::new(vec!["n", "x_n", "x_n_asymptotic", "E_n", "rel_err"]);
    for (k, &x) in zeros.iter().enumerate() {
        let seed = airy_zero_asymptotic(k + 1)?;
        table.push(vec![
            Cell::Int(k + 1),
            Cell::Float(x),
            Cell::Float(seed),
            Cell::Float(x * cfg.units.energy()),
            Cell::Float((x - seed) / x),
        ]);
    }
    Ok(RunOutput::clean(table))
}

fn grid(cfg: &ScenarioConfig) -> Result<Vec<f64>> {
    Ok(time_grid(cfg.need("tend", cfg.t_end)?, cfg.step()?))
}

fn bounce(cfg: &ScenarioConfig) -> Result<BounceSpec> {
    BounceSpec::new(cfg.need("x0", cfg.x0)?, cfg.units.gravity())
}

pub fn run_classical(cfg: &ScenarioConfig) -> Result<RunOutput> {
    let spec = bounce(cfg)?;
    let mut table = Table::new(vec!["t", "x_bounce", "x_fourier"]);
    for t in grid(cfg)? {
        table.push(vec![
            Cell::Float(t),
            Cell::Float(bounce_trajectory(&spec, t)?),
            Cell::Float(bounce_fourier(&spec, t, cfg.n_terms)?),
        ]);
    }
    Ok(RunOutput::clean(table))
}

struct QuantumSeries {
    x: Vec<f64>,
    var: Vec<f64>,
}

fn quantum_series(cfg: &ScenarioConfig, packet: &PacketSpec, times: &[f64]) -> Result<QuantumSeries> {
    let quad = QuadratureSpec::default();
    let basis = Arc::new(build_basis(cfg.need("nmax", cfg.n_max)?, &cfg.units, &quad)?);
    let initial = project_packet(packet, &basis, &quad)?;
    let mut x = Vec::with_capacity(times.len());
    let mut var = Vec::with_capacity(times.len());
    for &t in times {
        let state = evolve(&initial, t)?;
        x.push(expectation_x(&state));
        var.push(variance_x(&state)?);
    }
    Ok(QuantumSeries { x, var })
}

fn packet(cfg: &ScenarioConfig) -> Result<PacketSpec> {
    PacketSpec::new(cfg.need("x0", cfg.x0)?, cfg.need("sigma", cfg.sigma)?)
}

pub fn run_quantum(cfg: &ScenarioConfig) -> Result<RunOutput> {
    let packet = packet(cfg)?;
    let times = grid(cfg)?;
    let q = quantum_series(cfg, &packet, &times)?;
    let mut table = Table::new(vec!["t", "x_quantum", "x_series", "var_x"]);
    for (i, &t) in times.iter().enumerate() {
        table.push(vec![
            Cell::Float(t),
            Cell::Float(q.x[i]),
            Cell::Float(expectation_x_series(&packet, &cfg.units, t, cfg.n_terms)?),
            Cell::Float(q.var[i]),
        ]);
    }
    Ok(RunOutput::clean(table))
}

struct MomentSeries {
    x: Vec<f64>,
    p: Vec<f64>,
    g20: Vec<f64>,
    g11: Vec<f64>,
    g02: Vec<f64>,
    uncertainty: Vec<f64>,
    warnings: Vec<String>,
}

/// Second-order moments from the integrator, sampled on `times`.
fn moment_series(cfg: &ScenarioConfig, times: &[f64]) -> Result<MomentSeries> {
    let u = &cfg.units;
    let ic = saturated_ic(cfg.need("alpha", cfg.alpha)?, u)?;
    let s0 = ic.state(2, cfg.need("x0", cfg.x0)?, 0.0)?;
    let v = PolynomialPotential::linear(u.mass(), u.gravity());
    let t_last = *times.last().expect("grid holds t = 0");
    let traj = integrate(&s0, &v, u.mass(), u.hbar(), t_last, cfg.step()?)?;
    if traj.samples.len() != times.len() {
        return Err(Error::Numerical(format!(
            "integrator produced {} samples for a grid of {}",
            traj.samples.len(),
            times.len()
        )));
    }
    let states = traj.samples.iter().map(|(_, s)| s);
    let warnings = match traj.warnings.first() {
        Some(w) => vec![format!(
            "uncertainty relation violated at {} output times, first at t = {:e} (product {:e} < {:e})",
            traj.warnings.len(),
            w.t,
            w.product,
            w.bound
        )],
        None => Vec::new(),
    };
    Ok(MomentSeries {
        x: states.clone().map(|s| s.x).collect(),
        p: states.clone().map(|s| s.p).collect(),
        g20: states.clone().map(|s| s.g20()).collect(),
        g11: states.clone().map(|s| s.g11()).collect(),
        g02: states.clone().map(|s| s.g02()).collect(),
        uncertainty: states.map(uncertainty_product).collect(),
        warnings,
    })
}

/// Envelope bounds in both modes: [lower, upper, lower_reset, upper_reset].
fn envelopes(cfg: &ScenarioConfig, t: f64) -> Result<[f64; 4]> {
    let u = &cfg.units;
    let ic = saturated_ic(cfg.need("alpha", cfg.alpha)?, u)?;
    let x0 = cfg.need("x0", cfg.x0)?;
    let (lo, hi) = envelope(x0, &ic, u.mass(), u.gravity(), t, EnvelopeMode::Continuous)?;
    let (lo_r, hi_r) = envelope(x0, &ic, u.mass(), u.gravity(), t, EnvelopeMode::ResetEachPeriod)?;
    Ok([lo, hi, lo_r, hi_r])
}

pub fn run_moments(cfg: &ScenarioConfig) -> Result<RunOutput> {
    let spec = bounce(cfg)?;
    let times = grid(cfg)?;
    let m = moment_series(cfg, &times)?;
    let mut table = Table::new(vec![
        "t",
        "x",
        "p",
        "G20",
        "G11",
        "G02",
        "x_bounce",
        "env_lower",
        "env_upper",
        "env_lower_reset",
        "env_upper_reset",
        "uncertainty",
    ]);
    for (i, &t) in times.iter().enumerate() {
        let env = envelopes(cfg, t)?;
        let mut row = vec![
            Cell::Float(t),
            Cell::Float(m.x[i]),
            Cell::Float(m.p[i]),
            Cell::Float(m.g20[i]),
            Cell::Float(m.g11[i]),
            Cell::Float(m.g02[i]),
            Cell::Float(bounce_trajectory(&spec, t)?),
        ];
        row.extend(env.map(Cell::Float));
        row.push(Cell::Float(m.uncertainty[i]));
        table.push(row);
    }
    Ok(RunOutput {
        table,
        warnings: m.warnings,
        failures: Vec::new(),
    })
}

/// Column values when `result` succeeded, empty cells otherwise.
fn column<T>(result: Result<T>, name: &str, failures: &mut Vec<(String, Error)>) -> Option<T> {
    match result {
        Ok(v) => Some(v),
        Err(e) => {
            failures.push((name.to_string(), e));
            None
        }
    }
}

pub fn run_compare(cfg: &ScenarioConfig) -> Result<RunOutput> {
    let spec = bounce(cfg)?;
    let times = grid(cfg)?;
    let mut failures = Vec::new();
    let mut warnings = Vec::new();

    let quantum = if cfg.quantum {
        let q = packet(cfg).and_then(|p| quantum_series(cfg, &p, &times));
        column(q, "x_quantum", &mut failures)
    } else {
        None
    };
    let series = match cfg.sigma {
        Some(_) => {
            let s = packet(cfg).and_then(|p| {
                times
                    .iter()
                    .map(|&t| expectation_x_series(&p, &cfg.units, t, cfg.n_terms))
                    .collect::<Result<Vec<_>>>()
            });
            column(s, "x_series", &mut failures)
        }
        None => None,
    };
    let moments = column(moment_series(cfg, &times), "G02", &mut failures);
    if let Some(m) = &moments {
        warnings.extend(m.warnings.iter().cloned());
    }
    let envs = column(
        times.iter().map(|&t| envelopes(cfg, t)).collect::<Result<Vec<_>>>(),
        "env_lower",
        &mut failures,
    );

    let mut table = Table::new(vec![
        "t",
        "x_classical",
        "x_quantum",
        "x_series",
        "env_lower",
        "env_upper",
        "G02",
        "G11",
        "G20",
        "env_lower_reset",
        "env_upper_reset",
    ]);
    for (i, &t) in times.iter().enumerate() {
        let env = envs.as_ref().map(|e| e[i]);
        table.push(vec![
            Cell::Float(t),
            Cell::Float(bounce_trajectory(&spec, t)?),
            quantum.as_ref().map(|q| q.x[i]).into(),
            series.as_ref().map(|s| s[i]).into(),
            env.map(|e| e[0]).into(),
            env.map(|e| e[1]).into(),
            moments.as_ref().map(|m| m.g02[i]).into(),
            moments.as_ref().map(|m| m.g11[i]).into(),
            moments.as_ref().map(|m| m.g20[i]).into(),
            env.map(|e| e[2]).into(),
            env.map(|e| e[3]).into(),
        ]);
    }
    Ok(RunOutput {
        table,
        warnings,
        failures,
    })
}
