//! Eigenbasis of the quantum bouncer on the half-line x ≥ 0.
//!
//! In units of l_g the eigenfunctions are ψ_n(x) = N_n Ai(x - x_n), where
//! -x_n is the n-th zero of Ai, so ψ_n(0) = 0 at the mirror, and the
//! energies are E_n = E_g x_n. With N_n = 1/|Ai′(-x_n)| each ψ_n has unit
//! norm on [0, ∞).
//!
//! Matrix elements come from a composite Gauss–Legendre grid shared by all
//! levels: every ψ_n is tabulated once on the grid nodes and each element is
//! a weighted dot product. The panel width is halved until two successive
//! grids agree to the quadrature tolerance for every element. Elements are
//! stored in l_g units.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scaling::UnitSystem;
use crate::specfun::{airy_unchecked, airy_zeros, gauss_rule, integrate_1d, truncation_point, QuadratureSpec};

/// Tolerance on the quadrature check of each eigenfunction's norm.
pub const NORM_CHECK_TOL: f64 = 1e-8;
/// Starting panel width of the matrix-element grid, in l_g.
const INITIAL_PANEL_WIDTH: f64 = 0.5;
/// Number of grid halvings before giving up.
const MAX_GRID_REFINEMENTS: usize = 8;

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    fn from_upper<F>(dim: usize, mut entry: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<f64>,
    {
        let mut data = vec![0.0; dim * dim];
        for row in 0..dim {
            for col in row..dim {
                let v = entry(row, col).map_err(|e| Error::BasisElement {
                    row,
                    col,
                    source: Box::new(e),
                })?;
                data[row * dim + col] = v;
                data[col * dim + row] = v;
            }
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }
}

/// Airy eigenbasis truncated to the lowest `n_max` levels.
///
/// Index `k` in every slice refers to level n = k + 1.
#[derive(Debug)]
pub struct Eigenbasis {
    units: UnitSystem,
    quad: QuadratureSpec,
    zeros: Vec<f64>,
    energies: Vec<f64>,
    norms: Vec<f64>,
    x_matrix: SymmetricMatrix,
    x2_matrix: OnceLock<SymmetricMatrix>,
}

impl Eigenbasis {
    pub fn n_max(&self) -> usize {
        self.zeros.len()
    }

    pub fn units(&self) -> &UnitSystem {
        &self.units
    }

    pub fn quadrature(&self) -> &QuadratureSpec {
        &self.quad
    }

    /// Zero magnitudes x_n, ascending (dimensionless).
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// E_n = m g l_g x_n.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// N_n = 1/|Ai′(-x_n)|.
    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    /// ψ_k at dimensionless height `x` (in units of l_g^{-1/2}); zero below the mirror.
    pub fn eigenfunction(&self, k: usize, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        self.norms[k] * airy_unchecked(x - self.zeros[k]).ai
    }

    /// ⟨k|x|j⟩ in units of length.
    pub fn position_element(&self, k: usize, j: usize) -> f64 {
        self.x_matrix.get(k, j) * self.units.length()
    }

    /// ⟨k|x|j⟩ in units of l_g.
    pub fn position_matrix(&self) -> &SymmetricMatrix {
        &self.x_matrix
    }

    /// ⟨k|x²|j⟩ in units of l_g², computed on first use.
    pub fn position_squared_matrix(&self) -> Result<&SymmetricMatrix> {
        if let Some(m) = self.x2_matrix.get() {
            return Ok(m);
        }
        let m = self.moment_matrix(2)?;
        // a concurrent caller may have won; both computed the same values
        let _ = self.x2_matrix.set(m);
        Ok(self.x2_matrix.get().expect("just initialised"))
    }

    /// ⟨k|j⟩ by quadrature; the identity up to quadrature error.
    pub fn overlap(&self, k: usize, j: usize) -> Result<f64> {
        self.element(k, j, 0)
    }

    /// Matrix of ⟨k|x^power|j⟩ on successively finer grids until converged.
    fn moment_matrix(&self, power: i32) -> Result<SymmetricMatrix> {
        let top = self.n_max() - 1;
        let upper = truncation_point(
            |x| self.eigenfunction(top, x).powi(2) * x.powi(power),
            self.zeros[top],
            self.quad.abs_tol() / 100.0,
        )?;
        let mut panels = (upper / INITIAL_PANEL_WIDTH).ceil() as usize;
        let mut coarse = self.grid_matrix(power, upper, panels);
        let mut worst = None;
        for _ in 0..MAX_GRID_REFINEMENTS {
            if 2 * panels > self.quad.max_subdivisions() {
                break;
            }
            panels *= 2;
            let fine = self.grid_matrix(power, upper, panels);
            worst = worst_disagreement(&coarse, &fine, &self.quad);
            if worst.is_none() {
                return Ok(fine);
            }
            coarse = fine;
        }
        let (row, col, diff) = worst.unwrap_or((0, 0, f64::NAN));
        Err(grid_failure(row, col, coarse.get(row, col), diff, panels))
    }

    /// Composite rule with `panels` equal panels on [0, upper].
    fn grid_matrix(&self, power: i32, upper: f64, panels: usize) -> SymmetricMatrix {
        let rule = gauss_rule();
        let half = 0.5 * upper / panels as f64;
        let (nodes, weights): (Vec<f64>, Vec<f64>) = (0..panels)
            .flat_map(|p| {
                let mid = (2 * p + 1) as f64 * half;
                rule.iter().map(move |&(x, w)| (mid + half * x, half * w))
            })
            .unzip();
        let table: Vec<Vec<f64>> = (0..self.n_max())
            .map(|k| nodes.iter().map(|&x| self.eigenfunction(k, x)).collect())
            .collect();
        let weighted: Vec<f64> = nodes.iter().zip(&weights).map(|(&x, &w)| w * x.powi(power)).collect();
        SymmetricMatrix::from_upper(self.n_max(), |k, j| {
            Ok(table[k]
                .iter()
                .zip(&table[j])
                .zip(&weighted)
                .map(|((a, b), w)| a * b * w)
                .sum())
        })
        .expect("grid elements are infallible")
    }

    /// ∫_0^∞ ψ_k ψ_j x^power dx (dimensionless), truncated where the
    /// integrand drops below abs_tol/100.
    fn element(&self, k: usize, j: usize, power: i32) -> Result<f64> {
        let integrand = |x: f64| self.eigenfunction(k, x) * self.eigenfunction(j, x) * x.powi(power);
        let start = self.zeros[k].max(self.zeros[j]);
        let upper = truncation_point(integrand, start, self.quad.abs_tol() / 100.0)?;
        integrate_1d(integrand, 0.0, upper, &self.quad)
    }
}

/// Largest coarse/fine difference exceeding its tolerance, if any.
/// Diagonal elements of a moment matrix are positive.
fn worst_disagreement(
    coarse: &SymmetricMatrix,
    fine: &SymmetricMatrix,
    quad: &QuadratureSpec,
) -> Option<(usize, usize, f64)> {
    let mut worst: Option<(usize, usize, f64)> = None;
    for row in 0..fine.dim() {
        for col in row..fine.dim() {
            // |M_kj| ≤ sqrt(M_kk M_jj) sets the scale for the relative tolerance
            let scale = (fine.get(row, row) * fine.get(col, col)).abs().sqrt();
            let diff = (fine.get(row, col) - coarse.get(row, col)).abs();
            let tol = quad.abs_tol().max(quad.rel_tol() * scale);
            if diff > tol && worst.is_none_or(|w| diff > w.2) {
                worst = Some((row, col, diff));
            }
        }
    }
    worst
}

fn grid_failure(row: usize, col: usize, estimate: f64, diff: f64, panels: usize) -> Error {
    Error::BasisElement {
        row,
        col,
        source: Box::new(Error::Quadrature {
            estimate,
            error_bound: diff,
            subdivisions: panels,
        }),
    }
}

/// Builds the lowest `n_max` levels and their position matrix.
pub fn build_basis(n_max: usize, units: &UnitSystem, quad: &QuadratureSpec) -> Result<Eigenbasis> {
    if n_max == 0 {
        return Err(Error::domain("n_max must be at least 1"));
    }
    let zeros = airy_zeros(n_max)?;
    let energies = zeros.iter().map(|x| units.energy() * x).collect();
    let norms = zeros.iter().map(|&x| 1.0 / airy_unchecked(-x).ai_prime.abs()).collect();
    let mut basis = Eigenbasis {
        units: *units,
        quad: *quad,
        zeros,
        energies,
        norms,
        x_matrix: SymmetricMatrix {
            dim: 0,
            data: Vec::new(),
        },
        x2_matrix: OnceLock::new(),
    };

    for k in 0..n_max {
        let norm = basis.element(k, k, 0).map_err(|e| Error::BasisElement {
            row: k,
            col: k,
            source: Box::new(e),
        })?;
        if (norm - 1.0).abs() > NORM_CHECK_TOL {
            return Err(Error::BasisElement {
                row: k,
                col: k,
                source: Box::new(Error::Numerical(format!(
                    "eigenfunction norm {norm} differs from 1 by more than {NORM_CHECK_TOL:e}"
                ))),
            });
        }
    }

    basis.x_matrix = basis.moment_matrix(1)?;
    Ok(basis)
}
