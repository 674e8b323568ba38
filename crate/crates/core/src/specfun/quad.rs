//! Globally adaptive Gauss–Legendre quadrature.
//!
//! Each panel carries two estimates: the fixed-order rule on the whole
//! panel and the same rule on its two halves. The halves are kept as the
//! panel value and their difference as its error bound. The panel with
//! the largest bound is split until the summed bound meets the tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const GAUSS_ORDER: usize = 10;

/// Tolerances and work limit for [`integrate_1d`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(Error::domain(format!("abs_tol must be positive, got {abs_tol}")));
        }
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::domain(format!("rel_tol must be positive, got {rel_tol}")));
        }
        if max_subdivisions == 0 {
            return Err(Error::domain("max_subdivisions must be at least 1"));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_subdivisions(&self) -> usize {
        self.max_subdivisions
    }

    /// Same work limit, tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.abs_tol * factor, self.rel_tol * factor, self.max_subdivisions)
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdivisions: 4000,
        }
    }
}

/// Value and error bound of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_bound: f64,
    pub subdivisions: usize,
}

/// Nodes and weights of the Gauss–Legendre rule on [-1, 1], from Newton
/// iteration on the Legendre recurrence.
fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let n = order as f64;
    let mut rule = Vec::with_capacity(order);
    for i in 0..order {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

/// Nodes and weights of the order-[`GAUSS_ORDER`] rule on [-1, 1].
pub(crate) fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GAUSS_ORDER))
}

fn apply_rule<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    half * rule().iter().map(|&(x, w)| w * f(mid + half * x)).sum::<f64>()
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl Panel {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64) -> Self {
        let m = 0.5 * (a + b);
        let value = apply_rule(f, a, m) + apply_rule(f, m, b);
        Self {
            a,
            b,
            value,
            error: (value - whole).abs(),
        }
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// ∫_a^b f(x) dx to within max(abs_tol, rel_tol·|result|).
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    integrate_with_error(f, a, b, spec).map(|r| r.value)
}

pub fn integrate_with_error<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain(format!(
            "integration limits must be finite, got [{a}, {b}]"
        )));
    }
    if a >= b {
        return Err(Error::domain(format!("integration requires a < b, got [{a}, {b}]")));
    }

    let first = Panel::new(&f, a, b, apply_rule(&f, a, b));
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 1;

    loop {
        let value: f64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if error <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
            return Ok(QuadratureResult {
                value,
                error_bound: error,
                subdivisions,
            });
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::Quadrature {
                estimate: value,
                error_bound: error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("panel heap is never empty");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            // panel cannot be split further in floating point
            return Err(Error::Quadrature {
                estimate: value,
                error_bound: error,
                subdivisions,
            });
        }
        let left_whole = apply_rule(&f, worst.a, m);
        let right_whole = apply_rule(&f, m, worst.b);
        heap.push(Panel::new(&f, worst.a, m, left_whole));
        heap.push(Panel::new(&f, m, worst.b, right_whole));
        subdivisions += 1;
    }
}

/// Upper limit beyond which |f| stays below `threshold`, scanning outward
/// from `start` in steps of 0.5. Three consecutive small samples are required
/// so isolated zeros of an oscillating integrand do not end the scan.
pub fn truncation_point<F: Fn(f64) -> f64>(f: F, start: f64, threshold: f64) -> Result<f64> {
    const STEP: f64 = 0.5;
    const MAX_STEPS: usize = 100_000;
    let mut quiet = 0;
    for k in 1..=MAX_STEPS {
        let x = start + STEP * k as f64;
        if f(x).abs() < threshold {
            quiet += 1;
            if quiet == 3 {
                return Ok(x);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Numerical(format!(
        "integrand does not fall below {threshold:e} within {} of {start}",
        STEP * MAX_STEPS as f64
    )))
}

/// ∫_a^∞ f(x) dx, truncated where |f| falls below abs_tol/100.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, spec: &QuadratureSpec) -> Result<f64> {
    let upper = truncation_point(&f, a, spec.abs_tol / 100.0)?;
    integrate_1d(f, a, upper, spec)
}
