//! Airy function of the first kind on the real line.
//!
//! Near the origin Ai and Ai′ are summed from their Maclaurin series. Away
//! from it the standard asymptotic expansions are used: exponentially
//! decaying on the positive axis, the oscillatory sine/cosine form on the
//! negative axis. The asymptotic series are cut at their smallest term.
//!
//! The Maclaurin series loses digits to cancellation roughly in proportion
//! to its largest term, so it is summed in double-double arithmetic. The
//! asymptotic series gains accuracy like `exp(-2ζ)`, `ζ = (2/3)|x|^{3/2}`.
//! The branch points below are where the two agree to better than 1e-14.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

/// Ai(0).
pub const AI_0: f64 = 0.355_028_053_887_817_2;
/// -Ai′(0).
pub const NEG_AI_PRIME_0: f64 = 0.258_819_403_792_806_8;
const AI_0_LO: f64 = 2.052_336_324_362_12e-17;
const NEG_AI_PRIME_0_LO: f64 = -2.522_243_111_610_832e-17;

/// Asymptotic branch used for x > POSITIVE_SWITCH.
pub const POSITIVE_SWITCH: f64 = 6.0;
/// Asymptotic branch used for x < -NEGATIVE_SWITCH.
pub const NEGATIVE_SWITCH: f64 = 8.5;

const MAX_TERMS: usize = 250;

/// Ai and Ai′ at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValue {
    pub ai: f64,
    pub ai_prime: f64,
}

/// Ai(x).
pub fn airy_ai(x: f64) -> Result<f64> {
    airy(x).map(|v| v.ai)
}

/// Ai′(x).
pub fn airy_ai_prime(x: f64) -> Result<f64> {
    airy(x).map(|v| v.ai_prime)
}

/// Ai(x) and Ai′(x) together; both branches produce the pair at little
/// extra cost.
pub fn airy(x: f64) -> Result<AiryValue> {
    if !x.is_finite() {
        return Err(Error::domain(format!("Airy argument must be finite, got {x}")));
    }
    Ok(airy_unchecked(x))
}

pub(crate) fn airy_unchecked(x: f64) -> AiryValue {
    if x > POSITIVE_SWITCH {
        decaying_asymptotic(x)
    } else if x < -NEGATIVE_SWITCH {
        oscillating_asymptotic(-x)
    } else {
        maclaurin(x)
    }
}

fn maclaurin(x: f64) -> AiryValue {
    // Ai = Ai(0) f - |Ai'(0)| g cancels heavily away from the origin, so the
    // sums run in double-double arithmetic.
    let x3 = DoubleDouble::from(x) * DoubleDouble::from(x) * DoubleDouble::from(x);

    // f = Σ 3^k (1/3)_k x^{3k}/(3k)!,  g = Σ 3^k (2/3)_k x^{3k+1}/(3k+1)!
    let mut f_term = DoubleDouble::from(1.0);
    let mut g_term = DoubleDouble::from(x);
    let mut fp_term = DoubleDouble::from(x) * DoubleDouble::from(x) * DoubleDouble::from(0.5);
    let mut gp_term = DoubleDouble::from(1.0);
    let (mut f, mut g, mut fp, mut gp) = (f_term, g_term, fp_term, gp_term);

    for k in 1..MAX_TERMS {
        let k3 = 3.0 * k as f64;
        f_term = f_term * x3 / ((k3 - 1.0) * k3);
        g_term = g_term * x3 / (k3 * (k3 + 1.0));
        fp_term = fp_term * x3 / (k3 * (k3 + 2.0));
        gp_term = gp_term * x3 / ((k3 - 2.0) * k3);
        f = f + f_term;
        g = g + g_term;
        fp = fp + fp_term;
        gp = gp + gp_term;

        let small = |t: DoubleDouble, s: DoubleDouble| t.hi.abs() <= 1e-33 * s.hi.abs().max(1e-300);
        if small(f_term, f) && small(g_term, g) && small(fp_term, fp) && small(gp_term, gp) {
            break;
        }
    }

    let ai0 = DoubleDouble::new(AI_0, AI_0_LO);
    let dai0 = DoubleDouble::new(NEG_AI_PRIME_0, NEG_AI_PRIME_0_LO);
    AiryValue {
        ai: (ai0 * f - dai0 * g).hi,
        ai_prime: (ai0 * fp - dai0 * gp).hi,
    }
}

/// Unevaluated sum hi + lo with |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn new(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Self {
            hi: s,
            lo: lo - (s - hi),
        }
    }
}

impl From<f64> for DoubleDouble {
    fn from(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl std::ops::Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = (s, e + t);
        let (s, e) = two_sum(s, e);
        Self::new(s, e + f)
    }
}

impl std::ops::Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + Self { hi: -o.hi, lo: -o.lo }
    }
}

impl std::ops::Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Self::new(p, e + (self.hi * o.lo + self.lo * o.hi))
    }
}

impl std::ops::Div<f64> for DoubleDouble {
    type Output = Self;
    fn div(self, d: f64) -> Self {
        let q1 = self.hi / d;
        let r = self - DoubleDouble::from(q1) * DoubleDouble::from(d);
        let q2 = r.hi / d;
        let r = r - DoubleDouble::from(q2) * DoubleDouble::from(d);
        let q3 = r.hi / d;
        Self::new(q1, q2) + DoubleDouble::from(q3)
    }
}

/// Coefficients u_k and v_k of the Airy asymptotic expansions, k = 0, 1, ...
/// u_k = (2k+1)(2k+3)...(6k-1) / (216^k k!),  v_k = -(6k+1)/(6k-1) u_k.
fn asymptotic_coefficient_pairs() -> impl Iterator<Item = (f64, f64)> {
    let mut u = 1.0_f64;
    (0..MAX_TERMS).map(move |k| {
        if k > 0 {
            let kf = k as f64;
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        }
        let v = if k == 0 {
            1.0
        } else {
            let kf = k as f64;
            -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u
        };
        (u, v)
    })
}

/// Sums Σ (-1)^k u_k / ζ^k and Σ (-1)^k v_k / ζ^k, stopping at the smallest term.
fn decaying_sums(zeta: f64) -> (f64, f64) {
    let mut su = 0.0;
    let mut sv = 0.0;
    let mut power = 1.0;
    let mut sign = 1.0;
    let mut last = f64::INFINITY;
    for (u, v) in asymptotic_coefficient_pairs() {
        let tu = u * power;
        let tv = v.abs() * power;
        let size = tu.max(tv);
        if size > last {
            break;
        }
        su += sign * tu;
        sv += sign * v * power;
        if size < f64::EPSILON * 1e-3 {
            break;
        }
        last = size;
        power /= zeta;
        sign = -sign;
    }
    (su, sv)
}

fn decaying_asymptotic(x: f64) -> AiryValue {
    let root = x.sqrt();
    let zeta = 2.0 / 3.0 * x * root;
    let quarter = root.sqrt();
    let (su, sv) = decaying_sums(zeta);
    let scale = (-zeta).exp() / (2.0 * PI.sqrt());
    AiryValue {
        ai: scale / quarter * su,
        ai_prime: -scale * quarter * sv,
    }
}

/// Even and odd parts of the oscillatory expansions:
/// P_u = Σ (-1)^k u_{2k}/ζ^{2k}, Q_u = Σ (-1)^k u_{2k+1}/ζ^{2k+1}, and likewise for v.
fn oscillating_sums(zeta: f64) -> (f64, f64, f64, f64) {
    let (mut pu, mut qu, mut pv, mut qv) = (0.0, 0.0, 0.0, 0.0);
    let mut power = 1.0;
    let mut last = f64::INFINITY;
    for (k, (u, v)) in asymptotic_coefficient_pairs().enumerate() {
        let tu = u * power;
        let tv = v * power;
        let size = tu.abs().max(tv.abs());
        if size > last {
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            pu += sign * tu;
            pv += sign * tv;
        } else {
            qu += sign * tu;
            qv += sign * tv;
        }
        if size < f64::EPSILON * 1e-3 {
            break;
        }
        last = size;
        power /= zeta;
    }
    (pu, qu, pv, qv)
}

/// Ai(-z), Ai′(-z) for large positive z.
fn oscillating_asymptotic(z: f64) -> AiryValue {
    let root = z.sqrt();
    let zeta = 2.0 / 3.0 * z * root;
    let quarter = root.sqrt();
    let (pu, qu, pv, qv) = oscillating_sums(zeta);
    let (s, c) = (zeta - FRAC_PI_4).sin_cos();
    let inv_sqrt_pi = 1.0 / PI.sqrt();
    AiryValue {
        ai: inv_sqrt_pi / quarter * (c * pu + s * qu),
        ai_prime: inv_sqrt_pi * quarter * (s * pv - c * qv),
    }
}
