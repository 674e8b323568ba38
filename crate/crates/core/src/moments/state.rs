use crate::error::{Error, Result};

/// Expectation values (x, p) and the central moments
/// G^{a,b} = ⟨(p̂ - p)^a (x̂ - x)^b⟩_Weyl for 2 ≤ a + b ≤ order.
///
/// G^{0,0} = 1 and G^{1,0} = G^{0,1} = 0 by definition and are not stored.
/// Moments above the truncation order read as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentState {
    pub x: f64,
    pub p: f64,
    order: usize,
    moments: Vec<f64>,
}

/// Position of G^{a,b} in the flat storage: grouped by total order a + b,
/// then by a.
fn slot(a: usize, b: usize) -> usize {
    let k = a + b;
    k * (k + 1) / 2 - 3 + a
}

fn slots(order: usize) -> usize {
    (order + 1) * (order + 2) / 2 - 3
}

impl MomentState {
    pub fn new(order: usize, x: f64, p: f64) -> Result<Self> {
        if order < 2 {
            return Err(Error::domain(format!(
                "moment truncation order must be >= 2, got {order}"
            )));
        }
        Ok(Self {
            x,
            p,
            order,
            moments: vec![0.0; slots(order)],
        })
    }

    /// State with the given second-order moments and all higher ones zero.
    pub fn second_order(order: usize, x: f64, p: f64, g20: f64, g11: f64, g02: f64) -> Result<Self> {
        let mut s = Self::new(order, x, p)?;
        s.set(2, 0, g20)?;
        s.set(1, 1, g11)?;
        s.set(0, 2, g02)?;
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn g(&self, a: usize, b: usize) -> f64 {
        match a + b {
            0 => 1.0,
            1 => 0.0,
            k if k > self.order => 0.0,
            _ => self.moments[slot(a, b)],
        }
    }

    pub fn set(&mut self, a: usize, b: usize, value: f64) -> Result<()> {
        let k = a + b;
        if k < 2 || k > self.order {
            return Err(Error::domain(format!(
                "G^{{{a},{b}}} is not a stored moment at truncation order {}",
                self.order
            )));
        }
        self.moments[slot(a, b)] = value;
        Ok(())
    }

    /// (a, b) for every stored moment, in storage order.
    pub fn indices(&self) -> impl Iterator<Item = (usize, usize)> {
        let order = self.order;
        (2..=order).flat_map(|k| (0..=k).map(move |a| (a, k - a)))
    }

    pub fn g20(&self) -> f64 {
        self.g(2, 0)
    }

    pub fn g11(&self) -> f64 {
        self.g(1, 1)
    }

    pub fn g02(&self) -> f64 {
        self.g(0, 2)
    }

    /// Flattened [x, p, moments...], used by the integrator.
    pub(crate) fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(2 + self.moments.len());
        v.push(self.x);
        v.push(self.p);
        v.extend_from_slice(&self.moments);
        v
    }

    pub(crate) fn from_slice(order: usize, values: &[f64]) -> Self {
        debug_assert_eq!(values.len(), 2 + slots(order));
        Self {
            x: values[0],
            p: values[1],
            order,
            moments: values[2..].to_vec(),
        }
    }
}
