use crate::error::{Error, Result};

/// Highest polynomial degree accepted by [`PolynomialPotential::new`].
pub const MAX_DEGREE: usize = 64;

/// V(x) = Σ_k v_k x^k.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialPotential {
    coefficients: Vec<f64>,
}

impl PolynomialPotential {
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        Self::with_max_degree(coefficients, MAX_DEGREE)
    }

    pub fn with_max_degree(mut coefficients: Vec<f64>, max_degree: usize) -> Result<Self> {
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("potential coefficients must be finite"));
        }
        while coefficients.last() == Some(&0.0) {
            coefficients.pop();
        }
        if coefficients.len() > max_degree + 1 {
            return Err(Error::domain(format!(
                "potential of degree {} exceeds the cap of {max_degree}",
                coefficients.len() - 1
            )));
        }
        Ok(Self { coefficients })
    }

    /// m g x
    pub fn linear(mass: f64, gravity: f64) -> Self {
        Self::new(vec![0.0, mass * gravity]).expect("finite linear potential")
    }

    /// m ω² x² / 2
    pub fn harmonic(mass: f64, omega: f64) -> Self {
        Self::new(vec![0.0, 0.0, 0.5 * mass * omega * omega]).expect("finite harmonic potential")
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Degree of the polynomial; 0 for a constant or vanishing potential.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn value(&self, x: f64) -> f64 {
        self.derivative(0, x)
    }

    /// V^{(order)}(x), exactly zero above the degree.
    pub fn derivative(&self, order: usize, x: f64) -> f64 {
        if order >= self.coefficients.len() {
            return 0.0;
        }
        // Horner on the coefficients of the differentiated polynomial
        self.coefficients[order..]
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (i, &c)| {
                let falling: f64 = ((i + 1)..=(i + order)).map(|k| k as f64).product();
                acc * x + c * falling
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_of_a_cubic() {
        // V = 1 + 2x - 3x² + 4x³
        let v = PolynomialPotential::new(vec![1.0, 2.0, -3.0, 4.0]).unwrap();
        let x = 1.5;
        assert_eq!(v.value(x), 1.0 + 2.0 * x - 3.0 * x * x + 4.0 * x * x * x);
        assert_eq!(v.derivative(1, x), 2.0 - 6.0 * x + 12.0 * x * x);
        assert_eq!(v.derivative(2, x), -6.0 + 24.0 * x);
        assert_eq!(v.derivative(3, x), 24.0);
        assert_eq!(v.derivative(4, x), 0.0);
        assert_eq!(v.derivative(17, x), 0.0);
        assert_eq!(v.degree(), 3);
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let v = PolynomialPotential::new(vec![0.0, 3.0, 0.0, 0.0]).unwrap();
        assert_eq!(v.degree(), 1);
        assert_eq!(PolynomialPotential::new(vec![]).unwrap().value(2.0), 0.0);
    }

    #[test]
    fn degree_cap() {
        assert!(PolynomialPotential::with_max_degree(vec![1.0; 5], 3).is_err());
        assert!(PolynomialPotential::with_max_degree(vec![1.0; 4], 3).is_ok());
        assert!(PolynomialPotential::new(vec![f64::NAN]).is_err());
    }
}
