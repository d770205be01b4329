use num_complex::Complex64;
use serde::Serialize;

use crate::error::{finite, Error, Result};

/// Dense complex polynomial, coefficient `i` multiplying `z^i`.
///
/// Trailing (highest-order) exact zeros are trimmed on construction; what is
/// left must have degree at least one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        for &c in &coeffs {
            finite(c, "polynomial coefficient")?;
        }
        while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument(
                "polynomial must have degree at least 1 after trimming".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// Monic polynomial from its lower coefficients, highest power omitted.
    pub fn monic(lower: &[Complex64]) -> Result<Self> {
        let mut coeffs = lower.to_vec();
        coeffs.push(Complex64::new(1.0, 0.0));
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        finite(z, "evaluation point")?;
        finite(self.horner(z), "polynomial value")
    }

    pub(crate) fn horner(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub(crate) fn horner_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut value = Complex64::new(0.0, 0.0);
        let mut slope = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            slope = slope * z + value;
            value = value * z + c;
        }
        (value, slope)
    }

    /// `sum |c_i| |z|^i`, the scale of rounding error in a Horner evaluation.
    pub(crate) fn magnitude_bound(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }
}

/// Horner evaluation of `p` at `z`.
pub fn poly_eval(p: &Polynomial, z: Complex64) -> Result<Complex64> {
    p.eval(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(coeffs: &[f64]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&x| c(x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(
            poly_eval(&real(&[1.0, 0.0, 1.0]), c(0.0, 1.0)).unwrap(),
            c(0.0, 0.0)
        );
        assert_eq!(
            poly_eval(&real(&[0.0, -1.0, 0.0, 1.0]), c(2.0, 0.0)).unwrap(),
            c(6.0, 0.0)
        );
        assert_eq!(
            poly_eval(&real(&[3.0, -1.0, 0.0, 0.0, 2.0]), c(0.0, 0.0)).unwrap(),
            c(3.0, 0.0)
        );
    }

    #[test]
    fn trims_and_validates() {
        let p = real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert!(Polynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).is_err());
        assert!(Polynomial::new(vec![]).is_err());
        assert!(Polynomial::new(vec![c(f64::INFINITY, 0.0), c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn overflow_is_an_error() {
        let p = real(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(p.eval(c(1e40, 0.0)).is_err());
    }

    #[test]
    fn derivative_matches_hand_value() {
        // p = z^3 - z, p' = 3z^2 - 1
        let p = real(&[0.0, -1.0, 0.0, 1.0]);
        let (v, d) = p.horner_with_derivative(c(2.0, 0.0));
        assert_eq!(v, c(6.0, 0.0));
        assert_eq!(d, c(11.0, 0.0));
    }
}
