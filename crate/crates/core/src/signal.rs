//! Owned signal and spectrum containers.
//!
//! All three types validate finiteness on construction, so downstream code can
//! assume every sample is a real number.

use num_complex::Complex64;

use crate::error::{Error, Result};

fn check_finite(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::EmptySignal);
    }
    match values.iter().position(|x| !x.is_finite()) {
        Some(index) => Err(Error::NonFinite {
            index,
            value: values[index],
        }),
        None => Ok(()),
    }
}

/// Real input samples `v_0 .. v_{N-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSignal(Vec<f64>);

impl RealSignal {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        check_finite(&samples)?;
        Ok(Self(samples))
    }

    pub fn impulse(n: usize) -> Result<Self> {
        let mut v = vec![0.0; n];
        if let Some(first) = v.first_mut() {
            *first = 1.0;
        }
        Self::new(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; a signal holds at least one sample.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Largest absolute sample.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

/// Hartley coefficients `V_0 .. V_{N-1}` in natural index order.
#[derive(Debug, Clone, PartialEq)]
pub struct HartleySpectrum(Vec<f64>);

impl HartleySpectrum {
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        check_finite(&coefficients)?;
        Ok(Self(coefficients))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Reinterpret the coefficients as a signal (the transform is an involution).
    pub fn to_signal(&self) -> RealSignal {
        RealSignal(self.0.clone())
    }
}

/// Complex DFT coefficients `U_0 .. U_{N-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum(Vec<Complex64>);

impl ComplexSpectrum {
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::EmptySignal);
        }
        if let Some(index) = coefficients.iter().position(|c| !c.is_finite()) {
            let c = coefficients[index];
            let value = if c.re.is_finite() { c.im } else { c.re };
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self(coefficients))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.0
    }

    /// True when `U_{N-k} = conj(U_k)` holds within `tol` for every k.
    pub fn is_conjugate_symmetric(&self, tol: f64) -> bool {
        let n = self.0.len();
        (1..n).all(|k| (self.0[n - k] - self.0[k].conj()).norm() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite() {
        assert_eq!(RealSignal::new(vec![]), Err(Error::EmptySignal));
        assert!(matches!(
            RealSignal::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1, .. })
        ));
        assert!(HartleySpectrum::new(vec![f64::INFINITY]).is_err());
        assert!(ComplexSpectrum::new(vec![Complex64::new(0.0, f64::NAN)]).is_err());
    }

    #[test]
    fn impulse_has_single_unit_sample() {
        let v = RealSignal::impulse(5).unwrap();
        assert_eq!(v.samples(), &[1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(v.max_abs(), 1.0);
    }
}
