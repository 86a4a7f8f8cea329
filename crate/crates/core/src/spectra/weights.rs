use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex weights `a_i` of `ν = Σ a_i δ_{Λ_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector(Vec<Complex64>);

impl WeightVector {
    pub fn new(a: Vec<Complex64>) -> Result<WeightVector> {
        if a.is_empty() || a.iter().all(|z| z.norm() == 0.0) {
            return Err(Error::InvalidParameter("weights must not all vanish".into()));
        }
        if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("weights must be finite".into()));
        }
        Ok(WeightVector(a))
    }

    pub fn real(a: &[f64]) -> Result<WeightVector> {
        WeightVector::new(a.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// All colors weighted 1.
    pub fn ones(m: usize) -> WeightVector {
        WeightVector(vec![Complex64::new(1.0, 0.0); m.max(1)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, color: usize) -> Complex64 {
        self.0[color]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn scaled(&self, alpha: Complex64) -> WeightVector {
        WeightVector(self.0.iter().map(|z| z * alpha).collect())
    }

    pub(crate) fn check(&self, colors: usize) -> Result<()> {
        if self.len() != colors {
            return Err(Error::ColorMismatch {
                expected: colors,
                found: self.len(),
            });
        }
        Ok(())
    }
}
