use crate::{Error, Result};

/// Mixed relative/absolute tolerance for approximate comparisons.
///
/// Two scalars `x`, `y` are close when `|x − y| ≤ abs + rel·max(|x|, |y|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    rel: f64,
    abs: f64,
}

impl Tolerance {
    pub const DEFAULT: Self = Self {
        rel: 1e-9,
        abs: 1e-12,
    };

    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        let ok = |x: f64| x.is_finite() && x >= 0.0;
        if !ok(rel) || !ok(abs) || (rel == 0.0 && abs == 0.0) {
            return Err(Error::InvalidTolerance);
        }
        Ok(Self { rel, abs })
    }

    /// Purely absolute tolerance.
    pub fn absolute(abs: f64) -> Result<Self> {
        Self::new(0.0, abs)
    }

    pub fn rel(&self) -> f64 {
        self.rel
    }

    pub fn abs(&self) -> f64 {
        self.abs
    }

    /// Threshold used against residuals whose natural scale is one
    /// (orthogonality, identity-matrix comparisons).
    pub fn unit_bound(&self) -> f64 {
        self.abs + self.rel
    }

    pub fn close(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.abs + self.rel * x.abs().max(y.abs())
    }

    pub fn all_close(&self, xs: &[f64], ys: &[f64]) -> bool {
        xs.len() == ys.len() && xs.iter().zip(ys).all(|(&x, &y)| self.close(x, y))
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}
