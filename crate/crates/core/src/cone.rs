//! The signature `(p, q)` of the ambient quadratic form and quantities derived
//! from it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Signature `(p, q)` of `ℝ^{p,q}`, with the isotropic cone
/// `Ξ = {x ≠ 0 : x_1² + … + x_p² − x_{p+1}² − … − x_{p+q}² = 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConeSpec {
    pub p: usize,
    pub q: usize,
}

impl ConeSpec {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::param(format!("p and q must be positive, got ({p},{q})")));
        }
        Ok(ConeSpec { p, q })
    }

    /// Like [`ConeSpec::new`] but additionally requires `p+q` even and `≥ 4`,
    /// the standing hypothesis of the kernel and radial layers.
    pub fn even(p: usize, q: usize) -> Result<Self> {
        let spec = Self::new(p, q)?;
        spec.m()?;
        Ok(spec)
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// `m = (p+q−4)/2`.
    pub fn m(&self) -> Result<usize> {
        let n = self.n();
        if n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        if n < 4 {
            return Err(Error::param(format!("p+q = {n} must be at least 4")));
        }
        Ok((n - 4) / 2)
    }

    /// Signature sign of coordinate `a` (1-based).
    pub fn epsilon(&self, a: usize) -> Result<i32> {
        if a == 0 || a > self.n() {
            return Err(Error::IndexOutOfRange {
                index: a,
                max: self.n(),
            });
        }
        Ok(if a <= self.p { 1 } else { -1 })
    }

    /// `ε_j = (−1)^{j + (p−q)/2}`, the eigenvalue of the inversion operator on
    /// the `j`-th radial line.
    ///
    /// Stated in the source only for `j = 0` and for `p, q` both even; other
    /// cases are the parity-consistent extension.
    pub fn sign_rule(&self, j: usize) -> Result<i32> {
        self.m()?;
        let half = (self.p as i64 - self.q as i64) / 2;
        Ok(if (j as i64 + half).rem_euclid(2) == 0 { 1 } else { -1 })
    }

    /// Whether [`ConeSpec::sign_rule`] is an extrapolation at this `(p, q)`.
    pub fn sign_rule_is_extrapolated(&self, j: usize) -> bool {
        j != 0 && !(self.p % 2 == 0 && self.q % 2 == 0)
    }

    /// Evaluates the quadratic form.
    pub fn quadratic_form(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n() {
            return Err(Error::param(format!(
                "vector has length {}, expected {}",
                x.len(),
                self.n()
            )));
        }
        Ok(x.iter()
            .enumerate()
            .map(|(i, v)| if i < self.p { v * v } else { -v * v })
            .sum())
    }
}

impl std::fmt::Display for ConeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}
