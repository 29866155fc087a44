//! Working-precision selection for summations that may cancel.

use crate::error::{Error, Result};

/// Environment variable consulted by [`Precision::from_env`].
pub const PRECISION_ENV: &str = "MINREP_PRECISION";

/// Accumulation mode for reductions (Cauchy sums, residue series, quadrature
/// panel sums). `Extended` accumulates in double-word arithmetic; both modes
/// use the same fixed summation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Double,
    Extended,
}

impl Precision {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "double" => Ok(Precision::Double),
            "extended" => Ok(Precision::Extended),
            other => Err(Error::param(format!(
                "{PRECISION_ENV} must be 'double' or 'extended', got '{other}'"
            ))),
        }
    }

    /// Reads [`PRECISION_ENV`]; unset means `Double`.
    pub fn from_env() -> Result<Self> {
        match std::env::var(PRECISION_ENV) {
            Ok(v) => Precision::parse(&v),
            Err(_) => Ok(Precision::Double),
        }
    }
}

/// Accumulator whose rounding behaviour follows a [`Precision`].
#[derive(Debug, Clone, Copy)]
pub struct Accumulator {
    mode: Precision,
    plain: f64,
    wide: super::DoubleWord,
}

impl Accumulator {
    pub fn new(mode: Precision) -> Self {
        Accumulator {
            mode,
            plain: 0.0,
            wide: super::DoubleWord::ZERO,
        }
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        match self.mode {
            Precision::Double => self.plain += v,
            Precision::Extended => self.wide += v,
        }
    }

    pub fn value(&self) -> f64 {
        match self.mode {
            Precision::Double => self.plain,
            Precision::Extended => self.wide.to_f64(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_documented_values() {
        assert_eq!(Precision::parse("double").unwrap(), Precision::Double);
        assert_eq!(Precision::parse("extended").unwrap(), Precision::Extended);
        assert!(Precision::parse("quad").is_err());
    }

    #[test]
    fn extended_accumulator_is_compensated() {
        let mut d = Accumulator::new(Precision::Double);
        let mut e = Accumulator::new(Precision::Extended);
        for v in [1e17, 1.0, -1e17] {
            d.add(v);
            e.add(v);
        }
        assert_eq!(e.value(), 1.0);
        assert_eq!(d.value(), 0.0);
    }
}
