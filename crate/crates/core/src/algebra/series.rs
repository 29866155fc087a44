use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::poly::Polynomial;
use super::scalar::{factorial, gamma_half_integer, ExactScalar};
use crate::error::{Error, Result};

/// Truncated power series `Σ_{k=0}^{N} a_k t^k` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    order: usize,
    coeffs: Vec<Polynomial>,
}

impl PowerSeries {
    /// The zero series of order `order` with coefficients shaped like `like`.
    pub fn zero(order: usize, like: &Polynomial) -> Self {
        PowerSeries {
            order,
            coeffs: vec![like.zero_like(); order + 1],
        }
    }

    pub fn one(order: usize, like: &Polynomial) -> Self {
        let mut s = Self::zero(order, like);
        s.coeffs[0] = like.constant_like(ExactScalar::one());
        s
    }

    /// Builds a series from `coeffs[k] = a_k`. Missing coefficients are zero;
    /// more than `order + 1` coefficients is a truncation error.
    pub fn from_coeffs(order: usize, coeffs: Vec<Polynomial>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::param("series needs at least one coefficient"));
        }
        if coeffs.len() > order + 1 {
            return Err(Error::Truncation {
                requested: coeffs.len() - 1,
                order,
            });
        }
        let like = coeffs[0].zero_like();
        if coeffs.iter().any(|c| !c.is_compatible(&like)) {
            return Err(Error::param("series coefficients use different variables"));
        }
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, like);
        Ok(PowerSeries { order, coeffs })
    }

    /// Series in `t` with constant (grade-carrying) coefficients in `x`.
    pub fn from_scalars(order: usize, scalars: &[ExactScalar]) -> Result<Self> {
        let like = Polynomial::zero(&["x"]);
        Self::from_coeffs(
            order,
            scalars.iter().map(|c| like.constant_like(c.clone())).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> Result<&Polynomial> {
        self.coeffs.get(k).ok_or(Error::Truncation {
            requested: k,
            order: self.order,
        })
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    fn like(&self) -> Polynomial {
        self.coeffs[0].zero_like()
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries> {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k].checked_add(&other.coeffs[k]))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerSeries { order, coeffs })
    }

    /// Cauchy product; the result has the smaller of the two orders.
    pub fn mul(&self, other: &PowerSeries) -> Result<PowerSeries> {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order, &self.like());
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = self.coeffs[i].checked_mul(&other.coeffs[j])?;
                out.coeffs[i + j] = out.coeffs[i + j].checked_add(&prod)?;
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by a polynomial in the coefficient ring.
    pub fn mul_poly(&self, p: &Polynomial) -> Result<PowerSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerSeries {
            order: self.order,
            coeffs,
        })
    }

    pub fn scale(&self, c: &ExactScalar) -> PowerSeries {
        PowerSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// `self(inner(t))` for `inner` without constant term.
    pub fn compose(&self, inner: &PowerSeries) -> Result<PowerSeries> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::param(
                "series substitution needs an inner series without constant term",
            ));
        }
        let order = self.order.min(inner.order);
        let like = self.like();
        let mut out = Self::zero(order, &like);
        let mut power = Self::one(order, &like);
        for k in 0..=order {
            if k > 0 {
                power = power.mul(inner)?;
            }
            if self.coeffs[k].is_zero() {
                continue;
            }
            out = out.add(&power.mul_poly(&self.coeffs[k])?)?;
        }
        Ok(out)
    }

    /// Lowers the truncation order.
    pub fn truncate(&self, order: usize) -> Result<PowerSeries> {
        if order > self.order {
            return Err(Error::Truncation {
                requested: order,
                order: self.order,
            });
        }
        Ok(PowerSeries {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, "[{c}]·t^{k} + ")?;
            }
        }
        write!(f, "O(t^{})", self.order + 1)
    }
}

/// Building blocks of the Mano generating function, as series in `t` with
/// coefficients in `ℚ[√π^{±1}][x^{±1}]`.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesExpr {
    /// `(1 − t)^n`, `n` integral.
    Binomial { exponent: BigRational },
    /// `exp(c · x · t/(1−t))`.
    Exponential { c: BigRational },
    /// `Ĩ_ν(c · x · t/(1−t))` with `2ν` integral.
    BesselI { order: BigRational, c: BigRational },
}

fn integral(r: &BigRational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegralExponent(format!("{what} = {r}")))
    }
}

fn small(n: &BigInt) -> Result<i64> {
    i64::try_from(n).map_err(|_| Error::param(format!("{n} is too large")))
}

/// `t/(1−t)` to the given order.
fn t_over_one_minus_t(order: usize, like: &Polynomial) -> PowerSeries {
    let mut s = PowerSeries::zero(order, like);
    for k in 1..=order {
        s.coeffs[k] = like.constant_like(ExactScalar::one());
    }
    s
}

/// Expands `expr` exactly to order `n` in `t`; coefficients are univariate
/// in `x`.
pub fn series_expand(expr: &SeriesExpr, n: usize) -> Result<PowerSeries> {
    let like = Polynomial::zero(&["x"]);
    match expr {
        SeriesExpr::Binomial { exponent } => {
            let e = integral(exponent, "binomial exponent")?;
            // (1−t)^e = Σ_k (−e)_k / k! · t^k
            let mut s = PowerSeries::zero(n, &like);
            let mut c = BigRational::one();
            let neg_e = -BigRational::from_integer(e);
            for k in 0..=n {
                s.coeffs[k] = like.constant_like(ExactScalar::from_rational(c.clone()));
                let kk = BigRational::from_integer(BigInt::from(k as u64));
                c = c * (&neg_e + &kk) / (kk + BigRational::one());
            }
            Ok(s)
        }
        SeriesExpr::Exponential { c } => {
            let mut base = PowerSeries::zero(n, &like);
            for k in 0..=n {
                let coef = BigRational::new(num_traits::pow(c.numer().clone(), k), num_traits::pow(c.denom().clone(), k))
                    / BigRational::from_integer(factorial(k as u64));
                base.coeffs[k] = like.monomial_like(vec![k as i32], ExactScalar::from_rational(coef));
            }
            base.compose(&t_over_one_minus_t(n, &like))
        }
        SeriesExpr::BesselI { order, c } => {
            let twice = small(&integral(&(order * BigRational::from_integer(2.into())), "twice the Bessel order")?)?;
            // Ĩ_ν(z) = Σ_k (z/2)^{2k} / (k! Γ(ν+k+1)), z = c·x·s
            let half_c = c / BigRational::from_integer(2.into());
            let mut base = PowerSeries::zero(n, &like);
            for k in 0..=n / 2 {
                let arg_twice = twice + 2 * (k as i64 + 1);
                if arg_twice <= 0 && arg_twice % 2 == 0 {
                    continue;
                }
                let g = gamma_half_integer(arg_twice)?;
                let pow = num_traits::pow(half_c.clone(), 2 * k);
                let coef = ExactScalar::from_rational(pow / BigRational::from_integer(factorial(k as u64)))
                    * g.inverse()?;
                base.coeffs[2 * k] = like.monomial_like(vec![2 * k as i32], coef);
            }
            base.compose(&t_over_one_minus_t(n, &like))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn binomial_series() {
        let s = series_expand(&SeriesExpr::Binomial { exponent: q(-2, 1) }, 3).unwrap();
        for k in 0..=3 {
            assert_eq!(
                s.coeff(k).unwrap(),
                &Polynomial::univariate([(0, ExactScalar::from_int(k as i64 + 1))])
            );
        }
        let s = series_expand(&SeriesExpr::Binomial { exponent: q(-1, 1) }, 2).unwrap();
        assert!(matches!(s.coeff(3), Err(Error::Truncation { requested: 3, order: 2 })));
        assert!(matches!(
            series_expand(&SeriesExpr::Binomial { exponent: q(1, 2) }, 2),
            Err(Error::NonIntegralExponent(_))
        ));
    }

    #[test]
    fn exponential_substitution_first_order() {
        let s = series_expand(&SeriesExpr::Exponential { c: q(-1, 2) }, 3).unwrap();
        assert_eq!(
            s.coeff(1).unwrap(),
            &Polynomial::univariate([(1, ExactScalar::frac(-1, 2))])
        );
        // t² coefficient: −x/2 + x²/8
        assert_eq!(
            s.coeff(2).unwrap(),
            &Polynomial::univariate([(1, ExactScalar::frac(-1, 2)), (2, ExactScalar::frac(1, 8))])
        );
    }

    #[test]
    fn bessel_i_half_order_has_grade_minus_one() {
        let s = series_expand(&SeriesExpr::BesselI { order: q(1, 2), c: q(1, 1) }, 2).unwrap();
        // Ĩ_{1/2}(0) = 1/Γ(3/2) = 2/√π
        assert_eq!(
            s.coeff(0).unwrap(),
            &Polynomial::univariate([(0, ExactScalar::graded(q(2, 1), -1))])
        );
        assert!(s.coeff(1).unwrap().is_zero());
    }
}
