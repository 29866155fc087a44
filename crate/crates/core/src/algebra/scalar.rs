use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite sum `Σ_g c_g · (√π)^g` with rational `c_g`.
///
/// Zero coefficients are never stored, so the derived equality is structural
/// equality of the normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    terms: BTreeMap<i32, BigRational>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    /// `num/den`. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::graded(r, 0)
    }

    /// `r · (√π)^grade`.
    pub fn graded(r: BigRational, grade: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(grade, r);
        }
        ExactScalar { terms }
    }

    pub fn sqrt_pi_pow(grade: i32) -> Self {
        Self::graded(BigRational::one(), grade)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    /// Iterates `(grade, coefficient)` in increasing grade.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(g, c)| (*g, c))
    }

    pub fn coefficient(&self, grade: i32) -> BigRational {
        self.terms.get(&grade).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `Some(g)` when the scalar is a single graded term (zero has no grade).
    pub fn pure_grade(&self) -> Option<i32> {
        if self.terms.len() == 1 {
            self.terms.keys().next().copied()
        } else {
            None
        }
    }

    /// The rational value, if the scalar has grade 0 (or is zero).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Rewrites every even grade `2k` as the rational power `π^k`. Only useful
    /// for display; the rational part of the result is no longer exact in `π`.
    pub fn to_f64(&self) -> f64 {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        self.terms
            .iter()
            .map(|(g, c)| rational_to_f64(c) * sqrt_pi.powi(*g))
            .sum()
    }

    /// Multiplicative inverse of a single-term scalar.
    pub fn inverse(&self) -> Result<Self> {
        match self.pure_grade() {
            Some(g) => Ok(Self::graded(self.terms[&g].recip(), -g)),
            None if self.is_zero() => Err(Error::param("division by zero scalar")),
            None => Err(Error::param(format!(
                "scalar {self} has several √π grades and no exact inverse here"
            ))),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        ExactScalar {
            terms: self.terms.iter().map(|(g, c)| (*g, c * r)).collect(),
        }
    }

    fn add_term(&mut self, grade: i32, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(grade).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&grade);
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Scale down huge numerators/denominators by a common power of two.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 900).max(0) as usize;
    let shift_d = (db - 900).max(0) as usize;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(f64::NAN);
    n / d * 2f64.powi(shift_n as i32 - shift_d as i32)
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        for (g, c) in &rhs.terms {
            self.add_term(*g, c);
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        for (g, c) in &rhs.terms {
            self.add_term(*g, &-c);
        }
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (ga, ca) in &self.terms {
            for (gb, cb) in &rhs.terms {
                out.add_term(ga + gb, &(ca * cb));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $f(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $f(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            terms: self.terms.into_iter().map(|(g, c)| (g, -c)).collect(),
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -self.clone()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0/1");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                if *g == 0 {
                    fmt_rational(c)
                } else {
                    format!("{}·sqrtpi^{}", fmt_rational(c), g)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) form; `*` may replace `·`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = ExactScalar::zero();
        for part in s.split(" + ") {
            let part = part.trim();
            let (coef, grade) = match part.split_once("sqrtpi^") {
                Some((head, g)) => {
                    let head = head.trim_end_matches(['·', '*']).trim();
                    let g: i32 = g
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("invalid grade in '{part}'")))?;
                    let c = if head.is_empty() {
                        BigRational::one()
                    } else {
                        parse_rational(head)?
                    };
                    (c, g)
                }
                None => (parse_rational(part)?, 0),
            };
            out.add_term(grade, &coef);
        }
        Ok(out)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `C(n, k)` for integers; zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact `Γ(twice/2)` at integers and half-integers.
pub fn gamma_half_integer(twice: i64) -> Result<ExactScalar> {
    if twice % 2 == 0 {
        let k = twice / 2;
        if k <= 0 {
            return Err(Error::param(format!("Γ has a pole at {k}")));
        }
        return Ok(ExactScalar::from_bigint(factorial((k - 1) as u64)));
    }
    let m = (twice - 1).div_euclid(2);
    let r = if m >= 0 {
        // Γ(m + 1/2) = (2m)! / (4^m m!) · √π
        let m = m as u64;
        BigRational::new(
            factorial(2 * m),
            BigInt::from(4).pow(m as u32) * factorial(m),
        )
    } else {
        // Γ(1/2 − k) = (−4)^k k! / (2k)! · √π
        let k = (-m) as u64;
        BigRational::new(
            BigInt::from(-4).pow(k as u32) * factorial(k),
            factorial(2 * k),
        )
    };
    Ok(ExactScalar::graded(r, 1))
}

impl ExactScalar {
    pub fn is_negative_rational(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_negative())
    }
}
