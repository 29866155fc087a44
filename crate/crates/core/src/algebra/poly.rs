use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::scalar::{rational_to_f64, ExactScalar};
use crate::numeric::DoubleWord;
use crate::error::{Error, Result};

/// Exponent vector; entries may be negative.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the first variable, then the second, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial with [`ExactScalar`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, ExactScalar>,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exponents: Vec<i32>,
    coefficient: ExactScalar,
}

impl Polynomial {
    pub fn zero(vars: &[&str]) -> Self {
        Polynomial {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    /// Zero polynomial in `x_1, …, x_n`.
    pub fn zero_in(n: usize) -> Self {
        Polynomial {
            vars: (1..=n).map(|i| format!("x{i}")).collect(),
            terms: BTreeMap::new(),
        }
    }

    /// Zero polynomial with the same variables as `self`.
    pub fn zero_like(&self) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_like(&self, c: ExactScalar) -> Self {
        let n = self.nvars();
        self.zero_like().with_term(vec![0; n], c)
    }

    /// `c · x^{exponents}` with the variables of `self`.
    pub fn monomial_like(&self, exponents: Vec<i32>, c: ExactScalar) -> Self {
        self.zero_like().with_term(exponents, c)
    }

    /// The `i`-th variable (0-based) as a polynomial.
    pub fn var_like(&self, i: usize) -> Self {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial_like(e, ExactScalar::one())
    }

    /// Univariate polynomial in `x` from `(exponent, coefficient)` pairs.
    pub fn univariate<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, ExactScalar)>,
    {
        let mut p = Self::zero(&["x"]);
        for (e, c) in terms {
            p.add_term(Monomial(vec![e]), &c);
        }
        p
    }

    /// Univariate polynomial `Σ c_k x^k` from integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::univariate(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (k as i32, ExactScalar::from_int(*c))),
        )
    }

    pub fn x() -> Self {
        Self::univariate([(1, ExactScalar::one())])
    }

    pub fn one_x() -> Self {
        Self::univariate([(0, ExactScalar::one())])
    }

    fn with_term(mut self, exponents: Vec<i32>, c: ExactScalar) -> Self {
        assert_eq!(exponents.len(), self.nvars(), "exponent vector length");
        self.add_term(Monomial(exponents), &c);
        self
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[i32]) -> ExactScalar {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Largest term in the graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &ExactScalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn max_exponent(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn min_exponent(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[i]).min()
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|e| *e >= 0))
    }

    pub fn is_compatible(&self, other: &Polynomial) -> bool {
        self.vars == other.vars
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.is_compatible(other) {
            Ok(())
        } else {
            Err(Error::param(format!(
                "incompatible variable sets {:?} and {:?}",
                self.vars, other.vars
            )))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.zero_like();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> Polynomial {
        let mut out = self.zero_like();
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> Polynomial {
        self.scale(&ExactScalar::from_rational(r.clone()))
    }

    /// Multiplies by `x_i^k` (`k` may be negative).
    pub fn mul_var_pow(&self, i: usize, k: i32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e[i] += k;
                (Monomial(e), c.clone())
            })
            .collect();
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Divides by `x_i^k`. For a genuine polynomial the quotient must again
    /// be a polynomial; Laurent inputs are shifted unconditionally.
    pub fn div_var_pow(&self, i: usize, k: i32) -> Result<Polynomial> {
        if self.is_polynomial() {
            if let Some(lo) = self.min_exponent(i) {
                if lo < k {
                    return Err(Error::NotDivisible(
                        self.to_string(),
                        format!("{}^{}", self.vars[i], k),
                    ));
                }
            }
        }
        Ok(self.mul_var_pow(i, -k))
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), &c.scale(&BigRational::from_integer(e.into())));
        }
        out
    }

    /// Evaluates at a real point, rewriting `√π` grades numerically.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars());
        let mut acc = crate::numeric::DoubleWord::ZERO;
        for (m, c) in &self.terms {
            let mut v = c.to_f64();
            for (x, e) in point.iter().zip(&m.0) {
                v *= x.powi(*e);
            }
            acc += v;
        }
        acc.to_f64()
    }

    /// Univariate convenience for [`Polynomial::eval_f64`].
    pub fn eval1(&self, x: f64) -> f64 {
        self.eval_f64(&[x])
    }

    /// `(exponent, coefficient)` pairs of a univariate polynomial, ascending.
    pub fn univariate_terms(&self) -> Vec<(i32, ExactScalar)> {
        assert_eq!(self.nvars(), 1);
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m.0[0], c.clone())).collect();
        v.sort_by_key(|(e, _)| *e);
        v
    }

    /// Univariate coefficient of `x^k`.
    pub fn coeff1(&self, k: i32) -> ExactScalar {
        self.coefficient(&[k])
    }

    /// JSON array of `{exponents, coefficient}` in increasing term order.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .map(|(m, c)| JsonTerm {
                exponents: m.0.clone(),
                coefficient: c.clone(),
            })
            .collect();
        serde_json::to_value(terms).expect("polynomial terms serialize")
    }

    pub fn from_json(vars: &[&str], value: &serde_json::Value) -> Result<Polynomial> {
        let terms: Vec<JsonTerm> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut p = Polynomial::zero(vars);
        for t in terms {
            if t.exponents.len() != vars.len() {
                return Err(Error::Parse(format!(
                    "term has {} exponents for {} variables",
                    t.exponents.len(),
                    vars.len()
                )));
            }
            p.add_term(Monomial(t.exponents), &t.coefficient);
        }
        Ok(p)
    }
}

/// A univariate Laurent polynomial with rational coefficients rounded to
/// double-word precision, for fast evaluation with heavy cancellation.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    min_exp: i32,
    /// Coefficients of `x^{min_exp}, x^{min_exp+1}, …`.
    coeffs: Vec<DoubleWord>,
}

impl CompiledPoly {
    pub fn new(p: &Polynomial) -> Result<Self> {
        if p.nvars() != 1 {
            return Err(Error::param("only univariate polynomials can be compiled"));
        }
        let terms = p.univariate_terms();
        let min_exp = terms.first().map_or(0, |(e, _)| *e);
        let max_exp = terms.last().map_or(0, |(e, _)| *e);
        let mut coeffs = vec![DoubleWord::ZERO; (max_exp - min_exp + 1) as usize];
        for (e, c) in terms {
            let r = c.as_rational().ok_or_else(|| {
                Error::param(format!("coefficient {c} is not rational"))
            })?;
            coeffs[(e - min_exp) as usize] = rational_to_dd(&r);
        }
        Ok(CompiledPoly { min_exp, coeffs })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let xd = DoubleWord::from_f64(x);
        let mut acc = DoubleWord::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * xd + *c;
        }
        acc.to_f64() * x.powi(self.min_exp)
    }
}

fn rational_to_dd(r: &BigRational) -> DoubleWord {
    let hi = rational_to_f64(r);
    let rest = match BigRational::from_float(hi) {
        Some(h) => rational_to_f64(&(r - h)),
        None => 0.0,
    };
    DoubleWord::from_parts(hi, rest)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => write!(f, "·{v}")?,
                    _ => write!(f, "·{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

macro_rules! poly_op {
    ($tr:ident, $f:ident, $checked:ident) => {
        /// Panics on incompatible variable sets; see the `checked_*` methods.
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("compatible polynomials")
            }
        }
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
poly_op!(Add, add, checked_add);
poly_op!(Sub, sub, checked_sub);
poly_op!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&ExactScalar::from_int(-1))
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let a = Polynomial::from_ints(&[1, 1]);
        let b = Polynomial::from_ints(&[1, -1]);
        assert_eq!(&a * &b, Polynomial::from_ints(&[1, 0, -1]));
        let c = Polynomial::from_ints(&[2, 1]);
        assert_eq!(&c * &c, Polynomial::from_ints(&[4, 4, 1]));
        assert_eq!(&a + &a.zero_like(), a);
    }

    #[test]
    fn graded_lex_leading_term() {
        let p = Polynomial::zero_in(2)
            + Polynomial::zero_in(2).monomial_like(vec![0, 3], ExactScalar::one())
            + Polynomial::zero_in(2).monomial_like(vec![2, 1], ExactScalar::from_int(5))
            + Polynomial::zero_in(2).monomial_like(vec![1, 1], ExactScalar::one());
        let (m, c) = p.leading_term().unwrap();
        assert_eq!(m.0, vec![2, 1]);
        assert_eq!(*c, ExactScalar::from_int(5));
        assert_eq!(p.total_degree(), Some(3));
    }

    #[test]
    fn laurent_division() {
        let p = Polynomial::from_ints(&[0, 4, -3]);
        assert!(p.div_var_pow(0, 2).is_err());
        assert_eq!(p.div_var_pow(0, 1).unwrap(), Polynomial::from_ints(&[4, -3]));
        let l = p.mul_var_pow(0, -3);
        assert!(!l.is_polynomial());
        assert!(l.div_var_pow(0, 2).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let p = Polynomial::from_ints(&[2, 0, -7]).mul_var_pow(0, -1);
        let v = p.to_json();
        assert_eq!(
            v.to_string(),
            r#"[{"coefficient":"2/1","exponents":[-1]},{"coefficient":"-7/1","exponents":[1]}]"#
        );
        assert_eq!(Polynomial::from_json(&["x"], &v).unwrap(), p);
    }

    #[test]
    fn compiled_evaluation_survives_cancellation() {
        // (x − 1)^20 near x = 1 expanded in monomials
        let mut p = Polynomial::from_ints(&[1]);
        for _ in 0..20 {
            p = &p * &Polynomial::from_ints(&[-1, 1]);
        }
        let c = CompiledPoly::new(&p).unwrap();
        let x = 1.25;
        assert!((c.eval(x) - 0.25f64.powi(20)).abs() < 1e-20);
        let l = p.mul_var_pow(0, -1);
        assert!((CompiledPoly::new(&l).unwrap().eval(x) - 0.25f64.powi(20) / x).abs() < 1e-20);
    }

    #[test]
    fn incompatible_variables_are_reported() {
        assert!(Polynomial::x().checked_add(&Polynomial::zero_in(2)).is_err());
    }
}
