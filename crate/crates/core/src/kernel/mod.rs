//! The inversion kernel `Φ^{p,q}(t)` defined by a Mellin–Barnes integral of
//! `b(λ, t) = Γ(−λ)/Γ(λ+(p+q)/2−1) (2t)_+^λ` along a contour `L_m` that
//! crosses the real axis in `(−m−1, −m)`, `m = (p+q−4)/2`.
//!
//! All values returned here are `Φ̂ = Φ/(2πi)` for the upward oriented
//! contour, which is real.

mod contour;
mod residue;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::factorial;
use crate::cone::ConeSpec;
use crate::error::{Error, Result};
use crate::numeric::gamma::ln_gamma_complex;

pub use contour::{phi_contour, ContourSpec};
pub use residue::{phi_residue, residue_principal_part};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelCase {
    /// `p = 1` or `q = 1`.
    A1,
    /// `p, q > 1`, both odd.
    B1,
    /// `p, q > 1`, both even.
    B2,
}

impl fmt::Display for KernelCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelCase::A1 => "A1",
            KernelCase::B1 => "B1",
            KernelCase::B2 => "B2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularKind {
    /// `Σ a_l δ^{(l)}(t)`.
    DeltaDerivatives,
    /// `Σ a_l t^{−l−1}`.
    NegativePowers,
    None,
}

impl fmt::Display for SingularKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularKind::DeltaDerivatives => "delta_derivatives",
            SingularKind::NegativePowers => "negative_powers",
            SingularKind::None => "none",
        })
    }
}

/// One term of the singular part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularTerm {
    pub l: usize,
    /// `(−1)^l/(2^l(m−l−1)!)` (B1) or `l!/(2^l(m−l−1)!)` (B2).
    pub raw: BigRational,
    /// `raw` divided by the `l = 0` coefficient.
    pub normalized: BigRational,
}

/// Placeholder for the overall nonzero constant in front of the singular
/// sum, which is not determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OverallConstant {
    Unknown,
}

/// The part of `Φ^{p,q}` that is not locally integrable for the measure
/// `r^{p+q−3} dr`, up to an overall constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPart {
    pub kind: SingularKind,
    pub terms: Vec<SingularTerm>,
    pub constant: OverallConstant,
}

impl SingularPart {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelClass {
    pub p: usize,
    pub q: usize,
    pub case: KernelCase,
    pub m: usize,
    pub locally_integrable: bool,
    pub singular: SingularPart,
}

/// Row of the JSON classification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularTermReport {
    pub kind: SingularKind,
    pub l: usize,
    pub coeff_num: String,
    pub coeff_den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub p: usize,
    pub q: usize,
    pub case: KernelCase,
    pub m: usize,
    pub locally_integrable: bool,
    pub singular_terms: Vec<SingularTermReport>,
}

impl From<&KernelClass> for ClassificationReport {
    fn from(c: &KernelClass) -> Self {
        ClassificationReport {
            p: c.p,
            q: c.q,
            case: c.case,
            m: c.m,
            locally_integrable: c.locally_integrable,
            singular_terms: c
                .singular
                .terms
                .iter()
                .map(|t| SingularTermReport {
                    kind: c.singular.kind,
                    l: t.l,
                    coeff_num: t.raw.numer().to_string(),
                    coeff_den: t.raw.denom().to_string(),
                })
                .collect(),
        }
    }
}

fn kernel_spec(p: usize, q: usize) -> Result<(KernelCase, usize)> {
    let spec = ConeSpec::new(p, q)?;
    let m = spec.m()?;
    let case = if p == 1 || q == 1 {
        KernelCase::A1
    } else if p % 2 == 1 {
        KernelCase::B1
    } else {
        KernelCase::B2
    };
    Ok((case, m))
}

/// Case, local integrability and singular part of `Φ^{p,q}`.
pub fn classify(p: usize, q: usize) -> Result<KernelClass> {
    let (case, m) = kernel_spec(p, q)?;
    let singular = singular_part(p, q)?;
    Ok(KernelClass {
        p,
        q,
        case,
        m,
        locally_integrable: singular.is_empty(),
        singular,
    })
}

fn rat(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

pub fn singular_part(p: usize, q: usize) -> Result<SingularPart> {
    let (case, m) = kernel_spec(p, q)?;
    let kind = match case {
        KernelCase::A1 => SingularKind::None,
        _ if m == 0 => SingularKind::None,
        KernelCase::B1 => SingularKind::DeltaDerivatives,
        KernelCase::B2 => SingularKind::NegativePowers,
    };
    let raw: Vec<BigRational> = match kind {
        SingularKind::None => Vec::new(),
        SingularKind::DeltaDerivatives => (0..m)
            .map(|l| {
                let sign = if l % 2 == 0 { 1 } else { -1 };
                rat(
                    BigInt::from(sign),
                    BigInt::from(2).pow(l as u32) * factorial((m - l - 1) as u64),
                )
            })
            .collect(),
        SingularKind::NegativePowers => (0..m)
            .map(|l| {
                rat(
                    factorial(l as u64),
                    BigInt::from(2).pow(l as u32) * factorial((m - l - 1) as u64),
                )
            })
            .collect(),
    };
    let terms = match raw.first() {
        Some(first) => {
            let first = first.clone();
            raw.into_iter()
                .enumerate()
                .map(|(l, r)| SingularTerm {
                    l,
                    normalized: &r / &first,
                    raw: r,
                })
                .collect()
        }
        None => Vec::new(),
    };
    Ok(SingularPart {
        kind,
        terms,
        constant: OverallConstant::Unknown,
    })
}

/// `b(λ, t)` at a point `t ≠ 0`.
pub fn b_eval(lambda: Complex64, t: f64, p: usize, q: usize) -> Result<Complex64> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::param(format!("b(λ, t) needs finite t ≠ 0, got {t}")));
    }
    if t < 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let is_int = |z: Complex64| z.im == 0.0 && z.re.fract() == 0.0;
    if is_int(lambda) && lambda.re >= 0.0 {
        return Err(Error::param(format!(
            "λ = {} is a pole of Γ(−λ)",
            lambda.re
        )));
    }
    let shift = 0.5 * (p + q) as f64 - 1.0;
    let denom = lambda + shift;
    if is_int(denom) && denom.re <= 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(b_core(lambda, shift, (2.0 * t).ln()))
}

/// `Γ(−λ)/Γ(λ+shift) · e^{λ ln_s}`.
pub(crate) fn b_core(lambda: Complex64, shift: f64, ln_s: f64) -> Complex64 {
    (ln_gamma_complex(-lambda) - ln_gamma_complex(lambda + shift) + lambda * ln_s).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelMethod {
    Residue,
    Contour,
}

impl fmt::Display for KernelMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelMethod::Residue => "residue",
            KernelMethod::Contour => "contour",
        })
    }
}

impl std::str::FromStr for KernelMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "residue" => Ok(KernelMethod::Residue),
            "contour" => Ok(KernelMethod::Contour),
            other => Err(Error::Parse(format!("unknown kernel method {other:?}"))),
        }
    }
}

/// A value of `Φ̂^{p,q}(t)` with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub t: f64,
    pub value: f64,
    pub est_error: f64,
    pub method: KernelMethod,
    /// Residues summed or integrand evaluations used.
    pub work: usize,
}

/// `Φ̂^{p,q}(t)` for `t ≠ 0`.
pub fn phi_eval(p: usize, q: usize, t: f64, method: KernelMethod) -> Result<KernelValue> {
    let (case, m) = kernel_spec(p, q)?;
    match method {
        KernelMethod::Residue => phi_residue(case, m, t),
        KernelMethod::Contour => phi_contour(case, m, t, &ContourSpec::for_m(m)),
    }
}

/// Case and `m` for `(p, q)`.
pub fn kernel_case(p: usize, q: usize) -> Result<(KernelCase, usize)> {
    kernel_spec(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        rat(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn classification_examples() {
        let c = classify(3, 1).unwrap();
        assert_eq!((c.case, c.locally_integrable), (KernelCase::A1, true));
        assert_eq!(c.singular.kind, SingularKind::None);
        let c = classify(2, 2).unwrap();
        assert_eq!((c.case, c.m, c.locally_integrable), (KernelCase::B2, 0, true));
        assert!(c.singular.is_empty());
        let c = classify(5, 3).unwrap();
        assert_eq!((c.case, c.locally_integrable), (KernelCase::B1, false));
        let raw: Vec<_> = c.singular.terms.iter().map(|t| t.raw.clone()).collect();
        assert_eq!(raw, vec![r(1, 1), r(-1, 2)]);
        assert!(!classify(3, 3).unwrap().locally_integrable);
        assert!(matches!(classify(4, 3), Err(Error::OddDimension(7))));
    }

    #[test]
    fn b2_singular_part_for_four_four() {
        let s = singular_part(4, 4).unwrap();
        assert_eq!(s.kind, SingularKind::NegativePowers);
        let norm: Vec<_> = s.terms.iter().map(|t| t.normalized.clone()).collect();
        assert_eq!(norm, vec![r(1, 1), r(1, 2)]);
        let s = singular_part(6, 4).unwrap();
        // m = 3: raw l=0 is 1/2!
        assert_eq!(s.terms[0].raw, r(1, 2));
        assert_eq!(s.terms[2].normalized, r(1, 1));
    }

    #[test]
    fn b_at_half() {
        let b = b_eval(Complex64::new(0.5, 0.0), 0.5, 2, 2).unwrap();
        assert!((b.re + 4.0).abs() < 1e-13 && b.im.abs() < 1e-13);
        assert_eq!(b_eval(Complex64::new(0.5, 0.0), -1.0, 2, 2).unwrap(), Complex64::new(0.0, 0.0));
        assert!(b_eval(Complex64::new(2.0, 0.0), 1.0, 2, 2).is_err());
        assert!(b_eval(Complex64::new(0.5, 0.0), 0.0, 2, 2).is_err());
    }

    #[test]
    fn b_decays_polynomially_on_vertical_lines() {
        // |b(γ+is)| ∝ s^{−2γ−(p+q)/2+1}
        for &(gamma, p, q) in &[(0.5, 3, 1), (1.5, 4, 4), (2.0, 5, 3)] {
            let a = b_eval(Complex64::new(gamma, 1e3), 0.7, p, q).unwrap().norm();
            let b = b_eval(Complex64::new(gamma, 1e4), 0.7, p, q).unwrap().norm();
            let slope = (b / a).log10();
            let expected = -2.0 * gamma - 0.5 * (p + q) as f64 + 1.0;
            assert!((slope - expected).abs() < 1e-3, "{slope} vs {expected}");
        }
    }
}
