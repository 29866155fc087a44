use num_bigint::BigInt;
use num_rational::BigRational;

use super::{KernelCase, KernelMethod, KernelValue};
use crate::algebra::factorial;
use crate::error::{Error, Result};
use crate::numeric::dd::DoubleWord;
use crate::numeric::gamma::digamma_int;

const MAX_TERMS: usize = 100_000;

/// `Φ̂` as minus the sum of the residues to the right of the contour.
///
/// A1, B1 (`t > 0`): `Σ_k (−1)^k (2t)^k / (k! (k+m)!)`.
///
/// B2: simple poles of `cot`/`csc` at `λ = −1, …, −m` and double poles at
/// `λ = k ≥ 0`:
/// `−(1/π) Σ_{n=1}^{m} (n−1)!/(m−n)! (2t)^{−n}
///  + (1/π) Σ_k (−2t)^k/(k!(k+m)!) [ln 2|t| − ψ(k+1) − ψ(k+m+1)]`.
pub fn phi_residue(case: KernelCase, m: usize, t: f64) -> Result<KernelValue> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::param(format!("Φ is evaluated at t ≠ 0, got {t}")));
    }
    let (value, est_error, work) = match case {
        KernelCase::A1 | KernelCase::B1 if t < 0.0 => (0.0, 0.0, 0),
        KernelCase::A1 | KernelCase::B1 => bessel_series(m, t)?,
        KernelCase::B2 => b2_series(m, t)?,
    };
    Ok(KernelValue {
        t,
        value,
        est_error,
        method: KernelMethod::Residue,
        work,
    })
}

fn factorial_dw(n: usize) -> DoubleWord {
    (1..=n).fold(DoubleWord::ONE, |acc, k| acc * k as f64)
}

fn bessel_series(m: usize, t: f64) -> Result<(f64, f64, usize)> {
    let x = -2.0 * t;
    let mut term = factorial_dw(m).recip();
    let mut sum = term;
    let mut abs_sum = term.to_f64().abs();
    for k in 1..MAX_TERMS {
        term = term * x / ((k * (k + m)) as f64);
        sum += term;
        abs_sum += term.to_f64().abs();
        if k as f64 > 2.0 * t.abs() && term.to_f64().abs() <= 1e-34 * sum.to_f64().abs() {
            let v = sum.to_f64();
            return Ok((v, 0.5 * f64::EPSILON * v.abs() + 1e-31 * abs_sum, k + 1));
        }
    }
    Err(Error::Convergence {
        what: "residue series",
        detail: format!("m = {m}, t = {t}: {MAX_TERMS} terms"),
    })
}

fn b2_series(m: usize, t: f64) -> Result<(f64, f64, usize)> {
    let s = 2.0 * t;
    let ln_s = s.abs().ln();
    // poles at −1, …, −m
    let mut finite = DoubleWord::ZERO;
    let inv_s = DoubleWord::from_f64(s).recip();
    for n in 1..=m {
        finite += factorial_dw(n - 1) / factorial_dw(m - n) * inv_s.powi(n as u32);
    }
    let mut a = factorial_dw(m).recip();
    let mut sum = DoubleWord::ZERO;
    let mut abs_sum = 0.0;
    let mut abs_a_sum = 0.0;
    for k in 0..MAX_TERMS {
        if k > 0 {
            a = a * (-s) / ((k * (k + m)) as f64);
        }
        let bracket = DoubleWord::from_f64(ln_s) - digamma_int(k as u64 + 1) - digamma_int((k + m) as u64 + 1);
        let term = a * bracket;
        sum += term;
        abs_sum += term.to_f64().abs();
        abs_a_sum += a.to_f64().abs();
        if k as f64 > s.abs() && term.to_f64().abs() <= 1e-34 * sum.to_f64().abs().max(1e-300) {
            let total = (sum - finite) * DoubleWord::FRAC_1_PI;
            let v = total.to_f64();
            // ln 2|t| carries one rounding; the rest is double-word.
            let err = 0.5 * f64::EPSILON * v.abs()
                + (f64::EPSILON * ln_s.abs() * abs_a_sum + 1e-30 * (abs_sum + finite.to_f64().abs()))
                    / std::f64::consts::PI;
            return Ok((v, err, k + 1 + m));
        }
    }
    Err(Error::Convergence {
        what: "residue series",
        detail: format!("m = {m}, t = {t}: {MAX_TERMS} terms"),
    })
}

/// Principal part at `t = 0` read off from the residues at `λ = −1, …, −m`:
/// pairs `(l, a_l)` with `Φ̂ ≡ Σ a_l δ^{(l)}(t)` (B1) or
/// `Φ̂ ≡ (1/π) Σ a_l t^{−l−1}` (B2) modulo locally integrable functions.
///
/// B1: the Riesz family `(2t)_+^λ` has residue
/// `2^{−n}(−1)^{n−1}δ^{(n−1)}/(n−1)!` at `λ = −n`.
/// B2: the residue of `cot πλ` and `csc πλ` at `λ = −n` is `±1/π`.
pub fn residue_principal_part(case: KernelCase, m: usize) -> Vec<(usize, BigRational)> {
    let two = BigInt::from(2);
    (1..=m)
        .filter_map(|n| {
            let l = n - 1;
            let mag = |num: BigInt| {
                BigRational::new(num, two.pow(n as u32) * factorial((m - n) as u64))
            };
            match case {
                KernelCase::A1 => None,
                KernelCase::B1 => {
                    let sign = if l % 2 == 0 { -1 } else { 1 };
                    Some((l, mag(BigInt::from(sign))))
                }
                KernelCase::B2 => Some((l, -mag(factorial(l as u64)))),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::jtilde;

    #[test]
    fn a1_is_the_bessel_series() {
        for m in 0..4 {
            for &t in &[0.01, 0.5, 1.0, 3.0, 10.0] {
                let v = phi_residue(KernelCase::A1, m, t).unwrap().value;
                let j = jtilde(m as f64, 2.0 * (2.0 * t).sqrt()).unwrap();
                assert!(((v - j) / j).abs() < 1e-10, "m={m} t={t}");
            }
        }
        assert_eq!(phi_residue(KernelCase::B1, 1, -0.5).unwrap().value, 0.0);
    }

    #[test]
    fn b2_small_case_by_hand() {
        // m = 0, t = −0.1: Σ_k 0.2^k/(k!)² (ln 0.2 − 2ψ(k+1)) / π
        let v = phi_residue(KernelCase::B2, 0, -0.1).unwrap().value;
        assert!((v + 0.312_416_965_162_152_06).abs() < 1e-14);
    }

    #[test]
    fn principal_parts_are_proportional_to_the_closed_lists() {
        for m in 1..=4usize {
            for (case, p, q) in [(KernelCase::B1, 2 * m + 1, 3), (KernelCase::B2, 2 * m + 2, 2)] {
                let closed = super::super::singular_part(p, q).unwrap();
                let res = residue_principal_part(case, m);
                let c = &res[0].1 / &closed.terms[0].raw;
                for ((l, a), term) in res.iter().zip(&closed.terms) {
                    assert_eq!(*l, term.l);
                    assert_eq!(a, &(&term.raw * &c));
                }
            }
        }
    }
}
