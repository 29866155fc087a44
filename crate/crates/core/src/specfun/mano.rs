use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use super::cauchy::{genfun_coeffs, CauchyOptions, CauchyResult};
use crate::algebra::{
    factorial, gamma_half_integer, series_expand, ExactScalar, Polynomial, PowerSeries, SeriesExpr,
};
use crate::bessel::{itilde_c, ktilde_half_closed, ktilde_scaled_c};
use crate::error::{Error, Result};
use crate::numeric::gamma::ln_gamma;

/// Parameters of `M_j^{μ,ℓ}`. The exact path needs odd `μ ≥ 1` and integral
/// `ℓ ≥ −1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ManoParams {
    pub mu: i64,
    pub ell: i64,
    pub j: usize,
}

impl ManoParams {
    pub fn new(mu: i64, ell: i64, j: usize) -> Result<Self> {
        check_exact(mu, ell)?;
        Ok(ManoParams { mu, ell, j })
    }
}

fn check_exact(mu: i64, ell: i64) -> Result<()> {
    if mu < 1 || mu % 2 == 0 {
        return Err(Error::param(format!(
            "the exact Mano path needs odd μ ≥ 1, got μ = {mu}"
        )));
    }
    if ell < -1 {
        return Err(Error::param(format!("ℓ must be at least −1, got {ell}")));
    }
    Ok(())
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `Γ(j+μ+1) / (2^μ Γ(j+(μ+1)/2))` exactly.
pub fn mano_prefactor(mu: i64, j: usize) -> Result<ExactScalar> {
    let j = j as i64;
    let num = gamma_half_integer(2 * (j + mu + 1))?;
    let den = gamma_half_integer(2 * j + mu + 1)?;
    let two_mu = ExactScalar::from_rational(q(1, 1) / BigRational::from_integer(BigInt::from(2).pow(mu as u32)));
    Ok(num * den.inverse()? * two_mu)
}

/// The generating function `G^{μ,ℓ}(t, x)` as an exact series in `t` to
/// order `order`.
///
/// Uses `e^{x/2} e^{−x/(2(1−t))} = e^{−(x/2) t/(1−t)}` and the closed form of
/// `K̃_{ℓ+1/2}`, so every factor is a finite Laurent polynomial in `x`.
pub fn mano_genfun_series(mu: i64, ell: i64, order: usize) -> Result<PowerSeries> {
    check_exact(mu, ell)?;
    let exp = series_expand(&SeriesExpr::Exponential { c: q(-1, 2) }, order)?;
    let bessel_i = series_expand(
        &SeriesExpr::BesselI {
            order: q(mu, 2),
            c: q(1, 2),
        },
        order,
    )?;
    let common = exp.mul(&bessel_i)?;
    let k = ktilde_half_closed(ell)?;
    let like = Polynomial::zero(&["x"]);
    let mut total = PowerSeries::zero(order, &like);
    // (x/2)^{2ℓ+1} · c·w^{e}, w = x/(2(1−t))  →  c·(x/2)^{2ℓ+1+e} · (1−t)^{−e}
    for (e, c) in k.laurent.univariate_terms() {
        let xp = 2 * ell as i32 + 1 + e;
        let scale = c * ExactScalar::from_rational(two_pow(-xp));
        let xfac = like.monomial_like(vec![xp], scale);
        let binom_exp = -(e as i64) - ell - (mu + 3) / 2;
        let binom = series_expand(
            &SeriesExpr::Binomial {
                exponent: q(binom_exp, 1),
            },
            order,
        )?;
        total = total.add(&binom.mul(&common)?.mul_poly(&xfac)?)?;
    }
    Ok(total)
}

fn two_pow(e: i32) -> BigRational {
    let p = BigRational::from_integer(BigInt::from(2).pow(e.unsigned_abs()));
    if e >= 0 {
        p
    } else {
        q(1, 1) / p
    }
}

/// `M_0^{μ,ℓ}, …, M_J^{μ,ℓ}` from a single series expansion.
pub fn mano_exact_all(mu: i64, ell: i64, jmax: usize) -> Result<Vec<Polynomial>> {
    let series = mano_genfun_series(mu, ell, jmax)?;
    let mut out = Vec::with_capacity(jmax + 1);
    for j in 0..=jmax {
        let coeff = series.coeff(j)?;
        let m = coeff.scale(&mano_prefactor(mu, j)?);
        validate(&m, mu, ell, j)?;
        out.push(m);
    }
    Ok(out)
}

pub fn mano_exact(params: ManoParams) -> Result<Polynomial> {
    let mut all = mano_exact_all(params.mu, params.ell, params.j)?;
    Ok(all.pop().expect("non-empty"))
}

fn validate(m: &Polynomial, mu: i64, ell: i64, j: usize) -> Result<()> {
    for (_, c) in m.terms() {
        if c.as_rational().is_none() {
            return Err(Error::Consistency(format!(
                "M_{j}^{{{mu},{ell}}} has a coefficient {c} outside grade 0"
            )));
        }
    }
    let sign = if j % 2 == 0 { 1 } else { -1 };
    let expected = ExactScalar::from_rational(q(sign, 1) / BigRational::from_integer(factorial(j as u64)));
    let degree = j as i32 + ell as i32;
    match m.leading_term() {
        Some((mono, c)) if mono.0[0] == degree && *c == expected => Ok(()),
        other => Err(Error::Consistency(format!(
            "M_{j}^{{{mu},{ell}}} leading term {:?}, expected {expected}·x^{degree}",
            other.map(|(mono, c)| (mono.0[0], c.to_string()))
        ))),
    }
}

/// `M_0^{μ,ℓ}(x) = Σ_{k≤ℓ} (2ℓ−k)! / (k! (ℓ−k)!) x^k` for `ℓ ≥ 0`.
pub fn mano_bottom_closed(ell: usize) -> Polynomial {
    Polynomial::univariate((0..=ell).map(|k| {
        let c = BigRational::new(
            factorial((2 * ell - k) as u64),
            factorial(k as u64) * factorial((ell - k) as u64),
        );
        (k as i32, ExactScalar::from_rational(c))
    }))
}

/// `G^{μ,ℓ}(t, x)` at complex `t`, for real parameters.
pub fn mano_genfun(mu: f64, ell: f64, x: f64, t: Complex64) -> Result<Complex64> {
    let s = (Complex64::new(1.0, 0.0) - t).inv();
    let w = s * (0.5 * x);
    let pre = (0.5 * x).powf(2.0 * ell + 1.0);
    let binom = s.powf(ell + 0.5 * (mu + 3.0));
    let i = itilde_c(0.5 * mu, t * w);
    let e = (-(t * w)).exp();
    let k = ktilde_scaled_c(ell + 0.5, w)?;
    Ok(binom * i * e * k * pre)
}

/// `M_j^{μ,ℓ}(x)` for real `μ, ℓ` by Cauchy extraction from the generating
/// function, with the prefactor in log-Gamma form.
pub fn mano_cauchy(mu: f64, ell: f64, jmax: usize, x: f64, opts: &CauchyOptions) -> Result<Vec<CauchyResult>> {
    if !(mu > -2.0) || (mu.fract() == 0.0 && mu < 0.0) {
        return Err(Error::param(format!("μ = {mu} outside the Mano domain")));
    }
    if !(x > 0.0) {
        return Err(Error::param(format!("x must be positive, got {x}")));
    }
    let mut coeffs = genfun_coeffs(|t| mano_genfun(mu, ell, x, t), jmax, opts)?;
    for (j, c) in coeffs.iter_mut().enumerate() {
        let jf = j as f64;
        let pre = (ln_gamma(jf + mu + 1.0) - mu * std::f64::consts::LN_2
            - ln_gamma(jf + 0.5 * (mu + 1.0)))
        .exp();
        c.value *= pre;
        c.noise_floor *= pre;
    }
    Ok(coeffs)
}
