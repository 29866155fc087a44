use num_bigint::BigInt;
use num_rational::BigRational;

use super::lambda::{LambdaBasis, LambdaParams, LambdaRoute};
use super::laguerre::laguerre;
use super::mano::{mano_exact_all, mano_prefactor};
use crate::algebra::{factorial, CompiledPoly, ExactScalar, Polynomial};
use crate::error::{Error, Result};
use crate::numeric::quad::{integrate_vec_semi_infinite, QuadOptions};

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `M_j^{μ,ℓ}` in `L²(x^{μ−2ℓ} e^{−x} dx)`.
    Mano { mu: i64, ell: i64 },
    /// `L_j^μ` in `L²(x^μ e^{−x} dx)`.
    Laguerre { mu: BigRational },
    /// `Λ_j^{μ,ν}` in `L²(x^{μ+ν+1} dx)`.
    Lambda { mu: f64, nu: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum NormValue {
    Exact(ExactScalar),
    Numeric { value: f64, error: f64 },
}

impl NormValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            NormValue::Exact(s) => s.to_f64(),
            NormValue::Numeric { value, .. } => *value,
        }
    }
}

/// `∫_0^∞ a(x) b(x) x^w e^{−x} dx` for Laurent polynomials, through the
/// moments `∫ x^n e^{−x} dx = n!`.
pub fn moment_inner_product(a: &Polynomial, b: &Polynomial, w: i64) -> Result<ExactScalar> {
    let mut acc = ExactScalar::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let n = ma.0[0] as i64 + mb.0[0] as i64 + w;
            if n < 0 {
                return Err(Error::param(format!(
                    "moment x^{n} e^{{−x}} is not integrable at 0"
                )));
            }
            acc += &(&(ca * cb) * &ExactScalar::from_bigint(factorial(n as u64)));
        }
    }
    Ok(acc)
}

fn mano_hypotheses(mu: i64, ell: i64) -> Result<()> {
    if mu < 2 * ell + 1 {
        return Err(Error::param(format!(
            "orthogonality of M^{{{mu},{ell}}} needs μ ≥ 2ℓ+1"
        )));
    }
    Ok(())
}

/// Exact Gram matrix of `M_0, …, M_J` under `x^{μ−2ℓ} e^{−x} dx`.
pub fn gram_exact(mu: i64, ell: i64, jmax: usize) -> Result<Vec<Vec<ExactScalar>>> {
    mano_hypotheses(mu, ell)?;
    let polys = mano_exact_all(mu, ell, jmax)?;
    let w = mu - 2 * ell;
    polys
        .iter()
        .map(|a| polys.iter().map(|b| moment_inner_product(a, b, w)).collect())
        .collect()
}

/// Squared norm; exact whenever the integrand is a Laurent polynomial times
/// `e^{−x}` with integral weight exponent.
pub fn norm_squared(family: &Family, j: usize) -> Result<NormValue> {
    match family {
        Family::Mano { mu, ell } => {
            mano_hypotheses(*mu, *ell)?;
            let m = &mano_exact_all(*mu, *ell, j)?[j];
            Ok(NormValue::Exact(moment_inner_product(m, m, mu - 2 * ell)?))
        }
        Family::Laguerre { mu } if mu.is_integer() && *mu >= BigRational::from_integer(0.into()) => {
            let l = laguerre(j, mu);
            let w = i64::try_from(mu.to_integer()).map_err(|_| Error::param("μ too large"))?;
            Ok(NormValue::Exact(moment_inner_product(&l, &l, w)?))
        }
        Family::Lambda { mu, nu } => Ok(lambda_norms(*mu, *nu, j)?.pop().expect("non-empty")),
        Family::Laguerre { .. } => {
            let (value, error) = norm_squared_quadrature(family, j, 1e-12)?;
            Ok(NormValue::Numeric { value, error })
        }
    }
}

/// `‖Λ_j^{μ,ν}‖²` in `L²(x^{μ+ν+1} dx)` for `j = 0..=J`: exact on the
/// elementary route, by one vector quadrature otherwise.
pub fn lambda_norms(mu: f64, nu: f64, jmax: usize) -> Result<Vec<NormValue>> {
    let params = LambdaParams::new(mu, nu, jmax)?;
    if !params.orthogonality_applies() {
        return Err(Error::param(format!(
            "({mu},{nu}) violates the orthogonality hypotheses"
        )));
    }
    let basis = LambdaBasis::new(mu, nu, jmax)?;
    if basis.route() == LambdaRoute::Elementary {
        // Λ_j = C_j x^{−2ℓ−1} e^{−x} M_j(2x);  y = 2x
        let (m, ell) = (mu as i64, (nu as i64 - 1) / 2);
        let polys = mano_exact_all(m, ell, jmax)?;
        let shift = BigRational::new(1.into(), BigInt::from(2).pow((m - 2 * ell + 1) as u32));
        return polys
            .iter()
            .enumerate()
            .map(|(j, poly)| {
                let c = mano_prefactor(m, j)?.inverse()?;
                let inner = moment_inner_product(poly, poly, m - 2 * ell)?;
                Ok(NormValue::Exact(&(&c * &c) * &inner.scale(&shift)))
            })
            .collect();
    }
    let w = mu + nu + 1.0;
    let mut failure = None;
    let r = integrate_vec_semi_infinite(
        |x, out: &mut [f64]| match basis.eval_all(x) {
            Ok(v) => {
                for (o, l) in out.iter_mut().zip(&v) {
                    *o = l * l * x.powf(w);
                }
            }
            Err(e) => {
                failure.get_or_insert(e);
                out.iter_mut().for_each(|o| *o = 0.0);
            }
        },
        jmax + 1,
        0.0,
        2.0 * jmax as f64 + 10.0,
        &QuadOptions::with_tol(1e-300, 1e-12),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    if !r.converged {
        return Err(Error::Convergence {
            what: "Λ norm quadrature",
            detail: format!("({mu},{nu}), J = {jmax}, error {:.3e}", r.error),
        });
    }
    Ok(r.values
        .into_iter()
        .map(|value| NormValue::Numeric { value, error: r.error })
        .collect())
}

/// Full Gram matrix `∫ Λ_j Λ_k x^{μ+ν+1} dx`, `j, k ≤ J`, by one vector
/// quadrature over the upper triangle. Returns the matrix and the estimated
/// absolute error.
pub fn lambda_gram(mu: f64, nu: f64, jmax: usize, rel_tol: f64) -> Result<(Vec<Vec<f64>>, f64)> {
    let basis = LambdaBasis::new(mu, nu, jmax)?;
    let n = jmax + 1;
    let w = mu + nu + 1.0;
    let mut failure = None;
    let r = integrate_vec_semi_infinite(
        |x, out: &mut [f64]| match basis.eval_all(x) {
            Ok(v) => {
                let xw = x.powf(w);
                let mut idx = 0;
                for j in 0..n {
                    for k in j..n {
                        out[idx] = v[j] * v[k] * xw;
                        idx += 1;
                    }
                }
            }
            Err(e) => {
                failure.get_or_insert(e);
                out.iter_mut().for_each(|o| *o = 0.0);
            }
        },
        n * (n + 1) / 2,
        0.0,
        2.0 * jmax as f64 + 10.0,
        &QuadOptions::with_tol(1e-300, rel_tol),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    if !r.converged {
        return Err(Error::Convergence {
            what: "Λ Gram quadrature",
            detail: format!("({mu},{nu}), J = {jmax}, error {:.3e}", r.error),
        });
    }
    let mut gram = vec![vec![0.0; n]; n];
    let mut idx = 0;
    for j in 0..n {
        for k in j..n {
            gram[j][k] = r.values[idx];
            gram[k][j] = r.values[idx];
            idx += 1;
        }
    }
    Ok((gram, r.error))
}

/// Squared norm by adaptive quadrature on `(0, ∞)`; returns the value and
/// the estimated absolute error.
pub fn norm_squared_quadrature(family: &Family, j: usize, rel_tol: f64) -> Result<(f64, f64)> {
    let opts = QuadOptions::with_tol(1e-300, rel_tol);
    let (res, span) = match family {
        Family::Mano { mu, ell } => {
            mano_hypotheses(*mu, *ell)?;
            let m = CompiledPoly::new(&mano_exact_all(*mu, *ell, j)?[j])?;
            let w = (mu - 2 * ell) as i32;
            let span = (4 * (j as i64 + ell.max(&0)) + 2 * w as i64 + 10) as f64;
            let r = integrate_vec_semi_infinite(
                |x, out: &mut [f64]| {
                    let v = m.eval(x);
                    out[0] = v * v * x.powi(w) * (-x).exp();
                },
                1,
                0.0,
                span,
                &opts,
            );
            (r, span)
        }
        Family::Laguerre { mu } => {
            let m = CompiledPoly::new(&laguerre(j, mu))?;
            let w = crate::algebra::ExactScalar::from_rational(mu.clone()).to_f64();
            if !(w > -1.0) {
                return Err(Error::param("Laguerre weight needs μ > −1"));
            }
            let span = 4.0 * j as f64 + 2.0 * w.max(0.0) + 10.0;
            let r = integrate_vec_semi_infinite(
                |x, out: &mut [f64]| {
                    let v = m.eval(x);
                    out[0] = v * v * x.powf(w) * (-x).exp();
                },
                1,
                0.0,
                span,
                &opts,
            );
            (r, span)
        }
        Family::Lambda { mu, nu } => {
            let basis = LambdaBasis::new(*mu, *nu, j)?;
            let w = mu + nu + 1.0;
            let span = 2.0 * j as f64 + 10.0;
            let mut failure = None;
            let r = integrate_vec_semi_infinite(
                |x, out: &mut [f64]| match basis.eval_all(x) {
                    Ok(v) => out[0] = v[j] * v[j] * x.powf(w),
                    Err(e) => {
                        failure.get_or_insert(e);
                        out[0] = 0.0;
                    }
                },
                1,
                0.0,
                span,
                &opts,
            );
            if let Some(e) = failure {
                return Err(e);
            }
            (r, span)
        }
    };
    if !res.converged {
        return Err(Error::Convergence {
            what: "norm quadrature",
            detail: format!("{family:?}, j = {j}, span {span}, error {:.3e}", res.error),
        });
    }
    Ok((res.values[0], res.error))
}
