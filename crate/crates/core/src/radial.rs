//! Radial (`O(p)×O(q)`-invariant) functions on the isotropic cone, which live
//! in `L²(ℝ₊, ½ r^{p+q−3} dr)`, their expansions in the basis
//! `Λ_j^{p−2,q−2}(2r)` and the inversion operator acting diagonally on it.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::CompiledPoly;
use crate::bessel::ktilde;
use crate::cone::ConeSpec;
use crate::error::{Error, Result};
use crate::numeric::quad::{integrate_vec_semi_infinite, QuadOptions};
use crate::specfun::{lambda_norms, mano_exact, LambdaBasis, ManoParams};

pub type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function of the radial parameter `r > 0`, optionally carrying its
/// coefficients in the `Λ_j(2r)` basis.
#[derive(Clone)]
pub struct RadialFunction {
    eval: Evaluator,
    expansion: Option<Expansion>,
}

impl fmt::Debug for RadialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialFunction")
            .field("expansion", &self.expansion)
            .finish_non_exhaustive()
    }
}

impl RadialFunction {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        RadialFunction {
            eval: Arc::new(f),
            expansion: None,
        }
    }

    /// `Σ_j c_j Λ_j(2r)`.
    pub fn from_expansion(expansion: Expansion) -> Result<Self> {
        let spec = ConeSpec::even(expansion.p, expansion.q)?;
        let basis = radial_basis(&spec, expansion.jmax)?;
        let coeffs = expansion.coeffs.clone();
        let eval = move |r: f64| match basis.eval_all(2.0 * r) {
            Ok(v) => v.iter().zip(&coeffs).map(|(l, c)| l * c).sum(),
            Err(_) => f64::NAN,
        };
        Ok(RadialFunction {
            eval: Arc::new(eval),
            expansion: Some(expansion),
        })
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.eval)(r)
    }

    pub fn expansion(&self) -> Option<&Expansion> {
        self.expansion.as_ref()
    }
}

/// Coefficients of a radial function in the `Λ_j^{p−2,q−2}(2r)` basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expansion {
    pub p: usize,
    pub q: usize,
    #[serde(rename = "J")]
    pub jmax: usize,
    pub coeffs: Vec<f64>,
    /// `‖f − Σ c_j Λ_j(2·)‖` in the radial measure.
    pub residual: f64,
}

/// The inversion operator on radial functions for the signature `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InversionSpec {
    pub cone: ConeSpec,
}

impl InversionSpec {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let cone = ConeSpec::even(p, q)?;
        check_order(&cone)?;
        Ok(InversionSpec { cone })
    }

    /// `ε_j = (−1)^{j + (p−q)/2}`.
    pub fn sign(&self, j: usize) -> i32 {
        self.cone.sign_rule(j).expect("validated signature")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Relative L² residual above which an expansion is not used for the
    /// inversion.
    pub residual_tol: f64,
}

impl Default for RadialOptions {
    fn default() -> Self {
        RadialOptions {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            residual_tol: 1e-6,
        }
    }
}

fn check_order(spec: &ConeSpec) -> Result<()> {
    if spec.p < spec.q {
        return Err(Error::param(format!(
            "the Λ basis is used with p ≥ q, got {spec}; swap the roles of p and q"
        )));
    }
    Ok(())
}

/// `Λ_0^{p−2,q−2}, …, Λ_J^{p−2,q−2}`; evaluate at `x = 2r`.
pub fn radial_basis(spec: &ConeSpec, jmax: usize) -> Result<LambdaBasis> {
    spec.m()?;
    check_order(spec)?;
    LambdaBasis::new(spec.p as f64 - 2.0, spec.q as f64 - 2.0, jmax)
}

/// `‖Λ_j(2·)‖²` in `½ r^{p+q−3} dr`, which is `2^{−(p+q−1)}` times the norm in
/// `x^{p+q−3} dx`.
pub fn radial_norms(spec: &ConeSpec, jmax: usize) -> Result<Vec<f64>> {
    spec.m()?;
    check_order(spec)?;
    let scale = 0.5f64.powi(spec.n() as i32 - 1);
    Ok(lambda_norms(spec.p as f64 - 2.0, spec.q as f64 - 2.0, jmax)?
        .iter()
        .map(|n| n.to_f64() * scale)
        .collect())
}

fn weight(spec: &ConeSpec, r: f64) -> f64 {
    0.5 * r.powi(spec.n() as i32 - 3)
}

fn radial_integral<F>(mut f: F, dim: usize, span: f64, opts: &RadialOptions) -> Result<(Vec<f64>, f64)>
where
    F: FnMut(f64, &mut [f64]),
{
    let mut bad = None;
    let res = integrate_vec_semi_infinite(
        |r, out: &mut [f64]| {
            f(r, out);
            if out.iter().any(|v| !v.is_finite()) {
                bad.get_or_insert(r);
                out.iter_mut().for_each(|v| *v = 0.0);
            }
        },
        dim,
        0.0,
        span,
        &QuadOptions::with_tol(opts.abs_tol, opts.rel_tol),
    );
    if let Some(r) = bad {
        return Err(Error::Consistency(format!("integrand is not finite at r = {r}")));
    }
    if !res.converged {
        return Err(Error::Convergence {
            what: "radial quadrature",
            detail: format!("error {:.3e} after {} evaluations", res.error, res.evaluations),
        });
    }
    Ok((res.values, res.error))
}

/// `∫_0^∞ f(r) g(r) ½ r^{p+q−3} dr` with an absolute error estimate.
pub fn inner_product(
    f: &RadialFunction,
    g: &RadialFunction,
    spec: &ConeSpec,
    opts: &RadialOptions,
) -> Result<(f64, f64)> {
    // The second component, ∫|fg|, sets the scale when f ⟂ g.
    let (v, err) = radial_integral(
        |r, out| {
            out[0] = f.eval(r) * g.eval(r) * weight(spec, r);
            out[1] = out[0].abs();
        },
        2,
        8.0,
        opts,
    )?;
    Ok((v[0], err))
}

pub fn norm(f: &RadialFunction, spec: &ConeSpec, opts: &RadialOptions) -> Result<f64> {
    Ok(inner_product(f, f, spec, opts)?.0.max(0.0).sqrt())
}

/// Absolute tolerance for integrals of squared differences, which may vanish.
fn difference_options(opts: &RadialOptions, scale_sq: f64) -> RadialOptions {
    RadialOptions {
        abs_tol: opts.abs_tol.max(1e-20 * scale_sq),
        ..*opts
    }
}

/// `‖f − g‖` in the radial measure, integrating the squared difference.
pub fn l2_distance(f: &RadialFunction, g: &RadialFunction, spec: &ConeSpec, opts: &RadialOptions) -> Result<f64> {
    let scale_sq = norm(f, spec, opts)?.powi(2) + norm(g, spec, opts)?.powi(2);
    let (v, _) = radial_integral(
        |r, out| {
            let d = f.eval(r) - g.eval(r);
            out[0] = d * d * weight(spec, r);
        },
        1,
        8.0,
        &difference_options(opts, scale_sq),
    )?;
    Ok(v[0].max(0.0).sqrt())
}

/// `c_j = ⟨f, Λ_j(2·)⟩ / ‖Λ_j(2·)‖²` for `j ≤ J`, with the residual norm.
pub fn expand(f: &RadialFunction, spec: &ConeSpec, jmax: usize, opts: &RadialOptions) -> Result<Expansion> {
    let basis = radial_basis(spec, jmax)?;
    let norms = radial_norms(spec, jmax)?;
    let span = 4.0 + jmax as f64;
    let mut failure = None;
    let (proj, _) = radial_integral(
        |r, out| match basis.eval_all(2.0 * r) {
            Ok(v) => {
                let fw = f.eval(r) * weight(spec, r);
                for (o, l) in out.iter_mut().zip(&v) {
                    *o = fw * l;
                }
            }
            Err(e) => {
                failure.get_or_insert(e);
                out.iter_mut().for_each(|o| *o = 0.0);
            }
        },
        jmax + 1,
        span,
        opts,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let coeffs: Vec<f64> = proj.iter().zip(&norms).map(|(a, n)| a / n).collect();
    let scale_sq = norm(f, spec, opts)?.powi(2);
    let (res, _) = radial_integral(
        |r, out| match basis.eval_all(2.0 * r) {
            Ok(v) => {
                let s: f64 = v.iter().zip(&coeffs).map(|(l, c)| l * c).sum();
                let d = f.eval(r) - s;
                out[0] = d * d * weight(spec, r);
            }
            Err(_) => out[0] = f64::NAN,
        },
        1,
        span,
        &difference_options(opts, scale_sq),
    )?;
    Ok(Expansion {
        p: spec.p,
        q: spec.q,
        jmax,
        coeffs,
        residual: res[0].max(0.0).sqrt(),
    })
}

/// `F f = Σ_j ε_j c_j Λ_j(2·)`.
pub fn apply_inversion(
    f: &RadialFunction,
    spec: &InversionSpec,
    jmax: usize,
    opts: &RadialOptions,
) -> Result<RadialFunction> {
    let exp = match f.expansion() {
        Some(e) if e.p == spec.cone.p && e.q == spec.cone.q && e.jmax == jmax => e.clone(),
        _ => expand(f, &spec.cone, jmax, opts)?,
    };
    let size = norm(f, &spec.cone, opts)?;
    if exp.residual > opts.residual_tol * size.max(f64::MIN_POSITIVE) {
        return Err(Error::Consistency(format!(
            "relative expansion residual {:.3e} exceeds {:.1e} (‖f‖ = {size:.6e}); increase J",
            exp.residual / size,
            opts.residual_tol
        )));
    }
    let coeffs = exp
        .coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| spec.sign(j) as f64 * c)
        .collect();
    RadialFunction::from_expansion(Expansion { coeffs, ..exp })
}

/// `K̃_{(q−2)/2}(2r)`, the radial profile of the minimal `K`-type.
pub fn minimal_ktype(spec: &ConeSpec, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::param(format!("r must be positive, got {r}")));
    }
    ktilde(0.5 * (spec.q as f64 - 2.0), 2.0 * r)
}

/// `u_j^{m,n}(x) = x^{−2n+3} e^{−x} M_j^{2m−3,2n−3}(x)`.
pub fn u_eval(m: usize, n: usize, j: usize, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::param(format!("x must be positive, got {x}")));
    }
    if m < 2 || n < 1 {
        return Err(Error::param(format!("u_j^{{m,n}} needs m ≥ 2 and n ≥ 1, got ({m},{n})")));
    }
    let ell = 2 * n as i64 - 3;
    let poly = mano_exact(ManoParams::new(2 * m as i64 - 3, ell, j)?)?;
    Ok(x.powi(-(ell as i32)) * (-x).exp() * CompiledPoly::new(&poly)?.eval(x))
}
