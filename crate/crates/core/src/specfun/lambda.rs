use num_complex::Complex64;

use super::cauchy::{genfun_coeffs, genfun_coeffs_fixed, CauchyOptions};
use super::mano::{mano_exact_all, mano_prefactor};
use crate::algebra::CompiledPoly;
use crate::bessel::{itilde_c, ktilde_scaled_c};
use crate::error::{Error, Result};

/// Parameters of `Λ_j^{μ,ν}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaParams {
    pub mu: f64,
    pub nu: f64,
    pub j: usize,
}

impl LambdaParams {
    pub fn new(mu: f64, nu: f64, j: usize) -> Result<Self> {
        if !(mu > -2.0 && nu > -2.0) {
            return Err(Error::param(format!("Λ needs μ, ν > −2, got ({mu}, {nu})")));
        }
        Ok(LambdaParams { mu, nu, j })
    }

    /// The hypotheses under which `{Λ_j}` is an orthogonal basis of
    /// `L²(ℝ₊, x^{μ+ν+1} dx)`.
    pub fn orthogonality_applies(&self) -> bool {
        let int = |v: f64| v.fract() == 0.0;
        int(self.mu)
            && int(self.nu)
            && self.mu >= self.nu
            && self.nu >= -1.0
            && (self.mu - self.nu) % 2.0 == 0.0
            && !(self.mu == -1.0 && self.nu == -1.0)
    }

    /// `Some((μ, ℓ))` when `ν = 2ℓ+1` and `μ` is an odd positive integer.
    fn elementary(&self) -> Option<(i64, i64)> {
        let odd = |v: f64| v.fract() == 0.0 && (v as i64).rem_euclid(2) == 1;
        if odd(self.mu) && self.mu >= 1.0 && odd(self.nu) {
            Some((self.mu as i64, (self.nu as i64 - 1) / 2))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaRoute {
    /// Closed form through the Mano polynomials (odd `ν`).
    Elementary,
    Cauchy,
}

/// `(1−t)^{−(μ+ν+2)/2} Ĩ_{μ/2}(tx/(1−t)) K̃_{ν/2}(x/(1−t))` at complex `t`.
pub fn lambda_genfun(mu: f64, nu: f64, x: f64, t: Complex64) -> Result<Complex64> {
    let s = (Complex64::new(1.0, 0.0) - t).inv();
    let w = s * x;
    let pre = s.powf(0.5 * (mu + nu + 2.0));
    let i = itilde_c(0.5 * mu, t * w);
    let k = ktilde_scaled_c(0.5 * nu, w)? * (-w).exp();
    Ok(pre * i * k)
}

/// `Λ_0, …, Λ_J` at `x` by Cauchy extraction.
pub fn lambda_cauchy_all(mu: f64, nu: f64, jmax: usize, x: f64, opts: &CauchyOptions) -> Result<Vec<f64>> {
    LambdaParams::new(mu, nu, jmax)?;
    if !(x > 0.0) {
        return Err(Error::param(format!("Λ needs x > 0, got {x}")));
    }
    Ok(genfun_coeffs(|t| lambda_genfun(mu, nu, x, t), jmax, opts)?
        .into_iter()
        .map(|c| c.value)
        .collect())
}

/// `Λ_0, …, Λ_J` prepared for repeated evaluation at many points.
#[derive(Debug, Clone)]
pub struct LambdaBasis {
    mu: f64,
    nu: f64,
    jmax: usize,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Elementary {
        ell: i64,
        polys: Vec<CompiledPoly>,
        consts: Vec<f64>,
    },
    Cauchy { opts: CauchyOptions, nodes: usize },
}

/// Sample points used to fix the node count of the Cauchy route.
const CALIBRATION_X: [f64; 5] = [0.05, 0.5, 2.0, 8.0, 30.0];

impl LambdaBasis {
    /// Uses the elementary route whenever `ν` is odd and `μ` an odd positive
    /// integer, the Cauchy route otherwise.
    pub fn new(mu: f64, nu: f64, jmax: usize) -> Result<Self> {
        let params = LambdaParams::new(mu, nu, jmax)?;
        match params.elementary() {
            Some((m, ell)) => Self::elementary(m, ell, jmax),
            None => Self::cauchy(mu, nu, jmax, CauchyOptions::default()),
        }
    }

    pub fn elementary(mu: i64, ell: i64, jmax: usize) -> Result<Self> {
        let polys = mano_exact_all(mu, ell, jmax)?;
        let compiled = polys.iter().map(CompiledPoly::new).collect::<Result<Vec<_>>>()?;
        let consts = (0..=jmax)
            .map(|j| Ok(mano_prefactor(mu, j)?.inverse()?.to_f64()))
            .collect::<Result<Vec<_>>>()?;
        Ok(LambdaBasis {
            mu: mu as f64,
            nu: (2 * ell + 1) as f64,
            jmax,
            kind: Kind::Elementary {
                ell,
                polys: compiled,
                consts,
            },
        })
    }

    /// Cauchy route with the node count fixed by the adaptive rule at a few
    /// calibration points, so that evaluation is smooth in `x`.
    pub fn cauchy(mu: f64, nu: f64, jmax: usize, opts: CauchyOptions) -> Result<Self> {
        LambdaParams::new(mu, nu, jmax)?;
        let mut nodes = opts.nodes;
        for x in CALIBRATION_X {
            let res = genfun_coeffs(|t| lambda_genfun(mu, nu, x, t), jmax, &opts)?;
            nodes = nodes.max(res[0].nodes);
        }
        Ok(LambdaBasis {
            mu,
            nu,
            jmax,
            kind: Kind::Cauchy { opts, nodes },
        })
    }

    pub fn route(&self) -> LambdaRoute {
        match self.kind {
            Kind::Elementary { .. } => LambdaRoute::Elementary,
            Kind::Cauchy { .. } => LambdaRoute::Cauchy,
        }
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn params(&self) -> (f64, f64) {
        (self.mu, self.nu)
    }

    pub fn eval_all(&self, x: f64) -> Result<Vec<f64>> {
        if !(x > 0.0) {
            return Err(Error::param(format!("Λ needs x > 0, got {x}")));
        }
        match &self.kind {
            Kind::Elementary { ell, polys, consts } => {
                // x^{−2ℓ−1} e^{−x} M_j(2x) / prefactor
                let outer = x.powi(-(2 * *ell as i32 + 1)) * (-x).exp();
                Ok(polys
                    .iter()
                    .zip(consts)
                    .map(|(p, c)| c * outer * p.eval(2.0 * x))
                    .collect())
            }
            Kind::Cauchy { opts, nodes } => genfun_coeffs_fixed(
                |t| lambda_genfun(self.mu, self.nu, x, t),
                self.jmax,
                opts.rho,
                *nodes,
                opts.precision,
            ),
        }
    }
}

/// `Λ_j^{μ,2ℓ+1}(x) = 2^μ Γ(j+(μ+1)/2) / Γ(j+μ+1) · x^{−2ℓ−1} e^{−x} M_j^{μ,ℓ}(2x)`
/// for `j = 0..=J`.
pub fn lambda_elementary(mu: i64, ell: i64, jmax: usize, x: f64) -> Result<Vec<f64>> {
    LambdaBasis::elementary(mu, ell, jmax)?.eval_all(x)
}

/// `Λ_0, …, Λ_J` at `x`, by the elementary route when available.
pub fn lambda_all(mu: f64, nu: f64, jmax: usize, x: f64) -> Result<(Vec<f64>, LambdaRoute)> {
    let basis = LambdaBasis::new(mu, nu, jmax)?;
    Ok((basis.eval_all(x)?, basis.route()))
}

pub fn lambda_eval(params: LambdaParams, x: f64) -> Result<f64> {
    let (v, _) = lambda_all(params.mu, params.nu, params.j, x)?;
    Ok(v[params.j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::ktilde;
    use crate::numeric::gamma::recip_gamma;

    #[test]
    fn zeroth_function_is_k_bessel() {
        for &(mu, nu) in &[(2.0, 0.0), (3.0, 1.0), (1.0, -1.0), (4.0, 2.0)] {
            for &x in &[0.4, 1.0, 3.0] {
                let l0 = lambda_eval(LambdaParams::new(mu, nu, 0).unwrap(), x).unwrap();
                let expected = ktilde(0.5 * nu, x).unwrap() * recip_gamma(0.5 * mu + 1.0);
                assert!(((l0 - expected) / expected).abs() < 1e-10, "({mu},{nu}) x={x}");
            }
        }
    }

    #[test]
    fn elementary_and_cauchy_routes_agree() {
        let x = 0.7;
        let e = lambda_elementary(3, 1, 2, x).unwrap();
        let c = lambda_cauchy_all(3.0, 3.0, 2, x, &CauchyOptions::default()).unwrap();
        assert!(((e[2] - c[2]) / e[2]).abs() < 1e-9);
    }

    #[test]
    fn three_one_case_is_a_laguerre_function() {
        // Λ_j^{1,−1}(x) = e^{−x} L_j^1(2x) / (j+1)
        let x = 1.3;
        let v = lambda_elementary(1, -1, 4, x).unwrap();
        for (j, val) in v.iter().enumerate() {
            let l = crate::specfun::laguerre_int(j, 1).eval1(2.0 * x);
            let expected = (-x as f64).exp() * l / (j as f64 + 1.0);
            assert!((val - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn orthogonality_hypotheses() {
        assert!(LambdaParams::new(2.0, 0.0, 0).unwrap().orthogonality_applies());
        assert!(!LambdaParams::new(-1.0, -1.0, 0).unwrap().orthogonality_applies());
        assert!(!LambdaParams::new(2.0, 1.0, 0).unwrap().orthogonality_applies());
        assert!(!LambdaParams::new(0.0, 2.0, 0).unwrap().orthogonality_applies());
    }
}
