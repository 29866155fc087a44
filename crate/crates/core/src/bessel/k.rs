use num_complex::Complex64;
use num_rational::BigRational;
use num_bigint::BigInt;

use super::{crossover, BesselOrder};
use crate::algebra::{factorial, ExactScalar, Polynomial};
use crate::error::{Error, Result};

/// `K̃_{ℓ+1/2}(z) = e^{−z} · P_ℓ(z)`, where `P_ℓ` is a Laurent polynomial in
/// `z` whose coefficients all carry one factor of `√π`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfIntegerK {
    pub ell: i64,
    pub laurent: Polynomial,
}

impl HalfIntegerK {
    pub fn order(&self) -> f64 {
        self.ell as f64 + 0.5
    }

    /// `e^{z} K̃_{ℓ+1/2}(z)`.
    pub fn eval_scaled(&self, z: f64) -> f64 {
        self.laurent.eval1(z)
    }

    pub fn eval(&self, z: f64) -> f64 {
        (-z).exp() * self.eval_scaled(z)
    }
}

/// Exact closed form of `K̃_{ℓ+1/2}` for `ℓ ≥ −1`:
/// `√π Σ_{k=0}^{ℓ} 2^{ℓ−k} (ℓ+k)! / (k! (ℓ−k)!) · z^{−(ℓ+1+k)}`, and
/// `(√π/2)` for `ℓ = −1`.
pub fn ktilde_half_closed(ell: i64) -> Result<HalfIntegerK> {
    if ell < -1 {
        return Err(Error::param(format!("closed form needs ℓ ≥ −1, got {ell}")));
    }
    let laurent = if ell == -1 {
        Polynomial::univariate([(0, ExactScalar::graded(BigRational::new(1.into(), 2.into()), 1))])
    } else {
        let l = ell as u64;
        Polynomial::univariate((0..=l).map(|k| {
            let c = BigInt::from(2).pow((l - k) as u32) * factorial(l + k)
                / (factorial(k) * factorial(l - k));
            (
                -((l + 1 + k) as i32),
                ExactScalar::graded(BigRational::from_integer(c), 1),
            )
        }))
    };
    Ok(HalfIntegerK { ell, laurent })
}

/// `K̃_α(z)` for `z > 0`. Half-integer orders use the exact closed form.
pub fn ktilde(order: impl Into<BesselOrder>, z: f64) -> Result<f64> {
    let order = order.into();
    if !(z > 0.0) {
        return Err(Error::param(format!("K̃ needs z > 0, got {z}")));
    }
    if let Some(ell) = order.half_integer_part() {
        if ell >= -1 {
            return Ok(ktilde_half_closed(ell)?.eval(z));
        }
        // K̃_{−α}(z) = (z/2)^{2α} K̃_α(z)
        let mirror = -ell - 1;
        let alpha = mirror as f64 + 0.5;
        return Ok((z * 0.5).powf(2.0 * alpha) * ktilde_half_closed(mirror)?.eval(z));
    }
    ktilde_general(order.value(), z)
}

/// `K̃_α(z)` without the half-integer shortcut: the integral representation
/// below [`crossover`], the Hankel expansion above.
pub fn ktilde_general(alpha: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::param(format!("K̃ needs z > 0, got {z}")));
    }
    if z < crossover(alpha) {
        ktilde_integral(alpha, z)
    } else {
        Ok(ktilde_asymptotic(alpha, z))
    }
}

/// `K̃_α(z)` from `K_α(z) = ∫_0^∞ e^{−z cosh s} cosh(αs) ds`.
pub fn ktilde_integral(alpha: f64, z: f64) -> Result<f64> {
    let w = Complex64::new(z, 0.0);
    let scaled = k_scaled_integral(alpha, w)?.re;
    Ok(scaled * (-z).exp() * (z * 0.5).powf(-alpha))
}

/// Hankel expansion `K_α(z) ~ √(π/2z) e^{−z} Σ a_k(α) / z^k`, renormalized.
pub fn ktilde_asymptotic(alpha: f64, z: f64) -> f64 {
    let mu4 = 4.0 * alpha * alpha;
    let mut a = 1.0;
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for k in 0..200 {
        let term = a / z.powi(k);
        if term.abs() > prev && k > 2 {
            break;
        }
        sum += term;
        prev = term.abs();
        if prev < 1e-18 * sum.abs() {
            break;
        }
        let kk = (k + 1) as f64;
        a *= (mu4 - (2.0 * kk - 1.0).powi(2)) / (8.0 * kk);
    }
    let k = (std::f64::consts::PI / (2.0 * z)).sqrt() * (-z).exp() * sum;
    k * (z * 0.5).powf(-alpha)
}

/// `e^{w} K̃_α(w)` for complex `w` with `Re w > 0`.
pub fn ktilde_scaled_c(alpha: f64, w: Complex64) -> Result<Complex64> {
    let scaled_k = k_scaled_integral(alpha, w)?;
    Ok(scaled_k * (w * 0.5).powf(-alpha))
}

/// `e^{w} K_α(w) = ∫_0^∞ e^{−2w sinh²(s/2)} cosh(αs) ds` by the trapezoidal
/// rule, which converges exponentially for this analytic integrand.
fn k_scaled_integral(alpha: f64, w: Complex64) -> Result<Complex64> {
    if !(w.re > 0.0) {
        return Err(Error::param(format!("K̃ needs Re w > 0, got {w}")));
    }
    let strip = 0.9 * (std::f64::consts::FRAC_PI_2 - w.arg().abs());
    let strip = strip.min((20.0 / w.norm().max(1.0)).sqrt());
    let h = 2.0 * std::f64::consts::PI * strip / 45.0;
    let peak = (alpha.abs() / w.re).asinh();
    let f = |s: f64| {
        let sh = (0.5 * s).sinh();
        (w * (-2.0 * sh * sh)).exp() * (alpha * s).cosh()
    };
    let mut sum = f(0.0) * 0.5;
    for k in 1..200_000u32 {
        let s = k as f64 * h;
        let term = f(s);
        sum += term;
        if s > peak && term.norm() <= 1e-18 * sum.norm() {
            return Ok(sum * h);
        }
        if !sum.re.is_finite() {
            return Err(Error::Overflow("K̃ integral"));
        }
    }
    Err(Error::Convergence {
        what: "K̃ integral",
        detail: format!("order {alpha}, argument {w}"),
    })
}
