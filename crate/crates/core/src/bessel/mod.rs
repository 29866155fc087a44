//! Renormalized Bessel functions
//!
//! ```text
//! J̃_λ(t) = (t/2)^{−λ} J_λ(t),  Ĩ_α(z) = (z/2)^{−α} I_α(z),  K̃_α(z) = (z/2)^{−α} K_α(z)
//! ```
//!
//! `J̃` and `Ĩ` are entire in their argument. Evaluation switches from the
//! small-argument method to the Hankel expansion at `|z| = 2|order| + 20`.

mod k;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::gamma::recip_gamma;
use crate::numeric::DoubleWord;

pub use k::{
    ktilde, ktilde_asymptotic, ktilde_general, ktilde_half_closed, ktilde_integral,
    ktilde_scaled_c, HalfIntegerK,
};

/// A real Bessel order with exact half-integer detection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder {
    value: f64,
    half: Option<i64>,
}

impl BesselOrder {
    pub fn new(value: f64) -> Self {
        let twice = 2.0 * value;
        let half = if twice.fract() == 0.0 && twice.abs() < 1e15 && (twice as i64) % 2 != 0 {
            Some((twice as i64 - 1).div_euclid(2))
        } else {
            None
        };
        BesselOrder { value, half }
    }

    /// Exact construction; half-integers are recognised from the rational.
    pub fn from_rational(r: &BigRational) -> Self {
        let two = BigRational::from_integer(2.into());
        let twice = r * &two;
        let half = if twice.is_integer() {
            let n = twice.to_integer();
            (&n % 2 != Zero::zero())
                .then(|| n.to_i64())
                .flatten()
                .map(|n| (n - 1).div_euclid(2))
        } else {
            None
        };
        BesselOrder {
            value: r.to_f64().unwrap_or(f64::NAN),
            half,
        }
    }

    /// The order `ℓ + 1/2`.
    pub fn half_integer(ell: i64) -> Self {
        BesselOrder {
            value: ell as f64 + 0.5,
            half: Some(ell),
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// `Some(ℓ)` when the order equals `ℓ + 1/2`.
    pub fn half_integer_part(&self) -> Option<i64> {
        self.half
    }
}

impl From<f64> for BesselOrder {
    fn from(v: f64) -> Self {
        BesselOrder::new(v)
    }
}

impl From<i32> for BesselOrder {
    fn from(v: i32) -> Self {
        BesselOrder::new(v as f64)
    }
}

impl From<&BigRational> for BesselOrder {
    fn from(r: &BigRational) -> Self {
        BesselOrder::from_rational(r)
    }
}

/// Argument at which evaluation switches to the Hankel expansion.
pub fn crossover(order: f64) -> f64 {
    2.0 * order.abs() + 20.0
}

/// `J̃_λ(t)` for `t ≥ 0`, `λ > −1`.
pub fn jtilde(order: impl Into<BesselOrder>, t: f64) -> Result<f64> {
    let lambda = order.into().value();
    if !(lambda > -1.0) {
        return Err(Error::param(format!("J̃ order must exceed −1, got {lambda}")));
    }
    if !(t >= 0.0) {
        return Err(Error::param(format!("J̃ needs t ≥ 0, got {t}")));
    }
    if t < crossover(lambda) {
        Ok(jtilde_series(lambda, t))
    } else {
        Ok(jtilde_asymptotic(lambda, t))
    }
}

/// Power series `Σ_k (−1)^k (t/2)^{2k} / (k! Γ(λ+k+1))`, accumulated in
/// double-word arithmetic.
pub fn jtilde_series(lambda: f64, t: f64) -> f64 {
    let half = DoubleWord::from_f64(t * 0.5);
    let q = -(half * half);
    let mut term = DoubleWord::ONE;
    let mut sum = DoubleWord::ONE;
    let shift = DoubleWord::from_f64(lambda) + 1.0;
    for k in 0..2000u32 {
        let kf = k as f64 + 1.0;
        term = term * q / ((shift + k as f64) * kf);
        sum += term;
        if term.abs().hi() <= 1e-34 * sum.abs().hi().max(f64::MIN_POSITIVE) && k as f64 > t {
            break;
        }
    }
    sum.to_f64() * recip_gamma(lambda + 1.0)
}

/// Hankel expansion of `J_λ(t)`, renormalized.
pub fn jtilde_asymptotic(lambda: f64, t: f64) -> f64 {
    let (p, q) = hankel_pq(lambda, t);
    // cos(t − φ) and sin(t − φ), φ = (λ/2 + 1/4)π
    let phi = (lambda * 0.5 + 0.25) * std::f64::consts::PI;
    let (st, ct) = t.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let c = ct * cp + st * sp;
    let s = st * cp - ct * sp;
    let j = (2.0 / (std::f64::consts::PI * t)).sqrt() * (p * c - q * s);
    j * (t * 0.5).powf(-lambda)
}

/// `P` and `Q` of the Hankel expansion, truncated at the smallest term.
fn hankel_pq(nu: f64, t: f64) -> (f64, f64) {
    let mu4 = 4.0 * nu * nu;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..200 {
        let term = a / t.powi(k);
        if term.abs() > prev && k > 2 {
            break;
        }
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        prev = term.abs();
        if prev < 1e-18 * p.abs().max(1e-300) {
            break;
        }
        let kk = (k + 1) as f64;
        a *= (mu4 - (2.0 * kk - 1.0).powi(2)) / (8.0 * kk);
    }
    (p, q)
}

/// `Ĩ_α(z)` for real `z`; even in `z`.
pub fn itilde(order: impl Into<BesselOrder>, z: f64) -> Result<f64> {
    let alpha = order.into().value();
    if !(alpha > -1.0) {
        return Err(Error::param(format!("Ĩ order must exceed −1, got {alpha}")));
    }
    let v = itilde_series(alpha, z);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow("itilde"))
    }
}

fn itilde_series(alpha: f64, z: f64) -> f64 {
    let q = (z * 0.5).powi(2);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..100_000u32 {
        let kf = k as f64 + 1.0;
        term *= q / (kf * (alpha + kf));
        sum += term;
        if term <= 1e-17 * sum && kf > z.abs() * 0.5 {
            break;
        }
        if !sum.is_finite() {
            break;
        }
    }
    sum * recip_gamma(alpha + 1.0)
}

/// `Ĩ_α(z)` at complex `z` by its power series (any real `α` off the poles
/// of `Γ(α+1)`).
pub fn itilde_c(alpha: f64, z: Complex64) -> Complex64 {
    let q = z * z * 0.25;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let bound = z.norm() * 0.5;
    for k in 0..100_000u32 {
        let kf = k as f64 + 1.0;
        term = term * q / (kf * (alpha + kf));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) && kf > bound {
            break;
        }
    }
    sum * recip_gamma(alpha + 1.0)
}
