use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{b_core, KernelCase, KernelMethod, KernelValue};
use crate::error::{Error, Result};
use crate::numeric::quad::{integrate, QuadOptions, QuadResult};

/// Contour `γ − i∞ → γ − ih → c − ih → c + ih → γ + ih → γ + i∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    /// Real part of the vertical tails.
    pub gamma: f64,
    /// Real point `c ∈ (−m−1, −m)` where the contour meets ℝ.
    pub crossing: f64,
    /// Height `h` of the horizontal detour.
    pub height: f64,
    pub rel_tol: f64,
    /// Initial truncation of the tails; doubled until the Stirling bound on
    /// the discarded part is small enough.
    pub tail_start: f64,
    pub max_tail: f64,
}

impl ContourSpec {
    pub fn for_m(m: usize) -> Self {
        ContourSpec {
            gamma: 3.0,
            crossing: -(m as f64) - 0.5,
            height: 1.0,
            rel_tol: 1e-11,
            tail_start: 32.0,
            max_tail: 1e7,
        }
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_crossing(mut self, crossing: f64) -> Self {
        self.crossing = crossing;
        self
    }

    /// `|b(γ+is)| ~ s^{−α}` with `α = 2γ + m + 1`.
    pub fn decay_exponent(&self, m: usize) -> f64 {
        2.0 * self.gamma + m as f64 + 1.0
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        let m = m as f64;
        if !(self.gamma > -1.0) {
            return Err(Error::param(format!("γ = {} must exceed −1", self.gamma)));
        }
        if !(self.crossing > -m - 1.0 && self.crossing < -m) {
            return Err(Error::param(format!(
                "crossing {} must lie in ({}, {})",
                self.crossing,
                -m - 1.0,
                -m
            )));
        }
        if !(self.height > 0.0 && self.rel_tol > 0.0 && self.tail_start > self.height) {
            return Err(Error::param("contour height, tolerance and tail start must be positive"));
        }
        if self.decay_exponent(m as usize) <= 2.0 {
            return Err(Error::param(format!(
                "γ = {} gives tails decaying like s^{{−{}}}; numerical quadrature needs γ > {}",
                self.gamma,
                self.decay_exponent(m as usize),
                (1.0 - m) / 2.0
            )));
        }
        Ok(())
    }
}

struct Integrand {
    case: KernelCase,
    shift: f64,
    ln_s: f64,
    negative: bool,
}

impl Integrand {
    /// The Mellin–Barnes integrand at `λ` with `Im λ > 0`.
    fn at(&self, lambda: Complex64) -> Complex64 {
        let b = b_core(lambda, self.shift, self.ln_s);
        match self.case {
            KernelCase::A1 | KernelCase::B1 => b,
            KernelCase::B2 => {
                let i = Complex64::new(0.0, 1.0);
                let e1 = (i * PI * lambda).exp();
                let e2 = e1 * e1;
                let one = Complex64::new(1.0, 0.0);
                if self.negative {
                    // csc πλ
                    b * (-2.0 * i * e1 / (one - e2))
                } else {
                    // cot πλ
                    b * (-i * (one + e2) / (one - e2))
                }
            }
        }
    }
}

/// `Φ̂` by quadrature along the contour. By conjugate symmetry the integral
/// is `2i Im U` where `U` is the integral over the upper half, so
/// `Φ̂ = Im U / π`.
pub fn phi_contour(case: KernelCase, m: usize, t: f64, spec: &ContourSpec) -> Result<KernelValue> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::param(format!("Φ is evaluated at t ≠ 0, got {t}")));
    }
    spec.validate(m)?;
    if t < 0.0 && case != KernelCase::B2 {
        return Ok(KernelValue {
            t,
            value: 0.0,
            est_error: 0.0,
            method: KernelMethod::Contour,
            work: 0,
        });
    }
    let f = Integrand {
        case,
        shift: m as f64 + 1.0,
        ln_s: (2.0 * t.abs()).ln(),
        negative: t < 0.0,
    };
    let coarse = upper_integral(&f, m, spec, 1e-7, 0.0)?;
    let target = spec.rel_tol * coarse.value.abs();
    let fine = upper_integral(&f, m, spec, spec.rel_tol, target)?;
    Ok(KernelValue {
        t,
        value: fine.value / PI,
        est_error: fine.error / PI,
        method: KernelMethod::Contour,
        work: coarse.evaluations + fine.evaluations,
    })
}

struct Partial {
    value: f64,
    error: f64,
    evaluations: usize,
}

fn upper_integral(f: &Integrand, m: usize, spec: &ContourSpec, rel_tol: f64, abs_tol: f64) -> Result<Partial> {
    let (c, h, g) = (spec.crossing, spec.height, spec.gamma);
    let i = Complex64::new(0.0, 1.0);
    let opts = QuadOptions {
        max_subdivisions: 4000,
        ..QuadOptions::with_tol(abs_tol.max(1e-300), rel_tol)
    };
    let mut acc = Partial {
        value: 0.0,
        error: 0.0,
        evaluations: 0,
    };
    let mut ok = true;
    let mut add = |acc: &mut Partial, r: QuadResult| {
        acc.value += r.values[0];
        acc.error += r.error;
        acc.evaluations += r.evaluations;
        ok &= r.converged;
    };
    // c → c + ih, dλ = i ds
    add(&mut acc, integrate(|s| (f.at(Complex64::new(c, s)) * i).im, 0.0, h, &opts));
    // c + ih → γ + ih
    add(&mut acc, integrate(|x| f.at(Complex64::new(x, h)).im, c, g, &opts));
    // γ + ih → γ + iT
    let mut lo = h;
    let mut hi = spec.tail_start;
    let alpha = spec.decay_exponent(m);
    loop {
        add(&mut acc, integrate(|s| (f.at(Complex64::new(g, s)) * i).im, lo, hi, &opts));
        let bound = f.at(Complex64::new(g, hi)).norm() * hi / (alpha - 1.0);
        let target = abs_tol.max(rel_tol * acc.value.abs());
        if bound <= 0.1 * target {
            acc.error += bound;
            break;
        }
        if hi >= spec.max_tail {
            return Err(Error::Convergence {
                what: "contour tail",
                detail: format!("tail bound {bound:.3e} at T = {hi:.3e}"),
            });
        }
        lo = hi;
        hi *= 2.0;
    }
    if !ok {
        return Err(Error::Convergence {
            what: "contour quadrature",
            detail: format!("estimated error {:.3e} on value {:.6e}", acc.error, acc.value),
        });
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::phi_residue;

    #[test]
    fn contour_matches_residues() {
        for &(case, m) in &[(KernelCase::A1, 0), (KernelCase::B1, 1), (KernelCase::B2, 0), (KernelCase::B2, 2)] {
            for &t in &[0.1, 0.5, 1.0, 2.0, -0.5] {
                let a = phi_residue(case, m, t).unwrap().value;
                let b = phi_contour(case, m, t, &ContourSpec::for_m(m)).unwrap().value;
                let scale = a.abs().max(1e-300);
                assert!((a - b).abs() <= 1e-8 * scale, "{case} m={m} t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn contour_is_independent_of_its_shape() {
        let m = 1;
        let base = phi_contour(KernelCase::B2, m, 0.7, &ContourSpec::for_m(m)).unwrap().value;
        for spec in [
            ContourSpec::for_m(m).with_gamma(1.5),
            ContourSpec::for_m(m).with_gamma(6.0),
            ContourSpec::for_m(m).with_crossing(-1.8),
            ContourSpec::for_m(m).with_crossing(-1.1),
        ] {
            let v = phi_contour(KernelCase::B2, m, 0.7, &spec).unwrap().value;
            assert!(((v - base) / base).abs() < 1e-9, "{spec:?}: {v} vs {base}");
        }
    }

    #[test]
    fn rejects_bad_contours() {
        let spec = ContourSpec::for_m(1);
        assert!(spec.with_crossing(-0.5).validate(1).is_err());
        assert!(spec.with_gamma(-1.5).validate(1).is_err());
        assert!(spec.with_gamma(-0.2).validate(0).is_err());
    }
}
