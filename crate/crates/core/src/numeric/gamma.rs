//! Gamma-type functions: real Γ and ln|Γ| (libm), complex ln Γ and digamma at
//! integers.

use super::DoubleWord;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Γ(x) for real x.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// ln|Γ(x)| together with the sign of Γ(x).
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    let (v, s) = libm::lgamma_r(x);
    (v, if s < 0 { -1.0 } else { 1.0 })
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// 1/Γ(x), zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x.fract() == 0.0 {
        return 0.0;
    }
    if x > 170.0 {
        let (l, s) = ln_gamma_signed(x);
        return s * (-l).exp();
    }
    1.0 / gamma(x)
}

// B_{2k} / (2k (2k-1)) for k = 1..=8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// A logarithm of Γ(z) for complex z off the poles.
///
/// The imaginary part is only determined modulo 2π; callers exponentiate.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let ln_pi = Complex64::new(PI.ln(), 0.0);
        return ln_pi - ln_sin_pi(z) - ln_gamma_complex(Complex64::new(1.0, 0.0) - z);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift
}

/// Γ(z) for complex z.
pub fn gamma_complex(z: Complex64) -> Complex64 {
    ln_gamma_complex(z).exp()
}

/// A logarithm of sin(πz), stable for large |Im z|.
pub fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 8.0 {
        return (z * PI).sin().ln();
    }
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin(πz) = -e^{-iπz} (1 - e^{2iπz}) / (2i), with |e^{2iπz}| < e^{-16π}.
    let i = Complex64::new(0.0, 1.0);
    let e2 = (i * 2.0 * PI * z).exp();
    -i * PI * z + (Complex64::new(1.0, 0.0) - e2).ln() - Complex64::new(2f64.ln(), PI / 2.0)
        + Complex64::new(0.0, PI)
}

/// ψ(n) for a positive integer n, in double-word precision.
pub fn digamma_int(n: u64) -> DoubleWord {
    assert!(n >= 1, "digamma_int requires n >= 1");
    let mut h = DoubleWord::ZERO;
    for k in 1..n {
        h += DoubleWord::ONE / DoubleWord::from_f64(k as f64);
    }
    h - DoubleWord::EULER_GAMMA
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    // Reference values from a 40-digit evaluation.
    const CASES: [(f64, f64, f64, f64, f64); 5] = [
        (1.0, 1.0, -0.650_923_199_301_856_3, 0.498_015_668_118_356_04, -0.154_949_828_301_810_7),
        (-3.5, 2.0, -6.420_091_394_575_658, -0.001_561_837_432_876_754_5, 0.000_461_194_272_084_374),
        (0.5, -7.0, -10.076_635_754_359_604, 3.958_497_415_708_819e-5, -1.418_755_945_312_225e-5),
        (4.5, 30.0, -32.588_554_556_873_56, -6.218_739_285_424_251e-15, 3.278_971_538_950_216e-15),
        (-2.5, 100.0, -169.976_642_093_823_1, -1.097_205_219_853_769_8e-74, -1.043_013_244_763_989_8e-74),
    ];

    #[test]
    fn complex_log_gamma_matches_reference() {
        for (re, im, lnre, gre, gim) in CASES {
            let z = Complex64::new(re, im);
            let l = ln_gamma_complex(z);
            assert!(close(l.re, lnre, 1e-13), "{z}: {} vs {lnre}", l.re);
            let g = gamma_complex(z);
            assert!(close(g.re, gre, 1e-11), "{z}: {} vs {gre}", g.re);
            assert!(close(g.im, gim, 1e-11), "{z}: {} vs {gim}", g.im);
        }
    }

    #[test]
    fn complex_gamma_agrees_with_real_axis() {
        for x in [0.3, 1.0, 2.5, 7.25, -0.5, -2.75] {
            let g = gamma_complex(Complex64::new(x, 0.0));
            assert!(close(g.re, gamma(x), 1e-13), "x={x}");
            assert!(g.im.abs() < 1e-13 * g.re.abs());
        }
    }

    #[test]
    fn modulus_on_imaginary_axis() {
        // |Γ(iy)|^2 = π / (y sinh πy)
        for y in [0.5, 3.0, 40.0] {
            let g = ln_gamma_complex(Complex64::new(0.0, y));
            let expect = 0.5 * (PI / (y * (PI * y).sinh())).ln();
            assert!((g.re - expect).abs() < 1e-12 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn digamma_at_integers() {
        assert!((digamma_int(1).to_f64() + 0.577_215_664_901_532_9).abs() < 1e-16);
        // ψ(5) = 25/12 - γ
        let expect = 25.0 / 12.0 - 0.577_215_664_901_532_9;
        assert!((digamma_int(5).to_f64() - expect).abs() < 1e-15);
    }

    #[test]
    fn recip_gamma_poles() {
        assert_eq!(recip_gamma(0.0), 0.0);
        assert_eq!(recip_gamma(-3.0), 0.0);
        assert!(close(recip_gamma(4.0), 1.0 / 6.0, 1e-15));
    }
}
