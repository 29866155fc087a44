//! Verification suites. Every check reports a short claim label, the measured
//! error and the tolerance; exact checks count mismatching terms against a
//! tolerance of zero.

use clap::{Args, ValueEnum};
use minrep::algebra::{CompiledPoly, ExactScalar, Polynomial};
use minrep::bessel::jtilde;
use minrep::diffop::{apply_p, commutator_rr};
use minrep::kernel::{classify, kernel_case, phi_contour, phi_eval, ContourSpec, KernelCase, KernelMethod};
use minrep::numeric::Precision;
use minrep::radial::{apply_inversion, l2_distance, minimal_ktype, norm, InversionSpec, RadialFunction, RadialOptions};
use minrep::specfun::{gram_exact, lambda_genfun, lambda_gram, mano_cauchy, mano_exact_all, CauchyOptions};
use minrep::ConeSpec;
use num_complex::Complex64;
use serde::Serialize;

use crate::commands::lambda_basis;
use crate::output::{csv_writer, fmt_f64};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Eigen,
    Orth,
    Genfun,
    Commute,
    Kernel,
    Inversion,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Largest j in the eigen suite.
    #[arg(long, default_value_t = 10)]
    max_j: usize,
    /// Adds x to one Mano polynomial before the eigen suite runs.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    suite: &'static str,
    check: String,
    claim: &'static str,
    error: String,
    tolerance: String,
    status: &'static str,
}

struct Report {
    writer: csv::Writer<std::io::Stdout>,
    total: usize,
    failed: usize,
    first_failure: Option<String>,
}

impl Report {
    fn record(&mut self, suite: &'static str, check: String, claim: &'static str, error: f64, tol: f64) -> Result<(), CliError> {
        let pass = error.is_finite() && error <= tol;
        self.total += 1;
        if !pass {
            self.failed += 1;
            self.first_failure
                .get_or_insert_with(|| format!("{suite}: {check} ({claim}): error {} > {}", fmt_f64(error), fmt_f64(tol)));
        }
        self.writer.serialize(Check {
            suite,
            check,
            claim,
            error: fmt_f64(error),
            tolerance: fmt_f64(tol),
            status: if pass { "PASS" } else { "FAIL" },
        })?;
        self.writer.flush()?;
        Ok(())
    }

    /// A check that could not be computed counts as a failure.
    fn record_result(
        &mut self,
        suite: &'static str,
        check: String,
        claim: &'static str,
        error: Result<f64, minrep::Error>,
        tol: f64,
    ) -> Result<(), CliError> {
        match error {
            Ok(e) => self.record(suite, check, claim, e, tol),
            Err(e) => {
                eprintln!("{suite}: {check}: {e}");
                self.record(suite, check, claim, f64::INFINITY, tol)
            }
        }
    }
}

pub fn run(args: &VerifyArgs, precision: Precision) -> Result<(), CliError> {
    let mut report = Report {
        writer: csv_writer(),
        total: 0,
        failed: 0,
        first_failure: None,
    };
    let suites: &[Suite] = match args.suite {
        Suite::All => &[Suite::Eigen, Suite::Orth, Suite::Genfun, Suite::Commute, Suite::Kernel, Suite::Inversion],
        ref s => std::slice::from_ref(s),
    };
    for s in suites {
        match s {
            Suite::Eigen => eigen(&mut report, args.max_j, args.inject_fault)?,
            Suite::Orth => orth(&mut report)?,
            Suite::Genfun => genfun(&mut report, precision)?,
            Suite::Commute => commute(&mut report)?,
            Suite::Kernel => kernel(&mut report)?,
            Suite::Inversion => inversion(&mut report)?,
            Suite::All => unreachable!(),
        }
    }
    eprintln!("{} checks, {} failed", report.total, report.failed);
    match report.first_failure {
        Some(msg) => Err(CliError::failure(format!("first failing check: {msg}"))),
        None => Ok(()),
    }
}

fn count_terms(p: &Polynomial) -> f64 {
    p.len() as f64
}

fn eigen(report: &mut Report, max_j: usize, inject_fault: bool) -> Result<(), CliError> {
    const CLAIM: &str = "eigen-identity P M_j = j(j+mu+1) M_j";
    for mu in [1i64, 3, 5, 7] {
        for ell in [0i64, 1, 2] {
            let mut polys = mano_exact_all(mu, ell, max_j)?;
            if inject_fault && mu == 1 && ell == 0 {
                let j = max_j.min(3);
                polys[j] = polys[j].clone() + Polynomial::x();
            }
            for (j, m) in polys.iter().enumerate() {
                let lambda = ExactScalar::from_int((j as i64) * (j as i64 + mu + 1));
                let err = apply_p(mu, ell, m).map(|pm| count_terms(&(pm - m.scale(&lambda))));
                report.record_result("eigen", format!("mu={mu} ell={ell} j={j}"), CLAIM, err, 0.0)?;
            }
        }
    }
    Ok(())
}

fn orth(report: &mut Report) -> Result<(), CliError> {
    for mu in [3i64, 5, 7] {
        for ell in [0i64, 1] {
            let err = gram_exact(mu, ell, 6).map(|g| {
                let mut bad = 0usize;
                for (j, row) in g.iter().enumerate() {
                    for (k, v) in row.iter().enumerate() {
                        if (j == k) == v.is_zero() {
                            bad += 1;
                        }
                    }
                }
                bad as f64
            });
            report.record_result(
                "orth",
                format!("mu={mu} ell={ell} j<=6"),
                "exact Gram matrix of M_0..M_6 is diagonal",
                err,
                0.0,
            )?;
        }
    }
    for (mu, nu) in [(2.0, 0.0), (2.0, 2.0), (4.0, 0.0), (3.0, 1.0)] {
        let err = lambda_gram(mu, nu, 6, 1e-11).map(|(g, _)| {
            let mut worst: f64 = 0.0;
            for j in 0..g.len() {
                for k in 0..j {
                    worst = worst.max(g[j][k].abs() / (g[j][j] * g[k][k]).sqrt());
                }
            }
            worst
        });
        report.record_result(
            "orth",
            format!("mu={mu} nu={nu} j<=6"),
            "Lambda Gram off-diagonals vanish in x^(mu+nu+1)dx",
            err,
            1e-8,
        )?;
    }
    Ok(())
}

/// Twenty `(μ, ℓ, j, x)` with `x ≤ 3`, none at a zero of `M_j`.
pub fn genfun_samples() -> Vec<(i64, i64, usize, f64)> {
    (0..20)
        .map(|k| {
            let mu = [1i64, 3, 5, 7][k % 4];
            let ell = [0i64, 1, 2, -1, 0][k % 5];
            let j = k % 7 + 1;
            let x = 0.3 + 0.135 * k as f64;
            (mu, ell, j, x)
        })
        .collect()
}

fn genfun(report: &mut Report, precision: Precision) -> Result<(), CliError> {
    let opts = CauchyOptions {
        precision,
        ..CauchyOptions::default()
    };
    for (mu, ell, j, x) in genfun_samples() {
        let err = (|| {
            let exact = CompiledPoly::new(&mano_exact_all(mu, ell, j)?[j])?.eval(x);
            let cauchy = mano_cauchy(mu as f64, ell as f64, j, x, &opts)?[j].value;
            Ok(((cauchy - exact) / exact).abs())
        })();
        report.record_result(
            "genfun",
            format!("mu={mu} ell={ell} j={j} x={x:.3}"),
            "Cauchy extraction of the generating function equals the exact Mano polynomial",
            err,
            1e-9,
        )?;
    }
    let t = 0.3f64;
    for (mu, nu) in [(3.0, 1.0), (5.0, 3.0), (2.0, 0.0)] {
        let basis = lambda_basis(mu, nu, 40, precision)?;
        for x in [0.5, 1.0, 2.0] {
            let err = (|| {
                let v = basis.eval_all(x)?;
                let sum: f64 = v.iter().rev().fold(0.0, |acc, l| acc * t + l);
                let rhs = lambda_genfun(mu, nu, x, Complex64::new(t, 0.0))?.re;
                Ok(((sum - rhs) / rhs).abs())
            })();
            report.record_result(
                "genfun",
                format!("mu={mu} nu={nu} t={t} x={x}"),
                "Lambda partial sums match the Bessel-product generating function",
                err,
                1e-8,
            )?;
        }
    }
    Ok(())
}

/// All exponent vectors in `n` variables of total degree `≤ d`.
fn monomials(n: usize, d: i32) -> Vec<Vec<i32>> {
    fn rec(n: usize, d: i32, prefix: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn commute(report: &mut Report) -> Result<(), CliError> {
    for (p, q) in [(2usize, 2usize), (3, 1), (4, 2)] {
        let spec = ConeSpec::new(p, q)?;
        let n = spec.n();
        let base = Polynomial::zero_in(n);
        let monos: Vec<Polynomial> = monomials(n, 4)
            .into_iter()
            .map(|e| base.monomial_like(e, ExactScalar::one()))
            .collect();
        for i in 1..=n {
            for j in i + 1..=n {
                let err = monos.iter().try_fold(0.0, |acc, m| {
                    commutator_rr(i, j, m, &spec).map(|c| acc + if c.is_zero() { 0.0 } else { 1.0 })
                });
                report.record_result(
                    "commute",
                    format!("(p,q)=({p},{q}) i={i} j={j} deg<=4"),
                    "R_i R_j = R_j R_i modulo the quadric",
                    err,
                    0.0,
                )?;
            }
        }
    }
    Ok(())
}

/// Locally integrable exactly for `o(p+1,2)`, `o(2,q+1)` and `o(3,3)`.
fn integrable_by_signature(p: usize, q: usize) -> bool {
    p == 1 || q == 1 || (p, q) == (2, 2)
}

fn kernel(report: &mut Report) -> Result<(), CliError> {
    for n in (4..=12).step_by(2) {
        for p in 1..n {
            let q = n - p;
            let err = classify(p, q).map(|c| if c.locally_integrable == integrable_by_signature(p, q) { 0.0 } else { 1.0 });
            report.record_result(
                "kernel",
                format!("classify (p,q)=({p},{q})"),
                "locally integrable iff o(p+1,2), o(2,q+1) or o(3,3)",
                err,
                0.0,
            )?;
        }
    }
    for (p, q) in [(3usize, 1usize), (5, 1), (3, 3), (5, 3), (4, 2), (4, 4)] {
        let (case, _) = kernel_case(p, q)?;
        let ts: Vec<f64> = if case == KernelCase::B2 {
            vec![0.1, 0.5, 1.0, 2.0, -0.1, -0.5, -1.0, -2.0]
        } else {
            vec![0.1, 0.5, 1.0, 2.0]
        };
        for t in ts {
            let err = (|| {
                let a = phi_eval(p, q, t, KernelMethod::Residue)?.value;
                let b = phi_eval(p, q, t, KernelMethod::Contour)?.value;
                Ok(((a - b) / a).abs())
            })();
            report.record_result(
                "kernel",
                format!("(p,q)=({p},{q}) t={t}"),
                "residue sum equals contour integral",
                err,
                1e-6,
            )?;
        }
    }
    for p in [3usize, 5, 7] {
        let m = (p - 3) / 2;
        for t in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let err = (|| {
                let a = phi_eval(p, 1, t, KernelMethod::Residue)?.value;
                let b = jtilde(m as f64, 2.0 * (2.0 * t).sqrt())?;
                Ok(((a - b) / b).abs())
            })();
            report.record_result(
                "kernel",
                format!("(p,q)=({p},1) t={t}"),
                "rank-one case equals J~_m(2 sqrt(2t))",
                err,
                1e-10,
            )?;
        }
    }
    let slope = (|| {
        let (t1, t2) = (1e-4, 1e-3);
        let a = phi_eval(4, 4, t1, KernelMethod::Residue)?.value;
        let b = phi_eval(4, 4, t2, KernelMethod::Residue)?.value;
        Ok(((b / a).abs().ln() / (t2 / t1).ln() + 2.0).abs())
    })();
    report.record_result("kernel", "(p,q)=(4,4) t in [1e-4,1e-3]".into(), "small-t log-log slope is -m", slope, 0.05)?;
    for (p, q) in [(3usize, 3usize), (5, 3), (5, 5), (7, 5), (4, 2), (4, 4), (6, 4), (6, 6), (2, 2)] {
        let err = classify(p, q).map(|c| {
            let b1 = c.case == KernelCase::B1;
            let mut bad = if c.singular.terms.len() == c.m { 0.0 } else { 1.0 };
            for t in &c.singular.terms {
                let (num, den) = singular_coefficient(b1, c.m, t.l);
                if t.raw.numer().to_string() != num.to_string() || t.raw.denom().to_string() != den.to_string() {
                    bad += 1.0;
                }
            }
            bad
        });
        report.record_result(
            "kernel",
            format!("singular part (p,q)=({p},{q})"),
            "coefficients (-1)^l/(2^l(m-l-1)!) or l!/(2^l(m-l-1)!)",
            err,
            0.0,
        )?;
    }
    let m = 1;
    let base = phi_contour(KernelCase::B2, m, 0.7, &ContourSpec::for_m(m))?.value;
    for gamma in [1.5, 6.0] {
        let err = phi_contour(KernelCase::B2, m, 0.7, &ContourSpec::for_m(m).with_gamma(gamma))
            .map(|v| ((v.value - base) / base).abs());
        report.record_result(
            "kernel",
            format!("(p,q)=(4,2) t=0.7 gamma={gamma}"),
            "contour integral is independent of the contour",
            err,
            1e-9,
        )?;
    }
    Ok(())
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn singular_coefficient(b1: bool, m: usize, l: usize) -> (i128, i128) {
    let num = if b1 {
        if l % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        factorial(l)
    };
    let den = (1i128 << l) * factorial(m - l - 1);
    let g = gcd(num, den);
    (num / g, den / g)
}

fn inversion(report: &mut Report) -> Result<(), CliError> {
    let opts = RadialOptions::default();
    let spec = InversionSpec::new(3, 1)?;
    let err = (|| {
        let f = RadialFunction::new(|r| (-2.0 * r).exp());
        let g = apply_inversion(&f, &spec, 40, &opts)?;
        l2_distance(&g, &RadialFunction::new(|r| -(-2.0 * r).exp()), &spec.cone, &opts)
    })();
    report.record_result("inversion", "(p,q)=(3,1) J=40".into(), "F(e^(-2r)) = -e^(-2r)", err, 1e-6)?;
    for (p, q, sign) in [(5usize, 1usize, 1.0), (3, 1, -1.0)] {
        let spec = InversionSpec::new(p, q)?;
        let cone = spec.cone;
        let err = (|| {
            let f = RadialFunction::new(move |r| minimal_ktype(&cone, r).unwrap_or(f64::NAN));
            let g = apply_inversion(&f, &spec, 2, &opts)?;
            let want = RadialFunction::new(move |r| sign * minimal_ktype(&cone, r).unwrap_or(f64::NAN));
            Ok(l2_distance(&g, &want, &cone, &opts)? / norm(&f, &cone, &opts)?)
        })();
        report.record_result(
            "inversion",
            format!("(p,q)=({p},{q}) sign={sign}"),
            "minimal K-type is an eigenvector with sign (-1)^((p-q)/2)",
            err,
            1e-8,
        )?;
    }
    let tests: [(&str, fn(f64) -> f64); 3] = [
        ("e^(-3r)", |r| (-3.0 * r).exp()),
        ("r e^(-2r)", |r| r * (-2.0 * r).exp()),
        ("(1+r) e^(-4r)", |r| (1.0 + r) * (-4.0 * r).exp()),
    ];
    for (name, func) in tests {
        let res = (|| -> minrep::Result<(f64, f64)> {
            let f = RadialFunction::new(func);
            let nf = norm(&f, &spec.cone, &opts)?;
            let g = apply_inversion(&f, &spec, 40, &opts)?;
            let ng = norm(&g, &spec.cone, &opts)?;
            let h = apply_inversion(&g, &spec, 40, &opts)?;
            Ok((l2_distance(&h, &f, &spec.cone, &opts)? / nf, ((ng - nf) / nf).abs()))
        })();
        let (inv, iso) = match res {
            Ok(v) => (Ok(v.0), Ok(v.1)),
            Err(e) => (Err(e.clone()), Err(e)),
        };
        report.record_result("inversion", format!("(p,q)=(3,1) f={name}"), "F^2 = identity", inv, 2e-6)?;
        report.record_result("inversion", format!("(p,q)=(3,1) f={name}"), "F preserves the L2 norm", iso, 1e-6)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(4, 4).len(), 70);
        assert_eq!(monomials(6, 4).len(), 210);
    }

    #[test]
    fn singular_coefficients_reduced() {
        assert_eq!(singular_coefficient(true, 2, 1), (-1, 2));
        assert_eq!(singular_coefficient(false, 4, 2), (1, 2));
        assert_eq!(singular_coefficient(false, 3, 0), (1, 2));
    }

    #[test]
    fn integrable_signatures() {
        assert!(integrable_by_signature(2, 2));
        assert!(!integrable_by_signature(3, 3));
        assert!(integrable_by_signature(9, 1));
    }
}
