use std::path::Path;

use clap::{Args, ValueEnum};
use minrep::algebra::{CompiledPoly, ExactScalar};
use minrep::bessel::{jtilde, ktilde};
use minrep::kernel::{classify, phi_eval, singular_part, ClassificationReport, SingularKind};
use minrep::numeric::Precision;
use minrep::radial::{apply_inversion, InversionSpec, RadialFunction, RadialOptions};
use minrep::specfun::{laguerre as laguerre_poly, mano_exact, CauchyOptions, LambdaBasis, LambdaParams, LambdaRoute, ManoParams};
use serde::Serialize;

use crate::output::{csv_file_writer, csv_writer, fmt_f64, print_json, write_coefficients, Format};
use crate::spline::CubicSpline;
use crate::{CliError, Grid, MethodArg};

pub fn mano(mu: i64, ell: i64, j: usize, format: Format) -> Result<(), CliError> {
    let poly = mano_exact(ManoParams::new(mu, ell, j)?)?;
    write_coefficients(&poly, format)
}

fn parse_rational(s: &str) -> Result<ExactScalar, CliError> {
    let v: ExactScalar = s.parse().map_err(|e: minrep::Error| CliError::usage(e.to_string()))?;
    if v.as_rational().is_none() {
        return Err(CliError::usage(format!("'{s}' is not a rational number")));
    }
    Ok(v)
}

pub fn laguerre(mu: &str, j: usize, format: Format) -> Result<(), CliError> {
    let mu = parse_rational(mu)?.as_rational().expect("checked rational");
    write_coefficients(&laguerre_poly(j, &mu), format)
}

/// Λ basis honouring the requested accumulation precision on the Cauchy route.
pub fn lambda_basis(mu: f64, nu: f64, jmax: usize, precision: Precision) -> Result<LambdaBasis, CliError> {
    let params = LambdaParams::new(mu, nu, jmax)?;
    let basis = LambdaBasis::new(mu, nu, jmax)?;
    if basis.route() == LambdaRoute::Cauchy && precision != Precision::Double {
        let opts = CauchyOptions {
            precision,
            ..CauchyOptions::default()
        };
        return Ok(LambdaBasis::cauchy(params.mu, params.nu, jmax, opts)?);
    }
    Ok(basis)
}

fn route_name(route: LambdaRoute) -> &'static str {
    match route {
        LambdaRoute::Elementary => "elementary",
        LambdaRoute::Cauchy => "cauchy",
    }
}

#[derive(Serialize)]
struct LambdaRow {
    x: String,
    j: usize,
    value: String,
    route: &'static str,
}

pub fn lambda(mu: f64, nu: f64, j: usize, xs: &[f64], precision: Precision) -> Result<(), CliError> {
    let basis = lambda_basis(mu, nu, j, precision)?;
    let mut w = csv_writer();
    for &x in xs {
        let v = basis.eval_all(x)?;
        w.serialize(LambdaRow {
            x: fmt_f64(x),
            j,
            value: fmt_f64(v[j]),
            route: route_name(basis.route()),
        })?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct KernelRow {
    t: String,
    value: String,
    method: String,
    est_error: String,
}

pub fn kernel_eval(p: usize, q: usize, ts: &[f64], method: MethodArg) -> Result<(), CliError> {
    classify(p, q)?;
    let mut rows = Vec::new();
    for &t in ts {
        for m in method.methods() {
            let v = phi_eval(p, q, t, m)?;
            rows.push(KernelRow {
                t: fmt_f64(v.t),
                value: fmt_f64(v.value),
                method: v.method.to_string(),
                est_error: fmt_f64(v.est_error),
            });
        }
    }
    let mut w = csv_writer();
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn kernel_classify(p: usize, q: usize) -> Result<(), CliError> {
    let class = classify(p, q)?;
    print_json(&ClassificationReport::from(&class))
}

#[derive(Serialize)]
struct SingularTermJson {
    l: usize,
    coeff_num: String,
    coeff_den: String,
    normalized_num: String,
    normalized_den: String,
}

#[derive(Serialize)]
struct SingularJson {
    p: usize,
    q: usize,
    m: usize,
    kind: SingularKind,
    /// The overall nonzero constant is not determined.
    overall_constant: &'static str,
    terms: Vec<SingularTermJson>,
}

pub fn kernel_singular(p: usize, q: usize) -> Result<(), CliError> {
    let class = classify(p, q)?;
    let part = singular_part(p, q)?;
    let terms = part
        .terms
        .iter()
        .map(|t| SingularTermJson {
            l: t.l,
            coeff_num: t.raw.numer().to_string(),
            coeff_den: t.raw.denom().to_string(),
            normalized_num: t.normalized.numer().to_string(),
            normalized_den: t.normalized.denom().to_string(),
        })
        .collect();
    print_json(&SingularJson {
        p,
        q,
        m: class.m,
        kind: part.kind,
        overall_constant: "unknown",
        terms,
    })
}

fn read_samples(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let (mut r, mut f) = (Vec::new(), Vec::new());
    for (line, rec) in reader.records().enumerate() {
        let rec = rec?;
        if rec.len() != 2 {
            return Err(CliError::usage(format!("row {}: expected 2 columns, found {}", line + 2, rec.len())));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| CliError::usage(format!("row {}: '{s}' is not a number", line + 2)))
        };
        r.push(parse(&rec[0])?);
        f.push(parse(&rec[1])?);
    }
    if r.first().is_some_and(|&v| !(v > 0.0)) {
        return Err(CliError::usage("radii must be positive"));
    }
    Ok((r, f))
}

#[derive(Serialize)]
struct InvertRow {
    r: String,
    #[serde(rename = "Ff")]
    value: String,
}

/// Samples are interpolated by a natural cubic spline, held constant below
/// the first radius and set to zero beyond the last one. Output is at the
/// input radii.
pub fn invert(
    p: usize,
    q: usize,
    input: &Path,
    output: Option<&Path>,
    jmax: usize,
    residual_tol: f64,
) -> Result<(), CliError> {
    let spec = InversionSpec::new(p, q)?;
    if !(residual_tol > 0.0) {
        return Err(CliError::usage("residual tolerance must be positive"));
    }
    let (r, f) = read_samples(input)?;
    let spline = CubicSpline::new(r.clone(), f)?;
    let last = spline.last();
    let func = RadialFunction::new(move |x| if x > last { 0.0 } else { spline.eval(x) });
    let opts = RadialOptions {
        residual_tol,
        ..RadialOptions::default()
    };
    let g = apply_inversion(&func, &spec, jmax, &opts)?;
    if let Some(e) = g.expansion() {
        eprintln!("expansion J = {}, absolute L2 residual {}", e.jmax, fmt_f64(e.residual));
    }
    let rows: Vec<InvertRow> = r
        .iter()
        .map(|&x| InvertRow {
            r: fmt_f64(x),
            value: fmt_f64(g.eval(x)),
        })
        .collect();
    match output {
        Some(path) => {
            let mut w = csv_file_writer(path)?;
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        None => {
            let mut w = csv_writer();
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Mano,
    Laguerre,
    Lambda,
    Jtilde,
    Ktilde,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// μ (mano, laguerre, lambda).
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// ℓ (mano).
    #[arg(long, allow_negative_numbers = true)]
    ell: Option<i64>,
    /// ν (lambda).
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    /// Bessel order (jtilde, ktilde).
    #[arg(long, allow_negative_numbers = true)]
    order: Option<f64>,
    /// Largest index j (mano, laguerre, lambda).
    #[arg(long, default_value_t = 5)]
    max_j: usize,
    #[command(flatten)]
    grid: Grid,
}

fn need<T: Clone>(v: &Option<T>, name: &str, family: Family) -> Result<T, CliError> {
    v.clone()
        .ok_or_else(|| CliError::usage(format!("--{name} is required for family {family:?}")))
}

/// CSV with columns `x` and one value column per index (or `value` for the
/// Bessel families).
pub fn table(args: &TableArgs, precision: Precision) -> Result<(), CliError> {
    let xs = args.grid.points()?;
    let fam = args.family;
    let (header, rows): (Vec<String>, Vec<Vec<f64>>) = match fam {
        Family::Mano | Family::Laguerre => {
            let polys = match fam {
                Family::Mano => {
                    let mu = need(&args.mu, "mu", fam)?;
                    let mu: i64 = mu.parse().map_err(|_| CliError::usage(format!("μ = {mu} must be an odd integer")))?;
                    let ell = need(&args.ell, "ell", fam)?;
                    minrep::specfun::mano_exact_all(mu, ell, args.max_j)?
                }
                _ => {
                    let mu = parse_rational(&need(&args.mu, "mu", fam)?)?.as_rational().expect("checked rational");
                    (0..=args.max_j).map(|j| laguerre_poly(j, &mu)).collect()
                }
            };
            let compiled = polys.iter().map(CompiledPoly::new).collect::<Result<Vec<_>, _>>()?;
            let rows = xs
                .iter()
                .map(|&x| compiled.iter().map(|c| c.eval(x)).collect())
                .collect();
            ((0..=args.max_j).map(|j| format!("j{j}")).collect(), rows)
        }
        Family::Lambda => {
            let mu: f64 = need(&args.mu, "mu", fam)?
                .parse()
                .map_err(|_| CliError::usage("μ must be a number"))?;
            let basis = lambda_basis(mu, need(&args.nu, "nu", fam)?, args.max_j, precision)?;
            let rows = xs.iter().map(|&x| basis.eval_all(x)).collect::<Result<Vec<_>, _>>()?;
            ((0..=args.max_j).map(|j| format!("j{j}")).collect(), rows)
        }
        Family::Jtilde | Family::Ktilde => {
            let order = need(&args.order, "order", fam)?;
            let rows = xs
                .iter()
                .map(|&x| {
                    let v = if fam == Family::Jtilde { jtilde(order, x)? } else { ktilde(order, x)? };
                    Ok(vec![v])
                })
                .collect::<Result<Vec<_>, minrep::Error>>()?;
            (vec!["value".to_string()], rows)
        }
    };
    let mut w = csv_writer();
    let mut head = vec!["x".to_string()];
    head.extend(header);
    w.write_record(&head)?;
    for (x, row) in xs.iter().zip(rows) {
        let mut rec = vec![fmt_f64(*x)];
        rec.extend(row.into_iter().map(fmt_f64));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
