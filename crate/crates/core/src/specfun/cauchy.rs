use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::precision::{Accumulator, Precision};

#[derive(Debug, Clone, Copy)]
pub struct CauchyOptions {
    pub rho: f64,
    pub nodes: usize,
    /// Successive doublings must agree to this relative tolerance.
    pub rel_tol: f64,
    pub max_nodes: usize,
    pub precision: Precision,
}

impl Default for CauchyOptions {
    fn default() -> Self {
        CauchyOptions {
            rho: 0.5,
            nodes: 64,
            rel_tol: 1e-11,
            max_nodes: 1 << 14,
            precision: Precision::Double,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CauchyResult {
    pub value: f64,
    pub nodes: usize,
    pub converged: bool,
    /// Rounding floor `ε · max|f| · ρ^{−j}`; agreement below this level is
    /// the best the trapezoidal sum can certify.
    pub noise_floor: f64,
}

fn check(rho: f64, nodes: usize) -> Result<()> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::param(format!("Cauchy radius must lie in (0,1), got {rho}")));
    }
    if nodes == 0 || !nodes.is_power_of_two() {
        return Err(Error::param(format!("node count must be a power of two, got {nodes}")));
    }
    Ok(())
}

fn samples<F>(f: &mut F, rho: f64, nodes: usize) -> Result<Vec<Complex64>>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    (0..nodes)
        .map(|k| f(Complex64::from_polar(rho, 2.0 * PI * k as f64 / nodes as f64)))
        .collect()
}

fn extract(vals: &[Complex64], j: usize, rho: f64, precision: Precision) -> f64 {
    let n = vals.len();
    let mut acc = Accumulator::new(precision);
    for (k, v) in vals.iter().enumerate() {
        let phase = -2.0 * PI * ((j * k) % n) as f64 / n as f64;
        acc.add((v * Complex64::from_polar(1.0, phase)).re);
    }
    acc.value() / n as f64 * rho.powi(-(j as i32))
}

fn floor(vals: &[Complex64], j: usize, rho: f64) -> f64 {
    let m = vals.iter().fold(0.0f64, |m, v| m.max(v.norm()));
    4.0 * f64::EPSILON * m * rho.powi(-(j as i32))
}

/// Trapezoidal Cauchy integral for the `j`-th Taylor coefficient of a
/// function analytic on `|t| ≤ ρ` that is real on the real axis.
pub fn genfun_coeff<F>(mut f: F, j: usize, rho: f64, nodes: usize) -> Result<f64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    check(rho, nodes)?;
    let vals = samples(&mut f, rho, nodes)?;
    Ok(extract(&vals, j, rho, Precision::Double))
}

/// Coefficients `0..=jmax` from a single set of samples.
pub fn genfun_coeffs<F>(mut f: F, jmax: usize, opts: &CauchyOptions) -> Result<Vec<CauchyResult>>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    check(opts.rho, opts.nodes)?;
    let mut nodes = opts.nodes.max((jmax + 1).next_power_of_two());
    let mut vals = samples(&mut f, opts.rho, nodes)?;
    loop {
        let prev: Vec<f64> = (0..=jmax).map(|j| extract(&vals, j, opts.rho, opts.precision)).collect();
        let finer = nodes * 2;
        // Reuse the even-indexed samples of the refined grid.
        let mut next = Vec::with_capacity(finer);
        for k in 0..nodes {
            next.push(vals[k]);
            next.push(f(Complex64::from_polar(
                opts.rho,
                2.0 * PI * (2 * k + 1) as f64 / finer as f64,
            ))?);
        }
        let cur: Vec<f64> = (0..=jmax).map(|j| extract(&next, j, opts.rho, opts.precision)).collect();
        let floors: Vec<f64> = (0..=jmax).map(|j| floor(&next, j, opts.rho)).collect();
        let ok = prev
            .iter()
            .zip(&cur)
            .zip(&floors)
            .all(|((a, b), fl)| (a - b).abs() <= opts.rel_tol * b.abs() + fl);
        if ok || finer >= opts.max_nodes {
            return Ok(cur
                .into_iter()
                .zip(floors)
                .map(|(value, noise_floor)| CauchyResult {
                    value,
                    nodes: finer,
                    converged: ok,
                    noise_floor,
                })
                .collect());
        }
        nodes = finer;
        vals = next;
    }
}

/// Coefficients `0..=jmax` with a fixed node count. Unlike the adaptive
/// variants the result depends smoothly on parameters of `f`.
pub fn genfun_coeffs_fixed<F>(mut f: F, jmax: usize, rho: f64, nodes: usize, precision: Precision) -> Result<Vec<f64>>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    check(rho, nodes)?;
    let vals = samples(&mut f, rho, nodes)?;
    Ok((0..=jmax).map(|j| extract(&vals, j, rho, precision)).collect())
}

/// Single coefficient with node doubling until two successive values agree.
pub fn genfun_coeff_adaptive<F>(f: F, j: usize, opts: &CauchyOptions) -> Result<CauchyResult>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let mut all = genfun_coeffs(f, j, opts)?;
    Ok(all.pop().expect("at least one coefficient"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_and_exponential() {
        let g = genfun_coeff(|t| Ok(1.0 / (1.0 - t)), 3, 0.5, 256).unwrap();
        assert!((g - 1.0).abs() < 1e-12);
        let e = genfun_coeff(|t: Complex64| Ok(t.exp()), 2, 0.5, 256).unwrap();
        assert!((e - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_radius_and_node_count() {
        assert!(genfun_coeff(|t| Ok(t), 0, 1.0, 256).is_err());
        assert!(genfun_coeff(|t| Ok(t), 0, 0.5, 100).is_err());
    }

    #[test]
    fn adaptive_reports_convergence() {
        let r = genfun_coeff_adaptive(|t| Ok(1.0 / (1.0 - t * t)), 4, &CauchyOptions::default())
            .unwrap();
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-12);
    }
}
