//! Differential operators: the one-variable operators `R_{μ,ℓ}`, `P_{μ,ℓ}`,
//! the fundamental operators `R_j` on the isotropic cone, coordinate
//! multiplications `Q_j` and the Jordan product of `ℝ^{p,q}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Num;

use crate::algebra::{reduce_mod_quadric, ExactScalar, Polynomial};
use crate::cone::ConeSpec;
use crate::error::{Error, Result};

/// `x d/dx + c + a x` acting on univariate Laurent polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerFactor {
    pub c: ExactScalar,
    pub a: ExactScalar,
}

impl EulerFactor {
    pub fn new(c: ExactScalar, a: ExactScalar) -> Self {
        EulerFactor { c, a }
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = f.zero_like();
        for (m, v) in f.terms() {
            let e = m.0[0];
            let diag = &ExactScalar::from_int(e as i64) + &self.c;
            out = out + f.monomial_like(vec![e], v * &diag);
            if !self.a.is_zero() {
                out = out + f.monomial_like(vec![e + 1], v * &self.a);
            }
        }
        out
    }
}

fn int(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

fn check_univariate(f: &Polynomial) -> Result<()> {
    if f.nvars() == 1 {
        Ok(())
    } else {
        Err(Error::param(format!(
            "operator acts on univariate polynomials, got {} variables",
            f.nvars()
        )))
    }
}

/// `R_{μ,ℓ} = (x d/dx + μ − 2ℓ − 1 − x/2)(x d/dx + μ − x/2) − (x/2)²`.
pub fn apply_r_mu_ell(mu: i64, ell: i64, f: &Polynomial) -> Result<Polynomial> {
    check_univariate(f)?;
    let half = ExactScalar::frac(-1, 2);
    let inner = EulerFactor::new(int(mu), half.clone());
    let outer = EulerFactor::new(int(mu - 2 * ell - 1), half);
    let quarter_x2 = f.mul_var_pow(0, 2).scale(&ExactScalar::frac(1, 4));
    Ok(outer.apply(&inner.apply(f)) - quarter_x2)
}

/// `P_{μ,ℓ} = x^{−2} R_{μ,ℓ} R_{0,ℓ}`. For a genuine polynomial input the
/// division by `x²` must be exact.
pub fn apply_p(mu: i64, ell: i64, f: &Polynomial) -> Result<Polynomial> {
    let g = apply_r_mu_ell(mu, ell, &apply_r_mu_ell(0, ell, f)?)?;
    g.div_var_pow(0, 2)
}

fn check_cone_poly(f: &Polynomial, spec: &ConeSpec) -> Result<()> {
    if f.nvars() != spec.n() {
        return Err(Error::param(format!(
            "polynomial in {} variables on a cone in ℝ^{}",
            f.nvars(),
            spec.n()
        )));
    }
    Ok(())
}

fn euler(f: &Polynomial) -> Polynomial {
    let mut out = f.zero_like();
    for (m, c) in f.terms() {
        let d = m.degree();
        if d != 0 {
            out = out + f.monomial_like(m.0.clone(), c * &int(d as i64));
        }
    }
    out
}

fn box_op(f: &Polynomial, spec: &ConeSpec) -> Polynomial {
    let mut out = f.zero_like();
    for a in 0..spec.n() {
        let d2 = f.derivative(a).derivative(a);
        out = if a < spec.p { out + d2 } else { out - d2 };
    }
    out
}

/// `R_j f = ε_j x_j □f − (2E + p+q−2) ∂_j f`, reduced modulo the quadric.
/// `j` is 1-based.
pub fn fundamental_r(j: usize, f: &Polynomial, spec: &ConeSpec) -> Result<Polynomial> {
    check_cone_poly(f, spec)?;
    let eps = spec.epsilon(j)?;
    let idx = j - 1;
    let first = box_op(f, spec).mul_var_pow(idx, 1).scale(&int(eps as i64));
    let d = f.derivative(idx);
    let second = euler(&d).scale(&int(2)) + d.scale(&int(spec.n() as i64 - 2));
    reduce_mod_quadric(&(first - second), spec)
}

/// `Q_j f = x_j f` (1-based `j`).
pub fn coordinate_mult(j: usize, f: &Polynomial) -> Result<Polynomial> {
    if j == 0 || j > f.nvars() {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: f.nvars(),
        });
    }
    Ok(f.mul_var_pow(j - 1, 1))
}

/// `(R_i R_j − R_j R_i) f` modulo the quadric.
pub fn commutator_rr(i: usize, j: usize, f: &Polynomial, spec: &ConeSpec) -> Result<Polynomial> {
    let a = fundamental_r(i, &fundamental_r(j, f, spec)?, spec)?;
    let b = fundamental_r(j, &fundamental_r(i, f, spec)?, spec)?;
    reduce_mod_quadric(&(a - b), spec)
}

/// `[[Q_i, R_j], Q_k] f` modulo the quadric.
pub fn double_commutator_qrq(
    i: usize,
    j: usize,
    k: usize,
    f: &Polynomial,
    spec: &ConeSpec,
) -> Result<Polynomial> {
    let bracket = |g: &Polynomial| -> Result<Polynomial> {
        // [Q_i, R_j] g = x_i R_j g − R_j(x_i g)
        let a = coordinate_mult(i, &fundamental_r(j, g, spec)?)?;
        let b = fundamental_r(j, &coordinate_mult(i, g)?, spec)?;
        Ok(a - b)
    };
    let a = bracket(&coordinate_mult(k, f)?)?;
    let b = coordinate_mult(k, &bracket(f)?)?;
    reduce_mod_quadric(&(a - b), spec)
}

/// `(x_1, x')·(y_1, y') = (x_1y_1 − Σ_{i=2}^{p} x_iy_i + Σ_{i>p} x_iy_i, x_1y' + y_1x')`.
pub fn jordan_mul<T>(u: &[T], v: &[T], spec: &ConeSpec) -> Result<Vec<T>>
where
    T: Num + Clone,
{
    let n = spec.n();
    if u.len() != n || v.len() != n {
        return Err(Error::param(format!(
            "Jordan product on ℝ^{n} got vectors of length {} and {}",
            u.len(),
            v.len()
        )));
    }
    let mut head = u[0].clone() * v[0].clone();
    for i in 1..n {
        let prod = u[i].clone() * v[i].clone();
        head = if i < spec.p { head - prod } else { head + prod };
    }
    let mut out = Vec::with_capacity(n);
    out.push(head);
    for i in 1..n {
        out.push(u[0].clone() * v[i].clone() + v[0].clone() * u[i].clone());
    }
    Ok(out)
}

/// Exact rational vector helper for [`jordan_mul`].
pub fn rational_vector(entries: &[(i64, i64)]) -> Vec<BigRational> {
    entries
        .iter()
        .map(|(n, d)| BigRational::new(BigInt::from(*n), BigInt::from(*d)))
        .collect()
}
