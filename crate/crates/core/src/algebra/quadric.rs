use super::poly::{Monomial, Polynomial};
use super::scalar::ExactScalar;
use crate::cone::ConeSpec;
use crate::error::{Error, Result};

/// `Q(x) = x_1² + … + x_p² − x_{p+1}² − … − x_{p+q}²` in `x_1, …, x_{p+q}`.
pub fn quadric_form(spec: &ConeSpec) -> Polynomial {
    let n = spec.n();
    let base = Polynomial::zero_in(n);
    let mut out = base.clone();
    for a in 0..n {
        let mut e = vec![0; n];
        e[a] = 2;
        let sign = if a < spec.p { 1 } else { -1 };
        out = out + base.monomial_like(e, ExactScalar::from_int(sign));
    }
    out
}

/// Normal form of `f` modulo `(Q)`: every power `x_n^k` with `k ≥ 2` of the
/// last variable is rewritten using
/// `x_n² ≡ x_1² + … + x_p² − x_{p+1}² − … − x_{n−1}²`.
pub fn reduce_mod_quadric(f: &Polynomial, spec: &ConeSpec) -> Result<Polynomial> {
    let n = spec.n();
    if n < 2 {
        return Err(Error::param(format!("p+q = {n} must be at least 2")));
    }
    if f.nvars() != n {
        return Err(Error::param(format!(
            "polynomial has {} variables, the cone lives in {n}",
            f.nvars()
        )));
    }
    let last = n - 1;
    // x_n² ≡ s
    let mut s = f.zero_like();
    for a in 0..last {
        let mut e = vec![0; n];
        e[a] = 2;
        let sign = if a < spec.p { 1 } else { -1 };
        s.add_term(Monomial(e), &ExactScalar::from_int(sign));
    }
    let max_k = f.max_exponent(last).unwrap_or(0).max(0) as usize / 2;
    let mut powers = vec![f.constant_like(ExactScalar::one())];
    for k in 1..=max_k {
        powers.push(&powers[k - 1] * &s);
    }
    let mut out = f.zero_like();
    for (m, c) in f.terms() {
        let e = m.0[last];
        if e < 2 {
            out.add_term(m.clone(), c);
            continue;
        }
        let k = (e / 2) as usize;
        let mut rest = m.0.clone();
        rest[last] = e % 2;
        let head = f.monomial_like(rest, c.clone());
        out = out + &head * &powers[k];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_square_of_last_variable() {
        let spec = ConeSpec::new(2, 2).unwrap();
        let base = Polynomial::zero_in(4);
        let x4sq = base.monomial_like(vec![0, 0, 0, 2], ExactScalar::one());
        let expected = base.monomial_like(vec![2, 0, 0, 0], ExactScalar::one())
            + base.monomial_like(vec![0, 2, 0, 0], ExactScalar::one())
            + base.monomial_like(vec![0, 0, 2, 0], ExactScalar::from_int(-1));
        assert_eq!(reduce_mod_quadric(&x4sq, &spec).unwrap(), expected);
        assert!(reduce_mod_quadric(&quadric_form(&spec), &spec).unwrap().is_zero());
    }

    #[test]
    fn two_step_reduction() {
        let spec = ConeSpec::new(2, 2).unwrap();
        let base = Polynomial::zero_in(4);
        let f = base.monomial_like(vec![1, 0, 0, 3], ExactScalar::one());
        let x1x4 = base.monomial_like(vec![1, 0, 0, 1], ExactScalar::one());
        let s = base.monomial_like(vec![2, 0, 0, 0], ExactScalar::one())
            + base.monomial_like(vec![0, 2, 0, 0], ExactScalar::one())
            + base.monomial_like(vec![0, 0, 2, 0], ExactScalar::from_int(-1));
        assert_eq!(reduce_mod_quadric(&f, &spec).unwrap(), &x1x4 * &s);
    }

    #[test]
    fn rejects_wrong_arity() {
        let spec = ConeSpec::new(2, 2).unwrap();
        assert!(reduce_mod_quadric(&Polynomial::x(), &spec).is_err());
    }
}
