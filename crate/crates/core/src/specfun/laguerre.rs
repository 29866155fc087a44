use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{factorial, ExactScalar, Polynomial};

/// `L_j^μ(x) = Σ_k (−1)^k C(j+μ, j−k) x^k / k!` for rational `μ`, with the
/// generalized binomial `C(j+μ, j−k) = (μ+k+1)⋯(μ+j) / (j−k)!`.
pub fn laguerre(j: usize, mu: &BigRational) -> Polynomial {
    Polynomial::univariate((0..=j).map(|k| {
        let mut c = BigRational::one();
        for i in (k + 1)..=j {
            c *= mu + BigRational::from_integer(BigInt::from(i as u64));
        }
        c /= BigRational::from_integer(factorial((j - k) as u64) * factorial(k as u64));
        if k % 2 == 1 {
            c = -c;
        }
        (k as i32, ExactScalar::from_rational(c))
    }))
}

pub fn laguerre_int(j: usize, mu: i64) -> Polynomial {
    laguerre(j, &BigRational::from_integer(mu.into()))
}
