//! Laguerre polynomials, Mano polynomials `M_j^{μ,ℓ}` and the functions
//! `Λ_j^{μ,ν}`.
//!
//! Every family is reachable by two routes: exact series algebra on the
//! generating function, and numerical extraction of Taylor coefficients by a
//! Cauchy integral. The two are used as oracles for each other.

mod cauchy;
mod lambda;
mod laguerre;
mod mano;
mod norms;

pub use cauchy::{genfun_coeff, genfun_coeff_adaptive, genfun_coeffs, genfun_coeffs_fixed, CauchyOptions, CauchyResult};
pub use lambda::{
    lambda_all, lambda_cauchy_all, lambda_elementary, lambda_eval, lambda_genfun, LambdaBasis,
    LambdaParams, LambdaRoute,
};
pub use laguerre::{laguerre, laguerre_int};
pub use mano::{
    mano_bottom_closed, mano_cauchy, mano_exact, mano_exact_all, mano_genfun, mano_prefactor,
    ManoParams,
};
pub use norms::{
    gram_exact, lambda_gram, lambda_norms, moment_inner_product, norm_squared, norm_squared_quadrature, Family, NormValue,
};
