//! Special-function calculus for the L²-model of the minimal representation of
//! the indefinite orthogonal group `O(p+1, q+1)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: exact scalars carrying a formal `√π` grade, sparse (Laurent)
//!   polynomials, truncated power series and reduction modulo the cone quadric.
//! * [`bessel`]: renormalized Bessel functions `J̃`, `Ĩ`, `K̃` and the exact
//!   half-integer closed forms of `K̃`.
//! * [`specfun`]: Laguerre and Mano polynomials, the `Λ` functions, Cauchy
//!   extraction of Taylor coefficients, exact and numeric norms.
//! * [`diffop`]: the second and fourth order operators `R_{μ,ℓ}`, `P_{μ,ℓ}`,
//!   the fundamental operators `R_j` on the isotropic cone and the rank-two
//!   Jordan product.
//! * [`kernel`]: Mellin–Barnes inversion kernel `Φ^{p,q}`: classification,
//!   residue and contour evaluation, singular parts.
//! * [`radial`]: radial (`O(p)×O(q)`-invariant) functions, `Λ`-basis
//!   expansions and the spectral inversion operator.
//!
//! Shared numerics (double-word arithmetic, Gamma functions, adaptive
//! Gauss–Kronrod quadrature) live in [`numeric`].

pub mod algebra;
pub mod bessel;
pub mod cone;
pub mod diffop;
pub mod error;
pub mod kernel;
pub mod numeric;
pub mod radial;
pub mod specfun;

pub use cone::ConeSpec;
pub use error::{Error, Result};
