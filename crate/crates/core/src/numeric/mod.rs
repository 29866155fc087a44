//! Floating-point building blocks shared by the evaluation modules.

pub mod dd;
pub mod gamma;
pub mod precision;
pub mod quad;

pub use dd::DoubleWord;
pub use precision::Precision;
