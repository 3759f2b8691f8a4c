//! Arithmetic substrate: exact rationals, log-scaled values, log-gamma,
//! double-double helpers and adaptive quadrature.

pub mod dd;
pub mod gamma;
pub mod quad;
pub mod rational;
pub mod scaled;

pub use gamma::{digamma, ln_gamma, ln_gamma_real};
pub use quad::{integrate, integrate_path, QuadResult, QuadTol};
pub use rational::{parse_decimal, BigGaussianRational};
pub use scaled::{LogComplex, ScaledReal};

pub use num_complex::Complex64;
pub use num_rational::BigRational;
