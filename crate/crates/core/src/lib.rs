//! Exact and uniform asymptotic evaluation of Meixner polynomials.

pub mod asymptotics;
pub mod equilibrium;
pub mod error;
pub mod exact;
pub mod numerics;
pub mod params;
pub mod specfun;
pub mod table1;
pub mod verify;

pub use error::{Error, Result};
pub use params::Params;
