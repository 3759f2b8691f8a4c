//! Region classification and the uniform asymptotic expansions.

pub mod engine;
pub mod region;

pub use engine::{AsymptoticResult, Engine, Formula};
pub use region::{classify_region, HalfPlane, Region, RegionTag};
