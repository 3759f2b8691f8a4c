use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("pole of {func} at {at}")]
    Pole { func: &'static str, at: String },

    #[error("{func} evaluated on its branch cut at {at} without a side")]
    OnCut { func: &'static str, at: String },

    #[error("{func} requires |z - {center}| < {radius}, got z = {at}")]
    OutOfDisk {
        func: &'static str,
        center: f64,
        radius: f64,
        at: String,
    },

    #[error("formula {formula} is not valid in region {region}")]
    RegionMismatch { formula: String, region: String },

    #[error("quadrature did not reach tolerance {tol:e} (estimated error {err:e}, {intervals} intervals)")]
    Quadrature {
        tol: f64,
        err: f64,
        intervals: usize,
    },

    #[error("expected a real value but the imaginary residue is {residue:e}")]
    NonReal { residue: f64 },

    #[error("cannot parse {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
