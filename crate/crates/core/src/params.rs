use crate::error::{Error, Result};
use crate::exact::MeixnerParams;

/// (c, β, n) in floating point, for the asymptotic side of the library.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    pub c: f64,
    pub beta: f64,
    pub n: u32,
}

impl Params {
    pub fn new(c: f64, beta: f64, n: u32) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::Domain(format!("c = {c} must lie in (0, 1)")));
        }
        if !(1.0..2.0).contains(&beta) {
            return Err(Error::Domain(format!("beta = {beta} must lie in [1, 2)")));
        }
        Ok(Self { c, beta, n })
    }

    pub fn nf(&self) -> f64 {
        self.n as f64
    }
}

impl From<&MeixnerParams> for Params {
    fn from(p: &MeixnerParams) -> Self {
        Self {
            c: p.c_f64(),
            beta: p.beta_f64(),
            n: p.n,
        }
    }
}
