//! Airy functions, the origin function D and the auxiliary functions.

pub mod airy;

pub use airy::{
    airy, airy_complex, airy_scaled, connection_check, AiryQuad, AiryQuadC, AiryScaled, ExpScaled,
};
pub mod dfunc;

pub use dfunc::{d_function, ln_d_function};
pub mod aux;

pub use aux::{aux_values, g_tilde_prime, l_estimate, AuxValues, NodeGrid};
