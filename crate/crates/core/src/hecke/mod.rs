//! Affine Hecke algebras of types B and C and transport to KLR modules.

mod module;
mod params;
mod transport;

pub use module::{HeckeModule, HeckeReport};
pub use params::{Family, HeckeParams};
pub use transport::{check_ei_compat, check_params, inverse_transport, render_dictionary, transport, EiCheck, Inverse};
