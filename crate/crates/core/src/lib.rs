//! Capillary–gravity waves scattered by a Rankine vortex.
//!
//! - [`specfun`]: cylinder functions of complex order and argument
//! - [`medium`]: fluid properties, dispersion and attenuation
//! - [`scatter`]: modal matching at the vortex core
//! - [`field`]: surface elevation synthesis and far-field corrections

pub mod field;
pub mod medium;
pub mod scatter;
pub mod specfun;

mod error;

pub use error::{Error, Result};
