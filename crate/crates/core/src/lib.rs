//! Exact symbolic Fedosov deformation quantization on polynomial charts.

pub mod error;
pub mod exterior;
pub mod fedosov;
pub mod fwx;
pub mod hh;
pub mod io;
pub mod linear;
pub mod chart;
pub mod cochain;
pub mod multi;
pub mod ops;
pub mod poisson;
pub mod random;
pub mod scalar;
pub mod verify;
pub mod weyl;
pub mod xpoly;

pub use error::{Error, Result};
