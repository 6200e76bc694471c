//! Radiative corrections to the Dirac–Coulomb hydrogen spectrum.

pub mod cli;
pub mod constants;
pub mod dirac;
pub mod error;
pub mod lamb;
pub mod matrix;
pub mod potentials;
pub mod quadrature;
pub mod report;
pub mod specfun;

pub use error::{Error, Result};
