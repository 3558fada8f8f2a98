//! Exact simulation and noise-budget analysis for boson-sampling devices.
//!
//! The crate is organised bottom-up: [`permanent`] evaluates matrix
//! permanents, [`fock`] enumerates occupation vectors, [`ideal`] builds the
//! output distribution of a lossless device, [`noise`] adds imperfect sources
//! and detectors, [`distinguishability`] handles partially distinguishable
//! photons, [`budget`] turns the error bounds into hardware requirements and
//! [`verify`] implements the device-level checks.
//!
//! Data-parallel kernels use rayon behind the default `parallel` feature.
//! Reductions always run in a fixed order, so results do not depend on the
//! thread count.

pub mod budget;
pub mod distinguishability;
pub mod error;
pub mod fock;
pub mod ideal;
pub mod matrix;
pub mod noise;
pub mod numeric;
pub mod par;
pub mod permanent;
pub mod random;
pub mod verify;

pub use error::{Error, Result};
pub use fock::{ClickPattern, OccupationVector};
pub use matrix::{ComplexMatrix, NetworkUnitary};
pub use num_complex::Complex64;
pub use random::RngStream;
