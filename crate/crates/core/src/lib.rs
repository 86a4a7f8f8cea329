//! Colored Delone sets: generation, cluster statistics, hull geometry,
//! autocorrelation and diffraction.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coord;
pub mod error;
pub mod generators;
pub mod hull;
pub mod io;
pub mod geometry;
pub mod spectra;
pub mod statistics;
pub mod verify;

pub use coord::{CoordKey, Coordinate, QuadField, QuadInt, TOL_EQ};
pub use error::{Error, Result};
