//! Energy-translation dynamics on momentum-coordinate lattices.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, configuration
//! and the command-line driver live in `proptime-sim`.
#![no_std]

extern crate alloc;

pub mod classical;
pub mod dirac;
pub mod error;
pub mod evolution;
pub mod grid;
pub mod matrix;
pub mod operators;
pub mod propagator;
pub mod quantization;
pub mod sparse;
pub mod spectral;
pub mod vector;

pub use error::{Error, Result};
