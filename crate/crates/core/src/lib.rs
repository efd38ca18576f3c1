//! Numerical Loewner evolution, SLE sampling, critical lattice models and the
//! estimators used to compare them.
//!
//! The crate is organised by subsystem:
//!
//! * [`loewner`] solves chordal and radial Loewner chains by composing exact
//!   vertical-slit maps, and provides hull maps and extremal distances.
//! * [`sle`] samples SLE driving functions and traces, and extracts the
//!   crossing and avoidance events used by the experiments.
//! * [`lattice`] samples random walks, loop-erased walks, uniform spanning
//!   trees and site percolation on the triangular lattice.
//! * [`analysis`] turns samples into numbers: box-counting dimensions,
//!   power-law fits, Cardy's formula and goodness-of-fit tests.

pub mod analysis;
pub mod error;
pub mod lattice;
pub mod loewner;
pub mod rng;
pub mod sle;

pub use error::{Error, Result};
