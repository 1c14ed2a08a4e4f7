//! Quantum-speed-limit toolkit for finite energy spectra.
//!
//! The crate computes the minimum time `T` for a state with mean energy `E`
//! and spread `dE` to rotate to a target survival probability, reconstructs
//! the bounding functions `alpha` and `beta` behind that limit, simulates
//! pure/mixed/composite evolution, and verifies the associated inequalities
//! numerically. `hbar = 1` throughout; spectra carry a zero ground level.
//!
//! `no_std` + `alloc`; all randomness enters through explicit seeds.

#![no_std]
// Validation uses `!(x > 0.0)` so NaN fails alongside non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod composite;
pub mod dynamics;
mod error;
pub mod numerics;
pub mod properties;
pub mod states;

pub use error::Error;
