//! Numerical core for hybrid near/far-field channel estimation with
//! extremely large uniform linear arrays.
//!
//! The crate is `no_std` (it needs `alloc`) and contains no IO. It covers:
//!
//! * [`geometry`]: array configuration, field-region boundaries, far- and
//!   near-field steering vectors and multipath channel synthesis.
//! * [`dictionary`]: the unitary effective-distance dictionary
//!   `D_mu = diag(b(mu)) * DFT`, the DFT dictionary, an on-grid polar
//!   baseline and mutual coherence.
//! * [`fresnel`] and [`coherence`]: unnormalized Fresnel integrals, the
//!   quadratic Gauss-sum coherence kernel, support thresholds and sparsity
//!   bounds.
//! * [`recovery`]: pilots, sensing problems, block-OMP / OMP / LS
//!   estimators and NMSE.
//! * [`block_rip`]: block-sparsity level, sample complexity and randomized
//!   block-RIP / Gaussianity probes.
#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` deliberately rejects NaN alongside non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod block_rip;
pub mod coherence;
pub mod dictionary;
mod error;
pub mod fresnel;
pub mod geometry;
pub mod linalg;
pub mod recovery;
pub mod rng;

pub use error::{Error, Result, ValidityFloor};
pub use linalg::CMatrix;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex<f64>;
