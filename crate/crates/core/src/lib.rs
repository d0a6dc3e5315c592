//! Exact algebraic machinery for higher current algebras on punctured
//! affine space: the Jouanolou-style dg model `A_d`, higher residues,
//! L-infinity central extensions of sphere algebras, truncated
//! Chevalley-Eilenberg / Hochschild / cyclic complexes, the
//! Loday-Quillen-Tsygan pullback, the homological perturbation lemma,
//! and the one-loop anomaly coefficient.
//!
//! Everything except the quadrature module works over the exact ground
//! field `Q(tau)`, where `tau` is a formal constant standing for `2*pi*i`.
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI
//! live in the companion crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod complex;
pub mod currents;
pub mod cyclic;
pub mod graded;
pub mod heisenberg;
pub mod homology;
pub mod hpl;
pub mod jouanolou;
pub mod koszul;
pub mod lie;
pub mod matrix;
pub mod quadrature;
pub mod ring;
pub mod scalar;

pub use scalar::Scalar;
