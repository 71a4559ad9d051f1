//! Exact and floating-point linear algebra for the symplectic group
//! `Sp(2n, R)`, isotropic flag manifolds, and antipodality certificates.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`] — field elements, either exact values in a multiquadratic
//!   extension `Q(sqrt(d_1), ..., sqrt(d_m))` with decidable sign, or `f64`
//!   with tolerance-based comparison;
//! * [`mat`] — dense matrices over [`scalar::Scalar`], fraction-free Bareiss
//!   determinants, echelon forms, and nilpotent exponentials;
//! * [`block2`] — the 2x2 block calculus over the basis `(I, R, T, P)`;
//! * [`symplectic`] — the standard and hermitian symplectic forms, group
//!   membership, the closed-form inverse, antiprincipal minors and their
//!   sign law under inversion, random sampling, and structural embeddings;
//! * [`flags`] — isotropic Theta-flags, antipodality tests, horocyclic
//!   groups, the inversion map, and sign certificates;
//! * [`rep`] — the explicit representations `rho_n` of `SL(2, C)` and the
//!   `SU(n-1, 1)` horocyclic data;
//! * [`bivar`] — univariate and bivariate polynomials, Sturm sequences, and
//!   resultants;
//! * [`witness`] — constructive search for non-antipodal witnesses.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so values can be shared freely across threads.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("symflag-core requires either the `std` or the `libm` feature");

pub mod bivar;
pub mod block2;
pub mod flags;
pub(crate) mod fmath;
pub mod mat;
pub mod rep;
pub mod rng;
pub mod scalar;
pub mod symplectic;
pub mod witness;

pub use block2::Block2;
pub use mat::Mat;
pub use scalar::{Backend, Scalar, Tolerance};
pub use symplectic::{FormKind, GroupElement, SymplecticForm};
