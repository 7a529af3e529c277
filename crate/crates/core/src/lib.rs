//! Exact combinatorics of toric hyperkähler (hypertoric) varieties.
//!
//! Everything here is pure integer and rational arithmetic over
//! arbitrary-precision numbers. The crate is `no_std` and only needs `alloc`.
//!
//! The pieces, bottom up:
//!
//! * [`lattice`]: integer matrices, Hermite and Smith normal forms, primitivity,
//!   unimodularity and the Gale dual `A` completing `0 → Zⁿ →B Z^N →A Z^(N−n) → 0`.
//! * [`arrangement`]: discriminant hyperplane arrangements of the torus moment
//!   map, stabilizer ranks, multi-incidence flats and simplicity checks.
//! * [`hypertoric`]: the variety `Y(A,0)` itself: moment map, Hilbert basis of
//!   the invariant monoid, a presentation, and the codimension-2 leaves.
//! * [`localmodel`]: symbolic local normal forms of the moment map and the
//!   one-parameter deformation lines.
//! * [`characterization`]: divisor data → `B` → discriminant, gated on the
//!   smooth / hypertoric / impossible trichotomy.

#![no_std]

extern crate alloc;

pub mod arrangement;
pub mod characterization;
pub mod error;
pub mod hypertoric;
pub mod lattice;
pub mod localmodel;

pub use error::{Error, Result};
pub use lattice::{IntMatrix, LatticeVector};

/// Arbitrary-precision integer used for every matrix entry.
pub type Int = num_bigint::BigInt;

/// Exact rational used for points, offsets and shift constants.
pub type Rat = num_rational::BigRational;
