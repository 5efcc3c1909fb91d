//! Exact computer algebra for a nine-parameter family of planar birational maps.
//!
//! The family under study is
//!
//! ```text
//! f(x, y) = ( a0 + a1*x + a2*y , (b0 + b1*x + b2*y) / (c0 + c1*x + c2*y) )
//! ```
//!
//! with `(c1, c2) != (0, 0)` and all coefficients in the field Q(i) of
//! Gaussian rationals. Everything in this crate is exact: scalars are
//! arbitrary-precision Gaussian rationals, polynomials and rational functions
//! are kept in canonical reduced form, and no floating point is used anywhere
//! (the sampling fallback in [`fibration`] uses fixed-point big-integer
//! arithmetic).
//!
//! The crate computes, for any member of the family:
//!
//! * the degree sequence `d_n` of the reduced iterates of the projective
//!   extension `F` of `f` ([`degrees`]),
//! * the minimal linear recurrence satisfied by `d_n` and the induced
//!   growth/entropy class ([`degrees`]),
//! * the exceptional lines, indeterminacy points and collapse orbits on the
//!   projective plane, together with an algebraic-stability diagnostic
//!   ([`geometry`]),
//! * the theorem case the parameter tuple falls into and the predicted degree
//!   law for that case, cross-checked against the computed sequence
//!   ([`classify`]),
//! * affine normal forms, the catalog of invariant fibrations and first
//!   integrals attached to each zero-entropy case, exact verification of the
//!   defining identities, transversality and map periodicity ([`fibration`]).
//!
//! The crate is `no_std` (with `alloc`); IO, configuration files and report
//! rendering live in the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod classify;
pub mod degrees;
pub mod error;
pub mod family;
pub mod fibration;
pub mod geometry;
pub mod moebius;
pub mod numeric;
pub mod poly;
pub mod ratfunc;
pub mod scalar;

pub use error::Error;
pub use family::{BirationalityReport, Degeneracy, ParameterTuple, PlaneMap, ProjectiveMap};
pub use poly::{MultiPoly, VarSpace};
pub use ratfunc::RationalFunction;
pub use scalar::GaussianRational;
