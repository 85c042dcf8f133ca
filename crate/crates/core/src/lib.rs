//! Transitivity and mixing for set-valued dynamical systems.
//!
//! Two representations are supported:
//!
//! * [`finite`]: a set-valued map on a finite discrete space, given as a total
//!   successor relation. All five properties (transitive, bitransitive,
//!   totally transitive, weakly mixing, mixing) are decided exactly.
//! * [`interval`]: a set-valued map on a compact interval whose fibers are
//!   `[l(x), u(x)]` for continuous piecewise-linear `l <= u` with rational
//!   breakpoints. Images, compositions and fixed/periodic point sets are
//!   computed in exact rational arithmetic; mixing is reported as covering
//!   evidence at a chosen resolution and horizon.
//!
//! [`oracle`] holds brute-force implementations of the definitions used to
//! cross-check the fast procedures, and [`random`] generates test instances.

pub mod finite;
pub mod interval;
pub mod oracle;
pub mod random;
