//! Exact-arithmetic mutation calculus for zero mutable Laurent polynomials
//! on lattice polygons, together with the toric cone computations attached
//! to them (central subdivisions, cyclic quotient singularities, wall
//! functions, divisorial-extraction certificates).
//!
//! The crate is `no_std` with `alloc`; all state is immutable after
//! construction and safe to share across threads.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod divisibility;
pub mod lattice;
pub mod laurent;
pub mod mutation;
pub mod toric;
pub mod zmlp;
