//! Command layer and wire formats for the `zmlp` binary. The mathematical
//! content lives in `zmlp-core`; this crate adds JSON/DOT serialization,
//! golden-table checks, and a deterministic fork-join helper.

pub mod commands;
pub mod io;
pub mod par;
