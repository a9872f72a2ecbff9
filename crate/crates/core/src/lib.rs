//! Experimental toolkit for polynomial configurations in the prime
//! lattice: exact shift-and-double linearization of vector polynomial
//! systems, sieve-weighted majorants with correlation diagnostics, local
//! box norms with dual functions and a constructive bounded-model
//! decomposition, and brute-force configuration search.

pub mod exec;
pub mod grid;
pub mod polysys;
pub mod search;
pub(crate) mod sampling;
pub mod sieve;
