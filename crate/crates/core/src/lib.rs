//! Distance computations for CWS quantum codes built from a graph and
//! a classical linear code.
//!
//! The crate provides GF(2) linear algebra ([`gf2`]), phase-free Pauli
//! operators ([`pauli`]), classical codes and their minimum distance
//! ([`codes`]), simple graphs and the 4-cycle-free polarity
//! construction ([`graphs`]), the CWS detection conditions with
//! quantum, graph-state, and stabilizer distances ([`cws`]), an exact
//! statevector oracle for the error-detection conditions
//! ([`kloracle`]), at-most-one-matching set machinery ([`atomsets`]),
//! the classical-to-quantum distance reduction ([`reduction`]), and
//! seeded instance sampling ([`sample`]).
//!
//! Search loops run data-parallel under the default `parallel` feature
//! and sequentially without it; results are identical either way.

pub mod atomsets;
pub mod codes;
mod combin;
pub mod cws;
mod exec;
pub mod gf2;
pub mod graphs;
pub mod kloracle;
pub mod pauli;
pub mod reduction;
pub mod sample;
