//! Local unitary invariants for multi-fermion pure states.
//!
//! The library constructs, with exact rational arithmetic, an orthogonal
//! generating system for the irreducible subspace of S^m(⋀^k H) generated
//! by the highest-weight vector e_{1..k}^m, evaluates the associated
//! projection invariants on arbitrary states, provides closed-form
//! evaluators for the explicitly known invariants, and embeds
//! distinguishable-particle states into fermionic Hilbert spaces.

pub mod action;
pub mod builder;
pub mod combinatorics;
pub mod embed;
pub mod error;
pub mod exterior;
pub mod invariants;
pub mod io;
pub mod matrix;
pub mod scalar;
pub mod symalg;
pub mod verify;

pub use error::{Error, Result};
