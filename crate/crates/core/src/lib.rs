//! Exact cluster-algebra seed mutation and tropical invariants.
//!
//! Modules, bottom up:
//! - [`quiver`]: exchange matrices and their mutation
//! - [`laurent`]: exact Laurent polynomials
//! - [`polytope`]: Newton polytopes as tropical evaluators
//! - [`tropical`]: the lock-step `(B, delta, deltacheck, dim, gamma)` calculus
//! - [`seed`]: principal-coefficient seeds and cluster variables
//! - [`pathalg`]: a generic-representation oracle for acyclic quivers
//! - [`compat`]: compatibility degrees and multiplicity formulas
//! - [`fixtures`]: the reproducible case registry used by `verify`

pub mod compat;
pub mod error;
pub mod fixtures;
pub mod laurent;
pub mod pathalg;
pub mod polytope;
pub mod quiver;
pub mod seed;
pub mod tropical;
pub mod vector;

pub use error::{Error, Result};
