//! Concurrent valuation algebras (CVAs) over finite topological spaces.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! - [`topology`]: finite spaces built from subbases, network graphs or powersets.
//! - [`tuples`]: tuple systems (states, events, list lifts, stutter-free words).
//! - [`valuation`]: valuations as elements of the Grothendieck construction of a
//!   relational prealgebra, restriction, extension by preimage and the refinement order.
//! - [`ova`] and [`cva`]: combine operators built by extending local operator
//!   families, plus executable law suites.
//! - [`models`]: the action, state and relative state trace models and the
//!   relational database instance.
//! - [`morphism`]: (co)lax morphism checking and the stuttering quotient.
//! - [`inference`]: knowledgebases, joint valuations and semi-join elimination.
#![no_std]

extern crate alloc;

pub mod cva;
pub mod error;
pub mod inference;
pub mod models;
pub mod morphism;
pub mod ova;
pub mod report;
pub mod sample;
pub mod topology;
pub mod tuples;
pub mod valuation;

pub use error::{Error, Result};
pub use report::{Budget, CheckReport, Comparison, Counterexample, LawOutcome};
pub use topology::{OpenSet, Topology};
pub use valuation::Valuation;
