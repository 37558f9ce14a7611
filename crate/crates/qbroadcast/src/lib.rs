//! Local cloning of shared entanglement, end to end: a state-dependent
//! symmetric qubit cloning machine, two-sided broadcasting of a pure
//! two-qubit state through it, Peres-Horodecki separability analysis of
//! every output pair, and the closed-form intervals and fidelities that
//! describe when broadcasting succeeds.
//!
//! Every closed-form expression is cross-checkable against an independent
//! full-Hilbert-space simulation ([`broadcast::broadcast_oracle`]) built
//! from the explicit cloner isometry. The `cli` module exposes the whole
//! analysis as a command-line tool.

pub mod analysis;
pub mod broadcast;
pub mod cli;
pub mod cloner;
pub mod error;
pub mod linalg;
pub mod separability;

pub use error::{Error, Result};
