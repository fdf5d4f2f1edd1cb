//! Cutting-plane methods for binary quadratic minimization
//!
//! ```text
//! minimize 1/2 x^T Q x  subject to  x in {0,1}^n, sum(x) = m, A x (<=,=,>=) b
//! ```
//!
//! The outer loop ([`engine::run`]) maintains gradient cuts at visited points
//! and solves the resulting MILP for a lower bound. Upper bounds come from a
//! projected-gradient or trust-region local search ([`local`]) restricted to
//! the region where the cut model promises improvement, optionally tightened
//! by an offset. Nonconvex objectives are shifted on the cardinality slice
//! so the cuts stay valid.
//!
//! The [`bench`] module parses instance files, runs benchmark sweeps and
//! computes residue profiles and distributions.

pub mod bench;
pub mod cli;
pub mod engine;
pub mod error;
pub mod local;
pub mod milp;
pub mod model;
pub mod trace;

pub use engine::{run, ConfigName, SolveOutcome, SolveStatus, SolverConfig};
pub use error::{Error, Result};
pub use milp::{BackendKind, BruteForceBackend, MilpBackend};
#[cfg(feature = "highs")]
pub use milp::HighsBackend;
pub use model::{BinaryPoint, FeasibleDomain, LinearRow, QuadraticObjective, RowSense};
pub use trace::{RunTrace, TraceRecord};
