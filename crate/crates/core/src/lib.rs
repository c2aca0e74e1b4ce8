//! Minimum-height decision trees for finite binary instance sets.
//!
//! Given a duplicate-free set `A` of assignments in `{0,1}^m`, this crate
//! builds and analyzes the adaptive query strategies that identify a hidden
//! element of `A` by asking for single bits:
//!
//! - [`measures`]: the combinatorial quantities tied to the optimal query
//!   count — majority/balance statistics (MAJ, MAX, MAMI), hitting sets,
//!   specifying sets and the extended teaching dimensions (ETD, SETD), the
//!   density DEN, and a consolidated bounds report.
//! - [`solvers`]: exact minimum-depth search, the most-balanced-split greedy
//!   construction, the specifying-set halving learner with its balanced
//!   variant, and the majority adversary realizing the density lower bound.
//! - [`lattice`]: disjunction closures of predicate families, their Hasse
//!   diagrams, witness sets, polynomial specifying sets, and ray-class
//!   generators.
//! - [`verify`]: seeded suites checking every promised inequality over an
//!   exhaustive corpus of small instances.

pub mod bits;
pub mod config;
pub mod error;
pub mod fraction;
pub mod instance;
pub mod lattice;
pub mod measures;
pub mod solvers;
pub mod tree;
pub mod verify;

pub use bits::BitVector;
pub use config::Limits;
pub use error::{Error, Result};
pub use fraction::Fraction;
pub use instance::InstanceSet;
pub use tree::DecisionTree;
