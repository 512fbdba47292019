//! Exact computations around integer cells in convex sets and finite subsets
//! of `Z^n`: coordinate convex hulls, cell content, combinatorial dimensions,
//! exact rational polytopes and the coordinate volume-ratio quantities.

pub mod convex;
pub mod error;
pub mod generators;
pub mod index_set;
pub mod lattice;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use index_set::{IndexSet, SignPattern};
pub use rational::Rational;
