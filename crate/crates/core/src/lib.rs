//! Exact arithmetic toolkit for the parameters of strongly regular graphs
//! with no triangles.
//!
//! A triangle-free strongly regular graph is described by the pair `(q, c)`,
//! where `q` is its positive non-principal eigenvalue and `c` the number of
//! common neighbours of two non-adjacent vertices. This crate decides which
//! pairs are arithmetically feasible, enumerates them, evaluates the closed-form
//! families and bounds that organise them, and checks concrete graphs against
//! the theory. All arithmetic is exact.

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod feasibility;
pub mod graphcheck;
pub mod params;
pub mod subconstituent;

pub use arith::{Int, Rational};
pub use error::{Error, Result};
pub use feasibility::{check, is_feasible, FeasibilityVerdict};
pub use params::{derive_spectrum, ParamPair, Spectrum};
