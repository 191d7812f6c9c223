//! Automorphism groups of circulant graphs.
//!
//! The crate computes `Aut(X(n; S))` exactly for prime `n`, for `n = pq` and
//! for square-free `n`, checks the answers against a backtracking oracle, and
//! provides predicates for several classification results about circulants
//! (CI property, edge- and 2-arc-transitivity, regular subgroups).

pub mod autsolver;
pub mod classify;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod permgroup;
pub mod zmod;


pub use error::{Error, Result};
pub use graph::{Adjacency, CirculantGraph, ConnectionSet, DenseGraph};
pub use num_bigint::BigUint;

pub use permgroup::{BlockSystem, GroupDescription, PermGroup, Permutation, WreathLabelling};
pub use zmod::{Modulus, UnitSubgroup};
pub use autsolver::{aut, Method, Solution, SolverConfig};
pub use oracle::SearchBudget;
