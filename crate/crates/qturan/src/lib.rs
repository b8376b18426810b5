//! Desk-scale laboratory for Turán-type extremal graph theory and signless
//! Laplacian spectral radii.
//!
//! The toolkit computes exact Turán numbers `ex(n, F)` and extremal sets
//! `Ex(n, F)` by isomorphism-free enumeration, their spectral analogues
//! `ex_ssp(n, F)` / `Ex_ssp(n, F)` under the signless Laplacian
//! `Q(G) = D(G) + A(G)`, and verifies the structural and spectral
//! inequalities that govern them (quotient-matrix bounds, max-cut stability,
//! ε-regularity and counting premises) on small instances.

pub mod canon;
pub mod containment;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod families;
pub mod graph;
pub mod regularity;
pub mod spectral;
pub mod store;
pub mod structure;
pub mod suites;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
