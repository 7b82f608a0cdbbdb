//! Exact clique counting in bounded-degree uniform hypergraphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`binomial`] and [`cascade`]: exact binomials, cascade representations
//!   and the colex counting functions `k_s(m)` and `shadow^s_q(m)`.
//! - [`setfamily`]: concrete uniform families with shadows, cliques,
//!   neighborhoods, degrees and the colex/retlex orders.
//! - [`bounds`]: upper bounds on `t`-clique counts given an `i`-degree bound
//!   and a budget of vertices, edges, or `u`-cliques.
//! - [`designs`]: Steiner systems, packings, their shadows and recognition.
//! - [`uniqueness`]: jumping and uniqueness predicates for colex families.
//! - [`oracle`]: exhaustive search and desk-scale verification.

pub mod binomial;
pub mod bits;
pub mod bounds;
pub mod cascade;
pub mod designs;
pub mod error;
pub mod exec;
pub mod oracle;
pub mod setfamily;
pub mod uniqueness;

pub use cascade::{complement_cascade, k_colex, k_via_complement, lovasz_clique_bound, shadow_colex, Cascade};
pub use error::{Error, Result};
pub use exec::Execution;
pub use setfamily::{colex_compare, colex_segment, retlex_compare, retlex_segment, SetFamily, VertexSet};
