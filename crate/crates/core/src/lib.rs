//! Exact, desk-scale machinery for perfect divisibility of graphs.
//!
//! A *perfect division* of a graph `G` under a positive integral weight
//! function `h` is a partition of the vertices into `(A, B)` with `G[A]`
//! perfect and the maximum `h`-weight of a clique in `B` strictly below the
//! maximum in `G`. `G` is *perfectly divisible for h* when every induced
//! subgraph admits such a division for the restricted weights, and
//! *perfectly weight divisible* when that holds for every positive integral
//! `h`. The two notions coincide, and the proof is constructive: substitute
//! a clique of size `h(x)` for a vertex `x` to trade a weight for extra
//! unit-weight vertices, transport divisions across that substitution, and
//! chain the steps to reach any target weight function from the all-ones
//! case.
//!
//! The crate provides:
//!
//! - [`graph`]: bitset graphs up to 62 vertices, graph6 I/O, induced
//!   subgraphs, complement, vertex substitution, homogeneous-set search;
//! - [`search`]: exact maximum-weight clique, exact chromatic number, and
//!   perfection testing, all with independently checkable certificates;
//! - [`divisibility`]: perfect-division search and the divisibility
//!   predicates, plus a minimal-counterexample stream filter;
//! - [`equivalence`]: the clique-substitution contexts, division transport
//!   (lift/project), single-vertex weight reduction, and the end-to-end
//!   pipeline that turns an unweighted division source into divisions for
//!   arbitrary weights.
//!
//! Everything is exact and exhaustive; per-operation vertex caps keep the
//! exponential searches at desk scale.

pub mod divisibility;
pub mod equivalence;
mod error;
pub mod graph;
pub mod graph6;
pub mod search;
pub mod weights;

pub use error::Error;
pub use graph::{Graph, SubstitutionRecord, VertexSet};
pub use weights::WeightFn;

/// Shorthand for results carrying the crate error type.
pub type Result<T> = std::result::Result<T, Error>;
