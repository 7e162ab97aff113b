//! Generalized oriented L(2,1)-labelings.
//!
//! For an oriented graph `G` and `S ⊆ {P1, P2, P3}`, a labeling
//! `f: V(G) → {0, 1, ...}` must give adjacent vertices labels at least 2 apart
//! and vertices joined by a length-2 path whose orientation lies in `S`
//! distinct labels. `λ_S(G)` is the least possible maximum label.
//!
//! The crate provides greedy and block-inductive labelers with span
//! guarantees, an exact branch-and-bound solver for small graphs, and the
//! torus, projective-plane and triple-copy constructions that certify lower
//! bounds.

pub mod block_inductive;
pub mod blocks;
pub mod certificate;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod graph;
pub mod labeling;
pub mod random;

pub use block_inductive::{block_degree_bound, block_inductive_label, block_span_bound};
pub use blocks::{block_decomposition, BlockDecomposition};
pub use certificate::span_certificate_clique;
pub use error::{ConstructionError, GraphError, LabelingError};
pub use exact::{exact_lambda, exact_lambda_with_budget, ExactError, ExactResult};
pub use graph::{OrientedGraph, PathPattern, UnderlyingGraph, Vertex};
pub use labeling::{
    build_constraints, greedy_label, greedy_span_bound, is_valid, ConstraintGraph, ConstraintSet,
    Labeling, VertexOrder,
};
