use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("opposite arcs between {0} and {1}")]
    OppositeArcs(Vertex, Vertex),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot place {requested} arcs on {n} vertices (at most {max})")]
    TooManyArcs {
        n: usize,
        requested: usize,
        max: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("vertex {0} is unlabeled")]
    PartialLabeling(Vertex),
    #[error("labeling has {labels} entries but the graph has {n} vertices")]
    SizeMismatch { labels: usize, n: usize },
    #[error("malformed labeling line `{0}`")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("torus construction needs k >= 4, got {0}")]
    KTooSmall(usize),
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("generated arc ({0}, {1}) violates oriented-graph invariants")]
    ConstructionInvalid(Vertex, Vertex),
}
