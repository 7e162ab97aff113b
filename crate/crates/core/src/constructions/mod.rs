//! Lower-bound constructions and their verification oracles.

pub mod audit;
pub mod plane;
pub mod torus;
pub mod triple;

pub use audit::{pair_class_audit, AuditReport, PairClass};
pub use plane::{is_prime, projective_plane_incidence, ProjectivePlane};
pub use torus::{
    torus_digraph, torus_path_witness, verify_inner_coverage, CoverageReport, PathWitness,
    TorusVertex, WitnessCase, WitnessError,
};
pub use triple::{triple_copy, triple_copy_with_layout, TripleCopyLayout};
