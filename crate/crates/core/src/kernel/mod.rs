//! Kernels of descent statistics inside each graded component of `QSym`,
//! the rewrite relations that span them, and verification of the spanning,
//! basis, ideal and change-of-basis statements.

pub mod checks;
pub mod graph;
pub mod omega;
pub mod registry;
pub mod relations;
pub mod space;

pub use checks::{
    check_basis_change, check_basis_f, check_relation_soundness, check_spanning_f,
    check_spanning_m, check_symmetry_bridges, dimension_row, is_ideal_at, is_ideal_upto,
    monomial_span_elements, monomial_span_vectors, relation_difference_vectors, BasisChangeReport,
    BasisReport, BridgeReport, DimensionRow, IdealReport, IdealWitness, SpanningReport,
};
pub use graph::{connected_components, is_forest, relation_edges, Edge, RelationGraph, UnionFind};
pub use omega::{
    arrow3_matches_omega4, check_omega_families, f_family, in_region, m_family, omega_sets,
    OmegaFamilyReport, OmegaSets, Region,
};
pub use registry::{
    default_relations, describe_check, is_known_check, run_check, CheckOptions, CheckReport,
    CHECK_NAMES,
};
pub use relations::{is_ctilde, parse_relation_set, successors, RelationId, RELATION_SET_NAMES};
pub use space::{
    component_dimension, kernel_generators, kernel_space, quotient_dimension, KernelSpace,
};
