//! Stabiliser codes from projective geometry over small prime fields.

pub mod catalog;
pub mod clique;
pub mod error;
pub mod field;
pub mod format;
pub mod geometry;
pub mod lines;
pub mod oracle;
pub mod pauli;
pub mod recipe;
pub mod search;

pub use clique::{find_cliques, CliqueMode};
pub use error::{Error, Result};
pub use field::{complete_basis, FpMatrix, FpVector, PrimeModulus, Rref};
pub use geometry::{project_from, ProjLine, ProjPoint, ProjSubspace, Projection};
pub use lines::{lines_from_matrix, Distance, QuantumLineSet};
pub use oracle::{code_projector, component_projector, kl_detect, pauli_dense, subspace_equal, DenseOperator, ErrorSet, KlReport};
pub use pauli::{is_abelian, symplectic_form, tau, tau_inv, PauliOperator, StabiliserGroup, SymplecticVector};
pub use recipe::{assess, run_recipe, CodeReport, RecipeConfig};
pub use search::{
    candidate_vertices, distance_bound, gamma_graph, graph_to_generators, is_subspace_t, singleton_max_k, CodingSet,
    CompatibilityGraph, LabelledGraph,
};
