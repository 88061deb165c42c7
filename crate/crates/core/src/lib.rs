//! Hypergraph Lagrangians, crossed blowups and homomorphism search.
//!
//! Vertices and polynomial variables are 0-based everywhere. The extremal
//! family is parametrised by `t >= 1`: `gamma(t)` is the crossed blowup of
//! `K_{t+2}^3` (of `{023, 123}` when `t = 1`) and lives on `t + 4` vertices.

pub mod arith;
pub mod constructions;
pub mod error;
pub mod homomorphism;
pub mod hypergraph;
pub mod lagrangian;
pub mod polynomial;
pub mod rational;

pub use constructions::{
    blowup, blowup_edge_count, count_extremal_profiles, crossed_blowup, double_vertex,
    extremal_blowup_search, feasible_limit, feasible_point, gamma, k_crossed_blowup, BlowupSpec,
    ExtremalProfiles, FeasiblePoint, SearchMode,
};
pub use error::{Error, Result};
pub use homomorphism::{
    enumerate_endomorphisms, find_homomorphism, in_family_fm, is_colorable,
    partial_embedding_check, HomSearch, VertexMap,
};
pub use hypergraph::{
    are_isomorphic, parse_text, shadow_clique_free, to_text, GraphPair, Hypergraph,
};
pub use lagrangian::{
    fit_weight_profile, grid_oracle, maximize, predicted_segment, symmetrize_point, verify_segment,
    LagrangianResult, MaximizeOptions, SimplexPoint, WeightFit,
};
pub use polynomial::{MultilinearPoly, SymmetricDecomposition};
pub use rational::Rational;
