//! Minimum T-joins, join distances, and the comb decomposition of bipartite grafts.
//!
//! A bipartite graft splits, around any maximal one-sided extreme vertex set,
//! into a skeleton comb, a primal tooth graft hanging off every tooth, and a
//! fringe of trivial vertices; conversely, gluing primal tooth grafts into a
//! comb yields a bipartite graft whose spine is maximal extreme. This crate
//! computes both directions and checks every structural claim it relies on.

pub mod decomposition;
pub mod distance;
pub mod error;
pub mod graph;
pub mod join;
pub mod matching;
pub mod oracle;
pub mod structure;

pub use decomposition::{
    check_factor_connected_comb, check_join_factors, check_quasicomb_bounds, comb_primality_checks,
    comb_violation, decompose, is_comb, primal_decompose, synthesis_min_join, synthesize,
    verify_sebo, CathedralDecomposition, CombPrimalityReport, DecomposedTooth, PrimalCertificate,
    SeboReport, SynthesisSpec, ToothSpec,
};
pub use distance::{
    f_distance_from, f_shortest_path, f_weight, is_primal, join_switch, root_profile, tower_shift,
    DistanceTable, JoinedGraft, Path, RootProfile, Switched,
};
pub use error::{Error, Result};
pub use graph::{
    components_with_parity, contracted_label, symmetric_difference, Bipartition, BipartiteGraft,
    ComponentPartition, Edge, EdgeId, EdgeSet, Graft, Graph, Side, VertexId, VertexSet,
};
pub use join::{
    allowed_edges, factor_components, is_join, min_join, nu, FactorComponents, Join, JoinSolver,
};
pub use oracle::{min_join_bruteforce, JoinOracle};
pub use structure::{
    check_even_components, extreme_partition, fringe_add, fringe_remove,
    grow_maximal_bipartitic_extreme, is_combic, is_extreme, is_maximal_bipartitic_extreme, rootlize,
    skeleton_of, tooth_extract, ExtremePartition, FringeVertex, RootlizedGraft, Skeleton,
    SkeletonTooth, ToothGraft,
};
