//! Exact machinery for rainbow Hamiltonian cycles in graph families.
//!
//! A family G_1, ..., G_n of graphs on the common vertex set {1, ..., n} is
//! rainbow Hamiltonian if some Hamiltonian cycle uses exactly one edge from
//! each member, the edge of colour i taken from G_i. This crate provides the
//! graph types, a certificate-producing exact solver, the Kelmans
//! transformation with replayable transcripts, the cycle-lifting argument
//! that transports certificates back through those transcripts, spectral
//! radius machinery with exact integer tie-breaking, and the constructive
//! routines behind the size and extremal sufficient conditions.

pub mod constructions;
pub mod graph;
pub mod kelmans;
pub mod lifting;
pub mod solver;
pub mod spectral;

pub use constructions::{
    canonical_schedule, construct_cycle_extremal, construct_cycle_extremal_traced,
    construct_cycle_size_condition, construct_cycle_size_condition_traced, extremal_profile,
    pendant_clique_labeled, CanonicalEdgeSchedule, ConstructionError, ExtremalBranch,
    ExtremalFamilyProfile,
};
pub use graph::{
    complete, complete_plus_pendant, cycle_graph, edgeless, is_hamiltonian, is_isomorphic, join,
    k2_join_3k1, star, union, CycleError, Edge, FamilyError, Graph, GraphError, GraphFamily,
    RainbowCycle, Vertex, MAX_VERTICES,
};
pub use lifting::{lift_full, lift_one_step, lift_one_step_traced, LiftChoice, LiftError};
pub use solver::{
    brute_force_oracle, find_rainbow_hamiltonian_cycle, rainbow_hamiltonian_exists, SearchOutcome,
    SolverError, DEFAULT_NODE_BUDGET,
};
