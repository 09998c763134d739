//! Exact solvers and instance tooling for the two-terminal strongly
//! connected Steiner subgraph problem with demands: given a weighted digraph
//! with terminals `s` and `t`, find `k1` walks from `s` to `t` and `k2`
//! walks back whose cost — each edge billed at its weight times the larger
//! of its two directional use counts — is minimum.
//!
//! The crate provides:
//!
//! * a parameterized exact solver for one backward demand ([`solve`]),
//!   built on a token-pushing shortest-play search;
//! * an independent brute-force reference for small instances
//!   ([`oracle_opt`], [`oracle_enumerate_optima`]);
//! * structural analysis of optima — shared-stretch decomposition,
//!   reversal-compatibility tests, and a cost-preserving rewiring
//!   ([`structure`]);
//! * a reduction pipeline from grid tiling the solver's running time is
//!   measured against ([`hardness`]);
//! * plain-text and JSON instance/solution formats with transforms between
//!   vertex- and edge-weighted variants ([`io`], [`graph`]).

#![forbid(unsafe_code)]

pub mod graph;
pub mod hardness;
pub mod io;
pub mod oracle;
pub mod randgen;
pub mod solver;
pub mod spt;
pub mod structure;
pub mod token_game;

pub use graph::{
    evaluate_phi_cost, Digraph, Edge, EdgeId, Instance, InstanceError, Solution, VertexId, Walk,
    Weight,
};
pub use oracle::{oracle_enumerate_optima, oracle_opt, OracleLimits};
pub use solver::{solve, solve_with, verify, SolveError, Verdict};
pub use spt::{all_pairs_shortest_paths, ShortestPathTable};
pub use token_game::{state_space_bound, SearchLimits};
