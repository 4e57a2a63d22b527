//! Rank round-robin league teams with HITS hub and authority weights.
//!
//! Match results become a weighted directed graph in which the team that
//! dropped points links to the team that took them (3 for a win, 1 each way
//! for a draw by default). Authority weights then reward beating teams that
//! lose a lot; hub weights grow with losses to strong teams, so the best side
//! is the one with the *smallest* hub weight.
//!
//! ```
//! use league_hits::{build_adjacency, hits, rank_hub, HubOrder, MatchRecord, Outcome, SolverConfig};
//!
//! let matches = vec![
//!     MatchRecord::new("A", "B", Outcome::AWins).unwrap(),
//!     MatchRecord::new("B", "C", Outcome::AWins).unwrap(),
//!     MatchRecord::new("C", "A", Outcome::Draw).unwrap(),
//! ];
//! let graph = build_adjacency(&matches, 3.0, 1.0).unwrap();
//! let result = hits(&graph, &SolverConfig::default()).unwrap();
//! let table = rank_hub(&result.hub, graph.index(), HubOrder::BestTeamFirst).unwrap();
//! assert_eq!(table.rows[0].team, "A");
//! ```

pub mod cli;
pub mod graph;
pub mod hits;
pub mod io;
pub mod linalg;
pub mod rank;

pub use graph::{
    build_adjacency, from_named_matrix, transpose, AdjacencyMatrix, GraphError, MatchRecord,
    Outcome, TeamIndex,
};
pub use hits::{
    authority_gram, hits, hub_gram, normalize_l2, power_iteration, Eigenpair, HitsError,
    HitsResult, SolverConfig, WeightKind, WeightVector,
};
pub use io::{
    emit_matrix, emit_table, parse_matches, parse_matrix, parse_table, OutputFormat, ParseError,
};
pub use linalg::DenseMatrix;
pub use rank::{
    compare_rankings, kendall_tau_b, points_table, rank_authority, rank_hub, ComparisonReport,
    HubOrder, RankError, RankRow, RankTable, ScoreOrdering, TableKind,
};
