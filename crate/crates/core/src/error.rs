use thiserror::Error;

use crate::graph::VertexId;

/// Errors raised by the solvers and their supporting machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpgError {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("schema error at {field}: {message}")]
    SchemaError { field: String, message: String },
    #[error("edge {u}-{v} has negative cost {cost}")]
    NegativeCost { u: VertexId, v: VertexId, cost: i64 },
    #[error("edge {u}-{v} has zero cost, rejected in strict mode")]
    ZeroCost { u: VertexId, v: VertexId },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("no path from s to t")]
    NoPathToSink,
    #[error("graph contains a directed cycle")]
    CycleDetected,
    #[error("graph is not a DAG")]
    NotADag,
    #[error("operation requires an undirected graph")]
    NotUndirected,
    #[error("graph is not a tree")]
    NotTree,
    #[error("graph is not an undirected cactus")]
    NotCactus,
    #[error("graph is not a directed cactus")]
    NotDirectedCactus,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("{vertices} vertices exceed the memoized engine limit of {limit}; use dfs mode")]
    TooManyVertices { vertices: usize, limit: usize },
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("state is terminal")]
    TerminalState,
    #[error("illegal move to {to} ({rule})")]
    IllegalMove { to: VertexId, rule: RuleTag },
    #[error("it is {expected}'s turn")]
    OutOfTurn { expected: crate::rules::Player },
    #[error("cooperative shortest path has zero cost")]
    ZeroShortestPath,
    #[error("quantifier pattern must alternate starting with exists over an even number of variables")]
    BadQuantifierPattern,
}

/// Which rule a rejected move violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum RuleTag {
    /// No edge from the current vertex to the requested one.
    NoEdge,
    /// The move leaves no feasible continuation to t.
    R1,
    /// The move repeats a (vertex, parity) pair, closing an even cycle.
    R2,
}

impl std::fmt::Display for RuleTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RuleTag::NoEdge => "no-edge",
            RuleTag::R1 => "R1",
            RuleTag::R2 => "R2",
        };
        f.write_str(s)
    }
}

pub type Result<T, E = SpgError> = std::result::Result<T, E>;
