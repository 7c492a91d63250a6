//! Picking a solver from the structure of the graph.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cactus::{solve_cactus, solve_directed_cactus};
use crate::dag::solve_dag;
use crate::engine::{self, vertex_limit, EngineMode};
use crate::error::{Result, SpgError};
use crate::graph::{GameGraph, VertexId};
use crate::solution::Solution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Choose from [`GameGraph::classify`].
    Auto,
    /// The unique s-t path of a tree.
    Tree,
    Dag,
    Cactus,
    DirectedCactus,
    /// Memoized backward induction.
    Engine,
    /// Depth-first backward induction without a cache.
    EngineDfs,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Auto,
        Algorithm::Tree,
        Algorithm::Dag,
        Algorithm::Cactus,
        Algorithm::DirectedCactus,
        Algorithm::Engine,
        Algorithm::EngineDfs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Tree => "tree",
            Algorithm::Dag => "dag",
            Algorithm::Cactus => "cactus",
            Algorithm::DirectedCactus => "directed-cactus",
            Algorithm::Engine => "engine",
            Algorithm::EngineDfs => "engine-dfs",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| {
            let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
            format!("unknown algorithm `{s}` (expected one of {})", names.join(", "))
        })
    }
}

/// The specialised solver for the graph's class, or the engine as fallback.
pub fn select(g: &GameGraph) -> Algorithm {
    let class = g.classify();
    if class.is_tree {
        Algorithm::Tree
    } else if class.is_dag {
        Algorithm::Dag
    } else if class.is_cactus {
        Algorithm::Cactus
    } else if class.is_directed_cactus {
        Algorithm::DirectedCactus
    } else if g.n() <= vertex_limit() {
        Algorithm::Engine
    } else {
        Algorithm::EngineDfs
    }
}

/// Solve with the requested algorithm and report which one ran.
pub fn solve_with(g: &GameGraph, algorithm: Algorithm) -> Result<(Solution, Algorithm)> {
    let chosen = if algorithm == Algorithm::Auto { select(g) } else { algorithm };
    let solution = match chosen {
        Algorithm::Auto => unreachable!("auto resolves to a concrete algorithm"),
        Algorithm::Tree => solve_tree(g)?,
        Algorithm::Dag => solve_dag(g)?,
        Algorithm::Cactus => solve_cactus(g)?,
        Algorithm::DirectedCactus => solve_directed_cactus(g)?,
        Algorithm::Engine => engine::solve(g, EngineMode::Memoized)?,
        Algorithm::EngineDfs => engine::solve(g, EngineMode::DfsLowMemory)?,
    };
    Ok((solution, chosen))
}

/// In a tree every detour would have to come back along the same edge, so
/// the play is the unique s-t path.
pub fn solve_tree(g: &GameGraph) -> Result<Solution> {
    if !g.classify().is_tree {
        return Err(SpgError::NotTree);
    }
    let mut parent: Vec<Option<VertexId>> = vec![None; g.n()];
    let mut queue = VecDeque::from([g.source()]);
    parent[g.source()] = Some(g.source());
    while let Some(v) = queue.pop_front() {
        for a in g.out_arcs(v) {
            if parent[a.to].is_none() {
                parent[a.to] = Some(v);
                queue.push_back(a.to);
            }
        }
    }
    let mut walk = vec![g.sink()];
    let mut v = g.sink();
    while v != g.source() {
        v = parent[v].ok_or(SpgError::NoPathToSink)?;
        walk.push(v);
    }
    walk.reverse();
    Ok(Solution::from_walk(g, walk, g.n() as u64))
}
