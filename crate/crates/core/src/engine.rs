//! Exact backward induction over the game tree.
//!
//! This is the reference solver: it works on any graph but explores the
//! (exponential) tree of plays, so it is meant for small instances and as an
//! oracle for the specialised solvers.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::cost::{Best, Cost, CostPair};
use crate::error::{Result, SpgError};
use crate::graph::{GameGraph, VertexId};
use crate::rules::{apply_unchecked, initial_state, is_terminal, legal_moves, GameState, Move, Player, Visited};
use crate::solution::Solution;

/// Environment variable overriding [`DEFAULT_VERTEX_LIMIT`].
pub const VERTEX_LIMIT_ENV: &str = "SPG_ENGINE_VERTEX_LIMIT";
pub const DEFAULT_VERTEX_LIMIT: usize = 64;

/// Largest graph the memoized engine accepts.
pub fn vertex_limit() -> usize {
    std::env::var(VERTEX_LIMIT_ENV).ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_VERTEX_LIMIT)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EngineMode {
    /// Cache state values; memory grows with the number of distinct states.
    #[default]
    Memoized,
    /// Plain depth-first recursion holding only the current branch.
    DfsLowMemory,
}

type StateKey = (VertexId, Player, Visited);

/// Value of a state and the values of its legal moves, all from the point of
/// view of the player to move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateValue {
    pub value: CostPair,
    pub best: Option<VertexId>,
    pub children: Vec<(Move, CostPair)>,
}

/// A backward-induction solver bound to one graph.
pub struct Engine<'g> {
    g: &'g GameGraph,
    mode: EngineMode,
    memo: HashMap<StateKey, (CostPair, Option<VertexId>)>,
    visits: u64,
}

impl<'g> Engine<'g> {
    pub fn new(g: &'g GameGraph, mode: EngineMode) -> Result<Self> {
        let limit = vertex_limit();
        if mode == EngineMode::Memoized && g.n() > limit {
            return Err(SpgError::TooManyVertices { vertices: g.n(), limit });
        }
        Ok(Engine { g, mode, memo: HashMap::new(), visits: 0 })
    }

    /// Distinct states evaluated so far (memoized) or recursive calls made (dfs).
    pub fn node_count(&self) -> u64 {
        match self.mode {
            EngineMode::Memoized => self.memo.len() as u64,
            EngineMode::DfsLowMemory => self.visits,
        }
    }

    fn key(state: &GameState) -> StateKey {
        (state.current, state.to_move, state.visited.clone())
    }

    fn memo_value(&mut self, state: &GameState) -> (CostPair, Option<VertexId>) {
        if is_terminal(state, self.g) {
            return (CostPair::ZERO, None);
        }
        let key = Self::key(state);
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        let mut best = Best::new();
        for mv in legal_moves(self.g, state).expect("non-terminal state") {
            let child = apply_unchecked(state, mv);
            let (cv, _) = self.memo_value(&child);
            best.offer(cv.after_move(mv.edge.cost), mv.next, ());
        }
        let result = (best.value(), best.next_vertex());
        self.memo.insert(key, result);
        result
    }

    /// Value and equilibrium continuation (excluding the current vertex).
    fn dfs_value(&mut self, state: &GameState) -> (CostPair, Vec<VertexId>) {
        self.visits += 1;
        if is_terminal(state, self.g) {
            return (CostPair::ZERO, Vec::new());
        }
        let mut best = Best::new();
        for mv in legal_moves(self.g, state).expect("non-terminal state") {
            let child = apply_unchecked(state, mv);
            let (cv, suffix) = self.dfs_value(&child);
            best.offer(cv.after_move(mv.edge.cost), mv.next, suffix);
        }
        match best.into_inner() {
            Some((value, next, mut suffix)) => {
                suffix.insert(0, next);
                (value, suffix)
            }
            None => (CostPair::TOP, Vec::new()),
        }
    }

    /// Cost-to-go pair of a state for (player to move, other player).
    pub fn value(&mut self, state: &GameState) -> CostPair {
        match self.mode {
            EngineMode::Memoized => self.memo_value(state).0,
            EngineMode::DfsLowMemory => self.dfs_value(state).0,
        }
    }

    /// Equilibrium walk from `state` to t, starting with `state.current`.
    pub fn continuation(&mut self, state: &GameState) -> Result<(CostPair, Vec<VertexId>)> {
        let mut walk = vec![state.current];
        let value = match self.mode {
            EngineMode::Memoized => {
                let value = self.memo_value(state).0;
                let mut cur = state.clone();
                while let (true, Some(next)) = (value.is_feasible(), self.memo_value(&cur).1) {
                    let mv = legal_moves(self.g, &cur)?.into_iter().find(|m| m.next == next).expect("memoized move");
                    cur = apply_unchecked(&cur, mv);
                    walk.push(next);
                }
                value
            }
            EngineMode::DfsLowMemory => {
                let (value, suffix) = self.dfs_value(state);
                walk.extend(suffix);
                value
            }
        };
        if !value.is_feasible() {
            return Err(SpgError::NoPathToSink);
        }
        Ok((value, walk))
    }

    /// Per-move what-if values at a state; a terminal state has value (0,0)
    /// and no children.
    pub fn value_at(&mut self, state: &GameState) -> StateValue {
        if is_terminal(state, self.g) {
            return StateValue { value: CostPair::ZERO, best: None, children: Vec::new() };
        }
        let mut best = Best::new();
        let mut children = Vec::new();
        for mv in legal_moves(self.g, state).expect("non-terminal state") {
            let child = apply_unchecked(state, mv);
            let cv = self.value(&child).after_move(mv.edge.cost);
            best.offer(cv, mv.next, ());
            children.push((mv, cv));
        }
        StateValue { value: best.value(), best: best.next_vertex(), children }
    }
}

/// Solve the game from s by backward induction.
pub fn solve(g: &GameGraph, mode: EngineMode) -> Result<Solution> {
    let mut engine = Engine::new(g, mode)?;
    let (_, walk) = engine.continuation(&initial_state(g))?;
    Ok(Solution::from_walk(g, walk, engine.node_count()))
}

/// Convenience wrapper around [`Engine::value_at`].
pub fn value_at(g: &GameGraph, state: &GameState, mode: EngineMode) -> Result<StateValue> {
    Ok(Engine::new(g, mode)?.value_at(state))
}

/// Does the equilibrium play cost at most `cap_a` for A and `cap_b` for B?
pub fn spgd(g: &GameGraph, cap_a: u64, cap_b: u64, mode: EngineMode) -> Result<bool> {
    let sol = solve(g, mode)?;
    Ok(sol.cost_a <= cap_a && sol.cost_b <= cap_b)
}

/// Total equilibrium cost over the cooperative shortest path cost.
pub fn price_of_anarchy_of(g: &GameGraph, sol: &Solution) -> Result<Ratio<u64>> {
    match g.cooperative_shortest_path() {
        Cost::Finite(0) => Err(SpgError::ZeroShortestPath),
        Cost::Finite(d) => Ok(Ratio::new(sol.total(), d)),
        Cost::Top => Err(SpgError::NoPathToSink),
    }
}

pub fn price_of_anarchy(g: &GameGraph, mode: EngineMode) -> Result<Ratio<u64>> {
    price_of_anarchy_of(g, &solve(g, mode)?)
}
