//! Interactive play: a game in progress, optionally against the engine.
//!
//! Engine replies and move hints come from the DAG tables when the graph is
//! acyclic and directed, and from memoized backward induction otherwise.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cost::{Best, CostPair};
use crate::dag::{dag_tables, DagTables};
use crate::engine::{vertex_limit, Engine, EngineMode, StateValue};
use crate::error::{Result, SpgError};
use crate::graph::{GameGraph, VertexId};
use crate::rules::{apply_move, check_move, initial_state, is_terminal, legal_moves, GameState, Player};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SessionMode {
    /// The engine plays the side the human does not.
    HumanVsEngine { human: Player },
    HumanVsHuman,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateView {
    pub current: VertexId,
    pub current_label: String,
    pub to_move: Player,
    pub visited: Vec<(VertexId, Player)>,
    pub cost_a: u64,
    pub cost_b: u64,
    pub terminal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveView {
    pub to: VertexId,
    pub label: String,
    pub cost: u64,
    /// Equilibrium (mover, other) cost-to-go after this move, if hints are on.
    pub what_if: Option<CostPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub mode: SessionMode,
    pub hints: bool,
    pub state: StateView,
    pub legal_moves: Vec<MoveView>,
    pub history: Vec<VertexId>,
}

pub struct Session {
    graph: GameGraph,
    mode: SessionMode,
    hints: bool,
    state: GameState,
    history: Vec<VertexId>,
    dag: Option<DagTables>,
    cache: HashMap<GameState, StateValue>,
}

impl Session {
    /// Start a game at s. If the engine moves first it does so right away.
    /// Hints are always on for DAGs, and for cacti small enough for the
    /// engine.
    pub fn new(graph: GameGraph, mode: SessionMode, hints: bool) -> Result<Session> {
        let class = graph.classify();
        let dag = if class.is_dag { Some(dag_tables(&graph)?) } else { None };
        let fits_engine = graph.n() <= vertex_limit();
        let needs_engine = hints || matches!(mode, SessionMode::HumanVsEngine { .. });
        if dag.is_none() && needs_engine && !fits_engine {
            return Err(SpgError::TooManyVertices { vertices: graph.n(), limit: vertex_limit() });
        }
        let cactus = class.is_cactus || class.is_directed_cactus;
        let hints = hints || dag.is_some() || (cactus && fits_engine);
        let state = initial_state(&graph);
        let history = vec![graph.source()];
        let mut session = Session { graph, mode, hints, state, history, dag, cache: HashMap::new() };
        session.engine_replies()?;
        Ok(session)
    }

    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn history(&self) -> &[VertexId] {
        &self.history
    }

    pub fn is_over(&self) -> bool {
        is_terminal(&self.state, &self.graph)
    }

    fn engine_side(&self) -> Option<Player> {
        match self.mode {
            SessionMode::HumanVsEngine { human } => Some(human.other()),
            SessionMode::HumanVsHuman => None,
        }
    }

    /// Values of the current state's moves from the mover's point of view.
    fn evaluate(&mut self) -> Result<StateValue> {
        if let Some(v) = self.cache.get(&self.state) {
            return Ok(v.clone());
        }
        let value = match &self.dag {
            Some(tables) => {
                let mut best = Best::new();
                let mut children = Vec::new();
                for mv in legal_moves(&self.graph, &self.state)? {
                    let cv = tables.value[mv.next].after_move(mv.edge.cost);
                    best.offer(cv, mv.next, ());
                    children.push((mv, cv));
                }
                StateValue { value: best.value(), best: best.next_vertex(), children }
            }
            None => Engine::new(&self.graph, EngineMode::Memoized)?.value_at(&self.state),
        };
        self.cache.insert(self.state.clone(), value.clone());
        Ok(value)
    }

    fn advance(&mut self, to: VertexId) -> Result<()> {
        let mv = check_move(&self.graph, &self.state, to)?;
        self.state = apply_move(&self.graph, &self.state, mv)?;
        self.history.push(to);
        Ok(())
    }

    fn engine_replies(&mut self) -> Result<Vec<VertexId>> {
        let mut played = Vec::new();
        while !self.is_over() && Some(self.state.to_move) == self.engine_side() {
            let to = self.evaluate()?.best.ok_or(SpgError::NoPathToSink)?;
            self.advance(to)?;
            played.push(to);
        }
        Ok(played)
    }

    /// Play a human move, then let the engine answer. `player`, if given,
    /// must be the side to move. Returns every vertex moved to.
    pub fn play(&mut self, player: Option<Player>, to: VertexId) -> Result<Vec<VertexId>> {
        if self.is_over() {
            return Err(SpgError::TerminalState);
        }
        let expected = self.state.to_move;
        if player.is_some_and(|p| p != expected) || Some(expected) == self.engine_side() {
            return Err(SpgError::OutOfTurn { expected });
        }
        self.advance(to)?;
        let mut played = vec![to];
        played.extend(self.engine_replies()?);
        Ok(played)
    }

    pub fn view(&mut self) -> Result<SessionView> {
        let terminal = self.is_over();
        let hints = if self.hints && !terminal { Some(self.evaluate()?) } else { None };
        let moves = if terminal { Vec::new() } else { legal_moves(&self.graph, &self.state)? };
        let legal_moves = moves
            .iter()
            .map(|mv| MoveView {
                to: mv.next,
                label: self.graph.label(mv.next).to_string(),
                cost: mv.edge.cost,
                what_if: hints
                    .as_ref()
                    .and_then(|h| h.children.iter().find(|(m, _)| m.next == mv.next).map(|&(_, v)| v)),
            })
            .collect();
        let st = &self.state;
        Ok(SessionView {
            mode: self.mode,
            hints: self.hints,
            state: StateView {
                current: st.current,
                current_label: self.graph.label(st.current).to_string(),
                to_move: st.to_move,
                visited: st.visited.pairs(),
                cost_a: st.costs[0],
                cost_b: st.costs[1],
                terminal,
            },
            legal_moves,
            history: self.history.clone(),
        })
    }

    /// The state obtained by replaying the move history from s.
    pub fn replay_history(&self) -> Result<GameState> {
        let mut state = initial_state(&self.graph);
        for &v in &self.history[1..] {
            let mv = check_move(&self.graph, &state, v)?;
            state = apply_move(&self.graph, &state, mv)?;
        }
        Ok(state)
    }
}
