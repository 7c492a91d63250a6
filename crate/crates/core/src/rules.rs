//! Operational semantics of a play: alternating moves, cost attribution and
//! move legality.
//!
//! Legality works on the parity-expanded graph whose nodes are
//! `(vertex, player to move)`. A move is legal iff it lands on an unvisited
//! node from which some `(t, _)` node is reachable through unvisited nodes.
//! Repeating a node would close an even cycle; failing reachability would
//! strand the players.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Result, RuleTag, SpgError};
use crate::graph::{Edge, GameGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    A,
    B,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::A => Player::B,
            Player::B => Player::A,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Player::A => "A",
            Player::B => "B",
        })
    }
}

/// Set of visited `(vertex, player to move)` nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Visited {
    bits: Vec<u64>,
}

impl Visited {
    pub fn new(n: usize) -> Self {
        Visited { bits: vec![0; (2 * n).div_ceil(64)] }
    }

    fn index(v: VertexId, p: Player) -> usize {
        2 * v + p.index()
    }

    pub fn contains(&self, v: VertexId, p: Player) -> bool {
        let i = Self::index(v, p);
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: VertexId, p: Player) {
        let i = Self::index(v, p);
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Visited nodes as (vertex, player) pairs in vertex order.
    pub fn pairs(&self) -> Vec<(VertexId, Player)> {
        let n = self.bits.len() * 32;
        (0..n)
            .flat_map(|v| [Player::A, Player::B].map(|p| (v, p)))
            .filter(|&(v, p)| Self::index(v, p) < self.bits.len() * 64 && self.contains(v, p))
            .collect()
    }

    /// The two per-player masks, for graphs with at most 64 vertices.
    pub fn masks(&self) -> Option<(u64, u64)> {
        if self.bits.len() > 2 {
            return None;
        }
        let (mut a, mut b) = (0u64, 0u64);
        for (v, p) in self.pairs() {
            match p {
                Player::A => a |= 1 << v,
                Player::B => b |= 1 << v,
            }
        }
        Some((a, b))
    }
}

/// A position in a play.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    pub current: VertexId,
    pub to_move: Player,
    pub visited: Visited,
    /// Accumulated costs indexed by [`Player::index`].
    pub costs: [u64; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move {
    pub edge: Edge,
    pub next: VertexId,
}

pub fn initial_state(g: &GameGraph) -> GameState {
    let mut visited = Visited::new(g.n());
    visited.insert(g.source(), Player::A);
    GameState { current: g.source(), to_move: Player::A, visited, costs: [0, 0] }
}

pub fn is_terminal(state: &GameState, g: &GameGraph) -> bool {
    state.current == g.sink()
}

/// Parity-graph nodes from which t is reachable without touching `visited`.
fn feasible_nodes(g: &GameGraph, visited: &Visited) -> Visited {
    let mut ok = Visited::new(g.n());
    let mut queue = VecDeque::new();
    for p in [Player::A, Player::B] {
        if !visited.contains(g.sink(), p) {
            ok.insert(g.sink(), p);
            queue.push_back((g.sink(), p));
        }
    }
    while let Some((x, q)) = queue.pop_front() {
        // predecessors of (x, q) are (y, q') with an arc y -> x and q' = other(q)
        let pq = q.other();
        for a in g.in_arcs(x) {
            if !visited.contains(a.to, pq) && !ok.contains(a.to, pq) {
                ok.insert(a.to, pq);
                queue.push_back((a.to, pq));
            }
        }
    }
    ok
}

/// Legal moves sorted by next-vertex id.
pub fn legal_moves(g: &GameGraph, state: &GameState) -> Result<Vec<Move>> {
    if is_terminal(state, g) {
        return Err(SpgError::TerminalState);
    }
    let next_player = state.to_move.other();
    let feasible = feasible_nodes(g, &state.visited);
    Ok(g
        .out_arcs(state.current)
        .iter()
        .filter(|a| !state.visited.contains(a.to, next_player) && feasible.contains(a.to, next_player))
        .map(|a| Move { edge: g.edges()[a.edge], next: a.to })
        .collect())
}

/// Validate a requested move, naming the violated rule on failure.
pub fn check_move(g: &GameGraph, state: &GameState, to: VertexId) -> Result<Move> {
    if is_terminal(state, g) {
        return Err(SpgError::TerminalState);
    }
    let Some(arc) = g.out_arcs(state.current).iter().find(|a| a.to == to) else {
        return Err(SpgError::IllegalMove { to, rule: RuleTag::NoEdge });
    };
    let next_player = state.to_move.other();
    if state.visited.contains(to, next_player) {
        return Err(SpgError::IllegalMove { to, rule: RuleTag::R2 });
    }
    if !feasible_nodes(g, &state.visited).contains(to, next_player) {
        return Err(SpgError::IllegalMove { to, rule: RuleTag::R1 });
    }
    Ok(Move { edge: g.edges()[arc.edge], next: to })
}

/// Apply a move; the mover pays the edge cost and the turn passes.
pub fn apply_move(g: &GameGraph, state: &GameState, mv: Move) -> Result<GameState> {
    let checked = check_move(g, state, mv.next)?;
    let mut next = state.clone();
    next.costs[state.to_move.index()] += checked.edge.cost;
    next.current = mv.next;
    next.to_move = state.to_move.other();
    next.visited.insert(mv.next, next.to_move);
    Ok(next)
}

/// Apply a move without re-checking legality. For solvers that already
/// enumerated it through [`legal_moves`].
pub(crate) fn apply_unchecked(state: &GameState, mv: Move) -> GameState {
    let mut next = state.clone();
    next.costs[state.to_move.index()] += mv.edge.cost;
    next.current = mv.next;
    next.to_move = state.to_move.other();
    next.visited.insert(mv.next, next.to_move);
    next
}

/// Outcome of replaying a walk from s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayReport {
    pub cost_a: u64,
    pub cost_b: u64,
    pub moves: usize,
    /// Player paying each move, in order.
    pub payers: Vec<Player>,
}

/// Replay a vertex walk from s and check every rule a finished play must obey:
/// each move along an arc, termination at t, no (vertex, parity) repeat, each
/// player using each arc direction at most once, and the length bounds.
///
/// R1 is not searched for move by move: once the walk is known to reach t
/// without repeating a parity node, its own remainder is a witness path for
/// every prefix.
pub fn replay(g: &GameGraph, walk: &[VertexId]) -> Result<PlayReport> {
    if walk.first() != Some(&g.source()) {
        return Err(SpgError::MalformedInput("walk must start at s".into()));
    }
    let mut state = initial_state(g);
    let mut arc_use: HashSet<(Player, VertexId, VertexId)> = HashSet::new();
    let mut payers = Vec::with_capacity(walk.len().saturating_sub(1));
    for &next in &walk[1..] {
        if is_terminal(&state, g) {
            return Err(SpgError::TerminalState);
        }
        let mover = state.to_move;
        let cost = g.arc_cost(state.current, next).ok_or(SpgError::IllegalMove { to: next, rule: RuleTag::NoEdge })?;
        if state.visited.contains(next, mover.other()) {
            return Err(SpgError::IllegalMove { to: next, rule: RuleTag::R2 });
        }
        if !arc_use.insert((mover, state.current, next)) {
            return Err(SpgError::MalformedInput(format!("player {mover} reuses arc {}->{next}", state.current)));
        }
        state.costs[mover.index()] += cost;
        state.current = next;
        state.to_move = mover.other();
        state.visited.insert(next, state.to_move);
        payers.push(mover);
    }
    if !is_terminal(&state, g) {
        return Err(SpgError::MalformedInput("walk does not end at t".into()));
    }
    let arcs = if g.is_directed() { g.edges().len() } else { 2 * g.edges().len() };
    let moves = walk.len() - 1;
    if moves > 2 * arcs || moves >= 2 * g.n() {
        return Err(SpgError::MalformedInput(format!("walk of {moves} moves exceeds the play length bound")));
    }
    Ok(PlayReport { cost_a: state.costs[0], cost_b: state.costs[1], moves, payers })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1(m: u64) -> GameGraph {
        // s=0 v=1 x=2 y=3 t=4
        GameGraph::new(true, 5, &[(0, 1, 1), (1, 4, m), (1, 2, 1), (2, 3, 1), (3, 1, 1)], 0, 4).unwrap()
    }

    fn example2() -> GameGraph {
        GameGraph::new(true, 6, &[(0, 1, 5), (1, 3, 1), (1, 2, 2), (3, 4, 5), (3, 5, 6), (2, 4, 1), (4, 5, 1)], 0, 5)
            .unwrap()
    }

    fn play(g: &GameGraph, walk: &[VertexId]) -> GameState {
        let mut st = initial_state(g);
        for &v in &walk[1..] {
            let mv = check_move(g, &st, v).unwrap();
            st = apply_move(g, &st, mv).unwrap();
        }
        st
    }

    #[test]
    fn initial_state_is_at_source() {
        let g = example2();
        let st = initial_state(&g);
        assert_eq!((st.current, st.to_move, st.costs), (0, Player::A, [0, 0]));
        assert_eq!(st.visited.len(), 1);
        assert!(!is_terminal(&st, &g));
    }

    #[test]
    fn s_equals_t_is_terminal() {
        let g = GameGraph::new(false, 2, &[(0, 1, 1)], 0, 0).unwrap();
        let st = initial_state(&g);
        assert!(is_terminal(&st, &g));
        assert_eq!(legal_moves(&g, &st).unwrap_err(), SpgError::TerminalState);
    }

    #[test]
    fn apply_first_move_of_example2() {
        let g = example2();
        let st = play(&g, &[0, 1]);
        assert_eq!(st.costs, [5, 0]);
        assert_eq!(st.to_move, Player::B);
        assert_eq!(st.current, 1);
    }

    #[test]
    fn example1_second_cycle_entry_is_illegal() {
        let g = example1(10);
        let st = play(&g, &[0, 1, 2, 3, 1]);
        assert_eq!(st.to_move, Player::A);
        let moves: Vec<_> = legal_moves(&g, &st).unwrap().into_iter().map(|m| m.next).collect();
        assert_eq!(moves, vec![4]);
        assert!(matches!(check_move(&g, &st, 2), Err(SpgError::IllegalMove { rule: RuleTag::R1, .. })));
    }

    #[test]
    fn immediate_back_move_is_r2() {
        let g = GameGraph::new(false, 3, &[(0, 1, 1), (1, 2, 0)], 0, 2).unwrap();
        let st = play(&g, &[0, 1]);
        assert!(matches!(check_move(&g, &st, 0), Err(SpgError::IllegalMove { rule: RuleTag::R2, .. })));
        let zero = play(&g, &[0, 1, 2]);
        assert_eq!(zero.costs, [1, 0]);
    }

    #[test]
    fn replay_reports_costs() {
        let g = example2();
        let rep = replay(&g, &[0, 1, 3, 4, 5]).unwrap();
        assert_eq!((rep.cost_a, rep.cost_b), (10, 2));
        assert!(replay(&g, &[0, 1, 3]).is_err());
    }
}
