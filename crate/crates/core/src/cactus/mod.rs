//! Polynomial-time equilibrium computation on cactus graphs.
//!
//! Every s-t path crosses the same chain of blocks (the connection strip).
//! Everything else hangs off the strip as dead-end branches, and the only
//! useful thing a player can do in a branch is an odd closed detour that
//! hands the move to the opponent. Branches are therefore contracted into
//! swap options first ([`branch`]), after which the strip is swept from t
//! back to s, solving each strip cycle as a small game over a handful of
//! positional phases ([`strip`]).
//!
//! Directed cacti (orientations without antiparallel arcs) use the same
//! machinery; missing arcs simply price the corresponding moves at ⊤.

pub mod branch;
pub mod decompose;
pub mod strip;

use crate::cost::{Best, Cost, CostPair, OptionRank};
use crate::error::{Result, SpgError};
use crate::graph::{GameGraph, VertexId};
use crate::solution::Solution;

pub use branch::{contract_branches, contract_pendant_cycle};
pub use decompose::{decompose, ConnectionStrip, Decomposition, StripComponent};
pub use strip::{propagate_bridge, solve_strip_cycle, ExitCosts};

/// How a swap detour is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapKind {
    /// Over a bridge to `to`, swap there, and back.
    Bridge { to: VertexId },
    /// Into a pendant cycle block, walking `order` forwards or reversed.
    Cycle { block: usize, reversed: bool },
}

/// An odd closed detour from a vertex into its branches. `value` holds
/// (cost for the player starting it, cost for the other player).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwapOption {
    pub value: CostPair,
    pub first: VertexId,
    pub kind: SwapKind,
}

impl SwapOption {
    pub fn sw_d(&self) -> Cost {
        self.value.decider
    }

    pub fn sw_f(&self) -> Cost {
        self.value.follower
    }

    fn rank(&self) -> OptionRank {
        OptionRank::new(self.value, self.first)
    }

    /// Keep the better of two options at the same vertex.
    pub(crate) fn merge(slot: &mut Option<SwapOption>, candidate: SwapOption) {
        if !candidate.value.is_feasible() {
            return;
        }
        if slot.as_ref().is_none_or(|cur| candidate.rank() < cur.rank()) {
            *slot = Some(candidate);
        }
    }
}

/// Value for the player starting a swap detour, when the opponent faces
/// `child` once the detour is back at its root.
pub(crate) fn after_swap(sw: Option<&SwapOption>, child: CostPair) -> CostPair {
    match sw {
        Some(s) => CostPair::new(s.value.decider + child.follower, s.value.follower + child.decider),
        None => CostPair::TOP,
    }
}

/// The best option at a decision point together with the vertex it moves to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Choice {
    pub value: CostPair,
    pub next: VertexId,
}

impl Choice {
    pub const NONE: Choice = Choice { value: CostPair::TOP, next: usize::MAX };

    pub(crate) fn of<T>(best: &Best<T>) -> Choice {
        match best.next_vertex() {
            Some(next) => Choice { value: best.value(), next },
            None => Choice::NONE,
        }
    }
}

/// One step of a walk under construction; swaps are expanded at the end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum WalkItem {
    Visit(VertexId),
    Swap(VertexId),
}

/// Forced walk summary: what its first mover and the other player pay.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Seg {
    pub first: u64,
    pub second: u64,
    pub odd: bool,
}

impl Seg {
    /// Value for the first mover of the segment, given the value at its end.
    pub fn then(self, end: CostPair) -> CostPair {
        if self.odd {
            CostPair::new(end.follower + self.first, end.decider + self.second)
        } else {
            CostPair::new(end.decider + self.first, end.follower + self.second)
        }
    }
}

/// A cycle read in one direction: positions `0..=k`, position `k + 1` is
/// position 0 again. Arc costs are ⊤ where the arc does not exist.
#[derive(Clone, Debug)]
pub(crate) struct CycleView {
    pub verts: Vec<VertexId>,
    /// `up[i]`: arc from position i to i + 1.
    up: Vec<Cost>,
    /// `down[i]`: arc from position i + 1 to i.
    down: Vec<Cost>,
    up_sums: PrefixSums,
    down_sums: PrefixSums,
}

#[derive(Clone, Debug)]
struct PrefixSums {
    /// `by_parity[p][x]`: finite costs of arcs with index < x and index % 2 == p.
    by_parity: [Vec<u64>; 2],
    missing: Vec<usize>,
}

impl PrefixSums {
    fn new(costs: &[Cost]) -> Self {
        let mut by_parity = [vec![0u64; costs.len() + 1], vec![0u64; costs.len() + 1]];
        let mut missing = vec![0usize; costs.len() + 1];
        for (i, c) in costs.iter().enumerate() {
            for p in 0..2 {
                by_parity[p][i + 1] = by_parity[p][i];
            }
            missing[i + 1] = missing[i];
            match c {
                Cost::Finite(x) => by_parity[i % 2][i + 1] += x,
                Cost::Top => missing[i + 1] += 1,
            }
        }
        PrefixSums { by_parity, missing }
    }

    /// Arcs `lo..hi`, where the first mover pays the arcs with index parity `first`.
    fn range(&self, lo: usize, hi: usize, first: usize) -> Option<Seg> {
        if self.missing[hi] != self.missing[lo] {
            return None;
        }
        let p = first % 2;
        Some(Seg {
            first: self.by_parity[p][hi] - self.by_parity[p][lo],
            second: self.by_parity[1 - p][hi] - self.by_parity[1 - p][lo],
            odd: (hi - lo) % 2 == 1,
        })
    }
}

impl CycleView {
    pub fn new(g: &GameGraph, verts: Vec<VertexId>) -> Self {
        let len = verts.len();
        let cost = |a: VertexId, b: VertexId| g.arc_cost(a, b).map_or(Cost::Top, Cost::Finite);
        let up: Vec<Cost> = (0..len).map(|i| cost(verts[i], verts[(i + 1) % len])).collect();
        let down: Vec<Cost> = (0..len).map(|i| cost(verts[(i + 1) % len], verts[i])).collect();
        Self::from_parts(verts, up, down)
    }

    fn from_parts(verts: Vec<VertexId>, up: Vec<Cost>, down: Vec<Cost>) -> Self {
        let up_sums = PrefixSums::new(&up);
        let down_sums = PrefixSums::new(&down);
        CycleView { verts, up, down, up_sums, down_sums }
    }

    /// The same cycle read in the opposite direction from the same start.
    pub fn reversed(&self) -> Self {
        let k = self.k();
        let mut verts = vec![self.verts[0]];
        verts.extend(self.verts[1..].iter().rev());
        let up = (0..=k).map(|i| self.down[k - i]).collect();
        let down = (0..=k).map(|i| self.up[k - i]).collect();
        Self::from_parts(verts, up, down)
    }

    /// Index of the last position.
    pub fn k(&self) -> usize {
        self.verts.len() - 1
    }

    /// Vertex at a position, with `k + 1` wrapping to 0.
    pub fn at(&self, i: usize) -> VertexId {
        self.verts[i % self.verts.len()]
    }

    pub fn up(&self, i: usize) -> Cost {
        self.up[i]
    }

    pub fn down(&self, i: usize) -> Cost {
        self.down[i]
    }

    /// Forced walk from position `a` up to `b >= a`.
    pub fn seg_up(&self, a: usize, b: usize) -> Option<Seg> {
        self.up_sums.range(a, b, a)
    }

    /// Forced walk from position `a` down to `b <= a`.
    pub fn seg_down(&self, a: usize, b: usize) -> Option<Seg> {
        if a == b {
            return self.down_sums.range(a, a, 0);
        }
        self.down_sums.range(b, a, a - 1)
    }
}

pub(crate) fn compose(seg: Option<Seg>, end: CostPair) -> CostPair {
    seg.map_or(CostPair::TOP, |s| s.then(end))
}

/// Solved cactus: the equilibrium play plus a count of DP cells evaluated.
fn solve_any(g: &GameGraph) -> Result<Solution> {
    if g.source() == g.sink() {
        return Ok(Solution::from_walk(g, vec![g.source()], 0));
    }
    let dec = decompose(g)?;
    let mut cells = 0u64;
    let swaps = contract_branches(g, &dec, &mut cells);
    let sweep = strip::sweep(g, &dec, &swaps, &mut cells);
    if !sweep.start_value().is_feasible() {
        return Err(SpgError::NoPathToSink);
    }
    let items = sweep.trace(g, &dec, &swaps);
    let walk = branch::expand(g, &dec, &swaps, &items);
    Ok(Solution::from_walk(g, walk, cells))
}

/// Equilibrium play on an undirected cactus.
pub fn solve_cactus(g: &GameGraph) -> Result<Solution> {
    if g.is_directed() {
        return Err(SpgError::NotCactus);
    }
    solve_any(g)
}

/// Equilibrium play on a directed cactus (no antiparallel arcs).
pub fn solve_directed_cactus(g: &GameGraph) -> Result<Solution> {
    if !g.is_directed() {
        return Err(SpgError::NotDirectedCactus);
    }
    solve_any(g)
}
