use serde::{Deserialize, Serialize};

use crate::graph::{GameGraph, VertexId};
use crate::rules::Player;

/// An equilibrium play: the walk from s to t and what each player pays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub cost_a: u64,
    pub cost_b: u64,
    pub walk: Vec<VertexId>,
    /// Who pays each move of `walk`.
    pub payers: Vec<Player>,
    /// Number of states (or table cells) the solver evaluated.
    pub node_count: u64,
}

impl Solution {
    /// Build a solution from a walk by attributing arc costs alternately,
    /// starting with A.
    pub fn from_walk(g: &GameGraph, walk: Vec<VertexId>, node_count: u64) -> Solution {
        let mut costs = [0u64; 2];
        let mut payers = Vec::with_capacity(walk.len().saturating_sub(1));
        let mut mover = Player::A;
        for w in walk.windows(2) {
            let c = g.arc_cost(w[0], w[1]).expect("solver walk uses a missing arc");
            costs[mover.index()] += c;
            payers.push(mover);
            mover = mover.other();
        }
        Solution { cost_a: costs[0], cost_b: costs[1], walk, payers, node_count }
    }

    pub fn total(&self) -> u64 {
        self.cost_a + self.cost_b
    }

    /// The walk rendered with vertex labels, comma separated.
    pub fn walk_labels(&self, g: &GameGraph) -> String {
        self.walk.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(",")
    }
}
