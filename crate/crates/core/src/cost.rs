//! Exact cost values, decider/follower pairs and the option ranking used by
//! every solver in the crate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::graph::VertexId;

/// A non-negative exact cost or the infeasible value `Top`.
///
/// `Top` is absorbing under addition and compares greater than every finite
/// value. Serialized as a number, with `null` for `Top`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Option<u64>", into = "Option<u64>")]
pub enum Cost {
    Finite(u64),
    Top,
}

impl Cost {
    pub const ZERO: Cost = Cost::Finite(0);

    pub fn is_top(self) -> bool {
        matches!(self, Cost::Top)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Cost::Finite(c) => Some(c),
            Cost::Top => None,
        }
    }
}

impl From<Option<u64>> for Cost {
    fn from(c: Option<u64>) -> Self {
        c.map_or(Cost::Top, Cost::Finite)
    }
}

impl From<Cost> for Option<u64> {
    fn from(c: Cost) -> Self {
        c.finite()
    }
}

impl From<u64> for Cost {
    fn from(c: u64) -> Self {
        Cost::Finite(c)
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a.checked_add(b).expect("cost overflow")),
            _ => Cost::Top,
        }
    }
}

impl Add<u64> for Cost {
    type Output = Cost;

    fn add(self, rhs: u64) -> Cost {
        self + Cost::Finite(rhs)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(c) => write!(f, "{c}"),
            Cost::Top => write!(f, "⊤"),
        }
    }
}

/// Cost-to-go split between the player deciding at a state and the other one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CostPair {
    pub decider: Cost,
    pub follower: Cost,
}

impl CostPair {
    pub const ZERO: CostPair = CostPair { decider: Cost::ZERO, follower: Cost::ZERO };
    pub const TOP: CostPair = CostPair { decider: Cost::Top, follower: Cost::Top };

    pub fn new(decider: impl Into<Cost>, follower: impl Into<Cost>) -> Self {
        let (decider, follower) = (decider.into(), follower.into());
        if decider.is_top() || follower.is_top() {
            return CostPair::TOP;
        }
        CostPair { decider, follower }
    }

    pub fn is_feasible(&self) -> bool {
        !self.decider.is_top()
    }

    /// Value for the player who moves along an edge of cost `cost` into a
    /// state valued `self`: the mover pays the edge, and roles flip.
    pub fn after_move(self, cost: impl Into<Cost>) -> CostPair {
        CostPair::new(cost.into() + self.follower, self.decider)
    }

    /// Exchange the two roles.
    pub fn swapped(self) -> CostPair {
        CostPair { decider: self.follower, follower: self.decider }
    }

    /// Add a cost split given from the decider's point of view.
    pub fn plus(self, own: impl Into<Cost>, other: impl Into<Cost>) -> CostPair {
        CostPair::new(self.decider + own.into(), self.follower + other.into())
    }
}

impl fmt::Display for CostPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.decider, self.follower)
    }
}

/// Lexicographic key a decider uses to compare its options: own cost, then
/// the other player's cost, then the lowest next vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OptionRank {
    pub own: Cost,
    pub other: Cost,
    pub next_vertex: VertexId,
}

impl OptionRank {
    pub fn new(value: CostPair, next_vertex: VertexId) -> Self {
        OptionRank { own: value.decider, other: value.follower, next_vertex }
    }
}

impl PartialOrd for OptionRank {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OptionRank {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.own, self.other, self.next_vertex).cmp(&(other.own, other.other, other.next_vertex))
    }
}

/// Keeps the OptionRank-minimal feasible option seen so far.
#[derive(Clone, Debug)]
pub struct Best<T> {
    best: Option<(OptionRank, CostPair, T)>,
}

impl<T> Default for Best<T> {
    fn default() -> Self {
        Best { best: None }
    }
}

impl<T> Best<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Offer an option; infeasible values are ignored.
    pub fn offer(&mut self, value: CostPair, next_vertex: VertexId, tag: T) {
        if !value.is_feasible() {
            return;
        }
        let rank = OptionRank::new(value, next_vertex);
        if self.best.as_ref().is_none_or(|(r, _, _)| rank < *r) {
            self.best = Some((rank, value, tag));
        }
    }

    pub fn value(&self) -> CostPair {
        self.best.as_ref().map_or(CostPair::TOP, |(_, v, _)| *v)
    }

    pub fn next_vertex(&self) -> Option<VertexId> {
        self.best.as_ref().map(|(r, _, _)| r.next_vertex)
    }

    pub fn into_inner(self) -> Option<(CostPair, VertexId, T)> {
        self.best.map(|(r, v, t)| (v, r.next_vertex, t))
    }

    pub fn tag(&self) -> Option<&T> {
        self.best.as_ref().map(|(_, _, t)| t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_absorbs_and_dominates() {
        assert_eq!(Cost::Finite(3) + Cost::Top, Cost::Top);
        assert!(Cost::Top > Cost::Finite(u64::MAX));
        assert_eq!(CostPair::new(1, Cost::Top), CostPair::TOP);
    }

    #[test]
    fn after_move_flips_roles() {
        let child = CostPair::new(1, 0);
        assert_eq!(child.after_move(5), CostPair::new(5, 1));
    }

    #[test]
    fn rank_orders_own_other_vertex() {
        let a = OptionRank::new(CostPair::new(2, 5), 3);
        let b = OptionRank::new(CostPair::new(2, 4), 7);
        let c = OptionRank::new(CostPair::new(2, 4), 1);
        assert!(c < b && b < a);
    }

    #[test]
    fn best_skips_infeasible() {
        let mut best = Best::new();
        best.offer(CostPair::TOP, 0, 'x');
        best.offer(CostPair::new(4, 4), 2, 'a');
        best.offer(CostPair::new(4, 4), 1, 'b');
        assert_eq!(best.tag(), Some(&'b'));
        assert_eq!(best.value(), CostPair::new(4, 4));
    }
}
