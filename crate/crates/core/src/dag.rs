//! Linear-time equilibrium computation on directed acyclic graphs.
//!
//! On a DAG no vertex can be revisited, so the value of a vertex does not
//! depend on the history and one sweep in reverse topological order suffices.

use crate::cost::{Best, CostPair};
use crate::error::{Result, SpgError};
use crate::graph::{GameGraph, VertexId};
use crate::solution::Solution;

/// Per-vertex decider/follower costs and the chosen successor.
#[derive(Clone, Debug)]
pub struct DagTables {
    /// `value[v]` holds (p_d(v), p_f(v)).
    pub value: Vec<CostPair>,
    pub choice: Vec<Option<VertexId>>,
    /// Number of arcs whose contribution was evaluated.
    pub evaluated_arcs: u64,
}

impl DagTables {
    pub fn p_d(&self, v: VertexId) -> crate::cost::Cost {
        self.value[v].decider
    }

    pub fn p_f(&self, v: VertexId) -> crate::cost::Cost {
        self.value[v].follower
    }
}

pub fn dag_tables(g: &GameGraph) -> Result<DagTables> {
    if !g.is_directed() {
        return Err(SpgError::NotADag);
    }
    let order = g.topological_order().map_err(|_| SpgError::NotADag)?;
    let reaches = g.vertices_reaching(g.sink());
    let n = g.n();
    let mut value = vec![CostPair::TOP; n];
    let mut choice = vec![None; n];
    let mut evaluated_arcs = 0u64;
    value[g.sink()] = CostPair::ZERO;
    for &v in order.iter().rev() {
        if v == g.sink() {
            evaluated_arcs += g.out_arcs(v).len() as u64;
            continue;
        }
        let mut best = Best::new();
        for a in g.out_arcs(v) {
            evaluated_arcs += 1;
            if reaches[a.to] {
                best.offer(value[a.to].after_move(a.cost), a.to, ());
            }
        }
        value[v] = best.value();
        choice[v] = best.next_vertex();
    }
    Ok(DagTables { value, choice, evaluated_arcs })
}

/// Equilibrium play on a DAG.
pub fn solve_dag(g: &GameGraph) -> Result<Solution> {
    let tables = dag_tables(g)?;
    if !tables.value[g.source()].is_feasible() {
        return Err(SpgError::NoPathToSink);
    }
    let mut walk = vec![g.source()];
    let mut v = g.source();
    while v != g.sink() {
        v = tables.choice[v].expect("feasible vertex has a choice");
        walk.push(v);
    }
    Ok(Solution::from_walk(g, walk, tables.evaluated_arcs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::Cost;

    fn example2() -> GameGraph {
        GameGraph::new(true, 6, &[(0, 1, 5), (1, 3, 1), (1, 2, 2), (3, 4, 5), (3, 5, 6), (2, 4, 1), (4, 5, 1)], 0, 5)
            .unwrap()
    }

    #[test]
    fn example2_tables() {
        let g = example2();
        let t = dag_tables(&g).unwrap();
        assert_eq!(t.value[3], CostPair::new(5, 1));
        assert_eq!(t.value[1], CostPair::new(2, 5));
        assert_eq!(t.evaluated_arcs, 7);
        let sol = solve_dag(&g).unwrap();
        assert_eq!((sol.cost_a, sol.cost_b, sol.walk), (10, 2, vec![0, 1, 3, 4, 5]));
    }

    #[test]
    fn dead_end_vertices_are_top() {
        let g = GameGraph::new(true, 4, &[(0, 1, 1), (0, 2, 0), (1, 3, 1)], 0, 3).unwrap();
        let t = dag_tables(&g).unwrap();
        assert_eq!(t.p_d(2), Cost::Top);
        assert_eq!(solve_dag(&g).unwrap().walk, vec![0, 1, 3]);
    }

    #[test]
    fn diamond_tie_takes_lower_id() {
        let g = GameGraph::new(true, 4, &[(0, 2, 1), (0, 1, 1), (1, 3, 5), (2, 3, 5)], 0, 3).unwrap();
        assert_eq!(solve_dag(&g).unwrap().walk, vec![0, 1, 3]);
    }

    #[test]
    fn rejects_cycles_and_undirected() {
        let cyc = GameGraph::new(true, 3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)], 0, 2).unwrap();
        assert_eq!(solve_dag(&cyc).unwrap_err(), SpgError::NotADag);
        let und = GameGraph::new(false, 2, &[(0, 1, 1)], 0, 1).unwrap();
        assert_eq!(solve_dag(&und).unwrap_err(), SpgError::NotADag);
    }
}
