//! Splitting a cactus into its connection strip and the branches hanging off
//! it.

use std::collections::VecDeque;

use crate::cost::Cost;
use crate::error::{Result, SpgError};
use crate::graph::{BlockCutTree, GameGraph, VertexId};

/// One block on the way from s to t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StripComponent {
    Bridge { from: VertexId, to: VertexId, cost: Cost },
    /// `order[0]` is the entry vertex and `order[exit]` the exit vertex.
    Cycle { block: usize, order: Vec<VertexId>, exit: usize },
}

/// Blocks every s-t path crosses, in order, with the articulation vertices
/// between them. `junctions[0] = s` and `junctions.last() = t`.
#[derive(Clone, Debug)]
pub struct ConnectionStrip {
    pub junctions: Vec<VertexId>,
    pub components: Vec<StripComponent>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub tree: BlockCutTree,
    pub strip: ConnectionStrip,
    /// Branch blocks with their attachment (root) vertex, ordered so that
    /// every block comes after the blocks hanging below it.
    pub branches: Vec<(usize, VertexId)>,
}

fn check_shape(g: &GameGraph, tree: &BlockCutTree) -> Result<()> {
    let err = if g.is_directed() { SpgError::NotDirectedCactus } else { SpgError::NotCactus };
    if tree.blocks.iter().any(|b| !b.is_bridge() && !b.is_cycle()) {
        return Err(err);
    }
    if g.is_directed() && g.edges().iter().any(|e| g.arc_cost(e.v, e.u).is_some()) {
        return Err(err);
    }
    Ok(())
}

/// Decompose an undirected or directed cactus around its s-t strip.
pub fn decompose(g: &GameGraph) -> Result<Decomposition> {
    let tree = g.underlying_block_cut_tree();
    check_shape(g, &tree)?;
    let n = g.n();
    let nb = tree.blocks.len();

    // Path s -> t in the bipartite vertex/block graph; nodes >= n are blocks.
    let mut parent = vec![usize::MAX; n + nb];
    let mut queue = VecDeque::from([g.source()]);
    parent[g.source()] = g.source();
    while let Some(x) = queue.pop_front() {
        if x == g.sink() {
            break;
        }
        let next: Vec<usize> = if x < n {
            tree.vertex_blocks[x].iter().map(|&b| n + b).collect()
        } else {
            tree.blocks[x - n].vertices.clone()
        };
        for y in next {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    if parent[g.sink()] == usize::MAX {
        return Err(SpgError::NoPathToSink);
    }
    let mut path = vec![g.sink()];
    while *path.last().unwrap() != g.source() {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();

    let junctions: Vec<VertexId> = path.iter().copied().filter(|&x| x < n).collect();
    let strip_blocks: Vec<usize> = path.iter().filter(|&&x| x >= n).map(|&x| x - n).collect();
    let mut on_strip = vec![false; nb];
    let components = strip_blocks
        .iter()
        .zip(junctions.windows(2))
        .map(|(&b, w)| {
            on_strip[b] = true;
            let (entry, exit) = (w[0], w[1]);
            if tree.blocks[b].is_bridge() {
                let cost = g.arc_cost(entry, exit).map_or(Cost::Top, Cost::Finite);
                StripComponent::Bridge { from: entry, to: exit, cost }
            } else {
                let order = tree.cycle_order(g, b, entry);
                let exit = order.iter().position(|&v| v == exit).expect("exit lies on the cycle");
                StripComponent::Cycle { block: b, order, exit }
            }
        })
        .collect();

    // Breadth-first from the strip across the remaining blocks.
    let mut seen_vertex = vec![false; n];
    let mut seen_block = on_strip.clone();
    let mut queue: VecDeque<VertexId> = VecDeque::new();
    for &b in &strip_blocks {
        for &v in &tree.blocks[b].vertices {
            if !seen_vertex[v] {
                seen_vertex[v] = true;
                queue.push_back(v);
            }
        }
    }
    if !seen_vertex[g.source()] {
        seen_vertex[g.source()] = true;
        queue.push_back(g.source());
    }
    let mut branches = Vec::new();
    while let Some(v) = queue.pop_front() {
        for &b in &tree.vertex_blocks[v] {
            if seen_block[b] {
                continue;
            }
            seen_block[b] = true;
            branches.push((b, v));
            for &w in &tree.blocks[b].vertices {
                if !seen_vertex[w] {
                    seen_vertex[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    branches.reverse();

    Ok(Decomposition { tree, strip: ConnectionStrip { junctions, components }, branches })
}
