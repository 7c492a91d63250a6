//! Graph representation, validation, classification and the structural
//! decompositions the solvers dispatch on.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{Result, SpgError};
use crate::io::GraphDocument;

/// Dense vertex index; input order doubles as the tie-breaking numbering.
pub type VertexId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub cost: u64,
}

/// One traversable direction of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub to: VertexId,
    pub cost: u64,
    pub edge: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ValidateOptions {
    /// Reject zero-cost edges.
    pub strict_positive: bool,
}

/// Immutable weighted game graph with designated source and sink.
#[derive(Clone, Debug)]
pub struct GameGraph {
    directed: bool,
    labels: Vec<String>,
    edges: Vec<Edge>,
    s: VertexId,
    t: VertexId,
    out_arcs: Vec<Vec<Arc>>,
    in_arcs: Vec<Vec<Arc>>,
}

impl GameGraph {
    /// Build and validate a graph from plain parts; labels default to indices.
    pub fn new(directed: bool, n: usize, edges: &[(VertexId, VertexId, u64)], s: VertexId, t: VertexId) -> Result<Self> {
        let doc = GraphDocument {
            directed,
            n,
            labels: None,
            edges: edges.iter().map(|&(u, v, c)| (u, v, c as i64)).collect(),
            s,
            t,
        };
        Self::from_document(&doc, ValidateOptions::default())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(SpgError::MalformedInput(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Validate a raw description: index ranges, costs, self-loops, parallel
    /// edges and s-t reachability.
    pub fn from_document(doc: &GraphDocument, opts: ValidateOptions) -> Result<Self> {
        let n = doc.n;
        if n == 0 {
            return Err(SpgError::MalformedInput("graph has no vertices".into()));
        }
        if doc.s >= n || doc.t >= n {
            return Err(SpgError::MalformedInput(format!("s={} or t={} out of range 0..{n}", doc.s, doc.t)));
        }
        let labels = match &doc.labels {
            Some(l) if l.len() != n => {
                return Err(SpgError::MalformedInput(format!("{} labels for {n} vertices", l.len())))
            }
            Some(l) => l.clone(),
            None => (0..n).map(|v| v.to_string()).collect(),
        };
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(doc.edges.len());
        for &(u, v, cost) in &doc.edges {
            if u >= n || v >= n {
                return Err(SpgError::MalformedInput(format!("edge ({u},{v}) out of range 0..{n}")));
            }
            if cost < 0 {
                return Err(SpgError::NegativeCost { u, v, cost });
            }
            if cost == 0 && opts.strict_positive {
                return Err(SpgError::ZeroCost { u, v });
            }
            if u == v {
                return Err(SpgError::SelfLoop(u));
            }
            let key = if doc.directed { (u, v) } else { (u.min(v), u.max(v)) };
            if !seen.insert(key) {
                return Err(SpgError::ParallelEdge(u, v));
            }
            edges.push(Edge { u, v, cost: cost as u64 });
        }

        let mut out_arcs = vec![Vec::new(); n];
        let mut in_arcs = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out_arcs[e.u].push(Arc { to: e.v, cost: e.cost, edge: i });
            in_arcs[e.v].push(Arc { to: e.u, cost: e.cost, edge: i });
            if !doc.directed {
                out_arcs[e.v].push(Arc { to: e.u, cost: e.cost, edge: i });
                in_arcs[e.u].push(Arc { to: e.v, cost: e.cost, edge: i });
            }
        }
        for list in out_arcs.iter_mut().chain(in_arcs.iter_mut()) {
            list.sort_by_key(|a| a.to);
        }

        let g = GameGraph { directed: doc.directed, labels, edges, s: doc.s, t: doc.t, out_arcs, in_arcs };
        if !g.vertices_reaching(g.t)[g.s] {
            return Err(SpgError::NoPathToSink);
        }
        Ok(g)
    }

    pub fn to_document(&self) -> GraphDocument {
        let default_labels = self.labels.iter().enumerate().all(|(i, l)| *l == i.to_string());
        GraphDocument {
            directed: self.directed,
            n: self.n(),
            labels: if default_labels { None } else { Some(self.labels.clone()) },
            edges: self.edges.iter().map(|e| (e.u, e.v, e.cost as i64)).collect(),
            s: self.s,
            t: self.t,
        }
    }

    pub fn n(&self) -> usize {
        self.out_arcs.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn source(&self) -> VertexId {
        self.s
    }

    pub fn sink(&self) -> VertexId {
        self.t
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    /// Arcs leaving `v`, sorted by target id.
    pub fn out_arcs(&self, v: VertexId) -> &[Arc] {
        &self.out_arcs[v]
    }

    pub fn in_arcs(&self, v: VertexId) -> &[Arc] {
        &self.in_arcs[v]
    }

    /// Cost of the arc `u -> v`, if it exists.
    pub fn arc_cost(&self, u: VertexId, v: VertexId) -> Option<u64> {
        self.out_arcs[u].binary_search_by_key(&v, |a| a.to).ok().map(|i| self.out_arcs[u][i].cost)
    }

    /// Neighbors ignoring direction, as (neighbor, edge index) sorted by neighbor.
    pub fn undirected_neighbors(&self, v: VertexId) -> Vec<(VertexId, usize)> {
        if !self.directed {
            return self.out_arcs[v].iter().map(|a| (a.to, a.edge)).collect();
        }
        let mut all: Vec<_> = self.out_arcs[v].iter().chain(self.in_arcs[v].iter()).map(|a| (a.to, a.edge)).collect();
        all.sort_unstable();
        all
    }

    /// Vertices from which `target` is reachable, as a membership vector.
    pub fn vertices_reaching(&self, target: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([target]);
        seen[target] = true;
        while let Some(v) = queue.pop_front() {
            for a in &self.in_arcs[v] {
                if !seen[a.to] {
                    seen[a.to] = true;
                    queue.push_back(a.to);
                }
            }
        }
        seen
    }

    /// Vertices reachable from `start` along arcs.
    pub fn reachable_from(&self, start: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for a in &self.out_arcs[v] {
                if !seen[a.to] {
                    seen[a.to] = true;
                    queue.push_back(a.to);
                }
            }
        }
        seen
    }

    /// Topological order (Kahn, smallest ready id first).
    pub fn topological_order(&self) -> Result<Vec<VertexId>> {
        if !self.directed {
            return Err(SpgError::CycleDetected);
        }
        let n = self.n();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_arcs[v].len()).collect();
        let mut ready: BinaryHeap<Reverse<VertexId>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for a in &self.out_arcs[v] {
                indeg[a.to] -= 1;
                if indeg[a.to] == 0 {
                    ready.push(Reverse(a.to));
                }
            }
        }
        if order.len() < n {
            return Err(SpgError::CycleDetected);
        }
        Ok(order)
    }

    /// Minimal total edge cost of an s-t path (Dijkstra).
    pub fn cooperative_shortest_path(&self) -> Cost {
        let mut dist = vec![Cost::Top; self.n()];
        let mut heap = BinaryHeap::new();
        dist[self.s] = Cost::ZERO;
        heap.push(Reverse((0u64, self.s)));
        while let Some(Reverse((d, v))) = heap.pop() {
            if Cost::Finite(d) > dist[v] {
                continue;
            }
            if v == self.t {
                break;
            }
            for a in &self.out_arcs[v] {
                let nd = d + a.cost;
                if Cost::Finite(nd) < dist[a.to] {
                    dist[a.to] = Cost::Finite(nd);
                    heap.push(Reverse((nd, a.to)));
                }
            }
        }
        dist[self.t]
    }

    /// Biconnected decomposition of an undirected graph.
    pub fn block_cut_tree(&self) -> Result<BlockCutTree> {
        if self.directed {
            return Err(SpgError::NotUndirected);
        }
        Ok(BlockCutTree::build(self))
    }

    /// Biconnected decomposition of the underlying undirected graph, for
    /// directed and undirected graphs alike.
    pub fn underlying_block_cut_tree(&self) -> BlockCutTree {
        BlockCutTree::build(self)
    }

    pub fn classify(&self) -> GraphClass {
        let n = self.n();
        let underlying = BlockCutTree::build(self);
        let cactus_blocks = underlying.blocks.iter().all(|b| b.edges.len() == 1 || b.edges.len() == b.vertices.len());
        let connected = {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for (w, _) in self.undirected_neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen.into_iter().all(|x| x)
        };
        let antiparallel = self.directed && self.edges.iter().any(|e| self.arc_cost(e.v, e.u).is_some());

        let is_dag = self.directed && self.topological_order().is_ok();
        let is_tree = !self.directed && connected && self.edges.len() + 1 == n;
        let is_cactus = !self.directed && cactus_blocks;
        let is_directed_cactus = self.directed && !antiparallel && cactus_blocks;
        let is_bipartite = self.bipartition().is_some();
        GraphClass {
            is_tree,
            is_dag,
            is_cactus,
            is_directed_cactus,
            is_bipartite,
            is_general: !(is_tree || is_dag || is_cactus || is_directed_cactus),
        }
    }

    /// Two-coloring of the underlying undirected graph with `s` colored 0.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut color = vec![u8::MAX; n];
        let order = std::iter::once(self.s).chain(0..n);
        for root in order {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for (w, _) in self.undirected_neighbors(v) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }
}

/// Structural classes used to pick a solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClass {
    pub is_tree: bool,
    pub is_dag: bool,
    pub is_cactus: bool,
    pub is_directed_cactus: bool,
    pub is_bipartite: bool,
    pub is_general: bool,
}

/// A biconnected component: a single bridge edge or, in a cactus, a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<usize>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }

    pub fn is_cycle(&self) -> bool {
        self.edges.len() >= 3 && self.edges.len() == self.vertices.len()
    }
}

/// Blocks, articulation vertices and the vertex-to-block incidence of the
/// underlying undirected graph.
#[derive(Clone, Debug)]
pub struct BlockCutTree {
    pub blocks: Vec<Block>,
    pub is_articulation: Vec<bool>,
    /// Blocks containing each vertex.
    pub vertex_blocks: Vec<Vec<usize>>,
}

impl BlockCutTree {
    fn build(g: &GameGraph) -> Self {
        let n = g.n();
        let adj: Vec<Vec<(VertexId, usize)>> = (0..n).map(|v| g.undirected_neighbors(v)).collect();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut edge_stack: Vec<usize> = Vec::new();
        let mut blocks = Vec::new();
        let mut is_articulation = vec![false; n];

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, edge used to enter it, next adjacency index)
            let mut stack: Vec<(VertexId, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(&mut (v, via, ref mut idx)) = stack.last_mut() {
                if *idx < adj[v].len() {
                    let (w, e) = adj[v][*idx];
                    *idx += 1;
                    if e == via {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push(e);
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, e, 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push(e);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            if p != root {
                                is_articulation[p] = true;
                            }
                            let mut edges = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                edges.push(e);
                                if e == via {
                                    break;
                                }
                            }
                            let mut vertices: Vec<VertexId> =
                                edges.iter().flat_map(|&e| [g.edges[e].u, g.edges[e].v]).collect();
                            vertices.sort_unstable();
                            vertices.dedup();
                            edges.sort_unstable();
                            blocks.push(Block { vertices, edges });
                        }
                    }
                }
            }
            if root_children > 1 {
                is_articulation[root] = true;
            }
        }

        let mut vertex_blocks = vec![Vec::new(); n];
        for (i, b) in blocks.iter().enumerate() {
            for &v in &b.vertices {
                vertex_blocks[v].push(i);
            }
        }
        BlockCutTree { blocks, is_articulation, vertex_blocks }
    }

    /// Vertices of a cycle block in cyclic order starting at `start`, walking
    /// first towards the smaller-id neighbor of `start`.
    pub fn cycle_order(&self, g: &GameGraph, block: usize, start: VertexId) -> Vec<VertexId> {
        let b = &self.blocks[block];
        let mut adj: HashMap<VertexId, Vec<VertexId>> = HashMap::with_capacity(b.vertices.len());
        for &e in &b.edges {
            let ed = g.edges[e];
            adj.entry(ed.u).or_default().push(ed.v);
            adj.entry(ed.v).or_default().push(ed.u);
        }
        let first = *adj[&start].iter().min().expect("cycle vertex has neighbors");
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = first;
        while cur != start {
            order.push(cur);
            let ns = &adj[&cur];
            let next = if ns[0] == prev { ns[1] } else { ns[0] };
            prev = cur;
            cur = next;
        }
        order
    }
}
