//! Seeded random instance generators for tests and benchmarks.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::{GameGraph, VertexId};
use crate::reductions::GeographyInstance;

/// How edge costs are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CostRegime {
    /// A random permutation of `1..=|E|`: no two edges cost the same.
    Distinct,
    /// Every edge costs 1.
    Ones,
    /// Independent uniform draws from `lo..=hi`.
    Uniform(u64, u64),
}

fn draw_costs(rng: &mut ChaCha8Rng, m: usize, regime: CostRegime) -> Vec<u64> {
    match regime {
        CostRegime::Distinct => {
            let mut c: Vec<u64> = (1..=m as u64).collect();
            c.shuffle(rng);
            c
        }
        CostRegime::Ones => vec![1; m],
        CostRegime::Uniform(lo, hi) => (0..m).map(|_| rng.random_range(lo..=hi)).collect(),
    }
}

/// Random connected undirected cactus on exactly `n >= 2` vertices built from
/// pendant edges and cycles of length 3 to 7, with shuffled vertex ids and
/// random distinct s and t.
pub fn random_cactus(n: usize, regime: CostRegime, seed: u64) -> GameGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (pairs, s, t) = cactus_shape(&mut rng, n);
    let costs = draw_costs(&mut rng, pairs.len(), regime);
    let edges: Vec<_> = pairs.iter().zip(costs).map(|(&(u, v), c)| (u, v, c)).collect();
    GameGraph::new(false, n, &edges, s, t).expect("generated cactus is valid")
}

fn cactus_shape(rng: &mut ChaCha8Rng, n: usize) -> (Vec<(VertexId, VertexId)>, VertexId, VertexId) {
    assert!(n >= 2, "a game needs at least two vertices");
    let mut pairs = Vec::new();
    let mut count = 1;
    while count < n {
        let at = rng.random_range(0..count);
        let room = n - count;
        let len = if room >= 2 && rng.random_bool(0.6) { rng.random_range(3..=7.min(room + 1)) } else { 2 };
        // a block of `len` vertices adds len - 1 new ones
        let mut prev = at;
        for _ in 1..len {
            pairs.push((prev, count));
            prev = count;
            count += 1;
        }
        if len > 2 {
            pairs.push((prev, at));
        }
    }
    let mut ids: Vec<VertexId> = (0..n).collect();
    ids.shuffle(rng);
    let pairs = pairs.into_iter().map(|(u, v)| (ids[u], ids[v])).collect();
    let s = rng.random_range(0..n);
    let mut t = rng.random_range(0..n - 1);
    if t >= s {
        t += 1;
    }
    (pairs, s, t)
}

/// Random directed cactus: a random cactus whose edges on one s-t path point
/// towards t and all other edges get a random orientation.
pub fn random_directed_cactus(n: usize, regime: CostRegime, seed: u64) -> GameGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (pairs, s, t) = cactus_shape(&mut rng, n);
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut via = vec![None; n];
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &(w, e) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                via[w] = Some((u, e));
                queue.push_back(w);
            }
        }
    }
    let mut oriented: Vec<Option<(VertexId, VertexId)>> = vec![None; pairs.len()];
    let mut cur = t;
    while let Some((u, e)) = via[cur] {
        oriented[e] = Some((u, cur));
        cur = u;
    }
    let costs = draw_costs(&mut rng, pairs.len(), regime);
    let edges: Vec<_> = pairs
        .iter()
        .zip(oriented)
        .zip(costs)
        .map(|((&(u, v), fixed), c)| {
            let (a, b) = fixed.unwrap_or(if rng.random_bool(0.5) { (u, v) } else { (v, u) });
            (a, b, c)
        })
        .collect();
    GameGraph::new(true, n, &edges, s, t).expect("generated directed cactus is valid")
}

/// Random DAG: vertices in a random order, each forward pair joined with
/// probability `p`; s is first and t last in that order. Consecutive pairs
/// are joined as needed until t is reachable.
pub fn random_dag(n: usize, p: f64, regime: CostRegime, seed: u64) -> GameGraph {
    assert!(n >= 2, "a game needs at least two vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut arcs = Vec::new();
    let mut present = std::collections::HashSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                arcs.push((order[i], order[j]));
                present.insert((i, j));
            }
        }
    }
    let reaches_end = |present: &std::collections::HashSet<(usize, usize)>| {
        let mut seen = vec![false; n];
        seen[0] = true;
        for i in 0..n {
            if seen[i] {
                for j in i + 1..n {
                    if present.contains(&(i, j)) {
                        seen[j] = true;
                    }
                }
            }
        }
        seen[n - 1]
    };
    let mut i = 0;
    while !reaches_end(&present) {
        if present.insert((i, i + 1)) {
            arcs.push((order[i], order[i + 1]));
        }
        i += 1;
    }
    let costs = draw_costs(&mut rng, arcs.len(), regime);
    let edges: Vec<_> = arcs.iter().zip(costs).map(|(&(u, v), c)| (u, v, c)).collect();
    GameGraph::new(true, n, &edges, order[0], order[n - 1]).expect("generated DAG is valid")
}

/// Random bipartite Geography instance on `n` vertices: a random coloring
/// with `s = 0` green, and each green-red pair joined with probability `p`
/// in a random direction.
pub fn random_geography(n: usize, p: f64, seed: u64) -> GeographyInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let green: Vec<bool> = (0..n).map(|v| v == 0 || rng.random_bool(0.5)).collect();
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if green[u] != green[v] && rng.random_bool(p) {
                arcs.push(if rng.random_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    GeographyInstance { n, arcs, s: 0 }
}

/// Large layered DAG with roughly `arcs` arcs, for throughput measurements.
pub fn layered_dag(arcs: usize, seed: u64) -> Result<GameGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = 4;
    let layers = (arcs / (width * width)).max(1) + 1;
    let n = layers * width + 2;
    let (s, t) = (n - 2, n - 1);
    let mut edges = Vec::with_capacity(arcs + 2 * width);
    for i in 0..width {
        edges.push((s, i, rng.random_range(0..=20)));
        edges.push(((layers - 1) * width + i, t, rng.random_range(0..=20)));
    }
    for layer in 0..layers - 1 {
        for a in 0..width {
            for b in 0..width {
                edges.push((layer * width + a, (layer + 1) * width + b, rng.random_range(0..=20)));
            }
        }
    }
    GameGraph::new(true, n, &edges, s, t)
}
