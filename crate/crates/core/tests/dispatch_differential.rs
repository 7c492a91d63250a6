//! Auto-dispatch never changes the answer: on each graph class it agrees
//! with the memoized engine.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spg_core::dispatch::{solve_with, Algorithm};
use spg_core::engine::{self, EngineMode};
use spg_core::gen::{random_cactus, random_dag, random_directed_cactus, CostRegime};
use spg_core::rules::replay;
use spg_core::GameGraph;

fn random_tree(n: usize, seed: u64) -> GameGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut costs: Vec<u64> = (1..n as u64).collect();
    costs.shuffle(&mut rng);
    let edges: Vec<_> = (1..n).map(|v| (rng.random_range(0..v), v, costs[v - 1])).collect();
    let s = rng.random_range(0..n);
    let t = (s + rng.random_range(1..n)) % n;
    GameGraph::new(false, n, &edges, s, t).unwrap()
}

/// Dense random graph with a forced path from 0 to n - 1.
fn random_general(n: usize, directed: bool, seed: u64) -> GameGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let forced = v == u + 1;
            if u != v && (directed || u < v) && (forced || rng.random_bool(0.45)) {
                edges.push((u, v, rng.random_range(0..=6)));
            }
        }
    }
    GameGraph::new(directed, n, &edges, 0, n - 1).unwrap()
}

fn agree(g: &GameGraph, expected: Algorithm, label: &str) {
    let want = engine::solve(g, EngineMode::Memoized).unwrap();
    let (got, used) = solve_with(g, Algorithm::Auto).unwrap();
    assert_eq!(used, expected, "{label}: dispatched to {used}");
    assert_eq!((got.cost_a, got.cost_b), (want.cost_a, want.cost_b), "{label}: walks {:?} vs {:?}", got.walk, want.walk);
    let report = replay(g, &got.walk).unwrap();
    assert_eq!((report.cost_a, report.cost_b), (got.cost_a, got.cost_b), "{label}");
}

#[test]
fn trees() {
    for seed in 0..200 {
        agree(&random_tree(2 + (seed % 11) as usize, seed), Algorithm::Tree, &format!("tree {seed}"));
    }
}

#[test]
fn dags() {
    for seed in 0..200 {
        let g = random_dag(3 + (seed % 8) as usize, 0.5, CostRegime::Uniform(0, 5), seed);
        let expected = if g.classify().is_tree { Algorithm::Tree } else { Algorithm::Dag };
        agree(&g, expected, &format!("dag {seed}"));
    }
}

#[test]
fn cacti() {
    for seed in 0..200 {
        let g = random_cactus(3 + (seed % 10) as usize, CostRegime::Uniform(0, 5), seed);
        let expected = if g.classify().is_tree { Algorithm::Tree } else { Algorithm::Cactus };
        agree(&g, expected, &format!("cactus {seed}"));
    }
}

#[test]
fn directed_cacti() {
    for seed in 0..200 {
        let g = random_directed_cactus(3 + (seed % 10) as usize, CostRegime::Uniform(0, 5), seed);
        let class = g.classify();
        let expected = if class.is_dag { Algorithm::Dag } else { Algorithm::DirectedCactus };
        agree(&g, expected, &format!("directed cactus {seed}"));
    }
}

#[test]
fn general_graphs() {
    let mut general = 0;
    for seed in 0..400 {
        let g = random_general(4 + (seed % 5) as usize, seed % 2 == 0, seed);
        let class = g.classify();
        if class.is_tree || class.is_dag || class.is_cactus || class.is_directed_cactus {
            continue;
        }
        agree(&g, Algorithm::Engine, &format!("general {seed}"));
        general += 1;
    }
    assert!(general >= 200, "only {general} general instances");
}
