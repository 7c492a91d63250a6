//! The cactus solver against the exhaustive engine on small instances.
//!
//! Besides plain random cacti, two hand-shaped families make sure the rarer
//! strip-cycle phases (turning back after a swap, detours past the exit in
//! both directions) actually occur.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spg_core::cactus::{solve_cactus, solve_directed_cactus};
use spg_core::engine::{solve, EngineMode};
use spg_core::gen::{random_cactus, random_directed_cactus, CostRegime};
use spg_core::rules::replay;
use spg_core::GameGraph;

fn describe(g: &GameGraph) -> String {
    let edges: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.cost)).collect();
    format!("directed {} s {} t {} edges {:?}", g.is_directed(), g.source(), g.sink(), edges)
}

/// Same costs as the engine, a legal walk, and the same walk when ties are
/// impossible.
fn agree(g: &GameGraph, same_walk: bool) -> Result<(), String> {
    let e = solve(g, EngineMode::Memoized).map_err(|err| format!("engine: {err}"))?;
    let c = if g.is_directed() { solve_directed_cactus(g) } else { solve_cactus(g) };
    let c = c.map_err(|err| format!("cactus: {err} on {}", describe(g)))?;
    replay(g, &c.walk).map_err(|err| format!("illegal walk {:?} ({err}) on {}", c.walk, describe(g)))?;
    if (e.cost_a, e.cost_b) != (c.cost_a, c.cost_b) || (same_walk && e.walk != c.walk) {
        return Err(format!(
            "engine ({}, {}) {:?} vs cactus ({}, {}) {:?} on {}",
            e.cost_a, e.cost_b, e.walk, c.cost_a, c.cost_b, c.walk, describe(g)
        ));
    }
    Ok(())
}

fn run_all(count: u64, make: impl Fn(u64) -> (GameGraph, bool)) {
    let failures: Vec<String> = (0..count)
        .filter_map(|seed| {
            let (g, same_walk) = make(seed);
            agree(&g, same_walk).err().map(|m| format!("seed {seed}: {m}"))
        })
        .collect();
    assert!(failures.is_empty(), "{} mismatches, first: {}", failures.len(), failures[0]);
}

fn regime(seed: u64) -> CostRegime {
    match seed % 4 {
        0 => CostRegime::Distinct,
        1 => CostRegime::Ones,
        2 => CostRegime::Uniform(0, 3),
        _ => CostRegime::Uniform(0, 1),
    }
}

#[test]
fn random_undirected_cacti_match_engine() {
    run_all(3000, |seed| {
        let r = regime(seed);
        (random_cactus(3 + (seed % 12) as usize, r, seed), r == CostRegime::Distinct)
    });
}

#[test]
fn random_directed_cacti_match_engine() {
    run_all(2000, |seed| {
        let r = regime(seed);
        (random_directed_cactus(3 + (seed % 12) as usize, r, seed), r == CostRegime::Distinct)
    });
}

fn triangle_at(edges: &mut Vec<(usize, usize)>, n: &mut usize, at: usize) {
    edges.extend([(at, *n), (*n, *n + 1), (*n + 1, at)]);
    *n += 2;
}

/// One strip cycle with pendant triangles before its exit and a bridge after
/// it, so that turning back and both detour kinds are worth considering.
fn turn_back_shape(seed: u64) -> GameGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.random_range(5..=7);
    let l = rng.random_range(3..len - 1);
    let mut edges: Vec<(usize, usize)> = (0..len).map(|i| (i, (i + 1) % len)).collect();
    let mut n = len;
    for p in 1..l {
        if rng.random_bool(0.8) {
            triangle_at(&mut edges, &mut n, p);
        }
    }
    if rng.random_bool(0.5) {
        let p = rng.random_range(l + 1..len);
        triangle_at(&mut edges, &mut n, p);
    }
    edges.push((l, n));
    let mut t = n;
    n += 1;
    if rng.random_bool(0.5) {
        triangle_at(&mut edges, &mut n, t);
        edges.push((t, n));
        t = n;
        n += 1;
    }
    let hi = rng.random_range(1..=12);
    let weighted: Vec<_> = edges.iter().map(|&(u, v)| (u, v, rng.random_range(0..=hi))).collect();
    GameGraph::new(false, n, &weighted, 0, t).unwrap()
}

#[test]
fn turn_back_shapes_match_engine() {
    run_all(4000, |seed| (turn_back_shape(seed), false));
}

/// Up to two strip cycles with triangles and triangle-on-a-stick branches on
/// random cycle vertices; a quarter of them get random orientations.
fn strip_heavy(seed: u64) -> Option<GameGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let directed = seed.is_multiple_of(4);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let (mut n, mut cur) = (1, 0);
    let mut on_cycles = Vec::new();
    for _ in 0..rng.random_range(1..=2) {
        if rng.random_bool(0.3) {
            edges.push((cur, n));
            cur = n;
            n += 1;
        }
        let first = n;
        let mut prev = cur;
        for _ in 1..rng.random_range(3..=7) {
            edges.push((prev, n));
            on_cycles.push(n);
            prev = n;
            n += 1;
        }
        edges.push((prev, cur));
        on_cycles.push(cur);
        cur = rng.random_range(first..n);
    }
    let t = cur;
    for _ in 0..rng.random_range(1..=4) {
        let at = on_cycles[rng.random_range(0..on_cycles.len())];
        if n > 14 || at == t {
            continue;
        }
        if rng.random_bool(0.67) {
            triangle_at(&mut edges, &mut n, at);
        } else {
            let stick = n;
            edges.push((at, stick));
            n += 1;
            triangle_at(&mut edges, &mut n, stick);
        }
    }
    let hi = if seed.is_multiple_of(2) { 9 } else { 2 };
    let weighted: Vec<_> = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = if directed && rng.random_bool(0.5) { (v, u) } else { (u, v) };
            (a, b, rng.random_range(0..=hi))
        })
        .collect();
    let g = GameGraph::new(directed, n, &weighted, 0, t).ok()?;
    g.reachable_from(0)[t].then_some(g)
}

#[test]
fn strip_heavy_shapes_match_engine() {
    let failures: Vec<String> = (0..6000u64)
        .filter_map(|seed| strip_heavy(seed).and_then(|g| agree(&g, false).err().map(|m| format!("seed {seed}: {m}"))))
        .collect();
    assert!(failures.is_empty(), "{} mismatches, first: {}", failures.len(), failures[0]);
}
