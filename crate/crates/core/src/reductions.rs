//! Game instances built from Generalized Geography and quantified 3-SAT,
//! together with brute-force deciders for both source problems.
//!
//! The constructions produce bipartite graphs, so every vertex is always
//! entered with the same player to move. That is what ties their
//! equilibrium values back to the source instance.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpgError};
use crate::graph::{GameGraph, VertexId};

/// Side of a two-coloring. Green vertices are entered with A to move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Color {
    Green,
    Red,
}

/// A constructed game with its decision bounds and the coloring that
/// witnesses bipartiteness. Vertex labels name the gadget roles.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub graph: GameGraph,
    pub cap_a: u64,
    pub cap_b: u64,
    pub colors: Vec<Color>,
}

impl ReductionOutput {
    /// Vertex carrying a gadget label such as `"q"` or `"v3,5"`.
    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.graph.vertex_by_label(label)
    }

    /// Every edge joins a green and a red vertex.
    pub fn coloring_is_proper(&self) -> bool {
        self.graph.edges().iter().all(|e| self.colors[e.u] != self.colors[e.v])
    }
}

/// Vertex Geography: players alternately extend a directed path from `s`
/// without revisiting vertices. Whoever cannot move loses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeographyInstance {
    pub n: usize,
    pub arcs: Vec<(VertexId, VertexId)>,
    pub s: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Winner {
    /// The player making the first move from `s`.
    A,
    B,
}

impl GeographyInstance {
    pub fn parse(text: &str) -> Result<Self> {
        let geo: GeographyInstance =
            serde_json::from_str(text).map_err(|e| SpgError::MalformedInput(e.to_string()))?;
        geo.check()?;
        Ok(geo)
    }

    fn check(&self) -> Result<()> {
        if self.s >= self.n {
            return Err(SpgError::MalformedInput(format!("s={} out of range 0..{}", self.s, self.n)));
        }
        for &(u, v) in &self.arcs {
            if u >= self.n || v >= self.n {
                return Err(SpgError::MalformedInput(format!("arc ({u},{v}) out of range 0..{}", self.n)));
            }
            if u == v {
                return Err(SpgError::SelfLoop(u));
            }
        }
        Ok(())
    }

    /// Two-coloring of the underlying undirected graph with `s` green.
    pub fn coloring(&self) -> Result<Vec<Color>> {
        self.check()?;
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut color: Vec<Option<Color>> = vec![None; self.n];
        for root in std::iter::once(self.s).chain(0..self.n) {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(Color::Green);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                let other = if color[v] == Some(Color::Green) { Color::Red } else { Color::Green };
                for &w in &adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(other);
                            stack.push(w);
                        }
                        Some(c) if c != other => return Err(SpgError::NotBipartite),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(color.into_iter().map(|c| c.expect("every vertex colored")).collect())
    }
}

/// Exhaustive winner of a vertex Geography game with at most 12 vertices.
pub fn solve_geography(geo: &GeographyInstance) -> Result<Winner> {
    geo.check()?;
    if geo.n > 12 {
        return Err(SpgError::TooLarge(format!("geography with {} vertices (limit 12)", geo.n)));
    }
    let mut succ = vec![Vec::new(); geo.n];
    for &(u, v) in &geo.arcs {
        succ[u].push(v);
    }
    fn mover_wins(v: usize, used: u16, succ: &[Vec<usize>], memo: &mut HashMap<(usize, u16), bool>) -> bool {
        if let Some(&w) = memo.get(&(v, used)) {
            return w;
        }
        let wins = succ[v].iter().any(|&w| used & (1 << w) == 0 && !mover_wins(w, used | (1 << w), succ, memo));
        memo.insert((v, used), wins);
        wins
    }
    let a_wins = mover_wins(geo.s, 1 << geo.s, &succ, &mut HashMap::new());
    Ok(if a_wins { Winner::A } else { Winner::B })
}

/// Geography game as a shortest path game: unit arcs, an escape of cost
/// `M` from every green vertex to a new red `t` and from every red vertex to
/// a new green `z`, and a unit arc `z -> t`. Bounds are `(2, M)`.
///
/// `M = |A| + 1`, but at least 3 so that paying it always breaks the bound 2.
pub fn geography_to_spg(geo: &GeographyInstance) -> Result<ReductionOutput> {
    let mut colors = geo.coloring()?;
    let big = (geo.arcs.len() as u64 + 1).max(3);
    let (t, z) = (geo.n, geo.n + 1);
    let mut edges: Vec<(VertexId, VertexId, u64)> = geo.arcs.iter().map(|&(u, v)| (u, v, 1)).collect();
    for (v, c) in colors.iter().enumerate() {
        edges.push(match c {
            Color::Green => (v, t, big),
            Color::Red => (v, z, big),
        });
    }
    edges.push((z, t, 1));
    colors.extend([Color::Red, Color::Green]);
    let mut labels: Vec<String> = (0..geo.n).map(|v| v.to_string()).collect();
    labels.extend(["t".to_string(), "z".to_string()]);
    let graph = GameGraph::new(true, geo.n + 2, &edges, geo.s, t)?.with_labels(labels)?;
    Ok(ReductionOutput { graph, cap_a: 2, cap_b: big, colors })
}

/// Quantified 3-SAT `∃x1 ∀x2 … ∀xn (C1 ∧ … ∧ Cm)` with `n` even. Literals are
/// signed variable indices; `-2` is the negation of `x2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QsatInstance {
    pub n: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl QsatInstance {
    pub fn new(n: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        let q = QsatInstance { n, clauses };
        q.check()?;
        Ok(q)
    }

    fn check(&self) -> Result<()> {
        if self.n == 0 || !self.n.is_multiple_of(2) {
            return Err(SpgError::BadQuantifierPattern);
        }
        for clause in &self.clauses {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > self.n {
                    return Err(SpgError::MalformedInput(format!("literal {lit} outside 1..={}", self.n)));
                }
            }
        }
        Ok(())
    }

    /// Text form: a line `n m`, then `m` lines of three signed variable indices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let bad = |msg: String| SpgError::MalformedInput(msg);
        let header = lines.next().ok_or_else(|| bad("missing header line `n m`".into()))?;
        let nums = |line: &str| -> Result<Vec<i64>> {
            line.split_whitespace().map(|w| w.parse::<i64>().map_err(|_| bad(format!("not an integer: {w}")))).collect()
        };
        let head = nums(header)?;
        let [n, m] = head[..] else { return Err(bad(format!("header needs two numbers, got `{header}`"))) };
        if n < 0 || m < 0 {
            return Err(bad(format!("negative count in header `{header}`")));
        }
        let mut clauses = Vec::with_capacity(m as usize);
        for i in 0..m {
            let line = lines.next().ok_or_else(|| bad(format!("expected {m} clauses, found {i}")))?;
            let lits = nums(line)?;
            let [a, b, c] = lits[..] else { return Err(bad(format!("clause `{line}` needs three literals"))) };
            let lit = |x: i64| i32::try_from(x).map_err(|_| bad(format!("literal {x} out of range")));
            clauses.push([lit(a)?, lit(b)?, lit(c)?]);
        }
        if let Some(extra) = lines.next() {
            return Err(bad(format!("unexpected line after {m} clauses: `{extra}`")));
        }
        QsatInstance::new(n as usize, clauses)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.clauses.len());
        for [a, b, c] in &self.clauses {
            out.push_str(&format!("{a} {b} {c}\n"));
        }
        out
    }

    fn satisfied(&self, assignment: u32) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = assignment & (1 << (lit.unsigned_abs() - 1)) != 0;
                value == (lit > 0)
            })
        })
    }
}

/// Truth value by exhaustive alternating evaluation, for `n <= 16`.
pub fn eval_qbf(q: &QsatInstance) -> Result<bool> {
    q.check()?;
    if q.n > 16 {
        return Err(SpgError::TooLarge(format!("{} variables (limit 16)", q.n)));
    }
    fn eval(q: &QsatInstance, var: usize, assignment: u32) -> bool {
        if var == q.n {
            return q.satisfied(assignment);
        }
        let mut branches = [false, true].into_iter().map(|v| eval(q, var + 1, assignment | (u32::from(v) << var)));
        if var.is_multiple_of(2) {
            branches.any(|b| b)
        } else {
            branches.all(|b| b)
        }
    }
    Ok(eval(q, 0, 0))
}

struct Builder {
    labels: Vec<String>,
    colors: Vec<Color>,
    index: HashMap<String, VertexId>,
    edges: Vec<(VertexId, VertexId, u64)>,
}

impl Builder {
    fn vertex(&mut self, label: String, color: Color) -> VertexId {
        let id = self.labels.len();
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        self.colors.push(color);
        id
    }

    fn id(&self, label: &str) -> VertexId {
        self.index[label]
    }

    fn edge(&mut self, a: &str, b: &str, cost: u64) {
        let (u, v) = (self.id(a), self.id(b));
        if !self.edges.iter().any(|&(x, y, _)| (x, y) == (u, v) || (x, y) == (v, u)) {
            self.edges.push((u, v, cost));
        }
    }
}

fn gadget(i: usize, pos: usize) -> String {
    format!("v{i},{pos}")
}

/// Vertex whose clause edge stands for literal `lit`: it sits on the side
/// of the complementary literal, so the edge is blocked exactly when the
/// literal was not chosen.
fn literal_vertex(lit: i32) -> String {
    let i = lit.unsigned_abs() as usize;
    let pos = match (i % 2 == 1, lit > 0) {
        (true, true) => 5,
        (true, false) => 1,
        (false, true) => 6,
        (false, false) => 2,
    };
    gadget(i, pos)
}

/// Quantified 3-SAT as an undirected bipartite game with bounds `(0, 2)`.
///
/// Variable `x_i` gets a hexagon (odd `i`) or an octagon (even `i`) entered
/// at position 0; going round one side or the other fixes its value. The
/// gadgets are chained through connectors `u_i`, the last one leads to
/// `p`, `q` and the clause vertices, and `r`, `w`, `d` provide the escapes
/// to `t`.
pub fn qsat_to_spg(q: &QsatInstance) -> Result<ReductionOutput> {
    q.check()?;
    use Color::{Green, Red};
    let mut b = Builder { labels: Vec::new(), colors: Vec::new(), index: HashMap::new(), edges: Vec::new() };
    for i in 1..=q.n {
        let (len, first) = if i % 2 == 1 { (6, Green) } else { (8, Red) };
        if i % 2 == 0 {
            b.vertex(format!("u{i}"), Green);
        }
        for pos in 0..len {
            let color = if (pos % 2 == 0) == (first == Green) { Green } else { Red };
            b.vertex(gadget(i, pos), color);
        }
    }
    for (label, color) in [("d", Green), ("p", Green), ("r", Green), ("w", Red), ("q", Red), ("t", Red)] {
        b.vertex(label.into(), color);
    }
    for j in 1..=q.clauses.len() {
        b.vertex(format!("c{j}"), Green);
    }

    b.edge("p", "q", 0);
    b.edge("r", "t", 0);
    b.edge("w", "d", 0);
    b.edge("d", "t", 0);
    for i in 1..=q.n {
        let len = if i % 2 == 1 { 6 } else { 8 };
        for pos in 0..len {
            b.edge(&gadget(i, pos), &gadget(i, (pos + 1) % len), 0);
        }
        let (left, right) = if i % 2 == 1 { (1, 5) } else { (2, 6) };
        b.edge(&gadget(i, left), "r", 2);
        b.edge(&gadget(i, right), "r", 2);
        if i % 2 == 0 {
            let u = format!("u{i}");
            b.edge(&gadget(i - 1, 3), &u, 0);
            b.edge(&u, &gadget(i, 0), 0);
            if i == q.n {
                b.edge(&gadget(i, 4), "p", 1);
            } else {
                b.edge(&gadget(i, 4), &gadget(i + 1, 0), 0);
            }
        }
    }
    for (j, clause) in q.clauses.iter().enumerate() {
        let c = format!("c{}", j + 1);
        for &lit in clause {
            b.edge(&c, &literal_vertex(lit), 3);
        }
        b.edge("q", &c, 0);
        b.edge("w", &c, 4);
    }

    let (s, t) = (b.id("v1,0"), b.id("t"));
    let graph = GameGraph::new(false, b.labels.len(), &b.edges, s, t)?.with_labels(b.labels)?;
    Ok(ReductionOutput { graph, cap_a: 0, cap_b: 2, colors: b.colors })
}

/// Vertex count of the quantified 3-SAT construction.
pub fn qsat_vertex_count(n: usize, m: usize) -> usize {
    6 + m + 7 * n + n / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{solve, spgd, EngineMode};
    use crate::rules::{apply_move, check_move, initial_state, legal_moves, Move};

    fn geo(n: usize, arcs: &[(usize, usize)]) -> GeographyInstance {
        GeographyInstance { n, arcs: arcs.to_vec(), s: 0 }
    }

    #[test]
    fn geography_winners() {
        assert_eq!(solve_geography(&geo(2, &[(0, 1)])).unwrap(), Winner::A);
        assert_eq!(solve_geography(&geo(2, &[(1, 0)])).unwrap(), Winner::B);
        // s -> 1 -> 2 -> s: A, B, then A is stuck at 2 because s is used
        assert_eq!(solve_geography(&geo(3, &[(0, 1), (1, 2), (2, 0)])).unwrap(), Winner::B);
        assert!(matches!(solve_geography(&geo(13, &[])), Err(SpgError::TooLarge(_))));
    }

    #[test]
    fn single_arc_geography_builds_four_vertices() {
        let out = geography_to_spg(&geo(2, &[(0, 1)])).unwrap();
        assert_eq!(out.graph.n(), 4);
        assert_eq!(out.cap_b, 3);
        assert!(out.coloring_is_proper());
        assert!(spgd(&out.graph, out.cap_a, out.cap_b, EngineMode::Memoized).unwrap());
    }

    #[test]
    fn stuck_start_pays_the_escape() {
        let out = geography_to_spg(&geo(2, &[(1, 0)])).unwrap();
        let sol = solve(&out.graph, EngineMode::Memoized).unwrap();
        assert_eq!(sol.cost_a, out.cap_b);
        assert!(!spgd(&out.graph, out.cap_a, out.cap_b, EngineMode::Memoized).unwrap());
    }

    #[test]
    fn odd_geography_cycle_is_rejected() {
        assert_eq!(geography_to_spg(&geo(3, &[(0, 1), (1, 2), (2, 0)])).unwrap_err(), SpgError::NotBipartite);
    }

    #[test]
    fn qbf_evaluation() {
        let taut = QsatInstance::new(2, vec![[-1, -2, 1]]).unwrap();
        assert!(eval_qbf(&taut).unwrap());
        assert!(eval_qbf(&QsatInstance::new(2, vec![]).unwrap()).unwrap());
        let false_q = QsatInstance::new(2, vec![[1, 1, 2], [1, 1, -2], [-1, -1, 2], [-1, -1, -2]]).unwrap();
        assert!(!eval_qbf(&false_q).unwrap());
        // exists x1 forall x2: (x1 or x2) and (x1 or not x2) holds with x1 true
        assert!(eval_qbf(&QsatInstance::new(2, vec![[1, 1, 2], [1, 1, -2]]).unwrap()).unwrap());
        assert_eq!(QsatInstance::new(3, vec![]).unwrap_err(), SpgError::BadQuantifierPattern);
    }

    #[test]
    fn qsat_text_round_trip() {
        let q = QsatInstance::parse("2 2\n1 -2 2\n-1 -1 2\n").unwrap();
        assert_eq!(q.clauses, vec![[1, -2, 2], [-1, -1, 2]]);
        assert_eq!(QsatInstance::parse(&q.to_text()).unwrap(), q);
        assert!(QsatInstance::parse("2 1\n1 2\n").is_err());
        assert!(QsatInstance::parse("2 1\n1 2 3\n").is_err());
    }

    #[test]
    fn qsat_gadget_structure() {
        let q = QsatInstance::new(4, vec![[-1, -2, 3], [-1, -3, -4]]).unwrap();
        let out = qsat_to_spg(&q).unwrap();
        assert_eq!(out.graph.n(), qsat_vertex_count(4, 2));
        assert!(out.coloring_is_proper());
        assert!(out.graph.bipartition().is_some());
        assert_eq!((out.cap_a, out.cap_b), (0, 2));
        for j in ["c1", "c2"] {
            let c = out.vertex(j).unwrap();
            assert_eq!(out.graph.out_arcs(c).len(), 5);
        }
        let c1 = out.vertex("c1").unwrap();
        let attached: Vec<&str> = out.graph.out_arcs(c1).iter().map(|a| out.graph.label(a.to)).collect();
        for expected in ["v1,1", "v2,2", "v3,5", "q", "w"] {
            assert!(attached.contains(&expected), "{expected} missing from {attached:?}");
        }
        // a repeated literal shares one edge
        let out = qsat_to_spg(&QsatInstance::new(2, vec![[1, 1, 2]]).unwrap()).unwrap();
        assert_eq!(out.graph.out_arcs(out.vertex("c1").unwrap()).len(), 4);
    }

    #[test]
    fn qsat_equilibrium_values() {
        let taut = qsat_to_spg(&QsatInstance::new(2, vec![[-1, -2, 1]]).unwrap()).unwrap();
        let sol = solve(&taut.graph, EngineMode::Memoized).unwrap();
        assert_eq!((sol.cost_a, sol.cost_b), (0, 2));
        let false_q = QsatInstance::new(2, vec![[1, 1, 2], [1, 1, -2], [-1, -1, 2], [-1, -1, -2]]).unwrap();
        let out = qsat_to_spg(&false_q).unwrap();
        let sol = solve(&out.graph, EngineMode::Memoized).unwrap();
        assert_eq!((sol.cost_a, sol.cost_b), (4, 1));
    }

    #[test]
    fn hexagon_deadlock_forbids_closing_the_gadget() {
        // x3 chosen on the way down, then B picks the clause containing x3
        // and A answers into v3,5; B may not step onto v3,4 afterwards.
        let q = QsatInstance::new(4, vec![[3, 3, 3]]).unwrap();
        let out = qsat_to_spg(&q).unwrap();
        let g = &out.graph;
        let script = [
            "v1,1", "v1,2", "v1,3", "u2", "v2,0", "v2,1", "v2,2", "v2,3", "v2,4", "v3,0", "v3,1", "v3,2", "v3,3",
            "u4", "v4,0", "v4,1", "v4,2", "v4,3", "v4,4", "p", "q", "c1", "v3,5",
        ];
        let mut state = initial_state(g);
        for label in script {
            let next = out.vertex(label).unwrap();
            let mv = legal_moves(g, &state).unwrap().into_iter().find(|m: &Move| m.next == next);
            let mv = mv.unwrap_or_else(|| panic!("move to {label} should be legal"));
            state = apply_move(g, &state, mv).unwrap();
        }
        let v34 = out.vertex("v3,4").unwrap();
        assert_eq!(check_move(g, &state, v34).unwrap_err(), SpgError::IllegalMove { to: v34, rule: crate::RuleTag::R1 });
        let r = out.vertex("r").unwrap();
        assert!(legal_moves(g, &state).unwrap().iter().any(|m| m.next == r));
    }
}
