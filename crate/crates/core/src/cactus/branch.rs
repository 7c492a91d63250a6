//! Contraction of dead-end branches into swap options.
//!
//! A detour into a branch must come back to where it started, and it may
//! only do so with the other player to move. Bridges can only be part of such
//! a detour if the far end swaps; pendant cycles either go all the way round
//! (odd length, possibly with nested swaps) or turn back after a swap.

use crate::cost::{Best, CostPair};
use crate::graph::{GameGraph, VertexId};

use super::decompose::Decomposition;
use super::{after_swap, compose, CycleView, SwapKind, SwapOption, WalkItem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Move,
    Swap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Reply {
    Onward,
    Back,
}

/// Tables of a pendant cycle walked in one direction from its root.
///
/// `tc[i]`: at position i, first visit, no swap yet; the root's decider is to
/// move iff i is even. `rc[i][m]`: at position i after some swap, where `m`
/// says whether the root's decider is to move. Index `k + 1` is the return to
/// the root.
struct PendantTables {
    tc: Vec<CostPair>,
    rc: Vec<[CostPair; 2]>,
}

struct Pendant<'a> {
    view: &'a CycleView,
    sw: Vec<Option<SwapOption>>,
    tabs: PendantTables,
}

impl<'a> Pendant<'a> {
    fn new(view: &'a CycleView, swaps: &[Option<SwapOption>], cells: &mut u64) -> Self {
        let k = view.k();
        let sw = (0..=k).map(|i| if i == 0 { None } else { swaps[view.at(i)] }).collect();
        let mut p = Pendant {
            view,
            sw,
            tabs: PendantTables { tc: vec![CostPair::TOP; k + 2], rc: vec![[CostPair::TOP; 2]; k + 2] },
        };
        let back_home = |decider_moves: bool| if decider_moves { CostPair::TOP } else { CostPair::ZERO };
        p.tabs.tc[k + 1] = back_home((k + 1).is_multiple_of(2));
        p.tabs.rc[k + 1] = [back_home(false), back_home(true)];
        for i in (1..=k).rev() {
            for m in [false, true] {
                p.tabs.rc[i][m as usize] = p.rc_options(i, m).value();
            }
            p.tabs.tc[i] = p.tc_options(i).value();
            *cells += 3;
        }
        p
    }

    fn rc_options(&self, i: usize, m: bool) -> Best<Step> {
        let mut best = Best::new();
        let up = self.view.up(i);
        best.offer(self.tabs.rc[i + 1][!m as usize].after_move(up), self.view.at(i + 1), Step::Move);
        if let Some(sw) = &self.sw[i] {
            let onward = self.tabs.rc[i + 1][m as usize].after_move(up);
            best.offer(after_swap(Some(sw), onward), sw.first, Step::Swap);
        }
        best
    }

    /// Options of the other player right after a swap at position i of the
    /// no-swap-yet phase.
    fn reply_options(&self, i: usize) -> Best<Reply> {
        let mut best = Best::new();
        let x_is_decider = i.is_multiple_of(2);
        let onward = self.tabs.rc[i + 1][x_is_decider as usize].after_move(self.view.up(i));
        best.offer(onward, self.view.at(i + 1), Reply::Onward);
        best.offer(compose(self.view.seg_down(i, 0), CostPair::ZERO), self.view.at(i - 1), Reply::Back);
        best
    }

    fn tc_options(&self, i: usize) -> Best<Step> {
        let mut best = Best::new();
        best.offer(self.tabs.tc[i + 1].after_move(self.view.up(i)), self.view.at(i + 1), Step::Move);
        if let Some(sw) = &self.sw[i] {
            best.offer(after_swap(Some(sw), self.reply_options(i).value()), sw.first, Step::Swap);
        }
        best
    }

    fn value(&self) -> CostPair {
        self.tabs.tc[1].after_move(self.view.up(0))
    }

    /// Walk items after the root, ending with the return to the root.
    fn trace(&self, out: &mut Vec<WalkItem>) {
        let v = |i: usize| WalkItem::Visit(self.view.at(i));
        let k = self.view.k();
        out.push(v(1));
        let mut i = 1;
        let mut turned: Option<bool> = None;
        while i <= k {
            match turned {
                None => match self.tc_options(i).tag().copied().expect("feasible pendant state") {
                    Step::Move => {
                        out.push(v(i + 1));
                        i += 1;
                    }
                    Step::Swap => {
                        out.push(WalkItem::Swap(self.view.at(i)));
                        match self.reply_options(i).tag().copied().expect("feasible reply") {
                            Reply::Onward => {
                                out.push(v(i + 1));
                                turned = Some(i % 2 == 0);
                                i += 1;
                            }
                            Reply::Back => {
                                out.extend((0..i).rev().map(v));
                                return;
                            }
                        }
                    }
                },
                Some(m) => match self.rc_options(i, m).tag().copied().expect("feasible pendant state") {
                    Step::Move => {
                        out.push(v(i + 1));
                        turned = Some(!m);
                        i += 1;
                    }
                    Step::Swap => {
                        out.push(WalkItem::Swap(self.view.at(i)));
                        out.push(v(i + 1));
                        i += 1;
                    }
                },
            }
        }
    }
}

fn oriented_view(g: &GameGraph, dec: &Decomposition, block: usize, root: VertexId, reversed: bool) -> CycleView {
    let view = CycleView::new(g, dec.tree.cycle_order(g, block, root));
    if reversed {
        view.reversed()
    } else {
        view
    }
}

/// Best swap detour through one pendant cycle block rooted at `root`, over
/// both walking directions. `swaps` must already hold the options of the
/// block's other vertices.
pub fn contract_pendant_cycle(
    g: &GameGraph,
    dec: &Decomposition,
    block: usize,
    root: VertexId,
    swaps: &[Option<SwapOption>],
    cells: &mut u64,
) -> Option<SwapOption> {
    let mut best = None;
    for reversed in [false, true] {
        let view = oriented_view(g, dec, block, root, reversed);
        let value = Pendant::new(&view, swaps, cells).value();
        let option = SwapOption { value, first: view.at(1), kind: SwapKind::Cycle { block, reversed } };
        SwapOption::merge(&mut best, option);
    }
    best
}

/// Swap option of every vertex, from the leaves of the branches upwards.
pub fn contract_branches(g: &GameGraph, dec: &Decomposition, cells: &mut u64) -> Vec<Option<SwapOption>> {
    let mut swaps: Vec<Option<SwapOption>> = vec![None; g.n()];
    for &(block, root) in &dec.branches {
        let b = &dec.tree.blocks[block];
        let candidate = if b.is_bridge() {
            let w = if b.vertices[0] == root { b.vertices[1] } else { b.vertices[0] };
            swaps[w].and_then(|below| {
                let there = g.arc_cost(root, w)?;
                let back = g.arc_cost(w, root)?;
                let value = CostPair::new(below.sw_f() + there + back, below.sw_d());
                Some(SwapOption { value, first: w, kind: SwapKind::Bridge { to: w } })
            })
        } else {
            contract_pendant_cycle(g, dec, block, root, &swaps, cells)
        };
        *cells += 1;
        if let Some(c) = candidate {
            SwapOption::merge(&mut swaps[root], c);
        }
    }
    swaps
}

/// Turn walk items into a vertex walk by expanding every swap detour.
pub(crate) fn expand(
    g: &GameGraph,
    dec: &Decomposition,
    swaps: &[Option<SwapOption>],
    items: &[WalkItem],
) -> Vec<VertexId> {
    let mut walk = Vec::with_capacity(items.len());
    let mut stack: Vec<WalkItem> = items.iter().rev().copied().collect();
    let mut scratch = 0u64;
    while let Some(item) = stack.pop() {
        match item {
            WalkItem::Visit(v) => walk.push(v),
            WalkItem::Swap(v) => {
                let sw = swaps[v].expect("swap item refers to an existing option");
                let detour = match sw.kind {
                    SwapKind::Bridge { to } => vec![WalkItem::Visit(to), WalkItem::Swap(to), WalkItem::Visit(v)],
                    SwapKind::Cycle { block, reversed } => {
                        let view = oriented_view(g, dec, block, v, reversed);
                        let mut out = Vec::new();
                        Pendant::new(&view, swaps, &mut scratch).trace(&mut out);
                        out
                    }
                };
                stack.extend(detour.into_iter().rev());
            }
        }
    }
    walk
}
