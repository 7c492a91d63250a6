//! The backward sweep along the connection strip.
//!
//! A strip cycle is entered at position 0 and left at position `l`. Walking
//! in one direction, play passes through a few phases:
//!
//! * `T(i)`, `0 < i < l`: no swap so far. After a swap at `i` the opponent
//!   may continue, or (if position 0 may still be revisited) walk back to 0
//!   and go round the other side.
//! * `R(i)`, `0 < i < l`: a swap happened, turning back is pointless.
//! * At `l`, first visit: continue into the next component, swap and then
//!   continue without ever returning, or make a forward detour `F`/`G`
//!   beyond `l` that comes back to `l` after a swap (or, in `G`, after going
//!   all the way round through 0).
//! * `A(i, j)`, `l < i <= k`: after turning back at `j` and crossing 0, the
//!   walk approaches `l` from the other side; at `l` a backward detour `B`
//!   towards `j` is possible.
//!
//! All values are relative to the player to move in that phase.

use crate::cost::{Best, Cost, CostPair};
use crate::graph::{GameGraph, VertexId};

use super::decompose::{Decomposition, StripComponent};
use super::{after_swap, compose, Choice, CycleView, SwapOption, WalkItem};

/// What a player arriving at a strip vertex for the first time can do next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExitCosts {
    /// The vertex is t; arriving ends the game.
    pub terminal: bool,
    /// Best entry into the next component when this vertex may be visited
    /// once more.
    pub free: Choice,
    /// Best entry into the next component when this vertex is used up.
    pub sealed: Choice,
    /// Swap option at this vertex.
    pub swap: Option<SwapOption>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Arrive {
    Free,
    SwapSealed,
}

impl ExitCosts {
    pub fn terminal() -> Self {
        ExitCosts { terminal: true, free: Choice::NONE, sealed: Choice::NONE, swap: None }
    }

    fn arrive_options(&self) -> Best<Arrive> {
        let mut best = Best::new();
        best.offer(self.free.value, self.free.next, Arrive::Free);
        if let Some(sw) = &self.swap {
            best.offer(after_swap(Some(sw), self.sealed.value), sw.first, Arrive::SwapSealed);
        }
        best
    }

    /// Value for a player who has just arrived here for the first time.
    pub fn arrive(&self) -> CostPair {
        if self.terminal {
            CostPair::ZERO
        } else {
            self.arrive_options().value()
        }
    }
}

/// Entry into a bridge `u -> w` of cost `cost`, given the exit costs at `w`.
/// Crossing a bridge can never be undone, so the free and sealed entries
/// coincide.
pub fn propagate_bridge(cost: Cost, to: VertexId, at_w: &ExitCosts) -> Choice {
    let value = at_w.arrive().after_move(cost);
    if value.is_feasible() {
        Choice { value, next: to }
    } else {
        Choice::NONE
    }
}

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

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ExitStep {
    Free,
    SwapSealed,
    Detour,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Arrival {
    Clean,
    Swapped,
}

/// Tables for the detour that comes back along the far side after turning
/// back at position `j`.
struct Family {
    j: usize,
    b: Vec<CostPair>,
    exit: CostPair,
    a: Vec<CostPair>,
}

/// One strip cycle, one walking direction, one entry mode.
pub(crate) struct CycleRun<'a> {
    view: &'a CycleView,
    l: usize,
    free: bool,
    turn_back: bool,
    env: &'a ExitCosts,
    sw: Vec<Option<SwapOption>>,
    f: Vec<CostPair>,
    g: Vec<CostPair>,
    h: Vec<[CostPair; 2]>,
    exit_t: CostPair,
    exit_r: CostPair,
    r: Vec<CostPair>,
    t: Vec<CostPair>,
    back: Vec<CostPair>,
}

/// How play continues after leaving a strip cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Continue {
    Terminal,
    Free,
    Sealed,
}

impl<'a> CycleRun<'a> {
    pub fn new(
        view: &'a CycleView,
        l: usize,
        free: bool,
        directed: bool,
        env: &'a ExitCosts,
        swaps: &[Option<SwapOption>],
        cells: &mut u64,
    ) -> Self {
        let k = view.k();
        let sw = (0..=k).map(|i| if i == 0 { None } else { swaps[view.at(i)] }).collect();
        let top = vec![CostPair::TOP; k + 2];
        let mut run = CycleRun {
            view,
            l,
            free,
            turn_back: free && !directed,
            env,
            sw,
            f: top.clone(),
            g: top.clone(),
            h: vec![[CostPair::TOP; 2]; k + 2],
            exit_t: CostPair::ZERO,
            exit_r: CostPair::ZERO,
            r: top.clone(),
            t: top.clone(),
            back: top,
        };
        if !env.terminal {
            for i in (l + 1..=k).rev() {
                run.f[i] = run.f_options(i).value();
            }
            if free {
                let around = compose(view.seg_up(0, l), env.sealed.value);
                run.h[k + 1] = [around, CostPair::TOP];
                for i in (l + 1..=k).rev() {
                    for m in [false, true] {
                        run.h[i][m as usize] = run.h_options(i, m).value();
                    }
                }
                run.g[k + 1] = run.h[k + 1][(k + 1).is_multiple_of(2) as usize];
                for i in (l + 1..=k).rev() {
                    run.g[i] = run.g_options(i).value();
                }
            }
            run.exit_t = run.exit_options(Arrival::Clean).value();
            run.exit_r = run.exit_options(Arrival::Swapped).value();
            *cells += 4 * (k - l) as u64 + 2;
        }
        for i in (1..l).rev() {
            run.r[i] = run.r_options(i).value();
        }
        if run.turn_back {
            for j in 1..l {
                if run.sw[j].is_some() {
                    let fam = run.family(j, cells);
                    run.back[j] = run.turn_back_value(&fam);
                }
            }
        }
        for i in (1..l).rev() {
            run.t[i] = run.t_options(i).value();
        }
        *cells += 2 * l as u64;
        run
    }

    fn sealed(&self) -> CostPair {
        self.env.sealed.value
    }

    /// After a swap beyond `l`, walk back down to `l` and leave for good.
    fn return_from_far(&self, i: usize) -> CostPair {
        compose(self.view.seg_down(i, self.l), self.sealed())
    }

    /// After a swap before `l` on the backward detour, walk up to `l` and leave.
    fn return_from_near(&self, i: usize) -> CostPair {
        compose(self.view.seg_up(i, self.l), self.sealed())
    }

    fn swap_first(&self, i: usize) -> VertexId {
        self.sw[i].map_or(usize::MAX, |s| s.first)
    }

    fn f_options(&self, i: usize) -> Best<Step> {
        let mut best = Best::new();
        best.offer(self.f[i + 1].after_move(self.view.up(i)), self.view.at(i + 1), Step::Move);
        best.offer(after_swap(self.sw[i].as_ref(), self.return_from_far(i)), self.swap_first(i), Step::Swap);
        best
    }

    fn h_options(&self, i: usize, m: bool) -> Best<Step> {
        let mut best = Best::new();
        let up = self.view.up(i);
        best.offer(self.h[i + 1][!m as usize].after_move(up), self.view.at(i + 1), Step::Move);
        let onward = self.h[i + 1][m as usize].after_move(up);
        best.offer(after_swap(self.sw[i].as_ref(), onward), self.swap_first(i), Step::Swap);
        best
    }

    fn g_reply(&self, i: usize) -> Best<Reply> {
        let mut best = Best::new();
        best.offer(self.return_from_far(i), self.view.at(i - 1), Reply::Back);
        let x_is_decider = i.is_multiple_of(2);
        let onward = self.h[i + 1][x_is_decider as usize].after_move(self.view.up(i));
        best.offer(onward, self.view.at(i + 1), Reply::Onward);
        best
    }

    fn g_options(&self, i: usize) -> Best<Step> {
        let mut best = Best::new();
        best.offer(self.g[i + 1].after_move(self.view.up(i)), self.view.at(i + 1), Step::Move);
        if self.sw[i].is_some() {
            best.offer(after_swap(self.sw[i].as_ref(), self.g_reply(i).value()), self.swap_first(i), Step::Swap);
        }
        best
    }

    fn leave_options(&self, best: &mut Best<ExitStep>) {
        best.offer(self.env.free.value, self.env.free.next, ExitStep::Free);
        best.offer(after_swap(self.sw[self.l].as_ref(), self.sealed()), self.swap_first(self.l), ExitStep::SwapSealed);
    }

    fn exit_options(&self, arrival: Arrival) -> Best<ExitStep> {
        let mut best = Best::new();
        self.leave_options(&mut best);
        let beyond = if arrival == Arrival::Clean && self.free { self.g[self.l + 1] } else { self.f[self.l + 1] };
        best.offer(beyond.after_move(self.view.up(self.l)), self.view.at(self.l + 1), ExitStep::Detour);
        best
    }

    fn next_t(&self, i: usize) -> CostPair {
        if i == self.l {
            self.exit_t
        } else {
            self.t[i]
        }
    }

    fn next_r(&self, i: usize) -> CostPair {
        if i == self.l {
            self.exit_r
        } else {
            self.r[i]
        }
    }

    fn r_options(&self, i: usize) -> Best<Step> {
        let mut best = Best::new();
        let onward = self.next_r(i + 1).after_move(self.view.up(i));
        best.offer(onward, self.view.at(i + 1), Step::Move);
        best.offer(after_swap(self.sw[i].as_ref(), onward), self.swap_first(i), Step::Swap);
        best
    }

    fn t_reply(&self, i: usize) -> Best<Reply> {
        let mut best = Best::new();
        best.offer(self.next_r(i + 1).after_move(self.view.up(i)), self.view.at(i + 1), Reply::Onward);
        if self.turn_back {
            best.offer(self.back[i], self.view.at(i - 1), Reply::Back);
        }
        best
    }

    fn t_options(&self, i: usize) -> Best<Step> {
        let mut best = Best::new();
        best.offer(self.next_t(i + 1).after_move(self.view.up(i)), self.view.at(i + 1), Step::Move);
        if self.sw[i].is_some() {
            best.offer(after_swap(self.sw[i].as_ref(), self.t_reply(i).value()), self.swap_first(i), Step::Swap);
        }
        best
    }

    fn b_options(&self, fam: &Family, i: usize) -> Best<Step> {
        let mut best = Best::new();
        if i - 1 > fam.j {
            best.offer(fam.b[i - 1].after_move(self.view.down(i - 1)), self.view.at(i - 1), Step::Move);
        }
        best.offer(after_swap(self.sw[i].as_ref(), self.return_from_near(i)), self.swap_first(i), Step::Swap);
        best
    }

    fn exit_a_options(&self, fam: &Family) -> Best<ExitStep> {
        let mut best = Best::new();
        self.leave_options(&mut best);
        if self.l - 1 > fam.j {
            let detour = fam.b[self.l - 1].after_move(self.view.down(self.l - 1));
            best.offer(detour, self.view.at(self.l - 1), ExitStep::Detour);
        }
        best
    }

    fn next_a(&self, fam: &Family, i: usize) -> CostPair {
        if i == self.l {
            fam.exit
        } else {
            fam.a[i]
        }
    }

    fn a_options(&self, fam: &Family, i: usize) -> Best<Step> {
        let mut best = Best::new();
        let onward = self.next_a(fam, i - 1).after_move(self.view.down(i - 1));
        best.offer(onward, self.view.at(i - 1), Step::Move);
        best.offer(after_swap(self.sw[i].as_ref(), onward), self.swap_first(i), Step::Swap);
        best
    }

    fn family(&self, j: usize, cells: &mut u64) -> Family {
        let k = self.view.k();
        let l = self.l;
        let mut fam = Family { j, b: vec![CostPair::TOP; l + 1], exit: CostPair::ZERO, a: vec![CostPair::TOP; k + 2] };
        for i in j + 1..l {
            fam.b[i] = self.b_options(&fam, i).value();
        }
        if !self.env.terminal {
            fam.exit = self.exit_a_options(&fam).value();
        }
        for i in l + 1..=k {
            fam.a[i] = self.a_options(&fam, i).value();
        }
        *cells += (k - j) as u64;
        fam
    }

    /// Value for the player who, right after a swap at `fam.j`, walks back
    /// to 0 and round the far side.
    fn turn_back_value(&self, fam: &Family) -> CostPair {
        let k = self.view.k();
        let far = if self.l == k { fam.exit } else { fam.a[k] };
        compose(self.view.seg_down(fam.j, 0), far.after_move(self.view.down(k)))
    }

    /// Option for the player at position 0 entering in this direction.
    pub fn entry(&self) -> Choice {
        let value = self.next_t(1).after_move(self.view.up(0));
        if value.is_feasible() {
            Choice { value, next: self.view.at(1) }
        } else {
            Choice::NONE
        }
    }

    fn exit_step(&self, best: Best<ExitStep>, out: &mut Vec<WalkItem>) -> Result<Continue, ()> {
        if self.env.terminal {
            return Ok(Continue::Terminal);
        }
        match best.tag().copied().expect("feasible exit") {
            ExitStep::Free => Ok(Continue::Free),
            ExitStep::SwapSealed => {
                out.push(WalkItem::Swap(self.view.at(self.l)));
                Ok(Continue::Sealed)
            }
            ExitStep::Detour => Err(()),
        }
    }

    /// Append the walk inside the cycle, from the move out of position 0 to
    /// the arrival at (and possibly the swap at) position `l`.
    pub fn trace(&self, out: &mut Vec<WalkItem>) -> Continue {
        let v = |i: usize| WalkItem::Visit(self.view.at(i));
        let (k, l) = (self.view.k(), self.l);
        let mut scratch = 0u64;
        out.push(v(1));
        let mut i = 1;
        let mut swapped = false;
        // Up to l through T and R.
        while i < l {
            let step = if swapped { self.r_options(i) } else { self.t_options(i) };
            match step.tag().copied().expect("feasible strip state") {
                Step::Move => {}
                Step::Swap => {
                    out.push(WalkItem::Swap(self.view.at(i)));
                    let reply = if swapped { Reply::Onward } else { *self.t_reply(i).tag().expect("feasible reply") };
                    if reply == Reply::Back {
                        out.extend((0..i).rev().map(v));
                        out.push(v(k));
                        let fam = self.family(i, &mut scratch);
                        return self.trace_far_side(&fam, out);
                    }
                    swapped = true;
                }
            }
            out.push(v(i + 1));
            i += 1;
        }
        let arrival = if swapped { Arrival::Swapped } else { Arrival::Clean };
        match self.exit_step(self.exit_options(arrival), out) {
            Ok(c) => c,
            Err(()) => {
                out.push(v(l + 1));
                if arrival == Arrival::Clean && self.free {
                    self.trace_g(out)
                } else {
                    self.trace_f(out)
                }
            }
        }
    }

    fn trace_f(&self, out: &mut Vec<WalkItem>) -> Continue {
        let mut i = self.l + 1;
        loop {
            match self.f_options(i).tag().copied().expect("feasible detour") {
                Step::Move => {
                    i += 1;
                    out.push(WalkItem::Visit(self.view.at(i)));
                }
                Step::Swap => {
                    out.push(WalkItem::Swap(self.view.at(i)));
                    out.extend((self.l..i).rev().map(|p| WalkItem::Visit(self.view.at(p))));
                    return Continue::Sealed;
                }
            }
        }
    }

    fn trace_g(&self, out: &mut Vec<WalkItem>) -> Continue {
        let (k, l) = (self.view.k(), self.l);
        let v = |i: usize| WalkItem::Visit(self.view.at(i));
        let mut i = l + 1;
        let mut decider_moves: Option<bool> = None;
        while i <= k {
            let step = match decider_moves {
                None => self.g_options(i),
                Some(m) => self.h_options(i, m),
            };
            match step.tag().copied().expect("feasible detour") {
                Step::Move => decider_moves = decider_moves.map(|m| !m),
                Step::Swap => {
                    out.push(WalkItem::Swap(self.view.at(i)));
                    if decider_moves.is_none() {
                        if *self.g_reply(i).tag().expect("feasible reply") == Reply::Back {
                            out.extend((l..i).rev().map(v));
                            return Continue::Sealed;
                        }
                        decider_moves = Some(i % 2 == 0);
                    }
                }
            }
            out.push(v(i + 1));
            i += 1;
        }
        out.extend((1..=l).map(v));
        Continue::Sealed
    }

    fn trace_far_side(&self, fam: &Family, out: &mut Vec<WalkItem>) -> Continue {
        let (k, l) = (self.view.k(), self.l);
        let v = |i: usize| WalkItem::Visit(self.view.at(i));
        let mut i = k;
        while i > l {
            if self.a_options(fam, i).tag().copied().expect("feasible far side") == Step::Swap {
                out.push(WalkItem::Swap(self.view.at(i)));
            }
            out.push(v(i - 1));
            i -= 1;
        }
        match self.exit_step(self.exit_a_options(fam), out) {
            Ok(c) => c,
            Err(()) => {
                let mut i = l - 1;
                out.push(v(i));
                loop {
                    match self.b_options(fam, i).tag().copied().expect("feasible backward detour") {
                        Step::Move => {
                            i -= 1;
                            out.push(v(i));
                        }
                        Step::Swap => {
                            out.push(WalkItem::Swap(self.view.at(i)));
                            out.extend((i + 1..=l).map(v));
                            return Continue::Sealed;
                        }
                    }
                }
            }
        }
    }
}

/// Best entry into a strip cycle over both walking directions. `order` lists
/// the cycle from its entry vertex, `exit` is the exit position.
pub fn solve_strip_cycle(
    g: &GameGraph,
    order: &[VertexId],
    exit: usize,
    free: bool,
    env: &ExitCosts,
    swaps: &[Option<SwapOption>],
    cells: &mut u64,
) -> Choice {
    let fwd = CycleView::new(g, order.to_vec());
    let rev = fwd.reversed();
    let mut best = Best::new();
    for (view, l) in [(&fwd, exit), (&rev, fwd.k() + 1 - exit)] {
        let entry = CycleRun::new(view, l, free, g.is_directed(), env, swaps, cells).entry();
        best.offer(entry.value, entry.next, ());
    }
    Choice::of(&best)
}

/// Sweep results: exit costs at every junction and the chosen direction of
/// every strip cycle for both entry modes.
pub(crate) struct Sweep {
    envs: Vec<ExitCosts>,
}

pub(crate) fn sweep(g: &GameGraph, dec: &Decomposition, swaps: &[Option<SwapOption>], cells: &mut u64) -> Sweep {
    let strip = &dec.strip;
    let m = strip.components.len();
    let mut envs = vec![ExitCosts::terminal(); m + 1];
    for i in (0..m).rev() {
        let (free, sealed) = match &strip.components[i] {
            StripComponent::Bridge { to, cost, .. } => {
                let c = propagate_bridge(*cost, *to, &envs[i + 1]);
                (c, c)
            }
            StripComponent::Cycle { order, exit, .. } => (
                solve_strip_cycle(g, order, *exit, true, &envs[i + 1], swaps, cells),
                solve_strip_cycle(g, order, *exit, false, &envs[i + 1], swaps, cells),
            ),
        };
        envs[i] = ExitCosts { terminal: false, free, sealed, swap: swaps[strip.junctions[i]] };
        *cells += 1;
    }
    Sweep { envs }
}

impl Sweep {
    pub fn start_value(&self) -> CostPair {
        self.envs[0].arrive()
    }

    pub fn trace(&self, g: &GameGraph, dec: &Decomposition, swaps: &[Option<SwapOption>]) -> Vec<WalkItem> {
        let strip = &dec.strip;
        let mut items = vec![WalkItem::Visit(strip.junctions[0])];
        let arrive = |env: &ExitCosts, at: VertexId, items: &mut Vec<WalkItem>| -> Continue {
            if env.terminal {
                return Continue::Terminal;
            }
            match env.arrive_options().tag().copied().expect("feasible arrival") {
                Arrive::Free => Continue::Free,
                Arrive::SwapSealed => {
                    items.push(WalkItem::Swap(at));
                    Continue::Sealed
                }
            }
        };
        let mut mode = arrive(&self.envs[0], strip.junctions[0], &mut items);
        let mut scratch = 0u64;
        for (i, comp) in strip.components.iter().enumerate() {
            if mode == Continue::Terminal {
                break;
            }
            let env = &self.envs[i + 1];
            mode = match comp {
                StripComponent::Bridge { to, .. } => {
                    items.push(WalkItem::Visit(*to));
                    arrive(env, *to, &mut items)
                }
                StripComponent::Cycle { order, exit, .. } => {
                    let free = mode == Continue::Free;
                    let target = if free { self.envs[i].free } else { self.envs[i].sealed };
                    let fwd = CycleView::new(g, order.clone());
                    let rev = fwd.reversed();
                    let (view, l) =
                        if fwd.at(1) == target.next { (&fwd, *exit) } else { (&rev, fwd.k() + 1 - *exit) };
                    CycleRun::new(view, l, free, g.is_directed(), env, swaps, &mut scratch).trace(&mut items)
                }
            };
        }
        items
    }
}
