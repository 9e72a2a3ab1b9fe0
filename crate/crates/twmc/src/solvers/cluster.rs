//! Maximal cluster graph: the selected set induces a disjoint union of
//! cliques, and no single outside vertex can be added without breaking
//! that. A graph is a cluster graph exactly when it has no induced
//! three-path, and being one is closed downward, so maximality reduces to
//! local maximality.
//!
//! Profile per bag vertex:
//!
//! * selected: `fnb` (has a forgotten selected neighbor) and `obliged`
//!   (must still gain a selected neighbor outside the processed region
//!   before it may be forgotten, to justify some dropped vertex's
//!   exclusion).
//! * not selected: `safe` (adding this vertex to the selection so far
//!   already creates an induced three-path, so its exclusion is justified
//!   for good) and `nfn` (it has a forgotten *selected* neighbor).
//!
//! The `nfn` bit is load-bearing: once a vertex u's selected neighbor x has
//! been forgotten, any later selected neighbor z of u seals u (x - u - z is
//! induced, since z can never reach x). Without it, valid solutions are
//! lost whenever u's justification spans a forget; the three-path
//! 0 - 1 - 2 processed in that order, selecting {0, 2}, is the smallest
//! such case.

use crate::engine::{Aggregate, BagView, DpTable, SolverCallbacks};
use crate::graph::WeightMap;
use crate::modular::ModValue;
use std::collections::HashMap;

const MAX_BAG: usize = 16;
const LANE: usize = 3;

/// Decoded profile. `a` is `fnb` for selected positions and `safe` for
/// not-selected ones; `b` is `obliged` respectively `nfn`.
#[derive(Debug, Clone, Copy, Default)]
struct State {
    sel: u16,
    a: u16,
    b: u16,
}

impl State {
    fn decode(key: u64) -> State {
        let mut s = State::default();
        for i in 0..MAX_BAG {
            let lane = key >> (LANE * i) & 0b111;
            s.sel |= ((lane & 1) as u16) << i;
            s.a |= ((lane >> 1 & 1) as u16) << i;
            s.b |= ((lane >> 2 & 1) as u16) << i;
        }
        s
    }

    fn encode(&self) -> u64 {
        let mut key = 0u64;
        for i in 0..MAX_BAG {
            let lane = (self.sel >> i & 1) as u64
                | ((self.a >> i & 1) as u64) << 1
                | ((self.b >> i & 1) as u64) << 2;
            key |= lane << (LANE * i);
        }
        key
    }

    fn insert_position(&mut self, pos: usize) {
        let shift = |bits: u16| -> u16 {
            let keep = (1u16 << pos) - 1;
            (bits & keep) | (bits & !keep) << 1
        };
        self.sel = shift(self.sel);
        self.a = shift(self.a);
        self.b = shift(self.b);
    }

    fn remove_position(&mut self, pos: usize) {
        let shift = |bits: u16| -> u16 {
            let keep = (1u16 << pos) - 1;
            (bits & keep) | (bits >> 1) & !keep
        };
        self.sel = shift(self.sel);
        self.a = shift(self.a);
        self.b = shift(self.b);
    }
}

#[derive(Debug, Default, Clone)]
pub struct MaximalClusterSolver;

impl MaximalClusterSolver {
    pub fn new() -> Self {
        MaximalClusterSolver
    }
}

impl SolverCallbacks for MaximalClusterSolver {
    fn leaf_callback(&self, view: &BagView, w: &WeightMap) -> DpTable {
        let mut empty = DpTable::new();
        empty.add(0, Aggregate::unit());
        match view.len() {
            0 => empty,
            1 => self.introduce_callback(view, 0, empty, w),
            _ => unreachable!("leaf bags carry at most one vertex"),
        }
    }

    fn introduce_callback(
        &self,
        view: &BagView,
        pos: usize,
        child: DpTable,
        w: &WeightMap,
    ) -> DpTable {
        let weight = w.mod_weight(view.vertex_at(pos));
        let b = view.len();
        let adj = |i: usize, j: usize| view.adjacent_positions(i, j);
        let mut out = DpTable::with_capacity(child.len() * 2);
        'rows: for (key, agg) in child.iter() {
            let mut state = State::decode(key);
            state.insert_position(pos);
            let sel = |s: &State, i: usize| i != pos && s.sel >> i & 1 == 1;

            // Not selected: seed safety. The new vertex seals a three-path
            // if one exists in the selection plus it: through two bag
            // vertices, or through a neighbor with a forgotten selected
            // neighbor (that forgotten vertex can never see the new one).
            {
                let mut ns = state;
                let mut safe = false;
                for q in 0..b {
                    if !sel(&ns, q) {
                        continue;
                    }
                    if adj(pos, q) && ns.a >> q & 1 == 1 {
                        safe = true; // new - q - forgotten
                    }
                    for r in 0..b {
                        if r == q || !sel(&ns, r) {
                            continue;
                        }
                        // q - new - r  or  new - q - r
                        if adj(pos, q) && adj(pos, r) && q < r && !adj(q, r) {
                            safe = true;
                        }
                        if adj(pos, q) && adj(q, r) && !adj(pos, r) {
                            safe = true;
                        }
                    }
                }
                if safe {
                    ns.a |= 1 << pos;
                }
                out.add(ns.encode(), agg);
            }

            // Selected: reject anything that lets an induced three-path
            // into the selection.
            for q in 0..b {
                if !sel(&state, q) {
                    continue;
                }
                // new - q - forgotten selected neighbor of q.
                if adj(pos, q) && state.a >> q & 1 == 1 {
                    continue 'rows;
                }
                for r in 0..b {
                    if r == q || !sel(&state, r) {
                        continue;
                    }
                    // new - q - r entirely in the bag.
                    if adj(pos, q) && adj(q, r) && !adj(pos, r) {
                        continue 'rows;
                    }
                    // q - new - r with the new vertex in the middle.
                    if q < r && adj(pos, q) && adj(pos, r) && !adj(q, r) {
                        continue 'rows;
                    }
                }
            }
            let mut ss = state;
            ss.sel |= 1 << pos;
            for q in 0..b {
                if q == pos {
                    continue;
                }
                if ss.sel >> q & 1 == 1 {
                    if adj(pos, q) {
                        // A new selected neighbor discharges q's obligation.
                        ss.b &= !(1 << q);
                    }
                } else {
                    // Safety upgrades for outside vertices: the new vertex
                    // may complete a three-path with them.
                    let mut safe = false;
                    if adj(pos, q) && ss.b >> q & 1 == 1 {
                        safe = true; // forgotten - q - new
                    }
                    for r in 0..b {
                        if r == pos || r == q || ss.sel >> r & 1 == 0 {
                            continue;
                        }
                        // q - new - r, q - r - new, or new - q - r.
                        if adj(q, pos) && adj(pos, r) && !adj(q, r) {
                            safe = true;
                        }
                        if adj(q, r) && adj(r, pos) && !adj(q, pos) {
                            safe = true;
                        }
                        if adj(q, pos) && adj(q, r) && !adj(pos, r) {
                            safe = true;
                        }
                    }
                    if safe {
                        ss.a |= 1 << q;
                    }
                }
            }
            out.add(ss.encode(), agg.add_vertex_weight(weight));
        }
        out
    }

    fn forget_callback(
        &self,
        view: &BagView,
        pos: usize,
        child: DpTable,
        _w: &WeightMap,
    ) -> DpTable {
        let b = view.len();
        let adj = |i: usize, j: usize| view.adjacent_positions(i, j);
        let mut out = DpTable::with_capacity(child.len());
        for (key, agg) in child.iter() {
            let mut state = State::decode(key);
            if state.sel >> pos & 1 == 1 {
                // A selected vertex may not leave with an open obligation.
                if state.b >> pos & 1 == 1 {
                    continue;
                }
                for q in 0..b {
                    if q == pos || !adj(pos, q) {
                        continue;
                    }
                    if state.sel >> q & 1 == 1 {
                        state.a |= 1 << q; // fnb
                    } else {
                        state.b |= 1 << q; // nfn
                    }
                }
            } else if state.a >> pos & 1 == 0 {
                // Unjustified exclusion: future selected neighbors of its
                // bag clique are the only possible witnesses. No neighbors,
                // no witness.
                let mut any = false;
                let mut obliged = state.b;
                for q in 0..b {
                    if q != pos && state.sel >> q & 1 == 1 && adj(pos, q) {
                        any = true;
                        obliged |= 1 << q;
                    }
                }
                if !any {
                    continue;
                }
                state.b = obliged;
            }
            state.remove_position(pos);
            out.add(state.encode(), agg);
        }
        out
    }

    fn join_callback(
        &self,
        view: &BagView,
        left: DpTable,
        right: DpTable,
        w: &WeightMap,
    ) -> DpTable {
        let b = view.len();
        let mut groups: HashMap<u16, Vec<(State, Aggregate)>> = HashMap::new();
        for (key, agg) in left.iter() {
            let state = State::decode(key);
            groups.entry(state.sel).or_default().push((state, agg));
        }
        let mut out = DpTable::new();
        for (rkey, ragg) in right.iter() {
            let r = State::decode(rkey);
            let Some(rows) = groups.get(&r.sel) else {
                continue;
            };
            let shared = w.set_weight(
                (0..b)
                    .filter(|&p| r.sel >> p & 1 == 1)
                    .map(|p| view.vertex_at(p)),
            );
            for &(l, lagg) in rows {
                // A selected vertex with forgotten neighbors on both sides
                // sits at the middle of an induced three-path whose ends
                // can never meet.
                if l.a & r.a & r.sel != 0 {
                    continue;
                }
                let sel = r.sel;
                let fnb = (l.a | r.a) & sel;
                // An obligation is discharged by a forgotten neighbor from
                // the other branch.
                let obliged = (l.b & !r.a | r.b & !l.a) & sel;
                // Safety merges by OR; forgotten selected neighbors from
                // both sides also seal an outside vertex, their mutual
                // non-adjacency being automatic.
                let safe = (l.a | r.a | l.b & r.b) & !sel;
                let nfn = (l.b | r.b) & !sel;
                let merged = State {
                    sel,
                    a: fnb | safe,
                    b: obliged | nfn,
                };
                out.add(merged.encode(), lagg.join(ragg, shared));
            }
        }
        out
    }

    fn extract_solution(&self, root: &DpTable) -> Option<ModValue> {
        // Every outside-vertex safety and selected-vertex obligation was
        // resolved at its forget; whatever reaches the empty root is valid.
        let mut acc: Option<ModValue> = None;
        for (_, agg) in root.iter() {
            acc = Some(acc.unwrap_or(ModValue::ZERO) + agg.weight);
        }
        acc
    }

    fn max_bag(&self) -> usize {
        MAX_BAG
    }

    fn key_bits(&self, bag_len: usize) -> Option<u32> {
        Some((LANE * bag_len) as u32)
    }
}
