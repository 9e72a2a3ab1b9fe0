//! Connected induced subgraph with at least `k` vertices.
//!
//! Profile per bag: the selected subset, a partition of the selected
//! positions into connectivity classes (with respect to the processed part
//! of the graph), a size counter that saturates at a cap, and one bit
//! recording that a selected connected component has fully left the window.
//!
//! Two rules govern that detached bit: a profile whose bag still holds
//! selected vertices can never reconnect to a detached component, and two
//! detached components can never merge. Apparent disconnection *inside* the
//! bag is fine, since future vertices may still tie those classes together,
//! so multi-class profiles are kept alive.

use crate::engine::{Aggregate, BagView, DpTable, SolverCallbacks};
use crate::graph::WeightMap;
use crate::modular::ModValue;
use std::collections::HashMap;

const MAX_BAG: usize = 10;
const CLASS_BITS: usize = 4;
const COUNTER_SHIFT: usize = MAX_BAG + MAX_BAG * CLASS_BITS; // 50
const DETACHED_SHIFT: usize = COUNTER_SHIFT + 5; // 55
pub const MAX_CAP: u64 = 31;

/// Decoded profile; `class[i]` is meaningful only when bit `i` of `sel` is
/// set, and class ids are kept in first-appearance (restricted growth)
/// order, which orders classes by their minimum member.
#[derive(Debug, Clone, Copy)]
struct State {
    sel: u16,
    class: [u8; MAX_BAG],
    counter: u8,
    detached: bool,
}

impl State {
    fn decode(key: u64) -> State {
        let sel = (key & ((1 << MAX_BAG) - 1)) as u16;
        let mut class = [0u8; MAX_BAG];
        for (i, slot) in class.iter_mut().enumerate() {
            *slot = (key >> (MAX_BAG + CLASS_BITS * i) & 0xf) as u8;
        }
        State {
            sel,
            class,
            counter: (key >> COUNTER_SHIFT & 0x1f) as u8,
            detached: key >> DETACHED_SHIFT & 1 == 1,
        }
    }

    /// Relabels classes into restricted-growth order and packs.
    fn encode(&self) -> u64 {
        let mut relabel = [u8::MAX; MAX_BAG + 1];
        let mut next = 0u8;
        let mut key = self.sel as u64;
        for i in 0..MAX_BAG {
            if self.sel >> i & 1 == 1 {
                let c = self.class[i] as usize;
                if relabel[c] == u8::MAX {
                    relabel[c] = next;
                    next += 1;
                }
                key |= (relabel[c] as u64) << (MAX_BAG + CLASS_BITS * i);
            }
        }
        key |= (self.counter as u64) << COUNTER_SHIFT;
        key |= (self.detached as u64) << DETACHED_SHIFT;
        key
    }

    fn insert_position(&mut self, pos: usize) {
        let keep = (1u16 << pos) - 1;
        self.sel = (self.sel & keep) | (self.sel & !keep) << 1;
        for i in (pos..MAX_BAG - 1).rev() {
            self.class[i + 1] = self.class[i];
        }
        self.class[pos] = 0;
    }

    fn remove_position(&mut self, pos: usize) {
        let keep = (1u16 << pos) - 1;
        self.sel = (self.sel & keep) | (self.sel >> 1) & !keep;
        for i in pos..MAX_BAG - 1 {
            self.class[i] = self.class[i + 1];
        }
        self.class[MAX_BAG - 1] = 0;
    }
}

/// Solver for "connected with at least `k` selected vertices".
#[derive(Debug, Clone)]
pub struct ConnectedAtLeastSolver {
    k: u64,
    /// Counter saturation point; equal to `k` in normal operation, raised
    /// above the instance size to run an exact-count variant in tests.
    cap: u64,
}

impl ConnectedAtLeastSolver {
    pub fn new(k: usize) -> Self {
        Self::with_cap(k, k)
    }

    /// A variant whose counter saturates at `cap >= k` instead of at `k`;
    /// with `cap >= n` the counter is exact. Answers must not depend on the
    /// cap.
    pub fn with_cap(k: usize, cap: usize) -> Self {
        assert!(k >= 1 && k as u64 <= MAX_CAP, "threshold out of range");
        assert!(cap >= k && cap as u64 <= MAX_CAP, "cap out of range");
        ConnectedAtLeastSolver {
            k: k as u64,
            cap: cap as u64,
        }
    }

    fn bump(&self, counter: u8) -> u8 {
        (counter as u64 + 1).min(self.cap) as u8
    }

    fn selected_weight(&self, view: &BagView, sel: u16, w: &WeightMap) -> ModValue {
        w.set_weight(
            (0..view.len())
                .filter(|&p| sel >> p & 1 == 1)
                .map(|p| view.vertex_at(p)),
        )
    }
}

impl SolverCallbacks for ConnectedAtLeastSolver {
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
        let neighbors = view.adjacency_mask(pos);
        let mut out = DpTable::with_capacity(child.len() * 2);
        for (key, agg) in child.iter() {
            let mut state = State::decode(key);
            state.insert_position(pos);

            out.add(state.encode(), agg);

            // Selecting while a component is already sealed off can never
            // reconnect to it.
            if state.detached {
                continue;
            }
            let mut sel_state = state;
            sel_state.sel |= 1 << pos;
            // Fresh singleton class, then union with every class that has a
            // selected neighbor of the new vertex.
            let fresh = MAX_BAG as u8;
            sel_state.class[pos] = fresh;
            for q in 0..view.len() {
                if q != pos && neighbors >> q & 1 == 1 && sel_state.sel >> q & 1 == 1 {
                    let old = sel_state.class[q];
                    for i in 0..view.len() {
                        if sel_state.sel >> i & 1 == 1 && sel_state.class[i] == old {
                            sel_state.class[i] = fresh;
                        }
                    }
                }
            }
            sel_state.counter = self.bump(sel_state.counter);
            out.add(sel_state.encode(), agg.add_vertex_weight(weight));
        }
        debug_assert!(out.len() as u64 <= profile_bound(view.len(), self.cap as usize));
        out
    }

    fn forget_callback(
        &self,
        view: &BagView,
        pos: usize,
        child: DpTable,
        _w: &WeightMap,
    ) -> DpTable {
        let _ = view;
        let mut out = DpTable::with_capacity(child.len());
        for (key, agg) in child.iter() {
            let mut state = State::decode(key);
            if state.sel >> pos & 1 == 0 {
                state.remove_position(pos);
                out.add(state.encode(), agg);
                continue;
            }
            let cls = state.class[pos];
            let survives =
                (0..MAX_BAG).any(|i| i != pos && state.sel >> i & 1 == 1 && state.class[i] == cls);
            state.remove_position(pos);
            if !survives {
                // The class left the window entirely: it is now a finished
                // component.
                if state.sel != 0 || state.detached {
                    continue;
                }
                state.detached = true;
            }
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
        let mut groups: HashMap<u16, Vec<(State, Aggregate)>> = HashMap::new();
        for (key, agg) in left.iter() {
            let state = State::decode(key);
            groups.entry(state.sel).or_default().push((state, agg));
        }
        let mut out = DpTable::new();
        for (rkey, ragg) in right.iter() {
            let rstate = State::decode(rkey);
            let Some(rows) = groups.get(&rstate.sel) else {
                continue;
            };
            let shared = self.selected_weight(view, rstate.sel, w);
            let picked = rstate.sel.count_ones() as u64;
            for &(lstate, lagg) in rows {
                // Two finished components can never be one connected graph.
                if lstate.detached && rstate.detached {
                    continue;
                }
                // Union-by-relabel over the shared selected positions: start
                // from the left partition and merge classes that share a
                // vertex in the right partition.
                let mut merged = lstate;
                for a in 0..view.len() {
                    for b in a + 1..view.len() {
                        if rstate.sel >> a & 1 == 1
                            && rstate.sel >> b & 1 == 1
                            && rstate.class[a] == rstate.class[b]
                            && merged.class[a] != merged.class[b]
                        {
                            let (from, to) = (merged.class[b], merged.class[a]);
                            for i in 0..view.len() {
                                if merged.sel >> i & 1 == 1 && merged.class[i] == from {
                                    merged.class[i] = to;
                                }
                            }
                        }
                    }
                }
                // Shared vertices appear in both counters; subtract one
                // copy. A saturated side already proves the true count is at
                // least the cap, and the other side contributes at least the
                // shared vertices, so the merge stays saturated; the plain
                // formula would under-count (and underflow) whenever the
                // bag's selected set outnumbers the cap.
                merged.counter =
                    if lstate.counter as u64 == self.cap || rstate.counter as u64 == self.cap {
                        self.cap as u8
                    } else {
                        (lstate.counter as u64 + rstate.counter as u64 - picked).min(self.cap) as u8
                    };
                merged.detached = lstate.detached || rstate.detached;
                out.add(merged.encode(), lagg.join(ragg, shared));
            }
        }
        debug_assert!(out.len() as u64 <= profile_bound(view.len(), self.cap as usize));
        out
    }

    fn extract_solution(&self, root: &DpTable) -> Option<ModValue> {
        let mut acc: Option<ModValue> = None;
        for (key, agg) in root.iter() {
            let state = State::decode(key);
            // The only valid final shape: one finished component of
            // sufficient size and nothing else selected.
            if state.detached && state.counter as u64 >= self.k {
                acc = Some(acc.unwrap_or(ModValue::ZERO) + agg.weight);
            }
        }
        acc
    }

    fn max_bag(&self) -> usize {
        MAX_BAG
    }

    fn key_bits(&self, _bag_len: usize) -> Option<u32> {
        Some((DETACHED_SHIFT + 1) as u32)
    }
}

/// Bell numbers for the profile-count bound.
const BELL: [u64; 11] = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115_975];

/// Enforced profile-count cap per bag: `Bell(b) * 2^b * cap * 2`.
pub fn profile_bound(bag_len: usize, cap: usize) -> u64 {
    BELL[bag_len] * (1u64 << bag_len) * cap as u64 * 2
}
