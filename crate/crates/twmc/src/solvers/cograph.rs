//! Cograph: the selected set induces no path on four vertices. The
//! bipartite variant additionally forbids triangles, which suffices for
//! bipartiteness because a cograph is bipartite exactly when it is
//! triangle-free, and every clique shows up inside some bag.
//!
//! A four-vertex path can straddle the window in many ways, so the profile
//! records, for the selected bag vertices, how the forgotten part of the
//! solution hangs off them:
//!
//! * `fnb(v)`: v has a forgotten selected neighbor.
//! * `p2(v)`: an induced two-edge path of forgotten selected vertices ends
//!   at v (`y - x - v` with `y` not adjacent to `v`).
//! * `cfn(v, w)`: v and w share a common forgotten selected neighbor
//!   (unordered).
//! * `pfn(v, w)`: v has a forgotten selected neighbor that avoids w
//!   (ordered).
//!
//! The ordered `pfn` bits are what make the state decisive: whether a new
//! neighbor of `w` completes a path through `v` depends on v having a
//! *private* forgotten neighbor, not merely any forgotten one. When a
//! tracked pair loses an endpoint at a forget, its pair bits fold into the
//! surviving endpoint's `p2` bit; the fold cases are validated exhaustively
//! against the brute-force predicate.

use crate::engine::{Aggregate, BagView, DpTable, SolverCallbacks};
use crate::graph::WeightMap;
use crate::modular::ModValue;
use std::collections::HashMap;

const MAX_BAG: usize = 6;

/// Decoded profile over at most six bag positions.
#[derive(Debug, Clone, Copy, Default)]
struct State {
    sel: u8,
    fnb: u8,
    p2: u8,
    /// Unordered pair bits: `cfn[i]` holds bit `j` for `i < j`.
    cfn: [u8; MAX_BAG],
    /// Ordered pair bits: `pfn[i]` has bit `j` when i has a forgotten
    /// neighbor avoiding j.
    pfn: [u8; MAX_BAG],
}

impl State {
    fn cfn_get(&self, i: usize, j: usize) -> bool {
        self.cfn[i.min(j)] >> i.max(j) & 1 == 1
    }

    fn cfn_set(&mut self, i: usize, j: usize) {
        self.cfn[i.min(j)] |= 1 << i.max(j);
    }

    fn pfn_get(&self, i: usize, j: usize) -> bool {
        self.pfn[i] >> j & 1 == 1
    }

    fn decode(key: u64) -> State {
        let mut s = State {
            sel: (key & 0x3f) as u8,
            fnb: (key >> 6 & 0x3f) as u8,
            p2: (key >> 12 & 0x3f) as u8,
            ..State::default()
        };
        let mut bit = 18;
        for i in 0..MAX_BAG {
            for j in i + 1..MAX_BAG {
                if key >> bit & 1 == 1 {
                    s.cfn[i] |= 1 << j;
                }
                bit += 1;
            }
        }
        for i in 0..MAX_BAG {
            for j in 0..MAX_BAG {
                if i == j {
                    continue;
                }
                if key >> bit & 1 == 1 {
                    s.pfn[i] |= 1 << j;
                }
                bit += 1;
            }
        }
        s
    }

    fn encode(&self) -> u64 {
        let mut key = self.sel as u64 | (self.fnb as u64) << 6 | (self.p2 as u64) << 12;
        let mut bit = 18;
        for i in 0..MAX_BAG {
            for j in i + 1..MAX_BAG {
                if self.cfn[i] >> j & 1 == 1 {
                    key |= 1 << bit;
                }
                bit += 1;
            }
        }
        for i in 0..MAX_BAG {
            for j in 0..MAX_BAG {
                if i == j {
                    continue;
                }
                if self.pfn[i] >> j & 1 == 1 {
                    key |= 1 << bit;
                }
                bit += 1;
            }
        }
        key
    }

    fn insert_position(&mut self, pos: usize) {
        let shift_mask = |bits: u8| -> u8 {
            let keep = (1u8 << pos) - 1;
            (bits & keep) | (bits & !keep) << 1
        };
        self.sel = shift_mask(self.sel);
        self.fnb = shift_mask(self.fnb);
        self.p2 = shift_mask(self.p2);
        let mut cfn = [0u8; MAX_BAG];
        let mut pfn = [0u8; MAX_BAG];
        let remap = |i: usize| if i >= pos { i + 1 } else { i };
        for i in 0..MAX_BAG - 1 {
            for j in 0..MAX_BAG - 1 {
                if i != j && self.pfn[i] >> j & 1 == 1 {
                    pfn[remap(i)] |= 1 << remap(j);
                }
                if i < j && self.cfn[i] >> j & 1 == 1 {
                    cfn[remap(i)] |= 1 << remap(j);
                }
            }
        }
        self.cfn = cfn;
        self.pfn = pfn;
    }

    fn remove_position(&mut self, pos: usize) {
        let shift_mask = |bits: u8| -> u8 {
            let keep = (1u8 << pos) - 1;
            (bits & keep) | (bits >> 1) & !keep
        };
        self.sel = shift_mask(self.sel);
        self.fnb = shift_mask(self.fnb);
        self.p2 = shift_mask(self.p2);
        let mut cfn = [0u8; MAX_BAG];
        let mut pfn = [0u8; MAX_BAG];
        let remap = |i: usize| if i > pos { i - 1 } else { i };
        for i in 0..MAX_BAG {
            for j in 0..MAX_BAG {
                if i == pos || j == pos || i == j {
                    continue;
                }
                if self.pfn[i] >> j & 1 == 1 {
                    pfn[remap(i)] |= 1 << remap(j);
                }
                if i < j && self.cfn[i] >> j & 1 == 1 {
                    cfn[remap(i)] |= 1 << remap(j);
                }
            }
        }
        self.cfn = cfn;
        self.pfn = pfn;
    }
}

/// Does the selected set close an induced four-path entirely within the
/// bag, using the new position `p`? A four-subset induces a path exactly
/// when it carries three edges with degree multiset {1, 1, 2, 2}.
fn bag_local_p4(view: &BagView, sel: u8, p: usize) -> bool {
    let members: Vec<usize> = (0..view.len()).filter(|&i| sel >> i & 1 == 1).collect();
    let m = members.len();
    if m < 4 {
        return false;
    }
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    let quad = [members[a], members[b], members[c], members[d]];
                    if !quad.contains(&p) {
                        continue;
                    }
                    let mut deg = [0u32; 4];
                    let mut edges = 0;
                    for x in 0..4 {
                        for y in x + 1..4 {
                            if view.adjacent_positions(quad[x], quad[y]) {
                                deg[x] += 1;
                                deg[y] += 1;
                                edges += 1;
                            }
                        }
                    }
                    deg.sort_unstable();
                    if edges == 3 && deg == [1, 1, 2, 2] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Solver for "no induced four-path", optionally also rejecting triangles.
#[derive(Debug, Clone)]
pub struct CographSolver {
    forbid_triangles: bool,
}

impl CographSolver {
    pub fn new() -> Self {
        CographSolver {
            forbid_triangles: false,
        }
    }

    /// The bipartite-cograph variant.
    pub fn bipartite() -> Self {
        CographSolver {
            forbid_triangles: true,
        }
    }
}

impl Default for CographSolver {
    fn default() -> Self {
        CographSolver::new()
    }
}

impl SolverCallbacks for CographSolver {
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

            out.add(state.encode(), agg);

            // Try selecting the new vertex.
            let sel = state.sel | 1 << pos;
            let selected = |i: usize| -> bool { i != pos && sel >> i & 1 == 1 };

            if self.forbid_triangles {
                for q in 0..b {
                    for r in q + 1..b {
                        if selected(q) && selected(r) && adj(pos, q) && adj(pos, r) && adj(q, r) {
                            continue 'rows;
                        }
                    }
                }
            }
            if bag_local_p4(view, sel, pos) {
                continue;
            }
            // A forgotten two-path ends at a new neighbor.
            for q in 0..b {
                if selected(q) && adj(pos, q) && state.p2 >> q & 1 == 1 {
                    continue 'rows;
                }
            }
            for b1 in 0..b {
                for b2 in 0..b {
                    if b1 == b2 || !selected(b1) || !selected(b2) {
                        continue;
                    }
                    // x - b1 - b2 - new, with x avoiding b2.
                    if adj(b1, b2) && adj(pos, b2) && !adj(pos, b1) && state.pfn_get(b1, b2) {
                        continue 'rows;
                    }
                    // x - b2 - new - b1: the new vertex as a middle point.
                    if !adj(b1, b2) && adj(pos, b1) && adj(pos, b2) && state.pfn_get(b2, b1) {
                        continue 'rows;
                    }
                    // new - b1 - x - b2: a forgotten middle point.
                    if !adj(b1, b2) && adj(pos, b1) && !adj(pos, b2) && state.cfn_get(b1, b2) {
                        continue 'rows;
                    }
                }
            }

            let mut sel_state = state;
            sel_state.sel = sel;
            // The new vertex postdates every forgotten vertex, so any
            // forgotten neighbor of q automatically avoids it.
            for q in 0..b {
                if selected(q) && sel_state.fnb >> q & 1 == 1 {
                    sel_state.pfn[q] |= 1 << pos;
                }
            }
            out.add(sel_state.encode(), agg.add_vertex_weight(weight));
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
                // Fold the departing vertex's structure into the survivors.
                for v in 0..b {
                    if v == pos || state.sel >> v & 1 == 0 {
                        continue;
                    }
                    if adj(v, pos) {
                        state.fnb |= 1 << v;
                        // y - pos - v, with y private to pos w.r.t. v: an
                        // induced forgotten two-path now ends at v.
                        if state.pfn_get(pos, v) {
                            state.p2 |= 1 << v;
                        }
                    } else if state.cfn_get(pos, v) {
                        // pos - x - v with a shared forgotten middle x and
                        // pos not adjacent to v: same shape seen from v.
                        state.p2 |= 1 << v;
                    }
                }
                for v in 0..b {
                    for u in 0..b {
                        if v == u || v == pos || u == pos {
                            continue;
                        }
                        if state.sel >> v & 1 == 0 || state.sel >> u & 1 == 0 {
                            continue;
                        }
                        if adj(v, pos) && !adj(u, pos) {
                            state.pfn[v] |= 1 << u;
                        }
                        if v < u && adj(v, pos) && adj(u, pos) {
                            state.cfn_set(v, u);
                        }
                    }
                }
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
        let adj = |i: usize, j: usize| view.adjacent_positions(i, j);
        let mut groups: HashMap<u8, Vec<(State, Aggregate)>> = HashMap::new();
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
            'pairs: for &(l, lagg) in rows {
                // Forgotten vertices from different branches are never
                // adjacent; each check below closes an induced four-path
                // whose ends come from the two sides.
                for v in 0..b {
                    if r.sel >> v & 1 == 0 {
                        continue;
                    }
                    // y - x - v - z: a two-path from one side, a neighbor
                    // from the other.
                    if (l.p2 >> v & 1 == 1 && r.fnb >> v & 1 == 1)
                        || (r.p2 >> v & 1 == 1 && l.fnb >> v & 1 == 1)
                    {
                        continue 'pairs;
                    }
                    for u in 0..b {
                        if u == v || r.sel >> u & 1 == 0 {
                            continue;
                        }
                        if adj(v, u) {
                            // x - v - u - z with x left-private to v and z
                            // right-private to u.
                            if l.pfn_get(v, u) && r.pfn_get(u, v) {
                                continue 'pairs;
                            }
                        } else {
                            // y - v - x - u: one side supplies the common
                            // middle x, the other a private end y.
                            if (l.cfn_get(v, u) && r.pfn_get(v, u))
                                || (r.cfn_get(v, u) && l.pfn_get(v, u))
                            {
                                continue 'pairs;
                            }
                        }
                    }
                }
                let mut merged = l;
                merged.fnb |= r.fnb;
                merged.p2 |= r.p2;
                for i in 0..MAX_BAG {
                    merged.cfn[i] |= r.cfn[i];
                    merged.pfn[i] |= r.pfn[i];
                }
                out.add(merged.encode(), lagg.join(ragg, shared));
            }
        }
        out
    }

    fn extract_solution(&self, root: &DpTable) -> Option<ModValue> {
        let mut acc: Option<ModValue> = None;
        for (_, agg) in root.iter() {
            acc = Some(acc.unwrap_or(ModValue::ZERO) + agg.weight);
        }
        acc
    }

    fn max_bag(&self) -> usize {
        MAX_BAG
    }

    fn key_bits(&self, _bag_len: usize) -> Option<u32> {
        Some(63)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{to_nice, TreeDecomposition};
    use crate::engine::run;
    use crate::graph::Graph;
    use crate::oracle::{wmc_bruteforce, Property};

    fn solve(g: &Graph, w: &WeightMap, td: &TreeDecomposition, bipartite: bool) -> String {
        let nd = to_nice(td, g).unwrap();
        let solver = if bipartite {
            CographSolver::bipartite()
        } else {
            CographSolver::new()
        };
        run(&nd, g, w, &solver).unwrap().output_line()
    }

    #[test]
    fn triangle_all_subsets_qualify() {
        let g = Graph::complete(3);
        let w = WeightMap::uniform(3, 1);
        let td = TreeDecomposition::single_bag(3);
        // Each vertex appears in 4 of the 8 subsets.
        assert_eq!(solve(&g, &w, &td, false), "12");
    }

    #[test]
    fn four_path_excludes_itself() {
        let g = Graph::path(4);
        let w = WeightMap::uniform(4, 1);
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        // Total over all 16 subsets is 32; the full path (weight 4) is the
        // only excluded set.
        assert_eq!(solve(&g, &w, &td, false), "28");
    }

    #[test]
    fn bipartite_triangle_drops_the_full_set() {
        let g = Graph::complete(3);
        let w = WeightMap::uniform(3, 1);
        let td = TreeDecomposition::single_bag(3);
        assert_eq!(solve(&g, &w, &td, true), "9");
    }

    #[test]
    fn triangle_free_graphs_agree_with_plain_cograph() {
        let g = Graph::cycle(5);
        let w = WeightMap::new(vec![2, 3, 5, 7, 11]);
        let td = TreeDecomposition::new(
            vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4]],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(solve(&g, &w, &td, false), solve(&g, &w, &td, true));
    }

    #[test]
    fn matches_oracle_with_joins_and_cliques() {
        let cases: Vec<(Graph, TreeDecomposition)> = vec![
            (
                Graph::cycle(5),
                TreeDecomposition::new(
                    vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4]],
                    vec![(0, 1), (1, 2)],
                )
                .unwrap(),
            ),
            (Graph::complete(5), TreeDecomposition::single_bag(5)),
            (
                // Star of bags: forces joins.
                Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(),
                TreeDecomposition::new(
                    vec![vec![0, 1], vec![0, 2], vec![0, 3]],
                    vec![(0, 1), (0, 2)],
                )
                .unwrap(),
            ),
            (
                Graph::path(6),
                TreeDecomposition::new(
                    vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5]],
                    vec![(0, 1), (1, 2), (2, 3), (3, 4)],
                )
                .unwrap(),
            ),
        ];
        for (g, td) in cases {
            let n = g.vertex_count();
            let w = WeightMap::new((0..n as u64).map(|i| 2 * i + 1).collect());
            for (bip, prop) in [
                (false, Property::Cograph),
                (true, Property::BipartiteCograph),
            ] {
                let expect = wmc_bruteforce(&g, &w, prop).unwrap();
                assert_eq!(solve(&g, &w, &td, bip), expect.output_line());
            }
        }
    }
}
