//! Dominating set: every vertex outside the set has a neighbor inside it.
//!
//! Profile: one of three statuses per bag position. A vertex outside the
//! emerging set is either already dominated or still waiting; a waiting
//! vertex must not be forgotten. Two bits per position.

use crate::engine::{Aggregate, BagView, DpTable, SolverCallbacks};
use crate::graph::WeightMap;
use crate::modular::ModValue;

const IN: u64 = 0;
const OUT_DOMINATED: u64 = 1;
const OUT_NEEDS_DOMINATION: u64 = 2;

const LANE: u32 = 2;
const MASK: u64 = 0b11;

fn lane(key: u64, pos: usize) -> u64 {
    key >> (LANE as usize * pos) & MASK
}

fn with_lane(key: u64, pos: usize, status: u64) -> u64 {
    let shift = LANE as usize * pos;
    (key & !(MASK << shift)) | status << shift
}

/// Opens a zero lane at `pos`, shifting higher lanes up.
fn insert_lane(key: u64, pos: usize) -> u64 {
    let shift = LANE as usize * pos;
    let low = key & ((1 << shift) - 1);
    let high = key >> shift << (shift + LANE as usize);
    high | low
}

/// Drops the lane at `pos`, shifting higher lanes down.
fn remove_lane(key: u64, pos: usize) -> u64 {
    let shift = LANE as usize * pos;
    let low = key & ((1 << shift) - 1);
    let high = key >> (shift + LANE as usize) << shift;
    high | low
}

#[derive(Debug, Default, Clone)]
pub struct DominatingSetSolver;

impl DominatingSetSolver {
    pub fn new() -> Self {
        DominatingSetSolver
    }
}

impl SolverCallbacks for DominatingSetSolver {
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
        let mut out = DpTable::with_capacity(child.len() * 2);
        let weight = w.mod_weight(view.vertex_at(pos));
        let neighbors = view.adjacency_mask(pos);
        for (key, agg) in child.iter() {
            let key = insert_lane(key, pos);

            // Selected: adjacent waiting vertices become dominated.
            let mut key_in = with_lane(key, pos, IN);
            let mut nb = neighbors;
            while nb != 0 {
                let q = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if lane(key_in, q) == OUT_NEEDS_DOMINATION {
                    key_in = with_lane(key_in, q, OUT_DOMINATED);
                }
            }
            out.add(key_in, agg.add_vertex_weight(weight));

            // Not selected: dominated only if some bag neighbor is in.
            let mut dominated = false;
            let mut nb = neighbors;
            while nb != 0 {
                let q = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if lane(key, q) == IN {
                    dominated = true;
                    break;
                }
            }
            let status = if dominated {
                OUT_DOMINATED
            } else {
                OUT_NEEDS_DOMINATION
            };
            out.add(with_lane(key, pos, status), agg);
        }
        debug_assert!(out.len() <= 3usize.pow(view.len() as u32));
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
            if lane(key, pos) == OUT_NEEDS_DOMINATION {
                continue; // an undominated vertex left the window: dead state
            }
            out.add(remove_lane(key, pos), agg);
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
        let in_mask = |key: u64| -> u32 {
            let mut mask = 0u32;
            for pos in 0..b {
                if lane(key, pos) == IN {
                    mask |= 1 << pos;
                }
            }
            mask
        };
        // Group the left rows by their selected set; only rows with equal
        // selected sets are compatible.
        let mut groups: std::collections::HashMap<u32, Vec<(u64, Aggregate)>> =
            std::collections::HashMap::new();
        for (key, agg) in left.iter() {
            groups.entry(in_mask(key)).or_default().push((key, agg));
        }
        let mut shared_cache: std::collections::HashMap<u32, ModValue> =
            std::collections::HashMap::new();
        let mut out = DpTable::new();
        for (rkey, ragg) in right.iter() {
            let mask = in_mask(rkey);
            let Some(rows) = groups.get(&mask) else {
                continue;
            };
            let shared = *shared_cache.entry(mask).or_insert_with(|| {
                w.set_weight(
                    (0..b)
                        .filter(|&p| mask >> p & 1 == 1)
                        .map(|p| view.vertex_at(p)),
                )
            });
            for &(lkey, lagg) in rows {
                // Per-position minimum: IN stays IN, OUT is dominated if it
                // is dominated in either branch.
                let mut merged = 0u64;
                for pos in 0..b {
                    merged = with_lane(merged, pos, lane(lkey, pos).min(lane(rkey, pos)));
                }
                out.add(merged, lagg.join(ragg, shared));
            }
        }
        debug_assert!(out.len() <= 3usize.pow(b as u32));
        out
    }

    fn extract_solution(&self, root: &DpTable) -> Option<ModValue> {
        root.get(0).map(|agg| agg.weight)
    }

    fn max_bag(&self) -> usize {
        16
    }

    fn key_bits(&self, bag_len: usize) -> Option<u32> {
        Some(LANE * bag_len as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{to_nice, TreeDecomposition};
    use crate::engine::run;
    use crate::graph::Graph;
    use crate::oracle::{wmc_bruteforce, Property};

    fn solve(g: &Graph, w: &WeightMap, td: &TreeDecomposition) -> String {
        let nd = to_nice(td, g).unwrap();
        run(&nd, g, w, &DominatingSetSolver::new())
            .unwrap()
            .output_line()
    }

    #[test]
    fn path_of_three() {
        let g = Graph::path(3);
        let w = WeightMap::uniform(3, 1);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]).unwrap();
        // {b},{a,b},{a,c},{b,c},{a,b,c}: 1+2+2+2+3.
        assert_eq!(solve(&g, &w, &td), "10");
    }

    #[test]
    fn single_vertex() {
        let g = Graph::new(1, &[]).unwrap();
        let w = WeightMap::new(vec![7]);
        let td = TreeDecomposition::single_bag(1);
        assert_eq!(solve(&g, &w, &td), "7");
    }

    #[test]
    fn empty_graph_dominates_vacuously() {
        let g = Graph::empty(0);
        let w = WeightMap::new(vec![]);
        let td = TreeDecomposition::new(vec![vec![]], vec![]).unwrap();
        assert_eq!(solve(&g, &w, &td), "0");
    }

    #[test]
    fn matches_oracle_on_small_cases() {
        for (g, bags, edges) in [
            (
                Graph::path(4),
                vec![vec![0u32, 1], vec![1, 2], vec![2, 3]],
                vec![(0, 1), (1, 2)],
            ),
            (
                Graph::cycle(5),
                vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4]],
                vec![(0, 1), (1, 2)],
            ),
            (Graph::complete(4), vec![vec![0, 1, 2, 3]], vec![]),
        ] {
            let n = g.vertex_count();
            let w = WeightMap::new((0..n as u64).map(|i| 3 * i + 1).collect());
            let td = TreeDecomposition::new(bags, edges).unwrap();
            let expect = wmc_bruteforce(&g, &w, Property::DominatingSet).unwrap();
            assert_eq!(solve(&g, &w, &td), expect.output_line());
        }
    }
}
