//! Bottom-up evaluation of a nice decomposition through solver callbacks.
//!
//! The engine owns the traversal and the aggregate bookkeeping; a solver
//! supplies five callbacks (leaf, introduce, forget, join, and final
//! extraction) and sees the graph only through a [`BagView`] restricted to
//! the current bag. Solvers key their tables by opaque packed profiles;
//! colliding keys merge by aggregate addition.

use crate::decomposition::{NiceDecomposition, NiceNode};
use crate::graph::{Graph, WeightMap};
use crate::modular::ModValue;
use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("root bag of the nice decomposition is not empty")]
    NonEmptyRoot,
    #[error("bag of size {got} exceeds the solver's limit of {limit}")]
    BagTooLarge { got: usize, limit: usize },
    #[error(
        "callback produced key {key:#x} outside the {bits}-bit domain for a bag of {bag} vertices"
    )]
    KeyOutOfDomain { key: u64, bits: u32, bag: usize },
}

/// Multiply-xor hasher for packed profile keys. Profiles are already
/// well-mixed small integers; this avoids the default hasher's overhead on
/// the hot path.
#[derive(Default)]
pub struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 ^ b as u64).wrapping_mul(0x100000001b3);
        }
    }

    fn write_u64(&mut self, key: u64) {
        let mut h = key.wrapping_mul(0x9e3779b97f4a7c15);
        h ^= h >> 32;
        self.0 = h;
    }
}

/// The value side of a table row: how many grouped partial solutions exist
/// and their total set weight, both reduced.
///
/// Rows are only ever created from witnessed partial solutions, so the
/// presence of a row proves feasibility even when `count` reduces to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Aggregate {
    pub count: ModValue,
    pub weight: ModValue,
}

impl Aggregate {
    pub fn unit() -> Aggregate {
        Aggregate {
            count: ModValue::ONE,
            weight: ModValue::ZERO,
        }
    }

    /// Disjoint union of two groups.
    pub fn merge(self, other: Aggregate) -> Aggregate {
        Aggregate {
            count: self.count + other.count,
            weight: self.weight + other.weight,
        }
    }

    /// Adds `w` to every solution in the group (an introduced selected
    /// vertex): the weight grows by `count * w`.
    pub fn add_vertex_weight(self, w: ModValue) -> Aggregate {
        Aggregate {
            count: self.count,
            weight: self.weight + self.count * w,
        }
    }

    /// Combines two groups that overlap exactly on a shared selected set of
    /// weight `shared`. Every cross pair unions to one solution, so counts
    /// multiply, and each pairing would count the shared vertices twice:
    ///
    /// `count = c1*c2`, `weight = w1*c2 + w2*c1 - c1*c2*shared`.
    ///
    /// Join callbacks must combine aggregates through this helper.
    pub fn join(self, other: Aggregate, shared: ModValue) -> Aggregate {
        let count = self.count * other.count;
        let weight = self.weight * other.count + other.weight * self.count - count * shared;
        Aggregate { count, weight }
    }
}

/// Profile-keyed table of aggregates for one decomposition node.
#[derive(Debug, Clone, Default)]
pub struct DpTable {
    rows: HashMap<u64, Aggregate, BuildHasherDefault<KeyHasher>>,
}

impl DpTable {
    pub fn new() -> DpTable {
        DpTable::default()
    }

    pub fn with_capacity(capacity: usize) -> DpTable {
        DpTable {
            rows: HashMap::with_capacity_and_hasher(capacity, BuildHasherDefault::default()),
        }
    }

    /// Inserts a row, merging with any existing row under the same key.
    pub fn add(&mut self, key: u64, agg: Aggregate) {
        self.rows
            .entry(key)
            .and_modify(|existing| *existing = existing.merge(agg))
            .or_insert(agg);
    }

    pub fn get(&self, key: u64) -> Option<Aggregate> {
        self.rows.get(&key).copied()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Aggregate)> + '_ {
        self.rows.iter().map(|(&k, &v)| (k, v))
    }

    pub fn drain(&mut self) -> impl Iterator<Item = (u64, Aggregate)> + '_ {
        self.rows.drain()
    }
}

impl FromIterator<(u64, Aggregate)> for DpTable {
    fn from_iter<T: IntoIterator<Item = (u64, Aggregate)>>(iter: T) -> Self {
        let mut table = DpTable::new();
        for (k, v) in iter {
            table.add(k, v);
        }
        table
    }
}

/// The local window a callback is allowed to inspect: the bag's vertices and
/// the edges of `G` with both endpoints inside it. Queries about vertices
/// outside the bag are rejected by panic.
pub struct BagView<'a> {
    bag: &'a [u32],
    /// Per-position adjacency bitmask over bag positions.
    adj: Vec<u32>,
}

impl<'a> BagView<'a> {
    pub fn new(bag: &'a [u32], g: &Graph) -> BagView<'a> {
        let mut adj = vec![0u32; bag.len()];
        for i in 0..bag.len() {
            for j in i + 1..bag.len() {
                if g.are_adjacent(bag[i], bag[j]) {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        BagView { bag, adj }
    }

    pub fn len(&self) -> usize {
        self.bag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bag.is_empty()
    }

    /// Sorted vertices of the bag; profile positions index into this slice.
    pub fn vertices(&self) -> &[u32] {
        self.bag
    }

    pub fn vertex_at(&self, pos: usize) -> u32 {
        self.bag[pos]
    }

    pub fn position_of(&self, v: u32) -> Option<usize> {
        self.bag.binary_search(&v).ok()
    }

    /// Bitmask over positions adjacent to position `pos`.
    pub fn adjacency_mask(&self, pos: usize) -> u32 {
        self.adj[pos]
    }

    pub fn adjacent_positions(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    /// Adjacency by vertex id; both must lie in the bag.
    pub fn are_adjacent(&self, u: u32, v: u32) -> bool {
        let a = self
            .position_of(u)
            .unwrap_or_else(|| panic!("vertex {u} is outside the current bag"));
        let b = self
            .position_of(v)
            .unwrap_or_else(|| panic!("vertex {v} is outside the current bag"));
        self.adjacent_positions(a, b)
    }

    /// The edges of `G` restricted to the bag.
    pub fn local_edges(&self) -> Vec<(u32, u32)> {
        let mut edges = Vec::new();
        for i in 0..self.bag.len() {
            for j in i + 1..self.bag.len() {
                if self.adjacent_positions(i, j) {
                    edges.push((self.bag[i], self.bag[j]));
                }
            }
        }
        edges
    }
}

/// The five callbacks a solver implements, plus bag-size and key-domain
/// limits the engine enforces.
///
/// For introduce nodes the view covers the parent bag (the introduced vertex
/// included); for forget nodes it covers the child bag (the forgotten vertex
/// still visible), since the transition needs that vertex's local adjacency.
/// Callbacks may consult only the view, their input tables, and the weight
/// map, and must key output rows by profiles over the produced bag.
pub trait SolverCallbacks {
    fn leaf_callback(&self, view: &BagView, w: &WeightMap) -> DpTable;

    /// `pos` is the introduced vertex's position in `view`.
    fn introduce_callback(
        &self,
        view: &BagView,
        pos: usize,
        child: DpTable,
        w: &WeightMap,
    ) -> DpTable;

    /// `pos` is the forgotten vertex's position in `view` (the child bag).
    fn forget_callback(&self, view: &BagView, pos: usize, child: DpTable, w: &WeightMap)
        -> DpTable;

    fn join_callback(
        &self,
        view: &BagView,
        left: DpTable,
        right: DpTable,
        w: &WeightMap,
    ) -> DpTable;

    /// Reads the root table (empty bag) and produces the answer, or `None`
    /// when no valid profile survived.
    fn extract_solution(&self, root: &DpTable) -> Option<ModValue>;

    /// Largest bag this solver's profile encoding supports.
    fn max_bag(&self) -> usize {
        16
    }

    /// Width in bits of the valid key domain for a bag of `bag_len`
    /// vertices, if the solver can state one. The engine rejects keys
    /// outside it.
    fn key_bits(&self, bag_len: usize) -> Option<u32> {
        let _ = bag_len;
        None
    }
}

/// Whether the property has any satisfying set; infeasibility is decided by
/// table emptiness, never by a zero residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WmcOutcome {
    Feasible(ModValue),
    Infeasible,
}

impl WmcOutcome {
    /// Formats as the single output line: a residue or `-1`.
    pub fn output_line(&self) -> String {
        match self {
            WmcOutcome::Feasible(v) => v.to_string(),
            WmcOutcome::Infeasible => "-1".to_string(),
        }
    }

    pub fn value(&self) -> Option<ModValue> {
        match self {
            WmcOutcome::Feasible(v) => Some(*v),
            WmcOutcome::Infeasible => None,
        }
    }
}

/// Per-node-type elapsed time and table-size statistics for one run.
#[derive(Debug, Clone, Default)]
pub struct RunStats {
    pub leaf_time: Duration,
    pub introduce_time: Duration,
    pub forget_time: Duration,
    pub join_time: Duration,
    pub nodes: usize,
    pub max_table_rows: usize,
}

impl RunStats {
    pub fn total_time(&self) -> Duration {
        self.leaf_time + self.introduce_time + self.forget_time + self.join_time
    }
}

/// Runs the solver over the decomposition and returns the outcome with
/// timing statistics.
///
/// Nodes are stored children-first, so a single forward sweep is a
/// post-order traversal; every child table is complete before its parent's
/// callback runs and is consumed exactly once.
pub fn run_with_stats(
    nd: &NiceDecomposition,
    g: &Graph,
    w: &WeightMap,
    solver: &dyn SolverCallbacks,
) -> Result<(WmcOutcome, RunStats), EngineError> {
    if !nd.bag(nd.root()).is_empty() {
        return Err(EngineError::NonEmptyRoot);
    }
    let limit = solver.max_bag();
    let mut stats = RunStats {
        nodes: nd.len(),
        ..RunStats::default()
    };
    let mut tables: Vec<Option<DpTable>> = Vec::with_capacity(nd.len());
    for i in 0..nd.len() {
        let start = Instant::now();
        let (table, slot) = match *nd.node(i) {
            NiceNode::Leaf => {
                let view = BagView::new(nd.bag(i), g);
                if view.len() > limit {
                    return Err(EngineError::BagTooLarge {
                        got: view.len(),
                        limit,
                    });
                }
                (solver.leaf_callback(&view, w), &mut stats.leaf_time)
            }
            NiceNode::Introduce { child, vertex } => {
                let view = BagView::new(nd.bag(i), g);
                if view.len() > limit {
                    return Err(EngineError::BagTooLarge {
                        got: view.len(),
                        limit,
                    });
                }
                let pos = view.position_of(vertex).expect("introduced vertex in bag");
                let input = tables[child].take().expect("child table consumed once");
                (
                    solver.introduce_callback(&view, pos, input, w),
                    &mut stats.introduce_time,
                )
            }
            NiceNode::Forget { child, vertex } => {
                // The view spans the child bag: the forgotten vertex and its
                // local adjacency are still visible to the transition.
                let view = BagView::new(nd.bag(child), g);
                let pos = view
                    .position_of(vertex)
                    .expect("forgotten vertex in child bag");
                let input = tables[child].take().expect("child table consumed once");
                (
                    solver.forget_callback(&view, pos, input, w),
                    &mut stats.forget_time,
                )
            }
            NiceNode::Join { left, right } => {
                let view = BagView::new(nd.bag(i), g);
                let left_in = tables[left].take().expect("child table consumed once");
                let right_in = tables[right].take().expect("child table consumed once");
                (
                    solver.join_callback(&view, left_in, right_in, w),
                    &mut stats.join_time,
                )
            }
        };
        *slot += start.elapsed();
        stats.max_table_rows = stats.max_table_rows.max(table.len());
        if let Some(bits) = solver.key_bits(nd.bag(i).len()) {
            debug_assert!(bits <= 64);
            if bits < 64 {
                for (key, _) in table.iter() {
                    if key >> bits != 0 {
                        return Err(EngineError::KeyOutOfDomain {
                            key,
                            bits,
                            bag: nd.bag(i).len(),
                        });
                    }
                }
            }
        }
        tables.push(Some(table));
    }
    let root = tables[nd.root()].take().expect("root table present");
    let outcome = match solver.extract_solution(&root) {
        Some(v) => WmcOutcome::Feasible(v),
        None => WmcOutcome::Infeasible,
    };
    Ok((outcome, stats))
}

/// [`run_with_stats`] without the statistics.
pub fn run(
    nd: &NiceDecomposition,
    g: &Graph,
    w: &WeightMap,
    solver: &dyn SolverCallbacks,
) -> Result<WmcOutcome, EngineError> {
    run_with_stats(nd, g, w, solver).map(|(outcome, _)| outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregate_join_formula() {
        let a = Aggregate {
            count: ModValue::new(3),
            weight: ModValue::new(10),
        };
        let b = Aggregate {
            count: ModValue::new(5),
            weight: ModValue::new(20),
        };
        let shared = ModValue::new(2);
        let joined = a.join(b, shared);
        assert_eq!(joined.count.value(), 15);
        // 10*5 + 20*3 - 15*2 = 50 + 60 - 30
        assert_eq!(joined.weight.value(), 80);
    }

    #[test]
    fn join_on_empty_interface_squares_counts() {
        let c = Aggregate {
            count: ModValue::new(7),
            weight: ModValue::new(4),
        };
        let joined = c.join(c, ModValue::ZERO);
        assert_eq!(joined.count.value(), 49);
        assert_eq!(joined.weight.value(), 2 * 4 * 7);
    }

    #[test]
    fn aggregate_linearity_under_join() {
        // Splitting one side into two groups and joining each against the
        // other side adds up to joining the merged group.
        let l1 = Aggregate {
            count: ModValue::new(2),
            weight: ModValue::new(9),
        };
        let l2 = Aggregate {
            count: ModValue::new(4),
            weight: ModValue::new(1),
        };
        let r = Aggregate {
            count: ModValue::new(3),
            weight: ModValue::new(5),
        };
        let shared = ModValue::new(6);
        let split = l1.join(r, shared).merge(l2.join(r, shared));
        let merged = l1.merge(l2).join(r, shared);
        assert_eq!(split, merged);
    }

    #[test]
    fn table_merges_colliding_keys() {
        let mut t = DpTable::new();
        t.add(5, Aggregate::unit());
        t.add(5, Aggregate::unit());
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(5).unwrap().count.value(), 2);
    }

    #[test]
    fn bag_view_restriction() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let bag = [1u32, 2];
        let view = BagView::new(&bag, &g);
        assert!(view.are_adjacent(1, 2));
        assert_eq!(view.local_edges(), vec![(1, 2)]);
        assert_eq!(view.position_of(3), None);
    }

    #[test]
    fn keys_outside_the_declared_domain_are_contract_errors() {
        struct Rogue;
        impl SolverCallbacks for Rogue {
            fn leaf_callback(&self, _: &BagView, _: &WeightMap) -> DpTable {
                let mut t = DpTable::new();
                t.add(1 << 40, Aggregate::unit()); // far outside 2 bits/position
                t
            }
            fn introduce_callback(
                &self,
                _: &BagView,
                _: usize,
                t: DpTable,
                _: &WeightMap,
            ) -> DpTable {
                t
            }
            fn forget_callback(&self, _: &BagView, _: usize, t: DpTable, _: &WeightMap) -> DpTable {
                t
            }
            fn join_callback(&self, _: &BagView, l: DpTable, _: DpTable, _: &WeightMap) -> DpTable {
                l
            }
            fn extract_solution(&self, _: &DpTable) -> Option<ModValue> {
                None
            }
            fn key_bits(&self, bag_len: usize) -> Option<u32> {
                Some(2 * bag_len as u32)
            }
        }
        let g = Graph::empty(1);
        let td = crate::decomposition::TreeDecomposition::single_bag(1);
        let nd = crate::decomposition::to_nice(&td, &g).unwrap();
        let w = WeightMap::uniform(1, 1);
        match run(&nd, &g, &w, &Rogue) {
            Err(EngineError::KeyOutOfDomain { .. }) => {}
            other => panic!("expected a contract violation, got {other:?}"),
        }
    }

    #[test]
    #[should_panic(expected = "outside the current bag")]
    fn bag_view_rejects_outside_queries() {
        let g = Graph::path(4);
        let bag = [1u32, 2];
        let view = BagView::new(&bag, &g);
        view.are_adjacent(1, 3);
    }
}
