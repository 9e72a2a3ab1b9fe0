//! Seeded generation of low-treewidth instances, decomposition
//! perturbations, and small-subgraph coverage reporting.
//!
//! Instances come from a random walk over decomposition-building states: a
//! window of visible vertices grows by introducing fresh vertices, shrinks
//! by forgetting, and occasionally branches, producing the bag tree
//! directly. Edges are sampled only between co-windowed pairs, so the
//! resulting graph has treewidth at most the window cap by construction;
//! no post-hoc treewidth computation is ever needed.

use crate::decomposition::TreeDecomposition;
use crate::graph::{Graph, WeightMap, WEIGHT_MAX, WEIGHT_MIN};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("walk failed to place all vertices under the configured caps")]
    Unreachable,
}

/// Parameters of the instance walk. Deterministic given `seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub target_n: usize,
    /// Window cap: bags hold at most `width_cap + 1` vertices.
    pub width_cap: usize,
    /// Bags at branch points are first shrunk to at most `join_bag_cap + 1`
    /// vertices.
    pub join_bag_cap: usize,
    /// Probability that a growth step branches the walk.
    pub join_density: f64,
    /// Probability that each co-windowed pair becomes an edge.
    pub edge_density: f64,
    pub weight_min: u64,
    pub weight_max: u64,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(target_n: usize, width_cap: usize, seed: u64) -> GenConfig {
        GenConfig {
            target_n,
            width_cap,
            join_bag_cap: width_cap.min(2),
            join_density: 0.2,
            edge_density: 0.45,
            weight_min: WEIGHT_MIN,
            weight_max: WEIGHT_MAX,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if !(0.0..=1.0).contains(&self.join_density) || !(0.0..=1.0).contains(&self.edge_density) {
            return Err(GenError::InvalidConfig("probability out of [0, 1]".into()));
        }
        if self.weight_min < WEIGHT_MIN
            || self.weight_max > WEIGHT_MAX
            || self.weight_min > self.weight_max
        {
            return Err(GenError::InvalidConfig(format!(
                "weight range [{}, {}] outside [{WEIGHT_MIN}, {WEIGHT_MAX}]",
                self.weight_min, self.weight_max
            )));
        }
        if self.join_bag_cap > self.width_cap {
            return Err(GenError::InvalidConfig(
                "join bag cap exceeds width cap".into(),
            ));
        }
        Ok(())
    }
}

/// Shipped configuration families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Small instances, width at most 2.
    Warmup,
    /// The instance family the file format targets: up to 94 vertices,
    /// width at most 3, branch bags of width at most 2.
    Standard,
    /// Large instances for throughput measurements, width 3.
    Stress,
}

impl Preset {
    pub fn from_id(id: &str) -> Option<Preset> {
        match id {
            "warmup" => Some(Preset::Warmup),
            "standard" => Some(Preset::Standard),
            "stress" => Some(Preset::Stress),
            _ => None,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Preset::Warmup => "warmup",
            Preset::Standard => "standard",
            Preset::Stress => "stress",
        }
    }

    /// Draws the vertex count from the preset's range, then configures.
    pub fn config(self, seed: u64) -> GenConfig {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
        let n = match self {
            Preset::Warmup => rng.gen_range(4..=12),
            Preset::Standard => rng.gen_range(4..=94),
            Preset::Stress => rng.gen_range(10_000..=50_000),
        };
        self.config_with_n(seed, n)
    }

    pub fn config_with_n(self, seed: u64, n: usize) -> GenConfig {
        match self {
            Preset::Warmup => GenConfig {
                join_bag_cap: 2,
                join_density: 0.25,
                edge_density: 0.5,
                ..GenConfig::new(n, 2, seed)
            },
            Preset::Standard => GenConfig {
                join_bag_cap: 2,
                join_density: 0.2,
                edge_density: 0.45,
                ..GenConfig::new(n, 3, seed)
            },
            Preset::Stress => GenConfig {
                join_bag_cap: 2,
                join_density: 0.05,
                edge_density: 0.4,
                ..GenConfig::new(n, 3, seed)
            },
        }
    }
}

struct Front {
    bag_idx: usize,
    window: Vec<u32>,
    quota: usize,
}

/// Runs the decomposition walk and returns a graph of treewidth at most
/// `cfg.width_cap`, uniform random weights, and the walk's own valid
/// decomposition.
pub fn sample_instance(cfg: &GenConfig) -> Result<(Graph, WeightMap, TreeDecomposition), GenError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.target_n;
    if n == 0 {
        let g = Graph::empty(0);
        let td = TreeDecomposition::new(vec![vec![]], vec![]).expect("one empty bag");
        return Ok((g, WeightMap::new(vec![]), td));
    }

    let window_cap = cfg.width_cap + 1;
    let mut bags: Vec<Vec<u32>> = vec![vec![0]];
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut next_vertex: u32 = 1;

    let mut fronts = vec![Front {
        bag_idx: 0,
        window: vec![0],
        quota: n - 1,
    }];
    let mut steps: usize = 0;
    let step_limit = 64 * n + 256;

    while let Some(mut front) = fronts.pop() {
        while front.quota > 0 {
            steps += 1;
            if steps > step_limit {
                return Err(GenError::Unreachable);
            }

            if front.quota >= 2 && cfg.join_density > 0.0 && rng.gen_bool(cfg.join_density) {
                // Branch. Trim the window to the branch-point cap first.
                while front.window.len() > cfg.join_bag_cap + 1 {
                    let at = rng.gen_range(0..front.window.len());
                    front.window.remove(at);
                    let mut bag = front.window.clone();
                    bag.sort_unstable();
                    bags.push(bag);
                    tree_edges.push((front.bag_idx, bags.len() - 1));
                    front.bag_idx = bags.len() - 1;
                }
                let left = 1 + rng.gen_range(0..front.quota - 1);
                fronts.push(Front {
                    bag_idx: front.bag_idx,
                    window: front.window.clone(),
                    quota: front.quota - left,
                });
                front.quota = left;
                continue;
            }

            let can_introduce = front.window.len() < window_cap;
            if front.window.is_empty() || (can_introduce && rng.gen_bool(0.7)) {
                let v = next_vertex;
                next_vertex += 1;
                for &u in &front.window {
                    if rng.gen_bool(cfg.edge_density) {
                        edges.push((u, v));
                    }
                }
                front.window.push(v);
                front.quota -= 1;
            } else {
                let at = rng.gen_range(0..front.window.len());
                front.window.remove(at);
            }
            let mut bag = front.window.clone();
            bag.sort_unstable();
            bags.push(bag);
            tree_edges.push((front.bag_idx, bags.len() - 1));
            front.bag_idx = bags.len() - 1;
        }
    }

    debug_assert_eq!(next_vertex as usize, n);
    let g = Graph::new(n, &edges).expect("walk edges are in range");
    let weights = (0..n)
        .map(|_| rng.gen_range(cfg.weight_min..=cfg.weight_max))
        .collect();
    let td = TreeDecomposition::new(bags, tree_edges).expect("walk bags form a tree");
    Ok((g, WeightMap::new(weights), td))
}

/// Structure-changing rewrites of a decomposition that leave the graph and
/// the answer untouched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbationKind {
    /// Designate a different root bag.
    Reroot,
    /// Insert the intersection bag in the middle of a tree edge.
    SplitBag,
    /// Attach a duplicate of a bag as a new leaf.
    InsertRedundantBag,
    /// Relabel bag indices, changing introduce order downstream.
    ReorderIntroduce,
    /// Reverse child enumeration order, swapping join operands downstream.
    SwapJoinChildren,
    /// Normalize to nice form, then collapse random redundant edges back
    /// into a plain decomposition.
    DegradeAndReconvert,
}

impl PerturbationKind {
    pub const ALL: [PerturbationKind; 6] = [
        PerturbationKind::Reroot,
        PerturbationKind::SplitBag,
        PerturbationKind::InsertRedundantBag,
        PerturbationKind::ReorderIntroduce,
        PerturbationKind::SwapJoinChildren,
        PerturbationKind::DegradeAndReconvert,
    ];
}

/// A perturbed decomposition; `applied` is false when the rewrite had no
/// effect on this input (never an error).
pub struct Perturbed {
    pub td: TreeDecomposition,
    pub applied: bool,
}

pub fn perturb(td: &TreeDecomposition, g: &Graph, kind: PerturbationKind, seed: u64) -> Perturbed {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bags = td.bags().to_vec();
    let edges = td.tree_edges().to_vec();
    let identity = || Perturbed {
        td: td.clone(),
        applied: false,
    };
    match kind {
        PerturbationKind::Reroot => {
            if bags.len() < 2 {
                return identity();
            }
            let mut new_root = rng.gen_range(0..bags.len());
            if new_root == td.root() {
                new_root = (new_root + 1) % bags.len();
            }
            Perturbed {
                td: TreeDecomposition::new(bags, edges)
                    .expect("same shape")
                    .with_root(new_root),
                applied: true,
            }
        }
        PerturbationKind::SplitBag => {
            if edges.is_empty() {
                return identity();
            }
            let at = rng.gen_range(0..edges.len());
            let (i, j) = edges[at];
            let middle: Vec<u32> = bags[i]
                .iter()
                .copied()
                .filter(|v| bags[j].binary_search(v).is_ok())
                .collect();
            let mut bags = bags;
            let mut edges = edges;
            bags.push(middle);
            let m = bags.len() - 1;
            edges[at] = (i, m);
            edges.push((m, j));
            Perturbed {
                td: TreeDecomposition::new(bags, edges)
                    .expect("split keeps a tree")
                    .with_root(td.root()),
                applied: true,
            }
        }
        PerturbationKind::InsertRedundantBag => {
            let at = rng.gen_range(0..bags.len());
            let mut bags = bags;
            let mut edges = edges;
            bags.push(bags[at].clone());
            edges.push((at, bags.len() - 1));
            Perturbed {
                td: TreeDecomposition::new(bags, edges)
                    .expect("leaf keeps a tree")
                    .with_root(td.root()),
                applied: true,
            }
        }
        PerturbationKind::ReorderIntroduce => {
            if bags.len() < 2 {
                return identity();
            }
            let mut perm: Vec<usize> = (0..bags.len()).collect();
            for i in (1..perm.len()).rev() {
                let j = rng.gen_range(0..=i);
                perm.swap(i, j);
            }
            if perm.iter().enumerate().all(|(i, &p)| i == p) {
                perm.rotate_left(1);
            }
            let mut new_bags = vec![Vec::new(); bags.len()];
            for (old, &new) in perm.iter().enumerate() {
                new_bags[new] = bags[old].clone();
            }
            let new_edges: Vec<(usize, usize)> =
                edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
            Perturbed {
                td: TreeDecomposition::new(new_bags, new_edges)
                    .expect("relabeling keeps a tree")
                    .with_root(perm[td.root()]),
                applied: true,
            }
        }
        PerturbationKind::SwapJoinChildren => {
            if bags.len() < 3 {
                return identity();
            }
            let mut edges = edges;
            edges.reverse();
            for e in &mut edges {
                *e = (e.1, e.0);
            }
            Perturbed {
                td: TreeDecomposition::new(bags, edges)
                    .expect("same shape")
                    .with_root(td.root()),
                applied: true,
            }
        }
        PerturbationKind::DegradeAndReconvert => {
            let Ok(nice) = crate::decomposition::to_nice(td, g) else {
                return identity();
            };
            let flat = nice.to_tree_decomposition();
            let bags = flat.bags().to_vec();
            let edges = flat.tree_edges().to_vec();
            // Contract a random subset of the edges whose bags are nested;
            // the survivor is the superset bag, so width never grows.
            fn find(rep: &mut [usize], mut x: usize) -> usize {
                while rep[x] != x {
                    rep[x] = rep[rep[x]];
                    x = rep[x];
                }
                x
            }
            let mut rep: Vec<usize> = (0..bags.len()).collect();
            for &(a, b) in &edges {
                let (ra, rb) = (find(&mut rep, a), find(&mut rep, b));
                if ra == rb || !rng.gen_bool(0.5) {
                    continue;
                }
                let sub = |x: &[u32], y: &[u32]| x.iter().all(|v| y.binary_search(v).is_ok());
                if sub(&bags[ra], &bags[rb]) {
                    rep[ra] = rb;
                } else if sub(&bags[rb], &bags[ra]) {
                    rep[rb] = ra;
                }
            }
            let mut index = vec![usize::MAX; bags.len()];
            let mut new_bags = Vec::new();
            for i in 0..bags.len() {
                let r = find(&mut rep, i);
                if index[r] == usize::MAX {
                    index[r] = new_bags.len();
                    new_bags.push(bags[r].clone());
                }
            }
            let mut new_edges = Vec::new();
            let mut seen = HashSet::new();
            for &(a, b) in &edges {
                let (ra, rb) = (find(&mut rep, a), find(&mut rep, b));
                if ra != rb {
                    let e = (index[ra].min(index[rb]), index[ra].max(index[rb]));
                    if seen.insert(e) {
                        new_edges.push(e);
                    }
                }
            }
            let root = index[find(&mut rep, flat.root())];
            Perturbed {
                td: TreeDecomposition::new(new_bags, new_edges)
                    .expect("contraction keeps a tree")
                    .with_root(root),
                applied: true,
            }
        }
    }
}

/// How a small vertex set sits relative to the bag tree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StraddleCounts {
    /// Entirely inside one bag.
    pub one_bag: u64,
    /// Inside the union of two adjacent bags but no single bag.
    pub introduce_split: u64,
    /// Inside the union of two sibling bags but nothing more local.
    pub join_split: u64,
}

impl StraddleCounts {
    pub fn total(&self) -> u64 {
        self.one_bag + self.introduce_split + self.join_split
    }
}

/// Occurrence counts of every isomorphism class of induced subgraphs on at
/// most four vertices over bag-local windows, and the classes that never
/// occurred.
#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub counts: BTreeMap<&'static str, StraddleCounts>,
    pub missing: Vec<&'static str>,
}

/// All isomorphism classes of graphs on 1..=4 vertices.
pub const GADGET_CLASSES: [&str; 18] = [
    "K1", "2K1", "K2", "3K1", "K2+K1", "P3", "K3", "4K1", "K2+2K1", "2K2", "P3+K1", "claw",
    "K3+K1", "P4", "paw", "C4", "diamond", "K4",
];

/// Classifies the induced subgraph on `verts` by size, edge count, and
/// degree multiset, which together separate all classes up to order four.
fn classify(g: &Graph, verts: &[u32]) -> &'static str {
    let m = verts.len();
    let mut deg = [0u8; 4];
    let mut edges = 0u8;
    for i in 0..m {
        for j in i + 1..m {
            if g.are_adjacent(verts[i], verts[j]) {
                deg[i] += 1;
                deg[j] += 1;
                edges += 1;
            }
        }
    }
    deg[..m].sort_unstable();
    match (m, edges) {
        (1, _) => "K1",
        (2, 0) => "2K1",
        (2, _) => "K2",
        (3, 0) => "3K1",
        (3, 1) => "K2+K1",
        (3, 2) => "P3",
        (3, _) => "K3",
        (4, 0) => "4K1",
        (4, 1) => "K2+2K1",
        (4, 2) => {
            if deg == [1, 1, 1, 1] {
                "2K2"
            } else {
                "P3+K1"
            }
        }
        (4, 3) => match deg {
            [0, 2, 2, 2] => "K3+K1",
            [1, 1, 1, 3] => "claw",
            _ => "P4",
        },
        (4, 4) => {
            if deg == [2, 2, 2, 2] {
                "C4"
            } else {
                "paw"
            }
        }
        (4, 5) => "diamond",
        _ => "K4",
    }
}

/// Non-empty subsets of `pool` with at most four elements. Windows wider
/// than 20 vertices are skipped outright; they would be astronomically
/// expensive and add nothing to coverage of four-vertex classes.
fn subsets_up_to_4(pool: &[u32]) -> Vec<Vec<u32>> {
    let m = pool.len();
    let mut out = Vec::new();
    if m > 20 {
        return out;
    }
    for mask in 1u32..1 << m {
        if mask.count_ones() <= 4 {
            out.push(
                (0..m)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| pool[i])
                    .collect(),
            );
        }
    }
    out
}

/// Counts every class occurrence across the instances. Windows considered:
/// single bags, unions over tree edges, and unions over sibling bag pairs;
/// each vertex set counts once per instance under the most local window
/// containing it.
pub fn gadget_coverage<'a>(
    instances: impl IntoIterator<Item = (&'a Graph, &'a TreeDecomposition)>,
) -> CoverageReport {
    let mut counts: BTreeMap<&'static str, StraddleCounts> = BTreeMap::new();
    for label in GADGET_CLASSES {
        counts.insert(label, StraddleCounts::default());
    }
    for (g, td) in instances {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let bags = td.bags();

        for bag in bags {
            for set in subsets_up_to_4(bag) {
                if seen.insert(set.clone()) {
                    counts.get_mut(classify(g, &set)).unwrap().one_bag += 1;
                }
            }
        }

        let union_window = |a: &[u32], b: &[u32]| -> Vec<u32> {
            let mut u: Vec<u32> = a.iter().chain(b.iter()).copied().collect();
            u.sort_unstable();
            u.dedup();
            u
        };
        for &(i, j) in td.tree_edges() {
            let window = union_window(&bags[i], &bags[j]);
            for set in subsets_up_to_4(&window) {
                if seen.insert(set.clone()) {
                    counts.get_mut(classify(g, &set)).unwrap().introduce_split += 1;
                }
            }
        }

        // Sibling pairs: two bags adjacent to a common bag.
        let mut adjacency = vec![Vec::new(); bags.len()];
        for &(i, j) in td.tree_edges() {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for nbrs in &adjacency {
            for (x, &a) in nbrs.iter().enumerate() {
                for &b in nbrs.iter().skip(x + 1) {
                    let window = union_window(&bags[a], &bags[b]);
                    for set in subsets_up_to_4(&window) {
                        if seen.insert(set.clone()) {
                            counts.get_mut(classify(g, &set)).unwrap().join_split += 1;
                        }
                    }
                }
            }
        }
    }
    let missing = GADGET_CLASSES
        .iter()
        .copied()
        .filter(|label| counts[label].total() == 0)
        .collect();
    CoverageReport { counts, missing }
}

/// Long spine with pendant legs: maximal forget churn per introduced
/// vertex.
pub fn caterpillar(n: usize) -> (Graph, TreeDecomposition) {
    assert!(n >= 2);
    let spine = n.div_ceil(2);
    let mut edges = Vec::new();
    let mut bags = Vec::new();
    let mut tree_edges = Vec::new();
    for s in 1..spine {
        edges.push((s as u32 - 1, s as u32));
        bags.push(vec![s as u32 - 1, s as u32]);
    }
    if bags.is_empty() {
        bags.push(vec![0]);
    }
    for i in 1..bags.len() {
        tree_edges.push((i - 1, i));
    }
    for leg in spine..n {
        let anchor = (leg - spine) % spine;
        edges.push((anchor as u32, leg as u32));
        bags.push(vec![anchor as u32, leg as u32]);
        let attach = if anchor == 0 { 0 } else { anchor - 1 };
        tree_edges.push((attach, bags.len() - 1));
    }
    let g = Graph::new(n, &edges).expect("caterpillar edges in range");
    let td = TreeDecomposition::new(bags, tree_edges).expect("caterpillar bags form a tree");
    (g, td)
}

/// A hub vertex shared by many pendant bags: folds into a deep chain of
/// binary joins.
pub fn broom(n: usize) -> (Graph, TreeDecomposition) {
    assert!(n >= 2);
    let mut edges = Vec::new();
    let mut bags = vec![vec![0u32]];
    let mut tree_edges = Vec::new();
    for v in 1..n as u32 {
        edges.push((0, v));
        bags.push(vec![0, v]);
        tree_edges.push((0, bags.len() - 1));
    }
    let g = Graph::new(n, &edges).expect("broom edges in range");
    let td = TreeDecomposition::new(bags, tree_edges).expect("broom bags form a tree");
    (g, td)
}

/// Chain of (k+1)-cliques overlapping in k vertices: every bag sits at the
/// width cap.
pub fn clique_chain(n: usize, k: usize) -> (Graph, TreeDecomposition) {
    assert!(n > k && k >= 1);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..(u + 1 + k as u32).min(n as u32) {
            edges.push((u, v));
        }
    }
    let mut bags = Vec::new();
    let mut tree_edges = Vec::new();
    for start in 0..n - k {
        bags.push(((start as u32)..=(start + k) as u32).collect());
        if start > 0 {
            tree_edges.push((start - 1, start));
        }
    }
    let g = Graph::new(n, &edges).expect("chain edges in range");
    let td = TreeDecomposition::new(bags, tree_edges).expect("chain bags form a tree");
    (g, td)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_zero_forces_edgeless() {
        let cfg = GenConfig {
            edge_density: 1.0,
            join_density: 0.0,
            join_bag_cap: 0,
            ..GenConfig::new(4, 0, 7)
        };
        let (g, _, td) = sample_instance(&cfg).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(td.validate(&g).is_valid());
    }

    #[test]
    fn full_density_single_window_gives_clique() {
        let cfg = GenConfig {
            edge_density: 1.0,
            join_density: 0.0,
            ..GenConfig::new(5, 4, 11)
        };
        let (g, _, td) = sample_instance(&cfg).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert_eq!(td.width().0, 4);
        assert!(td.validate(&g).is_valid());
    }

    #[test]
    fn sampled_instances_validate_and_respect_caps() {
        for seed in 0..40 {
            let cfg = Preset::Standard.config(seed);
            let (g, w, td) = sample_instance(&cfg).unwrap();
            assert_eq!(w.len(), g.vertex_count());
            assert!(td.validate(&g).is_valid(), "seed {seed}");
            assert!(td.width().0 <= cfg.width_cap, "seed {seed}");
            for &x in w.as_slice() {
                assert!((cfg.weight_min..=cfg.weight_max).contains(&x));
            }
        }
    }

    #[test]
    fn seed_determinism() {
        let cfg = Preset::Standard.config(123);
        let a = sample_instance(&cfg).unwrap();
        let b = sample_instance(&cfg).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
        assert_eq!(a.2.bags(), b.2.bags());
        assert_eq!(a.2.tree_edges(), b.2.tree_edges());
    }

    #[test]
    fn perturbations_preserve_validity_and_graph() {
        let cfg = Preset::Warmup.config(31);
        let (g, _, td) = sample_instance(&cfg).unwrap();
        let base_width = td.width().0;
        for (i, kind) in PerturbationKind::ALL.iter().cycle().take(30).enumerate() {
            let out = perturb(&td, &g, *kind, i as u64);
            assert!(
                out.td.validate(&g).is_valid(),
                "{kind:?} broke validity at seed {i}"
            );
            assert!(out.td.width().0 <= base_width.max(cfg.width_cap));
        }
    }

    #[test]
    fn reroot_single_bag_is_identity_with_flag() {
        let g = Graph::complete(3);
        let td = TreeDecomposition::single_bag(3);
        let out = perturb(&td, &g, PerturbationKind::Reroot, 0);
        assert!(!out.applied);
        assert_eq!(out.td.bags(), td.bags());
    }

    #[test]
    fn insert_redundant_bag_grows_by_one() {
        let g = Graph::path(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]).unwrap();
        let out = perturb(&td, &g, PerturbationKind::InsertRedundantBag, 5);
        assert!(out.applied);
        assert_eq!(out.td.bags().len(), 3);
        assert!(out.td.validate(&g).is_valid());
    }

    #[test]
    fn coverage_flags_missing_classes() {
        // K4 in a single bag: no induced P4 anywhere.
        let g = Graph::complete(4);
        let td = TreeDecomposition::single_bag(4);
        let report = gadget_coverage([(&g, &td)]);
        assert!(report.missing.contains(&"P4"));
        assert_eq!(report.counts["K4"].one_bag, 1);
        assert_eq!(report.counts["K3"].one_bag, 4);

        let empty = gadget_coverage(std::iter::empty());
        assert_eq!(empty.missing.len(), GADGET_CLASSES.len());
    }

    #[test]
    fn extremal_shapes_are_valid() {
        let (g, td) = caterpillar(30);
        assert!(td.validate(&g).is_valid());
        let (g, td) = broom(20);
        assert!(td.validate(&g).is_valid());
        let (g, td) = clique_chain(20, 3);
        assert!(td.validate(&g).is_valid());
        assert_eq!(td.width().0, 3);
    }
}
