//! Brute-force ground truth: property predicates evaluated by literal
//! enumeration, and subset-enumeration weighted model counting.
//!
//! Everything here favors being obviously correct over being fast; the
//! predicates are the reference that every bag-local solver is measured
//! against.

use crate::graph::{Graph, WeightMap};
use crate::modular::ModValue;
use thiserror::Error;

/// Largest vertex count the subset enumeration accepts.
pub const ENUMERATION_LIMIT: usize = 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {0} vertices, enumeration is limited to {ENUMERATION_LIMIT}")]
    TooLarge(usize),
    #[error("unknown property id {0:?}")]
    UnknownProperty(String),
}

/// A vertex-set property checked by direct enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    DominatingSet,
    /// Connected with at least `k` vertices.
    ConnectedAtLeast(usize),
    Cograph,
    BipartiteCograph,
    MaximalClusterGraph,
    /// No induced four-cycle. Oracle-only: there is no bag-local solver
    /// registered for this property.
    C4Free,
}

impl Property {
    /// Registry ids as used by the command line.
    pub fn id(self) -> &'static str {
        match self {
            Property::DominatingSet => "dominating-set",
            Property::ConnectedAtLeast(_) => "connected-ge-k",
            Property::Cograph => "cograph",
            Property::BipartiteCograph => "bipartite-cograph",
            Property::MaximalClusterGraph => "maximal-cluster-graph",
            Property::C4Free => "c4-free",
        }
    }

    pub fn from_id(id: &str) -> Result<Property, OracleError> {
        Ok(match id {
            "dominating-set" => Property::DominatingSet,
            "connected-ge-k" => Property::ConnectedAtLeast(4),
            "cograph" => Property::Cograph,
            "bipartite-cograph" => Property::BipartiteCograph,
            "maximal-cluster-graph" => Property::MaximalClusterGraph,
            "c4-free" => Property::C4Free,
            other => return Err(OracleError::UnknownProperty(other.to_string())),
        })
    }

    /// All ids the oracle understands.
    pub fn all_ids() -> &'static [&'static str] {
        &[
            "dominating-set",
            "connected-ge-k",
            "cograph",
            "bipartite-cograph",
            "maximal-cluster-graph",
            "c4-free",
        ]
    }

    pub fn holds(self, g: &Graph, set: u64) -> bool {
        match self {
            Property::DominatingSet => is_dominating(g, set),
            Property::ConnectedAtLeast(k) => is_connected_ge_k(g, set, k),
            Property::Cograph => is_cograph(g, set),
            Property::BipartiteCograph => is_cograph(g, set) && is_bipartite(g, set),
            Property::MaximalClusterGraph => is_maximal_cluster(g, set),
            Property::C4Free => c4_free(g, set),
        }
    }
}

fn members(set: u64) -> impl Iterator<Item = u32> {
    (0..64u32).filter(move |&v| set >> v & 1 == 1)
}

/// Every vertex outside the set has a neighbor inside it.
pub fn is_dominating(g: &Graph, set: u64) -> bool {
    (0..g.vertex_count() as u32)
        .filter(|&v| set >> v & 1 == 0)
        .all(|v| g.neighbors(v).iter().any(|&u| set >> u & 1 == 1))
}

/// `G[set]` is connected (single traversal component) and `|set| >= k`.
pub fn is_connected_ge_k(g: &Graph, set: u64, k: usize) -> bool {
    let size = set.count_ones() as usize;
    if size < k {
        return false;
    }
    if size == 0 {
        // Only reachable with k == 0; the empty graph counts as connected.
        return true;
    }
    let start = set.trailing_zeros();
    let mut seen = 1u64 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if set >> u & 1 == 1 && seen >> u & 1 == 0 {
                seen |= 1 << u;
                stack.push(u);
            }
        }
    }
    seen == set
}

/// `G[set]` contains no induced path on four vertices.
pub fn is_cograph(g: &Graph, set: u64) -> bool {
    let verts: Vec<u32> = members(set).collect();
    let m = verts.len();
    for a in 0..m {
        for b in 0..m {
            for c in b + 1..m {
                for d in 0..m {
                    if a == b || a == c || a == d || d == b || d == c {
                        continue;
                    }
                    // Path verts[a] - verts[b] - verts[c] - verts[d], ends a < d
                    // not required since (b, c) is ordered and (a, d) scanned fully.
                    let (pa, pb, pc, pd) = (verts[a], verts[b], verts[c], verts[d]);
                    if g.are_adjacent(pa, pb)
                        && g.are_adjacent(pb, pc)
                        && g.are_adjacent(pc, pd)
                        && !g.are_adjacent(pa, pc)
                        && !g.are_adjacent(pa, pd)
                        && !g.are_adjacent(pb, pd)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `G[set]` admits a proper 2-coloring.
pub fn is_bipartite(g: &Graph, set: u64) -> bool {
    let mut color = [0u8; 64]; // 0 = unvisited, 1/2 = sides
    for start in members(set) {
        if color[start as usize] != 0 {
            continue;
        }
        color[start as usize] = 1;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if set >> u & 1 == 0 {
                    continue;
                }
                if color[u as usize] == 0 {
                    color[u as usize] = 3 - color[v as usize];
                    stack.push(u);
                } else if color[u as usize] == color[v as usize] {
                    return false;
                }
            }
        }
    }
    true
}

/// `G[set]` contains no closed walk of odd length; equivalent to
/// [`is_bipartite`] and kept as an independent formulation for cross-checks.
pub fn odd_cycle_free(g: &Graph, set: u64) -> bool {
    // Walk parity via iterated reachability: reach[v][p] = a walk of parity p
    // from the component representative reaches v.
    let verts: Vec<u32> = members(set).collect();
    for &start in &verts {
        let mut even = 1u64 << start;
        let mut odd = 0u64;
        loop {
            let mut next_even = even;
            let mut next_odd = odd;
            for &v in &verts {
                if even >> v & 1 == 1 {
                    for &u in g.neighbors(v) {
                        if set >> u & 1 == 1 {
                            next_odd |= 1 << u;
                        }
                    }
                }
                if odd >> v & 1 == 1 {
                    for &u in g.neighbors(v) {
                        if set >> u & 1 == 1 {
                            next_even |= 1 << u;
                        }
                    }
                }
            }
            if next_even == even && next_odd == odd {
                break;
            }
            even = next_even;
            odd = next_odd;
        }
        if even & odd != 0 {
            return false;
        }
    }
    true
}

/// `G[set]` has no triangle.
pub fn triangle_free(g: &Graph, set: u64) -> bool {
    let verts: Vec<u32> = members(set).collect();
    let m = verts.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                if g.are_adjacent(verts[i], verts[j])
                    && g.are_adjacent(verts[j], verts[k])
                    && g.are_adjacent(verts[i], verts[k])
                {
                    return false;
                }
            }
        }
    }
    true
}

/// `G[set]` has no induced four-cycle: four vertices carrying exactly the
/// four cycle edges and nothing else.
pub fn c4_free(g: &Graph, set: u64) -> bool {
    let verts: Vec<u32> = members(set).collect();
    let m = verts.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                for l in k + 1..m {
                    let q = [verts[i], verts[j], verts[k], verts[l]];
                    // A 4-subset induces C4 iff it has exactly 4 edges and
                    // every vertex has degree 2 within the subset.
                    let mut deg = [0u32; 4];
                    let mut edges = 0;
                    for a in 0..4 {
                        for b in a + 1..4 {
                            if g.are_adjacent(q[a], q[b]) {
                                deg[a] += 1;
                                deg[b] += 1;
                                edges += 1;
                            }
                        }
                    }
                    if edges == 4 && deg.iter().all(|&d| d == 2) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `G[set]` is a disjoint union of cliques, checked as "no induced path on
/// three vertices".
pub fn is_cluster(g: &Graph, set: u64) -> bool {
    let verts: Vec<u32> = members(set).collect();
    let m = verts.len();
    for c in 0..m {
        for a in 0..m {
            for b in a + 1..m {
                if a == c || b == c {
                    continue;
                }
                if g.are_adjacent(verts[a], verts[c])
                    && g.are_adjacent(verts[c], verts[b])
                    && !g.are_adjacent(verts[a], verts[b])
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Second formulation of [`is_cluster`]: every traversal component is a
/// clique. The two must agree on every set; tests enforce it.
pub fn is_cluster_by_components(g: &Graph, set: u64) -> bool {
    let mut remaining = set;
    while remaining != 0 {
        let start = remaining.trailing_zeros();
        let mut comp = 1u64 << start;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if set >> u & 1 == 1 && comp >> u & 1 == 0 {
                    comp |= 1 << u;
                    stack.push(u);
                }
            }
        }
        let verts: Vec<u32> = members(comp).collect();
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                if !g.are_adjacent(verts[i], verts[j]) {
                    return false;
                }
            }
        }
        remaining &= !comp;
    }
    true
}

/// `G[set]` is a cluster graph and no single outside vertex can be added
/// while keeping it one. Being cluster is closed downward, so local
/// maximality equals maximality over all supersets.
pub fn is_maximal_cluster(g: &Graph, set: u64) -> bool {
    if !is_cluster(g, set) {
        return false;
    }
    for v in 0..g.vertex_count() as u32 {
        if set >> v & 1 == 0 && is_cluster(g, set | 1 << v) {
            return false;
        }
    }
    true
}

/// The result of a brute-force count: the exact integer answer, its residue,
/// and whether any subset satisfied the property at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceCount {
    pub exact: u128,
    pub reduced: ModValue,
    pub feasible: bool,
}

impl BruteForceCount {
    /// The one-line answer: the residue, or `-1` when infeasible.
    pub fn output_line(&self) -> String {
        if self.feasible {
            self.reduced.to_string()
        } else {
            "-1".to_string()
        }
    }
}

/// Sums `w(S)` over all subsets `S` satisfying `property`, by enumerating
/// all `2^n` subsets. Exact integer arithmetic throughout; the residue is
/// derived from the exact sum.
pub fn wmc_bruteforce(
    g: &Graph,
    w: &WeightMap,
    property: Property,
) -> Result<BruteForceCount, OracleError> {
    let n = g.vertex_count();
    if n > ENUMERATION_LIMIT {
        return Err(OracleError::TooLarge(n));
    }
    let mut exact: u128 = 0;
    let mut feasible = false;
    for set in 0..1u64 << n {
        if property.holds(g, set) {
            feasible = true;
            exact += w.set_weight_exact(members(set)) as u128;
        }
    }
    Ok(BruteForceCount {
        exact,
        reduced: ModValue::new((exact % crate::modular::MODULUS as u128) as u64),
        feasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::path(3)
    }

    fn p4() -> Graph {
        Graph::path(4)
    }

    #[test]
    fn dominating_basics() {
        let g = p3();
        assert!(is_dominating(&g, 0b010)); // the center
        assert!(!is_dominating(&g, 0b001)); // one endpoint
        assert!(is_dominating(&g, 0b111)); // the whole vertex set
    }

    #[test]
    fn connected_ge_k_basics() {
        let g = p4();
        assert!(is_connected_ge_k(&g, 0b1111, 4));
        assert!(!is_connected_ge_k(&g, 0b0111, 4));
        // Two opposite arcs of a six-cycle: 4 vertices, two components.
        // (On a five-cycle every 4-subset induces a connected path, so the
        // smallest cycle with a disconnected 2+2 arc pair is C6.)
        let c6 = Graph::cycle(6);
        assert!(!is_connected_ge_k(&c6, 0b011011, 4));
        // Dropping a vertex from a five-cycle leaves a connected path.
        let c5 = Graph::cycle(5);
        assert!(is_connected_ge_k(&c5, 0b11011, 4));
    }

    #[test]
    fn cograph_and_cluster_basics() {
        assert!(!is_cograph(&p4(), 0b1111));
        assert!(is_cograph(&p4(), 0b0111));
        let k3 = Graph::complete(3);
        assert!(is_cluster(&k3, 0b111));
        assert!(!is_maximal_cluster(&k3, 0b011)); // adding the third keeps a clique
        assert!(is_maximal_cluster(&k3, 0b111));
    }

    #[test]
    fn c4_basics() {
        let c4 = Graph::cycle(4);
        assert!(!c4_free(&c4, 0b1111));
        // Every 4-cycle in K4 has a chord, so K4 is induced-C4-free.
        let k4 = Graph::complete(4);
        assert!(c4_free(&k4, 0b1111));
    }

    #[test]
    fn brute_force_counts() {
        let w = WeightMap::uniform(3, 1);
        let out = wmc_bruteforce(&p3(), &w, Property::DominatingSet).unwrap();
        assert_eq!(out.exact, 10);
        assert_eq!(out.reduced.value(), 10);
        assert!(out.feasible);

        let w4 = WeightMap::uniform(4, 1);
        let out = wmc_bruteforce(&p4(), &w4, Property::ConnectedAtLeast(4)).unwrap();
        assert_eq!(out.exact, 4);

        // Empty graph: the empty set dominates vacuously, with weight 0.
        let g0 = Graph::empty(0);
        let out = wmc_bruteforce(&g0, &WeightMap::new(vec![]), Property::DominatingSet).unwrap();
        assert_eq!((out.exact, out.feasible), (0, true));

        // No 3-vertex graph has a connected subgraph on 4 vertices.
        let k3 = Graph::complete(3);
        let out = wmc_bruteforce(&k3, &w, Property::ConnectedAtLeast(4)).unwrap();
        assert!(!out.feasible);
        assert_eq!(out.output_line(), "-1");
    }

    #[test]
    fn bipartite_agrees_with_odd_walk_absence_exhaustively() {
        // Every graph up to five vertices, every subset; all graphs on six
        // vertices over the full vertex set.
        for n in 0..=5usize {
            let pairs: Vec<(u32, u32)> = (0..n as u32)
                .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
                .collect();
            for mask in 0u64..1 << pairs.len() {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::new(n, &edges).unwrap();
                for set in 0u64..1 << n {
                    assert_eq!(is_bipartite(&g, set), odd_cycle_free(&g, set));
                }
            }
        }
        let pairs: Vec<(u32, u32)> = (0..6u32)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .collect();
        for mask in 0u64..1 << 15 {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::new(6, &edges).unwrap();
            assert_eq!(is_bipartite(&g, 0b111111), odd_cycle_free(&g, 0b111111));
        }
    }

    #[test]
    fn enumeration_bound_enforced() {
        let g = Graph::empty(23);
        let w = WeightMap::uniform(23, 1);
        assert_eq!(
            wmc_bruteforce(&g, &w, Property::Cograph),
            Err(OracleError::TooLarge(23))
        );
    }

    #[test]
    fn exactness_matches_reduction() {
        // Force the exact sum past the modulus: 22 vertices of maximal
        // weight, every subset dominates the empty edge set... not quite:
        // use the complete graph so every non-empty subset dominates.
        let g = Graph::complete(16);
        let w = WeightMap::uniform(16, 100_000);
        let out = wmc_bruteforce(&g, &w, Property::DominatingSet).unwrap();
        assert!(out.exact > crate::modular::MODULUS as u128);
        assert_eq!(
            out.reduced.value() as u128,
            out.exact % crate::modular::MODULUS as u128
        );
    }
}
