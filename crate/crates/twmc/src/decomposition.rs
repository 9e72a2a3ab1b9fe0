//! Tree decompositions: validity checking, width, and conversion to the
//! nice form consumed by the engine.
//!
//! A tree decomposition is a tree of vertex bags covering every vertex and
//! every edge, in which the bags containing any fixed vertex form a
//! connected subtree. The nice form normalizes it into typed nodes (leaf,
//! introduce, forget, join), each changing the visible bag by at most one
//! vertex, with an empty bag at the root.

use crate::graph::Graph;
use std::collections::BTreeSet;
use thiserror::Error;

/// A plain (not necessarily nice) tree decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Bag contents, each sorted ascending.
    bags: Vec<Vec<u32>>,
    /// Edges between bag indices.
    tree_edges: Vec<(usize, usize)>,
    /// Designated root bag; defaults to bag 0.
    root: Option<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("bag index {0} out of range for {1} bags")]
    BagIndexOutOfRange(usize, usize),
    #[error("decomposition has no bags")]
    NoBags,
    #[error("invalid tree decomposition: {0}")]
    Invalid(ValidationReport),
}

/// One violated property of a tree decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The bag graph is not a single tree (wrong edge count, a cycle, or
    /// disconnected).
    NotATree,
    UncoveredVertex(u32),
    UncoveredEdge(u32, u32),
    /// The bags containing this vertex do not form a connected subtree.
    BrokenRunningIntersection(u32),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotATree => write!(f, "bag edges do not form a tree"),
            Violation::UncoveredVertex(v) => write!(f, "vertex {v} appears in no bag"),
            Violation::UncoveredEdge(u, v) => {
                write!(f, "edge ({u}, {v}) has no bag containing both endpoints")
            }
            Violation::BrokenRunningIntersection(v) => {
                write!(f, "bags containing vertex {v} are not connected")
            }
        }
    }
}

/// Every violated property of a candidate decomposition, or none.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Width of a decomposition: largest bag size minus one, reported as 0 for
/// degenerate all-empty decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Width(pub usize);

impl TreeDecomposition {
    /// Bags are sorted and deduplicated on entry; tree edges are checked for
    /// index range only. Structural validity is the job of
    /// [`validate`](TreeDecomposition::validate).
    pub fn new(
        bags: Vec<Vec<u32>>,
        tree_edges: Vec<(usize, usize)>,
    ) -> Result<TreeDecomposition, DecompositionError> {
        if bags.is_empty() {
            return Err(DecompositionError::NoBags);
        }
        let count = bags.len();
        for &(a, b) in &tree_edges {
            if a >= count {
                return Err(DecompositionError::BagIndexOutOfRange(a, count));
            }
            if b >= count {
                return Err(DecompositionError::BagIndexOutOfRange(b, count));
            }
        }
        let mut bags = bags;
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
        }
        Ok(TreeDecomposition {
            bags,
            tree_edges,
            root: None,
        })
    }

    /// A decomposition with a single bag holding `0..n`.
    pub fn single_bag(n: usize) -> TreeDecomposition {
        TreeDecomposition {
            bags: vec![(0..n as u32).collect()],
            tree_edges: Vec::new(),
            root: None,
        }
    }

    pub fn with_root(mut self, root: usize) -> TreeDecomposition {
        self.root = Some(root);
        self
    }

    pub fn bags(&self) -> &[Vec<u32>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    pub fn root(&self) -> usize {
        self.root.unwrap_or(0)
    }

    pub fn width(&self) -> Width {
        Width(
            self.bags
                .iter()
                .map(|b| b.len())
                .max()
                .unwrap_or(0)
                .saturating_sub(1),
        )
    }

    /// Checks the three defining properties against `g` and reports every
    /// violation found. Violations are data, not errors.
    pub fn validate(&self, g: &Graph) -> ValidationReport {
        let mut report = ValidationReport::default();
        let count = self.bags.len();

        // Tree shape: connected and exactly count-1 distinct edges.
        let mut adjacency = vec![Vec::new(); count];
        let mut seen_edges = BTreeSet::new();
        let mut tree_ok = true;
        for &(a, b) in &self.tree_edges {
            if a == b || !seen_edges.insert((a.min(b), a.max(b))) {
                tree_ok = false;
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        if seen_edges.len() != count - 1 {
            tree_ok = false;
        }
        if tree_ok {
            let mut visited = vec![false; count];
            let mut stack = vec![0usize];
            visited[0] = true;
            let mut reached = 1;
            while let Some(i) = stack.pop() {
                for &j in &adjacency[i] {
                    if !visited[j] {
                        visited[j] = true;
                        reached += 1;
                        stack.push(j);
                    }
                }
            }
            tree_ok = reached == count;
        }
        if !tree_ok {
            report.violations.push(Violation::NotATree);
        }

        // Vertex coverage, counting occurrences for the running-intersection
        // check below.
        let n = g.vertex_count();
        let mut occurrences = vec![0usize; n];
        for bag in &self.bags {
            for &v in bag {
                if (v as usize) < n {
                    occurrences[v as usize] += 1;
                }
            }
        }
        for (v, &count) in occurrences.iter().enumerate() {
            if count == 0 {
                report.violations.push(Violation::UncoveredVertex(v as u32));
            }
        }

        // Edge coverage via the set of co-bagged pairs; bags are small, so
        // this stays near-linear in the decomposition size.
        let mut co_bagged: BTreeSet<(u32, u32)> = BTreeSet::new();
        for bag in &self.bags {
            for (i, &u) in bag.iter().enumerate() {
                for &v in &bag[i + 1..] {
                    co_bagged.insert((u, v));
                }
            }
        }
        for &(u, v) in g.edges() {
            if !co_bagged.contains(&(u, v)) {
                report.violations.push(Violation::UncoveredEdge(u, v));
            }
        }

        // Running intersection, meaningful only on a tree: per vertex, the
        // bags holding it induce a forest inside the bag tree, which is
        // connected exactly when its edge count is one less than its node
        // count.
        if tree_ok {
            let mut shared_edges = vec![0usize; n];
            for &(a, b) in seen_edges.iter() {
                let (small, large) = if self.bags[a].len() <= self.bags[b].len() {
                    (a, b)
                } else {
                    (b, a)
                };
                for &v in &self.bags[small] {
                    if (v as usize) < n && self.bags[large].binary_search(&v).is_ok() {
                        shared_edges[v as usize] += 1;
                    }
                }
            }
            for v in 0..n {
                if occurrences[v] > 0 && shared_edges[v] != occurrences[v] - 1 {
                    report
                        .violations
                        .push(Violation::BrokenRunningIntersection(v as u32));
                }
            }
        }

        report
    }
}

/// A typed node of a nice decomposition. Child indices always point at
/// earlier positions in the node list, so the list order is a valid
/// bottom-up evaluation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NiceNode {
    /// A bag with no children, holding at most one vertex.
    Leaf,
    /// Child bag plus one new vertex.
    Introduce { child: usize, vertex: u32 },
    /// Child bag minus one vertex.
    Forget { child: usize, vertex: u32 },
    /// Two children carrying exactly this node's bag.
    Join { left: usize, right: usize },
}

/// A nice tree decomposition: typed nodes, each with its bag, rooted at an
/// empty bag.
#[derive(Debug, Clone)]
pub struct NiceDecomposition {
    nodes: Vec<NiceNode>,
    bags: Vec<Vec<u32>>,
}

impl NiceDecomposition {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &NiceNode {
        &self.nodes[i]
    }

    /// Sorted bag of node `i`.
    pub fn bag(&self, i: usize) -> &[u32] {
        &self.bags[i]
    }

    /// The root is always the final node and always has an empty bag.
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> Width {
        Width(
            self.bags
                .iter()
                .map(|b| b.len())
                .max()
                .unwrap_or(0)
                .saturating_sub(1),
        )
    }

    /// Structural soundness: node typing is consistent with the stored bags,
    /// the root bag is empty, every vertex is forgotten exactly once, and
    /// introduce precedes forget on every root-ward path.
    pub fn check_structure(&self, g: &Graph) -> Result<(), String> {
        let n = g.vertex_count();
        if !self.bags[self.root()].is_empty() {
            return Err("root bag is not empty".into());
        }
        let mut forgotten = vec![0usize; n];
        let mut seen = vec![false; n];
        for (i, node) in self.nodes.iter().enumerate() {
            for &v in &self.bags[i] {
                seen[v as usize] = true;
            }
            match *node {
                NiceNode::Leaf => {
                    if self.bags[i].len() > 1 {
                        return Err(format!("leaf {i} holds more than one vertex"));
                    }
                }
                NiceNode::Introduce { child, vertex } => {
                    if child >= i {
                        return Err(format!("node {i} references later child {child}"));
                    }
                    let mut expect = self.bags[child].clone();
                    expect.push(vertex);
                    expect.sort_unstable();
                    if self.bags[child].binary_search(&vertex).is_ok() || expect != self.bags[i] {
                        return Err(format!("introduce {i} bag mismatch"));
                    }
                }
                NiceNode::Forget { child, vertex } => {
                    if child >= i {
                        return Err(format!("node {i} references later child {child}"));
                    }
                    let expect: Vec<u32> = self.bags[child]
                        .iter()
                        .copied()
                        .filter(|&v| v != vertex)
                        .collect();
                    if self.bags[child].binary_search(&vertex).is_err() || expect != self.bags[i] {
                        return Err(format!("forget {i} bag mismatch"));
                    }
                    forgotten[vertex as usize] += 1;
                }
                NiceNode::Join { left, right } => {
                    if left >= i || right >= i {
                        return Err(format!("node {i} references later child"));
                    }
                    if self.bags[left] != self.bags[i] || self.bags[right] != self.bags[i] {
                        return Err(format!("join {i} children bags differ from its bag"));
                    }
                }
            }
        }
        for v in 0..n {
            if !seen[v] {
                return Err(format!("vertex {v} never appears"));
            }
            if forgotten[v] != 1 {
                return Err(format!("vertex {v} forgotten {} times", forgotten[v]));
            }
        }
        Ok(())
    }

    /// View as a plain decomposition (for re-validation or degradation).
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let mut edges = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            match *node {
                NiceNode::Leaf => {}
                NiceNode::Introduce { child, .. } | NiceNode::Forget { child, .. } => {
                    edges.push((child, i));
                }
                NiceNode::Join { left, right } => {
                    edges.push((left, i));
                    edges.push((right, i));
                }
            }
        }
        TreeDecomposition {
            bags: self.bags.clone(),
            tree_edges: edges,
            root: Some(self.root()),
        }
    }
}

struct NiceBuilder {
    nodes: Vec<NiceNode>,
    bags: Vec<Vec<u32>>,
}

impl NiceBuilder {
    fn push(&mut self, node: NiceNode, bag: Vec<u32>) -> usize {
        self.nodes.push(node);
        self.bags.push(bag);
        self.nodes.len() - 1
    }

    /// Leaf plus ascending introduces until `target` is fully present.
    fn leaf_chain(&mut self, target: &[u32]) -> usize {
        if target.is_empty() {
            return self.push(NiceNode::Leaf, Vec::new());
        }
        let mut idx = self.push(NiceNode::Leaf, vec![target[0]]);
        let mut bag = vec![target[0]];
        for &v in &target[1..] {
            bag.push(v); // target sorted ascending keeps bag sorted
            idx = self.push(
                NiceNode::Introduce {
                    child: idx,
                    vertex: v,
                },
                bag.clone(),
            );
        }
        idx
    }

    /// Forgets (ascending) then introduces (ascending) morphing `from` into `to`.
    fn morph(&mut self, mut idx: usize, from: &[u32], to: &[u32]) -> usize {
        let mut bag = from.to_vec();
        for &v in from {
            if to.binary_search(&v).is_err() {
                bag.retain(|&x| x != v);
                idx = self.push(
                    NiceNode::Forget {
                        child: idx,
                        vertex: v,
                    },
                    bag.clone(),
                );
            }
        }
        for &v in to {
            if from.binary_search(&v).is_err() {
                bag.push(v);
                bag.sort_unstable();
                idx = self.push(
                    NiceNode::Introduce {
                        child: idx,
                        vertex: v,
                    },
                    bag.clone(),
                );
            }
        }
        idx
    }
}

/// Converts a valid decomposition into nice form.
///
/// Children are processed in tree-edge order; joins of more than two
/// subtrees fold left-associatively into binary joins; introduces and
/// forgets run in ascending vertex order; the root bag is drained with a
/// final forget chain. The same input always yields the same output.
pub fn to_nice(td: &TreeDecomposition, g: &Graph) -> Result<NiceDecomposition, DecompositionError> {
    let report = td.validate(g);
    if !report.is_valid() {
        return Err(DecompositionError::Invalid(report));
    }

    let count = td.bags.len();
    let mut children = vec![Vec::new(); count];
    let mut parent = vec![usize::MAX; count];
    let root = td.root();
    // Orient the tree away from the root, keeping tree-edge order.
    let mut order = Vec::with_capacity(count);
    {
        let mut adjacency = vec![Vec::new(); count];
        for &(a, b) in &td.tree_edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut visited = vec![false; count];
        let mut stack = vec![root];
        visited[root] = true;
        while let Some(i) = stack.pop() {
            order.push(i);
            for &j in &adjacency[i] {
                if !visited[j] {
                    visited[j] = true;
                    parent[j] = i;
                    children[i].push(j);
                    stack.push(j);
                }
            }
        }
    }

    let mut builder = NiceBuilder {
        nodes: Vec::new(),
        bags: Vec::new(),
    };
    // Children before parents: process in reverse discovery order.
    let mut converted: Vec<Option<usize>> = vec![None; count];
    for &i in order.iter().rev() {
        let bag = &td.bags[i];
        let mut tops: Vec<usize> = Vec::new();
        for &c in &children[i] {
            let child_top = converted[c].expect("children converted first");
            tops.push(builder.morph(child_top, &td.bags[c], bag));
        }
        let idx = match tops.len() {
            0 => builder.leaf_chain(bag),
            1 => tops[0],
            _ => {
                let mut acc = tops[0];
                for &t in &tops[1..] {
                    acc = builder.push(
                        NiceNode::Join {
                            left: acc,
                            right: t,
                        },
                        bag.clone(),
                    );
                }
                acc
            }
        };
        converted[i] = Some(idx);
    }

    // Drain the root bag.
    let top = converted[root].expect("root converted");
    let final_idx = builder.morph(top, &td.bags[root], &[]);
    let _ = final_idx;

    Ok(NiceDecomposition {
        nodes: builder.nodes,
        bags: builder.bags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_path_decomposition_is_valid() {
        let g = Graph::path(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]).unwrap();
        assert!(td.validate(&g).is_valid());
        assert_eq!(td.width(), Width(1));
    }

    #[test]
    fn width_is_largest_bag_minus_one() {
        assert_eq!(TreeDecomposition::single_bag(4).width(), Width(3));
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]).unwrap();
        assert_eq!(td.width(), Width(1));
    }

    #[test]
    fn missing_tree_edge_detected() {
        let g = Graph::path(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![]).unwrap();
        let report = td.validate(&g);
        assert_eq!(report.violations, vec![Violation::NotATree]);
    }

    #[test]
    fn triangle_in_a_path_of_bags() {
        // Bags {0,1},{1,2},{0,2} in a path cover all edges of the triangle
        // but break the running intersection for vertex 0.
        let g = Graph::complete(3);
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        let report = td.validate(&g);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .contains(&Violation::BrokenRunningIntersection(0)));
    }

    #[test]
    fn uncovered_cases() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let td = TreeDecomposition::new(vec![vec![0, 1]], vec![]).unwrap();
        let report = td.validate(&g);
        assert!(report.violations.contains(&Violation::UncoveredVertex(2)));
        assert!(report.violations.contains(&Violation::UncoveredEdge(1, 2)));
    }

    #[test]
    fn single_bag_to_nice() {
        let g = Graph::complete(3);
        let td = TreeDecomposition::single_bag(3);
        let nd = to_nice(&td, &g).unwrap();
        nd.check_structure(&g).unwrap();
        assert_eq!(nd.width(), td.width());
        assert!(nd.bag(nd.root()).is_empty());
        // Leaf, two introduces, three forgets.
        assert_eq!(nd.len(), 6);
    }

    #[test]
    fn two_bag_path_to_nice() {
        let g = Graph::path(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]).unwrap();
        let nd = to_nice(&td, &g).unwrap();
        nd.check_structure(&g).unwrap();
        assert_eq!(nd.width(), Width(1));
        let as_td = nd.to_tree_decomposition();
        assert!(as_td.validate(&g).is_valid());
    }

    #[test]
    fn invalid_input_rejected_with_report() {
        let g = Graph::path(3);
        let td = TreeDecomposition::new(vec![vec![0, 1]], vec![]).unwrap();
        match to_nice(&td, &g) {
            Err(DecompositionError::Invalid(report)) => assert!(!report.is_valid()),
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn join_children_carry_parent_bag() {
        // A star of three bags around a shared center vertex forces a join.
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![0, 2], vec![0, 3]],
            vec![(0, 1), (0, 2)],
        )
        .unwrap();
        let nd = to_nice(&td, &g).unwrap();
        nd.check_structure(&g).unwrap();
        let mut joins = 0;
        for i in 0..nd.len() {
            if let NiceNode::Join { left, right } = *nd.node(i) {
                joins += 1;
                assert_eq!(nd.bag(left), nd.bag(i));
                assert_eq!(nd.bag(right), nd.bag(i));
            }
        }
        assert!(joins >= 1);
    }

    #[test]
    fn empty_graph_decomposition() {
        let g = Graph::empty(0);
        let td = TreeDecomposition::new(vec![vec![]], vec![]).unwrap();
        assert!(td.validate(&g).is_valid());
        let nd = to_nice(&td, &g).unwrap();
        assert_eq!(nd.len(), 1);
        assert!(matches!(nd.node(0), NiceNode::Leaf));
        assert_eq!(td.width(), Width(0));
    }
}
