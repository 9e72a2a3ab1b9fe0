//! The sporadic fixture catalog: small dense "universal" graphs with
//! checked-in decompositions, exercised by the sporadic suite.
//!
//! Each entry also exists as a canonical text fixture under `fixtures/`;
//! a test pins the files to these constructors byte for byte. Expected
//! answers are recomputed from the brute-force oracle at suite time, except
//! for entries above the enumeration bound, whose values live in
//! `fixtures/pinned.tsv` with their provenance stated.

use crate::decomposition::TreeDecomposition;
use crate::generator;
use crate::graph::{Graph, WeightMap};
use std::path::PathBuf;

/// One catalog instance.
pub struct CatalogEntry {
    pub name: &'static str,
    pub build: fn() -> (Graph, WeightMap, TreeDecomposition),
}

fn patterned_weights(n: usize) -> WeightMap {
    WeightMap::new((0..n as u64).map(|i| (7 * i + 3) % 97 + 1).collect())
}

fn ones(n: usize) -> WeightMap {
    WeightMap::uniform(n, 1)
}

fn path_bags(n: usize) -> TreeDecomposition {
    if n <= 1 {
        return TreeDecomposition::single_bag(n);
    }
    let bags = (1..n as u32).map(|v| vec![v - 1, v]).collect();
    let edges = (1..n - 1).map(|i| (i - 1, i)).collect();
    TreeDecomposition::new(bags, edges).expect("path bags form a tree")
}

fn cycle_bags(n: usize) -> TreeDecomposition {
    let bags = (2..n as u32).map(|v| vec![0, v - 1, v]).collect();
    let edges = (1..n - 2).map(|i| (i - 1, i)).collect();
    TreeDecomposition::new(bags, edges).expect("cycle bags form a tree")
}

fn p3() -> (Graph, WeightMap, TreeDecomposition) {
    (Graph::path(3), ones(3), path_bags(3))
}

fn p4() -> (Graph, WeightMap, TreeDecomposition) {
    (Graph::path(4), ones(4), path_bags(4))
}

fn p10() -> (Graph, WeightMap, TreeDecomposition) {
    (Graph::path(10), patterned_weights(10), path_bags(10))
}

fn k3() -> (Graph, WeightMap, TreeDecomposition) {
    (
        Graph::complete(3),
        ones(3),
        TreeDecomposition::single_bag(3),
    )
}

fn k4() -> (Graph, WeightMap, TreeDecomposition) {
    (
        Graph::complete(4),
        patterned_weights(4),
        TreeDecomposition::single_bag(4),
    )
}

fn k5() -> (Graph, WeightMap, TreeDecomposition) {
    (
        Graph::complete(5),
        patterned_weights(5),
        TreeDecomposition::single_bag(5),
    )
}

fn k6() -> (Graph, WeightMap, TreeDecomposition) {
    (
        Graph::complete(6),
        patterned_weights(6),
        TreeDecomposition::single_bag(6),
    )
}

fn k33() -> (Graph, WeightMap, TreeDecomposition) {
    let mut edges = Vec::new();
    for a in 0..3u32 {
        for b in 3..6u32 {
            edges.push((a, b));
        }
    }
    let g = Graph::new(6, &edges).expect("bipartite edges in range");
    let td = TreeDecomposition::new(
        vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4], vec![0, 1, 2, 5]],
        vec![(0, 1), (1, 2)],
    )
    .expect("three bags in a path");
    (g, patterned_weights(6), td)
}

fn c5() -> (Graph, WeightMap, TreeDecomposition) {
    (Graph::cycle(5), patterned_weights(5), cycle_bags(5))
}

fn c7() -> (Graph, WeightMap, TreeDecomposition) {
    (Graph::cycle(7), patterned_weights(7), cycle_bags(7))
}

fn star6() -> (Graph, WeightMap, TreeDecomposition) {
    let edges: Vec<(u32, u32)> = (1..7).map(|v| (0, v)).collect();
    let g = Graph::new(7, &edges).expect("star edges in range");
    let bags = (1..7u32).map(|v| vec![0, v]).collect();
    let tree = (1..6).map(|i| (0, i)).collect();
    let td = TreeDecomposition::new(bags, tree).expect("star bags form a tree");
    (g, patterned_weights(7), td)
}

/// Outer five-cycle, inner five-point star, spokes between them.
/// Treewidth 4; the decomposition comes from a minimum-degree elimination
/// order and every bag stays at five vertices or fewer.
fn petersen() -> (Graph, WeightMap, TreeDecomposition) {
    let mut edges = Vec::new();
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5)); // outer cycle
        edges.push((i, i + 5)); // spokes
        edges.push((i + 5, (i + 2) % 5 + 5)); // inner star
    }
    let g = Graph::new(10, &edges).expect("edges in range");
    let td = TreeDecomposition::new(
        vec![
            vec![0, 1, 4, 5],
            vec![1, 2, 3, 7],
            vec![1, 6, 8, 9],
            vec![1, 4, 7, 8, 9],
            vec![1, 4, 5, 7, 8],
            vec![1, 3, 4, 7, 8],
            vec![1, 4, 7, 8],
        ],
        vec![(0, 4), (1, 5), (2, 3), (3, 6), (4, 6), (5, 6)],
    )
    .expect("elimination bags form a tree");
    (g, patterned_weights(10), td)
}

/// Five-cycle with a pendant leaf on every cycle vertex and a center tied
/// to two opposite cycle vertices.
fn sun() -> (Graph, WeightMap, TreeDecomposition) {
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
    for i in 0..5u32 {
        edges.push((i, i + 5));
    }
    edges.push((0, 10));
    edges.push((2, 10));
    let g = Graph::new(11, &edges).expect("edges in range");
    let td = TreeDecomposition::new(
        vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 2, 10],
            vec![0, 5],
            vec![1, 6],
            vec![2, 7],
            vec![3, 8],
            vec![4, 9],
        ],
        vec![
            (0, 1),
            (1, 2),
            (0, 3),
            (0, 4),
            (0, 5),
            (0, 6),
            (1, 7),
            (2, 8),
        ],
    )
    .expect("sun bags form a tree");
    (g, patterned_weights(11), td)
}

/// Above the oracle's enumeration bound; answers are pinned.
fn caterpillar60() -> (Graph, WeightMap, TreeDecomposition) {
    let (g, td) = generator::caterpillar(60);
    let w = patterned_weights(60);
    (g, w, td)
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "p3-path",
        build: p3,
    },
    CatalogEntry {
        name: "p4-path",
        build: p4,
    },
    CatalogEntry {
        name: "p10-path",
        build: p10,
    },
    CatalogEntry {
        name: "k3",
        build: k3,
    },
    CatalogEntry {
        name: "k4",
        build: k4,
    },
    CatalogEntry {
        name: "k5",
        build: k5,
    },
    CatalogEntry {
        name: "k6",
        build: k6,
    },
    CatalogEntry {
        name: "k33",
        build: k33,
    },
    CatalogEntry {
        name: "c5-cycle",
        build: c5,
    },
    CatalogEntry {
        name: "c7-cycle",
        build: c7,
    },
    CatalogEntry {
        name: "star6",
        build: star6,
    },
    CatalogEntry {
        name: "petersen",
        build: petersen,
    },
    CatalogEntry {
        name: "sun",
        build: sun,
    },
    CatalogEntry {
        name: "caterpillar60",
        build: caterpillar60,
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

/// Directory holding the checked-in fixture files.
pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_path(name: &str) -> PathBuf {
    fixtures_dir().join(format!("{name}.txt"))
}

/// Answers pinned for entries the oracle cannot enumerate, keyed by
/// `(fixture, problem)`. Produced by a solver run that passed the
/// consistency suite; the manifest states this provenance.
pub fn pinned_answers() -> Vec<(String, String, String)> {
    let text = std::fs::read_to_string(fixtures_dir().join("pinned.tsv"))
        .expect("pinned manifest present");
    let mut out = Vec::new();
    for line in text.lines() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split('\t');
        let fixture = parts.next().unwrap_or_default().to_string();
        let problem = parts.next().unwrap_or_default().to_string();
        let answer = parts.next().unwrap_or_default().to_string();
        out.push((fixture, problem, answer));
    }
    out
}
