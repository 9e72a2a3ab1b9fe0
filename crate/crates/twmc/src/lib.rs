//! Weighted model counting over tree decompositions.
//!
//! Given a graph, a tree decomposition of it, and vertex weights, this
//! crate computes the total weight of all vertex subsets satisfying a
//! property, modulo `10^9 + 7`, or reports that no subset satisfies it.
//! The computation is a single bottom-up pass over the nice form of the
//! decomposition, so its running time is linear in the graph for each
//! fixed width.
//!
//! The pieces:
//!
//! * [`graph`], [`modular`]: graphs, weights, and the counting field.
//! * [`decomposition`]: validation and conversion to nice form.
//! * [`engine`]: the traversal, driving five solver callbacks.
//! * [`solvers`]: bag-local dynamic programs for the shipped properties.
//! * [`oracle`]: brute-force predicates and counts for cross-checking.
//! * [`generator`]: seeded low-treewidth instances and decomposition
//!   perturbations.
//! * [`format`](mod@format): the line-oriented instance file format.
//! * [`harness`]: consistency, correctness, efficiency, and sporadic test
//!   suites.
//! * [`catalog`]: checked-in fixture instances for the sporadic suite.
//!
//! The guide under `book/` walks through each concept; its code blocks
//! compile and run as doc-tests of this crate.

pub mod catalog;
pub mod decomposition;
pub mod engine;
pub mod format;
pub mod generator;
pub mod graph;
pub mod harness;
pub mod modular;
pub mod oracle;
pub mod solvers;

pub use decomposition::{to_nice, NiceDecomposition, TreeDecomposition, Width};
pub use engine::{run, run_with_stats, Aggregate, BagView, DpTable, SolverCallbacks, WmcOutcome};
pub use graph::{Graph, WeightMap};
pub use modular::{ModValue, MODULUS};

#[cfg(doctest)]
mod book {
    //! Runs every code block in the guide as a doc-test.
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(
        graphs_and_counting,
        "../../../book/src/graphs-and-counting.md"
    );
    chapter!(
        tree_decompositions,
        "../../../book/src/tree-decompositions.md"
    );
    chapter!(nice_form, "../../../book/src/nice-form.md");
    chapter!(engine_ch, "../../../book/src/engine.md");
    chapter!(dominating_set, "../../../book/src/dominating-set.md");
    chapter!(connectivity, "../../../book/src/connectivity.md");
    chapter!(cographs, "../../../book/src/cographs.md");
    chapter!(maximal_cluster, "../../../book/src/maximal-cluster.md");
    chapter!(oracle_ch, "../../../book/src/oracle.md");
    chapter!(
        generating_instances,
        "../../../book/src/generating-instances.md"
    );
    chapter!(test_suites, "../../../book/src/test-suites.md");
    chapter!(file_format, "../../../book/src/file-format.md");
}
