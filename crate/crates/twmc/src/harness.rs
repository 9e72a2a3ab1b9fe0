//! The four verification suites (consistency, correctness, efficiency,
//! sporadic) and the shared solve path they exercise.
//!
//! Every suite produces a [`SuiteReport`]: one verdict per case, timing,
//! and the first divergence with a reproducer instance dump. Reports are
//! deterministic for a fixed seed apart from the timing fields.

use crate::catalog;
use crate::decomposition::to_nice;
use crate::engine::{run_with_stats, RunStats, WmcOutcome};
use crate::format::{serialize_instance, Instance};
use crate::generator::{
    gadget_coverage, sample_instance, CoverageReport, GenConfig, PerturbationKind, Preset,
};
use crate::oracle::{wmc_bruteforce, Property, ENUMERATION_LIMIT};
use crate::solvers::solver_by_id;
use serde::Serialize;
use std::time::Instant;
use thiserror::Error;

/// Doubling a width-3 instance may grow the solve time by at most this
/// factor before the efficiency suite fails.
pub const EFFICIENCY_RATIO_CAP: f64 = 2.5;
/// Instance ladder for the ratio checks.
pub const EFFICIENCY_LADDER: [usize; 4] = [5_000, 10_000, 20_000, 40_000];
/// The absolute bound: this many vertices at width 3 must solve within
/// [`EFFICIENCY_ABSOLUTE_SECS`].
pub const EFFICIENCY_ABSOLUTE_N: usize = 50_000;
pub const EFFICIENCY_ABSOLUTE_SECS: f64 = 10.0;
/// The instance family's own per-test budget, kept with an order of
/// magnitude to spare by the absolute bound above.
pub const FAMILY_TIME_LIMIT_SECS: f64 = 100.0;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown problem id {0:?}")]
    UnknownProblem(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error(transparent)]
    Engine(#[from] crate::engine::EngineError),
    #[error(transparent)]
    Generation(#[from] crate::generator::GenError),
    #[error(transparent)]
    Oracle(#[from] crate::oracle::OracleError),
}

/// Validates, normalizes, and runs one instance under the named solver.
pub fn solve_instance(problem: &str, inst: &Instance) -> Result<WmcOutcome, HarnessError> {
    solve_instance_with_stats(problem, inst).map(|(outcome, _)| outcome)
}

pub fn solve_instance_with_stats(
    problem: &str,
    inst: &Instance,
) -> Result<(WmcOutcome, RunStats), HarnessError> {
    let solver =
        solver_by_id(problem).ok_or_else(|| HarnessError::UnknownProblem(problem.into()))?;
    let nd = to_nice(&inst.decomposition, &inst.graph).map_err(|e| match e {
        crate::decomposition::DecompositionError::Invalid(report) => {
            HarnessError::InvalidDecomposition(report.to_string())
        }
        other => HarnessError::InvalidDecomposition(other.to_string()),
    })?;
    Ok(run_with_stats(
        &nd,
        &inst.graph,
        &inst.weights,
        solver.as_ref(),
    )?)
}

/// Brute-force answer for one instance.
pub fn verify_instance(problem: &str, inst: &Instance) -> Result<String, HarnessError> {
    let property = Property::from_id(problem)?;
    let count = wmc_bruteforce(&inst.graph, &inst.weights, property)?;
    Ok(count.output_line())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Consistency,
    Correctness,
    Efficiency,
    Sporadic,
}

impl SuiteKind {
    pub fn from_id(id: &str) -> Option<SuiteKind> {
        match id {
            "consistency" => Some(SuiteKind::Consistency),
            "correctness" => Some(SuiteKind::Correctness),
            "efficiency" => Some(SuiteKind::Efficiency),
            "sporadic" => Some(SuiteKind::Sporadic),
            _ => None,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            SuiteKind::Consistency => "consistency",
            SuiteKind::Correctness => "correctness",
            SuiteKind::Efficiency => "efficiency",
            SuiteKind::Sporadic => "sporadic",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseVerdict {
    pub name: String,
    pub passed: bool,
    /// Empty on success; expected-versus-actual on divergence.
    pub detail: String,
    pub millis: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Divergence {
    pub case: String,
    pub expected: String,
    pub actual: String,
    /// Canonical instance text reproducing the failure.
    pub instance: String,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub problem: String,
    pub seed: u64,
    pub cases: Vec<CaseVerdict>,
    pub first_divergence: Option<Divergence>,
}

impl SuiteReport {
    fn new(kind: SuiteKind, problem: &str, seed: u64) -> SuiteReport {
        SuiteReport {
            suite: kind.id().to_string(),
            problem: problem.to_string(),
            seed,
            cases: Vec::new(),
            first_divergence: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    fn push_case(&mut self, name: String, passed: bool, detail: String, millis: f64) {
        self.cases.push(CaseVerdict {
            name,
            passed,
            detail,
            millis,
        });
    }

    fn note_divergence(&mut self, case: &str, expected: &str, actual: &str, instance: String) {
        if self.first_divergence.is_none() {
            self.first_divergence = Some(Divergence {
                case: case.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
                instance,
            });
        }
    }

    /// One line per case plus a summary line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for case in &self.cases {
            out.push_str(&format!(
                "{} {} ({:.1} ms){}\n",
                if case.passed { "pass" } else { "FAIL" },
                case.name,
                case.millis,
                if case.detail.is_empty() {
                    String::new()
                } else {
                    format!(": {}", case.detail)
                }
            ));
        }
        let failed = self.cases.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "{}: {}/{} cases passed ({})\n",
            self.suite,
            self.cases.len() - failed,
            self.cases.len(),
            if failed == 0 { "ok" } else { "FAILED" }
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// One fixed mid-sized instance, many decompositions: every answer must be
/// identical. Perturbations apply successively, so each case runs a
/// decomposition that has drifted further from the original.
pub fn consistency_suite(problem: &str, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut report = SuiteReport::new(SuiteKind::Consistency, problem, seed);
    let cfg = GenConfig::new(40, 3, seed);
    let (g, w, td) = sample_instance(&cfg)?;
    let inst = Instance {
        graph: g,
        weights: w,
        decomposition: td,
    };

    let start = Instant::now();
    let baseline = solve_instance(problem, &inst)?.output_line();
    report.push_case(
        "baseline".into(),
        true,
        String::new(),
        start.elapsed().as_secs_f64() * 1e3,
    );

    let mut current = inst.decomposition.clone();
    for i in 0..25u64 {
        let kind = PerturbationKind::ALL[(i % 6) as usize];
        let out = crate::generator::perturb(&current, &inst.graph, kind, seed ^ (i + 1));
        let name = format!("{kind:?}#{i}");
        let valid = out.td.validate(&inst.graph);
        if !valid.is_valid() {
            report.push_case(
                name,
                false,
                format!("perturbed decomposition invalid: {valid}"),
                0.0,
            );
            continue;
        }
        current = out.td;
        let perturbed = Instance {
            graph: inst.graph.clone(),
            weights: inst.weights.clone(),
            decomposition: current.clone(),
        };
        let start = Instant::now();
        let answer = solve_instance(problem, &perturbed)?.output_line();
        let millis = start.elapsed().as_secs_f64() * 1e3;
        let passed = answer == baseline;
        if !passed {
            report.note_divergence(
                &name,
                &baseline,
                &answer,
                serialize_instance(
                    &perturbed.graph,
                    &perturbed.weights,
                    &perturbed.decomposition,
                ),
            );
        }
        report.push_case(
            name,
            passed,
            if passed {
                String::new()
            } else {
                format!("expected {baseline}, got {answer}")
            },
            millis,
        );
    }
    Ok(report)
}

/// Many small instances: the solver must match subset enumeration exactly.
pub fn correctness_suite(
    problem: &str,
    seed: u64,
    cases: usize,
) -> Result<SuiteReport, HarnessError> {
    let property = Property::from_id(problem)?;
    let mut report = SuiteReport::new(SuiteKind::Correctness, problem, seed);
    for i in 0..cases as u64 {
        let case_seed = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(i);
        let cfg = GenConfig {
            target_n: 1 + (case_seed % 12) as usize,
            width_cap: 1 + (case_seed % 3) as usize,
            join_bag_cap: (1 + case_seed % 3).min(2) as usize,
            join_density: 0.1 + (i % 5) as f64 * 0.05,
            edge_density: 0.2 + (i % 8) as f64 * 0.1,
            weight_min: 1,
            weight_max: 100_000,
            seed: case_seed,
        };
        let (g, w, td) = sample_instance(&cfg)?;
        let inst = Instance {
            graph: g,
            weights: w,
            decomposition: td,
        };
        let expected = wmc_bruteforce(&inst.graph, &inst.weights, property)?.output_line();
        let start = Instant::now();
        let actual = solve_instance(problem, &inst)?.output_line();
        let millis = start.elapsed().as_secs_f64() * 1e3;
        let name = format!("case#{i} n={}", inst.graph.vertex_count());
        let passed = actual == expected;
        if !passed {
            report.note_divergence(
                &name,
                &expected,
                &actual,
                serialize_instance(&inst.graph, &inst.weights, &inst.decomposition),
            );
        }
        report.push_case(
            name,
            passed,
            if passed {
                String::new()
            } else {
                format!("expected {expected}, got {actual}")
            },
            millis,
        );
    }
    Ok(report)
}

fn timed_solve(problem: &str, inst: &Instance) -> Result<(f64, RunStats), HarnessError> {
    // Median of five runs tempers scheduler noise.
    let mut times = Vec::with_capacity(5);
    let mut stats = RunStats::default();
    for _ in 0..5 {
        let start = Instant::now();
        let (_, s) = solve_instance_with_stats(problem, inst)?;
        times.push(start.elapsed().as_secs_f64());
        stats = s;
    }
    times.sort_by(f64::total_cmp);
    Ok((times[2], stats))
}

/// Width-3 instance ladder: doubling the vertex count may scale the solve
/// time by at most [`EFFICIENCY_RATIO_CAP`], and the largest instance must
/// finish inside the absolute budget.
pub fn efficiency_suite(problem: &str, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut report = SuiteReport::new(SuiteKind::Efficiency, problem, seed);
    let mut timings = Vec::new();
    for &n in &EFFICIENCY_LADDER {
        let cfg = Preset::Stress.config_with_n(seed, n);
        let (g, w, td) = sample_instance(&cfg)?;
        let inst = Instance {
            graph: g,
            weights: w,
            decomposition: td,
        };
        let (secs, stats) = timed_solve(problem, &inst)?;
        timings.push((n, secs));
        report.push_case(
            format!("solve n={n}"),
            secs <= EFFICIENCY_ABSOLUTE_SECS,
            format!(
                "nodes {}, peak table {}, intro/forget/join {:.0}/{:.0}/{:.0} ms",
                stats.nodes,
                stats.max_table_rows,
                stats.introduce_time.as_secs_f64() * 1e3,
                stats.forget_time.as_secs_f64() * 1e3,
                stats.join_time.as_secs_f64() * 1e3,
            ),
            secs * 1e3,
        );
    }
    for pair in timings.windows(2) {
        let (n0, t0) = pair[0];
        let (n1, t1) = pair[1];
        // Sub-millisecond bases are noise, not signal.
        let ratio = if t0 > 1e-3 { t1 / t0 } else { 0.0 };
        let passed = ratio <= EFFICIENCY_RATIO_CAP;
        report.push_case(
            format!("ratio n={n0} -> n={n1}"),
            passed,
            format!("{ratio:.2} (cap {EFFICIENCY_RATIO_CAP})"),
            0.0,
        );
    }
    let cfg = Preset::Stress.config_with_n(seed, EFFICIENCY_ABSOLUTE_N);
    let (g, w, td) = sample_instance(&cfg)?;
    let inst = Instance {
        graph: g,
        weights: w,
        decomposition: td,
    };
    let start = Instant::now();
    let _ = solve_instance(problem, &inst)?;
    let secs = start.elapsed().as_secs_f64();
    report.push_case(
        format!("absolute n={EFFICIENCY_ABSOLUTE_N}"),
        secs <= EFFICIENCY_ABSOLUTE_SECS,
        format!(
            "{secs:.2}s (cap {EFFICIENCY_ABSOLUTE_SECS}s, family budget {FAMILY_TIME_LIMIT_SECS}s)"
        ),
        secs * 1e3,
    );
    Ok(report)
}

/// The fixture catalog: answers checked against the oracle where it can
/// enumerate, against pinned values beyond that.
pub fn sporadic_suite(problem: &str) -> Result<SuiteReport, HarnessError> {
    let property = Property::from_id(problem)?;
    let pinned = catalog::pinned_answers();
    let mut report = SuiteReport::new(SuiteKind::Sporadic, problem, 0);
    for entry in catalog::CATALOG {
        let (g, w, td) = (entry.build)();
        let inst = Instance {
            graph: g,
            weights: w,
            decomposition: td,
        };
        let n = inst.graph.vertex_count();
        let (expected, source) = if n <= ENUMERATION_LIMIT {
            (
                Some(wmc_bruteforce(&inst.graph, &inst.weights, property)?.output_line()),
                "oracle",
            )
        } else {
            (
                pinned
                    .iter()
                    .find(|(f, p, _)| f == entry.name && p == problem)
                    .map(|(_, _, a)| a.clone()),
                "pinned",
            )
        };
        let Some(expected) = expected else {
            report.push_case(
                entry.name.to_string(),
                false,
                "no pinned answer recorded".into(),
                0.0,
            );
            continue;
        };
        let start = Instant::now();
        let actual = solve_instance(problem, &inst)?.output_line();
        let millis = start.elapsed().as_secs_f64() * 1e3;
        let passed = actual == expected;
        if !passed {
            report.note_divergence(
                entry.name,
                &expected,
                &actual,
                serialize_instance(&inst.graph, &inst.weights, &inst.decomposition),
            );
        }
        report.push_case(
            format!("{} [{source}]", entry.name),
            passed,
            if passed {
                String::new()
            } else {
                format!("expected {expected}, got {actual}")
            },
            millis,
        );
    }
    Ok(report)
}

pub fn run_suite(
    kind: SuiteKind,
    problem: &str,
    seed: u64,
    correctness_cases: usize,
) -> Result<SuiteReport, HarnessError> {
    match kind {
        SuiteKind::Consistency => consistency_suite(problem, seed),
        SuiteKind::Correctness => correctness_suite(problem, seed, correctness_cases),
        SuiteKind::Efficiency => efficiency_suite(problem, seed),
        SuiteKind::Sporadic => sporadic_suite(problem),
    }
}

/// Generates `count` preset instances and reports gadget coverage.
pub fn coverage_over_preset(
    preset: Preset,
    seed: u64,
    count: usize,
) -> Result<CoverageReport, HarnessError> {
    let mut instances = Vec::with_capacity(count);
    for i in 0..count as u64 {
        let cfg = preset.config(seed.wrapping_add(i));
        let (g, _, td) = sample_instance(&cfg)?;
        instances.push((g, td));
    }
    Ok(gadget_coverage(instances.iter().map(|(g, td)| (g, td))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consistency_passes_for_every_solver() {
        for problem in crate::solvers::SOLVER_IDS {
            let report = consistency_suite(problem, 7).unwrap();
            assert!(report.passed(), "{problem}:\n{}", report.render_text());
            assert_eq!(report.cases.len(), 26);
        }
    }

    #[test]
    fn correctness_small_run() {
        let report = correctness_suite("dominating-set", 3, 25).unwrap();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn sporadic_oracle_entries_pass() {
        for problem in crate::solvers::SOLVER_IDS {
            let report = sporadic_suite(problem).unwrap();
            assert!(report.passed(), "{problem}:\n{}", report.render_text());
        }
    }

    #[test]
    fn reports_are_deterministic_given_seed() {
        let a = correctness_suite("connected-ge-k", 9, 15).unwrap();
        let b = correctness_suite("connected-ge-k", 9, 15).unwrap();
        let strip = |r: &SuiteReport| -> Vec<(String, bool, String)> {
            r.cases
                .iter()
                .map(|c| (c.name.clone(), c.passed, c.detail.clone()))
                .collect()
        };
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn reports_serialize() {
        let report = correctness_suite("cograph", 1, 5).unwrap();
        let json = report.to_json();
        assert!(json.contains("\"suite\""));
        assert!(report.render_text().contains("cases passed"));
    }
}
