//! Command-line harness: solve and verify instance files, run the
//! verification suites, generate instances, validate decompositions, and
//! report gadget coverage.
//!
//! `solve` and `verify` print exactly one line on stdout, the answer
//! residue or `-1`, with warnings on stderr. Suite and coverage commands
//! exit zero only when every check passes.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use twmc::format::{parse_instance, standard_family_warning, Instance};
use twmc::generator::Preset;
use twmc::harness::{self, SuiteKind};

#[derive(Parser)]
#[command(
    name = "twmc",
    version,
    about = "Weighted model counting on tree decompositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a registered solver on an instance file.
    Solve {
        /// Solver id: dominating-set, connected-ge-k, cograph,
        /// bipartite-cograph, maximal-cluster-graph.
        #[arg(long)]
        problem: String,
        instance: PathBuf,
    },
    /// Compute the answer by subset enumeration (small instances only).
    Verify {
        /// Property id; also accepts the oracle-only `c4-free`.
        #[arg(long)]
        problem: String,
        instance: PathBuf,
    },
    /// Run a verification suite: consistency, correctness, efficiency, or
    /// sporadic.
    Suite {
        kind: String,
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Correctness-suite case count.
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Write the machine-readable report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write generated instance files into a directory.
    Gen {
        /// Preset: warmup, standard, or stress.
        #[arg(long, default_value = "standard")]
        config: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the decomposition inside an instance file.
    ValidateTd { instance: PathBuf },
    /// Count small induced-subgraph classes over generated instances.
    Coverage {
        #[arg(long, default_value = "standard")]
        config: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_instance(path: &PathBuf) -> Result<Instance, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let (inst, warnings) = parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    for warning in warnings {
        eprintln!("warning: {warning}");
    }
    Ok(inst)
}

fn cmd_solve(problem: &str, path: &PathBuf) -> Result<(), String> {
    let inst = load_instance(path)?;
    let outcome = harness::solve_instance(problem, &inst).map_err(|e| e.to_string())?;
    println!("{}", outcome.output_line());
    Ok(())
}

fn cmd_verify(problem: &str, path: &PathBuf) -> Result<(), String> {
    let inst = load_instance(path)?;
    if problem == "c4-free" {
        if let Some(warning) = standard_family_warning(inst.graph.vertex_count()) {
            eprintln!("warning: {warning}");
        }
    }
    let line = harness::verify_instance(problem, &inst).map_err(|e| e.to_string())?;
    println!("{line}");
    Ok(())
}

fn cmd_suite(
    kind: &str,
    problem: &str,
    seed: u64,
    cases: usize,
    out: Option<&PathBuf>,
) -> Result<bool, String> {
    let kind = SuiteKind::from_id(kind).ok_or_else(|| {
        format!("unknown suite kind {kind:?} (consistency, correctness, efficiency, sporadic)")
    })?;
    let report = harness::run_suite(kind, problem, seed, cases).map_err(|e| e.to_string())?;
    print!("{}", report.render_text());
    if let Some(divergence) = &report.first_divergence {
        let dump = out
            .map(|p| p.with_extension("reproducer.txt"))
            .unwrap_or_else(|| PathBuf::from(format!("{}-{problem}-reproducer.txt", report.suite)));
        std::fs::write(&dump, &divergence.instance).map_err(|e| e.to_string())?;
        eprintln!(
            "first divergence at {}: expected {}, got {}; instance dumped to {}",
            divergence.case,
            divergence.expected,
            divergence.actual,
            dump.display()
        );
    }
    if let Some(path) = out {
        std::fs::write(path, report.to_json()).map_err(|e| e.to_string())?;
    }
    Ok(report.passed())
}

fn cmd_gen(config: &str, seed: u64, count: usize, out: &PathBuf) -> Result<(), String> {
    let preset = Preset::from_id(config)
        .ok_or_else(|| format!("unknown preset {config:?} (warmup, standard, stress)"))?;
    std::fs::create_dir_all(out).map_err(|e| e.to_string())?;
    for i in 0..count as u64 {
        let cfg = preset.config(seed.wrapping_add(i));
        let (g, w, td) = twmc::generator::sample_instance(&cfg).map_err(|e| e.to_string())?;
        let text = twmc::format::serialize_instance(&g, &w, &td);
        let path = out.join(format!("{}-{}-{:04}.txt", preset.id(), seed, i));
        std::fs::write(&path, text).map_err(|e| e.to_string())?;
        println!("{}", path.display());
    }
    Ok(())
}

fn cmd_validate_td(path: &PathBuf) -> Result<bool, String> {
    let inst = load_instance(path)?;
    let report = inst.decomposition.validate(&inst.graph);
    println!("{report}");
    Ok(report.is_valid())
}

fn cmd_coverage(
    config: &str,
    seed: u64,
    count: usize,
    out: Option<&PathBuf>,
) -> Result<bool, String> {
    let preset = Preset::from_id(config)
        .ok_or_else(|| format!("unknown preset {config:?} (warmup, standard, stress)"))?;
    let report = harness::coverage_over_preset(preset, seed, count).map_err(|e| e.to_string())?;
    println!(
        "{:<8} {:>10} {:>12} {:>10}",
        "class", "one-bag", "introduce", "join"
    );
    for (label, counts) in &report.counts {
        println!(
            "{label:<8} {:>10} {:>12} {:>10}",
            counts.one_bag, counts.introduce_split, counts.join_split
        );
    }
    if report.missing.is_empty() {
        println!("all {} classes covered", report.counts.len());
    } else {
        println!("missing classes: {}", report.missing.join(", "));
    }
    if let Some(path) = out {
        std::fs::write(
            path,
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
    }
    Ok(report.missing.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve { problem, instance } => cmd_solve(problem, instance).map(|()| true),
        Command::Verify { problem, instance } => cmd_verify(problem, instance).map(|()| true),
        Command::Suite {
            kind,
            problem,
            seed,
            cases,
            out,
        } => cmd_suite(kind, problem, *seed, *cases, out.as_ref()),
        Command::Gen {
            config,
            seed,
            count,
            out,
        } => cmd_gen(config, *seed, *count, out).map(|()| true),
        Command::ValidateTd { instance } => cmd_validate_td(instance),
        Command::Coverage {
            config,
            seed,
            count,
            out,
        } => cmd_coverage(config, *seed, *count, out.as_ref()),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
