//! Run a small grid in parallel and write the CSV files.
//!
//! cargo run --release --example experiment_grid -- /tmp/grid

use roleswarm::harness::{execute, write_results, AlgorithmEntry, ExperimentPlan, ProblemSpec};
use roleswarm::swarm::{AlgorithmConfig, Role};

fn main() {
    let out = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("roleswarm-grid"));
    let algorithms = [Role::Standard, Role::Amnesiac, Role::Wanderer]
        .into_iter()
        .map(|r| AlgorithmEntry::from_config(AlgorithmConfig::new(r)))
        .collect();
    let problems = ["Schwefel N20", "Salomon", "Rotated Discus"]
        .into_iter()
        .flat_map(|p| [20, 40].map(|d| ProblemSpec::new(p, d)))
        .collect();
    let plan = ExperimentPlan {
        algorithms,
        problems,
        repetitions: 4,
        base_seed: 1,
        max_evaluations: 5_000,
        swarm_size: 50,
    };

    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let results = execute(&plan, threads).expect("valid plan");
    let path = write_results(&results, &out).expect("writable directory");
    println!(
        "{} runs, {} failed, written to {}",
        results.records.len(),
        results.failures().count(),
        path.display()
    );
    for r in results.records.iter().filter(|r| r.repetition == 0) {
        println!(
            "{:<12} {:<16} d={:<3} seed={:>20} best={:.4e}",
            r.algorithm,
            r.problem,
            r.dimension,
            r.seed,
            r.final_best_fitness.unwrap_or(f64::NAN)
        );
    }
}
