//! Run a grid, then rank the algorithms and test them against PSO.
//!
//! cargo run --release --example analysis_report

use roleswarm::harness::{execute, AlgorithmEntry, ExperimentPlan, ProblemSpec};
use roleswarm::stats::analyze;
use roleswarm::swarm::{AlgorithmConfig, Role};

fn main() {
    let algorithms = Role::ALL
        .into_iter()
        .map(|r| AlgorithmEntry::from_config(AlgorithmConfig::new(r)))
        .collect();
    let problems = [
        "Alpine N1",
        "Salomon",
        "Schwefel N20",
        "Styblinski-Tang",
        "Rotated Bent Cigar",
        "StretchedV",
    ]
    .into_iter()
    .map(|p| ProblemSpec::new(p, 20))
    .collect();
    let plan = ExperimentPlan {
        algorithms,
        problems,
        repetitions: 3,
        base_seed: 3,
        max_evaluations: 4_000,
        swarm_size: 40,
    };
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let results = execute(&plan, threads).expect("valid plan");
    let report = analyze(&results, "PSO", 0.05).expect("complete results");
    println!("{}", report.to_markdown());
}
