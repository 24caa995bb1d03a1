//! All twelve variants on one problem, a few seeds each.
//!
//! cargo run --release --example compare_roles -- "Salomon" 50

use roleswarm::benchmark::make_problem;
use roleswarm::swarm::{run, AlgorithmConfig, Role};

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "Alpine N1".to_string());
    let dimension: usize = args.next().and_then(|d| d.parse().ok()).unwrap_or(30);
    let problem = make_problem(&name, dimension, 1).unwrap_or_else(|e| panic!("{e}"));

    println!(
        "{} d={dimension}, 5 seeds, 10,000 evaluations",
        problem.name()
    );
    println!("{:<14} {:>14} {:>14}", "algorithm", "median", "best");
    for role in Role::ALL {
        let mut config = AlgorithmConfig::new(role);
        config.max_evaluations = 10_000;
        let mut finals: Vec<f64> = (0..5)
            .map(|seed| {
                run(&problem, &config, seed)
                    .expect("valid config")
                    .best_fitness
            })
            .collect();
        finals.sort_by(f64::total_cmp);
        println!(
            "{:<14} {:>14.6e} {:>14.6e}",
            role.algorithm_name(),
            finals[2],
            finals[0]
        );
    }
}
