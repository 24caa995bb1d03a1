//! Optimize your own function by wrapping a closure.
//!
//! cargo run --release --example custom_objective

use roleswarm::swarm::{run, AlgorithmConfig, Bounds, FnObjective, Role};

fn main() {
    // Rosenbrock valley, minimum 0 at (1, ..., 1).
    let rosenbrock = FnObjective::new(Bounds::uniform(8, -5.0, 10.0), |x: &[f64]| {
        x.windows(2)
            .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
            .sum()
    });

    for role in [Role::Standard, Role::Defeatist, Role::Wanderer] {
        let mut config = AlgorithmConfig::new(role);
        config.swarm_size = 40;
        config.max_evaluations = 40_000;
        let outcome = run(&rosenbrock, &config, 5).expect("valid config");
        let x: Vec<String> = outcome
            .best_position
            .iter()
            .map(|v| format!("{v:.3}"))
            .collect();
        println!(
            "{:<12} f = {:.3e} at [{}]",
            role.algorithm_name(),
            outcome.best_fitness,
            x.join(", ")
        );
    }

    // Per-dimension boxes are allowed too.
    let boxed = Bounds {
        lower: vec![0.0, -1.0],
        upper: vec![1.0, 1.0],
    };
    let tilted = FnObjective::new(boxed, |x: &[f64]| {
        (x[0] - 0.3).powi(2) + (x[1] + 2.0).powi(2)
    });
    let outcome = run(&tilted, &AlgorithmConfig::new(Role::Standard), 1).expect("valid config");
    println!(
        "boxed optimum at {:?} (the bound y = -1 is active)",
        outcome.best_position
    );
}
