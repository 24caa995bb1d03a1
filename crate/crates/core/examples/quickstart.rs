//! Minimize one benchmark problem with one variant.
//!
//! cargo run --release --example quickstart

use roleswarm::benchmark::make_problem;
use roleswarm::swarm::{run, AlgorithmConfig, Objective, Role};

fn main() {
    let problem = make_problem("Shifted and Rotated HappyCat", 30, 11).expect("known problem");
    let config = AlgorithmConfig::new(Role::Wanderer);
    let outcome = run(&problem, &config, 42).expect("valid config");

    println!(
        "{} on {} (d={})",
        config.algorithm_name(),
        problem.name(),
        problem.dimension()
    );
    println!("initial best  {:.6e}", outcome.initial_best_fitness);
    println!("final best    {:.6e}", outcome.best_fitness);
    println!("evaluations   {}", outcome.evaluations_used);
    println!("iterations    {}", outcome.trajectory.len() - 1);
    println!("optimum value {:?}", problem.known_optimum().value);
}
