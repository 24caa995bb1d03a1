//! Drive the swarm one sweep at a time and watch its spread.
//!
//! cargo run --release --example step_by_step

use roleswarm::benchmark::make_problem;
use roleswarm::swarm::{AlgorithmConfig, Role, Swarm};

fn spread(swarm: &Swarm) -> f64 {
    let n = swarm.particles.len() as f64;
    let d = swarm.particles[0].position.len();
    let centroid: Vec<f64> = (0..d)
        .map(|j| swarm.particles.iter().map(|p| p.position[j]).sum::<f64>() / n)
        .collect();
    swarm
        .particles
        .iter()
        .map(|p| {
            p.position
                .iter()
                .zip(&centroid)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .sum::<f64>()
        / n
}

fn main() {
    let problem = make_problem("Rastrigin", 20, 0).expect("known problem");
    for role in [Role::Standard, Role::Erratic, Role::Drifter] {
        let mut config = AlgorithmConfig::new(role);
        config.max_evaluations = 20_000;
        let mut swarm = Swarm::initialize(&problem, &config, 9).expect("valid config");
        println!("{}", role.algorithm_name());
        while swarm.can_step(&config) {
            swarm.step(&problem, &config).expect("finite objective");
            if swarm.iteration % 40 == 0 {
                println!(
                    "  iter {:>4}  best {:>10.4}  mean distance to centroid {:>8.4}",
                    swarm.iteration,
                    swarm.best_fitness(),
                    spread(&swarm)
                );
            }
        }
    }
}
