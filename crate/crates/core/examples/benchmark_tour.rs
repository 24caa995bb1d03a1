//! Walk the benchmark registry: boxes, transforms and known optima.
//!
//! cargo run --release --example benchmark_tour

use roleswarm::benchmark::{check_problem, list_problems, make_problem};

fn main() {
    let d = 10;
    for info in list_problems() {
        if check_problem(info.name, d).is_err() {
            println!("{:<38} not defined for d={d}", info.name);
            continue;
        }
        let problem = make_problem(info.name, d, 3).expect("checked above");
        let center: Vec<f64> = vec![0.5 * (info.low + info.high); d];
        let optimum = problem.known_optimum();
        let at_optimum = optimum.position.as_ref().map(|x| problem.evaluate(x));
        println!(
            "{:<38} [{:>8}, {:>8}] shift={:<5} rotate={:<5} f(center)={:>12.4e} f*={}",
            info.name,
            info.low,
            info.high,
            info.shifted,
            info.rotated,
            problem.evaluate(&center),
            match (optimum.value, at_optimum) {
                (Some(v), Some(f)) => format!("{v:.6} (evaluated {f:.6})"),
                (Some(v), None) => format!("{v:.6}"),
                _ => "unknown".to_string(),
            }
        );
    }
}
