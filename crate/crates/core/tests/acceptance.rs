//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run a subset by number: `cargo test --test acceptance -- 1 3 8`.

use std::collections::HashMap;
use std::path::Path;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use roleswarm::benchmark::{
    check_problem, list_problems, make_problem, random_orthogonal, Function,
};
use roleswarm::cli::ExperimentConfig;
use roleswarm::harness::{execute, problem_seed, AlgorithmEntry, ExperimentPlan, ProblemSpec};
use roleswarm::stats::{analyze, count_best_worst, friedman, holm_adjust, SummaryTable};
use roleswarm::swarm::{
    run, update_memories, AlgorithmConfig, GlobalMemory, Objective, Particle, Role, Swarm,
};

type Outcome = Result<String, String>;

fn check(cond: bool, detail: impl Into<String>) -> Outcome {
    if cond {
        Ok(detail.into())
    } else {
        Err(detail.into())
    }
}

// 1. Reduction equivalence
fn reduction_equivalence() -> Outcome {
    let problem = make_problem("Sphere", 10, 1).map_err(|e| e.to_string())?;
    let seed = 2024;
    let mut base = AlgorithmConfig::new(Role::Standard);
    base.max_evaluations = base.swarm_size as u64 * 51;
    let reference = run(&problem, &base, seed).map_err(|e| e.to_string())?;
    if reference.trajectory.len() != 51 {
        return Err(format!(
            "expected 51 trajectory points, got {}",
            reference.trajectory.len()
        ));
    }
    let bits = |t: &[(u64, f64)]| t.iter().map(|&(i, f)| (i, f.to_bits())).collect::<Vec<_>>();
    let mut mismatched = Vec::new();
    for role in Role::ALL.into_iter().filter(|&r| r != Role::Standard) {
        let mut config = base.clone();
        config.variant = role;
        config.role_fraction = 0.0;
        let outcome = run(&problem, &config, seed).map_err(|e| e.to_string())?;
        let same_position = outcome
            .best_position
            .iter()
            .zip(&reference.best_position)
            .all(|(a, b)| a.to_bits() == b.to_bits());
        if bits(&outcome.trajectory) != bits(&reference.trajectory) || !same_position {
            mismatched.push(role.algorithm_name());
        }
    }
    check(
        mismatched.is_empty(),
        if mismatched.is_empty() {
            "11 variants with role_fraction = 0 match PSO bitwise over 50 iterations".to_string()
        } else {
            format!("trajectories differ for {mismatched:?}")
        },
    )
}

// 2. Feasibility and budget invariants
fn feasibility_and_budget() -> Outcome {
    let problems = [
        "Sphere",
        "Shifted Schwefel",
        "Rotated Bent Cigar",
        "Styblinski-Tang",
    ];
    let (dimension, reps, budget) = (100, 5u64, 5_000u64);
    let mut runs = 0;
    let mut violations = 0usize;
    let mut budget_errors = Vec::new();
    for name in problems {
        let problem = make_problem(name, dimension, problem_seed(7, name, dimension))
            .map_err(|e| e.to_string())?;
        let bounds = problem.bounds().clone();
        for role in Role::ALL {
            let mut config = AlgorithmConfig::new(role);
            config.max_evaluations = budget;
            for rep in 0..reps {
                let mut swarm = Swarm::initialize(&problem, &config, 1000 * rep + role as u64)
                    .map_err(|e| e.to_string())?;
                violations += swarm
                    .particles
                    .iter()
                    .filter(|p| !bounds.contains(&p.position))
                    .count();
                while swarm.can_step(&config) {
                    swarm.step(&problem, &config).map_err(|e| e.to_string())?;
                    violations += swarm
                        .particles
                        .iter()
                        .filter(|p| !bounds.contains(&p.position))
                        .count();
                }
                let used = swarm.evaluations_used;
                let sweep = swarm.particles.len() as u64;
                if used > budget || budget - used >= sweep {
                    budget_errors.push(format!("{} on {name}: {used}", role.algorithm_name()));
                }
                runs += 1;
            }
        }
    }
    check(
        violations == 0 && budget_errors.is_empty(),
        format!(
            "{runs} runs, {violations} out-of-bounds positions, {} budget violations {:?}",
            budget_errors.len(),
            budget_errors.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn naive_ranks(row: &[f64]) -> Vec<f64> {
    row.iter()
        .map(|&v| {
            let less = row.iter().filter(|&&w| w < v).count() as f64;
            let equal = row.iter().filter(|&&w| w == v).count() as f64;
            less + (equal + 1.0) / 2.0
        })
        .collect()
}

fn oracle_friedman(matrix: &[Vec<f64>]) -> f64 {
    let n = matrix.len() as f64;
    let k = matrix[0].len() as f64;
    let ranks: Vec<Vec<f64>> = matrix.iter().map(|r| naive_ranks(r)).collect();
    let a: f64 = ranks.iter().flatten().map(|r| r * r).sum();
    let c = n * k * (k + 1.0) * (k + 1.0) / 4.0;
    let spread: f64 = (0..matrix[0].len())
        .map(|j| (ranks.iter().map(|r| r[j]).sum::<f64>() - n * (k + 1.0) / 2.0).powi(2))
        .sum();
    if (a - c).abs() < 1e-12 {
        0.0
    } else {
        (k - 1.0) * spread / (a - c)
    }
}

fn oracle_holm(p: &[f64]) -> Vec<f64> {
    let m = p.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p[a].partial_cmp(&p[b]).unwrap().then(a.cmp(&b)));
    let mut out = vec![0.0; m];
    for (pos, &i) in order.iter().enumerate() {
        out[i] = order[..=pos]
            .iter()
            .enumerate()
            .map(|(r, &j)| ((m - r) as f64 * p[j]).min(1.0))
            .fold(0.0, f64::max);
    }
    out
}

// 3. Statistical oracle suite
fn statistical_oracles() -> Outcome {
    let worked = holm_adjust(&[0.01, 0.04, 0.03]).map_err(|e| e.to_string())?;
    if worked != [0.03, 0.06, 0.06] {
        return Err(format!("Holm worked example gave {worked:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst_stat: f64 = 0.0;
    let mut worst_p: f64 = 0.0;
    let mut worst_holm: f64 = 0.0;
    let cases = 2_000;
    for _ in 0..cases {
        let rows = rng.random_range(2..=6);
        let cols = rng.random_range(2..=6);
        let levels = rng.random_range(2..=8);
        let matrix: Vec<Vec<f64>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| rng.random_range(0..levels) as f64)
                    .collect()
            })
            .collect();
        let result = friedman(&matrix).map_err(|e| e.to_string())?;
        let expected = oracle_friedman(&matrix);
        worst_stat = worst_stat.max((result.statistic - expected).abs());
        let expected_p = if expected > 0.0 {
            ChiSquared::new(cols as f64 - 1.0).unwrap().sf(expected)
        } else {
            1.0
        };
        worst_p = worst_p.max((result.p_value - expected_p).abs());

        let p: Vec<f64> = (0..cols)
            .map(|_| {
                if rng.random_bool(0.2) {
                    1.0
                } else {
                    rng.random::<f64>()
                }
            })
            .collect();
        let adjusted = holm_adjust(&p).map_err(|e| e.to_string())?;
        for (a, b) in adjusted.iter().zip(oracle_holm(&p)) {
            worst_holm = worst_holm.max((a - b).abs());
        }
    }
    check(
        worst_stat <= 1e-9 && worst_p <= 1e-9 && worst_holm <= 1e-9,
        format!(
            "Holm example exact; {cases} random matrices up to 6x6: max |dstat| = {worst_stat:.1e}, \
             max |dp| = {worst_p:.1e}, max |dholm| = {worst_holm:.1e}"
        ),
    )
}

const STYBLINSKI_TANG_LITERATURE: f64 = -39.16599;

// 4. Benchmark correctness
fn benchmark_correctness() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for info in list_problems() {
        for d in [10usize, 100] {
            if check_problem(info.name, d).is_err() {
                continue;
            }
            let problem = make_problem(info.name, d, 99).map_err(|e| e.to_string())?;
            let opt = problem.known_optimum();
            let (Some(x), Some(value)) = (opt.position, opt.value) else {
                continue;
            };
            let got = problem.evaluate(&x);
            let rel = (got - value).abs() / value.abs().max(1.0);
            if rel > 1e-6 {
                failures.push(format!("{} d={d}: {got} vs {value}", info.name));
            }
            if info.function == Function::StyblinskiTang {
                let literature = STYBLINSKI_TANG_LITERATURE * d as f64;
                let rel = (got - literature).abs() / literature.abs();
                if rel > 1e-3 {
                    failures.push(format!(
                        "{} d={d}: {got} vs literature {literature}",
                        info.name
                    ));
                }
            }
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_orth: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    for d in [10usize, 100] {
        for _ in 0..3 {
            let q = random_orthogonal(d, &mut rng);
            worst_orth = worst_orth.max(q.orthogonality_error());
            for _ in 0..10 {
                let x: Vec<f64> = (0..d).map(|_| rng.random_range(-100.0..100.0)).collect();
                let y = q.apply(&x);
                let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                let ny = y.iter().map(|v| v * v).sum::<f64>().sqrt();
                worst_norm = worst_norm.max((nx - ny).abs() / nx);
            }
        }
    }
    if worst_orth > 1e-8 || worst_norm > 1e-8 {
        failures.push(format!(
            "rotation isometry: orth {worst_orth:.1e}, norm {worst_norm:.1e}"
        ));
    }
    check(
        failures.is_empty() && checked > 0,
        format!(
            "{checked} (problem, dimension) optima within tolerance, rotation error {worst_orth:.1e} / \
             norm error {worst_norm:.1e}{}",
            if failures.is_empty() { String::new() } else { format!("; failures: {failures:?}") }
        ),
    )
}

// 5. Determinism under parallelism
fn determinism_under_parallelism() -> Outcome {
    let algorithms = [
        Role::Standard,
        Role::Wanderer,
        Role::Drifter,
        Role::Defeatist,
    ]
    .into_iter()
    .map(|r| AlgorithmEntry::from_config(AlgorithmConfig::new(r)))
    .collect();
    let problems = [
        "Sphere",
        "Salomon",
        "Alpine N1",
        "Rotated Discus",
        "Shifted and Rotated HappyCat",
    ]
    .iter()
    .map(|p| ProblemSpec::new(*p, 10))
    .collect();
    let plan = ExperimentPlan {
        algorithms,
        problems,
        repetitions: 10,
        base_seed: 5,
        max_evaluations: 1_000,
        swarm_size: 20,
    };
    let serial = execute(&plan, 1).map_err(|e| e.to_string())?;
    let parallel = execute(&plan, 8).map_err(|e| e.to_string())?;
    let multiset = |rs: &roleswarm::harness::ResultSet| {
        let mut v: Vec<Option<u64>> = rs
            .records
            .iter()
            .map(|r| r.final_best_fitness.map(f64::to_bits))
            .collect();
        v.sort();
        v
    };
    let same_records = serial.records.iter().zip(&parallel.records).all(|(a, b)| {
        a.seed == b.seed
            && a.final_best_fitness == b.final_best_fitness
            && a.trajectory == b.trajectory
    });
    check(
        serial.records.len() == 200 && multiset(&serial) == multiset(&parallel) && same_records,
        format!(
            "{} runs at parallelism 1 and 8: identical final-fitness multisets and per-run trajectories",
            serial.records.len()
        ),
    )
}

// 6. Desk-scale directional comparison
fn desk_scale() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/desk_scale.toml");
    let config = ExperimentConfig::load(&path).map_err(|e| e.to_string())?;
    let plan = config.to_plan().map_err(|e| e.to_string())?;
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let start = Instant::now();
    let results = execute(&plan, threads).map_err(|e| e.to_string())?;
    if !results.all_succeeded() {
        return Err(format!("{} runs failed", results.failures().count()));
    }
    let report = analyze(&results, "PSO", 0.05).map_err(|e| e.to_string())?;
    let wanderer = report
        .normalization
        .overall_mean("WandererPSO")
        .unwrap_or(f64::NAN);
    let pso = report.normalization.overall_mean("PSO").unwrap_or(f64::NAN);

    let summary = SummaryTable::from_records(&results.records);
    let med = |alg: &str, problem: &str| {
        summary
            .get(alg, problem, 100)
            .map_or(f64::NAN, |c| c.median)
    };
    let rugged = (
        "Shifted and Rotated Weierstrass",
        med("DrifterPSO", "Shifted and Rotated Weierstrass"),
        med("WandererPSO", "Shifted and Rotated Weierstrass"),
    );
    let smooth = (
        "Sphere",
        med("WandererPSO", "Sphere"),
        med("DrifterPSO", "Sphere"),
    );
    let b1 = rugged.1 < rugged.2;
    let b2 = smooth.1 < smooth.2;
    let mut ranking: Vec<(String, f64)> = report
        .normalization
        .algorithms
        .iter()
        .cloned()
        .zip(report.normalization.overall.iter().copied())
        .collect();
    ranking.sort_by(|a, b| a.1.total_cmp(&b.1));
    let ranking: Vec<String> = ranking.iter().map(|(a, v)| format!("{a} {v:.3}")).collect();
    let detail = format!(
        "{} runs in {:.0}s; (a) normalized mean WandererPSO {wanderer:.3} vs PSO {pso:.3}; \
         (b, informational) median on Weierstrass DrifterPSO {:.4e} vs WandererPSO {:.4e} [{}], \
         on Sphere WandererPSO {:.4e} vs DrifterPSO {:.4e} [{}]; ranking: {}",
        results.records.len(),
        start.elapsed().as_secs_f64(),
        rugged.1,
        rugged.2,
        if b1 { "holds" } else { "does not hold" },
        smooth.1,
        smooth.2,
        if b2 { "holds" } else { "does not hold" },
        ranking.join(", ")
    );
    check(wanderer < pso, detail)
}

// 7. Memory ordering
fn memory_ordering() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 10,
        failure_persistence: None,
        ..Config::default()
    });
    let fitness = prop_oneof![
        8 => -1e6f64..1e6,
        2 => (-5i32..5).prop_map(f64::from),
        1 => Just(f64::NAN),
        1 => Just(f64::INFINITY),
    ];
    let calls = prop::collection::vec((0usize..8, fitness, -10.0f64..10.0), 1_000);
    let mut total = 0usize;
    let result = runner.run(&calls, |calls| {
        let mut particles: Vec<Particle> = (0..8)
            .map(|i| {
                let x = vec![i as f64; 3];
                Particle {
                    position: x.clone(),
                    velocity: vec![0.0; 3],
                    best_position: x.clone(),
                    best_fitness: i as f64,
                    worst_position: x,
                    worst_fitness: i as f64,
                    role: Role::Standard,
                }
            })
            .collect();
        let mut global = GlobalMemory {
            best_position: vec![0.0; 3],
            best_fitness: 0.0,
            worst_position: vec![7.0; 3],
            worst_fitness: 7.0,
        };
        for (i, f, coord) in calls {
            let p = &mut particles[i];
            p.position = vec![coord; 3];
            let before = (
                p.best_fitness,
                p.worst_fitness,
                global.best_fitness,
                global.worst_fitness,
            );
            let outcome = update_memories(p, &mut global, f);
            if !f.is_finite() {
                prop_assert!(outcome.is_err());
                prop_assert_eq!(
                    before,
                    (
                        p.best_fitness,
                        p.worst_fitness,
                        global.best_fitness,
                        global.worst_fitness
                    )
                );
            }
            prop_assert!(p.best_fitness <= p.worst_fitness);
            prop_assert!(global.best_fitness <= global.worst_fitness);
            prop_assert!(global.best_fitness <= p.best_fitness);
            prop_assert!(global.worst_fitness >= p.worst_fitness);
        }
        Ok(())
    });
    total += 10 * 1_000;
    match result {
        Ok(()) => Ok(format!(
            "{total} randomized update_memories calls, ordering never violated"
        )),
        Err(e) => Err(format!("violation: {e}")),
    }
}

const WINNERS: [(&str, [&str; 3]); 32] = [
    ("Alpine N1", ["PSO", "WandererPSO", "WandererPSO"]),
    ("Crowned Cross", ["DrifterPSO", "DrifterPSO", "DrifterPSO"]),
    ("Egg-Holder", ["ContrarianPSO", "PSO", "PSO"]),
    (
        "Expanded Shaffer",
        ["DefeatistPSO", "ContrarianPSO", "ContrarianPSO"],
    ),
    (
        "Generalized Schaffer N1",
        ["DefeatistPSO", "ContrarianPSO", "WandererPSO"],
    ),
    (
        "Generalized Schaffer N2",
        ["AmnesiacPSO", "WandererPSO", "EscapistPSO"],
    ),
    (
        "Generalized Schaffer N3",
        ["DefeatistPSO", "DefeatistPSO", "DefeatistPSO"],
    ),
    (
        "Generalized Schaffer N4",
        ["EscapistPSO", "EscapistPSO", "PSO"],
    ),
    (
        "Generalized Schmidt-Vetters",
        ["RebelPSO", "RebelPSO", "RebelPSO"],
    ),
    (
        "Lennard-Jones Minimum Energy Cluster",
        ["ContrarianPSO", "ContrarianPSO", "ContrarianPSO"],
    ),
    ("Michalewicz", ["DrifterPSO", "DrifterPSO", "DrifterPSO"]),
    ("Mishra N3", ["WandererPSO", "AnarchicPSO", "AnarchicPSO"]),
    ("Mishra N4", ["WandererPSO", "AnarchicPSO", "AnarchicPSO"]),
    (
        "Modified Rosenbrock No.02",
        ["AmnesiacPSO", "DefeatistPSO", "DefeatistPSO"],
    ),
    (
        "Rotated Bent Cigar",
        ["DefeatistPSO", "DefeatistPSO", "DefeatistPSO"],
    ),
    (
        "Rotated Discus",
        ["EschewerPSO", "AmnesiacPSO", "WandererPSO"],
    ),
    (
        "Rotated High Conditioned Elliptic",
        ["PSO", "WandererPSO", "DefeatistPSO"],
    ),
    ("Salomon", ["RebelPSO", "WandererPSO", "WandererPSO"]),
    (
        "Schwefel N20",
        ["DefeatistPSO", "DefeatistPSO", "DefeatistPSO"],
    ),
    ("Schwefel N36", ["DrifterPSO", "WandererPSO", "WandererPSO"]),
    (
        "Schwefel N6",
        ["DefeatistPSO", "DefeatistPSO", "AmnesiacPSO"],
    ),
    (
        "Shifted Schwefel",
        ["AmnesiacPSO", "AmnesiacPSO", "AmnesiacPSO"],
    ),
    (
        "Shifted and Rotated HGBat",
        ["WandererPSO", "WandererPSO", "DrifterPSO"],
    ),
    (
        "Shifted and Rotated HappyCat",
        ["WandererPSO", "WandererPSO", "DrifterPSO"],
    ),
    (
        "Shifted and Rotated Schaffer F7",
        ["AmnesiacPSO", "AmnesiacPSO", "AmnesiacPSO"],
    ),
    (
        "Shifted and Rotated Weierstrass",
        ["DrifterPSO", "DrifterPSO", "DrifterPSO"],
    ),
    ("Shubert N3", ["DrifterPSO", "DrifterPSO", "DrifterPSO"]),
    ("Shubert N4", ["DrifterPSO", "WandererPSO", "WandererPSO"]),
    (
        "SineEnvelope",
        ["DrifterPSO", "DefeatistPSO", "DefeatistPSO"],
    ),
    (
        "Stochastic",
        ["DefeatistPSO", "DefeatistPSO", "DefeatistPSO"],
    ),
    ("StretchedV", ["AnarchicPSO", "WandererPSO", "PSO"]),
    (
        "Styblinski-Tang",
        ["EscapistPSO", "DefeatistPSO", "EscapistPSO"],
    ),
];

const BEST_COUNTS: [(&str, [usize; 3], usize); 10] = [
    ("DefeatistPSO", [7, 8, 7], 22),
    ("WandererPSO", [4, 9, 6], 19),
    ("DrifterPSO", [7, 4, 6], 17),
    ("AmnesiacPSO", [4, 3, 3], 10),
    ("ContrarianPSO", [2, 3, 2], 7),
    ("PSO", [2, 1, 3], 6),
    ("AnarchicPSO", [1, 2, 2], 5),
    ("EscapistPSO", [2, 1, 2], 5),
    ("RebelPSO", [2, 1, 1], 4),
    ("EschewerPSO", [1, 0, 0], 1),
];

// 8. Counting fidelity
fn counting_fidelity() -> Outcome {
    let dims = [100usize, 500, 1000];
    let mut samples = Vec::new();
    for (problem, winners) in WINNERS {
        for (d, winner) in dims.iter().zip(winners) {
            for role in Role::ALL {
                let name = role.algorithm_name();
                samples.push((name, problem, *d, if name == winner { 0.0 } else { 1.0 }));
            }
        }
    }
    let counts =
        count_best_worst(&SummaryTable::from_samples(samples)).map_err(|e| e.to_string())?;
    let headline = [
        ("DefeatistPSO", 22),
        ("WandererPSO", 19),
        ("DrifterPSO", 17),
    ];
    let mut mismatches = Vec::new();
    for (alg, expected) in headline {
        if counts.best_total(alg) != expected {
            mismatches.push(format!(
                "{alg} total {} != {expected}",
                counts.best_total(alg)
            ));
        }
    }
    if counts.best_count("DefeatistPSO", 100) != 7 {
        mismatches.push("DefeatistPSO d=100".into());
    }
    let listed: HashMap<&str, ([usize; 3], usize)> = BEST_COUNTS
        .iter()
        .map(|&(a, per, total)| (a, (per, total)))
        .collect();
    for role in Role::ALL {
        let alg = role.algorithm_name();
        let (per, total) = listed.get(alg).copied().unwrap_or(([0; 3], 0));
        let got: Vec<usize> = dims.iter().map(|&d| counts.best_count(alg, d)).collect();
        if got != per || counts.best_total(alg) != total {
            mismatches.push(format!("{alg}: {got:?}"));
        }
    }
    check(
        mismatches.is_empty(),
        format!(
            "best totals DefeatistPSO {}, WandererPSO {}, DrifterPSO {}; DefeatistPSO d=100 {}; full count table {}",
            counts.best_total("DefeatistPSO"),
            counts.best_total("WandererPSO"),
            counts.best_total("DrifterPSO"),
            counts.best_count("DefeatistPSO", 100),
            if mismatches.is_empty() { "matches".to_string() } else { format!("mismatches {mismatches:?}") }
        ),
    )
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 8] = [
        (1, "reduction equivalence", reduction_equivalence),
        (2, "feasibility and budget", feasibility_and_budget),
        (3, "statistical oracles", statistical_oracles),
        (4, "benchmark correctness", benchmark_correctness),
        (
            5,
            "determinism under parallelism",
            determinism_under_parallelism,
        ),
        (6, "desk-scale comparison", desk_scale),
        (7, "memory ordering", memory_ordering),
        (8, "counting fidelity", counting_fidelity),
    ];
    let selected: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (id, name, f) in criteria {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("acceptance {id} PASS [{name}] ({secs:.1}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("acceptance {id} FAIL [{name}] ({secs:.1}s) {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
