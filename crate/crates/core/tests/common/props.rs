//! Property checks run both by the property suite and by the acceptance
//! report. Each `check_*` runs `cases` generated cases from a fixed seed
//! and returns the first counterexample.

use botohe::colony::{
    construct_team_plan, construct_trail, update_pheromone, ColonyConfig, PheromoneField,
    PHEROMONE_FLOOR,
};
use botohe::eval::{prob_visited_by_team, survivor_pmf, trail_survival_prob};
use botohe::oracle::enumerate_closed_trails;
use botohe::pareto::Insertion;
use botohe::{
    area_indicator, dominates, evaluate_plan, load_instance, ObjectiveVector, ParetoArchive,
    TeamPlan, Trail,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{random_instance, random_plan, random_trail, two_node};

pub const CASES: u32 = 1000;

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new_with_rng(
        Config {
            failure_persistence: None,
            ..Config::with_cases(cases)
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// Objective vectors on a coarse grid so that ties are common.
fn grid_point() -> impl Strategy<Value = ObjectiveVector> {
    (0u8..6, 0u8..6).prop_map(|(r, s)| ObjectiveVector::new(f64::from(r) / 2.0, f64::from(s) / 2.0))
}

fn fine_point() -> impl Strategy<Value = ObjectiveVector> {
    (0.0f64..10.0, 0.0f64..4.0).prop_map(|(r, s)| ObjectiveVector::new(r, s))
}

/// (seed, nodes, robots, density) for a random instance.
fn instance_params(
    max_nodes: usize,
    max_robots: usize,
) -> impl Strategy<Value = (u64, usize, usize, f64)> {
    (any::<u64>(), 2..=max_nodes, 1..=max_robots, 0.0f64..0.9)
}

pub fn check_dominance_partial_order(cases: u32) -> Result<(), String> {
    run(
        cases,
        (grid_point(), grid_point(), grid_point()),
        |(a, b, c)| {
            prop_assert!(!dominates(&a, &a));
            if dominates(&a, &b) {
                prop_assert!(!dominates(&b, &a));
                if dominates(&b, &c) {
                    prop_assert!(dominates(&a, &c));
                }
            }
            Ok(())
        },
    )
}

pub fn check_archive_idempotent_and_order_independent(cases: u32) -> Result<(), String> {
    let inst = two_node(0.9, 1);
    let plan = TeamPlan::stay_home(&inst);
    let points = prop::collection::vec(prop_oneof![grid_point(), fine_point()], 0..40)
        .prop_flat_map(|v| (Just(v.clone()), Just(v).prop_shuffle()));
    run(cases, points, |(points, shuffled)| {
        let mut a = ParetoArchive::new();
        for &p in &points {
            a.insert(plan.clone(), p);
        }
        let once = a.clone();
        for &p in &points {
            prop_assert_eq!(a.insert(plan.clone(), p), Insertion::Rejected);
        }
        prop_assert_eq!(&a, &once);

        let mut b = ParetoArchive::new();
        for &p in &shuffled {
            b.insert(plan.clone(), p);
        }
        prop_assert_eq!(a.objectives(), b.objectives());

        let front = a.objectives();
        for x in &front {
            for y in &front {
                prop_assert!(!dominates(x, y));
            }
        }
        for p in &points {
            prop_assert!(front.iter().any(|f| f == p || dominates(f, p)));
        }
        Ok(())
    })
}

fn random_field(inst: &botohe::ProblemInstance, rng: &mut ChaCha8Rng) -> PheromoneField {
    let mut field = PheromoneField::new(inst);
    for t in field.tau_r.iter_mut().chain(field.tau_s.iter_mut()) {
        *t = 10f64.powf(rng.random_range(-12.0..1.0));
    }
    field
}

pub fn check_construct_trail_invariants(cases: u32) -> Result<(), String> {
    let params = (
        instance_params(5, 3),
        0.0f64..=1.0,
        any::<bool>(),
        any::<bool>(),
    );
    run(
        cases,
        params,
        |((seed, n, k, density), lambda, no_h, no_p)| {
            let inst = random_instance(seed, n, k, density);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let field = random_field(&inst, &mut rng);
            let cfg = ColonyConfig {
                ablate_heuristic: no_h,
                ablate_pheromone: no_p,
                ..ColonyConfig::default()
            };
            let all = (n <= 4).then(|| enumerate_closed_trails(&inst, inst.num_arcs()).unwrap());

            let mut prior: Vec<Trail> = Vec::new();
            for _ in 0..k {
                let t = construct_trail(&inst, &field, lambda, &prior, &cfg, &mut rng);
                let rebuilt = Trail::new(&inst, t.nodes().to_vec());
                prop_assert_eq!(rebuilt.as_ref(), Ok(&t));
                if let Some(all) = &all {
                    prop_assert!(
                        all.binary_search(&t).is_ok(),
                        "{:?} is not a closed trail",
                        t.labels(&inst)
                    );
                }
                prior.push(t);
            }

            let plan = construct_team_plan(&inst, &field, lambda, &cfg, &mut rng);
            prop_assert_eq!(plan.num_robots(), k);
            prop_assert_eq!(TeamPlan::new(&inst, plan.trails().to_vec()), Ok(plan));
            Ok(())
        },
    )
}

pub fn check_pheromone_positivity(cases: u32) -> Result<(), String> {
    let params = (instance_params(6, 3), 1e-3f64..0.999, 1usize..40);
    run(cases, params, |((seed, n, k, density), rho, rounds)| {
        let inst = random_instance(seed, n, k, density);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(7));
        let mut field = random_field(&inst, &mut rng);
        for _ in 0..rounds {
            let plans: Vec<TeamPlan> = (0..rng.random_range(0..4))
                .map(|_| random_plan(&inst, 0.3, &mut rng))
                .collect();
            let deposits: Vec<_> = plans.iter().map(|p| (p, evaluate_plan(&inst, p))).collect();
            update_pheromone(&inst, &mut field, &deposits, rho);
            for &t in field.tau_r.iter().chain(&field.tau_s) {
                prop_assert!(
                    t.is_finite() && t >= PHEROMONE_FLOOR && t > 0.0,
                    "tau = {}",
                    t
                );
            }
        }
        Ok(())
    })
}

pub fn check_monotone_survival(cases: u32) -> Result<(), String> {
    run(cases, instance_params(8, 1), |(seed, n, k, density)| {
        let inst = random_instance(seed, n, k, density);
        let t = random_trail(&inst, 0.2, 30, &mut ChaCha8Rng::seed_from_u64(!seed));
        prop_assert_eq!(trail_survival_prob(&inst, &t, 0), Ok(1.0));
        let mut last = 1.0;
        for i in 1..=t.len() {
            let p = trail_survival_prob(&inst, &t, i).unwrap();
            prop_assert!(p <= last && p > 0.0, "hop {}: {} after {}", i, p, last);
            last = p;
        }
        prop_assert!(trail_survival_prob(&inst, &t, t.len() + 1).is_err());
        Ok(())
    })
}

pub fn check_area_ignores_dominated_points(cases: u32) -> Result<(), String> {
    let inst = two_node(0.9, 1);
    let plan = TeamPlan::stay_home(&inst);
    let points = prop::collection::vec(prop_oneof![grid_point(), fine_point()], 0..30);
    run(cases, (points, fine_point()), |(points, extra)| {
        let raw = area_indicator(&points).unwrap();
        let mut a = ParetoArchive::new();
        for &p in &points {
            a.insert(plan.clone(), p);
        }
        prop_assert_eq!(area_indicator(&a.objectives()).unwrap(), raw);
        prop_assert_eq!(a.area(), raw);
        a.insert(plan.clone(), extra);
        prop_assert!(a.area() >= raw);
        for p in &points {
            prop_assert!(raw >= p.expected_reward * p.expected_survivors);
        }
        Ok(())
    })
}

pub fn check_evaluation_bounds(cases: u32) -> Result<(), String> {
    run(
        cases,
        (instance_params(8, 4), 0.0f64..1.0),
        |((seed, n, k, density), home)| {
            let inst = random_instance(seed, n, k, density);
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            let plan = random_plan(&inst, home, &mut rng);
            let obj = evaluate_plan(&inst, &plan);
            prop_assert!(
                obj.expected_reward >= 0.0 && obj.expected_reward <= inst.total_reward() + 1e-12
            );
            prop_assert!(
                obj.expected_survivors >= 0.0 && obj.expected_survivors <= k as f64 + 1e-12
            );
            for v in 0..inst.num_nodes() {
                let p = prob_visited_by_team(&inst, &plan, v);
                prop_assert!((0.0..=1.0).contains(&p));
            }
            prop_assert_eq!(prob_visited_by_team(&inst, &plan, inst.base()), 1.0);

            let mut reversed = plan.trails().to_vec();
            reversed.reverse();
            let again = TeamPlan::new(&inst, reversed).unwrap();
            prop_assert_eq!(evaluate_plan(&inst, &again), obj);

            let pmf = survivor_pmf(&inst, &plan);
            prop_assert_eq!(pmf.len(), k + 1);
            prop_assert!(pmf.iter().all(|&p| (0.0..=1.0 + 1e-15).contains(&p)));
            prop_assert!((pmf.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            let mean: f64 = pmf.iter().enumerate().map(|(s, p)| s as f64 * p).sum();
            prop_assert!((mean - obj.expected_survivors).abs() <= 1e-12);
            Ok(())
        },
    )
}

pub fn check_stay_home_robot_adds_one_survivor(cases: u32) -> Result<(), String> {
    run(cases, instance_params(7, 3), |(seed, n, k, density)| {
        let inst = random_instance(seed, n, k, density);
        let plan = random_plan(&inst, 0.2, &mut ChaCha8Rng::seed_from_u64(seed >> 1));
        let bigger = inst.with_num_robots(k + 1).unwrap();
        let mut trails = plan.trails().to_vec();
        trails.push(Trail::stay_home(&bigger));
        let padded = TeamPlan::new(&bigger, trails).unwrap();
        let (a, b) = (evaluate_plan(&inst, &plan), evaluate_plan(&bigger, &padded));
        prop_assert!((b.expected_survivors - a.expected_survivors - 1.0).abs() <= 1e-12);
        prop_assert!((b.expected_reward - a.expected_reward).abs() <= 1e-12);
        Ok(())
    })
}

pub fn check_instance_round_trip(cases: u32) -> Result<(), String> {
    run(cases, instance_params(8, 4), |(seed, n, k, density)| {
        let inst = random_instance(seed, n, k, density);
        let back = load_instance(inst.to_json_pretty().as_bytes()).unwrap();
        prop_assert_eq!(back.digest(), inst.digest());
        prop_assert_eq!(back.to_doc(), inst.to_doc());
        prop_assert!(back.violations().is_empty());
        Ok(())
    })
}
