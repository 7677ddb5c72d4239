//! Instance and plan generators shared by the integration and acceptance
//! suites.

#![allow(dead_code)]

pub mod oracles;
pub mod props;

use botohe::instance::{ArcDoc, InstanceDoc, NodeDoc};
use botohe::{ProblemInstance, TeamPlan, Trail};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Strongly connected random instance on `n` nodes `v0..v{n-1}` with base
/// `v0`: a directed ring plus each other ordered pair with probability
/// `density`. Survival in [0.6, 1), rewards in tenths from 0.1 to 1.
pub fn random_instance(seed: u64, n: usize, k: usize, density: f64) -> ProblemInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = (0..n)
        .map(|i| NodeDoc {
            id: format!("v{i}"),
            reward: if i == 0 {
                0.0
            } else {
                f64::from(rng.random_range(1..=10u8)) / 10.0
            },
        })
        .collect();
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let ring = j == (i + 1) % n;
            if ring || rng.random::<f64>() < density {
                arcs.push(ArcDoc {
                    from: format!("v{i}"),
                    to: format!("v{j}"),
                    survival: rng.random_range(0.6..1.0),
                });
            }
        }
    }
    ProblemInstance::from_doc(InstanceDoc {
        base: "v0".into(),
        num_robots: k,
        nodes,
        arcs,
    })
    .expect("generated instances are valid")
}

/// A random closed trail: a uniform walk over unused arcs that stops at the
/// base with probability `stop` and gives up after a dead end by restarting.
/// Falls back to staying home if 100 walks strand.
pub fn random_trail<R: Rng>(
    inst: &ProblemInstance,
    stop: f64,
    max_arcs: usize,
    rng: &mut R,
) -> Trail {
    let base = inst.base();
    'walk: for _ in 0..100 {
        let mut used = vec![false; inst.num_arcs()];
        let mut nodes = vec![base];
        loop {
            let here = *nodes.last().unwrap();
            if here == base && nodes.len() > 1 && rng.random::<f64>() < stop {
                break;
            }
            if nodes.len() > max_arcs {
                if here == base {
                    break;
                }
                continue 'walk;
            }
            let open: Vec<_> = inst
                .out_arcs(here)
                .iter()
                .copied()
                .filter(|&a| a != inst.base_loop() && !used[a])
                .collect();
            match open.choose(rng) {
                Some(&a) => {
                    used[a] = true;
                    nodes.push(inst.arc(a).to);
                }
                None if here == base => break,
                None => continue 'walk,
            }
        }
        return Trail::new(inst, nodes).expect("walks follow unused arcs back to base");
    }
    Trail::stay_home(inst)
}

/// A random team plan; each robot stays home with probability `home`.
pub fn random_plan<R: Rng>(inst: &ProblemInstance, home: f64, rng: &mut R) -> TeamPlan {
    let trails = (0..inst.num_robots())
        .map(|_| {
            if rng.random::<f64>() < home {
                Trail::stay_home(inst)
            } else {
                random_trail(inst, 0.3, 24, rng)
            }
        })
        .collect();
    TeamPlan::new(inst, trails).expect("random plans have one trail per robot")
}

fn parse(json: &str) -> ProblemInstance {
    botohe::load_instance(json.as_bytes()).expect("fixture instances are valid")
}

fn two_way(arcs: &[(&str, &str, f64)]) -> String {
    arcs.iter()
        .flat_map(|&(a, b, p)| {
            [
                format!(r#"{{"from":"{a}","to":"{b}","survival":{p}}}"#),
                format!(r#"{{"from":"{b}","to":"{a}","survival":{p}}}"#),
            ]
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn instance(k: usize, rewards: &[(&str, f64)], arcs: &str) -> ProblemInstance {
    let nodes = rewards
        .iter()
        .map(|(id, r)| format!(r#"{{"id":"{id}","reward":{r}}}"#))
        .collect::<Vec<_>>()
        .join(",");
    parse(&format!(
        r#"{{"base":"b","num_robots":{k},"nodes":[{{"id":"b","reward":0}},{nodes}],"arcs":[{arcs}]}}"#
    ))
}

/// Base `b` and one room `a` (reward 1) joined both ways with survival `p`.
pub fn two_node(p: f64, k: usize) -> ProblemInstance {
    instance(k, &[("a", 1.0)], &two_way(&[("b", "a", p)]))
}

/// Small hand-built instances (at most five nodes, at most two robots)
/// whose exact fronts are cheap to enumerate.
pub fn recovery_instances() -> Vec<(&'static str, ProblemInstance)> {
    let ring5 = two_way(&[
        ("b", "a", 0.95),
        ("a", "c", 0.9),
        ("c", "d", 0.7),
        ("d", "e", 0.85),
        ("e", "b", 0.8),
    ]);
    let ring5_rewards = [("a", 0.2), ("c", 1.0), ("d", 0.6), ("e", 0.3)];
    vec![
        ("two-node", two_node(0.9, 1)),
        ("two-node-team", two_node(0.9, 2)),
        (
            "triangle",
            instance(
                1,
                &[("a", 1.0), ("c", 2.0)],
                &two_way(&[("b", "a", 0.9), ("a", "c", 0.8), ("c", "b", 0.7)]),
            ),
        ),
        (
            "star",
            instance(
                2,
                &[("a", 1.0), ("c", 2.0), ("d", 0.5)],
                &two_way(&[("b", "a", 0.95), ("b", "c", 0.8), ("b", "d", 0.99)]),
            ),
        ),
        (
            "one-way-diamond",
            instance(
                2,
                &[("a", 0.5), ("c", 1.0), ("d", 0.3)],
                r#"{"from":"b","to":"a","survival":0.9},{"from":"a","to":"c","survival":0.85},
                   {"from":"c","to":"b","survival":0.9},{"from":"b","to":"d","survival":0.7},
                   {"from":"d","to":"c","survival":0.95},{"from":"c","to":"a","survival":0.9},
                   {"from":"a","to":"b","survival":0.8}"#,
            ),
        ),
        ("ring5", instance(1, &ring5_rewards, &ring5)),
        ("ring5-team", instance(2, &ring5_rewards, &ring5)),
    ]
}
