//! Exact evaluation of the two objectives and of the survivor-count
//! distribution.
//!
//! A robot reaches the `n`-th node of its trail with the product of the first
//! `n` arc survival probabilities; it collects the reward of `v` iff it
//! reaches the first occurrence of `v`. A node's reward is collected by the
//! team iff at least one robot collects it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{NodeIdx, ProblemInstance};
use crate::plan::{TeamPlan, Trail};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveVector {
    pub expected_reward: f64,
    pub expected_survivors: f64,
}

impl ObjectiveVector {
    pub fn new(expected_reward: f64, expected_survivors: f64) -> Self {
        Self {
            expected_reward,
            expected_survivors,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("trail index {index} out of range for a trail of {len} arcs")]
pub struct IndexOutOfRange {
    pub index: usize,
    pub len: usize,
}

/// Probability that a robot following `trail` survives its first `n` hops.
pub fn trail_survival_prob(
    inst: &ProblemInstance,
    trail: &Trail,
    n: usize,
) -> Result<f64, IndexOutOfRange> {
    if n > trail.len() {
        return Err(IndexOutOfRange {
            index: n,
            len: trail.len(),
        });
    }
    Ok(prefix_survival(inst, trail, n))
}

fn prefix_survival(inst: &ProblemInstance, trail: &Trail, n: usize) -> f64 {
    trail.arcs()[..n]
        .iter()
        .fold(1.0, |p, &a| p * inst.survival(a))
}

/// Survival probability over the whole trail.
pub fn full_trail_survival(inst: &ProblemInstance, trail: &Trail) -> f64 {
    prefix_survival(inst, trail, trail.len())
}

pub fn first_visit_index(trail: &Trail, v: NodeIdx) -> Option<usize> {
    trail.nodes().iter().position(|&u| u == v)
}

pub fn prob_unvisited_by_trail(inst: &ProblemInstance, trail: &Trail, v: NodeIdx) -> f64 {
    match first_visit_index(trail, v) {
        None => 1.0,
        Some(n) => 1.0 - prefix_survival(inst, trail, n),
    }
}

pub fn prob_visited_by_team(inst: &ProblemInstance, plan: &TeamPlan, v: NodeIdx) -> f64 {
    1.0 - plan
        .trails()
        .iter()
        .fold(1.0, |p, t| p * prob_unvisited_by_trail(inst, t, v))
}

/// Multiplies `unvisited[v]` by the probability that `trail` does not visit
/// `v`, for every node. `seen` is scratch space of length `num_nodes`, all
/// false on entry and on exit.
pub(crate) fn accumulate_unvisited(
    inst: &ProblemInstance,
    trail: &Trail,
    unvisited: &mut [f64],
    seen: &mut [bool],
) {
    let nodes = trail.nodes();
    let mut reach = 1.0;
    for (i, &v) in nodes.iter().enumerate() {
        if i > 0 {
            reach *= inst.survival(trail.arcs()[i - 1]);
        }
        if !seen[v] {
            seen[v] = true;
            unvisited[v] *= 1.0 - reach;
        }
    }
    for &v in nodes {
        seen[v] = false;
    }
}

/// Per-node probability that no robot of the plan visits the node.
pub fn team_unvisited(inst: &ProblemInstance, plan: &TeamPlan) -> Vec<f64> {
    let mut unvisited = vec![1.0; inst.num_nodes()];
    let mut seen = vec![false; inst.num_nodes()];
    for t in plan.trails() {
        accumulate_unvisited(inst, t, &mut unvisited, &mut seen);
    }
    unvisited
}

pub fn expected_reward(inst: &ProblemInstance, plan: &TeamPlan) -> f64 {
    team_unvisited(inst, plan)
        .iter()
        .enumerate()
        .map(|(v, &u)| inst.reward(v) * (1.0 - u))
        .sum()
}

pub fn expected_survivors(inst: &ProblemInstance, plan: &TeamPlan) -> f64 {
    plan.trails()
        .iter()
        .map(|t| full_trail_survival(inst, t))
        .sum()
}

/// Both objectives. Plans are validated on construction, so this cannot fail.
pub fn evaluate_plan(inst: &ProblemInstance, plan: &TeamPlan) -> ObjectiveVector {
    ObjectiveVector::new(expected_reward(inst, plan), expected_survivors(inst, plan))
}

/// Poisson-binomial PMF of the number of successes among independent
/// Bernoulli trials with the given success probabilities.
pub fn poisson_binomial_pmf(probs: &[f64]) -> Vec<f64> {
    let mut pmf = vec![0.0; probs.len() + 1];
    pmf[0] = 1.0;
    for (k, &p) in probs.iter().enumerate() {
        for s in (1..=k + 1).rev() {
            pmf[s] = pmf[s] * (1.0 - p) + pmf[s - 1] * p;
        }
        pmf[0] *= 1.0 - p;
    }
    pmf
}

/// Distribution of the number of robots that complete their trails.
pub fn survivor_pmf(inst: &ProblemInstance, plan: &TeamPlan) -> Vec<f64> {
    let probs: Vec<f64> = plan
        .trails()
        .iter()
        .map(|t| full_trail_survival(inst, t))
        .collect();
    poisson_binomial_pmf(&probs)
}
