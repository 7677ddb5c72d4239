//! Stochastic construction of trails and team plans by a single ant.

use rand::Rng;

use super::{ColonyConfig, PheromoneField};
use crate::eval::accumulate_unvisited;
use crate::instance::{ArcIdx, NodeIdx, ProblemInstance};
use crate::plan::{TeamPlan, Trail};

/// Survival heuristic of an arc: its survival probability plus the floor.
pub fn heuristic_survival(inst: &ProblemInstance, arc: ArcIdx, cfg: &ColonyConfig) -> f64 {
    if cfg.ablate_heuristic {
        1.0
    } else {
        inst.survival(arc) + cfg.epsilon
    }
}

/// Greedy expected marginal reward of robot `k` hopping along `arc`, given
/// the trails already committed for robots `1..k` and robot `k`'s partial
/// trail.
pub fn heuristic_reward(
    inst: &ProblemInstance,
    arc: ArcIdx,
    prior_trails: &[Trail],
    partial: &[NodeIdx],
    cfg: &ColonyConfig,
) -> f64 {
    if cfg.ablate_heuristic {
        return 1.0;
    }
    let to = inst.arc(arc).to;
    if partial.contains(&to) {
        return cfg.epsilon;
    }
    let unvisited: f64 = prior_trails
        .iter()
        .map(|t| crate::eval::prob_unvisited_by_trail(inst, t, to))
        .product();
    unvisited * inst.survival(arc) * inst.reward(to) + cfg.epsilon
}

/// Next-hop distribution of an ant standing at the end of a partial trail.
#[derive(Debug, Clone, PartialEq)]
pub enum Transition {
    /// Feasible arcs with their selection probabilities (summing to 1).
    Choices(Vec<(ArcIdx, f64)>),
    /// Every out-arc of the current node has already been traversed.
    DeadEnd,
}

/// Computes the transition distribution for an ant with balance `lambda`.
///
/// `partial` is the node sequence walked so far, starting at the base. The
/// base self-loop is feasible whenever the ant stands at the base; taking it
/// ends the trail.
pub fn transition_probabilities(
    inst: &ProblemInstance,
    field: &PheromoneField,
    lambda: f64,
    prior_trails: &[Trail],
    partial: &[NodeIdx],
    cfg: &ColonyConfig,
) -> Transition {
    let mut builder = Builder::new(inst, field, lambda, cfg);
    for t in prior_trails {
        builder.commit_prior(t);
    }
    builder.begin();
    for w in partial.windows(2) {
        let arc = inst
            .find_arc(w[0], w[1])
            .expect("partial trail follows instance arcs");
        builder.step(arc);
    }
    builder.weigh_feasible();
    if builder.weights.is_empty() {
        return Transition::DeadEnd;
    }
    let total: f64 = builder.weights.iter().map(|w| w.1).sum();
    Transition::Choices(
        builder
            .weights
            .iter()
            .map(|&(a, w)| (a, w / total))
            .collect(),
    )
}

/// Builds one closed trail for the next robot, conditioning the reward
/// heuristic on `prior_trails`.
pub fn construct_trail<R: Rng + ?Sized>(
    inst: &ProblemInstance,
    field: &PheromoneField,
    lambda: f64,
    prior_trails: &[Trail],
    cfg: &ColonyConfig,
    rng: &mut R,
) -> Trail {
    let mut builder = Builder::new(inst, field, lambda, cfg);
    for t in prior_trails {
        builder.commit_prior(t);
    }
    builder.build_trail(rng)
}

/// Builds a full team plan robot by robot.
pub fn construct_team_plan<R: Rng + ?Sized>(
    inst: &ProblemInstance,
    field: &PheromoneField,
    lambda: f64,
    cfg: &ColonyConfig,
    rng: &mut R,
) -> TeamPlan {
    let mut builder = Builder::new(inst, field, lambda, cfg);
    let mut trails = Vec::with_capacity(inst.num_robots());
    for _ in 0..inst.num_robots() {
        let t = builder.build_trail(rng);
        builder.commit_prior(&t);
        trails.push(t);
    }
    TeamPlan::from_trails_unchecked(trails)
}

/// Scratch state for one ant. `prior_unvisited[v]` is the probability that
/// no committed trail visits `v`.
struct Builder<'a> {
    inst: &'a ProblemInstance,
    field: &'a PheromoneField,
    lambda: f64,
    cfg: &'a ColonyConfig,
    prior_unvisited: Vec<f64>,
    seen: Vec<bool>,
    in_partial: Vec<bool>,
    used: Vec<bool>,
    nodes: Vec<NodeIdx>,
    arcs: Vec<ArcIdx>,
    weights: Vec<(ArcIdx, f64)>,
}

impl<'a> Builder<'a> {
    fn new(
        inst: &'a ProblemInstance,
        field: &'a PheromoneField,
        lambda: f64,
        cfg: &'a ColonyConfig,
    ) -> Self {
        let n = inst.num_nodes();
        Self {
            inst,
            field,
            lambda,
            cfg,
            prior_unvisited: vec![1.0; n],
            seen: vec![false; n],
            in_partial: vec![false; n],
            used: vec![false; inst.num_arcs()],
            nodes: Vec::new(),
            arcs: Vec::new(),
            weights: Vec::new(),
        }
    }

    fn commit_prior(&mut self, trail: &Trail) {
        accumulate_unvisited(self.inst, trail, &mut self.prior_unvisited, &mut self.seen);
    }

    fn begin(&mut self) {
        for &v in &self.nodes {
            self.in_partial[v] = false;
        }
        for &a in &self.arcs {
            self.used[a] = false;
        }
        self.nodes.clear();
        self.arcs.clear();
        let base = self.inst.base();
        self.nodes.push(base);
        self.in_partial[base] = true;
    }

    fn step(&mut self, arc: ArcIdx) {
        let to = self.inst.arc(arc).to;
        self.used[arc] = true;
        self.arcs.push(arc);
        self.nodes.push(to);
        self.in_partial[to] = true;
    }

    fn weight(&self, arc: ArcIdx) -> f64 {
        let inst = self.inst;
        let (eta_r, eta_s) = if self.cfg.ablate_heuristic {
            (1.0, 1.0)
        } else {
            let to = inst.arc(arc).to;
            let marginal = if self.in_partial[to] {
                0.0
            } else {
                self.prior_unvisited[to] * inst.survival(arc) * inst.reward(to)
            };
            (
                marginal + self.cfg.epsilon,
                inst.survival(arc) + self.cfg.epsilon,
            )
        };
        let (tau_r, tau_s) = if self.cfg.ablate_pheromone {
            (1.0, 1.0)
        } else {
            (self.field.tau_r[arc], self.field.tau_s[arc])
        };
        balance(tau_r * eta_r, tau_s * eta_s, self.lambda)
    }

    fn weigh_feasible(&mut self) {
        self.weights.clear();
        let here = *self.nodes.last().expect("partial trail starts at base");
        for &arc in self.inst.out_arcs(here) {
            if !self.used[arc] {
                let w = self.weight(arc);
                self.weights.push((arc, w));
            }
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ArcIdx {
        let total: f64 = self.weights.iter().map(|w| w.1).sum();
        let mut u = rng.random::<f64>() * total;
        for &(arc, w) in &self.weights {
            if u < w {
                return arc;
            }
            u -= w;
        }
        self.weights
            .last()
            .expect("sampling from a non-empty set")
            .0
    }

    fn build_trail<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Trail {
        let base_loop = self.inst.base_loop();
        for _ in 0..self.cfg.restart_cap {
            self.begin();
            loop {
                self.weigh_feasible();
                if self.weights.is_empty() {
                    break;
                }
                let arc = self.sample(rng);
                if arc == base_loop {
                    let trail = Trail::from_parts(self.nodes.clone(), self.arcs.clone());
                    self.begin();
                    return trail;
                }
                self.step(arc);
            }
        }
        self.begin();
        Trail::stay_home(self.inst)
    }
}

/// `x^(1-lambda) * y^lambda`, exact at the endpoints.
fn balance(x: f64, y: f64, lambda: f64) -> f64 {
    if lambda == 0.0 {
        x
    } else if lambda == 1.0 {
        y
    } else {
        x.powf(1.0 - lambda) * y.powf(lambda)
    }
}
