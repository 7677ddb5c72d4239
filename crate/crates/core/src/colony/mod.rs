//! Bi-objective ant colony search for Pareto-optimal team plans.
//!
//! Each iteration every ant `i` builds one team plan with its own
//! reward/survival balance `lambda_i`. The ants read a frozen pheromone
//! snapshot and run independently. Afterwards, single-threaded: the
//! iteration's non-dominated plans are merged into the global archive, and
//! both sets together deposit pheromone after evaporation.

mod construct;
mod pheromone;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use construct::{
    construct_team_plan, construct_trail, heuristic_reward, heuristic_survival,
    transition_probabilities, Transition,
};
pub use pheromone::{update_pheromone, PheromoneField, PHEROMONE_FLOOR};

use crate::eval::evaluate_plan;
use crate::exec::Execution;
use crate::instance::ProblemInstance;
use crate::pareto::ParetoArchive;
use crate::rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColonyConfig {
    pub num_ants: usize,
    pub evaporation_rate: f64,
    pub iterations: usize,
    /// Added to both heuristics so no arc is ever unselectable.
    pub epsilon: f64,
    pub master_seed: u64,
    /// Attempts per trail before a stranded robot stays home.
    pub restart_cap: usize,
    /// Replace both heuristics with 1.
    pub ablate_heuristic: bool,
    /// Hold both pheromone species at 1.
    pub ablate_pheromone: bool,
    #[serde(default)]
    pub execution: Execution,
}

impl Default for ColonyConfig {
    fn default() -> Self {
        Self {
            num_ants: 100,
            evaporation_rate: 0.04,
            iterations: 10_000,
            epsilon: 1e-6,
            master_seed: 0,
            restart_cap: 50,
            ablate_heuristic: false,
            ablate_pheromone: false,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("num_ants must be at least 1")]
    NoAnts,
    #[error("evaporation rate must lie in (0, 1), got {0}")]
    EvaporationRate(f64),
    #[error("epsilon must be positive and finite, got {0}")]
    Epsilon(f64),
}

impl ColonyConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.num_ants == 0 {
            return Err(ConfigError::NoAnts);
        }
        let rho = self.evaporation_rate;
        if rho.is_nan() || rho <= 0.0 || rho >= 1.0 {
            return Err(ConfigError::EvaporationRate(self.evaporation_rate));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(ConfigError::Epsilon(self.epsilon));
        }
        Ok(())
    }
}

/// Objective balance of ant `i` (1-based) in a colony of `n`: 0 favours
/// reward only, 1 survival only. A lone ant is balanced at 0.5.
pub fn lambda_for_ant(i: usize, n: usize) -> f64 {
    assert!(1 <= i && i <= n, "ant index {i} outside 1..={n}");
    if n == 1 {
        0.5
    } else {
        (i - 1) as f64 / (n - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iteration: usize,
    pub area_indicator: f64,
    pub archive_size: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProgressTrace {
    pub records: Vec<TraceRecord>,
}

impl ProgressTrace {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iteration,area_indicator,archive_size\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{}",
                r.iteration, r.area_indicator, r.archive_size
            );
        }
        out
    }

    pub fn final_area(&self) -> f64 {
        self.records.last().map_or(0.0, |r| r.area_indicator)
    }
}

#[derive(Debug, Clone)]
pub struct ColonyRun {
    pub archive: ParetoArchive,
    pub trace: ProgressTrace,
    pub pheromone: PheromoneField,
}

/// Runs the colony for `cfg.iterations` rounds.
///
/// Ant `i` of iteration `t` draws from a stream derived from
/// `(master_seed, t, i)`, so the result is the same for any worker count and
/// either [`Execution`] mode.
pub fn run_optimization(
    inst: &ProblemInstance,
    cfg: &ColonyConfig,
) -> Result<ColonyRun, ConfigError> {
    cfg.validate()?;
    let mut field = PheromoneField::new(inst);
    let mut archive = ParetoArchive::new();
    let mut trace = ProgressTrace::default();

    for iteration in 0..cfg.iterations {
        let snapshot = &field;
        let results = cfg.execution.map_indexed(cfg.num_ants, |ant| {
            let lambda = lambda_for_ant(ant + 1, cfg.num_ants);
            let mut stream = rng::stream(cfg.master_seed, &[iteration as u64, ant as u64]);
            let plan = construct_team_plan(inst, snapshot, lambda, cfg, &mut stream);
            let obj = evaluate_plan(inst, &plan);
            (plan, obj)
        });

        let mut iteration_front = ParetoArchive::new();
        for (plan, obj) in results {
            iteration_front.insert(plan, obj);
        }
        for e in iteration_front.entries() {
            archive.insert(e.plan.clone(), e.objectives);
        }

        if !cfg.ablate_pheromone {
            let deposits: Vec<_> = iteration_front
                .entries()
                .iter()
                .chain(archive.entries())
                .map(|e| (&e.plan, e.objectives))
                .collect();
            update_pheromone(inst, &mut field, &deposits, cfg.evaporation_rate);
        }

        trace.records.push(TraceRecord {
            iteration: iteration + 1,
            area_indicator: archive.area(),
            archive_size: archive.len(),
        });
    }

    Ok(ColonyRun {
        archive,
        trace,
        pheromone: field,
    })
}
