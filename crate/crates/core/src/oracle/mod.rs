//! Independent checks for the analytic evaluator and the colony search:
//! stochastic mission simulation and exhaustive enumeration on small
//! instances.

mod enumerate;
mod mission;

pub use enumerate::{
    brute_force_pareto, enumerate_closed_trails, enumerate_closed_trails_capped, multiset_count,
    OracleError, MAX_PLAN_EVALUATIONS, MAX_TRAILS,
};
pub use mission::{mc_estimate_objectives, simulate_mission, McEstimate, MissionOutcome};
