//! Bi-objective team orienteering in hazardous environments.
//!
//! A team of robots leaves a base node on a directed graph, each following a
//! closed trail that uses every arc at most once. Every arc traversal may
//! destroy the robot; visiting a node earns its reward once per team. This
//! crate evaluates team plans exactly (expected reward, expected survivors,
//! survivor distribution), searches for the Pareto front of plans with a
//! bi-objective ant colony, and provides Monte-Carlo and brute-force oracles
//! for verification.

pub mod colony;
pub mod eval;
pub mod exec;
pub mod formats;
pub mod instance;
pub mod oracle;
pub mod pareto;
pub mod plan;
pub mod rng;

pub use colony::{run_optimization, ColonyConfig, ColonyRun, ProgressTrace};
pub use eval::{evaluate_plan, ObjectiveVector};
pub use exec::Execution;
pub use instance::{build_museum_instance, load_instance, ProblemInstance};
pub use pareto::{area_indicator, dominates, ParetoArchive};
pub use plan::{TeamPlan, Trail};
