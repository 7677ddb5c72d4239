use std::fmt::Write as _;

use crate::eval::ObjectiveVector;
use crate::instance::ProblemInstance;
use crate::plan::TeamPlan;

/// Lower bound applied to every pheromone value after an update.
pub const PHEROMONE_FLOOR: f64 = 1e-12;

/// Reward and survival pheromone, one value of each per arc.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneField {
    pub tau_r: Vec<f64>,
    pub tau_s: Vec<f64>,
}

impl PheromoneField {
    /// One unit of both species on every arc.
    pub fn new(inst: &ProblemInstance) -> Self {
        Self {
            tau_r: vec![1.0; inst.num_arcs()],
            tau_s: vec![1.0; inst.num_arcs()],
        }
    }

    /// `from,to,tau_R,tau_S` rows in arc order.
    pub fn to_csv(&self, inst: &ProblemInstance) -> String {
        let mut out = String::from("from,to,tau_R,tau_S\n");
        for (i, arc) in inst.arcs().iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                inst.label(arc.from),
                inst.label(arc.to),
                self.tau_r[i],
                self.tau_s[i]
            );
        }
        out
    }
}

/// Evaporates every arc by `rho`, then deposits pheromone from the `P`
/// plans in `deposits`: each plan adds its expected reward (survivors) to
/// the reward (survival) species once per traversal of an arc, and the sum
/// is divided by `P`.
///
/// Every trail, including the stay-home trail, ends by taking the base
/// self-loop, so the self-loop is credited once per trail.
pub fn update_pheromone(
    inst: &ProblemInstance,
    field: &mut PheromoneField,
    deposits: &[(&TeamPlan, ObjectiveVector)],
    rho: f64,
) {
    let mut delta_r = vec![0.0; inst.num_arcs()];
    let mut delta_s = vec![0.0; inst.num_arcs()];
    let base_loop = inst.base_loop();
    for (plan, obj) in deposits {
        for trail in plan.trails() {
            for &arc in trail.arcs().iter().chain(std::iter::once(&base_loop)) {
                delta_r[arc] += obj.expected_reward;
                delta_s[arc] += obj.expected_survivors;
            }
        }
    }
    let scale = if deposits.is_empty() {
        0.0
    } else {
        1.0 / deposits.len() as f64
    };
    for (tau, delta) in [(&mut field.tau_r, delta_r), (&mut field.tau_s, delta_s)] {
        for (t, d) in tau.iter_mut().zip(delta) {
            *t = ((1.0 - rho) * *t + scale * d).max(PHEROMONE_FLOOR);
        }
    }
}
