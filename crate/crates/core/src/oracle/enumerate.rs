use thiserror::Error;

use crate::eval::evaluate_plan;
use crate::exec::Execution;
use crate::instance::{ArcIdx, NodeIdx, ProblemInstance};
use crate::pareto::ParetoArchive;
use crate::plan::{TeamPlan, Trail};

/// Default cap on the number of enumerated trails.
pub const MAX_TRAILS: usize = 1_000_000;
/// Default cap on the number of team plans evaluated by brute force.
pub const MAX_PLAN_EVALUATIONS: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("more than {cap} closed trails; instance too large to enumerate")]
    TooManyTrails { cap: usize },
    #[error("{plans} team plans exceed the evaluation cap of {cap}")]
    TooManyPlans { plans: u128, cap: u128 },
}

/// Every closed, arc-unique trail from the base with at most `max_arcs`
/// arcs, each exactly once, sorted. Includes the stay-home trail.
pub fn enumerate_closed_trails(
    inst: &ProblemInstance,
    max_arcs: usize,
) -> Result<Vec<Trail>, OracleError> {
    enumerate_closed_trails_capped(inst, max_arcs, MAX_TRAILS)
}

pub fn enumerate_closed_trails_capped(
    inst: &ProblemInstance,
    max_arcs: usize,
    cap: usize,
) -> Result<Vec<Trail>, OracleError> {
    let mut search = Search {
        inst,
        max_arcs,
        cap,
        used: vec![false; inst.num_arcs()],
        nodes: vec![inst.base()],
        arcs: Vec::new(),
        found: Vec::new(),
    };
    search.walk()?;
    let mut found = search.found;
    found.sort_unstable();
    Ok(found)
}

struct Search<'a> {
    inst: &'a ProblemInstance,
    max_arcs: usize,
    cap: usize,
    used: Vec<bool>,
    nodes: Vec<NodeIdx>,
    arcs: Vec<ArcIdx>,
    found: Vec<Trail>,
}

impl Search<'_> {
    fn walk(&mut self) -> Result<(), OracleError> {
        let here = *self.nodes.last().unwrap();
        if here == self.inst.base() {
            if self.found.len() == self.cap {
                return Err(OracleError::TooManyTrails { cap: self.cap });
            }
            self.found
                .push(Trail::from_parts(self.nodes.clone(), self.arcs.clone()));
        }
        if self.arcs.len() == self.max_arcs {
            return Ok(());
        }
        for &arc in self.inst.out_arcs(here) {
            if arc == self.inst.base_loop() || self.used[arc] {
                continue;
            }
            self.used[arc] = true;
            self.arcs.push(arc);
            self.nodes.push(self.inst.arc(arc).to);
            let r = self.walk();
            self.nodes.pop();
            self.arcs.pop();
            self.used[arc] = false;
            r?;
        }
        Ok(())
    }
}

/// Number of size-`k` multisets drawn from `n` items, saturating.
pub fn multiset_count(n: usize, k: usize) -> u128 {
    if n == 0 {
        return u128::from(k == 0);
    }
    // C(n + k - 1, k), built incrementally so every step stays integral
    let mut c: u128 = 1;
    for i in 1..=k as u128 {
        c = c.saturating_mul(n as u128 + i - 1) / i;
    }
    c
}

/// Exact Pareto front over every team plan built from trails with at most
/// `max_arcs` arcs.
pub fn brute_force_pareto(
    inst: &ProblemInstance,
    max_arcs: usize,
    execution: Execution,
) -> Result<ParetoArchive, OracleError> {
    let trails = enumerate_closed_trails(inst, max_arcs)?;
    let k = inst.num_robots();
    let plans = multiset_count(trails.len(), k);
    if plans > MAX_PLAN_EVALUATIONS {
        return Err(OracleError::TooManyPlans {
            plans,
            cap: MAX_PLAN_EVALUATIONS,
        });
    }

    // Split on the first trail index; merging the per-split fronts in order
    // keeps the same first-seen plan for each objective vector.
    let parts = execution.map_indexed(trails.len(), |first| {
        let mut local = ParetoArchive::new();
        let mut idx = vec![first; k];
        loop {
            let plan =
                TeamPlan::from_trails_unchecked(idx.iter().map(|&i| trails[i].clone()).collect());
            let obj = evaluate_plan(inst, &plan);
            if local.accepts(&obj) {
                local.insert(plan, obj);
            }
            // next non-decreasing index tuple with idx[0] fixed
            let Some(pos) = (1..k).rev().find(|&p| idx[p] + 1 < trails.len()) else {
                break;
            };
            let v = idx[pos] + 1;
            idx[pos..].fill(v);
        }
        local
    });

    let mut front = ParetoArchive::new();
    for part in parts {
        for e in part.entries() {
            front.insert(e.plan.clone(), e.objectives);
        }
    }
    Ok(front)
}
