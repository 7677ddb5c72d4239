use rand::Rng;

use crate::exec::Execution;
use crate::instance::ProblemInstance;
use crate::plan::TeamPlan;
use crate::rng;

/// One sampled realization of a mission.
#[derive(Debug, Clone, PartialEq)]
pub struct MissionOutcome {
    pub reward_collected: f64,
    pub survivors: usize,
    /// Per robot (in plan order): `Some(i)` if the robot was destroyed on
    /// hop `i` (1-based, the arc into trail node `i`), `None` if it came home.
    pub failure_index: Vec<Option<usize>>,
}

/// Walks every robot along its trail, drawing one Bernoulli survival per
/// arc. A node's reward counts once if any robot reaches it, whatever
/// happens to that robot afterwards.
pub fn simulate_mission<R: Rng + ?Sized>(
    inst: &ProblemInstance,
    plan: &TeamPlan,
    rng: &mut R,
) -> MissionOutcome {
    let mut visited = vec![false; inst.num_nodes()];
    let mut outcome = MissionOutcome {
        reward_collected: 0.0,
        survivors: 0,
        failure_index: Vec::with_capacity(plan.num_robots()),
    };
    simulate_into(inst, plan, rng, &mut visited, &mut outcome);
    outcome
}

fn simulate_into<R: Rng + ?Sized>(
    inst: &ProblemInstance,
    plan: &TeamPlan,
    rng: &mut R,
    visited: &mut [bool],
    out: &mut MissionOutcome,
) {
    visited.fill(false);
    out.failure_index.clear();
    out.survivors = 0;
    out.reward_collected = 0.0;
    for trail in plan.trails() {
        let nodes = trail.nodes();
        visited[nodes[0]] = true;
        let mut failed = None;
        for (i, &arc) in trail.arcs().iter().enumerate() {
            if rng.random::<f64>() >= inst.survival(arc) {
                failed = Some(i + 1);
                break;
            }
            visited[nodes[i + 1]] = true;
        }
        if failed.is_none() {
            out.survivors += 1;
        }
        out.failure_index.push(failed);
    }
    out.reward_collected = visited
        .iter()
        .enumerate()
        .filter(|(_, &v)| v)
        .map(|(i, _)| inst.reward(i))
        .sum();
}

/// Sample means and their standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub samples: u64,
    pub mean_reward: f64,
    pub mean_survivors: f64,
    pub se_reward: f64,
    pub se_survivors: f64,
}

/// Missions per independently seeded chunk.
const CHUNK: u64 = 1 << 14;

/// Running mean and sum of squared deviations (Welford), mergeable.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        Self {
            n,
            mean: self.mean + d * other.n as f64 / n as f64,
            m2: self.m2 + other.m2 + d * d * (self.n as f64 * other.n as f64 / n as f64),
        }
    }

    fn standard_error(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        (self.m2 / (self.n - 1) as f64 / self.n as f64).sqrt()
    }
}

/// Monte-Carlo estimate of both objectives from `samples` missions.
///
/// Missions are split into fixed-size chunks, each drawing from a stream
/// derived from `(seed, chunk)`; the estimate depends only on `seed` and
/// `samples`.
pub fn mc_estimate_objectives(
    inst: &ProblemInstance,
    plan: &TeamPlan,
    samples: u64,
    seed: u64,
    execution: Execution,
) -> McEstimate {
    assert!(samples >= 1, "at least one sample is required");
    let chunks = samples.div_ceil(CHUNK);
    let parts = execution.map_indexed(chunks as usize, |c| {
        let c = c as u64;
        let n = CHUNK.min(samples - c * CHUNK);
        let mut stream = rng::stream(seed, &[c]);
        let mut visited = vec![false; inst.num_nodes()];
        let mut outcome = MissionOutcome {
            reward_collected: 0.0,
            survivors: 0,
            failure_index: Vec::new(),
        };
        let (mut r, mut s) = (Moments::default(), Moments::default());
        for _ in 0..n {
            simulate_into(inst, plan, &mut stream, &mut visited, &mut outcome);
            r.push(outcome.reward_collected);
            s.push(outcome.survivors as f64);
        }
        (r, s)
    });
    let (r, s) = parts.into_iter().fold(
        (Moments::default(), Moments::default()),
        |(ra, sa), (rb, sb)| (ra.merge(rb), sa.merge(sb)),
    );
    McEstimate {
        samples,
        mean_reward: r.mean,
        mean_survivors: s.mean,
        se_reward: r.standard_error(),
        se_survivors: s.standard_error(),
    }
}
