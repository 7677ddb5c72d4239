//! Closed trails and team plans.

use thiserror::Error;

use crate::instance::{ArcIdx, NodeIdx, ProblemInstance};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("trail is empty")]
    EmptyTrail,
    #[error("trail must start and end at the base node \"{0}\"")]
    NotClosedAtBase(String),
    #[error("unknown node \"{0}\" in trail")]
    UnknownNode(String),
    #[error("arc {0}->{1} does not exist in the instance")]
    MissingArc(String, String),
    #[error("arc {0}->{1} is traversed more than once")]
    RepeatedArc(String, String),
    #[error("the base self-loop is a termination token and cannot appear inside a trail")]
    SelfLoopHop,
    #[error("plan has {found} trails but the team has {expected} robots")]
    WrongTeamSize { expected: usize, found: usize },
}

/// A closed, arc-unique walk `base, ..., base`.
///
/// The terminal self-loop used by trail construction is never stored, so the
/// stay-home trail is the single node `[base]` with zero arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(clippy::len_without_is_empty)]
pub struct Trail {
    nodes: Vec<NodeIdx>,
    arcs: Vec<ArcIdx>,
}

impl Trail {
    pub fn stay_home(inst: &ProblemInstance) -> Self {
        Self {
            nodes: vec![inst.base()],
            arcs: Vec::new(),
        }
    }

    /// Validates `nodes` against the instance.
    pub fn new(inst: &ProblemInstance, nodes: Vec<NodeIdx>) -> Result<Self, PlanError> {
        let (&first, &last) = match (nodes.first(), nodes.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(PlanError::EmptyTrail),
        };
        if let Some(&bad) = nodes.iter().find(|&&v| v >= inst.num_nodes()) {
            return Err(PlanError::UnknownNode(format!("#{bad}")));
        }
        if first != inst.base() || last != inst.base() {
            return Err(PlanError::NotClosedAtBase(
                inst.label(inst.base()).to_string(),
            ));
        }
        let mut used = vec![false; inst.num_arcs()];
        let mut arcs = Vec::with_capacity(nodes.len() - 1);
        for w in nodes.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a == b {
                return Err(PlanError::SelfLoopHop);
            }
            let arc = inst.find_arc(a, b).ok_or_else(|| {
                PlanError::MissingArc(inst.label(a).to_string(), inst.label(b).to_string())
            })?;
            if std::mem::replace(&mut used[arc], true) {
                return Err(PlanError::RepeatedArc(
                    inst.label(a).to_string(),
                    inst.label(b).to_string(),
                ));
            }
            arcs.push(arc);
        }
        Ok(Self { nodes, arcs })
    }

    /// Builds a trail from node labels.
    pub fn from_labels<S: AsRef<str>>(
        inst: &ProblemInstance,
        labels: &[S],
    ) -> Result<Self, PlanError> {
        let nodes = labels
            .iter()
            .map(|l| {
                inst.node_index(l.as_ref())
                    .ok_or_else(|| PlanError::UnknownNode(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(inst, nodes)
    }

    /// Caller guarantees `nodes`/`arcs` already satisfy the trail invariants.
    pub(crate) fn from_parts(nodes: Vec<NodeIdx>, arcs: Vec<ArcIdx>) -> Self {
        debug_assert_eq!(nodes.len(), arcs.len() + 1);
        Self { nodes, arcs }
    }

    pub fn labels(&self, inst: &ProblemInstance) -> Vec<String> {
        self.nodes
            .iter()
            .map(|&v| inst.label(v).to_string())
            .collect()
    }

    pub fn nodes(&self) -> &[NodeIdx] {
        &self.nodes
    }

    /// Arc indices in traversal order, excluding the terminal self-loop.
    pub fn arcs(&self) -> &[ArcIdx] {
        &self.arcs
    }

    /// Number of arcs traversed.
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_stay_home(&self) -> bool {
        self.arcs.is_empty()
    }
}

/// A multiset of exactly `K` trails. Trails are kept sorted so that plans
/// with equal multisets compare, hash and evaluate identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TeamPlan {
    trails: Vec<Trail>,
}

impl TeamPlan {
    pub fn new(inst: &ProblemInstance, mut trails: Vec<Trail>) -> Result<Self, PlanError> {
        if trails.len() != inst.num_robots() {
            return Err(PlanError::WrongTeamSize {
                expected: inst.num_robots(),
                found: trails.len(),
            });
        }
        trails.sort_unstable();
        Ok(Self { trails })
    }

    pub(crate) fn from_trails_unchecked(mut trails: Vec<Trail>) -> Self {
        trails.sort_unstable();
        Self { trails }
    }

    pub fn stay_home(inst: &ProblemInstance) -> Self {
        Self {
            trails: vec![Trail::stay_home(inst); inst.num_robots()],
        }
    }

    /// Parses the serialized form: one array of node labels per robot.
    pub fn from_labels(inst: &ProblemInstance, doc: &[Vec<String>]) -> Result<Self, PlanError> {
        let trails = doc
            .iter()
            .map(|t| Trail::from_labels(inst, t))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(inst, trails)
    }

    pub fn to_labels(&self, inst: &ProblemInstance) -> Vec<Vec<String>> {
        self.trails.iter().map(|t| t.labels(inst)).collect()
    }

    pub fn trails(&self) -> &[Trail] {
        &self.trails
    }

    pub fn num_robots(&self) -> usize {
        self.trails.len()
    }

    /// How many times `arc` is traversed across all trails.
    pub fn arc_count(&self, arc: ArcIdx) -> usize {
        self.trails
            .iter()
            .map(|t| t.arcs().iter().filter(|&&a| a == arc).count())
            .sum()
    }
}
