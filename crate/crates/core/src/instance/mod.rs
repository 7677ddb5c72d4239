//! Problem instances: a directed graph with node rewards, per-arc survival
//! probabilities, a base node and a robot team size.

mod museum;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use museum::build_museum_instance;

/// Dense index of a node inside a [`ProblemInstance`].
pub type NodeIdx = usize;
/// Dense index of an arc inside a [`ProblemInstance`].
pub type ArcIdx = usize;

/// On-disk instance document. Field names are the file contract.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub base: String,
    pub num_robots: usize,
    pub nodes: Vec<NodeDoc>,
    pub arcs: Vec<ArcDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: String,
    pub reward: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcDoc {
    pub from: String,
    pub to: String,
    pub survival: f64,
}

/// A single broken instance invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NoNodes,
    DuplicateNode(String),
    UnknownBase(String),
    UnknownNode {
        arc: usize,
        label: String,
    },
    NegativeReward {
        node: String,
        reward: f64,
    },
    SurvivalOutOfRange {
        from: String,
        to: String,
        survival: f64,
    },
    DuplicateArc {
        from: String,
        to: String,
    },
    ForeignSelfLoop(String),
    BaseSelfLoopSurvival(f64),
    ZeroRobots,
    NotStronglyConnected {
        unreachable: Vec<String>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoNodes => write!(f, "instance has no nodes"),
            Violation::DuplicateNode(id) => write!(f, "duplicate node \"{id}\""),
            Violation::UnknownBase(id) => write!(f, "unknown node \"{id}\" named as base"),
            Violation::UnknownNode { arc, label } => {
                write!(f, "unknown node \"{label}\" referenced by arc #{arc}")
            }
            Violation::NegativeReward { node, reward } => {
                write!(f, "negative reward {reward} on node \"{node}\"")
            }
            Violation::SurvivalOutOfRange { from, to, survival } => write!(
                f,
                "survival out of (0,1]: arc {from}->{to} has survival {survival}"
            ),
            Violation::DuplicateArc { from, to } => write!(f, "duplicate arc {from}->{to}"),
            Violation::ForeignSelfLoop(id) => {
                write!(f, "self-loop on non-base node \"{id}\"")
            }
            Violation::BaseSelfLoopSurvival(s) => {
                write!(f, "base self-loop survival must be 1, found {s}")
            }
            Violation::ZeroRobots => write!(f, "num_robots must be at least 1"),
            Violation::NotStronglyConnected { unreachable } => write!(
                f,
                "not strongly connected (nodes cut off from base: {})",
                unreachable.join(", ")
            ),
        }
    }
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed instance document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid instance: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub label: String,
    pub reward: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub from: NodeIdx,
    pub to: NodeIdx,
    pub survival: f64,
}

/// A validated, immutable instance.
///
/// Node indices follow document order. The base self-loop always exists and
/// has survival 1; it serves only as the trail-termination token.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    nodes: Vec<Node>,
    arcs: Vec<Arc>,
    base: NodeIdx,
    num_robots: usize,
    base_loop: ArcIdx,
    out_arcs: Vec<Vec<ArcIdx>>,
    arc_lookup: HashMap<(NodeIdx, NodeIdx), ArcIdx>,
    label_lookup: HashMap<String, NodeIdx>,
}

/// Parses and validates an instance document.
pub fn load_instance(bytes: &[u8]) -> Result<ProblemInstance, InstanceError> {
    let doc: InstanceDoc = serde_json::from_slice(bytes)?;
    ProblemInstance::from_doc(doc)
}

/// Reports every invariant the document violates. An empty list means the
/// document describes a valid instance (after base self-loop insertion).
pub fn validate_instance(doc: &InstanceDoc) -> Vec<Violation> {
    let mut out = Vec::new();
    if doc.nodes.is_empty() {
        out.push(Violation::NoNodes);
    }
    if doc.num_robots == 0 {
        out.push(Violation::ZeroRobots);
    }

    let mut index: HashMap<&str, NodeIdx> = HashMap::new();
    for (i, node) in doc.nodes.iter().enumerate() {
        if index.insert(node.id.as_str(), i).is_some() {
            out.push(Violation::DuplicateNode(node.id.clone()));
        }
        if node.reward < 0.0 || !node.reward.is_finite() {
            out.push(Violation::NegativeReward {
                node: node.id.clone(),
                reward: node.reward,
            });
        }
    }
    let base = index.get(doc.base.as_str()).copied();
    if base.is_none() && !doc.nodes.is_empty() {
        out.push(Violation::UnknownBase(doc.base.clone()));
    }

    let mut seen = HashMap::new();
    let mut edges = Vec::new();
    for (i, arc) in doc.arcs.iter().enumerate() {
        let from = index.get(arc.from.as_str()).copied();
        let to = index.get(arc.to.as_str()).copied();
        for (end, label) in [(from, &arc.from), (to, &arc.to)] {
            if end.is_none() {
                out.push(Violation::UnknownNode {
                    arc: i,
                    label: label.clone(),
                });
            }
        }
        if !(arc.survival > 0.0 && arc.survival <= 1.0) {
            out.push(Violation::SurvivalOutOfRange {
                from: arc.from.clone(),
                to: arc.to.clone(),
                survival: arc.survival,
            });
        }
        let (Some(from), Some(to)) = (from, to) else {
            continue;
        };
        if seen.insert((from, to), i).is_some() {
            out.push(Violation::DuplicateArc {
                from: arc.from.clone(),
                to: arc.to.clone(),
            });
        }
        if from == to {
            if Some(from) != base {
                out.push(Violation::ForeignSelfLoop(arc.from.clone()));
            } else if arc.survival != 1.0 {
                out.push(Violation::BaseSelfLoopSurvival(arc.survival));
            }
        } else {
            edges.push((from, to));
        }
    }

    if let Some(base) = base {
        let cut_off = not_strongly_connected_to(doc.nodes.len(), &edges, base);
        if !cut_off.is_empty() {
            out.push(Violation::NotStronglyConnected {
                unreachable: cut_off
                    .into_iter()
                    .map(|v| doc.nodes[v].id.clone())
                    .collect(),
            });
        }
    }
    out
}

/// Nodes that are not in the same strongly connected component as `root`.
/// The graph is strongly connected iff this is empty: a node belongs to the
/// root's component iff it is reachable from the root both forwards and
/// backwards.
fn not_strongly_connected_to(
    n: usize,
    edges: &[(NodeIdx, NodeIdx)],
    root: NodeIdx,
) -> Vec<NodeIdx> {
    let mut fwd = vec![Vec::new(); n];
    let mut rev = vec![Vec::new(); n];
    for &(a, b) in edges {
        fwd[a].push(b);
        rev[b].push(a);
    }
    let reach = |adj: &[Vec<NodeIdx>]| {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    };
    let (f, r) = (reach(&fwd), reach(&rev));
    (0..n).filter(|&v| !(f[v] && r[v])).collect()
}

impl ProblemInstance {
    /// Validates the document, inserting the base self-loop when absent.
    pub fn from_doc(mut doc: InstanceDoc) -> Result<Self, InstanceError> {
        let violations = validate_instance(&doc);
        if !violations.is_empty() {
            return Err(InstanceError::Invalid(violations));
        }
        if !doc
            .arcs
            .iter()
            .any(|a| a.from == doc.base && a.to == doc.base)
        {
            doc.arcs.push(ArcDoc {
                from: doc.base.clone(),
                to: doc.base.clone(),
                survival: 1.0,
            });
        }

        let label_lookup: HashMap<String, NodeIdx> = doc
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id.clone(), i))
            .collect();
        let nodes: Vec<Node> = doc
            .nodes
            .into_iter()
            .map(|n| Node {
                label: n.id,
                reward: n.reward,
            })
            .collect();
        let arcs: Vec<Arc> = doc
            .arcs
            .iter()
            .map(|a| Arc {
                from: label_lookup[&a.from],
                to: label_lookup[&a.to],
                survival: a.survival,
            })
            .collect();
        let base = label_lookup[&doc.base];

        let mut out_arcs = vec![Vec::new(); nodes.len()];
        let mut arc_lookup = HashMap::with_capacity(arcs.len());
        for (i, a) in arcs.iter().enumerate() {
            out_arcs[a.from].push(i);
            arc_lookup.insert((a.from, a.to), i);
        }
        let base_loop = arc_lookup[&(base, base)];

        Ok(Self {
            nodes,
            arcs,
            base,
            num_robots: doc.num_robots,
            base_loop,
            out_arcs,
            arc_lookup,
            label_lookup,
        })
    }

    /// Canonical document form, self-loop included.
    pub fn to_doc(&self) -> InstanceDoc {
        InstanceDoc {
            base: self.nodes[self.base].label.clone(),
            num_robots: self.num_robots,
            nodes: self
                .nodes
                .iter()
                .map(|n| NodeDoc {
                    id: n.label.clone(),
                    reward: n.reward,
                })
                .collect(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcDoc {
                    from: self.nodes[a.from].label.clone(),
                    to: self.nodes[a.to].label.clone(),
                    survival: a.survival,
                })
                .collect(),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("instance documents always serialize")
    }

    /// Hex SHA-256 of the compact canonical serialization.
    pub fn digest(&self) -> String {
        let bytes =
            serde_json::to_vec(&self.to_doc()).expect("instance documents always serialize");
        Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Re-runs validation on the canonical form.
    pub fn violations(&self) -> Vec<Violation> {
        validate_instance(&self.to_doc())
    }

    /// Returns a copy with a different team size.
    pub fn with_num_robots(&self, num_robots: usize) -> Result<Self, InstanceError> {
        let mut doc = self.to_doc();
        doc.num_robots = num_robots;
        Self::from_doc(doc)
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn num_robots(&self) -> usize {
        self.num_robots
    }

    pub fn base(&self) -> NodeIdx {
        self.base
    }

    /// The base self-loop `(base, base)`.
    pub fn base_loop(&self) -> ArcIdx {
        self.base_loop
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, a: ArcIdx) -> &Arc {
        &self.arcs[a]
    }

    pub fn reward(&self, v: NodeIdx) -> f64 {
        self.nodes[v].reward
    }

    pub fn total_reward(&self) -> f64 {
        self.nodes.iter().map(|n| n.reward).sum()
    }

    pub fn label(&self, v: NodeIdx) -> &str {
        &self.nodes[v].label
    }

    pub fn node_index(&self, label: &str) -> Option<NodeIdx> {
        self.label_lookup.get(label).copied()
    }

    pub fn out_arcs(&self, v: NodeIdx) -> &[ArcIdx] {
        &self.out_arcs[v]
    }

    pub fn find_arc(&self, from: NodeIdx, to: NodeIdx) -> Option<ArcIdx> {
        self.arc_lookup.get(&(from, to)).copied()
    }

    pub fn survival(&self, a: ArcIdx) -> f64 {
        self.arcs[a].survival
    }
}
