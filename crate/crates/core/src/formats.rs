//! JSON forms of plans and archives.
//!
//! A trail is an array of node labels starting and ending at the base, a
//! team plan an array of trails, and an archive an array of
//! `{objectives, plan}` objects in canonical (reward-descending) order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eval::ObjectiveVector;
use crate::instance::ProblemInstance;
use crate::pareto::{ArchiveEntry, ParetoArchive};
use crate::plan::{PlanError, TeamPlan};

pub type PlanDoc = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArchiveEntryDoc {
    pub objectives: ObjectiveVector,
    pub plan: PlanDoc,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid plan: {0}")]
    Plan(#[from] PlanError),
}

pub fn plan_to_json(inst: &ProblemInstance, plan: &TeamPlan) -> String {
    serde_json::to_string_pretty(&plan.to_labels(inst)).expect("plan documents always serialize")
}

pub fn plan_from_json(inst: &ProblemInstance, bytes: &[u8]) -> Result<TeamPlan, FormatError> {
    let doc: PlanDoc = serde_json::from_slice(bytes)?;
    Ok(TeamPlan::from_labels(inst, &doc)?)
}

pub fn archive_docs(inst: &ProblemInstance, archive: &ParetoArchive) -> Vec<ArchiveEntryDoc> {
    archive
        .entries()
        .iter()
        .map(|e| ArchiveEntryDoc {
            objectives: e.objectives,
            plan: e.plan.to_labels(inst),
        })
        .collect()
}

pub fn archive_to_json(inst: &ProblemInstance, archive: &ParetoArchive) -> String {
    serde_json::to_string_pretty(&archive_docs(inst, archive))
        .expect("archive documents always serialize")
}

/// Parses an archive; plans are validated and the stored objectives are
/// taken as given.
pub fn archive_from_json(
    inst: &ProblemInstance,
    bytes: &[u8],
) -> Result<ParetoArchive, FormatError> {
    let docs: Vec<ArchiveEntryDoc> = serde_json::from_slice(bytes)?;
    docs.into_iter()
        .map(|d| {
            Ok(ArchiveEntry {
                plan: TeamPlan::from_labels(inst, &d.plan)?,
                objectives: d.objectives,
            })
        })
        .collect()
}
