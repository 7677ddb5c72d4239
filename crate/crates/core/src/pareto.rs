//! Dominance, the non-dominated archive and the area indicator.

use thiserror::Error;

use crate::eval::ObjectiveVector;
use crate::plan::TeamPlan;

/// `a` Pareto-dominates `b`: no worse in both objectives and strictly better
/// in at least one. Comparisons are exact.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    let (ar, asv) = (a.expected_reward, a.expected_survivors);
    let (br, bs) = (b.expected_reward, b.expected_survivors);
    ar >= br && asv >= bs && (ar > br || asv > bs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry {
    pub plan: TeamPlan,
    pub objectives: ObjectiveVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insertion {
    Inserted,
    Rejected,
}

/// Mutually non-dominated plans with distinct objective vectors, kept sorted
/// by expected reward descending (hence expected survivors ascending).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParetoArchive {
    entries: Vec<ArchiveEntry>,
}

impl ParetoArchive {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts unless an existing entry dominates or equals `objectives`;
    /// entries dominated by the newcomer are evicted. On ties the incumbent
    /// plan is kept.
    pub fn insert(&mut self, plan: TeamPlan, objectives: ObjectiveVector) -> Insertion {
        if self
            .entries
            .iter()
            .any(|e| e.objectives == objectives || dominates(&e.objectives, &objectives))
        {
            return Insertion::Rejected;
        }
        self.entries
            .retain(|e| !dominates(&objectives, &e.objectives));
        let at = self
            .entries
            .partition_point(|e| e.objectives.expected_reward > objectives.expected_reward);
        self.entries.insert(at, ArchiveEntry { plan, objectives });
        Insertion::Inserted
    }

    /// Would `insert` accept these objectives?
    pub fn accepts(&self, objectives: &ObjectiveVector) -> bool {
        !self
            .entries
            .iter()
            .any(|e| e.objectives == *objectives || dominates(&e.objectives, objectives))
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn objectives(&self) -> Vec<ObjectiveVector> {
        self.entries.iter().map(|e| e.objectives).collect()
    }

    /// Area indicator of the archive. Archive entries are non-negative by
    /// construction, so this cannot fail.
    pub fn area(&self) -> f64 {
        strip_area(self.entries.iter().map(|e| e.objectives))
    }
}

impl FromIterator<ArchiveEntry> for ParetoArchive {
    fn from_iter<I: IntoIterator<Item = ArchiveEntry>>(iter: I) -> Self {
        let mut a = Self::new();
        for e in iter {
            a.insert(e.plan, e.objectives);
        }
        a
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AreaError {
    #[error("objective vector ({0}, {1}) has a negative or non-finite component")]
    InvalidComponent(f64, f64),
}

/// Area of the union of the origin-anchored rectangles spanned by `objs`.
pub fn area_indicator(objs: &[ObjectiveVector]) -> Result<f64, AreaError> {
    if let Some(o) = objs.iter().find(|o| {
        !(o.expected_reward >= 0.0 && o.expected_survivors >= 0.0)
            || !o.expected_reward.is_finite()
            || !o.expected_survivors.is_finite()
    }) {
        return Err(AreaError::InvalidComponent(
            o.expected_reward,
            o.expected_survivors,
        ));
    }
    Ok(strip_area(objs.iter().copied()))
}

/// Drops dominated points, orders the rest by reward descending and sums
/// the vertical strips between consecutive reward values.
fn strip_area(objs: impl Iterator<Item = ObjectiveVector>) -> f64 {
    let mut pts: Vec<(f64, f64)> = objs
        .map(|o| (o.expected_reward, o.expected_survivors))
        .collect();
    // reward descending, survivors descending within ties
    pts.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    let mut front: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for p in pts {
        if front.last().is_none_or(|&(_, s)| p.1 > s) {
            front.push(p);
        }
    }
    let mut area = 0.0;
    for (i, &(r, s)) in front.iter().enumerate() {
        let next_r = front.get(i + 1).map_or(0.0, |q| q.0);
        area += (r - next_r) * s;
    }
    area
}
