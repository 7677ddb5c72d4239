//! Reference computations written independently of the library, used to
//! pin down library results.

use botohe::{ObjectiveVector, ProblemInstance};

/// Survivor distribution by summing over every subset of robots that make
/// it home.
pub fn subset_sum_pmf(probs: &[f64]) -> Vec<f64> {
    let k = probs.len();
    let mut pmf = vec![0.0; k + 1];
    for mask in 0u32..(1 << k) {
        let term: f64 = (0..k)
            .map(|i| {
                if mask & (1 << i) != 0 {
                    probs[i]
                } else {
                    1.0 - probs[i]
                }
            })
            .product();
        pmf[mask.count_ones() as usize] += term;
    }
    pmf
}

/// Area dominated by `points` (reference at the origin), counted on a grid
/// of `cells x cells` over the bounding box; a cell counts when its centre
/// is dominated.
pub fn raster_area(points: &[ObjectiveVector], cells: usize) -> f64 {
    let max_r = points.iter().map(|p| p.expected_reward).fold(0.0, f64::max);
    let max_s = points
        .iter()
        .map(|p| p.expected_survivors)
        .fold(0.0, f64::max);
    if max_r == 0.0 || max_s == 0.0 {
        return 0.0;
    }
    let (dx, dy) = (max_r / cells as f64, max_s / cells as f64);
    let mut covered = 0usize;
    for col in 0..cells {
        let x = (col as f64 + 0.5) * dx;
        let height = points
            .iter()
            .filter(|p| p.expected_reward >= x)
            .map(|p| p.expected_survivors)
            .fold(0.0, f64::max);
        covered += (0..cells)
            .filter(|&row| (row as f64 + 0.5) * dy <= height)
            .count();
    }
    covered as f64 * dx * dy
}

/// Closed trails from the base as node-label sequences, found by an
/// explicit-stack search over (node, used-arc set) states that reads the
/// raw arc list. The self-loop is never walked.
pub fn closed_trails_by_label(inst: &ProblemInstance) -> Vec<Vec<String>> {
    let doc = inst.to_doc();
    let arcs: Vec<(String, String)> = doc
        .arcs
        .iter()
        .filter(|a| a.from != a.to)
        .map(|a| (a.from.clone(), a.to.clone()))
        .collect();
    assert!(arcs.len() < 64);
    let mut found = Vec::new();
    let mut stack = vec![(vec![doc.base.clone()], 0u64)];
    while let Some((path, used)) = stack.pop() {
        let here = path.last().unwrap().clone();
        if here == doc.base {
            found.push(path.clone());
        }
        for (i, (from, to)) in arcs.iter().enumerate() {
            if *from == here && used & (1 << i) == 0 {
                let mut next = path.clone();
                next.push(to.clone());
                stack.push((next, used | (1 << i)));
            }
        }
    }
    found.sort();
    found
}
