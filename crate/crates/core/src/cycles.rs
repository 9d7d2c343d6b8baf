//! Cycles as explicit closed vertex sequences, representing sets, and
//! cycle-to-path splitting.

use std::collections::HashMap;

use crate::cube::{CubeSpec, Label};
use crate::error::{Error, Result};

/// A closed vertex sequence. The closing edge back to the first vertex is
/// implicit. Stored in canonical form: minimum label first, direction chosen
/// so the second vertex is smaller than the last. Canonicalization keeps file
/// output byte-stable; nothing downstream depends on the original rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    vertices: Vec<Label>,
}

impl Cycle {
    pub fn new(mut walk: Vec<Label>) -> Cycle {
        assert!(walk.len() >= 2, "a cycle needs at least two vertices");
        let min_pos = walk
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .map(|(i, _)| i)
            .unwrap();
        walk.rotate_left(min_pos);
        if walk.len() > 2 && walk[walk.len() - 1] < walk[1] {
            walk[1..].reverse();
        }
        Cycle { vertices: walk }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    /// Edges in traversal order, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

/// A cycle together with its representing set, stored as sorted positions
/// along the canonical traversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentedCycle {
    cycle: Cycle,
    rep_positions: Vec<u32>,
}

impl RepresentedCycle {
    /// Pair a cycle with a representing set given as labels. Every label must
    /// lie on the cycle; duplicates are rejected.
    pub fn new(cycle: Cycle, reps: &[Label]) -> Result<RepresentedCycle> {
        let mut pos_of: HashMap<Label, u32> = HashMap::with_capacity(cycle.len());
        for (i, v) in cycle.vertices().iter().enumerate() {
            pos_of.insert(*v, i as u32);
        }
        let mut rep_positions = Vec::with_capacity(reps.len());
        for r in reps {
            match pos_of.get(r) {
                Some(p) => rep_positions.push(*p),
                None => {
                    return Err(Error::InvalidParameter(format!(
                        "representing vertex {r:#x} is not on the cycle"
                    )))
                }
            }
        }
        rep_positions.sort_unstable();
        rep_positions.dedup();
        if rep_positions.len() != reps.len() {
            return Err(Error::InvalidParameter(
                "representing set contains duplicates".into(),
            ));
        }
        Ok(RepresentedCycle {
            cycle,
            rep_positions,
        })
    }

    /// Representing set = all vertices (gaps of length 1).
    pub fn full(cycle: Cycle) -> RepresentedCycle {
        let rep_positions = (0..cycle.len() as u32).collect();
        RepresentedCycle {
            cycle,
            rep_positions,
        }
    }

    pub fn cycle(&self) -> &Cycle {
        &self.cycle
    }

    pub fn rep_positions(&self) -> &[u32] {
        &self.rep_positions
    }

    /// Representing vertices in traversal order.
    pub fn rep_labels(&self) -> Vec<Label> {
        self.rep_positions
            .iter()
            .map(|&p| self.cycle.vertices()[p as usize])
            .collect()
    }

    /// Lengths of the paths between cyclically consecutive representing
    /// vertices, in traversal order. Sums to the cycle length.
    pub fn representing_gaps(&self) -> Result<Vec<u64>> {
        if self.rep_positions.is_empty() {
            return Err(Error::InvalidParameter("empty representing set".into()));
        }
        let len = self.cycle.len() as u64;
        let ps = &self.rep_positions;
        let mut gaps = Vec::with_capacity(ps.len());
        for w in ps.windows(2) {
            gaps.push((w[1] - w[0]) as u64);
        }
        gaps.push(len - ps[ps.len() - 1] as u64 + ps[0] as u64);
        Ok(gaps)
    }

    /// True iff all gaps between consecutive representing vertices are equal.
    pub fn is_distance_regular(&self) -> bool {
        match self.representing_gaps() {
            Ok(gaps) => gaps.windows(2).all(|w| w[0] == w[1]),
            Err(_) => false,
        }
    }
}

/// Where and how a closed sequence fails to be a cycle of `Q_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleViolation {
    NotAdjacent { index: usize },
    RepeatedVertex { index: usize },
    OutOfRange { index: usize },
}

impl std::fmt::Display for CycleViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CycleViolation::NotAdjacent { index } => {
                write!(f, "vertices at positions {index} and next are not adjacent")
            }
            CycleViolation::RepeatedVertex { index } => {
                write!(f, "vertex at position {index} repeats an earlier vertex")
            }
            CycleViolation::OutOfRange { index } => {
                write!(f, "vertex at position {index} is outside the cube")
            }
        }
    }
}

/// Check that a closed sequence is a simple cycle of `Q_n`: cyclically
/// consecutive vertices differ in exactly one bit and no vertex repeats.
/// Reports the first offence.
pub fn validate_cycle_in_cube(spec: CubeSpec, cycle: &Cycle) -> std::result::Result<(), CycleViolation> {
    let vs = cycle.vertices();
    let mut seen = std::collections::HashSet::with_capacity(vs.len());
    for (i, &v) in vs.iter().enumerate() {
        if !spec.contains(v) {
            return Err(CycleViolation::OutOfRange { index: i });
        }
        if !seen.insert(v) {
            return Err(CycleViolation::RepeatedVertex { index: i });
        }
        let next = vs[(i + 1) % vs.len()];
        if !(v ^ next).is_power_of_two() {
            return Err(CycleViolation::NotAdjacent { index: i });
        }
    }
    Ok(())
}

/// Cut a cycle into `len/ell` edge-disjoint paths of `ell` edges each,
/// starting at position 0 of the canonical traversal. Each path is returned
/// as its `ell + 1` vertices.
pub fn split_cycle_into_paths(cycle: &Cycle, ell: u64) -> Result<Vec<Vec<Label>>> {
    let len = cycle.len() as u64;
    if ell == 0 || len % ell != 0 {
        return Err(Error::InvalidParameter(format!(
            "path length {ell} does not divide cycle length {len}"
        )));
    }
    if ell >= len {
        return Err(Error::InvalidParameter(format!(
            "path length {ell} must be shorter than the cycle ({len})"
        )));
    }
    let vs = cycle.vertices();
    let mut paths = Vec::with_capacity((len / ell) as usize);
    let mut start = 0usize;
    while start < vs.len() {
        let end = start + ell as usize;
        let mut p: Vec<Label> = vs[start..vs.len().min(end)].to_vec();
        p.push(vs[end % vs.len()]);
        paths.push(p);
        start = end;
    }
    Ok(paths)
}
