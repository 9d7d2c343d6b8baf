//! Splittable-decomposition certificates.
//!
//! A `SplitDecomposition` carries the full bookkeeping of a splittable cycle
//! decomposition: the cycles with their representing sets, the grouping of
//! cycles into splitting sets (whose representing sets partition the ambient
//! vertices), optionally the finer splitting subsets (vertex-disjoint
//! spanning groups), and whether every pair claims distance regularity.
//! Construction code emits this bookkeeping explicitly; the checks here never
//! infer structure.

use std::fmt;

use crate::cube::{CubeSpec, Label};
use crate::cycles::RepresentedCycle;
use crate::error::{Error, Result};

/// The graph a decomposition lives in.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    Cube { n: u32 },
    /// `rows x cols` torus with labels `row * cols + col`.
    Torus { rows: u64, cols: u64 },
}

impl Ambient {
    pub fn cube(n: u32) -> Ambient {
        Ambient::Cube { n }
    }

    pub fn vertex_count(&self) -> u64 {
        match self {
            Ambient::Cube { n } => 1u64 << n,
            Ambient::Torus { rows, cols } => rows * cols,
        }
    }

    pub fn edge_count(&self) -> u64 {
        match self {
            Ambient::Cube { n } => (*n as u64) << (n - 1),
            Ambient::Torus { rows, cols } => 2 * rows * cols,
        }
    }

    pub fn adjacent(&self, u: Label, v: Label) -> bool {
        match self {
            Ambient::Cube { .. } => (u ^ v).is_power_of_two(),
            Ambient::Torus { rows, cols } => {
                let (r1, c1) = (u / cols, u % cols);
                let (r2, c2) = (v / cols, v % cols);
                let ring = |a: u64, b: u64, len: u64| {
                    let d = if a > b { a - b } else { b - a };
                    d == 1 || d == len - 1
                };
                (r1 == r2 && ring(c1, c2, *cols)) || (c1 == c2 && ring(r1, r2, *rows))
            }
        }
    }
}

/// A certificate for an (a, b)-splittable decomposition. `splitting_sets`
/// partitions the cycle indices into groups of `a`; `splitting_subsets`, when
/// present, partitions each group into vertex-disjoint spanning groups of `b`.
#[derive(Clone, Debug)]
pub struct SplitDecomposition {
    pub ambient: Ambient,
    pub cycles: Vec<RepresentedCycle>,
    pub splitting_sets: Vec<Vec<usize>>,
    pub splitting_subsets: Option<Vec<Vec<Vec<usize>>>>,
    pub dr: bool,
}

impl SplitDecomposition {
    /// Cycles per splitting set.
    pub fn a(&self) -> usize {
        self.splitting_sets.first().map_or(0, |s| s.len())
    }

    /// Cycles per splitting subset, when subsets are claimed.
    pub fn b(&self) -> Option<usize> {
        self.splitting_subsets
            .as_ref()
            .and_then(|ss| ss.first())
            .and_then(|s| s.first())
            .map(|g| g.len())
    }

    pub fn cycle_length(&self) -> u64 {
        self.cycles.first().map_or(0, |c| c.cycle().len() as u64)
    }
}

/// One failed certificate invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    CycleCount(String),
    UnequalLengths { index: usize },
    EdgeTotal { got: u64, want: u64 },
    BadIndexPartition(String),
    RepTooSmall { cycle: usize },
    RepOverlap { set: usize },
    RepIncomplete { set: usize, covered: u64, want: u64 },
    RepUnequal { set: usize },
    SubsetNotDisjoint { set: usize, subset: usize },
    SubsetNotSpanning { set: usize, subset: usize },
    NotDistanceRegular { cycle: usize },
    InvalidCycle { cycle: usize, reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CycleCount(s) => write!(f, "cycle count: {s}"),
            Violation::UnequalLengths { index } => {
                write!(f, "cycle {index} has a different length")
            }
            Violation::EdgeTotal { got, want } => {
                write!(f, "total edges {got}, ambient has {want}")
            }
            Violation::BadIndexPartition(s) => write!(f, "index bookkeeping: {s}"),
            Violation::RepTooSmall { cycle } => {
                write!(f, "representing set of cycle {cycle} has fewer than 2 vertices")
            }
            Violation::RepOverlap { set } => {
                write!(f, "representing sets overlap within splitting set {set}")
            }
            Violation::RepIncomplete { set, covered, want } => write!(
                f,
                "splitting set {set} covers {covered} of {want} ambient vertices"
            ),
            Violation::RepUnequal { set } => {
                write!(f, "representing sets in splitting set {set} differ in size")
            }
            Violation::SubsetNotDisjoint { set, subset } => {
                write!(f, "subset {subset} of splitting set {set} is not vertex-disjoint")
            }
            Violation::SubsetNotSpanning { set, subset } => {
                write!(f, "subset {subset} of splitting set {set} does not span")
            }
            Violation::NotDistanceRegular { cycle } => {
                write!(f, "cycle {cycle} is not distance regular with its representing set")
            }
            Violation::InvalidCycle { cycle, reason } => {
                write!(f, "cycle {cycle}: {reason}")
            }
        }
    }
}

struct VertexBits {
    words: Vec<u64>,
}

impl VertexBits {
    fn new(count: u64) -> VertexBits {
        VertexBits {
            words: vec![0; (count as usize + 63) / 64],
        }
    }

    /// Sets the bit; returns false when it was already set.
    fn insert(&mut self, v: u64) -> bool {
        let w = (v / 64) as usize;
        let m = 1u64 << (v % 64);
        let fresh = self.words[w] & m == 0;
        self.words[w] |= m;
        fresh
    }

    fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }
}

/// Validate every structural invariant of the certificate, returning all
/// violations found (empty = ok).
pub fn check_structure(d: &SplitDecomposition) -> Vec<Violation> {
    let mut out = Vec::new();
    let vcount = d.ambient.vertex_count();

    if d.cycles.is_empty() {
        out.push(Violation::CycleCount("no cycles".into()));
        return out;
    }

    // cycles are closed walks of the ambient graph with distinct vertices
    for (i, rc) in d.cycles.iter().enumerate() {
        let vs = rc.cycle().vertices();
        let mut bits = VertexBits::new(vcount);
        for (j, &v) in vs.iter().enumerate() {
            if v >= vcount {
                out.push(Violation::InvalidCycle {
                    cycle: i,
                    reason: format!("vertex {v:#x} outside the ambient graph"),
                });
                break;
            }
            if !bits.insert(v) {
                out.push(Violation::InvalidCycle {
                    cycle: i,
                    reason: format!("vertex {v:#x} repeats"),
                });
                break;
            }
            let w = vs[(j + 1) % vs.len()];
            if !d.ambient.adjacent(v, w) {
                out.push(Violation::InvalidCycle {
                    cycle: i,
                    reason: format!("consecutive vertices {v:#x}, {w:#x} not adjacent"),
                });
                break;
            }
        }
    }

    // equal lengths and exact edge total
    let len0 = d.cycles[0].cycle().len();
    for (i, rc) in d.cycles.iter().enumerate() {
        if rc.cycle().len() != len0 {
            out.push(Violation::UnequalLengths { index: i });
        }
    }
    let total: u64 = d.cycles.iter().map(|c| c.cycle().len() as u64).sum();
    if total != d.ambient.edge_count() {
        out.push(Violation::EdgeTotal {
            got: total,
            want: d.ambient.edge_count(),
        });
    }

    // splitting sets partition the cycle indices into equal groups
    let a = d.a();
    let mut seen = vec![false; d.cycles.len()];
    let mut partition_ok = true;
    for set in &d.splitting_sets {
        if set.len() != a {
            out.push(Violation::BadIndexPartition(
                "splitting sets have different sizes".into(),
            ));
            partition_ok = false;
        }
        for &i in set {
            if i >= d.cycles.len() || seen[i] {
                out.push(Violation::BadIndexPartition(format!(
                    "cycle index {i} missing or repeated"
                )));
                partition_ok = false;
            } else {
                seen[i] = true;
            }
        }
    }
    if partition_ok && seen.iter().any(|s| !s) {
        out.push(Violation::BadIndexPartition(
            "some cycles belong to no splitting set".into(),
        ));
    }

    // within each splitting set: representing sets pairwise disjoint,
    // equal-sized (>= 2), union = ambient vertex set
    let mut bits = VertexBits::new(vcount);
    for (si, set) in d.splitting_sets.iter().enumerate() {
        bits.clear();
        let mut sizes = Vec::with_capacity(set.len());
        let mut overlap = false;
        for &i in set {
            if i >= d.cycles.len() {
                continue;
            }
            let rc = &d.cycles[i];
            if rc.rep_positions().len() < 2 {
                out.push(Violation::RepTooSmall { cycle: i });
            }
            sizes.push(rc.rep_positions().len());
            for v in rc.rep_labels() {
                if v < vcount && !bits.insert(v) {
                    overlap = true;
                }
            }
        }
        if overlap {
            out.push(Violation::RepOverlap { set: si });
        }
        if sizes.windows(2).any(|w| w[0] != w[1]) {
            out.push(Violation::RepUnequal { set: si });
        }
        let covered = bits.count();
        if covered != vcount {
            out.push(Violation::RepIncomplete {
                set: si,
                covered,
                want: vcount,
            });
        }
    }

    // splitting subsets: partition each set into groups of b that are
    // pairwise vertex-disjoint and span the ambient vertices
    if let Some(subsets) = &d.splitting_subsets {
        if subsets.len() != d.splitting_sets.len() {
            out.push(Violation::BadIndexPartition(
                "subset groups do not match splitting sets".into(),
            ));
        }
        let b = d.b().unwrap_or(0);
        for (si, groups) in subsets.iter().enumerate() {
            let set: Vec<usize> = d.splitting_sets.get(si).cloned().unwrap_or_default();
            let mut members: Vec<usize> = groups.iter().flatten().copied().collect();
            members.sort_unstable();
            let mut expect = set.clone();
            expect.sort_unstable();
            if members != expect {
                out.push(Violation::BadIndexPartition(format!(
                    "subsets of splitting set {si} do not partition it"
                )));
                continue;
            }
            for (gi, group) in groups.iter().enumerate() {
                if group.len() != b {
                    out.push(Violation::BadIndexPartition(format!(
                        "subset {gi} of splitting set {si} has size {} != {b}",
                        group.len()
                    )));
                }
                bits.clear();
                let mut disjoint = true;
                for &i in group {
                    for &v in d.cycles[i].cycle().vertices() {
                        if v < vcount && !bits.insert(v) {
                            disjoint = false;
                        }
                    }
                }
                if !disjoint {
                    out.push(Violation::SubsetNotDisjoint {
                        set: si,
                        subset: gi,
                    });
                }
                if bits.count() != vcount {
                    out.push(Violation::SubsetNotSpanning {
                        set: si,
                        subset: gi,
                    });
                }
            }
        }
    }

    if d.dr {
        out.extend(check_dr(d));
    }

    out
}

/// Check the distance-regularity claim of every (cycle, representing set) pair.
pub fn check_dr(d: &SplitDecomposition) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, rc) in d.cycles.iter().enumerate() {
        if !rc.is_distance_regular() {
            out.push(Violation::NotDistanceRegular { cycle: i });
        }
    }
    out
}

/// Render a violation list as a one-line-per-violation report.
pub fn violations_to_string(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

/// Convenience: the certificate's cube spec, when the ambient is a cube.
pub fn cube_ambient(d: &SplitDecomposition) -> Result<CubeSpec> {
    match d.ambient {
        Ambient::Cube { n } => CubeSpec::new(n),
        Ambient::Torus { .. } => Err(Error::InvalidParameter(
            "operation requires a cube ambient".into(),
        )),
    }
}
