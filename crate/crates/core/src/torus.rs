//! Tori, subdivided tori, and the wiggle decomposition.
//!
//! A torus here is the Cartesian product of two cycles, drawn with the first
//! factor running vertically (rows index positions along `C`) and the second
//! factor horizontally (columns index positions along `C'`). The wiggle
//! decomposition cuts such a torus into `k` equal-length cycles; each cycle
//! zigzags across the grid and climbs `k` rows in a staircase before
//! repeating. Anchored products generalize this to subdivided tori, whose
//! degree-two vertices subdivide the edges of a smaller underlying torus.
//!
//! Grid edges are kept in directed form `(row, col, axis)` — the edge leaving
//! `(row, col)` in the increasing direction of its axis. This keeps the
//! machinery correct even when the underlying torus has a factor of length
//! two, where the two parallel edges between a vertex pair subdivide into
//! different paths.

use std::collections::{HashMap, HashSet};

use crate::cube::Label;
use crate::cycles::RepresentedCycle;
use crate::error::{Error, Result};

/// Parameters of a candidate k-wiggle: `k` cycles on a `n_len x m_len` torus.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct WiggleParams {
    pub k: u64,
    pub n_len: u64,
    pub m_len: u64,
}

/// A torus admits the k-wiggle decomposition when `k` divides the vertical
/// length, and the horizontal length is at least `k` and of the same parity.
pub fn allows_k_wiggle(p: &WiggleParams) -> bool {
    p.k >= 2
        && p.n_len >= 2
        && p.n_len % p.k == 0
        && p.m_len >= p.k
        && p.m_len % 2 == p.k % 2
}

/// A directed grid edge: leaves `(row, col)` toward `(row+1, col)` when
/// vertical, toward `(row, col+1)` when horizontal (indices wrap).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridEdge {
    pub row: u64,
    pub col: u64,
    pub vertical: bool,
}

impl GridEdge {
    pub fn endpoints(&self, rows: u64, cols: u64) -> ((u64, u64), (u64, u64)) {
        let from = (self.row, self.col);
        let to = if self.vertical {
            ((self.row + 1) % rows, self.col)
        } else {
            (self.row, (self.col + 1) % cols)
        };
        (from, to)
    }
}

/// A closed walk on a torus grid, stored as a start vertex plus directed
/// steps (`true` = the edge is traversed in its canonical direction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordCycle {
    rows: u64,
    cols: u64,
    start: (u64, u64),
    steps: Vec<(GridEdge, bool)>,
}

impl CoordCycle {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }

    pub fn cols(&self) -> u64 {
        self.cols
    }

    pub fn steps(&self) -> &[(GridEdge, bool)] {
        &self.steps
    }

    /// Vertices in traversal order, starting at the stored start.
    pub fn coords(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::with_capacity(self.steps.len());
        let mut cur = self.start;
        for (e, fwd) in &self.steps {
            out.push(cur);
            cur = next_vertex(cur, e, *fwd, self.rows, self.cols);
        }
        debug_assert_eq!(cur, self.start, "walk must close");
        out
    }

    pub fn edge_set(&self) -> Vec<GridEdge> {
        let mut es: Vec<GridEdge> = self.steps.iter().map(|(e, _)| *e).collect();
        es.sort_unstable();
        es
    }

    /// Rotate so the smallest vertex comes first, then orient so the second
    /// vertex is smaller than the last.
    pub fn canonicalize(&mut self) {
        let coords = self.coords();
        let min_pos = coords
            .iter()
            .enumerate()
            .min_by_key(|(_, c)| **c)
            .map(|(i, _)| i)
            .unwrap();
        self.steps.rotate_left(min_pos);
        self.start = coords[min_pos];
        let n = coords.len();
        let nxt = coords[(min_pos + 1) % n];
        let prv = coords[(min_pos + n - 1) % n];
        if prv < nxt {
            self.steps.reverse();
            for (_, fwd) in self.steps.iter_mut() {
                *fwd = !*fwd;
            }
        }
    }

    /// Vertical translation by `dr` rows.
    pub fn translated(&self, dr: u64) -> CoordCycle {
        CoordCycle {
            rows: self.rows,
            cols: self.cols,
            start: ((self.start.0 + dr) % self.rows, self.start.1),
            steps: self
                .steps
                .iter()
                .map(|(e, fwd)| {
                    (
                        GridEdge {
                            row: (e.row + dr) % self.rows,
                            col: e.col,
                            vertical: e.vertical,
                        },
                        *fwd,
                    )
                })
                .collect(),
        }
    }

    /// Every other vertex of the traversal, starting with the first.
    pub fn every_other(&self) -> Vec<(u64, u64)> {
        let coords = self.coords();
        assert_eq!(coords.len() % 2, 0, "alternation needs an even cycle");
        coords.into_iter().step_by(2).collect()
    }

    /// Every other vertex of the subsequence selected by `keep`.
    pub fn every_other_within(&self, keep: impl Fn(&(u64, u64)) -> bool) -> Vec<(u64, u64)> {
        let sub: Vec<(u64, u64)> = self.coords().into_iter().filter(|c| keep(c)).collect();
        assert_eq!(sub.len() % 2, 0, "alternation needs an even subsequence");
        sub.into_iter().step_by(2).collect()
    }
}

fn next_vertex(cur: (u64, u64), e: &GridEdge, forward: bool, rows: u64, cols: u64) -> (u64, u64) {
    let (from, to) = e.endpoints(rows, cols);
    if forward {
        debug_assert_eq!(cur, from);
        to
    } else {
        debug_assert_eq!(cur, to);
        from
    }
}

/// The edge set of cycle `ell` (1-based) of the k-wiggle decomposition,
/// realized as the five edge classes: wiggle verticals, staircase verticals,
/// odd and even horizontal rungs, and staircase horizontals.
pub fn k_wiggle_cycle_edges(n_len: u64, m_len: u64, k: u64, ell: u64) -> Vec<GridEdge> {
    let region = m_len - k;
    let mut out = Vec::with_capacity((2 * n_len * m_len / k) as usize);
    let push_residue = |out: &mut Vec<GridEdge>, residue: u64, col: u64, vertical: bool| {
        let mut row = residue % k;
        while row < n_len {
            out.push(GridEdge { row, col, vertical });
            row += k;
        }
    };
    for j in 0..region {
        push_residue(&mut out, ell, j, true);
    }
    for p in 0..k {
        push_residue(&mut out, ell + p, region + p, true);
    }
    for j in (1..region).step_by(2) {
        push_residue(&mut out, ell, j, false);
    }
    for j in (0..region).step_by(2) {
        push_residue(&mut out, ell + 1, j, false);
    }
    for p in 0..k {
        push_residue(&mut out, ell + p + 1, region + p, false);
    }
    out
}

/// Link an edge set into a single closed walk. Fails if the edges do not
/// form one cycle.
fn assemble_cycle(rows: u64, cols: u64, edges: Vec<GridEdge>) -> Result<CoordCycle> {
    let mut adj: HashMap<(u64, u64), Vec<usize>> = HashMap::with_capacity(edges.len());
    for (idx, e) in edges.iter().enumerate() {
        let (a, b) = e.endpoints(rows, cols);
        adj.entry(a).or_default().push(idx);
        adj.entry(b).or_default().push(idx);
    }
    for ids in adj.values() {
        if ids.len() != 2 {
            return Err(Error::Structure(
                "edge classes are not 2-regular on their vertex set".into(),
            ));
        }
    }
    let start = *adj.keys().min().unwrap();
    let mut used = vec![false; edges.len()];
    let mut steps = Vec::with_capacity(edges.len());
    let mut cur = start;
    for _ in 0..edges.len() {
        let eid = adj[&cur]
            .iter()
            .copied()
            .filter(|&i| !used[i])
            .min()
            .ok_or_else(|| Error::Structure("edge classes split into several cycles".into()))?;
        used[eid] = true;
        let e = edges[eid];
        let (a, b) = e.endpoints(rows, cols);
        let forward = a == cur;
        steps.push((e, forward));
        cur = if forward { b } else { a };
    }
    if cur != start {
        return Err(Error::Structure("walk did not close".into()));
    }
    Ok(CoordCycle {
        rows,
        cols,
        start,
        steps,
    })
}

/// The k-wiggle decomposition of the `n_len x m_len` torus: `k` cycles of
/// length `2 * n_len * m_len / k`, each the vertical translate of the first.
pub fn k_wiggle_torus(n_len: u64, m_len: u64, k: u64) -> Result<Vec<CoordCycle>> {
    let p = WiggleParams { k, n_len, m_len };
    if !allows_k_wiggle(&p) {
        return Err(Error::InvalidParameter(format!(
            "torus {n_len} x {m_len} does not allow the {k}-wiggle decomposition"
        )));
    }
    let mut first = assemble_cycle(n_len, m_len, k_wiggle_cycle_edges(n_len, m_len, k, 1))?;
    first.canonicalize();
    Ok((0..k).map(|t| first.translated(t)).collect())
}

/// How representing sets are drawn from wiggle cycles.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RepMode {
    /// Every other vertex of each cycle; one splitting set of all `k` cycles.
    Alternate,
    /// Full vertex sets; two splitting sets of `k/2` cycles each (k even).
    Full,
}

/// Representing sets for wiggle cycles, plus the grouping of cycle indices
/// into splitting sets.
#[derive(Clone, Debug)]
pub struct TorusRepSets {
    pub sets: Vec<Vec<(u64, u64)>>,
    pub splitting: Vec<Vec<usize>>,
}

/// Representing sets making a torus k-wiggle decomposition k-DR-splittable
/// (alternate mode, gaps 2) or k/2-DR-splittable (full mode, gaps 1).
pub fn repsets_kwiggle(cycles: &[CoordCycle], mode: RepMode) -> Result<TorusRepSets> {
    let k = cycles.len();
    assert!(k >= 2);
    match mode {
        RepMode::Alternate => {
            let rows = cycles[0].rows();
            let s1 = cycles[0].every_other();
            let sets = (0..k)
                .map(|t| {
                    s1.iter()
                        .map(|&(r, c)| ((r + t as u64) % rows, c))
                        .collect()
                })
                .collect();
            Ok(TorusRepSets {
                sets,
                splitting: vec![(0..k).collect()],
            })
        }
        RepMode::Full => {
            if k % 2 != 0 {
                return Err(Error::InvalidParameter(
                    "full representing mode needs an even number of cycles".into(),
                ));
            }
            let sets = cycles.iter().map(|c| c.coords()).collect();
            Ok(TorusRepSets {
                sets,
                splitting: vec![(0..k).step_by(2).collect(), (1..k).step_by(2).collect()],
            })
        }
    }
}

/// Representing sets drawn from `V(C) x S'` for a distance-regular `S'` on
/// the horizontal factor: every other visited vertex of the selected columns,
/// with vertical translates for the remaining cycles. Gaps come out twice the
/// gaps of `S'`.
pub fn repsets_scaled(cycles: &[CoordCycle], sprime_cols: &[u64]) -> Result<TorusRepSets> {
    let k = cycles.len();
    assert!(k >= 2);
    let cols = cycles[0].cols();
    let mut sorted: Vec<u64> = sprime_cols.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != sprime_cols.len() || sorted.is_empty() {
        return Err(Error::InvalidParameter(
            "horizontal representing set must be a nonempty set".into(),
        ));
    }
    let mut gaps: Vec<u64> = sorted.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.push(cols - sorted[sorted.len() - 1] + sorted[0]);
    if gaps.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::InvalidParameter(
            "horizontal representing set is not distance regular".into(),
        ));
    }
    let keep: HashSet<u64> = sorted.iter().copied().collect();
    let rows = cycles[0].rows();
    let s1 = cycles[0].every_other_within(|&(_, c)| keep.contains(&c));
    let sets = (0..k)
        .map(|t| {
            s1.iter()
                .map(|&(r, c)| ((r + t as u64) % rows, c))
                .collect()
        })
        .collect();
    Ok(TorusRepSets {
        sets,
        splitting: vec![(0..k).collect()],
    })
}

/// The anchored product `(C, S) [+] (C', S')`: a subdivided torus with a full
/// copy of `C` in every column of `S'` and a full copy of `C'` in every row
/// of `S`. Product labels are `u * stride + v`.
#[derive(Clone, Debug)]
pub struct SubdividedTorus {
    vertical: RepresentedCycle,
    horizontal: RepresentedCycle,
    stride: u64,
}

pub fn anchored_product(
    vertical: RepresentedCycle,
    horizontal: RepresentedCycle,
    stride: u64,
) -> Result<SubdividedTorus> {
    if vertical.rep_positions().is_empty() || horizontal.rep_positions().is_empty() {
        return Err(Error::InvalidParameter(
            "anchored product requires nonempty representing sets".into(),
        ));
    }
    if horizontal.cycle().vertices().iter().any(|&v| v >= stride) {
        return Err(Error::InvalidParameter(
            "horizontal labels must be smaller than the label stride".into(),
        ));
    }
    Ok(SubdividedTorus {
        vertical,
        horizontal,
        stride,
    })
}

impl SubdividedTorus {
    pub fn vertical(&self) -> &RepresentedCycle {
        &self.vertical
    }

    pub fn horizontal(&self) -> &RepresentedCycle {
        &self.horizontal
    }

    pub fn stride(&self) -> u64 {
        self.stride
    }

    pub fn label(&self, u: Label, v: Label) -> Label {
        u * self.stride + v
    }

    pub fn split(&self, x: Label) -> (Label, Label) {
        (x / self.stride, x % self.stride)
    }

    /// Dimensions `(|S|, |S'|)` of the underlying torus obtained by
    /// contracting all degree-two vertices.
    pub fn underlying_dims(&self) -> (u64, u64) {
        (
            self.vertical.rep_positions().len() as u64,
            self.horizontal.rep_positions().len() as u64,
        )
    }

    /// Ambient label of underlying-torus vertex `(r, c)`.
    pub fn label_at(&self, r: u64, c: u64) -> Label {
        let u = self.vertical.cycle().vertices()[self.vertical.rep_positions()[r as usize] as usize];
        let v =
            self.horizontal.cycle().vertices()[self.horizontal.rep_positions()[c as usize] as usize];
        self.label(u, v)
    }

    pub fn edge_count(&self) -> u64 {
        let (s, sp) = self.underlying_dims();
        s * self.horizontal.cycle().len() as u64 + sp * self.vertical.cycle().len() as u64
    }

    pub fn vertex_count(&self) -> u64 {
        let (s, sp) = self.underlying_dims();
        let n = self.vertical.cycle().len() as u64;
        let m = self.horizontal.cycle().len() as u64;
        s * m + n * sp - s * sp
    }

    /// All vertex labels: pairs `(u, v)` with `u` in `S` or `v` in `S'`.
    pub fn vertex_labels(&self) -> Vec<Label> {
        let s_members: HashSet<Label> = self.rep_members_vertical();
        let sp_members: HashSet<Label> = self.rep_members_horizontal();
        let mut out = Vec::with_capacity(self.vertex_count() as usize);
        for &u in self.vertical.cycle().vertices() {
            for &v in self.horizontal.cycle().vertices() {
                if s_members.contains(&u) || sp_members.contains(&v) {
                    out.push(self.label(u, v));
                }
            }
        }
        out
    }

    fn rep_members_vertical(&self) -> HashSet<Label> {
        self.vertical.rep_labels().into_iter().collect()
    }

    fn rep_members_horizontal(&self) -> HashSet<Label> {
        self.horizontal.rep_labels().into_iter().collect()
    }

    /// Contraction map: the subdividing path that a directed underlying-torus
    /// edge stands for, as ambient labels excluding the source vertex and
    /// including the destination. On an unsubdivided torus every path has
    /// length one.
    pub fn subdividing_path(&self, e: &GridEdge, forward: bool) -> Vec<Label> {
        let mut out = Vec::new();
        self.lift_step(e, forward, &mut out);
        out
    }

    /// The subdividing path replacing a directed underlying edge, excluding
    /// its source vertex and including its destination.
    fn lift_step(&self, e: &GridEdge, forward: bool, out: &mut Vec<Label>) {
        let (rows, cols) = self.underlying_dims();
        if e.vertical {
            let vc = self.vertical.cycle().vertices();
            let vlen = vc.len() as u64;
            let vposs = self.vertical.rep_positions();
            let col_label = self.horizontal.cycle().vertices()
                [self.horizontal.rep_positions()[e.col as usize] as usize];
            let a = vposs[e.row as usize] as u64;
            let b_raw = vposs[((e.row + 1) % rows) as usize] as u64;
            let b = if b_raw <= a { b_raw + vlen } else { b_raw };
            if forward {
                for t in a + 1..=b {
                    out.push(self.label(vc[(t % vlen) as usize], col_label));
                }
            } else {
                for t in (a..b).rev() {
                    out.push(self.label(vc[(t % vlen) as usize], col_label));
                }
            }
        } else {
            let hc = self.horizontal.cycle().vertices();
            let hlen = hc.len() as u64;
            let hposs = self.horizontal.rep_positions();
            let row_label = self.vertical.cycle().vertices()
                [self.vertical.rep_positions()[e.row as usize] as usize];
            let a = hposs[e.col as usize] as u64;
            let b_raw = hposs[((e.col + 1) % cols) as usize] as u64;
            let b = if b_raw <= a { b_raw + hlen } else { b_raw };
            if forward {
                for t in a + 1..=b {
                    out.push(self.label(row_label, hc[(t % hlen) as usize]));
                }
            } else {
                for t in (a..b).rev() {
                    out.push(self.label(row_label, hc[(t % hlen) as usize]));
                }
            }
        }
    }

    /// Expand an underlying-torus walk into the ambient closed label walk.
    pub fn lift_walk(&self, walk: &CoordCycle) -> Vec<Label> {
        let mut out = Vec::new();
        for (e, fwd) in walk.steps() {
            self.lift_step(e, *fwd, &mut out);
        }
        out
    }
}

/// A k-wiggle decomposition of a subdivided torus: the underlying wiggle
/// cycles and their lifts through the subdivision.
#[derive(Clone, Debug)]
pub struct SubdividedWiggle {
    pub lifted: Vec<Vec<Label>>,
    pub underlying: Vec<CoordCycle>,
}

pub fn k_wiggle_subdivided(st: &SubdividedTorus, k: u64) -> Result<SubdividedWiggle> {
    let (rows, cols) = st.underlying_dims();
    let underlying = k_wiggle_torus(rows, cols, k)?;
    let lifted: Vec<Vec<Label>> = underlying.iter().map(|w| st.lift_walk(w)).collect();
    debug_assert_eq!(
        lifted.iter().map(|c| c.len() as u64).sum::<u64>(),
        st.edge_count()
    );
    Ok(SubdividedWiggle { lifted, underlying })
}

/// Representing sets for the lifted cycles, partitioning `V(C) x S'`:
/// each degree-two vertex of `V(C) x S'` goes to the unique cycle through it,
/// and the underlying-torus vertices alternate along the underlying cycles.
/// Requires `(C, S)` distance regular, which makes the sets equal-sized.
pub fn repsets_subdivided(st: &SubdividedTorus, wig: &SubdividedWiggle) -> Result<Vec<Vec<Label>>> {
    if !st.vertical().is_distance_regular() {
        return Err(Error::InvalidParameter(
            "vertical factor must be distance regular to balance representing sets".into(),
        ));
    }
    let k = wig.underlying.len();
    let (rows, _) = st.underlying_dims();
    let s1 = wig.underlying[0].every_other();
    let mut sets: Vec<Vec<Label>> = (0..k as u64)
        .map(|t| {
            s1.iter()
                .map(|&(r, c)| st.label_at((r + t) % rows, c))
                .collect()
        })
        .collect();
    let s_members = st.rep_members_vertical();
    let sp_members = st.rep_members_horizontal();
    for (idx, lifted) in wig.lifted.iter().enumerate() {
        for &x in lifted {
            let (u, v) = st.split(x);
            if sp_members.contains(&v) && !s_members.contains(&u) {
                sets[idx].push(x);
            }
        }
    }
    let size = sets[0].len();
    if sets.iter().any(|s| s.len() != size) {
        return Err(Error::Structure(
            "representing sets came out with unequal cardinalities".into(),
        ));
    }
    Ok(sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::Cycle;

    fn ring(n: u64) -> Cycle {
        Cycle::new((0..n).collect())
    }

    fn ring_rep(n: u64, reps: &[Label]) -> RepresentedCycle {
        RepresentedCycle::new(ring(n), reps).unwrap()
    }

    fn full_ring(n: u64) -> RepresentedCycle {
        RepresentedCycle::full(ring(n))
    }

    #[test]
    fn allows_examples() {
        assert!(allows_k_wiggle(&WiggleParams {
            k: 2,
            n_len: 12,
            m_len: 12
        }));
        assert!(allows_k_wiggle(&WiggleParams {
            k: 3,
            n_len: 12,
            m_len: 11
        }));
        assert!(!allows_k_wiggle(&WiggleParams {
            k: 3,
            n_len: 12,
            m_len: 12
        }));
        assert!(!allows_k_wiggle(&WiggleParams {
            k: 5,
            n_len: 12,
            m_len: 11
        }));
        assert!(!allows_k_wiggle(&WiggleParams {
            k: 4,
            n_len: 12,
            m_len: 2
        }));
    }

    fn check_torus_partition(n_len: u64, m_len: u64, k: u64, cycles: &[CoordCycle]) {
        // pairwise disjoint edges, union = all 2*n*m torus edges
        let mut all: Vec<GridEdge> = Vec::new();
        for c in cycles {
            all.extend(c.edge_set());
        }
        assert_eq!(all.len() as u64, 2 * n_len * m_len);
        let unique: HashSet<GridEdge> = all.iter().copied().collect();
        assert_eq!(unique.len(), all.len(), "cycle edge sets overlap");
        // every vertex lies on exactly two cycles
        let mut count: HashMap<(u64, u64), u32> = HashMap::new();
        for c in cycles {
            for v in c.coords() {
                *count.entry(v).or_default() += 1;
            }
        }
        assert_eq!(count.len() as u64, n_len * m_len);
        assert!(count.values().all(|&c| c == 2));
        // equal lengths
        assert!(cycles.iter().all(|c| c.len() as u64 == 2 * n_len * m_len / k));
        // translation invariance
        let first: HashSet<(u64, u64)> = cycles[0].coords().into_iter().collect();
        for (t, c) in cycles.iter().enumerate() {
            let shifted: HashSet<(u64, u64)> = first
                .iter()
                .map(|&(r, col)| ((r + t as u64) % n_len, col))
                .collect();
            let own: HashSet<(u64, u64)> = c.coords().into_iter().collect();
            assert_eq!(shifted, own);
        }
    }

    #[test]
    fn wiggle_figure_sizes() {
        let cs = k_wiggle_torus(12, 12, 2).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.len() == 144));
        check_torus_partition(12, 12, 2, &cs);

        let cs = k_wiggle_torus(12, 11, 3).unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.len() == 88));
        check_torus_partition(12, 11, 3, &cs);

        let cs = k_wiggle_torus(12, 12, 4).unwrap();
        assert_eq!(cs.len(), 4);
        check_torus_partition(12, 12, 4, &cs);
    }

    #[test]
    fn wiggle_small_hamiltonian_pair() {
        // 2-wiggle on C_4 x C_4: two Hamiltonian cycles of the torus
        let cs = k_wiggle_torus(4, 4, 2).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.len() == 16));
        check_torus_partition(4, 4, 2, &cs);
    }

    #[test]
    fn wiggle_rejects_bad_parameters() {
        assert!(k_wiggle_torus(12, 12, 3).is_err());
        assert!(k_wiggle_torus(11, 12, 2).is_err());
    }

    #[test]
    fn wiggle_partition_sweep() {
        for n_len in 2..=10u64 {
            for m_len in 2..=10u64 {
                for k in 2..=n_len {
                    if !allows_k_wiggle(&WiggleParams { k, n_len, m_len }) {
                        continue;
                    }
                    let cs = k_wiggle_torus(n_len, m_len, k).unwrap();
                    check_torus_partition(n_len, m_len, k, &cs);
                }
            }
        }
    }

    #[test]
    fn repsets_alternate_partitions_and_gap_two() {
        for (n_len, m_len, k) in [(4, 4, 2), (6, 11, 3), (8, 4, 4), (6, 6, 2)] {
            let cs = k_wiggle_torus(n_len, m_len, k).unwrap();
            let reps = repsets_kwiggle(&cs, RepMode::Alternate).unwrap();
            assert_eq!(reps.splitting, vec![(0..k as usize).collect::<Vec<_>>()]);
            let mut seen: HashSet<(u64, u64)> = HashSet::new();
            for (set, c) in reps.sets.iter().zip(&cs) {
                assert_eq!(set.len() as u64, n_len * m_len / k);
                let own: HashSet<(u64, u64)> = c.coords().into_iter().collect();
                for v in set {
                    assert!(own.contains(v), "representing vertex not on its cycle");
                    assert!(seen.insert(*v), "representing sets overlap");
                }
                // gap two along the cycle
                let coords = c.coords();
                let pos: HashMap<(u64, u64), usize> =
                    coords.iter().copied().enumerate().map(|(i, v)| (v, i)).collect();
                let mut ps: Vec<usize> = set.iter().map(|v| pos[v]).collect();
                ps.sort_unstable();
                for w in ps.windows(2) {
                    assert_eq!(w[1] - w[0], 2);
                }
            }
            assert_eq!(seen.len() as u64, n_len * m_len);
        }
    }

    #[test]
    fn repsets_full_mode_groups_by_parity() {
        let cs = k_wiggle_torus(8, 4, 4).unwrap();
        let reps = repsets_kwiggle(&cs, RepMode::Full).unwrap();
        assert_eq!(reps.splitting, vec![vec![0, 2], vec![1, 3]]);
        for group in &reps.splitting {
            let mut seen: HashSet<(u64, u64)> = HashSet::new();
            for &i in group {
                for v in &reps.sets[i] {
                    assert!(seen.insert(*v));
                }
            }
            assert_eq!(seen.len(), 32);
        }
        let cs3 = k_wiggle_torus(6, 11, 3).unwrap();
        assert!(repsets_kwiggle(&cs3, RepMode::Full).is_err());
    }

    #[test]
    fn repsets_scaled_example() {
        // 3-wiggle on C_6 x C_15 with S' = {3, 8, 13}: sets partition the 18
        // vertices of V(C) x S', and every gap along its cycle is 10.
        let cs = k_wiggle_torus(6, 15, 3).unwrap();
        let reps = repsets_scaled(&cs, &[3, 8, 13]).unwrap();
        let mut seen: HashSet<(u64, u64)> = HashSet::new();
        for (set, c) in reps.sets.iter().zip(&cs) {
            assert_eq!(set.len(), 6);
            let coords = c.coords();
            let pos: HashMap<(u64, u64), usize> =
                coords.iter().copied().enumerate().map(|(i, v)| (v, i)).collect();
            let mut ps: Vec<usize> = set.iter().map(|v| pos[v]).collect();
            ps.sort_unstable();
            let mut gaps: Vec<usize> = ps.windows(2).map(|w| w[1] - w[0]).collect();
            gaps.push(coords.len() - ps[ps.len() - 1] + ps[0]);
            assert!(gaps.iter().all(|&g| g == 10), "gaps {gaps:?}");
            for v in set {
                assert!(seen.insert(*v));
            }
        }
        assert_eq!(seen.len(), 18);
        assert!(seen.iter().all(|&(_, c)| c == 3 || c == 8 || c == 13));
    }

    #[test]
    fn repsets_scaled_full_sprime_matches_alternate() {
        let cs = k_wiggle_torus(4, 8, 2).unwrap();
        let all: Vec<u64> = (0..8).collect();
        let scaled = repsets_scaled(&cs, &all).unwrap();
        let alt = repsets_kwiggle(&cs, RepMode::Alternate).unwrap();
        for (a, b) in scaled.sets.iter().zip(&alt.sets) {
            let sa: HashSet<_> = a.iter().collect();
            let sb: HashSet<_> = b.iter().collect();
            assert_eq!(sa, sb);
        }
        // four evenly spaced columns: two size-8 sets, gaps 4
        let reps = repsets_scaled(&cs, &[0, 2, 4, 6]).unwrap();
        for (set, c) in reps.sets.iter().zip(&cs) {
            assert_eq!(set.len(), 8);
            let coords = c.coords();
            let pos: HashMap<(u64, u64), usize> =
                coords.iter().copied().enumerate().map(|(i, v)| (v, i)).collect();
            let mut ps: Vec<usize> = set.iter().map(|v| pos[v]).collect();
            ps.sort_unstable();
            for w in ps.windows(2) {
                assert_eq!(w[1] - w[0], 4);
            }
        }
        assert!(repsets_scaled(&cs, &[0, 1, 4]).is_err());
    }

    #[test]
    fn anchored_product_edge_counts() {
        // 4-cycle with S = {0,1}; 10-cycle with S' = {0,1,4,5,6,8}
        let st = anchored_product(
            ring_rep(4, &[0, 1]),
            ring_rep(10, &[0, 1, 4, 5, 6, 8]),
            10,
        )
        .unwrap();
        assert_eq!(st.edge_count(), 44);
        assert_eq!(st.underlying_dims(), (2, 6));

        // S = V, S' = V: the plain Cartesian product
        let st = anchored_product(full_ring(4), full_ring(4), 4).unwrap();
        assert_eq!(st.edge_count(), 32);
        assert_eq!(st.underlying_dims(), (4, 4));
        assert_eq!(st.vertex_count(), 16);

        assert!(anchored_product(ring_rep(4, &[]), full_ring(4), 4).is_err());
    }

    #[test]
    fn contraction_maps_expand_underlying_edges() {
        // C = 4-cycle with S = {0,1}; C' = 10-cycle with S' = {0,1,4,5,6,8}
        let st = anchored_product(
            ring_rep(4, &[0, 1]),
            ring_rep(10, &[0, 1, 4, 5, 6, 8]),
            10,
        )
        .unwrap();
        // the two parallel vertical edges of the underlying C_2 factor expand
        // to the two different arcs of C
        let up = GridEdge { row: 0, col: 0, vertical: true };
        assert_eq!(st.subdividing_path(&up, true), vec![10]); // just vertex (1, 0)
        let down = GridEdge { row: 1, col: 0, vertical: true };
        assert_eq!(st.subdividing_path(&down, true), vec![20, 30, 0]);
        // horizontal gap of length 3 between S' positions 1 and 4
        let h = GridEdge { row: 0, col: 1, vertical: false };
        assert_eq!(st.subdividing_path(&h, true), vec![2, 3, 4]);
        // traversing backward walks the same arc in reverse
        assert_eq!(st.subdividing_path(&h, false), vec![3, 2, 1]);

        // unsubdivided torus: identity maps (every path one edge long)
        let st = anchored_product(full_ring(4), full_ring(4), 4).unwrap();
        for r in 0..4 {
            let e = GridEdge { row: r, col: 2, vertical: true };
            assert_eq!(st.subdividing_path(&e, true).len(), 1);
        }
    }

    #[test]
    fn unsubdivided_wiggle_matches_torus_wiggle() {
        let st = anchored_product(full_ring(4), full_ring(4), 4).unwrap();
        let wig = k_wiggle_subdivided(&st, 2).unwrap();
        let direct = k_wiggle_torus(4, 4, 2).unwrap();
        for (lifted, coord) in wig.lifted.iter().zip(&direct) {
            let want: HashSet<Label> = coord.coords().iter().map(|&(r, c)| r * 4 + c).collect();
            let got: HashSet<Label> = lifted.iter().copied().collect();
            assert_eq!(want, got);
            assert_eq!(lifted.len(), coord.len());
        }
    }

    #[test]
    fn subdivided_wiggle_equal_lengths_when_vertical_dr() {
        // |S| = 4 evenly spaced on an 8-cycle, |S'| = 8 of a 10-cycle:
        // two cycles of 52 edges each (20 horizontal + 32 vertical).
        let st = anchored_product(
            ring_rep(8, &[0, 2, 4, 6]),
            ring_rep(10, &[0, 1, 2, 3, 4, 6, 7, 8]),
            10,
        )
        .unwrap();
        assert_eq!(st.edge_count(), 104);
        let wig = k_wiggle_subdivided(&st, 2).unwrap();
        assert_eq!(wig.lifted.len(), 2);
        assert!(wig.lifted.iter().all(|c| c.len() == 52));
        // edge-disjoint union covering the subdivided torus exactly
        let mut all_edges: HashSet<(Label, Label)> = HashSet::new();
        for c in &wig.lifted {
            for i in 0..c.len() {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                assert!(all_edges.insert((a.min(b), a.max(b))), "edge reused");
            }
        }
        assert_eq!(all_edges.len() as u64, st.edge_count());
    }

    #[test]
    fn subdivided_wiggle_unequal_without_dr() {
        // exactly one subdivided vertical edge: gaps (1,1,1,2) on a 5-cycle
        let st = anchored_product(ring_rep(5, &[0, 1, 2, 3]), full_ring(4), 4).unwrap();
        let wig = k_wiggle_subdivided(&st, 2).unwrap();
        let lens: Vec<usize> = wig.lifted.iter().map(|c| c.len()).collect();
        assert_eq!(lens.iter().sum::<usize>() as u64, st.edge_count());
        assert_ne!(lens[0], lens[1], "subdividing one edge must unbalance the cycles");
    }

    #[test]
    fn repsets_subdivided_partitions_v_times_sprime() {
        let st = anchored_product(
            ring_rep(8, &[0, 2, 4, 6]),
            ring_rep(10, &[0, 1, 2, 3, 4, 6, 7, 8]),
            10,
        )
        .unwrap();
        let wig = k_wiggle_subdivided(&st, 2).unwrap();
        let sets = repsets_subdivided(&st, &wig).unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[0].len(), sets[1].len());
        let mut seen: HashSet<Label> = HashSet::new();
        for (set, cyc) in sets.iter().zip(&wig.lifted) {
            let on: HashSet<Label> = cyc.iter().copied().collect();
            for &v in set {
                assert!(on.contains(&v), "representing vertex off-cycle");
                assert!(seen.insert(v), "representing sets overlap");
            }
        }
        // V(C) x S' has 8 * 8 = 64 vertices
        assert_eq!(seen.len(), 64);
        for &v in &seen {
            let (_, col) = st.split(v);
            assert!([0u64, 1, 2, 3, 4, 6, 7, 8].contains(&col));
        }
    }

    #[test]
    fn repsets_subdivided_requires_dr() {
        let st = anchored_product(ring_rep(5, &[0, 1, 2, 3]), full_ring(4), 4).unwrap();
        let wig = k_wiggle_subdivided(&st, 2).unwrap();
        assert!(repsets_subdivided(&st, &wig).is_err());
    }

    #[test]
    fn repsets_subdivided_trivial_matches_alternate() {
        let st = anchored_product(full_ring(4), full_ring(8), 8).unwrap();
        let wig = k_wiggle_subdivided(&st, 2).unwrap();
        let sets = repsets_subdivided(&st, &wig).unwrap();
        let direct = repsets_kwiggle(&k_wiggle_torus(4, 8, 2).unwrap(), RepMode::Alternate).unwrap();
        for (lifted, coords) in sets.iter().zip(&direct.sets) {
            let want: HashSet<Label> = coords.iter().map(|&(r, c)| r * 8 + c).collect();
            let got: HashSet<Label> = lifted.iter().copied().collect();
            assert_eq!(want, got);
        }
    }

    #[test]
    fn length_two_factor_lifts_to_distinct_paths() {
        // |S| = 2 on a 4-cycle: underlying torus C_2 x C_4; its doubled
        // vertical edges must lift to the two different halves of C.
        let st = anchored_product(ring_rep(4, &[0, 2]), full_ring(4), 4).unwrap();
        assert_eq!(st.underlying_dims(), (2, 4));
        let wig = k_wiggle_subdivided(&st, 2).unwrap();
        assert_eq!(
            wig.lifted.iter().map(|c| c.len() as u64).sum::<u64>(),
            st.edge_count()
        );
        assert_eq!(wig.lifted[0].len(), wig.lifted[1].len());
        let mut all_edges: HashSet<(Label, Label)> = HashSet::new();
        for c in &wig.lifted {
            for i in 0..c.len() {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                assert!(all_edges.insert((a.min(b), a.max(b))), "edge reused");
            }
        }
    }
}
