//! Top-level constructors: power-of-two cube decompositions, the general
//! even-cube constructions, path decompositions, base providers, and the
//! parameter tables.

use std::collections::VecDeque;

use crate::compose::{combine_splittable, self_product_copy, self_product_grid};
use crate::cube::{CubeEdge, CubeSpec, Label};
use crate::cycles::{split_cycle_into_paths, Cycle, RepresentedCycle};
use crate::deco::{Ambient, SplitDecomposition};
use crate::error::{Error, Result};
use crate::torus::{anchored_product, k_wiggle_subdivided, repsets_scaled};
use crate::verify;

/// Materialization ceiling: constructions whose ambient exceeds this many
/// edges are answered at parameter level only.
pub const DEFAULT_EDGE_BUDGET: u64 = 20_000_000;

/// Default node budget for the base-provider backtracking search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

fn odd_part(n: u64) -> u64 {
    n >> n.trailing_zeros()
}

fn bits_desc(y: u64) -> Vec<u32> {
    (0..64u32).rev().filter(|b| (y >> b) & 1 == 1).collect()
}

// ---------------------------------------------------------------------------
// Base providers
// ---------------------------------------------------------------------------

/// Source of verified Hamiltonian decompositions of `Q_{2x}` (x odd): the
/// trivial 4-cycle for x = 1, a budgeted backtracking search for small x,
/// or an imported decomposition.
#[derive(Clone, Debug)]
pub struct BaseProvider {
    max_search_x: u64,
    search_budget: u64,
    imported: Option<SplitDecomposition>,
}

impl BaseProvider {
    /// Trivial base plus search for `2x <= 6`.
    pub fn standard() -> BaseProvider {
        BaseProvider {
            max_search_x: 3,
            search_budget: DEFAULT_SEARCH_BUDGET,
            imported: None,
        }
    }

    /// Only the x = 1 base.
    pub fn trivial_only() -> BaseProvider {
        BaseProvider {
            max_search_x: 1,
            search_budget: 0,
            imported: None,
        }
    }

    pub fn with_search_budget(mut self, budget: u64) -> BaseProvider {
        self.search_budget = budget;
        self
    }

    /// Add an imported decomposition (verified when first used).
    pub fn with_imported(mut self, cert: SplitDecomposition) -> BaseProvider {
        self.imported = Some(cert);
        self
    }

    pub fn covers(&self, x: u64) -> bool {
        if x == 1 || x <= self.max_search_x {
            return true;
        }
        match &self.imported {
            Some(cert) => matches!(cert.ambient, Ambient::Cube { n } if n as u64 == 2 * x),
            None => false,
        }
    }

    fn hamiltonian_cycles(&self, x: u64) -> Result<Vec<Cycle>> {
        if let Some(cert) = &self.imported {
            if matches!(cert.ambient, Ambient::Cube { n } if n as u64 == 2 * x) {
                return Ok(cert.cycles.iter().map(|rc| rc.cycle().clone()).collect());
            }
        }
        if x == 1 {
            return Ok(vec![Cycle::new(vec![0b00, 0b01, 0b11, 0b10])]);
        }
        if x <= self.max_search_x {
            return search_hamiltonian_decomposition((2 * x) as u32, self.search_budget);
        }
        Err(Error::BaseUnavailable(x))
    }
}

/// A verified 1-splittable (Hamiltonian) decomposition of `Q_{2x}` into x
/// cycles, with full representing sets.
pub fn base_hamiltonian(x: u64, provider: &BaseProvider) -> Result<SplitDecomposition> {
    if x == 0 || x % 2 == 0 {
        return Err(Error::InvalidParameter(format!("x must be odd, got {x}")));
    }
    let cycles = provider.hamiltonian_cycles(x)?;
    if cycles.len() as u64 != x {
        return Err(Error::Verification(format!(
            "base produced {} cycles, expected {x}",
            cycles.len()
        )));
    }
    let cert = SplitDecomposition {
        ambient: Ambient::cube(2 * x as u32),
        cycles: cycles.into_iter().map(RepresentedCycle::full).collect(),
        splitting_sets: (0..x as usize).map(|i| vec![i]).collect(),
        splitting_subsets: Some((0..x as usize).map(|i| vec![vec![i]]).collect()),
        dr: true,
    };
    verify::verify_certificate(&cert, 1)?;
    Ok(cert)
}

/// Backtracking search for a Hamiltonian decomposition of `Q_dim` into
/// `dim/2` edge-disjoint cycles: cycles are found one level at a time by a
/// degree-forward-checked DFS, and the whole attempt restarts with a new
/// deterministic shuffle of the branch order whenever a level stalls. The
/// first attempt tries branches in plain dimension order.
pub fn search_hamiltonian_decomposition(dim: u32, budget: u64) -> Result<Vec<Cycle>> {
    if dim < 2 || dim % 2 != 0 {
        return Err(Error::InvalidParameter(
            "search needs an even dimension of at least 2".into(),
        ));
    }
    if dim > 8 {
        return Err(Error::InvalidParameter(format!(
            "search scope is limited to small cubes, got Q_{dim}"
        )));
    }
    let mut s = HamSearch {
        dim,
        nv: 1usize << dim,
        used: vec![false; ((dim as u64) << (dim - 1)) as usize],
        nodes: 0,
        budget,
        rng: 0,
    };
    let levels = dim / 2;
    // per-level node caps keep one bad attempt from eating the whole budget
    let attempt_cap = 50_000u64.max(1u64 << dim);
    for attempt in 0u64.. {
        s.rng = attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15).max(1);
        s.used.iter_mut().for_each(|u| *u = false);
        let shuffle = attempt > 0;
        let mut acc: Vec<Vec<Label>> = Vec::new();
        let mut stalled = false;
        for _ in 0..levels - 1 {
            let cap = (s.nodes + attempt_cap).min(s.budget);
            match s.find_one_cycle(cap, shuffle) {
                Some(cycle) => {
                    s.mark_cycle(&cycle, true);
                    acc.push(cycle);
                    if !s.remainder_connected() {
                        stalled = true;
                        break;
                    }
                }
                None => {
                    stalled = true;
                    break;
                }
            }
        }
        if !stalled {
            if let Some(last) = s.trace_two_factor() {
                acc.push(last);
                return Ok(acc.into_iter().map(Cycle::new).collect());
            }
        }
        if s.nodes >= s.budget {
            return Err(Error::BudgetExceeded(s.nodes));
        }
    }
    unreachable!()
}

struct HamSearch {
    dim: u32,
    nv: usize,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
    rng: u64,
}

impl HamSearch {
    fn edge_idx(&self, u: usize, d: u32) -> usize {
        CubeEdge {
            endpoint: (u as u64) & !(1u64 << d),
            dimension: d,
        }
        .index(self.dim) as usize
    }

    fn edge_free(&self, u: usize, d: u32) -> bool {
        !self.used[self.edge_idx(u, d)]
    }

    fn mark_cycle(&mut self, cycle: &[Label], val: bool) {
        for i in 0..cycle.len() {
            let u = cycle[i] as usize;
            let w = cycle[(i + 1) % cycle.len()] as usize;
            let d = ((u ^ w) as u64).trailing_zeros();
            let idx = self.edge_idx(u, d);
            self.used[idx] = val;
        }
    }

    fn next_rand(&mut self) -> u64 {
        // xorshift64, seeded per attempt
        let mut x = self.rng;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.rng = x;
        x
    }

    /// One Hamiltonian cycle of the free subgraph, or None when the node cap
    /// for this level runs out.
    fn find_one_cycle(&mut self, cap: u64, shuffle: bool) -> Option<Vec<Label>> {
        let mut path: Vec<usize> = Vec::with_capacity(self.nv);
        path.push(0);
        let mut visited = vec![false; self.nv];
        visited[0] = true;
        if self.extend(&mut path, &mut visited, cap, shuffle) {
            Some(path.iter().map(|&v| v as Label).collect())
        } else {
            None
        }
    }

    fn extend(&mut self, path: &mut Vec<usize>, visited: &mut [bool], cap: u64, shuffle: bool) -> bool {
        self.nodes += 1;
        if self.nodes > cap {
            return false;
        }
        let cur = *path.last().unwrap();
        if path.len() == self.nv {
            let d = (cur ^ path[0]).trailing_zeros();
            return (cur ^ path[0]).count_ones() == 1 && self.edge_free(cur, d);
        }
        let mut dims: [u32; 8] = [0, 1, 2, 3, 4, 5, 6, 7];
        let k = self.dim as usize;
        if shuffle {
            for i in (1..k).rev() {
                let j = (self.next_rand() % (i as u64 + 1)) as usize;
                dims.swap(i, j);
            }
        }
        for &d in &dims[..k] {
            let nxt = cur ^ (1usize << d);
            if visited[nxt] || !self.edge_free(cur, d) {
                continue;
            }
            path.push(nxt);
            visited[nxt] = true;
            if self.degrees_viable(path[0], nxt, visited) && self.extend(path, visited, cap, shuffle)
            {
                return true;
            }
            visited[nxt] = false;
            path.pop();
        }
        false
    }

    /// Every unvisited vertex must keep at least two free edges toward
    /// unvisited vertices or the path endpoints, and the start must stay
    /// reachable.
    fn degrees_viable(&self, start: usize, end: usize, visited: &[bool]) -> bool {
        let open = |v: usize| !visited[v] || v == start || v == end;
        let mut start_avail = 0u32;
        for d in 0..self.dim {
            let w = start ^ (1usize << d);
            if self.edge_free(start, d) && (!visited[w] || w == end) {
                start_avail += 1;
            }
        }
        if start_avail == 0 {
            return false;
        }
        for v in 0..self.nv {
            if visited[v] {
                continue;
            }
            let mut avail = 0u32;
            for d in 0..self.dim {
                if self.edge_free(v, d) && open(v ^ (1usize << d)) {
                    avail += 1;
                    if avail == 2 {
                        break;
                    }
                }
            }
            if avail < 2 {
                return false;
            }
        }
        true
    }

    fn remainder_connected(&self) -> bool {
        let mut seen = vec![false; self.nv];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1usize;
        while let Some(v) = queue.pop_front() {
            for d in 0..self.dim {
                let w = v ^ (1usize << d);
                if self.edge_free(v, d) && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.nv
    }

    /// The free edges of the last level form a 2-factor; accept it only if it
    /// is a single Hamiltonian cycle.
    fn trace_two_factor(&self) -> Option<Vec<Label>> {
        let mut cycle: Vec<Label> = Vec::with_capacity(self.nv);
        let mut prev = usize::MAX;
        let mut cur = 0usize;
        for _ in 0..self.nv {
            cycle.push(cur as Label);
            let mut nxt = None;
            for d in 0..self.dim {
                let w = cur ^ (1usize << d);
                if w != prev && self.edge_free(cur, d) {
                    nxt = Some(w);
                    break;
                }
            }
            let w = nxt?;
            prev = cur;
            cur = w;
        }
        if cur == 0 && cycle.len() == self.nv {
            Some(cycle)
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// Power-of-two cubes
// ---------------------------------------------------------------------------

/// A `(2^m, 2^{x2^n - ell})`-DR-splittable decomposition of `Q_{x 2^n}` into
/// `x 2^{x2^n + n - 1 - ell}` cycles of length `2^ell`, built by induction:
/// pair each Hamiltonian cycle of the half-dimension cube with itself, cut
/// each torus by the k-wiggle, and bookkeep representing sets; below the
/// half-way cycle length, double the dimension with the self-product
/// operators instead.
pub fn power_cube_decomposition(
    x: u64,
    n: u32,
    ell: u64,
    m: u64,
    provider: &BaseProvider,
) -> Result<SplitDecomposition> {
    if x == 0 || x % 2 == 0 {
        return Err(Error::InvalidParameter(format!("x must be odd, got {x}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let dim = x
        .checked_shl(n)
        .filter(|&d| d <= CubeSpec::MAX_DIM as u64)
        .ok_or_else(|| Error::DimensionOverflow(format!("x 2^n = {x} * 2^{n} is too large")))?;
    if ell < 2 * x || ell > dim {
        return Err(Error::InvalidParameter(format!(
            "cycle exponent ell = {ell} outside [{}, {dim}]",
            2 * x
        )));
    }
    let m_hi = (dim - 1).min(dim - 1 + n as u64 - ell);
    let m_lo = dim - ell;
    if m < m_lo || m > m_hi {
        return Err(Error::InvalidParameter(format!(
            "splitting exponent m = {m} outside [{m_lo}, {m_hi}]"
        )));
    }

    if n == 1 {
        // ranges force ell = 2x and m = 0: the Hamiltonian base
        return base_hamiltonian(x, provider);
    }

    let half = x << (n - 1);
    if ell > half {
        claim_case(x, n, ell, m, provider)
    } else if (n as u64 - 1) < ell && m == dim - 1 + n as u64 - ell {
        // top of the range: grid self-product on the level below
        let input_m = half - 1 + (n as u64 - 1) - ell;
        let input = power_cube_decomposition(x, n - 1, ell, input_m, provider)?;
        self_product_grid(&input)
    } else {
        let input = power_cube_decomposition(x, n - 1, ell, m - half, provider)?;
        self_product_copy(&input)
    }
}

/// The half-way-to-full range: wiggle the tori `C [] C` over the Hamiltonian
/// cycles of `Q_{x 2^{n-1}}`.
fn claim_case(
    x: u64,
    n: u32,
    ell: u64,
    m: u64,
    provider: &BaseProvider,
) -> Result<SplitDecomposition> {
    let dim = x << n;
    let half_dim = (x << (n - 1)) as u32;
    let k = 1u64 << (dim - ell + 1);
    let bottom = dim - ell;
    let input_m = if m == bottom { 0 } else { m - (dim - ell + 1) };
    let input = power_cube_decomposition(x, n - 1, x << (n - 1), input_m, provider)?;
    let stride = 1u64 << half_dim;

    let mut cycles: Vec<RepresentedCycle> = Vec::new();
    let mut per_torus: Vec<Vec<usize>> = Vec::with_capacity(input.cycles.len());
    for rc in &input.cycles {
        let torus = anchored_product(
            RepresentedCycle::full(rc.cycle().clone()),
            RepresentedCycle::full(rc.cycle().clone()),
            stride,
        )?;
        let wig = k_wiggle_subdivided(&torus, k)?;
        let rep_sets: Vec<Vec<Label>> = if m == bottom {
            wig.lifted.clone()
        } else {
            let cols: Vec<u64> = rc.rep_positions().iter().map(|&p| p as u64).collect();
            let scaled = repsets_scaled(&wig.underlying, &cols)?;
            scaled
                .sets
                .iter()
                .map(|set| set.iter().map(|&(r, c)| torus.label_at(r, c)).collect())
                .collect()
        };
        let mut outs = Vec::with_capacity(k as usize);
        for (walk, rep) in wig.lifted.into_iter().zip(rep_sets) {
            outs.push(cycles.len());
            cycles.push(RepresentedCycle::new(Cycle::new(walk), &rep)?);
        }
        per_torus.push(outs);
    }

    let parity_classes = |outs: &[usize]| -> (Vec<usize>, Vec<usize>) {
        (
            outs.iter().copied().step_by(2).collect(),
            outs.iter().copied().skip(1).step_by(2).collect(),
        )
    };

    let (splitting_sets, splitting_subsets) = if m == bottom {
        // each parity class of each torus is its own splitting set
        let mut sets = Vec::with_capacity(2 * per_torus.len());
        for outs in &per_torus {
            let (evens, odds) = parity_classes(outs);
            sets.push(evens);
            sets.push(odds);
        }
        let subsets = sets.iter().map(|s| vec![s.clone()]).collect();
        (sets, subsets)
    } else {
        // all cycles from the tori of one input splitting set, with the
        // per-torus parity classes as subsets
        let mut sets = Vec::with_capacity(input.splitting_sets.len());
        let mut subsets = Vec::with_capacity(input.splitting_sets.len());
        for in_set in &input.splitting_sets {
            let mut indices = Vec::new();
            let mut groups = Vec::new();
            for &t in in_set {
                indices.extend(per_torus[t].iter().copied());
                let (evens, odds) = parity_classes(&per_torus[t]);
                groups.push(evens);
                groups.push(odds);
            }
            sets.push(indices);
            subsets.push(groups);
        }
        (sets, subsets)
    };

    Ok(SplitDecomposition {
        ambient: Ambient::cube(dim as u32),
        cycles,
        splitting_sets,
        splitting_subsets: Some(splitting_subsets),
        dr: true,
    })
}

// ---------------------------------------------------------------------------
// General even cubes
// ---------------------------------------------------------------------------

/// Shared recursion shape for the general and binary-refinement routes:
/// peel the leading power of two off the factor list and combine.
#[derive(Clone, Debug)]
struct RecursionShape {
    x: u64,
    alpha: u32,
    bits: Vec<u32>,
    /// true: the x-aware route (ell >= 2x + i1 - i2); false: the binary
    /// refinement (x = 1, ell >= i1 - i2 + 1).
    main_route: bool,
}

impl RecursionShape {
    fn level_dim(&self, idx: usize) -> u64 {
        self.x << (self.bits[idx] + self.alpha)
    }

    fn tail_dim(&self, idx: usize) -> u64 {
        self.bits[idx..]
            .iter()
            .map(|&b| self.x << (b + self.alpha))
            .sum()
    }

    fn level_ell_min(&self, idx: usize) -> u64 {
        let gap = (self.bits[idx] - self.bits[idx + 1]) as u64;
        if self.main_route {
            2 * self.x + gap
        } else {
            gap + 1
        }
    }

    /// Largest q the tail starting at `idx` supports.
    fn tail_q_range(&self, idx: usize) -> u64 {
        let j = (self.bits.len() - idx) as u64;
        let n = self.tail_dim(idx);
        let i1 = self.bits[idx] as u64;
        if self.main_route {
            n - i1 - 2 * self.x * j
        } else {
            n - i1 - j
        }
    }
}

/// The parameter tuple of one construction, with the greedy per-level
/// schedule (cycle-length exponent and residual q passed to the tail) and a
/// readable trace of the recursion.
#[derive(Clone, Debug)]
pub struct ConstructionPlan {
    pub n: u32,
    pub x: u64,
    pub y: u64,
    pub alpha: u32,
    pub bits: Vec<u32>,
    pub q: u64,
    pub schedule: Vec<(u64, u64)>,
    pub trace: Vec<String>,
    shape: RecursionShape,
}

impl ConstructionPlan {
    pub fn new(n: u32, x: u64, y: u64, q: u64) -> Result<ConstructionPlan> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "dimension must be even and positive, got {n}"
            )));
        }
        if x == 0 || x % 2 == 0 || y == 0 || y % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "x and y must be odd, got x={x}, y={y}"
            )));
        }
        let alpha = n.trailing_zeros();
        if (x * y) << alpha != n as u64 {
            return Err(Error::InvalidParameter(format!(
                "n = {n} is not x*y*2^alpha for x={x}, y={y}"
            )));
        }
        let shape = RecursionShape {
            x,
            alpha,
            bits: bits_desc(y),
            main_route: true,
        };
        Self::from_shape(n, x, y, q, shape)
    }

    fn from_shape(n: u32, x: u64, y: u64, q: u64, shape: RecursionShape) -> Result<ConstructionPlan> {
        let q_max = shape.tail_q_range(0);
        if q > q_max {
            return Err(Error::InvalidParameter(format!(
                "q = {q} outside [0, {q_max}]"
            )));
        }
        let (schedule, trace) = compute_schedule(&shape, q)?;
        Ok(ConstructionPlan {
            n,
            x,
            y,
            alpha: shape.alpha,
            bits: shape.bits.clone(),
            q,
            schedule,
            trace,
            shape,
        })
    }

    /// Number of cycles, as (coefficient, power-of-two exponent).
    pub fn cycle_count(&self) -> (u64, u64) {
        let i1 = self.bits[0] as u64;
        let j = self.bits.len() as u64;
        if self.shape.main_route {
            (self.x, i1 + self.alpha as u64 + j - 2 + self.q)
        } else {
            (1, i1 + j - 2 + self.q)
        }
    }

    /// Cycle length, as (odd coefficient, power-of-two exponent).
    pub fn cycle_length(&self) -> (u64, u64) {
        let i1 = self.bits[0] as u64;
        let j = self.bits.len() as u64;
        let n = self.n as u64;
        if self.shape.main_route {
            (self.y, n - i1 - j - self.q + 1)
        } else {
            let alpha = self.alpha as u64;
            (odd_part(n), alpha + n + 1 - i1 - j - self.q)
        }
    }

    /// Splittability exponent: the decomposition is `2^{j-1+q}`-splittable.
    pub fn splittable_exp(&self) -> u64 {
        self.bits.len() as u64 - 1 + self.q
    }
}

/// Greedy schedule: take the cycle-length exponent as large as possible at
/// each level, spilling the remaining q into the tail.
fn compute_schedule(shape: &RecursionShape, q: u64) -> Result<(Vec<(u64, u64)>, Vec<String>)> {
    let mut schedule = Vec::with_capacity(shape.bits.len());
    let mut trace = Vec::with_capacity(shape.bits.len());
    let mut q_rem = q;
    for idx in 0..shape.bits.len() {
        if idx + 1 == shape.bits.len() {
            let dim = shape.level_dim(idx);
            let ell = dim
                .checked_sub(q_rem)
                .filter(|&e| e >= 2 * shape.x)
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("residual q = {q_rem} too large for the base"))
                })?;
            schedule.push((ell, 0));
            trace.push(format!(
                "base: Q_{} into cycles of length 2^{ell} (m = {q_rem})",
                dim
            ));
        } else {
            debug_assert!(q_rem <= shape.tail_q_range(idx));
            let cap = shape.level_dim(idx);
            let ell_min = shape.level_ell_min(idx);
            let ell = ell_min.max(cap.saturating_sub(q_rem));
            let q_next = q_rem - (cap - ell);
            trace.push(format!(
                "split Q_{} = Q_{} x Q_{}: left cycles 2^{ell}, tail q = {q_next}",
                shape.tail_dim(idx),
                cap,
                shape.tail_dim(idx + 1),
            ));
            schedule.push((ell, q_next));
            q_rem = q_next;
        }
    }
    Ok((schedule, trace))
}

fn execute_plan(plan: &ConstructionPlan, provider: &BaseProvider) -> Result<SplitDecomposition> {
    execute_level(&plan.shape, &plan.schedule, 0, provider)
}

fn execute_level(
    shape: &RecursionShape,
    schedule: &[(u64, u64)],
    idx: usize,
    provider: &BaseProvider,
) -> Result<SplitDecomposition> {
    let (ell, _) = schedule[idx];
    let level_n = shape.bits[idx] + shape.alpha;
    if idx + 1 == shape.bits.len() {
        let dim = shape.level_dim(idx);
        return power_cube_decomposition(shape.x, level_n, ell, dim - ell, provider);
    }
    let gap = (shape.bits[idx] - shape.bits[idx + 1]) as u64;
    let dim = shape.level_dim(idx);
    let left = power_cube_decomposition(shape.x, level_n, ell, dim - ell + gap, provider)?;
    let right = execute_level(shape, schedule, idx + 1, provider)?;
    combine_splittable(&left, &right)
}

/// Either a fully materialized certificate or, past the edge budget, the
/// arithmetic description of what the construction would produce.
#[derive(Clone, Debug)]
pub enum Outcome {
    Materialized(SplitDecomposition),
    ParameterLevel(ParamSummary),
}

/// Parameter-level answer: counts and lengths as `coeff * 2^exp`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ParamSummary {
    pub n: u32,
    pub splittable_exp: u64,
    pub count_coeff: u64,
    pub count_exp: u64,
    pub len_coeff: u64,
    pub len_exp: u64,
}

impl std::fmt::Display for ParamSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PARAMETER-LEVEL n={} cycles={}*2^{} length={}*2^{} splittable=2^{}",
            self.n, self.count_coeff, self.count_exp, self.len_coeff, self.len_exp,
            self.splittable_exp
        )
    }
}

fn summarize(plan: &ConstructionPlan) -> ParamSummary {
    let (count_coeff, count_exp) = plan.cycle_count();
    let (len_coeff, len_exp) = plan.cycle_length();
    ParamSummary {
        n: plan.n,
        splittable_exp: plan.splittable_exp(),
        count_coeff,
        count_exp,
        len_coeff,
        len_exp,
    }
}

fn materializable(n: u32, edge_budget: u64) -> bool {
    n <= CubeSpec::MAX_DIM && ((n as u64) << (n - 1)) <= edge_budget
}

/// The general construction: a `2^{j-1+q}`-splittable decomposition of `Q_n`
/// into `x 2^{i1+alpha+j-2+q}` cycles of length `y 2^{n-i1-j-q+1}`.
pub fn general_decomposition(
    plan: &ConstructionPlan,
    provider: &BaseProvider,
    edge_budget: u64,
) -> Result<Outcome> {
    if !provider.covers(plan.x) {
        return Err(Error::BaseUnavailable(plan.x));
    }
    if !materializable(plan.n, edge_budget) {
        return Ok(Outcome::ParameterLevel(summarize(plan)));
    }
    Ok(Outcome::Materialized(execute_plan(plan, provider)?))
}

/// The binary refinement (x = 1 throughout): a `2^{j-1+q}`-splittable
/// decomposition of `Q_n` into `2^{i1+j-2+q}` equal cycles, where
/// `i_1 > ... > i_j` is the binary expansion of n itself.
pub fn binary_decomposition(n: u32, q: u64, edge_budget: u64) -> Result<Outcome> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "dimension must be even and positive, got {n}"
        )));
    }
    let shape = RecursionShape {
        x: 1,
        alpha: 0,
        bits: bits_desc(n as u64),
        main_route: false,
    };
    let plan = ConstructionPlan::from_shape(n, 1, n as u64, q, shape)?;
    if !materializable(n, edge_budget) {
        return Ok(Outcome::ParameterLevel(summarize(&plan)));
    }
    let provider = BaseProvider::trivial_only();
    Ok(Outcome::Materialized(execute_plan(&plan, &provider)?))
}

/// Longest constructible cycles for an odd divisor `y` of n: the q = 0 row,
/// of length `y 2^{n-i1-j+1} >= 2^{n+1}/n`.
pub fn longest_cycle_decomposition(
    n: u32,
    y: u64,
    provider: &BaseProvider,
    edge_budget: u64,
) -> Result<Outcome> {
    let odd = odd_part(n as u64);
    if y == 0 || odd % y != 0 {
        return Err(Error::InvalidParameter(format!(
            "y = {y} is not an odd divisor of {n}"
        )));
    }
    let plan = ConstructionPlan::new(n, odd / y, y, 0)?;
    general_decomposition(&plan, provider, edge_budget)
}

/// Decompose `Q_n` into paths of length `ell` (`ell` dividing the edge count,
/// `ell <= 2^n / n`): build a cycle decomposition whose length is a multiple
/// of `ell` using only the trivial base, then split every cycle.
pub fn path_decomposition(n: u32, ell: u64, edge_budget: u64) -> Result<Vec<Vec<Label>>> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "dimension must be even and positive, got {n}"
        )));
    }
    if n > CubeSpec::MAX_DIM {
        return Err(Error::DimensionOverflow(format!("Q_{n} is too large")));
    }
    let spec = CubeSpec::new(n)?;
    if ell == 0 || spec.edge_count() % ell != 0 {
        return Err(Error::InvalidParameter(format!(
            "path length {ell} does not divide {}",
            spec.edge_count()
        )));
    }
    if ell.saturating_mul(n as u64) > spec.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "path length {ell} exceeds 2^{n}/{n}"
        )));
    }
    if !materializable(n, edge_budget) {
        return Err(Error::EdgeBudget {
            edges: spec.edge_count(),
            budget: edge_budget,
        });
    }

    // candidate cycle lengths from the x = 1 routes, shortest first
    enum Route {
        Binary(u64),
        General(u64),
    }
    let mut candidates: Vec<(u64, Route)> = Vec::new();
    let nbits = bits_desc(n as u64);
    let (i1, j) = (nbits[0] as u64, nbits.len() as u64);
    for q in 0..=(n as u64 - i1 - j) {
        let len = spec.edge_count() >> (i1 + j - 2 + q);
        candidates.push((len, Route::Binary(q)));
    }
    let y = odd_part(n as u64);
    let ybits = bits_desc(y);
    let (yi1, yj) = (ybits[0] as u64, ybits.len() as u64);
    for q in 0..=(n as u64 - yi1 - 2 * yj) {
        let len = y << (n as u64 - yi1 - yj - q + 1);
        candidates.push((len, Route::General(q)));
    }
    candidates.sort_by_key(|(len, r)| (*len, matches!(r, Route::General(_))));
    let (_, route) = candidates
        .into_iter()
        .find(|(len, _)| *len % ell == 0 && *len > ell)
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "no constructible cycle length is a proper multiple of {ell}"
            ))
        })?;

    let outcome = match route {
        Route::Binary(q) => binary_decomposition(n, q, edge_budget)?,
        Route::General(q) => {
            let plan = ConstructionPlan::new(n, 1, y, q)?;
            general_decomposition(&plan, &BaseProvider::trivial_only(), edge_budget)?
        }
    };
    let cert = match outcome {
        Outcome::Materialized(c) => c,
        Outcome::ParameterLevel(_) => unreachable!("budget checked above"),
    };
    let mut paths = Vec::with_capacity((spec.edge_count() / ell) as usize);
    for rc in &cert.cycles {
        paths.extend(split_cycle_into_paths(rc.cycle(), ell)?);
    }
    Ok(paths)
}

// ---------------------------------------------------------------------------
// Parameter tables
// ---------------------------------------------------------------------------

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ParamMode {
    Main,
    Cbgen,
}

/// One table row: cycle counts `count_coeff * 2^q` for q in
/// `[count_lo, count_hi]`, lengths `len_coeff * 2^m` for m in
/// `[len_lo, len_hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamRow {
    pub n: u32,
    pub alpha: u32,
    pub x: u64,
    pub y: u64,
    pub i1: u32,
    pub j: u32,
    pub q_range: u64,
    pub count_coeff: u64,
    pub count_lo: u64,
    pub count_hi: u64,
    pub len_coeff: u64,
    pub len_lo: u64,
    pub len_hi: u64,
    pub constructible: bool,
}

impl ParamRow {
    /// Does any length in this row equal `coeff * 2^exp` (coeff odd)?
    pub fn lengths_contain(&self, coeff: u64, exp: u64) -> bool {
        coeff == self.len_coeff && (self.len_lo..=self.len_hi).contains(&exp)
    }
}

pub fn enumerate_parameters(
    n: u32,
    mode: ParamMode,
    provider: &BaseProvider,
) -> Result<Vec<ParamRow>> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "dimension must be even and positive, got {n}"
        )));
    }
    let alpha = n.trailing_zeros();
    let odd = odd_part(n as u64);
    match mode {
        ParamMode::Main => {
            let mut rows = Vec::new();
            for x in (1..=odd).filter(|d| odd % d == 0) {
                let y = odd / x;
                let bits = bits_desc(y);
                let (i1, j) = (bits[0], bits.len() as u32);
                let q_range = n as u64 - i1 as u64 - 2 * x * j as u64;
                let count_lo = i1 as u64 + alpha as u64 + j as u64 - 2;
                let len_hi = n as u64 - i1 as u64 - j as u64 + 1;
                rows.push(ParamRow {
                    n,
                    alpha,
                    x,
                    y,
                    i1,
                    j,
                    q_range,
                    count_coeff: x,
                    count_lo,
                    count_hi: count_lo + q_range,
                    len_coeff: y,
                    len_lo: len_hi - q_range,
                    len_hi,
                    constructible: provider.covers(x),
                });
            }
            Ok(rows)
        }
        ParamMode::Cbgen => {
            let bits = bits_desc(n as u64);
            let (i1, j) = (bits[0], bits.len() as u32);
            let q_range = n as u64 - i1 as u64 - j as u64;
            let count_lo = i1 as u64 + j as u64 - 2;
            let len_hi = alpha as u64 + n as u64 + 1 - i1 as u64 - j as u64;
            Ok(vec![ParamRow {
                n,
                alpha,
                x: 1,
                y: n as u64,
                i1,
                j,
                q_range,
                count_coeff: 1,
                count_lo,
                count_hi: count_lo + q_range,
                len_coeff: odd,
                len_lo: len_hi - q_range,
                len_hi,
                constructible: true,
            }])
        }
    }
}

fn fmt_set(coeff: u64, lo: u64, hi: u64, var: char) -> String {
    let c = if coeff == 1 {
        String::new()
    } else {
        format!("{coeff}*")
    };
    if lo == hi {
        format!("{{{c}2^{lo}}}")
    } else {
        format!("{{{c}2^{var} : {lo} <= {var} <= {hi}}}")
    }
}

fn fmt_count_set(coeff: u64, lo: u64, hi: u64) -> String {
    // counts always render as a range, matching the table layout
    let c = if coeff == 1 {
        String::new()
    } else {
        format!("{coeff}*")
    };
    format!("{{{c}2^q : {lo} <= q <= {hi}}}")
}

/// Render rows in the appendix-table layout, one line per row.
pub fn render_param_rows(rows: &[ParamRow], mode: ParamMode) -> String {
    let mut out = String::new();
    for r in rows {
        let counts = fmt_count_set(r.count_coeff, r.count_lo, r.count_hi);
        let lengths = fmt_set(r.len_coeff, r.len_lo, r.len_hi, 'm');
        let line = match mode {
            ParamMode::Main => format!(
                "n={} alpha={} x={} y={} i1={} j={} range={} counts={} lengths={} base={}",
                r.n,
                r.alpha,
                r.x,
                r.y,
                r.i1,
                r.j,
                r.q_range,
                counts,
                lengths,
                if r.constructible { "yes" } else { "no" }
            ),
            ParamMode::Cbgen => format!(
                "n={} i1={} j={} range={} counts={} lengths={}",
                r.n, r.i1, r.j, r.q_range, counts, lengths
            ),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}
