//! Product operators: building decompositions of `G [] G'` out of
//! decompositions of the factors.
//!
//! Everything here manipulates cube-ambient certificates; the left factor
//! always lands in the high label bits (see `cube::concat_label`).

use std::collections::HashSet;

use crate::cube::Label;
use crate::cycles::{Cycle, RepresentedCycle};
use crate::deco::{Ambient, SplitDecomposition};
use crate::error::{Error, Result};
use crate::torus::{
    anchored_product, k_wiggle_subdivided, repsets_subdivided, SubdividedTorus,
};

fn cube_dim(d: &SplitDecomposition) -> Result<u32> {
    match d.ambient {
        Ambient::Cube { n } => Ok(n),
        _ => Err(Error::InvalidParameter(
            "product operators need cube ambients".into(),
        )),
    }
}

/// Pair two equal-count lists of spanning cycles: the i-th with the i-th.
/// Their Cartesian products are pairwise edge-disjoint and cover `G [] G'`.
pub fn product_by_spanning(
    left: &[Cycle],
    right: &[Cycle],
    stride: u64,
) -> Result<Vec<SubdividedTorus>> {
    if left.len() != right.len() {
        return Err(Error::InvalidParameter(format!(
            "spanning decompositions must have equal counts ({} vs {})",
            left.len(),
            right.len()
        )));
    }
    left.iter()
        .zip(right)
        .map(|(l, r)| {
            anchored_product(
                RepresentedCycle::full(l.clone()),
                RepresentedCycle::full(r.clone()),
                stride,
            )
        })
        .collect()
}

fn validate_splittable_side(
    cycles: &[RepresentedCycle],
    vertex_count: u64,
    side: &str,
) -> Result<()> {
    if cycles.is_empty() {
        return Err(Error::Structure(format!("{side}: empty splitting set")));
    }
    let size = cycles[0].rep_positions().len();
    if size < 2 {
        return Err(Error::Structure(format!(
            "{side}: representing sets must have at least 2 vertices"
        )));
    }
    let mut seen: HashSet<Label> = HashSet::with_capacity(vertex_count as usize);
    for rc in cycles {
        if rc.rep_positions().len() != size {
            return Err(Error::Structure(format!(
                "{side}: representing sets differ in size"
            )));
        }
        for v in rc.rep_labels() {
            if v >= vertex_count || !seen.insert(v) {
                return Err(Error::Structure(format!(
                    "{side}: representing sets do not partition the vertices"
                )));
            }
        }
    }
    if seen.len() as u64 != vertex_count {
        return Err(Error::Structure(format!(
            "{side}: representing sets do not cover all vertices"
        )));
    }
    Ok(())
}

/// All pairwise anchored products of two splittable decompositions (one
/// splitting set each). Their edge sets partition `E(G [] G')`.
pub fn product_by_anchoring(
    left: &[RepresentedCycle],
    right: &[RepresentedCycle],
    left_vertices: u64,
    right_vertices: u64,
    stride: u64,
) -> Result<Vec<SubdividedTorus>> {
    validate_splittable_side(left, left_vertices, "left factor")?;
    validate_splittable_side(right, right_vertices, "right factor")?;
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in left {
        for r in right {
            out.push(anchored_product(l.clone(), r.clone(), stride)?);
        }
    }
    Ok(out)
}

/// Sort splitting-set indices by the canonical key of their smallest cycle,
/// so the pairing of left and right splitting sets is deterministic.
fn sets_in_canonical_order(d: &SplitDecomposition) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.splitting_sets.len()).collect();
    order.sort_by_key(|&si| {
        d.splitting_sets[si]
            .iter()
            .map(|&ci| d.cycles[ci].cycle().vertices().to_vec())
            .min()
            .unwrap_or_default()
    });
    order
}

/// Combine an (a,b)-DR-splittable decomposition of `G` (even cycle length,
/// even representing sets) with a c-splittable decomposition of `G'` (even
/// representing sets, same number of splitting sets) into a 2bc-splittable
/// decomposition of `G [] G'` into `2mac` cycles of equal length: every
/// anchored product of paired splitting sets is cut by the 2-wiggle, and the
/// per-torus representing halves become the new representing sets.
pub fn combine_splittable(
    g: &SplitDecomposition,
    gp: &SplitDecomposition,
) -> Result<SplitDecomposition> {
    let gn = cube_dim(g)?;
    let gpn = cube_dim(gp)?;
    if !g.dr {
        return Err(Error::InvalidParameter(
            "left decomposition must be DR-splittable".into(),
        ));
    }
    let g_subsets = g.splitting_subsets.as_ref().ok_or_else(|| {
        Error::InvalidParameter("left decomposition must carry splitting subsets".into())
    })?;
    if g.cycle_length() % 2 != 0 {
        return Err(Error::InvalidParameter(
            "left cycles must have even length".into(),
        ));
    }
    for (d, side) in [(g, "left"), (gp, "right")] {
        if d.cycles
            .iter()
            .any(|rc| rc.rep_positions().len() % 2 != 0)
        {
            return Err(Error::InvalidParameter(format!(
                "{side} representing sets must have even cardinality"
            )));
        }
    }
    if g.splitting_sets.len() != gp.splitting_sets.len() {
        return Err(Error::InvalidParameter(format!(
            "splitting-set counts must match ({} vs {})",
            g.splitting_sets.len(),
            gp.splitting_sets.len()
        )));
    }

    let stride = 1u64 << gpn;
    let product_edges = Ambient::cube(gn + gpn).edge_count();
    let left_order = sets_in_canonical_order(g);
    let right_order = sets_in_canonical_order(gp);

    let mut cycles: Vec<RepresentedCycle> = Vec::new();
    let mut splitting_sets: Vec<Vec<usize>> = Vec::new();
    let mut edge_total = 0u64;
    for (&li, &ri) in left_order.iter().zip(&right_order) {
        for subset in &g_subsets[li] {
            let mut hset = Vec::new();
            for &s in subset {
                for &t in &gp.splitting_sets[ri] {
                    let torus = anchored_product(
                        g.cycles[s].clone(),
                        gp.cycles[t].clone(),
                        stride,
                    )?;
                    edge_total += torus.edge_count();
                    let wig = k_wiggle_subdivided(&torus, 2)?;
                    let reps = repsets_subdivided(&torus, &wig)?;
                    for (walk, rep) in wig.lifted.into_iter().zip(reps) {
                        if rep.len() % 2 != 0 {
                            return Err(Error::Structure(
                                "combined representing sets must stay even".into(),
                            ));
                        }
                        hset.push(cycles.len());
                        cycles.push(RepresentedCycle::new(Cycle::new(walk), &rep)?);
                    }
                }
            }
            splitting_sets.push(hset);
        }
    }
    if edge_total != product_edges {
        return Err(Error::Structure(format!(
            "anchored products cover {edge_total} edges, product has {product_edges}"
        )));
    }

    Ok(SplitDecomposition {
        ambient: Ambient::cube(gn + gpn),
        cycles,
        splitting_sets,
        splitting_subsets: None,
        dr: false,
    })
}

/// Copy a DR-splittable decomposition of `G` into every horizontal and every
/// vertical copy of `G` inside `G [] G`: an (a|V|, b|V|)-DR-splittable
/// decomposition with unchanged cycle length and gaps.
pub fn self_product_copy(d: &SplitDecomposition) -> Result<SplitDecomposition> {
    let n = cube_dim(d)?;
    if !d.dr {
        return Err(Error::InvalidParameter(
            "self products require a DR-splittable input".into(),
        ));
    }
    let subsets = d.splitting_subsets.as_ref().ok_or_else(|| {
        Error::InvalidParameter("self products require splitting subsets".into())
    })?;
    let v = 1u64 << n;
    let cnt = d.cycles.len();

    let mut cycles: Vec<RepresentedCycle> = Vec::with_capacity(2 * v as usize * cnt);
    // horizontal copies: fixed high bits, the cycle runs in the low bits
    for u in 0..v {
        for rc in &d.cycles {
            let walk: Vec<Label> = rc
                .cycle()
                .vertices()
                .iter()
                .map(|&w| (u << n) | w)
                .collect();
            let reps: Vec<Label> = rc.rep_labels().iter().map(|&w| (u << n) | w).collect();
            cycles.push(RepresentedCycle::new(Cycle::new(walk), &reps)?);
        }
    }
    // vertical copies: the cycle runs in the high bits, fixed low bits
    for w0 in 0..v {
        for rc in &d.cycles {
            let walk: Vec<Label> = rc
                .cycle()
                .vertices()
                .iter()
                .map(|&w| (w << n) | w0)
                .collect();
            let reps: Vec<Label> = rc.rep_labels().iter().map(|&w| (w << n) | w0).collect();
            cycles.push(RepresentedCycle::new(Cycle::new(walk), &reps)?);
        }
    }

    let mut splitting_sets = Vec::with_capacity(2 * d.splitting_sets.len());
    let mut splitting_subsets = Vec::with_capacity(2 * d.splitting_sets.len());
    for block in 0..2u64 {
        let offset = (block * v) as usize * cnt;
        for (set, groups) in d.splitting_sets.iter().zip(subsets) {
            let image: Vec<usize> = (0..v as usize)
                .flat_map(|u| set.iter().map(move |&j| offset + u * cnt + j))
                .collect();
            splitting_sets.push(image);
            let image_groups: Vec<Vec<usize>> = groups
                .iter()
                .map(|grp| {
                    (0..v as usize)
                        .flat_map(|u| grp.iter().map(move |&j| offset + u * cnt + j))
                        .collect()
                })
                .collect();
            splitting_subsets.push(image_groups);
        }
    }

    Ok(SplitDecomposition {
        ambient: Ambient::cube(2 * n),
        cycles,
        splitting_sets,
        splitting_subsets: Some(splitting_subsets),
        dr: true,
    })
}

/// Cut every anchored product of each splitting set with itself into its
/// horizontal and vertical cycles, assigning representing sets by the proper
/// two-coloring of each underlying torus: a (2a|V|, b|V|)-DR-splittable
/// decomposition of `G [] G` with unchanged cycle length and doubled gaps.
/// Requires `|V|/a` even and greater than two.
pub fn self_product_grid(d: &SplitDecomposition) -> Result<SplitDecomposition> {
    let n = cube_dim(d)?;
    if !d.dr {
        return Err(Error::InvalidParameter(
            "self products require a DR-splittable input".into(),
        ));
    }
    let subsets = d.splitting_subsets.as_ref().ok_or_else(|| {
        Error::InvalidParameter("self products require splitting subsets".into())
    })?;
    let v = 1u64 << n;
    let a = d.a() as u64;
    if a == 0 || v % a != 0 {
        return Err(Error::InvalidParameter(
            "splitting-set size must divide the vertex count".into(),
        ));
    }
    let rep_size = v / a;
    if rep_size % 2 != 0 || rep_size <= 2 {
        return Err(Error::InvalidParameter(format!(
            "|V(G)|/a must be even and greater than two, got {rep_size}"
        )));
    }

    let mut cycles: Vec<RepresentedCycle> = Vec::new();
    let mut splitting_sets: Vec<Vec<usize>> = Vec::new();
    let mut splitting_subsets: Vec<Vec<Vec<usize>>> = Vec::new();

    for (set, groups) in d.splitting_sets.iter().zip(subsets) {
        let mut set_indices: Vec<usize> = Vec::new();
        // horizontal cycles generated by each right-hand cycle t, and
        // vertical cycles generated by each left-hand cycle s
        let mut horiz_by_t: Vec<Vec<usize>> = vec![Vec::new(); set.len()];
        let mut vert_by_s: Vec<Vec<usize>> = vec![Vec::new(); set.len()];
        for (s_pos, &s) in set.iter().enumerate() {
            for (t_pos, &t) in set.iter().enumerate() {
                let left = &d.cycles[s];
                let right = &d.cycles[t];
                let s_labels = left.rep_labels();
                let t_labels = right.rep_labels();
                // horizontal cycles: one copy of the right cycle per row of S_s
                for (r_idx, &u) in s_labels.iter().enumerate() {
                    let walk: Vec<Label> = right
                        .cycle()
                        .vertices()
                        .iter()
                        .map(|&w| (u << n) | w)
                        .collect();
                    let reps: Vec<Label> = t_labels
                        .iter()
                        .enumerate()
                        .filter(|(c_idx, _)| (r_idx + c_idx) % 2 == 0)
                        .map(|(_, &w)| (u << n) | w)
                        .collect();
                    horiz_by_t[t_pos].push(cycles.len());
                    set_indices.push(cycles.len());
                    cycles.push(RepresentedCycle::new(Cycle::new(walk), &reps)?);
                }
                // vertical cycles: one copy of the left cycle per column of S_t
                for (c_idx, &w0) in t_labels.iter().enumerate() {
                    let walk: Vec<Label> = left
                        .cycle()
                        .vertices()
                        .iter()
                        .map(|&w| (w << n) | w0)
                        .collect();
                    let reps: Vec<Label> = s_labels
                        .iter()
                        .enumerate()
                        .filter(|(r_idx, _)| (r_idx + c_idx) % 2 == 1)
                        .map(|(_, &w)| (w << n) | w0)
                        .collect();
                    vert_by_s[s_pos].push(cycles.len());
                    set_indices.push(cycles.len());
                    cycles.push(RepresentedCycle::new(Cycle::new(walk), &reps)?);
                }
            }
        }
        // subsets: all vertical cycles whose generating s lies in a splitting
        // subset, and all horizontal cycles whose generating t does
        let pos_of: std::collections::HashMap<usize, usize> =
            set.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let mut groups_out: Vec<Vec<usize>> = Vec::new();
        for grp in groups {
            let vertical: Vec<usize> = grp
                .iter()
                .flat_map(|&s| vert_by_s[pos_of[&s]].iter().copied())
                .collect();
            groups_out.push(vertical);
        }
        for grp in groups {
            let horizontal: Vec<usize> = grp
                .iter()
                .flat_map(|&t| horiz_by_t[pos_of[&t]].iter().copied())
                .collect();
            groups_out.push(horizontal);
        }
        splitting_sets.push(set_indices);
        splitting_subsets.push(groups_out);
    }

    Ok(SplitDecomposition {
        ambient: Ambient::cube(2 * n),
        cycles,
        splitting_sets,
        splitting_subsets: Some(splitting_subsets),
        dr: true,
    })
}
