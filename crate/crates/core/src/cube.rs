//! Bit-labeled hypercube graphs.
//!
//! Vertices of `Q_n` are the integers `0..2^n`; bit `d` is coordinate `d`
//! (bit 0 least significant). Two vertices are adjacent when they differ in
//! exactly one bit. Product labels concatenate the left factor into the high
//! bits, so `Q_p [] Q_r ~ Q_{p+r}` via `left * 2^r + right`; this one
//! convention is used by every recursive construction in the crate.

use crate::error::{Error, Result};

/// A vertex of some `Q_n`, as an n-bit integer.
pub type Label = u64;

/// The n-dimensional hypercube.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CubeSpec {
    n: u32,
}

impl CubeSpec {
    /// Largest dimension whose edge count fits comfortably in a `u64`.
    pub const MAX_DIM: u32 = 57;

    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > Self::MAX_DIM {
            return Err(Error::InvalidParameter(format!(
                "cube dimension must be in 1..={}, got {n}",
                Self::MAX_DIM
            )));
        }
        Ok(CubeSpec { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertex_count(&self) -> u64 {
        1u64 << self.n
    }

    pub fn edge_count(&self) -> u64 {
        (self.n as u64) << (self.n - 1)
    }

    pub fn contains(&self, v: Label) -> bool {
        v < self.vertex_count()
    }
}

/// Edge count of `Q_n`, which is `n * 2^(n-1)`.
pub fn edge_count(spec: CubeSpec) -> u64 {
    spec.edge_count()
}

/// An edge of `Q_n` in canonical form: `endpoint` has bit `dimension` clear,
/// the other endpoint is `endpoint ^ (1 << dimension)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeEdge {
    pub endpoint: Label,
    pub dimension: u32,
}

impl CubeEdge {
    /// Canonical edge between two labels differing in exactly one bit.
    pub fn between(u: Label, v: Label) -> Result<CubeEdge> {
        let diff = u ^ v;
        if diff == 0 || !diff.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "{u:#x} and {v:#x} are not adjacent in any cube"
            )));
        }
        let dimension = diff.trailing_zeros();
        Ok(CubeEdge {
            endpoint: u & !diff,
            dimension,
        })
    }

    pub fn other(&self) -> Label {
        self.endpoint ^ (1u64 << self.dimension)
    }

    /// Perfect index: dimension-major, then rank of `endpoint` among vertices
    /// with bit `dimension` clear. Range `0..n*2^(n-1)`.
    pub fn index(&self, n: u32) -> u64 {
        let d = self.dimension;
        let low = self.endpoint & ((1u64 << d) - 1);
        let high = (self.endpoint >> (d + 1)) << d;
        (d as u64) * (1u64 << (n - 1)) + (high | low)
    }

    pub fn from_index(n: u32, idx: u64) -> CubeEdge {
        let per_dim = 1u64 << (n - 1);
        let dimension = (idx / per_dim) as u32;
        let rank = idx % per_dim;
        let low = rank & ((1u64 << dimension) - 1);
        let high = (rank >> dimension) << (dimension + 1);
        CubeEdge {
            endpoint: high | low,
            dimension,
        }
    }
}

/// Concatenate a `Q_p` label (high bits) with a `Q_r` label (low bits),
/// giving the `Q_{p+r}` label `left * 2^r + right`.
pub fn concat_label(left: Label, left_dim: u32, right: Label, right_dim: u32) -> Result<Label> {
    if left_dim + right_dim > CubeSpec::MAX_DIM {
        return Err(Error::DimensionOverflow(format!(
            "concatenation of {left_dim}+{right_dim} bits exceeds {} ",
            CubeSpec::MAX_DIM
        )));
    }
    if left >= 1u64 << left_dim || right >= 1u64 << right_dim {
        return Err(Error::InvalidParameter(
            "label does not fit its declared dimension".into(),
        ));
    }
    Ok((left << right_dim) | right)
}

/// Inverse of [`concat_label`]: split off the low `right_dim` bits.
pub fn split_label(v: Label, right_dim: u32) -> (Label, Label) {
    (v >> right_dim, v & ((1u64 << right_dim) - 1))
}

/// Stream every edge of `Q_n` exactly once, in canonical form,
/// dimension-major then endpoint ascending. This order coincides with
/// ascending [`CubeEdge::index`].
pub fn enumerate_edges(spec: CubeSpec) -> impl Iterator<Item = CubeEdge> {
    let n = spec.n();
    (0..n).flat_map(move |d| {
        (0..1u64 << (n - 1)).map(move |rank| {
            let low = rank & ((1u64 << d) - 1);
            let high = (rank >> d) << (d + 1);
            CubeEdge {
                endpoint: high | low,
                dimension: d,
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn edge_counts() {
        assert_eq!(edge_count(CubeSpec::new(2).unwrap()), 4);
        assert_eq!(edge_count(CubeSpec::new(14).unwrap()), 114_688);
        assert_eq!(edge_count(CubeSpec::new(30).unwrap()), 30 * (1u64 << 29));
    }

    #[test]
    fn concat_examples() {
        // 01 ++ 10 = 0110
        assert_eq!(concat_label(0b01, 2, 0b10, 2).unwrap(), 0b0110);
        assert_eq!(concat_label(0, 1, 0, 1).unwrap(), 0b00);
        assert_eq!(concat_label(0b1111, 4, 0b00, 2).unwrap(), 0b111100);
        assert!(concat_label(0b100, 2, 0, 1).is_err());
    }

    #[test]
    fn split_inverts_concat() {
        for left in 0..8u64 {
            for right in 0..4u64 {
                let v = concat_label(left, 3, right, 2).unwrap();
                assert_eq!(split_label(v, 2), (left, right));
            }
        }
    }

    #[test]
    fn enumerate_small() {
        let spec = CubeSpec::new(1).unwrap();
        let edges: Vec<_> = enumerate_edges(spec).collect();
        assert_eq!(
            edges,
            vec![CubeEdge {
                endpoint: 0,
                dimension: 0
            }]
        );

        let spec = CubeSpec::new(2).unwrap();
        let edges: Vec<_> = enumerate_edges(spec).collect();
        assert_eq!(edges.len(), 4);
        let mut degree: HashMap<Label, u32> = HashMap::new();
        for e in &edges {
            *degree.entry(e.endpoint).or_default() += 1;
            *degree.entry(e.other()).or_default() += 1;
        }
        assert!(degree.values().all(|&d| d == 2));
    }

    #[test]
    fn enumerate_q6_matches_count_and_degrees() {
        let spec = CubeSpec::new(6).unwrap();
        let mut degree = vec![0u32; 64];
        let mut count = 0u64;
        for e in enumerate_edges(spec) {
            degree[e.endpoint as usize] += 1;
            degree[e.other() as usize] += 1;
            count += 1;
        }
        assert_eq!(count, 192);
        assert!(degree.iter().all(|&d| d == 6));
    }

    #[test]
    fn degrees_match_dimension() {
        for n in (1..=10).chain([14, 20]) {
            let spec = CubeSpec::new(n).unwrap();
            let mut degree = vec![0u8; spec.vertex_count() as usize];
            let mut count = 0u64;
            for e in enumerate_edges(spec) {
                degree[e.endpoint as usize] += 1;
                degree[e.other() as usize] += 1;
                count += 1;
            }
            assert_eq!(count, spec.edge_count());
            assert!(degree.iter().all(|&d| d as u32 == n));
        }
    }

    #[test]
    fn edge_index_is_a_bijection() {
        for n in [1u32, 3, 5] {
            let spec = CubeSpec::new(n).unwrap();
            let mut seen = vec![false; spec.edge_count() as usize];
            for (pos, e) in enumerate_edges(spec).enumerate() {
                let idx = e.index(n);
                assert_eq!(idx, pos as u64);
                assert!(!seen[idx as usize]);
                seen[idx as usize] = true;
                assert_eq!(CubeEdge::from_index(n, idx), e);
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn between_canonicalizes() {
        let e = CubeEdge::between(0b0110, 0b0010).unwrap();
        assert_eq!(e.endpoint, 0b0010);
        assert_eq!(e.dimension, 2);
        assert_eq!(e.other(), 0b0110);
        assert!(CubeEdge::between(0b00, 0b11).is_err());
        assert!(CubeEdge::between(5, 5).is_err());
    }
}
