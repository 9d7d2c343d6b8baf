//! Wide-range cross-check of the assembled wiggle cycles against the
//! independent per-edge classifier: exhaustive on small tori, spot-checked at
//! the ten-thousand-vertex scale. Because production cycles are built by
//! translating the first one, agreement here is also what certifies the
//! translation-invariance of the edge classes.

use cubedec::torus::{allows_k_wiggle, WiggleParams};
use cubedec::verify::wiggle_equivalence;

#[test]
fn exhaustive_small_tori() {
    let mut checked = 0u32;
    for n_len in 2..=44u64 {
        for m_len in 2..=(2000 / n_len) {
            for k in 2..=n_len {
                if !allows_k_wiggle(&WiggleParams { k, n_len, m_len }) {
                    continue;
                }
                assert!(
                    wiggle_equivalence(n_len, m_len, k).unwrap(),
                    "mismatch at {n_len} x {m_len}, k = {k}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 1000, "sweep too small: {checked}");
}

#[test]
fn boundary_scale_tori() {
    for (n_len, m_len, k) in [
        (100u64, 100u64, 2u64),
        (100, 100, 4),
        (96, 104, 4),
        (99, 101, 3),
        (100, 2, 2),
    ] {
        assert!(
            wiggle_equivalence(n_len, m_len, k).unwrap(),
            "mismatch at {n_len} x {m_len}, k = {k}"
        );
    }
}
