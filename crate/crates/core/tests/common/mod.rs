//! Shared test fixtures: two hand-checked splittable decompositions of Q_4
//! with explicit representing sets, used as ground truth across the suites.

use cubedec::cube::Label;
use cubedec::cycles::{Cycle, RepresentedCycle};
use cubedec::deco::{Ambient, SplitDecomposition};

fn rc(walk: &[Label], reps: &[Label]) -> RepresentedCycle {
    RepresentedCycle::new(Cycle::new(walk.to_vec()), reps).unwrap()
}

/// Q_4 as two Hamiltonian 16-cycles whose representing sets alternate with
/// gaps of two: a (2,1)-DR-splittable decomposition.
pub fn q4_two_sixteen_cycles() -> SplitDecomposition {
    let c1 = [
        0b0000, 0b0100, 0b0101, 0b0001, 0b0011, 0b0111, 0b0110, 0b1110, 0b1100, 0b1000, 0b1001,
        0b1101, 0b1111, 0b1011, 0b1010, 0b0010,
    ];
    let c2 = [
        0b0000, 0b0001, 0b1001, 0b1011, 0b0011, 0b0010, 0b0110, 0b0100, 0b1100, 0b1101, 0b0101,
        0b0111, 0b1111, 0b1110, 0b1010, 0b1000,
    ];
    let s1 = [0b0000, 0b0101, 0b0011, 0b0110, 0b1100, 0b1001, 0b1111, 0b1010];
    let s2 = [0b0001, 0b1011, 0b0010, 0b0100, 0b1101, 0b0111, 0b1110, 0b1000];
    SplitDecomposition {
        ambient: Ambient::cube(4),
        cycles: vec![rc(&c1, &s1), rc(&c2, &s2)],
        splitting_sets: vec![vec![0, 1]],
        splitting_subsets: Some(vec![vec![vec![0], vec![1]]]),
        dr: true,
    }
}

/// Q_4 as four 8-cycles in one splitting set, with splitting subsets pairing
/// the first two and last two cycles: a (4,2)-DR-splittable decomposition.
pub fn q4_four_eight_cycles() -> SplitDecomposition {
    let c1 = [0b0000, 0b0100, 0b0101, 0b1101, 0b1111, 0b1011, 0b1010, 0b0010];
    let c2 = [0b1100, 0b1000, 0b1001, 0b0001, 0b0011, 0b0111, 0b0110, 0b1110];
    let c3 = [0b0100, 0b1100, 0b1101, 0b1001, 0b1011, 0b0011, 0b0010, 0b0110];
    let c4 = [0b1000, 0b0000, 0b0001, 0b0101, 0b0111, 0b1111, 0b1110, 0b1010];
    let s1 = [0b0000, 0b0101, 0b1111, 0b1010];
    let s2 = [0b1100, 0b1001, 0b0011, 0b0110];
    let s3 = [0b0100, 0b1101, 0b1011, 0b0010];
    let s4 = [0b1000, 0b0001, 0b0111, 0b1110];
    SplitDecomposition {
        ambient: Ambient::cube(4),
        cycles: vec![rc(&c1, &s1), rc(&c2, &s2), rc(&c3, &s3), rc(&c4, &s4)],
        splitting_sets: vec![vec![0, 1, 2, 3]],
        splitting_subsets: Some(vec![vec![vec![0, 1], vec![2, 3]]]),
        dr: true,
    }
}
