//! The transcribed Q_4 certificates must verify exactly, and tampered
//! variants must be rejected with the right violation.

mod common;

use cubedec::cycles::{Cycle, RepresentedCycle};
use cubedec::deco::{check_dr, check_structure, Violation};
use cubedec::verify::verify_certificate;

#[test]
fn two_sixteen_cycles_certificate_holds() {
    let d = common::q4_two_sixteen_cycles();
    let report = verify_certificate(&d, 1).unwrap();
    assert_eq!(report.pieces, 2);
    assert_eq!(report.length, 16);
    assert_eq!(d.a(), 2);
    assert_eq!(d.b(), Some(1));
    for rc in &d.cycles {
        assert_eq!(rc.representing_gaps().unwrap(), vec![2; 8]);
    }
}

#[test]
fn four_eight_cycles_certificate_holds() {
    let d = common::q4_four_eight_cycles();
    let report = verify_certificate(&d, 1).unwrap();
    assert_eq!(report.pieces, 4);
    assert_eq!(report.length, 8);
    assert_eq!(d.a(), 4);
    assert_eq!(d.b(), Some(2));
    assert!(check_dr(&d).is_empty());
}

#[test]
fn duplicated_representing_set_rejected() {
    let mut d = common::q4_two_sixteen_cycles();
    let s1 = d.cycles[0].rep_labels();
    // move cycle 2's representing set onto cycle 1's vertices: both cycles
    // are Hamiltonian so the labels all lie on cycle 2 as well
    d.cycles[1] = RepresentedCycle::new(d.cycles[1].cycle().clone(), &s1).unwrap();
    let vs = check_structure(&d);
    assert!(vs.iter().any(|v| matches!(v, Violation::RepOverlap { .. })));
}

#[test]
fn broken_subset_rejected() {
    let mut d = common::q4_four_eight_cycles();
    // pair vertex-overlapping cycles instead
    d.splitting_subsets = Some(vec![vec![vec![0, 2], vec![1, 3]]]);
    let vs = check_structure(&d);
    assert!(vs
        .iter()
        .any(|v| matches!(v, Violation::SubsetNotDisjoint { .. })));
}

#[test]
fn unbalanced_gaps_rejected() {
    let mut d = common::q4_two_sixteen_cycles();
    let walk = d.cycles[0].cycle().vertices().to_vec();
    let lopsided: Vec<u64> = vec![walk[0], walk[1], walk[4], walk[6], walk[8], walk[10], walk[12], walk[14]];
    d.cycles[0] = RepresentedCycle::new(Cycle::new(walk), &lopsided).unwrap();
    assert!(!d.cycles[0].is_distance_regular());
    let vs = check_dr(&d);
    assert!(vs
        .iter()
        .any(|v| matches!(v, Violation::NotDistanceRegular { cycle: 0 })));
}

#[test]
fn dropped_cycle_fails_graph_check() {
    let mut d = common::q4_four_eight_cycles();
    d.cycles.pop();
    d.splitting_sets = vec![vec![0, 1, 2]];
    d.splitting_subsets = None;
    assert!(verify_certificate(&d, 1).is_err());
}

mod builds_on_fixtures {
    //! The product machinery applied to the transcribed certificates
    //! themselves: exactly the two textbook Q_6 constructions.

    use super::common;
    use cubedec::compose::{combine_splittable, product_by_anchoring};
    use cubedec::construct::{base_hamiltonian, BaseProvider};
    use cubedec::verify::verify_certificate;

    #[test]
    fn two_sixteen_cycles_times_square_covers_q6() {
        let left = common::q4_two_sixteen_cycles();
        let right = base_hamiltonian(1, &BaseProvider::trivial_only()).unwrap();
        let tori = product_by_anchoring(&left.cycles, &right.cycles, 16, 4, 4).unwrap();
        assert_eq!(tori.len(), 2);
        assert_eq!(tori.iter().map(|t| t.edge_count()).sum::<u64>(), 192);

        let d = combine_splittable(&left, &right).unwrap();
        assert_eq!(d.cycles.len(), 4);
        assert_eq!(d.cycle_length(), 48);
        assert_eq!(d.a(), 2);
        verify_certificate(&d, 1).unwrap();
    }

    #[test]
    fn four_eight_cycles_times_square_covers_q6() {
        let left = common::q4_four_eight_cycles();
        let right = base_hamiltonian(1, &BaseProvider::trivial_only()).unwrap();
        let tori = product_by_anchoring(&left.cycles, &right.cycles, 16, 4, 4).unwrap();
        assert_eq!(tori.len(), 4);
        assert_eq!(tori.iter().map(|t| t.edge_count()).sum::<u64>(), 192);

        let d = combine_splittable(&left, &right).unwrap();
        assert_eq!(d.cycles.len(), 8);
        assert_eq!(d.cycle_length(), 24);
        assert_eq!(d.a(), 4);
        verify_certificate(&d, 1).unwrap();
    }
}
