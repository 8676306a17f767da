use proptest::prelude::*;
use qkm::algebra::{Coeff, ExactScalar};
use qkm::enumeration::{enumerate_vacuum, perfect_matchings, quadrangulation_counts, CountKind, RibbonGraph};
use qkm::freenergy::f1;
use qkm::spectral::SpectralInput;

type E = ExactScalar;

fn genus_one_matches_f1(inp: &SpectralInput) {
    let f = f1(inp, 2).unwrap().series;
    for v in 1..=2 {
        let w = enumerate_vacuum(v, inp).unwrap().weight(1);
        assert_eq!(w, f.coeff(v as i64).unwrap(), "v = {v}");
    }
}

#[test]
fn graph_weights_match_f1_at_d2() {
    genus_one_matches_f1(&SpectralInput::from_ratios(&[(1, 2, 1), (1, 3, 2)], 4));
    genus_one_matches_f1(&SpectralInput::from_ratios(&[(3, 2, 2), (1, 1, 3)], 4));
}

#[test]
fn graph_weights_match_f1_at_d3() {
    genus_one_matches_f1(&SpectralInput::from_ratios(&[(1, 2, 1), (1, 3, 1), (2, 5, 2)], 4));
}

#[test]
fn three_vertices_at_d1() {
    let en = enumerate_vacuum(3, &SpectralInput::default()).unwrap();
    assert_eq!(en.matchings, 10395);
    assert_eq!(en.weight(1), E::ratio(-33, 2));
    // Bipartite genus-two quadrangulations correspond to genus-two maps
    // with three edges, and there are none.
    assert_eq!(en.by_genus[&2].bipartite_count, 0);
    // Bipartite genus-one part: 20 rooted maps over 4v = 12 rootings.
    assert_eq!(en.by_genus[&1].bipartite_weight, E::ratio(-20, 12));
}

#[test]
fn planar_series_at_d1() {
    // Rooted planar quadrangulations 2·3ⁿ(2n)!/(n!(n+2)!), divided by 4n.
    let rooted = [2i64, 9, 54];
    for (v, &q) in (1..=3).zip(&rooted) {
        let w = enumerate_vacuum(v, &SpectralInput::default()).unwrap().weight(0);
        let sign = if v % 2 == 0 { 1 } else { -1 };
        assert_eq!(w, E::ratio(sign * q, 4 * v as i64));
    }
}

#[test]
fn counts_agree_with_enumeration() {
    for v in 1..=3usize {
        let w = enumerate_vacuum(v, &SpectralInput::default()).unwrap().weight(1);
        let c = quadrangulation_counts(CountKind::F1Series, v as u64).unwrap();
        let sign = if v % 2 == 0 { 1 } else { -1 };
        assert_eq!(w, c.scale(&E::from_int(sign)));
    }
}

proptest! {
    #[test]
    fn euler_relation(idx in 0usize..105) {
        let m = perfect_matchings(8)[idx].clone();
        let g = RibbonGraph { v: 2, matching: m };
        prop_assume!(g.connected());
        let f = g.faces();
        prop_assert!(f >= 1);
        prop_assert_eq!((2 + 2 - f) % 2, 0);
        if g.bipartite() {
            prop_assert!(g.edge_faces().iter().all(|(a, b)| a != b));
        }
    }

    #[test]
    fn weight_is_symmetric(p1 in 1i64..6, q1 in 1i64..6, p2 in 1i64..6, q2 in 1i64..6, r1 in 1u32..3, r2 in 1u32..3) {
        prop_assume!(p1 * q2 != p2 * q1);
        let a = SpectralInput::from_ratios(&[(p1, q1, r1), (p2, q2, r2)], 3);
        let b = SpectralInput::from_ratios(&[(p2, q2, r2), (p1, q1, r1)], 3);
        let wa = enumerate_vacuum(2, &a).unwrap();
        let wb = enumerate_vacuum(2, &b).unwrap();
        for g in 0..=1 {
            prop_assert_eq!(wa.weight(g), wb.weight(g));
        }
    }
}
