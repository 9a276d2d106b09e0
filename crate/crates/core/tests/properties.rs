use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use proptest::sample::subsequence;

use topoglyph_core::arrangements::{decode, encode, enumerate_classes, Endpoint, PerimetricOrder};
use topoglyph_core::bounds::{adjacent_edge_pairs, inverse_ackermann};
use topoglyph_core::chords::{crossings, sawtooth_decode, sawtooth_encode, ChordDiagram};
use topoglyph_core::drawings::{from_integer_points, is_isomorphic, spanning_tree, t_representation, Drawing};
use topoglyph_core::graph::{Label, SimpleGraph};
use topoglyph_core::rotsys::{crossing_pairs_complete, is_good, triple_type, CyclicPerm, RotationSystem};
use topoglyph_core::search::{restriction, Permutation};

fn points(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-40i64..40, -40i64..40), n)
}

fn complete_edges(n: usize) -> Vec<[Label; 2]> {
    let n = n as Label;
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| [i, j])).collect()
}

fn straight_complete() -> impl Strategy<Value = Drawing> {
    (4usize..=7)
        .prop_flat_map(points)
        .prop_filter_map("degenerate point set", |pts| from_integer_points(&pts, &complete_edges(pts.len())).ok())
}

fn rotation_system(n: usize) -> impl Strategy<Value = RotationSystem> {
    let rows: Vec<_> = (1..=n as Label)
        .map(|v| Just((1..=n as Label).filter(|&w| w != v).collect::<Vec<_>>()).prop_shuffle())
        .collect();
    rows.prop_map(|rows| {
        let rot: BTreeMap<Label, CyclicPerm> =
            rows.into_iter().enumerate().map(|(i, r)| (i as Label + 1, CyclicPerm::new(r).unwrap())).collect();
        RotationSystem::new(rot).unwrap()
    })
}

fn perfect_matching(n: usize) -> impl Strategy<Value = ChordDiagram> {
    Just((1..=2 * n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|p| ChordDiagram::new(p.chunks(2).map(|c| (c[0], c[1])).collect()).unwrap())
}

fn perimetric_order(n: usize) -> impl Strategy<Value = PerimetricOrder> {
    let ends: Vec<Endpoint> = (1..=n as u32).flat_map(|i| [Endpoint::a(i), Endpoint::b(i)]).collect();
    (Just(ends).prop_shuffle(), 0..2 * n).prop_map(|(seq, cut)| PerimetricOrder::new(seq, cut).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn straight_line_crossings_follow_from_rotations(d in straight_complete()) {
        let rs = d.rotation_system().unwrap();
        prop_assert!(is_good(&rs).unwrap());
        prop_assert_eq!(crossing_pairs_complete(&rs).unwrap(), d.crossing_pairs());
        prop_assert!(is_isomorphic(&d, &d.mirror()).unwrap());
    }

    #[test]
    fn complete_drawings_survive_the_representation(d in straight_complete()) {
        let tree = spanning_tree(&d).unwrap();
        prop_assert!(tree.node_count() <= 2 * d.graph.order());
        let rep = t_representation(&d, &tree).unwrap();
        prop_assert_eq!(rep.polygon_size, 2 * tree.node_count() - 2);
        prop_assert_eq!(rep.reconstructed_pairs(), d.crossing_pairs());
    }

    #[test]
    fn sparse_drawings_survive_the_representation(
        (pts, edges) in (3usize..=6).prop_flat_map(|n| (points(n), subsequence(complete_edges(n), 0..=8.min(n * (n - 1) / 2))))
    ) {
        let Ok(d) = from_integer_points(&pts, &edges) else { return Ok(()) };
        prop_assert!(d.validate().is_ok());
        for (v, e, f) in d.euler_counts().unwrap() {
            prop_assert_eq!(v + f, e + 2);
        }
        if let Ok(tree) = spanning_tree(&d) {
            prop_assert!(tree.node_count() <= 2 * d.graph.order());
            let rep = t_representation(&d, &tree).unwrap();
            prop_assert_eq!(rep.reconstructed_pairs(), d.crossing_pairs());
        }
    }

    #[test]
    fn good_systems_have_odd_triple_types(d in straight_complete()) {
        let rs = d.rotation_system().unwrap();
        let n = rs.size() as Label;
        for i in 2..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    if let Err(e) = triple_type(&rs, 1, [i, j, k]) {
                        prop_assert!(e.to_string().contains("negative"), "{}", e);
                    }
                }
            }
        }
    }

    #[test]
    fn restrict_is_transitive(rs in (4usize..=7).prop_flat_map(rotation_system), seed in any::<u64>()) {
        let ground = rs.ground();
        let w: Vec<Label> = ground.iter().copied().filter(|v| (seed >> v) & 1 == 1 || *v <= 3).collect();
        let u: Vec<Label> = w.iter().copied().filter(|v| (seed >> (v + 16)) & 1 == 1 || *v <= 3).collect();
        prop_assert_eq!(rs.restrict(&w).unwrap().restrict(&u).unwrap(), rs.restrict(&u).unwrap());
    }

    #[test]
    fn restriction_composes(
        (pi, a, b) in (3usize..=9).prop_flat_map(|n| {
            (Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle(), subsequence((1..=n).collect::<Vec<_>>(), 1..=n))
        }).prop_flat_map(|(pi, a)| {
            let k = a.len();
            (Just(pi), Just(a), subsequence((1..=k).collect::<Vec<_>>(), 1..=k))
        })
    ) {
        let pi = Permutation::new(pi).unwrap();
        let inner = restriction(&restriction(&pi, &a).unwrap(), &b).unwrap();
        let composed: Vec<usize> = b.iter().map(|&i| a[i - 1]).collect();
        prop_assert_eq!(inner, restriction(&pi, &composed).unwrap());
    }

    #[test]
    fn sawtooth_round_trip(d in (1usize..=9).prop_flat_map(perfect_matching)) {
        let code = sawtooth_encode(&d);
        prop_assert_eq!(code.kappa.iter().map(|&k| k as usize).sum::<usize>(), crossings(&d));
        prop_assert_eq!(sawtooth_decode(&code).unwrap(), d);
    }

    #[test]
    fn arrangement_codes_round_trip(order in (1usize..=4).prop_flat_map(perimetric_order)) {
        let classes = enumerate_classes(&order, 4).unwrap();
        prop_assert!(!classes.is_empty());
        prop_assert!(classes.len() <= 1 << (2 * order.crossing_pairs().len()));
        let mut codes = BTreeSet::new();
        for a in &classes {
            let code = encode(a);
            let back = decode(&order, &code);
            prop_assert_eq!(back.as_ref(), Ok(a));
            prop_assert!(codes.insert(code));
        }
    }

    #[test]
    fn adjacent_pairs_match_brute_force(
        (n, edges) in (2usize..=12).prop_flat_map(|n| (Just(n), subsequence(complete_edges(n), 0..=n * (n - 1) / 2)))
    ) {
        let g = SimpleGraph::with_order(n as u32, edges.iter().copied()).unwrap();
        let list: Vec<_> = g.edges().iter().collect();
        let mut brute = 0u64;
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                if list[i].is_adjacent(list[j]) {
                    brute += 1;
                }
            }
        }
        prop_assert_eq!(adjacent_edge_pairs(&g).to_u64(), Some(brute));
    }

    #[test]
    fn inverse_ackermann_is_monotone(m in 1u64..u64::MAX) {
        let (a, b) = (inverse_ackermann(m).unwrap(), inverse_ackermann(m.saturating_add(1)).unwrap());
        prop_assert!(a <= b && b <= 5);
        prop_assert_eq!(b <= 4, m < 65536);
    }
}
