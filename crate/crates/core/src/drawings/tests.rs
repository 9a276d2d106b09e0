use super::*;
use crate::rotsys::{classify_quadruple, crossing_pairs_complete, QuadrupleTag};

fn complete_edges(n: Label) -> Vec<[Label; 2]> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| [i, j])).collect()
}

fn convex_k4() -> Drawing {
    from_integer_points(&[(0, 0), (2, 0), (2, 2), (0, 2)], &complete_edges(4)).unwrap()
}

fn pair(a: [Label; 2], b: [Label; 2]) -> EdgePair {
    EdgePair::new(Edge::new(a[0], a[1]), Edge::new(b[0], b[1]))
}

#[test]
fn convex_k4_counts() {
    let d = convex_k4();
    assert!(d.diagnostics().is_empty());
    assert_eq!(d.euler_counts().unwrap(), vec![(5, 8, 5)]);
    assert_eq!(d.crossing_pairs(), [pair([1, 3], [2, 4])].into());
}

#[test]
fn triangle_counts() {
    let d = from_integer_points(&[(0, 0), (3, 0), (0, 3)], &complete_edges(3)).unwrap();
    assert_eq!(d.euler_counts().unwrap(), vec![(3, 3, 2)]);
}

#[test]
fn one_sided_crossing_is_reported() {
    let mut d = convex_k4();
    d.edge_crossings.remove(&Edge::new(2, 4));
    let diags = d.diagnostics();
    assert!(diags.iter().any(|x| matches!(x, Diagnostic::Asymmetric { .. })), "{diags:?}");
    assert!(d.validate().is_err());
}

#[test]
fn rotation_at_crossing_must_alternate() {
    let mut d = convex_k4();
    let p = pair([1, 3], [2, 4]);
    let r = d.crossing_rotations.get_mut(&p).unwrap();
    r.swap(1, 2);
    assert!(d.diagnostics().contains(&Diagnostic::BadCrossingRotation { pair: p }));
}

#[test]
fn convex_quadrilateral_sign_pattern() {
    let d = convex_k4();
    let rs = d.rotation_system().unwrap();
    let class = classify_quadruple(&rs).unwrap();
    assert_eq!(class.tag, QuadrupleTag::H3);
    assert_eq!(class.crossing_pair, Some(pair([1, 3], [2, 4])));
    assert_eq!(QuadrupleTag::H3.system().unwrap(), rs);
    let m = classify_quadruple(&d.mirror().rotation_system().unwrap()).unwrap();
    assert_eq!(m.tag, QuadrupleTag::H3R);
}

#[test]
fn point_sets_agree_with_the_table() {
    let grid: Vec<(i64, i64)> = (0..4).flat_map(|x| (0..4).map(move |y| (x, y))).collect();
    let mut tags = std::collections::BTreeSet::new();
    for a in 0..grid.len() {
        for b in 0..grid.len() {
            for c in 0..grid.len() {
                let (pa, pb, pc) = (grid[a], grid[b], grid[c]);
                let pts = [(0, 0), pa, pb, pc];
                let Ok(d) = from_integer_points(&pts, &complete_edges(4)) else { continue };
                let rs = d.rotation_system().unwrap();
                let class = classify_quadruple(&rs).unwrap();
                assert_eq!(class.tag.system().as_ref(), Some(&rs));
                let expected: BTreeSet<EdgePair> = class.crossing_pair.into_iter().collect();
                assert_eq!(d.crossing_pairs(), expected, "{pts:?}");
                assert_eq!(crossing_pairs_complete(&rs).unwrap(), expected);
                tags.insert(class.tag);
            }
        }
    }
    assert_eq!(tags.len(), 8);
}

#[test]
fn convex_pentagon_has_five_crossings() {
    let d = from_integer_points(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)], &complete_edges(5)).unwrap();
    assert_eq!(d.crossing_pairs().len(), 5);
    assert_eq!(d.euler_counts().unwrap(), vec![(10, 20, 12)]);
}

#[test]
fn mirror_images_are_isomorphic() {
    let d = convex_k4();
    assert!(is_isomorphic(&d, &d.mirror()).unwrap());
    let inner = from_integer_points(&[(0, 0), (6, 0), (0, 6), (1, 1)], &complete_edges(4)).unwrap();
    assert!(inner.crossing_pairs().is_empty());
    assert!(!weak_iso(&d, &inner).unwrap());
    assert!(!is_isomorphic(&d, &inner).unwrap());
}

#[test]
fn json_round_trip() {
    let d = convex_k4();
    let text = serde_json::to_string(&d).unwrap();
    let back: Drawing = serde_json::from_str(&text).unwrap();
    assert_eq!(back, d);
}

#[test]
fn nested_triangles_need_a_face_structure() {
    let edges = [[1, 2], [2, 3], [1, 3], [4, 5], [5, 6], [4, 6]];
    let d = from_integer_points(&[(0, 0), (9, 0), (0, 9), (1, 1), (3, 1), (1, 3)], &edges).unwrap();
    assert_eq!(d.topological_components().len(), 2);
    let fs = d.face_structure.clone().expect("nested components");
    assert_eq!(fs.0.len(), 1);
    assert_eq!(fs.0[0].len(), 2);
    assert!(d.validate().is_ok());
    let mut bare = d.clone();
    bare.face_structure = None;
    assert!(bare.diagnostics().contains(&Diagnostic::MissingFaceStructure));

    let apart = from_integer_points(&[(0, 0), (2, 0), (0, 2), (10, 10), (12, 10), (10, 12)], &edges).unwrap();
    assert!(!is_isomorphic(&d, &apart).unwrap());
    assert!(matches!(spanning_tree(&d), Err(DrawingError::NotTopologicallyConnected)));
}

#[test]
fn crossing_triangles_form_one_component() {
    let edges = [[1, 2], [2, 3], [1, 3], [4, 5], [5, 6], [4, 6]];
    let d = from_integer_points(&[(0, 0), (6, 0), (0, 6), (1, 1), (7, 1), (1, 7)], &edges).unwrap();
    assert_eq!(d.topological_components().len(), 1);
    assert!(d.face_structure.is_none());
    assert!(d.validate().is_ok());
    let tree = spanning_tree(&d).unwrap();
    let rep = t_representation(&d, &tree).unwrap();
    assert_eq!(rep.reconstructed_pairs(), d.crossing_pairs());
}

#[test]
fn tree_of_a_plane_drawing_is_a_spanning_tree() {
    let d = from_integer_points(&[(0, 0), (6, 0), (0, 6), (1, 1)], &complete_edges(4)).unwrap();
    let tree = spanning_tree(&d).unwrap();
    assert_eq!(tree.node_count(), 4);
    assert_eq!(tree.arcs.len(), 3);
    let rep = t_representation(&d, &tree).unwrap();
    assert_eq!(rep.polygon_size, 6);
    assert_eq!(rep.arrangement.n(), 3);
    assert_eq!(rep.arrangement.crossings(), 0);
    assert!(rep.reconstructed_pairs().is_empty());
}

#[test]
fn complete_drawings_round_trip_through_the_representation() {
    let pentagon = [(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)];
    let skew = [(0, 0), (7, 1), (3, 6), (2, 2), (5, 3), (1, 5)];
    for pts in [&pentagon[..], &skew[..]] {
        let n = pts.len() as Label;
        let d = from_integer_points(pts, &complete_edges(n)).unwrap();
        let tree = spanning_tree(&d).unwrap();
        assert!(tree.node_count() <= 2 * n as usize);
        let rep = t_representation(&d, &tree).unwrap();
        assert_eq!(rep.polygon_size, 2 * tree.node_count() - 2);
        assert_eq!(rep.reconstructed_pairs(), d.crossing_pairs());
        assert!(t_representation(&d.mirror(), &spanning_tree(&d.mirror()).unwrap()).is_ok());
    }
}

#[test]
fn foreign_tree_is_rejected() {
    let d = convex_k4();
    let mut tree = spanning_tree(&d).unwrap();
    tree.arcs.pop();
    assert!(matches!(t_representation(&d, &tree), Err(DrawingError::InconsistentTree(_))));
}

#[test]
fn type_pair_classes() {
    let side = |s| EndpointType::Side { side: s };
    let corner = |c, slot| EndpointType::Corner { corner: c, slot };
    use TypePairClass::*;
    assert_eq!(classify_type_pair([side(0), side(2)], [side(2), side(0)]), Parallel);
    assert_eq!(classify_type_pair([side(0), side(2)], [side(0), side(3)]), Adjacent);
    assert_eq!(classify_type_pair([side(0), side(2)], [side(1), side(3)]), Crossing);
    assert_eq!(classify_type_pair([side(0), side(2)], [side(3), side(4)]), Avoiding);
    assert_eq!(classify_type_pair([corner(0, 0), side(2)], [corner(0, 1), side(3)]), Crossing);
    assert_eq!(classify_type_pair([corner(0, 1), side(2)], [corner(0, 0), side(3)]), Avoiding);
}

#[test]
fn k2n_family_sizes() {
    assert!(matches!(k2n_family(3), Err(DrawingError::OddOrder(3))));
    for (n, size) in [(2, 2), (4, 4), (6, 8)] {
        let fam = k2n_family(n).unwrap();
        assert_eq!(fam.len(), size);
        let graphs: BTreeSet<_> = fam.iter().map(|m| m.at_graph.crossing_pairs.clone()).collect();
        assert_eq!(graphs.len(), size);
        assert!(fam.iter().all(|m| m.rotations == fam[0].rotations));
        assert!(fam.iter().all(|m| m.at_graph.crossing_pairs.len() == n / 2));
    }
}
