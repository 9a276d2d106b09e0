//! Straight-line drawings with exact rational predicates.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Drawing, DrawingError, DrawingMap, FaceStructure, Site, Strand};
use crate::graph::{Edge, EdgePair, Label, SimpleGraph};
use crate::rotsys::CyclicPerm;

pub type Point = (BigRational, BigRational);

fn sub(a: &Point, b: &Point) -> Point {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn cross(a: &Point, b: &Point) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(&sub(b, a), &sub(c, a)).cmp(&BigRational::zero())
}

/// Counter-clockwise angular order of direction vectors, starting at the
/// positive x-axis.
fn ccw_cmp(a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| !(p.1.is_positive() || (p.1.is_zero() && p.0.is_positive()));
    half(a).cmp(&half(b)).then_with(|| BigRational::zero().cmp(&cross(a, b)))
}

/// Clockwise order of the items by the direction of their vectors.
fn clockwise<T: Clone>(items: &[(T, Point)]) -> Vec<T> {
    let mut v: Vec<&(T, Point)> = items.iter().collect();
    v.sort_by(|x, y| ccw_cmp(&x.1, &y.1));
    v.into_iter().rev().map(|x| x.0.clone()).collect()
}

/// Drawing with vertex `i + 1` at `points[i]` and straight edges. Rejects
/// collinear vertex triples and crossings shared by three or more edges.
pub fn from_straight_line(points: &[Point], edges: &[[Label; 2]]) -> Result<Drawing, DrawingError> {
    let n = points.len();
    let graph = SimpleGraph::with_order(n as Label, edges.iter().copied())?;
    let at = |v: Label| &points[v as usize - 1];
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Err(DrawingError::Degenerate(format!("vertices {} and {} coincide", i + 1, j + 1)));
            }
            for k in j + 1..n {
                if orient(&points[i], &points[j], &points[k]).is_eq() {
                    return Err(DrawingError::Degenerate(format!(
                        "vertices {}, {}, {} are collinear",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
    }

    // Crossing points with their parameter along each edge.
    let edge_list: Vec<Edge> = graph.edges().iter().copied().collect();
    let mut location: BTreeMap<EdgePair, Point> = BTreeMap::new();
    let mut on_edge: BTreeMap<Edge, Vec<(BigRational, Edge)>> = BTreeMap::new();
    let mut seen_points: BTreeMap<Point, EdgePair> = BTreeMap::new();
    for (i, &e) in edge_list.iter().enumerate() {
        for &f in &edge_list[i + 1..] {
            if e.is_adjacent(&f) {
                continue;
            }
            let (a, b, c, d) = (at(e.lo()), at(e.hi()), at(f.lo()), at(f.hi()));
            if orient(a, b, c) == orient(a, b, d) || orient(c, d, a) == orient(c, d, b) {
                continue;
            }
            let (ab, cd) = (sub(b, a), sub(d, c));
            let t = cross(&sub(c, a), &cd) / cross(&ab, &cd);
            let s = cross(&sub(c, a), &ab) / cross(&ab, &cd);
            let p: Point = (&a.0 + &t * &ab.0, &a.1 + &t * &ab.1);
            let pair = EdgePair::new(e, f);
            if let Some(other) = seen_points.insert(p.clone(), pair) {
                return Err(DrawingError::Degenerate(format!("crossings {other} and {pair} coincide")));
            }
            location.insert(pair, p);
            on_edge.entry(e).or_default().push((t, f));
            on_edge.entry(f).or_default().push((s, e));
        }
    }

    let mut vertex_rotations = BTreeMap::new();
    for &v in graph.vertices() {
        let dirs: Vec<(Label, Point)> = graph.neighbors(v).into_iter().map(|w| (w, sub(at(w), at(v)))).collect();
        vertex_rotations.insert(v, CyclicPerm::new(clockwise(&dirs)).expect("distinct neighbours"));
    }
    let edge_crossings: BTreeMap<Edge, Vec<Edge>> = on_edge
        .into_iter()
        .map(|(e, mut l)| {
            l.sort();
            (e, l.into_iter().map(|(_, f)| f).collect())
        })
        .collect();
    let crossing_rotations = location
        .iter()
        .map(|(&pair, p)| {
            let dirs: Vec<(Strand, Point)> = [pair.first(), pair.second()]
                .iter()
                .flat_map(|&x| x.endpoints().map(move |t| Strand { edge: x, toward: t }))
                .map(|s| (s, sub(at(s.toward), p)))
                .collect();
            (pair, clockwise(&dirs))
        })
        .collect();
    let mut drawing = Drawing::new(graph, vertex_rotations, edge_crossings, crossing_rotations, None);
    if drawing.topological_components().len() > 1 {
        let fs = face_structure(&drawing, points, &location);
        drawing.face_structure = Some(fs);
    }
    Ok(drawing)
}

/// Integer coordinates, for tests and examples.
pub fn from_integer_points(points: &[(i64, i64)], edges: &[[Label; 2]]) -> Result<Drawing, DrawingError> {
    let pts: Vec<Point> = points
        .iter()
        .map(|&(x, y)| (BigRational::from_integer(BigInt::from(x)), BigRational::from_integer(BigInt::from(y))))
        .collect();
    from_straight_line(&pts, edges)
}

/// Winding number of the closed polygon around `p`, which is not on it.
fn winding(poly: &[Point], p: &Point) -> i64 {
    let mut wn = 0;
    for i in 0..poly.len() {
        let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
        if a.1 <= p.1 {
            if b.1 > p.1 && orient(a, b, p).is_gt() {
                wn += 1;
            }
        } else if b.1 <= p.1 && orient(a, b, p).is_lt() {
            wn -= 1;
        }
    }
    wn
}

fn twice_area(poly: &[Point]) -> BigRational {
    (0..poly.len()).map(|i| cross(&poly[i], &poly[(i + 1) % poly.len()])).fold(BigRational::zero(), |s, x| s + x)
}

/// Nests the topological components geometrically and records every face
/// with more than one boundary component. Walks keep the face on the left.
fn face_structure(d: &Drawing, points: &[Point], location: &BTreeMap<EdgePair, Point>) -> FaceStructure {
    let map = DrawingMap::new(d);
    let coord = |node: usize| -> Point {
        match map.sites[node] {
            Site::Vertex(v) => points[v as usize - 1].clone(),
            Site::Crossing(p) => location[&p].clone(),
        }
    };
    let (comp, count) = map.node_components();

    struct Walk {
        sites: Vec<Site>,
        poly: Vec<Point>,
        area: BigRational,
    }
    let mut walks: Vec<Vec<Walk>> = (0..count).map(|_| Vec::new()).collect();
    for f in map.faces() {
        let nodes: Vec<usize> = f.iter().map(|&dart| map.tail(dart)).collect();
        let poly: Vec<Point> = nodes.iter().map(|&x| coord(x)).collect();
        let area = twice_area(&poly);
        walks[comp[nodes[0]]].push(Walk { sites: nodes.iter().map(|&x| map.sites[x]).collect(), poly, area });
    }
    let mut outer = Vec::with_capacity(count);
    let mut rep = Vec::with_capacity(count);
    for (c, own) in walks.iter().enumerate() {
        let first =
            (0..map.sites.len()).find(|&x| comp[x] == c && matches!(map.sites[x], Site::Vertex(_))).expect("vertex");
        rep.push(coord(first));
        outer.push(match own.iter().min_by(|a, b| a.area.cmp(&b.area)) {
            Some(w) => w.sites.clone(),
            None => vec![map.sites[first]],
        });
    }

    let mut children: BTreeMap<Option<(usize, usize)>, Vec<usize>> = BTreeMap::new();
    for (child, point) in rep.iter().enumerate() {
        let mut best: Option<(&BigRational, usize, usize)> = None;
        for c in (0..count).filter(|&c| c != child) {
            for (i, w) in walks[c].iter().enumerate() {
                if w.area.is_positive() && winding(&w.poly, point) != 0 && best.is_none_or(|b| &w.area < b.0) {
                    best = Some((&w.area, c, i));
                }
            }
        }
        children.entry(best.map(|(_, c, i)| (c, i))).or_default().push(child);
    }
    let mut faces = Vec::new();
    for (parent, kids) in children {
        let mut boundary: Vec<Vec<Site>> = kids.iter().map(|&k| outer[k].clone()).collect();
        match parent {
            Some((c, i)) => boundary.insert(0, walks[c][i].sites.clone()),
            None if kids.len() < 2 => continue,
            None => {}
        }
        faces.push(boundary);
    }
    FaceStructure(faces)
}
