//! T-representations: cutting the sphere along a topological spanning tree
//! turns the drawing into a polygon whose boundary runs twice along every
//! tree arc, and the remaining edge pieces into pseudochords.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Drawing, DrawingError, DrawingMap, Site, TopoSpanningTree};
use crate::arrangements::{Arrangement, End, Endpoint, PerimetricOrder};
use crate::graph::{Edge, EdgePair};

/// Where a pseudochord meets the polygon boundary: inside a side, or at one
/// of the points of the small arc cut around a corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EndpointType {
    Side { side: usize },
    Corner { corner: usize, slot: usize },
}

impl EndpointType {
    /// Position along the boundary: side `s` precedes corner `s`.
    fn key(&self) -> (usize, usize) {
        match *self {
            EndpointType::Side { side } => (2 * side, 0),
            EndpointType::Corner { corner, slot } => (2 * corner + 1, slot),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TypePairClass {
    Crossing,
    Avoiding,
    Parallel,
    Adjacent,
}

/// Four-way classification of two pseudochord types `(X, Y)`, `(X', Y')`.
pub fn classify_type_pair(t1: [EndpointType; 2], t2: [EndpointType; 2]) -> TypePairClass {
    let ([x, y], [x2, y2]) = (t1, t2);
    if (x, y) == (x2, y2) || (x, y) == (y2, x2) {
        return TypePairClass::Parallel;
    }
    let all: BTreeSet<EndpointType> = [x, y, x2, y2].into();
    if all.len() < 4 {
        return TypePairClass::Adjacent;
    }
    let (lo, hi) = if x.key() < y.key() { (x.key(), y.key()) } else { (y.key(), x.key()) };
    let inside = |t: EndpointType| lo < t.key() && t.key() < hi;
    if inside(x2) != inside(y2) {
        TypePairClass::Crossing
    } else {
        TypePairClass::Avoiding
    }
}

/// A maximal portion of `edge` off the tree, between positions `from` and
/// `to` of its site list; `index` counts pieces from the smaller endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub edge: Edge,
    pub index: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TRepresentation {
    pub tree: TopoSpanningTree,
    pub polygon_size: usize,
    /// Edge carrying the tree arc along each polygon side.
    pub sides: Vec<Edge>,
    /// Tree node at each polygon corner.
    pub corners: Vec<Site>,
    pub arrangement: Arrangement,
    pub pieces: BTreeMap<u32, Piece>,
    /// Types at the `a` end and the `b` end of every pseudochord.
    pub types: BTreeMap<u32, [EndpointType; 2]>,
}

impl TRepresentation {
    /// Crossing edge pairs recovered from the representation alone:
    /// interleaving pseudochords, pieces ending inside a side, and crossings
    /// that are tree nodes.
    pub fn reconstructed_pairs(&self) -> BTreeSet<EdgePair> {
        let mut out = BTreeSet::new();
        for (p, q) in self.arrangement.order().crossing_pairs() {
            out.insert(EdgePair::new(self.pieces[&p].edge, self.pieces[&q].edge));
        }
        for (label, types) in &self.types {
            for t in types {
                if let EndpointType::Side { side } = *t {
                    out.insert(EdgePair::new(self.sides[side], self.pieces[label].edge));
                }
            }
        }
        for s in &self.tree.nodes {
            if let Site::Crossing(p) = s {
                out.insert(*p);
            }
        }
        out
    }
}

/// Walks around the tree with the cut-open face on the left, listing the
/// pseudochord endpoints in boundary order.
pub fn t_representation(d: &Drawing, tree: &TopoSpanningTree) -> Result<TRepresentation, DrawingError> {
    d.validate()?;
    let map = DrawingMap::new(d);
    let marks = tree.segments(&map)?;
    let node_set: BTreeSet<Site> = tree.nodes.iter().copied().collect();
    let mut on_tree = vec![false; map.sites.len()];
    for (s, _) in marks.iter().enumerate().filter(|(_, &m)| m) {
        on_tree[map.tail(2 * s)] = true;
        on_tree[map.head(2 * s)] = true;
    }

    let mut events: Vec<(usize, EndpointType)> = Vec::new();
    let mut sides = Vec::new();
    let mut corners = Vec::new();
    let start_vertex = map.index[&Site::Vertex(*d.graph.vertices().first().expect("nonempty graph"))];
    if let Some(&start) = map.rot[start_vertex].iter().find(|&&x| marks[x / 2]) {
        sides.push(map.segments[start / 2].0);
        let mut dart = start;
        loop {
            let h = map.head(dart);
            let corner = node_set.contains(&map.sites[h]).then(|| {
                corners.push(map.sites[h]);
                corners.len() - 1
            });
            let mut c = map.next_cw(dart ^ 1);
            let mut slot = 0;
            while !marks[c / 2] {
                let t = match corner {
                    Some(corner) => EndpointType::Corner { corner, slot },
                    None => EndpointType::Side { side: sides.len() - 1 },
                };
                events.push((c, t));
                slot += 1;
                c = map.next_cw(c);
            }
            if corner.is_some() {
                if c == start {
                    break;
                }
                sides.push(map.segments[c / 2].0);
            }
            dart = c;
        }
    }
    let polygon_size = 2 * tree.nodes.len().saturating_sub(1);
    if sides.len() != polygon_size || corners.len() != polygon_size {
        return Err(DrawingError::Representation(format!(
            "walk found {} sides and {} corners for {} tree nodes",
            sides.len(),
            corners.len(),
            tree.nodes.len()
        )));
    }

    // Follow every endpoint dart to the other end of its piece.
    type Ends = Vec<(End, EndpointType, usize)>;
    let mut found: BTreeMap<(Edge, usize), (usize, Ends)> = BTreeMap::new();
    for (i, &(c, t)) in events.iter().enumerate() {
        let (e, seg) = map.segments[c / 2];
        let along = &map.along[&e];
        let forward = c % 2 == 0;
        let (mut lo, mut hi) = (seg, seg + 1);
        if forward {
            while !on_tree[along[hi]] {
                hi += 1;
            }
        } else {
            while !on_tree[along[lo]] {
                lo -= 1;
            }
        }
        let end = if forward { End::A } else { End::B };
        let entry = found.entry((e, lo)).or_insert((hi, Vec::new()));
        entry.1.push((end, t, i));
    }
    let mut pieces = BTreeMap::new();
    let mut types = BTreeMap::new();
    let mut label_of = BTreeMap::new();
    let mut per_edge: BTreeMap<Edge, usize> = BTreeMap::new();
    for (k, (&(e, from), (to, ends))) in found.iter().enumerate() {
        let label = k as u32 + 1;
        if ends.len() != 2 || ends[0].0 == ends[1].0 {
            return Err(DrawingError::Representation(format!("piece of {e} at {from} has {} ends", ends.len())));
        }
        let index = per_edge.entry(e).or_default();
        pieces.insert(label, Piece { edge: e, index: *index, from, to: *to });
        *index += 1;
        let ta = ends.iter().find(|x| x.0 == End::A).expect("a end").1;
        let tb = ends.iter().find(|x| x.0 == End::B).expect("b end").1;
        types.insert(label, [ta, tb]);
        label_of.insert((e, from), label);
    }
    let mut sequence = vec![Endpoint::a(0); events.len()];
    for (&key, (_, ends)) in &found {
        for &(end, _, i) in ends {
            sequence[i] = Endpoint { label: label_of[&key], end };
        }
    }

    // Crossings strictly inside two pieces become pseudochord crossings.
    let mut inside: BTreeMap<(usize, Edge), u32> = BTreeMap::new();
    for (&label, p) in &pieces {
        for pos in p.from + 1..p.to {
            inside.insert((map.along[&p.edge][pos], p.edge), label);
        }
    }
    let mut crossing_orders = BTreeMap::new();
    for (&label, p) in &pieces {
        let list = (p.from + 1..p.to)
            .map(|pos| {
                let x = map.along[&p.edge][pos];
                let Site::Crossing(pair) = map.sites[x] else { unreachable!("interior of a piece") };
                inside[&(x, pair.other(p.edge))]
            })
            .collect();
        crossing_orders.insert(label, list);
    }
    let rep_err = |e: crate::arrangements::ArrangementError| DrawingError::Representation(e.to_string());
    let order = PerimetricOrder::new(sequence, 0).map_err(rep_err)?;
    let arrangement = Arrangement::new(order, crossing_orders).map_err(rep_err)?;
    Ok(TRepresentation { tree: tree.clone(), polygon_size, sides, corners, arrangement, pieces, types })
}
