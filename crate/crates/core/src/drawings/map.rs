//! The planar map induced by a drawing: vertices and crossings are nodes,
//! every edge is cut into segments at its crossings. Segment `s` carries the
//! darts `2s` (toward the larger endpoint of its edge) and `2s + 1`.

use std::collections::BTreeMap;

use super::{Drawing, Site};
use crate::graph::{Edge, EdgePair};

#[derive(Clone, Debug)]
pub struct DrawingMap {
    pub sites: Vec<Site>,
    pub index: BTreeMap<Site, usize>,
    /// Node ids along each edge, from its smaller endpoint to the larger.
    pub along: BTreeMap<Edge, Vec<usize>>,
    seg_base: BTreeMap<Edge, usize>,
    /// Edge and position of every segment.
    pub segments: Vec<(Edge, usize)>,
    /// Outgoing darts of every node in clockwise order.
    pub rot: Vec<Vec<usize>>,
    slot: Vec<usize>,
}

impl DrawingMap {
    /// Builds the map; the drawing must already pass the structural checks.
    pub fn new(d: &Drawing) -> DrawingMap {
        let mut sites: Vec<Site> = d.graph.vertices().iter().map(|&v| Site::Vertex(v)).collect();
        sites.extend(d.crossing_pairs().into_iter().map(Site::Crossing));
        let index: BTreeMap<Site, usize> = sites.iter().enumerate().map(|(i, &s)| (s, i)).collect();

        let mut along = BTreeMap::new();
        let mut seg_base = BTreeMap::new();
        let mut segments = Vec::new();
        for &e in d.graph.edges() {
            let mut nodes = vec![index[&Site::Vertex(e.lo())]];
            for &f in d.crossings_of(e) {
                nodes.push(index[&Site::Crossing(EdgePair::new(e, f))]);
            }
            nodes.push(index[&Site::Vertex(e.hi())]);
            seg_base.insert(e, segments.len());
            segments.extend((0..nodes.len() - 1).map(|i| (e, i)));
            along.insert(e, nodes);
        }

        let mut map = DrawingMap { sites, index, along, seg_base, segments, rot: Vec::new(), slot: Vec::new() };
        let mut rot = vec![Vec::new(); map.sites.len()];
        for (&v, perm) in &d.vertex_rotations {
            rot[map.index[&Site::Vertex(v)]] = perm
                .as_slice()
                .iter()
                .map(|&w| {
                    let e = Edge::new(v, w);
                    let pos = if v == e.lo() { 0 } else { map.along[&e].len() - 1 };
                    map.dart_from(e, pos, w)
                })
                .collect();
        }
        for (&pair, strands) in &d.crossing_rotations {
            let x = map.index[&Site::Crossing(pair)];
            rot[x] = strands
                .iter()
                .map(|s| {
                    let pos = map.along[&s.edge].iter().position(|&n| n == x).expect("crossing on its edge");
                    map.dart_from(s.edge, pos, s.toward)
                })
                .collect();
        }
        map.slot = vec![0; 2 * map.segments.len()];
        for list in &rot {
            for (i, &dart) in list.iter().enumerate() {
                map.slot[dart] = i;
            }
        }
        map.rot = rot;
        map
    }

    /// Dart leaving position `pos` of edge `e` toward its endpoint `toward`.
    pub fn dart_from(&self, e: Edge, pos: usize, toward: u32) -> usize {
        let base = self.seg_base[&e];
        if toward == e.hi() {
            2 * (base + pos)
        } else {
            2 * (base + pos - 1) + 1
        }
    }

    pub fn darts(&self) -> usize {
        2 * self.segments.len()
    }

    pub fn segment_id(&self, e: Edge, pos: usize) -> usize {
        self.seg_base[&e] + pos
    }

    pub fn tail(&self, d: usize) -> usize {
        let (e, i) = self.segments[d / 2];
        self.along[&e][i + (d & 1)]
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail(d ^ 1)
    }

    /// Clockwise successor of `d` around its tail.
    pub fn next_cw(&self, d: usize) -> usize {
        let list = &self.rot[self.tail(d)];
        list[(self.slot[d] + 1) % list.len()]
    }

    /// The face to the left of `d` continues with this dart.
    pub fn face_next(&self, d: usize) -> usize {
        self.next_cw(d ^ 1)
    }

    /// Face orbits as dart cycles.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.darts()];
        let mut out = Vec::new();
        for start in 0..self.darts() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                cycle.push(d);
                d = self.face_next(d);
            }
            out.push(cycle);
        }
        out
    }

    /// Component id of every node.
    pub fn node_components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.sites.len()];
        let mut count = 0;
        for s in 0..self.sites.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &d in &self.rot[u] {
                    let w = self.head(d);
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// `(V, E, F)` of every topological component.
    pub fn euler_counts(&self) -> Vec<(usize, usize, usize)> {
        let (comp, count) = self.node_components();
        let mut out = vec![(0, 0, 0); count];
        for &c in &comp {
            out[c].0 += 1;
        }
        for d in (0..self.darts()).step_by(2) {
            out[comp[self.tail(d)]].1 += 1;
        }
        for f in self.faces() {
            out[comp[self.tail(f[0])]].2 += 1;
        }
        for c in out.iter_mut() {
            if c.1 == 0 {
                c.2 = 1;
            }
        }
        out
    }
}
