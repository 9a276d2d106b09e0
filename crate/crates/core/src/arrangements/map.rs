//! Half-edge representation of a pseudochord arrangement inside a disc.
//!
//! Every half-edge has its face on the left. The boundary circle is built
//! from the linearized endpoints in counter-clockwise order, so the inner
//! boundary half-edge of arc `k` runs from endpoint `k` to endpoint `k + 1`.

use std::collections::BTreeMap;

use super::Endpoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Boundary,
    Chord(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Endpoint(Endpoint),
    Crossing(u32, u32),
}

#[derive(Clone, Debug)]
pub struct DiscMap {
    origin: Vec<usize>,
    twin: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    kind: Vec<EdgeKind>,
    vertices: Vec<VertexKind>,
    /// Vertices along each inserted chord, from its `a` endpoint to its `b`.
    chords: BTreeMap<u32, Vec<usize>>,
    boundary: usize,
}

impl DiscMap {
    /// The empty disc with the given endpoints on its boundary.
    pub fn new(linear: &[Endpoint]) -> DiscMap {
        let m = linear.len();
        let mut map = DiscMap {
            origin: Vec::with_capacity(2 * m),
            twin: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            kind: Vec::new(),
            vertices: linear.iter().map(|&e| VertexKind::Endpoint(e)).collect(),
            chords: BTreeMap::new(),
            boundary: m,
        };
        for k in 0..m {
            let (inner, outer) = (2 * k, 2 * k + 1);
            let (nk, pk) = ((k + 1) % m, (k + m - 1) % m);
            map.origin.extend([k, nk]);
            map.twin.extend([outer, inner]);
            map.next.extend([2 * nk, 2 * pk + 1]);
            map.prev.extend([2 * pk, 2 * nk + 1]);
            map.kind.extend([EdgeKind::Boundary; 2]);
        }
        map
    }

    pub fn half_edges(&self) -> usize {
        self.origin.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.origin.len() / 2
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary
    }

    pub fn origin(&self, h: usize) -> usize {
        self.origin[h]
    }

    pub fn dest(&self, h: usize) -> usize {
        self.origin[self.twin[h]]
    }

    pub fn twin(&self, h: usize) -> usize {
        self.twin[h]
    }

    pub fn next(&self, h: usize) -> usize {
        self.next[h]
    }

    pub fn kind(&self, h: usize) -> EdgeKind {
        self.kind[h]
    }

    pub fn vertex(&self, v: usize) -> VertexKind {
        self.vertices[v]
    }

    pub fn chord_vertices(&self) -> &BTreeMap<u32, Vec<usize>> {
        &self.chords
    }

    /// Inner half-edge of boundary arc `k` (from endpoint `k` to `k + 1`).
    pub fn arc(&self, k: usize) -> usize {
        2 * k
    }

    /// Inner boundary half-edge ending at boundary position `k`.
    pub fn arc_into(&self, k: usize) -> usize {
        2 * ((k + self.boundary - 1) % self.boundary)
    }

    /// Splits the edge of `h` at a new crossing vertex. Afterwards `h` and
    /// its old twin both end at the new vertex.
    fn split_edge(&mut self, h: usize, kind: VertexKind) -> usize {
        let x = self.vertices.len();
        self.vertices.push(kind);
        let t = self.twin[h];
        let (h2, t2) = (self.origin.len(), self.origin.len() + 1);
        let (hn, tn) = (self.next[h], self.next[t]);
        let (u, v) = (self.origin[h], self.origin[t]);
        self.origin.extend([x, x]);
        self.kind.extend([self.kind[h], self.kind[t]]);
        self.twin.extend([t, h]);
        self.twin[h] = t2;
        self.twin[t] = h2;
        self.next.extend([hn, tn]);
        self.prev.extend([h, t]);
        self.next[h] = h2;
        self.next[t] = t2;
        self.prev[hn] = h2;
        self.prev[tn] = t2;
        if let EdgeKind::Chord(j) = self.kind[h] {
            let list = self.chords.get_mut(&j).expect("chord recorded");
            let iu = list.iter().position(|&w| w == u).expect("endpoint on chord");
            let iv = list.iter().position(|&w| w == v).expect("endpoint on chord");
            list.insert(iu.max(iv), x);
        }
        x
    }

    /// Adds an edge between the heads of `a_in` and `b_in`, which must lie
    /// on the same face. Returns the new half-edge directed from the head of
    /// `a_in` to the head of `b_in`.
    fn add_edge(&mut self, a_in: usize, b_in: usize, kind: EdgeKind) -> usize {
        let (u, v) = (self.dest(a_in), self.dest(b_in));
        let (a_out, b_out) = (self.next[a_in], self.next[b_in]);
        let (e, f) = (self.origin.len(), self.origin.len() + 1);
        self.origin.extend([u, v]);
        self.twin.extend([f, e]);
        self.kind.extend([kind, kind]);
        self.next.extend([b_out, a_out]);
        self.prev.extend([a_in, b_in]);
        self.next[a_in] = e;
        self.prev[b_out] = e;
        self.next[b_in] = f;
        self.prev[a_out] = f;
        e
    }

    /// Face index of every half-edge and the number of faces.
    pub fn face_labels(&self) -> (Vec<usize>, usize) {
        let mut face = vec![usize::MAX; self.half_edges()];
        let mut count = 0;
        for start in 0..self.half_edges() {
            if face[start] != usize::MAX {
                continue;
            }
            let mut h = start;
            loop {
                face[h] = count;
                h = self.next[h];
                if h == start {
                    break;
                }
            }
            count += 1;
        }
        (face, count)
    }

    /// Every face as its cycle of half-edges.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let (face, count) = self.face_labels();
        let mut out = vec![Vec::new(); count];
        for start in 0..self.half_edges() {
            if out[face[start]].is_empty() {
                let mut h = start;
                loop {
                    out[face[start]].push(h);
                    h = self.next[h];
                    if h == start {
                        break;
                    }
                }
            }
        }
        out
    }

    /// All dual paths for chord `label` from the face at boundary position
    /// `pa` to the face at `pb`, crossing each chord in `required` exactly
    /// once and no other chord. Each path lists the crossed half-edges, each
    /// seen from the face the path leaves.
    pub fn plan_paths(&self, pa: usize, pb: usize, required: &[u32]) -> Vec<Vec<usize>> {
        let (face, count) = self.face_labels();
        let mut cycles = vec![Vec::new(); count];
        for h in 0..self.half_edges() {
            cycles[face[h]].push(h);
        }
        let target = face[self.arc_into(pb)];
        let mut out = Vec::new();
        let mut crossed = vec![false; required.len()];
        let mut path = Vec::new();
        self.plan_rec(face[self.arc_into(pa)], target, required, &face, &cycles, &mut crossed, &mut path, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn plan_rec(
        &self,
        f: usize,
        target: usize,
        required: &[u32],
        face: &[usize],
        cycles: &[Vec<usize>],
        crossed: &mut [bool],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if path.len() == required.len() {
            if f == target {
                out.push(path.clone());
            }
            return;
        }
        for &h in &cycles[f] {
            let EdgeKind::Chord(j) = self.kind[h] else { continue };
            let Some(idx) = required.iter().position(|&r| r == j) else { continue };
            if crossed[idx] {
                continue;
            }
            crossed[idx] = true;
            path.push(h);
            self.plan_rec(face[self.twin[h]], target, required, face, cycles, crossed, path, out);
            path.pop();
            crossed[idx] = false;
        }
    }

    /// Inserts chord `label` from boundary position `pa` to `pb` along a
    /// path returned by [`DiscMap::plan_paths`].
    pub fn insert(&mut self, label: u32, pa: usize, pb: usize, path: &[usize]) {
        self.chords.insert(label, vec![pa]);
        let mut cur_in = self.arc_into(pa);
        let end_in = self.arc_into(pb);
        for &h in path {
            let t = self.twin[h];
            let EdgeKind::Chord(j) = self.kind[h] else { unreachable!("paths cross chords only") };
            let x = self.split_edge(h, VertexKind::Crossing(label.min(j), label.max(j)));
            self.add_edge(cur_in, h, EdgeKind::Chord(label));
            self.chords.get_mut(&label).unwrap().push(x);
            cur_in = t;
        }
        self.add_edge(cur_in, end_in, EdgeKind::Chord(label));
        self.chords.get_mut(&label).unwrap().push(pb);
    }

    /// Half-edge from `u` to `v` of the given chord, if any.
    pub fn find_half_edge(&self, u: usize, v: usize, label: u32) -> Option<usize> {
        (0..self.half_edges())
            .find(|&h| self.origin[h] == u && self.dest(h) == v && self.kind[h] == EdgeKind::Chord(label))
    }

    /// For each chord, the labels of the chords it crosses from `a` to `b`.
    pub fn crossing_orders(&self) -> BTreeMap<u32, Vec<u32>> {
        self.chords
            .iter()
            .map(|(&i, vs)| {
                let others = vs[1..vs.len() - 1]
                    .iter()
                    .map(|&x| match self.vertices[x] {
                        VertexKind::Crossing(p, q) => {
                            if p == i {
                                q
                            } else {
                                p
                            }
                        }
                        VertexKind::Endpoint(_) => unreachable!("interior chord vertex is a crossing"),
                    })
                    .collect();
                (i, others)
            })
            .collect()
    }

    /// Outgoing half-edges at `v` in rotational order.
    pub fn rotation(&self, v: usize) -> Vec<usize> {
        let start = (0..self.half_edges()).find(|&h| self.origin[h] == v).expect("vertex has an edge");
        let mut out = vec![start];
        let mut h = self.next[self.twin[start]];
        while h != start {
            out.push(h);
            h = self.next[self.twin[h]];
        }
        out
    }
}
