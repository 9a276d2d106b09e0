//! The dual of an arrangement: one internal vertex per cell, one external
//! vertex per boundary arc. It is a quadrangulation of a polygon whose
//! bounded faces correspond to crossings and endpoints.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{Arrangement, ArrangementError, DiscMap, EdgeKind, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DualVertex {
    /// Boundary arc starting at linear position `index`.
    Arc { index: usize },
    /// A cell of the arrangement.
    Cell { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualFace {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualMap {
    pub vertices: Vec<DualVertex>,
    pub edges: Vec<(usize, usize)>,
    /// Bounded faces: crossings first, then endpoints in linear order.
    pub faces: Vec<DualFace>,
    /// The outer face, running through every arc vertex.
    pub outer: DualFace,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DualChecks {
    pub quadrangular: bool,
    pub edge_face_incidence: bool,
    pub euler: bool,
    pub two_connected: bool,
    pub bipartite: bool,
    pub no_separating_four_cycle: bool,
}

impl DualChecks {
    pub fn all(&self) -> bool {
        self.quadrangular
            && self.edge_face_incidence
            && self.euler
            && self.two_connected
            && self.bipartite
            && self.no_separating_four_cycle
    }
}

pub fn dual_quadrangulation(arr: &Arrangement) -> Result<DualMap, ArrangementError> {
    Ok(DualMap::from_map(&arr.realize()?))
}

impl DualMap {
    pub fn from_map(map: &DiscMap) -> DualMap {
        let m = map.boundary_len();
        let (face, count) = map.face_labels();
        let outer_face = face[1];
        let mut cell = vec![usize::MAX; count];
        let mut vertices: Vec<DualVertex> = (0..m).map(|index| DualVertex::Arc { index }).collect();
        for (f, slot) in cell.iter_mut().enumerate() {
            if f != outer_face {
                *slot = vertices.len();
                vertices.push(DualVertex::Cell { index: vertices.len() - m });
            }
        }

        // Dual edge of every primal edge, then the outer cycle.
        let mut edges = Vec::new();
        let mut of_half = vec![usize::MAX; map.half_edges()];
        for h in 0..map.half_edges() {
            let t = map.twin(h);
            if h > t {
                continue;
            }
            of_half[h] = edges.len();
            of_half[t] = edges.len();
            match map.kind(h) {
                EdgeKind::Boundary => edges.push((h / 2, cell[face[h]])),
                EdgeKind::Chord(_) => edges.push((cell[face[h]], cell[face[t]])),
            }
        }
        let outer_edge: Vec<usize> = (0..m)
            .map(|k| {
                edges.push(((k + m - 1) % m, k));
                edges.len() - 1
            })
            .collect();

        let mut faces = Vec::new();
        for v in m..map.vertex_count() {
            debug_assert!(matches!(map.vertex(v), VertexKind::Crossing(..)));
            let rot = map.rotation(v);
            faces.push(DualFace {
                vertices: rot.iter().map(|&h| cell[face[h]]).collect(),
                edges: rot.iter().map(|&h| of_half[h]).collect(),
            });
        }
        for k in 0..m {
            let prev = (k + m - 1) % m;
            let chord = map
                .rotation(k)
                .into_iter()
                .find(|&h| matches!(map.kind(h), EdgeKind::Chord(_)))
                .expect("endpoint carries a chord");
            faces.push(DualFace {
                vertices: vec![prev, cell[face[map.arc_into(k)]], cell[face[map.arc(k)]], k],
                edges: vec![of_half[map.arc(prev)], of_half[chord], of_half[map.arc(k)], outer_edge[k]],
            });
        }
        let outer = DualFace { vertices: (0..m).collect(), edges: outer_edge };
        DualMap { vertices, edges, faces, outer }
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        adj
    }

    fn connected_without(&self, adj: &[Vec<(usize, usize)>], skip: Option<usize>) -> bool {
        let n = self.vertices.len();
        let Some(start) = (0..n).find(|&v| Some(v) != skip) else { return true };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &adj[u] {
                if Some(w) != skip && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == n - skip.is_some() as usize
    }

    fn is_bipartite(&self, adj: &[Vec<(usize, usize)>]) -> bool {
        let mut color = vec![u8::MAX; self.vertices.len()];
        for s in 0..color.len() {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Edge sets of every cycle of length four through four distinct vertices.
    pub fn four_cycles(&self) -> BTreeSet<[usize; 4]> {
        let adj = self.adjacency();
        let mut out = BTreeSet::new();
        for a in 0..self.vertices.len() {
            for &(b, e1) in &adj[a] {
                for &(c, e2) in &adj[b] {
                    if c == a || e2 == e1 {
                        continue;
                    }
                    for &(d, e3) in &adj[c] {
                        if d == a || d == b {
                            continue;
                        }
                        for &(back, e4) in &adj[d] {
                            if back == a {
                                let mut key = [e1, e2, e3, e4];
                                key.sort_unstable();
                                out.insert(key);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn checks(&self) -> DualChecks {
        let adj = self.adjacency();
        let quadrangular =
            self.faces.iter().all(|f| f.vertices.len() == 4 && f.edges.iter().collect::<BTreeSet<_>>().len() == 4);
        let mut uses = vec![0usize; self.edges.len()];
        for f in self.faces.iter().chain([&self.outer]) {
            for &e in &f.edges {
                uses[e] += 1;
            }
        }
        let edge_face_incidence = uses.iter().all(|&u| u == 2);
        let (v, e, f) = (self.vertices.len() as i64, self.edges.len() as i64, self.faces.len() as i64 + 1);
        let euler = v - e + f == 2;
        let two_connected = self.connected_without(&adj, None)
            && (0..self.vertices.len()).all(|x| self.connected_without(&adj, Some(x)));
        let bipartite = self.is_bipartite(&adj);
        let face_sets: BTreeSet<[usize; 4]> = self
            .faces
            .iter()
            .chain([&self.outer])
            .filter(|f| f.edges.len() == 4)
            .map(|f| {
                let mut k = [f.edges[0], f.edges[1], f.edges[2], f.edges[3]];
                k.sort_unstable();
                k
            })
            .collect();
        let no_separating_four_cycle = self.four_cycles().is_subset(&face_sets);
        DualChecks { quadrangular, edge_face_incidence, euler, two_connected, bipartite, no_separating_four_cycle }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_classes, PerimetricOrder};
    use super::*;

    #[test]
    fn duals_of_small_arrangements_pass_all_checks() {
        for s in [
            "a1,b1",
            "a1,a2,b1,b2",
            "a1,b1,a2,b2",
            "a1,a2,a3,b1,b2,b3",
            "a1,a2,b2,a3,b1,b3",
            "a1,a2,a3,b3,b1,b2",
            "a1,a2,b1,a3,b2,b3",
        ] {
            let o = PerimetricOrder::parse(s, 0).unwrap();
            for a in enumerate_classes(&o, 5).unwrap() {
                let d = dual_quadrangulation(&a).unwrap();
                let c = d.checks();
                let simple_expected = a.n() < 2 || o.ears().is_empty();
                assert_eq!(c.no_separating_four_cycle, simple_expected, "{a}: {c:?}");
                assert!(c.quadrangular && c.edge_face_incidence && c.euler, "{a}: {c:?}");
                assert!(c.two_connected && c.bipartite, "{a}: {c:?}");
                assert_eq!(d.vertices.len(), 3 * a.n() + a.crossings() + 1);
                assert_eq!(d.faces.len(), 2 * a.n() + a.crossings());
            }
        }
    }

    #[test]
    fn checks_detect_damage() {
        let o = PerimetricOrder::parse("a1,a2,b1,b2", 0).unwrap();
        let a = &enumerate_classes(&o, 5).unwrap()[0];
        let mut d = dual_quadrangulation(a).unwrap();
        let (u, v) = (d.vertices.len() - 1, d.vertices.len() - 2);
        d.edges.push((u, v));
        let c = d.checks();
        assert!(!c.bipartite || !c.edge_face_incidence);
        assert!(!c.all());
    }
}
