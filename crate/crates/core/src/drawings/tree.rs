//! Topological spanning trees: simply connected unions of edge portions
//! containing every vertex, built one graph component at a time so that
//! every prefix of components is topologically connected.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Drawing, DrawingError, DrawingMap, Site};
use crate::graph::{Edge, Label};

/// The portion of `edge` between positions `from < to` of its site list
/// (position 0 is the smaller endpoint); `ends` are node indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreeArc {
    pub edge: Edge,
    pub from: usize,
    pub to: usize,
    pub ends: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopoSpanningTree {
    pub nodes: Vec<Site>,
    pub arcs: Vec<TreeArc>,
}

impl TopoSpanningTree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Marks the segments covered by the arcs and checks that they form the
    /// same tree.
    pub(crate) fn segments(&self, map: &DrawingMap) -> Result<Vec<bool>, DrawingError> {
        let bad = |m: String| DrawingError::InconsistentTree(m);
        let mut marks = vec![false; map.segments.len()];
        for a in &self.arcs {
            let along = map.along.get(&a.edge).ok_or_else(|| bad(format!("unknown edge {}", a.edge)))?;
            if a.from >= a.to || a.to >= along.len() {
                return Err(bad(format!("bad range {}..{} on edge {}", a.from, a.to, a.edge)));
            }
            for pos in a.from..a.to {
                let s = map.segment_id(a.edge, pos);
                if std::mem::replace(&mut marks[s], true) {
                    return Err(bad(format!("edge {} covered twice at position {pos}", a.edge)));
                }
            }
        }
        let canonical = TopoSpanningTree::from_segments(map, &marks)?;
        if canonical != *self {
            return Err(bad("nodes or arcs differ from the tree the segments span".into()));
        }
        Ok(marks)
    }

    /// Splits the marked segments into arcs between branch points and
    /// vertices, checking that they form a tree whose leaves are vertices.
    pub(crate) fn from_segments(map: &DrawingMap, marks: &[bool]) -> Result<TopoSpanningTree, DrawingError> {
        let bad = |m: String| DrawingError::InconsistentTree(m);
        let mut degree = vec![0usize; map.sites.len()];
        let mut edges_at: Vec<BTreeSet<Edge>> = vec![BTreeSet::new(); map.sites.len()];
        for (s, _) in marks.iter().enumerate().filter(|(_, &m)| m) {
            for node in [map.tail(2 * s), map.head(2 * s)] {
                degree[node] += 1;
                edges_at[node].insert(map.segments[s].0);
            }
        }
        let is_node: Vec<bool> = (0..map.sites.len())
            .map(|x| {
                matches!(map.sites[x], Site::Vertex(_)) || degree[x] != 2 && degree[x] > 0 || edges_at[x].len() == 2
            })
            .collect();
        for (x, &d) in degree.iter().enumerate() {
            if d == 1 && !matches!(map.sites[x], Site::Vertex(_)) {
                return Err(bad(format!("leaf at crossing {}", map.sites[x])));
            }
        }

        // Tree check: connected through marked segments and |E| = |V| - 1.
        let touched: Vec<usize> =
            (0..map.sites.len()).filter(|&x| degree[x] > 0 || matches!(map.sites[x], Site::Vertex(_))).collect();
        let seg_count = marks.iter().filter(|&&m| m).count();
        if seg_count + 1 != touched.len() {
            return Err(bad(format!("{} segments on {} points cannot form a tree", seg_count, touched.len())));
        }
        let mut seen = vec![false; map.sites.len()];
        let mut queue = VecDeque::from([touched[0]]);
        seen[touched[0]] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &d in &map.rot[u] {
                if marks[d / 2] && !seen[map.head(d)] {
                    seen[map.head(d)] = true;
                    reached += 1;
                    queue.push_back(map.head(d));
                }
            }
        }
        if reached != touched.len() {
            return Err(bad("the tree is disconnected".into()));
        }

        let node_sites: BTreeSet<Site> = (0..map.sites.len()).filter(|&x| is_node[x]).map(|x| map.sites[x]).collect();
        let nodes: Vec<Site> = node_sites.into_iter().collect();
        let node_index: BTreeMap<Site, usize> = nodes.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut arcs = Vec::new();
        for (&e, along) in &map.along {
            let mut start: Option<usize> = None;
            for pos in 0..along.len() - 1 {
                if !marks[map.segment_id(e, pos)] {
                    continue;
                }
                let from = *start.get_or_insert(pos);
                let to = pos + 1;
                if is_node[along[to]] {
                    let ends = [node_index[&map.sites[along[from]]], node_index[&map.sites[along[to]]]];
                    arcs.push(TreeArc { edge: e, from, to, ends });
                    start = None;
                }
            }
        }
        arcs.sort();
        Ok(TopoSpanningTree { nodes, arcs })
    }
}

struct Builder<'a> {
    map: &'a DrawingMap,
    on_tree: Vec<bool>,
    marks: Vec<bool>,
}

impl Builder<'_> {
    fn add_run(&mut self, e: Edge, i: usize, j: usize) {
        let (i, j) = (i.min(j), i.max(j));
        for pos in i..j {
            self.marks[self.map.segment_id(e, pos)] = true;
        }
        for pos in i..=j {
            self.on_tree[self.map.along[&e][pos]] = true;
        }
    }

    /// Nearest position on the tree walking from `pos` in direction `dir`.
    fn walk(&self, e: Edge, pos: usize, dir: isize) -> Option<usize> {
        let along = &self.map.along[&e];
        let mut p = pos as isize + dir;
        while p >= 0 && (p as usize) < along.len() {
            if self.on_tree[along[p as usize]] {
                return Some(p as usize);
            }
            p += dir;
        }
        None
    }

    /// Attaches the portion of `e` from its endpoint `v` to the closest tree
    /// point along `e`.
    fn attach(&mut self, e: Edge, v: Label) {
        let last = self.map.along[&e].len() - 1;
        let (start, dir) = if v == e.lo() { (0, 1) } else { (last, -1) };
        let hit = self.walk(e, start, dir).expect("the other endpoint is on the tree");
        self.add_run(e, start, hit);
    }
}

/// BFS order of a spanning tree of one component, seeded with `first`:
/// `(edge, newly reached vertex)` after `first` itself.
fn bfs_order(d: &Drawing, first: Edge) -> Vec<(Edge, Label)> {
    let mut seen: BTreeSet<Label> = first.endpoints().into_iter().collect();
    let mut queue = VecDeque::from(first.endpoints());
    let mut out = Vec::new();
    while let Some(u) = queue.pop_front() {
        for w in d.graph.neighbors(u) {
            if seen.insert(w) {
                out.push((Edge::new(u, w), w));
                queue.push_back(w);
            }
        }
    }
    out
}

/// Builds the tree phase by phase. Components are ordered by smallest
/// vertex subject to every prefix being topologically connected; each
/// component uses a BFS spanning tree; the connecting edges `e_i` and the
/// crossed edges `f_i` are the lexicographically smallest candidates.
pub fn spanning_tree(d: &Drawing) -> Result<TopoSpanningTree, DrawingError> {
    d.validate()?;
    let map = DrawingMap::new(d);
    let comps = d.graph.components();
    let comp_of: BTreeMap<Label, usize> =
        comps.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&v| (v, i))).collect();
    let comp_edges =
        |c: usize| -> Vec<Edge> { d.graph.edges().iter().copied().filter(|e| comp_of[&e.lo()] == c).collect() };

    let mut order = vec![0usize];
    let mut connectors: Vec<Option<(Edge, Edge)>> = vec![None];
    let mut remaining: BTreeSet<usize> = (1..comps.len()).collect();
    while !remaining.is_empty() {
        let chosen: BTreeSet<usize> = order.iter().copied().collect();
        let next = remaining.iter().find_map(|&c| {
            comp_edges(c).into_iter().find_map(|e| {
                let f = d.crossings_of(e).iter().copied().filter(|f| chosen.contains(&comp_of[&f.lo()])).min()?;
                Some((c, e, f))
            })
        });
        let (c, e, f) = next.ok_or(DrawingError::NotTopologicallyConnected)?;
        remaining.remove(&c);
        order.push(c);
        connectors.push(Some((e, f)));
    }

    let mut b = Builder { map: &map, on_tree: vec![false; map.sites.len()], marks: vec![false; map.segments.len()] };
    if d.graph.size() == 0 {
        if d.graph.order() > 1 {
            return Err(DrawingError::NotTopologicallyConnected);
        }
        return TopoSpanningTree::from_segments(&map, &b.marks);
    }
    for (&c, conn) in order.iter().zip(&connectors) {
        let first = match conn {
            Some((e, _)) => *e,
            None => {
                let v = comps[c][0];
                let w = *d.graph.neighbors(v).first().ok_or(DrawingError::NotTopologicallyConnected)?;
                Edge::new(v, w)
            }
        };
        let last = map.along[&first].len() - 1;
        match conn {
            None => b.add_run(first, 0, last),
            Some((e, f)) => {
                let inner = (1..last).filter(|&p| b.on_tree[map.along[e][p]]).collect::<Vec<_>>();
                if let (Some(&p1), Some(&p2)) = (inner.first(), inner.last()) {
                    b.add_run(*e, 0, p1);
                    b.add_run(*e, p2, last);
                } else {
                    b.add_run(*e, 0, last);
                    let x = map.index[&Site::Crossing(crate::graph::EdgePair::new(*e, *f))];
                    let p = map.along[f].iter().position(|&n| n == x).expect("crossing on f");
                    let down = b.walk(*f, p, -1).map(|q| (p - q, q));
                    let up = b.walk(*f, p, 1).map(|q| (q - p, q));
                    let (_, q) = match (down, up) {
                        (Some(a), Some(u)) if u.0 < a.0 => u,
                        (Some(a), _) => a,
                        (None, Some(u)) => u,
                        (None, None) => unreachable!("both endpoints of f are on the tree"),
                    };
                    b.add_run(*f, p, q);
                }
            }
        }
        for (e, v) in bfs_order(d, first) {
            b.attach(e, v);
        }
    }
    TopoSpanningTree::from_segments(&map, &b.marks)
}
