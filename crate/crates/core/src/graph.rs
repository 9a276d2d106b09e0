//! Labeled simple graphs, edges and edge pairs shared by every module.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub type Label = u32;

/// An undirected edge stored with its smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[Label; 2]", into = "[Label; 2]")]
pub struct Edge(Label, Label);

impl Edge {
    /// Panics on a loop; use [`SimpleGraph::new`] for validated input.
    pub fn new(u: Label, v: Label) -> Edge {
        assert_ne!(u, v, "loop at {u}");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(&self) -> Label {
        self.0
    }

    pub fn hi(&self) -> Label {
        self.1
    }

    pub fn endpoints(&self) -> [Label; 2] {
        [self.0, self.1]
    }

    pub fn contains(&self, v: Label) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: Label) -> Label {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }

    pub fn is_adjacent(&self, other: &Edge) -> bool {
        self.contains(other.0) || self.contains(other.1)
    }
}

impl TryFrom<[Label; 2]> for Edge {
    type Error = GraphError;
    fn try_from(a: [Label; 2]) -> Result<Self, GraphError> {
        if a[0] == a[1] {
            return Err(GraphError::Loop(a[0]));
        }
        Ok(Edge::new(a[0], a[1]))
    }
}

impl From<Edge> for [Label; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

/// An unordered pair of distinct edges, stored sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[Edge; 2]", into = "[Edge; 2]")]
pub struct EdgePair(Edge, Edge);

impl EdgePair {
    pub fn new(a: Edge, b: Edge) -> EdgePair {
        assert_ne!(a, b);
        if a < b {
            EdgePair(a, b)
        } else {
            EdgePair(b, a)
        }
    }

    pub fn first(&self) -> Edge {
        self.0
    }

    pub fn second(&self) -> Edge {
        self.1
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.0 == e || self.1 == e
    }

    pub fn other(&self, e: Edge) -> Edge {
        if self.0 == e {
            self.1
        } else {
            self.0
        }
    }
}

impl TryFrom<[Edge; 2]> for EdgePair {
    type Error = GraphError;
    fn try_from(a: [Edge; 2]) -> Result<Self, GraphError> {
        if a[0] == a[1] {
            return Err(GraphError::DuplicateEdge(a[0]));
        }
        Ok(EdgePair::new(a[0], a[1]))
    }
}

impl From<EdgePair> for [Edge; 2] {
    fn from(p: EdgePair) -> Self {
        [p.0, p.1]
    }
}

impl fmt::Display for EdgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {0:?} has an endpoint outside the vertex set")]
    UnknownEndpoint([Label; 2]),
    #[error("loop at vertex {0}")]
    Loop(Label),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(Label),
}

/// A labeled graph without loops or multi-edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct SimpleGraph {
    vertices: BTreeSet<Label>,
    edges: BTreeSet<Edge>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    vertices: Option<Vec<Label>>,
    edges: Vec<[Label; 2]>,
}

impl TryFrom<RawGraph> for SimpleGraph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        let vertices = match (raw.vertices, raw.n) {
            (Some(v), _) => v,
            (None, Some(n)) => (1..=n).collect(),
            (None, None) => raw.edges.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect(),
        };
        SimpleGraph::new(vertices, raw.edges)
    }
}

impl From<SimpleGraph> for RawGraph {
    fn from(g: SimpleGraph) -> Self {
        let edges = g.edges.iter().map(|e| [e.lo(), e.hi()]).collect();
        let n = g.vertices.len() as u32;
        if g.vertices.iter().copied().eq(1..=n) {
            RawGraph { n: Some(n), vertices: None, edges }
        } else {
            RawGraph { n: None, vertices: Some(g.vertices.into_iter().collect()), edges }
        }
    }
}

impl SimpleGraph {
    pub fn new(
        vertices: impl IntoIterator<Item = Label>,
        edges: impl IntoIterator<Item = [Label; 2]>,
    ) -> Result<SimpleGraph, GraphError> {
        let mut vs = BTreeSet::new();
        for v in vertices {
            if !vs.insert(v) {
                return Err(GraphError::DuplicateVertex(v));
            }
        }
        let mut es = BTreeSet::new();
        for [u, v] in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if !vs.contains(&u) || !vs.contains(&v) {
                return Err(GraphError::UnknownEndpoint([u, v]));
            }
            let e = Edge::new(u, v);
            if !es.insert(e) {
                return Err(GraphError::DuplicateEdge(e));
            }
        }
        Ok(SimpleGraph { vertices: vs, edges: es })
    }

    /// Vertices `1..=n`.
    pub fn with_order(n: u32, edges: impl IntoIterator<Item = [Label; 2]>) -> Result<SimpleGraph, GraphError> {
        SimpleGraph::new(1..=n, edges)
    }

    pub fn complete(n: u32) -> SimpleGraph {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| [u, v]));
        SimpleGraph::with_order(n, edges).expect("complete graph is simple")
    }

    pub fn vertices(&self) -> &BTreeSet<Label> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn degree(&self, v: Label) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn neighbors(&self, v: Label) -> Vec<Label> {
        self.edges.iter().filter(|e| e.contains(v)).map(|e| e.other(v)).collect()
    }

    pub fn adjacency(&self) -> BTreeMap<Label, Vec<Label>> {
        let mut adj: BTreeMap<Label, Vec<Label>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in &self.edges {
            adj.get_mut(&e.lo()).unwrap().push(e.hi());
            adj.get_mut(&e.hi()).unwrap().push(e.lo());
        }
        for ns in adj.values_mut() {
            ns.sort_unstable();
        }
        adj
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Label>> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &adj[&u] {
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_is_normalized() {
        assert_eq!(Edge::new(3, 1), Edge::new(1, 3));
        assert_eq!(Edge::new(3, 1).lo(), 1);
        assert!(Edge::new(1, 2).is_adjacent(&Edge::new(2, 5)));
        assert!(!Edge::new(1, 2).is_adjacent(&Edge::new(3, 4)));
    }

    #[test]
    fn graph_json_uses_order_when_contiguous() {
        let g = SimpleGraph::with_order(3, [[1, 2], [2, 3]]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":3,"edges":[[1,2],[2,3]]}"#);
        let g2: SimpleGraph = serde_json::from_str(r#"{"vertices":[2,7],"edges":[[7,2]]}"#).unwrap();
        assert_eq!(g2.edges().iter().next(), Some(&Edge::new(2, 7)));
    }

    #[test]
    fn rejects_bad_graphs() {
        assert_eq!(SimpleGraph::with_order(3, [[1, 1]]), Err(GraphError::Loop(1)));
        assert!(matches!(SimpleGraph::with_order(3, [[1, 2], [2, 1]]), Err(GraphError::DuplicateEdge(_))));
        assert!(matches!(SimpleGraph::with_order(3, [[1, 4]]), Err(GraphError::UnknownEndpoint(_))));
    }

    #[test]
    fn components_are_found() {
        let g = SimpleGraph::with_order(6, [[1, 2], [2, 3], [4, 5]]).unwrap();
        assert_eq!(g.components(), vec![vec![1, 2, 3], vec![4, 5], vec![6]]);
    }
}
