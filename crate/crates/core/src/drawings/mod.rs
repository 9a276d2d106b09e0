//! Combinatorial simple topological graphs: extended rotation systems,
//! crossing orders along edges and (for several topological components)
//! the face structure.
//!
//! Rotations are clockwise. Every edge is oriented from its smaller endpoint,
//! and crossing orders are listed in that direction.

pub mod geometry;
pub mod map;
pub mod tree;
pub mod trep;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, EdgePair, GraphError, Label, SimpleGraph};
use crate::rotsys::{CyclicPerm, RotationSystem};

pub use geometry::{from_integer_points, from_straight_line};
pub use map::DrawingMap;
pub use tree::{spanning_tree, TopoSpanningTree, TreeArc};
pub use trep::{classify_type_pair, t_representation, EndpointType, Piece, TRepresentation, TypePairClass};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed drawing: {0}")]
    Malformed(String),
    #[error("invalid drawing: {0}")]
    Invalid(Diagnostic),
    #[error("the drawings have different underlying graphs")]
    DifferentGraphs,
    #[error("the drawing is not topologically connected")]
    NotTopologicallyConnected,
    #[error("inconsistent spanning tree: {0}")]
    InconsistentTree(String),
    #[error("degenerate point set: {0}")]
    Degenerate(String),
    #[error("the K2,n construction needs an even n >= 2, got {0}")]
    OddOrder(usize),
    #[error("inconsistent T-representation: {0}")]
    Representation(String),
}

/// A vertex or a crossing of a drawing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Site {
    Vertex(Label),
    Crossing(EdgePair),
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Vertex(v) => write!(f, "{v}"),
            Site::Crossing(p) => write!(f, "{}x{}", p.first(), p.second()),
        }
    }
}

/// The portion of `edge` leaving a crossing toward its endpoint `toward`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Strand {
    pub edge: Edge,
    pub toward: Label,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    #[error("rotation at vertex {vertex} does not list exactly its neighbours")]
    RotationMismatch { vertex: Label },
    #[error("crossing list mentions edge {edge}, which is not in the graph")]
    UnknownEdge { edge: Edge },
    #[error("edge {edge} crosses itself or the adjacent edge {other}")]
    AdjacentCrossing { edge: Edge, other: Edge },
    #[error("edge {edge} crosses {other} more than once")]
    RepeatedCrossing { edge: Edge, other: Edge },
    #[error("edge {edge} lists a crossing with {other} but not vice versa")]
    Asymmetric { edge: Edge, other: Edge },
    #[error("crossing {pair} has no rotation")]
    MissingCrossingRotation { pair: EdgePair },
    #[error("rotation given for {pair}, which is not a crossing")]
    ExtraCrossingRotation { pair: EdgePair },
    #[error("rotation at crossing {pair} does not alternate the four strands of its edges")]
    BadCrossingRotation { pair: EdgePair },
    #[error("Euler check fails on a topological component: {v} - {e} + {f} != 2")]
    Euler { v: usize, e: usize, f: usize },
    #[error("several topological components but no face structure")]
    MissingFaceStructure,
    #[error("face structure mentions {site}, which is not a vertex or crossing")]
    UnknownSite { site: String },
}

/// Oriented facial walks of the faces with several boundary components.
/// Either every outer boundary runs clockwise and every inner boundary
/// counter-clockwise, or the reverse; both readings compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaceStructure(pub Vec<Vec<Vec<Site>>>);

fn min_rotation<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    (0..v.len().max(1))
        .map(|k| {
            let mut w = v.to_vec();
            if !w.is_empty() {
                w.rotate_left(k);
            }
            w
        })
        .min()
        .unwrap_or_default()
}

impl FaceStructure {
    fn canonical(&self, flip: bool) -> Vec<Vec<Vec<Site>>> {
        let mut faces: Vec<Vec<Vec<Site>>> = self
            .0
            .iter()
            .map(|face| {
                let mut walks: Vec<Vec<Site>> = face
                    .iter()
                    .map(|w| {
                        let mut w = w.clone();
                        if flip {
                            w.reverse();
                        }
                        min_rotation(&w)
                    })
                    .collect();
                walks.sort();
                walks
            })
            .collect();
        faces.sort();
        faces
    }

    pub fn same_as(&self, other: &FaceStructure) -> bool {
        let mine = self.canonical(false);
        mine == other.canonical(false) || mine == other.canonical(true)
    }

    pub fn reversed(&self) -> FaceStructure {
        FaceStructure(
            self.0
                .iter()
                .map(|f| {
                    f.iter()
                        .map(|w| {
                            let mut w = w.clone();
                            w.reverse();
                            w
                        })
                        .collect()
                })
                .collect(),
        )
    }
}

/// Abstract topological graph: a graph and its crossing edge pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ATGraph {
    pub graph: SimpleGraph,
    pub crossing_pairs: BTreeSet<EdgePair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDrawing", into = "RawDrawing")]
pub struct Drawing {
    pub graph: SimpleGraph,
    pub vertex_rotations: BTreeMap<Label, CyclicPerm>,
    pub edge_crossings: BTreeMap<Edge, Vec<Edge>>,
    pub crossing_rotations: BTreeMap<EdgePair, Vec<Strand>>,
    pub face_structure: Option<FaceStructure>,
}

#[derive(Serialize, Deserialize)]
struct RawCrossings {
    edge: Edge,
    crosses: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct RawCrossingRotation {
    crossing: EdgePair,
    rotation: Vec<Strand>,
}

#[derive(Serialize, Deserialize)]
struct RawDrawing {
    graph: SimpleGraph,
    vertex_rotations: BTreeMap<Label, Vec<Label>>,
    #[serde(default)]
    edge_crossings: Vec<RawCrossings>,
    #[serde(default)]
    crossing_rotations: Vec<RawCrossingRotation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    face_structure: Option<FaceStructure>,
}

impl TryFrom<RawDrawing> for Drawing {
    type Error = DrawingError;
    fn try_from(r: RawDrawing) -> Result<Self, DrawingError> {
        let mut vertex_rotations = BTreeMap::new();
        for (v, list) in r.vertex_rotations {
            let perm = CyclicPerm::new(list).map_err(|e| DrawingError::Malformed(format!("rotation at {v}: {e}")))?;
            vertex_rotations.insert(v, perm);
        }
        let mut edge_crossings = BTreeMap::new();
        for c in r.edge_crossings {
            if edge_crossings.insert(c.edge, c.crosses).is_some() {
                return Err(DrawingError::Malformed(format!("edge {} listed twice", c.edge)));
            }
        }
        let mut crossing_rotations = BTreeMap::new();
        for c in r.crossing_rotations {
            if crossing_rotations.insert(c.crossing, c.rotation).is_some() {
                return Err(DrawingError::Malformed(format!("crossing {} listed twice", c.crossing)));
            }
        }
        Ok(Drawing::new(r.graph, vertex_rotations, edge_crossings, crossing_rotations, r.face_structure))
    }
}

impl From<Drawing> for RawDrawing {
    fn from(d: Drawing) -> Self {
        RawDrawing {
            graph: d.graph,
            vertex_rotations: d.vertex_rotations.into_iter().map(|(v, p)| (v, p.into())).collect(),
            edge_crossings: d
                .edge_crossings
                .into_iter()
                .filter(|(_, l)| !l.is_empty())
                .map(|(edge, crosses)| RawCrossings { edge, crosses })
                .collect(),
            crossing_rotations: d
                .crossing_rotations
                .into_iter()
                .map(|(crossing, rotation)| RawCrossingRotation { crossing, rotation })
                .collect(),
            face_structure: d.face_structure,
        }
    }
}

impl Drawing {
    /// Assembles a drawing; empty crossing lists are dropped and crossing
    /// rotations are rotated to start at their smallest strand. No checks.
    pub fn new(
        graph: SimpleGraph,
        vertex_rotations: BTreeMap<Label, CyclicPerm>,
        mut edge_crossings: BTreeMap<Edge, Vec<Edge>>,
        crossing_rotations: BTreeMap<EdgePair, Vec<Strand>>,
        face_structure: Option<FaceStructure>,
    ) -> Drawing {
        edge_crossings.retain(|_, l| !l.is_empty());
        let crossing_rotations = crossing_rotations.into_iter().map(|(p, r)| (p, min_rotation(&r))).collect();
        Drawing { graph, vertex_rotations, edge_crossings, crossing_rotations, face_structure }
    }

    pub fn crossings_of(&self, e: Edge) -> &[Edge] {
        self.edge_crossings.get(&e).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Crossing pairs as listed along the edges.
    pub fn crossing_pairs(&self) -> BTreeSet<EdgePair> {
        self.edge_crossings
            .iter()
            .flat_map(|(&e, l)| l.iter().filter(move |&&f| f != e).map(move |&f| EdgePair::new(e, f)))
            .collect()
    }

    /// Every violated invariant, structural checks first. The Euler check
    /// runs only on structurally sound input.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let g = &self.graph;
        for &v in g.vertices() {
            let expected: BTreeSet<Label> = g.neighbors(v).into_iter().collect();
            let ok = match self.vertex_rotations.get(&v) {
                Some(p) => p.len() == expected.len() && p.as_slice().iter().all(|w| expected.contains(w)),
                None => expected.is_empty(),
            };
            if !ok {
                out.push(Diagnostic::RotationMismatch { vertex: v });
            }
        }
        for &v in self.vertex_rotations.keys() {
            if !g.vertices().contains(&v) {
                out.push(Diagnostic::RotationMismatch { vertex: v });
            }
        }
        for (&e, list) in &self.edge_crossings {
            if !g.has_edge(e) {
                out.push(Diagnostic::UnknownEdge { edge: e });
                continue;
            }
            let mut seen = BTreeSet::new();
            for &f in list {
                if !g.has_edge(f) {
                    out.push(Diagnostic::UnknownEdge { edge: f });
                } else if f == e || f.is_adjacent(&e) {
                    out.push(Diagnostic::AdjacentCrossing { edge: e, other: f });
                } else if !seen.insert(f) {
                    out.push(Diagnostic::RepeatedCrossing { edge: e, other: f });
                } else if !self.crossings_of(f).contains(&e) {
                    out.push(Diagnostic::Asymmetric { edge: e, other: f });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let pairs = self.crossing_pairs();
        for &p in &pairs {
            match self.crossing_rotations.get(&p) {
                None => out.push(Diagnostic::MissingCrossingRotation { pair: p }),
                Some(r) => {
                    let (e, f) = (p.first(), p.second());
                    let strands: BTreeSet<Strand> = r.iter().copied().collect();
                    let expected: BTreeSet<Strand> =
                        [e, f].iter().flat_map(|&x| x.endpoints().map(|t| Strand { edge: x, toward: t })).collect();
                    if r.len() != 4 || strands != expected || r[0].edge != r[2].edge {
                        out.push(Diagnostic::BadCrossingRotation { pair: p });
                    }
                }
            }
        }
        for &p in self.crossing_rotations.keys() {
            if !pairs.contains(&p) {
                out.push(Diagnostic::ExtraCrossingRotation { pair: p });
            }
        }
        if !out.is_empty() {
            return out;
        }
        let map = DrawingMap::new(self);
        for (v, e, f) in map.euler_counts() {
            if v + f != e + 2 {
                out.push(Diagnostic::Euler { v, e, f });
            }
        }
        if self.topological_components().len() > 1 {
            match &self.face_structure {
                None => out.push(Diagnostic::MissingFaceStructure),
                Some(fs) => {
                    for s in fs.0.iter().flatten().flatten() {
                        if !map.index.contains_key(s) {
                            out.push(Diagnostic::UnknownSite { site: s.to_string() });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), DrawingError> {
        match self.diagnostics().into_iter().next() {
            None => Ok(()),
            Some(d) => Err(DrawingError::Invalid(d)),
        }
    }

    /// `(V, E, F)` of the planar map of every topological component.
    pub fn euler_counts(&self) -> Result<Vec<(usize, usize, usize)>, DrawingError> {
        self.validate()?;
        Ok(DrawingMap::new(self).euler_counts())
    }

    pub fn at_graph(&self) -> ATGraph {
        ATGraph { graph: self.graph.clone(), crossing_pairs: self.crossing_pairs() }
    }

    /// Vertex sets of the topological components, each sorted, ordered by
    /// smallest vertex.
    pub fn topological_components(&self) -> Vec<Vec<Label>> {
        let mut parent: BTreeMap<Label, Label> = self.graph.vertices().iter().map(|&v| (v, v)).collect();
        fn find(parent: &mut BTreeMap<Label, Label>, v: Label) -> Label {
            let p = parent[&v];
            if p == v {
                return v;
            }
            let r = find(parent, p);
            parent.insert(v, r);
            r
        }
        let union = |a: Label, b: Label, parent: &mut BTreeMap<Label, Label>| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent.insert(ra.max(rb), ra.min(rb));
            }
        };
        for e in self.graph.edges() {
            union(e.lo(), e.hi(), &mut parent);
        }
        for p in self.crossing_pairs() {
            if self.graph.has_edge(p.first()) && self.graph.has_edge(p.second()) {
                union(p.first().lo(), p.second().lo(), &mut parent);
            }
        }
        let mut groups: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
        for &v in self.graph.vertices() {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<Label>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// The vertex rotations as an abstract rotation system, when the graph
    /// is complete.
    pub fn rotation_system(&self) -> Option<RotationSystem> {
        let n = self.graph.order();
        if n < 3 || self.graph.size() != n * (n - 1) / 2 {
            return None;
        }
        RotationSystem::new(self.vertex_rotations.clone()).ok()
    }

    /// The mirror image: every vertex and crossing rotation inverted.
    pub fn mirror(&self) -> Drawing {
        let inv = |r: &Vec<Strand>| {
            let mut r = r.clone();
            r.reverse();
            r
        };
        Drawing::new(
            self.graph.clone(),
            self.vertex_rotations.iter().map(|(&v, p)| (v, p.inverse())).collect(),
            self.edge_crossings.clone(),
            self.crossing_rotations.iter().map(|(&p, r)| (p, inv(r))).collect(),
            self.face_structure.as_ref().map(FaceStructure::reversed),
        )
    }
}

fn same_graph(a: &Drawing, b: &Drawing) -> Result<(), DrawingError> {
    if a.graph != b.graph {
        return Err(DrawingError::DifferentGraphs);
    }
    a.validate()?;
    b.validate()
}

/// Equal AT-graphs under the identity labeling.
pub fn weak_iso(a: &Drawing, b: &Drawing) -> Result<bool, DrawingError> {
    same_graph(a, b)?;
    Ok(a.crossing_pairs() == b.crossing_pairs())
}

/// Weak isomorphism, equal crossing orders, extended rotation systems equal
/// or simultaneously inverse, and equal face structures when there are
/// several topological components.
pub fn is_isomorphic(a: &Drawing, b: &Drawing) -> Result<bool, DrawingError> {
    if !weak_iso(a, b)? || a.edge_crossings != b.edge_crossings {
        return Ok(false);
    }
    let same = a.vertex_rotations == b.vertex_rotations && a.crossing_rotations == b.crossing_rotations;
    let m = b.mirror();
    let inverse = a.vertex_rotations == m.vertex_rotations && a.crossing_rotations == m.crossing_rotations;
    if !same && !inverse {
        return Ok(false);
    }
    if a.topological_components().len() > 1 {
        return Ok(match (&a.face_structure, &b.face_structure) {
            (Some(x), Some(y)) => x.same_as(y),
            _ => false,
        });
    }
    Ok(true)
}

/// One member of the K_{2,n} family sharing a rotation system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K2nMember {
    pub choices: Vec<u8>,
    pub rotations: BTreeMap<Label, CyclicPerm>,
    pub at_graph: ATGraph,
}

/// The `2^{n/2}` AT-graphs of K_{2,n} with `v = 1`, `w = 2` and
/// `u_i = i + 2`: for every pair `(u_{2i-1}, u_{2i})` either `v u_{2i-1}`
/// crosses `w u_{2i}` (choice 0) or `w u_{2i-1}` crosses `v u_{2i}`.
pub fn k2n_family(n: usize) -> Result<Vec<K2nMember>, DrawingError> {
    if n < 2 || n % 2 == 1 {
        return Err(DrawingError::OddOrder(n));
    }
    let (v, w) = (1, 2);
    let u = |i: usize| i as Label + 2;
    let graph = SimpleGraph::new(1..=n as Label + 2, (1..=n).flat_map(|i| [[v, u(i)], [w, u(i)]]))?;
    let mut w_rot = Vec::with_capacity(n);
    for pair in (1..=n / 2).rev() {
        w_rot.extend([u(2 * pair - 1), u(2 * pair)]);
    }
    let mut rotations = BTreeMap::new();
    rotations.insert(v, CyclicPerm::new((1..=n).map(u).collect()).expect("distinct"));
    rotations.insert(w, CyclicPerm::new(w_rot).expect("distinct"));
    for i in 1..=n {
        rotations.insert(u(i), CyclicPerm::new(vec![v, w]).expect("distinct"));
    }
    let half = n / 2;
    let members = (0..1u64 << half)
        .map(|mask| {
            let choices: Vec<u8> = (0..half).map(|i| ((mask >> i) & 1) as u8).collect();
            let crossing_pairs = choices
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let (a, b) = (u(2 * i + 1), u(2 * i + 2));
                    if c == 0 {
                        EdgePair::new(Edge::new(v, a), Edge::new(w, b))
                    } else {
                        EdgePair::new(Edge::new(w, a), Edge::new(v, b))
                    }
                })
                .collect();
            K2nMember {
                choices,
                rotations: rotations.clone(),
                at_graph: ATGraph { graph: graph.clone(), crossing_pairs },
            }
        })
        .collect();
    Ok(members)
}

#[cfg(test)]
mod tests;
