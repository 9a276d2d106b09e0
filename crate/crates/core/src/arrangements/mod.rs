//! Simple arrangements of pseudochords with a fixed perimetric order: the
//! binary α-encoding and its inductive decoder, exhaustive enumeration of
//! isomorphism classes, and the dual quadrangulation.
//!
//! The perimetric order is counter-clockwise. Cutting it at `cut` and
//! unfolding gives a left-to-right sequence; the *left* endpoint of a
//! pseudochord is whichever of its two endpoints comes first there.
//! Crossing orders are always listed from the `a` endpoint to the `b`
//! endpoint.

pub mod dual;
pub mod map;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use dual::{dual_quadrangulation, DualChecks, DualFace, DualMap, DualVertex};
pub use map::{DiscMap, EdgeKind, VertexKind};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("malformed endpoint symbol {0:?}")]
    BadSymbol(String),
    #[error("perimetric order must contain a and b exactly once for every label (problem at {0})")]
    MalformedOrder(u32),
    #[error("cut {cut} out of range for {len} endpoints")]
    BadCut { cut: usize, len: usize },
    #[error("crossing orders are not symmetric at pair ({0}, {1})")]
    Asymmetric(u32, u32),
    #[error("pair ({0}, {1}) is listed as crossing but does not interleave, or the reverse")]
    InterleavingMismatch(u32, u32),
    #[error("pseudochord {0} crosses another one more than once")]
    NotSimple(u32),
    #[error("crossing orders are not realizable (failed inserting pseudochord {0})")]
    NotRealizable(u32),
    #[error("unknown pseudochord label {0}")]
    UnknownLabel(u32),
    #[error("code does not encode any arrangement: {0}")]
    InvalidCode(String),
    #[error("{n} pseudochords is above the configured limit {limit}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum End {
    A,
    B,
}

/// One endpoint of a labeled pseudochord, written `a3` or `b3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Endpoint {
    pub label: u32,
    pub end: End,
}

impl Endpoint {
    pub fn a(label: u32) -> Endpoint {
        Endpoint { label, end: End::A }
    }

    pub fn b(label: u32) -> Endpoint {
        Endpoint { label, end: End::B }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.end == End::A { 'a' } else { 'b' };
        write!(f, "{c}{}", self.label)
    }
}

impl FromStr for Endpoint {
    type Err = ArrangementError;
    fn from_str(s: &str) -> Result<Self, ArrangementError> {
        let s = s.trim();
        let bad = || ArrangementError::BadSymbol(s.to_string());
        let (head, tail) = s.split_at_checked(1).ok_or_else(bad)?;
        let end = match head {
            "a" | "A" => End::A,
            "b" | "B" => End::B,
            _ => return Err(bad()),
        };
        let label = tail.parse().map_err(|_| bad())?;
        Ok(Endpoint { label, end })
    }
}

impl TryFrom<String> for Endpoint {
    type Error = ArrangementError;
    fn try_from(s: String) -> Result<Self, ArrangementError> {
        s.parse()
    }
}

impl From<Endpoint> for String {
    fn from(e: Endpoint) -> Self {
        e.to_string()
    }
}

/// Cyclic counter-clockwise sequence of endpoints plus the position where
/// it is cut open.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawOrder", into = "RawOrder")]
pub struct PerimetricOrder {
    sequence: Vec<Endpoint>,
    cut: usize,
}

#[derive(Serialize, Deserialize)]
struct RawOrder {
    order: Vec<Endpoint>,
    #[serde(default)]
    cut: usize,
}

impl TryFrom<RawOrder> for PerimetricOrder {
    type Error = ArrangementError;
    fn try_from(r: RawOrder) -> Result<Self, ArrangementError> {
        PerimetricOrder::new(r.order, r.cut)
    }
}

impl From<PerimetricOrder> for RawOrder {
    fn from(p: PerimetricOrder) -> Self {
        RawOrder { order: p.sequence, cut: p.cut }
    }
}

impl fmt::Display for PerimetricOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sequence.iter().join(","))?;
        if self.cut != 0 {
            write!(f, " (cut {})", self.cut)?;
        }
        Ok(())
    }
}

impl PerimetricOrder {
    pub fn new(sequence: Vec<Endpoint>, cut: usize) -> Result<PerimetricOrder, ArrangementError> {
        let mut seen: BTreeMap<u32, [bool; 2]> = BTreeMap::new();
        for e in &sequence {
            let slot = &mut seen.entry(e.label).or_default()[(e.end == End::B) as usize];
            if *slot {
                return Err(ArrangementError::MalformedOrder(e.label));
            }
            *slot = true;
        }
        if let Some((&l, _)) = seen.iter().find(|(_, s)| !(s[0] && s[1])) {
            return Err(ArrangementError::MalformedOrder(l));
        }
        if cut >= sequence.len().max(1) {
            return Err(ArrangementError::BadCut { cut, len: sequence.len() });
        }
        Ok(PerimetricOrder { sequence, cut })
    }

    /// Parses a comma-separated symbol list such as `a1,a2,b1,b2`.
    pub fn parse(list: &str, cut: usize) -> Result<PerimetricOrder, ArrangementError> {
        let seq = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Endpoint>, _>>()?;
        PerimetricOrder::new(seq, cut)
    }

    pub fn sequence(&self) -> &[Endpoint] {
        &self.sequence
    }

    pub fn cut(&self) -> usize {
        self.cut
    }

    pub fn n(&self) -> usize {
        self.sequence.len() / 2
    }

    pub fn labels(&self) -> Vec<u32> {
        self.sequence.iter().map(|e| e.label).sorted().dedup().collect()
    }

    /// The sequence read left to right after cutting.
    pub fn linear(&self) -> Vec<Endpoint> {
        let mut v = self.sequence.clone();
        v.rotate_left(self.cut);
        v
    }

    /// Linear positions of each label's `a` and `b` endpoints.
    pub fn positions(&self) -> BTreeMap<u32, (usize, usize)> {
        let mut out: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (p, e) in self.linear().iter().enumerate() {
            let slot = out.entry(e.label).or_default();
            match e.end {
                End::A => slot.0 = p,
                End::B => slot.1 = p,
            }
        }
        out
    }

    /// Pairs of labels whose endpoints interleave.
    pub fn crossing_pairs(&self) -> BTreeSet<(u32, u32)> {
        let pos = self.positions();
        let span: Vec<(u32, usize, usize)> = pos.iter().map(|(&l, &(a, b))| (l, a.min(b), a.max(b))).collect();
        let mut out = BTreeSet::new();
        for (i, &(l1, x1, y1)) in span.iter().enumerate() {
            for &(l2, x2, y2) in &span[i + 1..] {
                if (x1 < x2 && x2 < y1 && y1 < y2) || (x2 < x1 && x1 < y2 && y2 < y1) {
                    out.insert((l1, l2));
                }
            }
        }
        out
    }

    /// Labels whose two endpoints are cyclically adjacent.
    pub fn ears(&self) -> Vec<u32> {
        let m = self.sequence.len();
        let mut out: Vec<u32> = (0..m)
            .filter(|&k| self.sequence[k].label == self.sequence[(k + 1) % m].label)
            .map(|k| self.sequence[k].label)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Every order of the endpoints of labels `1..=n`, cut at 0.
    pub fn all(n: usize) -> impl Iterator<Item = PerimetricOrder> {
        let symbols: Vec<Endpoint> = (1..=n as u32).flat_map(|l| [Endpoint::a(l), Endpoint::b(l)]).collect();
        symbols.clone().into_iter().permutations(symbols.len()).map(|seq| PerimetricOrder { sequence: seq, cut: 0 })
    }
}

pub fn crossing_pairs(order: &PerimetricOrder) -> BTreeSet<(u32, u32)> {
    order.crossing_pairs()
}

/// A perimetric order together with the order of crossings along every
/// pseudochord.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawArrangement", into = "RawArrangement")]
pub struct Arrangement {
    order: PerimetricOrder,
    crossing_orders: BTreeMap<u32, Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct RawArrangement {
    order: Vec<Endpoint>,
    #[serde(default)]
    cut: usize,
    crossing_orders: BTreeMap<u32, Vec<u32>>,
}

impl TryFrom<RawArrangement> for Arrangement {
    type Error = ArrangementError;
    fn try_from(r: RawArrangement) -> Result<Self, ArrangementError> {
        Arrangement::new(PerimetricOrder::new(r.order, r.cut)?, r.crossing_orders)
    }
}

impl From<Arrangement> for RawArrangement {
    fn from(a: Arrangement) -> Self {
        RawArrangement { order: a.order.sequence, cut: a.order.cut, crossing_orders: a.crossing_orders }
    }
}

impl Arrangement {
    /// Validates symmetry, agreement with the perimetric order and
    /// realizability, by replaying the insertion of every pseudochord.
    pub fn new(
        order: PerimetricOrder,
        mut crossing_orders: BTreeMap<u32, Vec<u32>>,
    ) -> Result<Arrangement, ArrangementError> {
        let labels = order.labels();
        for &l in &labels {
            crossing_orders.entry(l).or_default();
        }
        for (&i, list) in &crossing_orders {
            if labels.binary_search(&i).is_err() {
                return Err(ArrangementError::UnknownLabel(i));
            }
            if list.iter().collect::<BTreeSet<_>>().len() != list.len() || list.contains(&i) {
                return Err(ArrangementError::NotSimple(i));
            }
            for &j in list {
                let back = crossing_orders.get(&j).ok_or(ArrangementError::UnknownLabel(j))?;
                if !back.contains(&i) {
                    return Err(ArrangementError::Asymmetric(i.min(j), i.max(j)));
                }
            }
        }
        let listed: BTreeSet<(u32, u32)> = crossing_orders
            .iter()
            .flat_map(|(&i, l)| l.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
            .collect();
        let pairs = order.crossing_pairs();
        if let Some(&(i, j)) = listed.symmetric_difference(&pairs).next() {
            return Err(ArrangementError::InterleavingMismatch(i, j));
        }
        let a = Arrangement { order, crossing_orders };
        a.realize()?;
        Ok(a)
    }

    pub fn order(&self) -> &PerimetricOrder {
        &self.order
    }

    pub fn crossing_orders(&self) -> &BTreeMap<u32, Vec<u32>> {
        &self.crossing_orders
    }

    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn crossings(&self) -> usize {
        self.crossing_orders.values().map(Vec::len).sum::<usize>() / 2
    }

    /// Builds the planar map by inserting pseudochords in label order, each
    /// along the unique dual path its crossing order prescribes.
    pub fn realize(&self) -> Result<DiscMap, ArrangementError> {
        let pos = self.order.positions();
        let mut map = DiscMap::new(&self.order.linear());
        for (&i, list) in &self.crossing_orders {
            let (pa, pb) = pos[&i];
            let (face, _) = map.face_labels();
            let mut f = face[map.arc_into(pa)];
            let mut path = Vec::new();
            for &j in list.iter().filter(|&&j| j < i) {
                let seg = self.crossing_orders[&j].iter().take_while(|&&x| x != i).filter(|&&x| x < i).count();
                let vs = &map.chord_vertices()[&j];
                let h = map.find_half_edge(vs[seg], vs[seg + 1], j).ok_or(ArrangementError::NotRealizable(i))?;
                let h = if face[h] == f { h } else { map.twin(h) };
                if face[h] != f {
                    return Err(ArrangementError::NotRealizable(i));
                }
                path.push(h);
                f = face[map.twin(h)];
            }
            if face[map.arc_into(pb)] != f {
                return Err(ArrangementError::NotRealizable(i));
            }
            map.insert(i, pa, pb, &path);
        }
        if map.crossing_orders() != self.crossing_orders {
            let bad = self.crossing_orders.keys().next().copied().unwrap_or(0);
            return Err(ArrangementError::NotRealizable(bad));
        }
        Ok(map)
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.order)?;
        for (i, l) in &self.crossing_orders {
            write!(f, " {i}:({})", l.iter().join(","))?;
        }
        Ok(())
    }
}

/// Per-pseudochord bit vectors, keyed by label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlphaCode(pub BTreeMap<u32, Vec<u8>>);

impl AlphaCode {
    pub fn total_bits(&self) -> usize {
        self.0.values().map(Vec::len).sum()
    }

    /// Parses `bits;bits;...` with one group per label in increasing order,
    /// each group a string of `0`/`1` (commas allowed).
    pub fn parse(labels: &[u32], s: &str) -> Result<AlphaCode, ArrangementError> {
        let groups: Vec<&str> = s.split(';').collect();
        if groups.len() != labels.len() {
            return Err(ArrangementError::InvalidCode(format!(
                "expected {} groups, found {}",
                labels.len(),
                groups.len()
            )));
        }
        let mut out = BTreeMap::new();
        for (&l, g) in labels.iter().zip(groups) {
            let bits = g
                .chars()
                .filter(|c| !c.is_whitespace() && *c != ',')
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(ArrangementError::InvalidCode(format!("bad bit {c:?}"))),
                })
                .collect::<Result<Vec<u8>, _>>()?;
            out.insert(l, bits);
        }
        Ok(AlphaCode(out))
    }
}

impl fmt::Display for AlphaCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let groups = self.0.values().map(|b| b.iter().map(u8::to_string).collect::<String>());
        write!(f, "{}", groups.format(";"))
    }
}

/// `left[i]` is the linear position of the left endpoint of `i`, and
/// `flipped[i]` says whether that endpoint is `b`.
fn left_endpoints(order: &PerimetricOrder) -> BTreeMap<u32, (usize, bool)> {
    order.positions().into_iter().map(|(l, (a, b))| (l, (a.min(b), b < a))).collect()
}

/// Bit `j` of `α^i` is 1 exactly when the left endpoint of `i` precedes the
/// left endpoint of the `j`-th pseudochord crossing `i` (counted from the
/// left endpoint of `i`).
pub fn encode(arr: &Arrangement) -> AlphaCode {
    let left = left_endpoints(&arr.order);
    let code = arr
        .crossing_orders
        .iter()
        .map(|(&i, list)| {
            let (li, flipped) = left[&i];
            let mut seq = list.clone();
            if flipped {
                seq.reverse();
            }
            (i, seq.iter().map(|j| (li < left[j].0) as u8).collect())
        })
        .collect();
    AlphaCode(code)
}

/// Reconstructs crossing orders from the α-code by repeatedly locating the
/// first crossing of two pseudochords with consecutive left endpoints.
/// Rejects every code that is not the encoding of an arrangement with this
/// perimetric order.
pub fn decode(order: &PerimetricOrder, code: &AlphaCode) -> Result<Arrangement, ArrangementError> {
    let invalid = |m: &str| ArrangementError::InvalidCode(m.to_string());
    let labels = order.labels();
    if !code.0.keys().copied().eq(labels.iter().copied()) {
        return Err(invalid("labels differ from the perimetric order"));
    }
    let pairs = order.crossing_pairs();
    for &l in &labels {
        let deg = pairs.iter().filter(|&&(x, y)| x == l || y == l).count();
        if code.0[&l].len() != deg {
            return Err(invalid("vector length differs from the number of crossings"));
        }
        if code.0[&l].iter().any(|&b| b > 1) {
            return Err(invalid("bits must be 0 or 1"));
        }
    }

    // Working sequence of (label, is_left) endpoints, left to right.
    let left = left_endpoints(order);
    let mut seq: Vec<(u32, bool)> =
        order.linear().iter().enumerate().map(|(p, e)| (e.label, left[&e.label].0 == p)).collect();
    let mut bits: BTreeMap<u32, std::collections::VecDeque<u8>> =
        code.0.iter().map(|(&l, b)| (l, b.iter().copied().collect())).collect();
    let mut found: BTreeMap<u32, Vec<u32>> = labels.iter().map(|&l| (l, Vec::new())).collect();

    let span = |seq: &[(u32, bool)], l: u32| -> (usize, usize) {
        let mut it = seq.iter().enumerate().filter(|(_, s)| s.0 == l).map(|(p, _)| p);
        let x = it.next().expect("label present");
        let y = it.next().expect("label present");
        (x, y)
    };
    let interleave = |seq: &[(u32, bool)], i: u32, j: u32| -> bool {
        let ((x1, y1), (x2, y2)) = (span(seq, i), span(seq, j));
        (x1 < x2 && x2 < y1 && y1 < y2) || (x2 < x1 && x1 < y2 && y2 < y1)
    };

    loop {
        // Peel pseudochords with no remaining crossings.
        let empty: Vec<u32> = bits.iter().filter(|(_, b)| b.is_empty()).map(|(&l, _)| l).collect();
        for l in empty {
            if bits.keys().any(|&j| j != l && interleave(&seq, l, j)) {
                return Err(invalid("a finished pseudochord still interleaves another"));
            }
            bits.remove(&l);
            seq.retain(|s| s.0 != l);
        }
        if bits.is_empty() {
            break;
        }
        let lefts: Vec<u32> = seq.iter().filter(|s| s.1).map(|s| s.0).collect();
        let s = lefts
            .windows(2)
            .position(|w| bits[&w[0]][0] == 1 && bits[&w[1]][0] == 0)
            .ok_or_else(|| invalid("no consecutive pair with leading bits 1, 0"))?;
        let (p, q) = (lefts[s], lefts[s + 1]);
        let (lp, lq) = (span(&seq, p).0, span(&seq, q).0);
        if lq != lp + 1 {
            return Err(invalid("an endpoint separates the two left endpoints"));
        }
        if !interleave(&seq, p, q) {
            return Err(invalid("the swapped pair does not cross"));
        }
        found.get_mut(&p).unwrap().push(q);
        found.get_mut(&q).unwrap().push(p);
        bits.get_mut(&p).unwrap().pop_front();
        bits.get_mut(&q).unwrap().pop_front();
        seq.swap(lp, lq);
    }

    for (l, list) in found.iter_mut() {
        if left[l].1 {
            list.reverse();
        }
    }
    let arr = Arrangement::new(order.clone(), found).map_err(|e| invalid(&e.to_string()))?;
    if encode(&arr) != *code {
        return Err(invalid("decoded arrangement re-encodes differently"));
    }
    Ok(arr)
}

/// Every isomorphism class of simple arrangements with this perimetric
/// order, sorted. Pseudochords are inserted in label order, each along
/// every dual path that crosses exactly the pseudochords it must cross.
pub fn enumerate_classes(order: &PerimetricOrder, limit: usize) -> Result<Vec<Arrangement>, ArrangementError> {
    if order.n() > limit {
        return Err(ArrangementError::TooLarge { n: order.n(), limit });
    }
    let labels = order.labels();
    let pos = order.positions();
    let pairs = order.crossing_pairs();
    let plan: Vec<(u32, usize, usize, Vec<u32>)> = labels
        .iter()
        .enumerate()
        .map(|(idx, &i)| {
            let req = labels[..idx].iter().copied().filter(|&j| pairs.contains(&(j.min(i), j.max(i)))).collect();
            (i, pos[&i].0, pos[&i].1, req)
        })
        .collect();

    fn rec(map: DiscMap, plan: &[(u32, usize, usize, Vec<u32>)], out: &mut Vec<BTreeMap<u32, Vec<u32>>>) {
        let Some(((i, pa, pb, req), rest)) = plan.split_first() else {
            out.push(map.crossing_orders());
            return;
        };
        let paths = map.plan_paths(*pa, *pb, req);
        let parts: Vec<Vec<BTreeMap<u32, Vec<u32>>>> = paths
            .par_iter()
            .map(|path| {
                let mut m = map.clone();
                m.insert(*i, *pa, *pb, path);
                let mut sub = Vec::new();
                rec(m, rest, &mut sub);
                sub
            })
            .collect();
        out.extend(parts.into_iter().flatten());
    }

    let mut found = Vec::new();
    rec(DiscMap::new(&order.linear()), &plan, &mut found);
    let set: BTreeSet<Arrangement> =
        found.into_iter().map(|c| Arrangement { order: order.clone(), crossing_orders: c }).collect();
    Ok(set.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> PerimetricOrder {
        PerimetricOrder::parse(s, 0).unwrap()
    }

    fn arr(o: &str, lists: &[(u32, &[u32])]) -> Result<Arrangement, ArrangementError> {
        Arrangement::new(order(o), lists.iter().map(|&(l, v)| (l, v.to_vec())).collect())
    }

    #[test]
    fn crossing_pair_examples() {
        assert_eq!(order("a1,a2,b1,b2").crossing_pairs(), [(1, 2)].into());
        assert!(order("a1,b1,a2,b2").crossing_pairs().is_empty());
        assert_eq!(order("a1,a2,a3,b1,b2,b3").crossing_pairs(), [(1, 2), (1, 3), (2, 3)].into());
        assert!(PerimetricOrder::parse("a1,a1,b1", 0).is_err());
        assert!(PerimetricOrder::parse("a1,b2", 0).is_err());
        assert!(PerimetricOrder::parse("a1,x1", 0).is_err());
        assert!(PerimetricOrder::parse("a1,b1", 2).is_err());
    }

    #[test]
    fn order_json_round_trip() {
        let a = arr("a1,a2,b1,b2", &[(1, &[2]), (2, &[1])]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"order":["a1","a2","b1","b2"],"cut":0,"crossing_orders":{"1":[2],"2":[1]}}"#);
        assert_eq!(serde_json::from_str::<Arrangement>(&s).unwrap(), a);
    }

    #[test]
    fn validation() {
        assert!(matches!(arr("a1,a2,b1,b2", &[(1, &[2])]), Err(ArrangementError::Asymmetric(1, 2))));
        assert!(matches!(
            arr("a1,b1,a2,b2", &[(1, &[2]), (2, &[1])]),
            Err(ArrangementError::InterleavingMismatch(1, 2))
        ));
        assert!(matches!(arr("a1,a2,b1,b2", &[]), Err(ArrangementError::InterleavingMismatch(1, 2))));
        // Three pairwise crossing chords: 1 meets 3 before 2, yet 2 meets 1
        // before 3 and 3 meets 2 before 1 -- a cyclic triangle that cannot
        // be drawn with these endpoints.
        let r = arr("a1,a2,a3,b1,b2,b3", &[(1, &[3, 2]), (2, &[1, 3]), (3, &[2, 1])]);
        assert!(matches!(r, Err(ArrangementError::NotRealizable(_))), "{r:?}");
    }

    #[test]
    fn encode_examples() {
        let a = arr("a1,a2,b1,b2", &[(1, &[2]), (2, &[1])]).unwrap();
        assert_eq!(encode(&a).0, [(1, vec![1]), (2, vec![0])].into());
        let empty = arr("a1,b1", &[]).unwrap();
        assert_eq!(encode(&empty).0, [(1, vec![])].into());
    }

    #[test]
    fn three_pairwise_crossing() {
        let o = order("a1,a2,a3,b1,b2,b3");
        let classes = enumerate_classes(&o, 5).unwrap();
        assert_eq!(classes.len(), 2);
        let codes: BTreeSet<_> = classes.iter().map(encode).collect();
        assert_eq!(codes.len(), 2);
        for c in &codes {
            assert_eq!(c.0[&1], vec![1, 1]);
            assert_eq!(c.0[&3], vec![0, 0]);
        }
        let middles: BTreeSet<_> = codes.iter().map(|c| c.0[&2].clone()).collect();
        assert_eq!(middles, [vec![0, 1], vec![1, 0]].into());
    }

    #[test]
    fn decode_examples() {
        let o = order("a1,a2,b1,b2");
        let ok = decode(&o, &AlphaCode::parse(&[1, 2], "1;0").unwrap()).unwrap();
        assert_eq!(ok.crossing_orders()[&1], vec![2]);
        let bad = decode(&o, &AlphaCode::parse(&[1, 2], "0;1").unwrap());
        assert!(matches!(bad, Err(ArrangementError::InvalidCode(_))));
    }

    #[test]
    fn round_trip_with_reversed_chords_and_cut() {
        for cut in 0..6 {
            let o = PerimetricOrder::parse("b1,a2,a3,a1,b2,b3", cut).unwrap();
            let classes = enumerate_classes(&o, 5).unwrap();
            assert!(!classes.is_empty());
            for a in &classes {
                assert_eq!(decode(&o, &encode(a)).unwrap(), *a);
            }
        }
    }

    #[test]
    fn single_crossing_has_one_class() {
        assert_eq!(enumerate_classes(&order("a1,a2,b1,b2"), 5).unwrap().len(), 1);
        assert!(enumerate_classes(&order("a1,a2,a3,a4,a5,a6,b1,b2,b3,b4,b5,b6"), 5).is_err());
    }

    #[test]
    fn primal_euler() {
        for a in enumerate_classes(&order("a1,a2,a3,b1,b2,b3"), 5).unwrap() {
            let map = a.realize().unwrap();
            let (_, faces) = map.face_labels();
            let (n, k) = (a.n(), a.crossings());
            assert_eq!(map.vertex_count(), 2 * n + k);
            assert_eq!(map.edge_count(), 3 * n + 2 * k);
            assert_eq!(faces, n + k + 2);
        }
    }
}
