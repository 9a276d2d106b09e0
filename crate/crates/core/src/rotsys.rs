//! Abstract rotation systems: cyclic permutations, restriction, the parity
//! test for four elements, goodness, signatures and the convex and twisted
//! families.
//!
//! Rotations are clockwise cyclic orders. A rotation `(i, j, k)` on three
//! labels with `i` the smallest is *positive* when `j < k`. A system on four
//! labels is realizable exactly when it has an even number of negative
//! rotations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::graph::{Edge, EdgePair, Label};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RotsysError {
    #[error("label {0} occurs twice in a cyclic permutation")]
    RepeatedLabel(Label),
    #[error("label {0} is not in the ground set")]
    UnknownLabel(Label),
    #[error("rotation at {0} must contain every other ground label exactly once")]
    BadRotation(Label),
    #[error("expected a system on {expected} labels, found {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("need at least {min} labels, found {found}")]
    TooSmall { min: usize, found: usize },
    #[error("rotation system is not good")]
    NotGood,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("4-element subsystem on {0:?} has odd parity")]
    ParityViolation([Label; 4]),
}

/// A cyclic sequence of distinct labels, stored rotated so the smallest
/// label comes first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Label>", into = "Vec<Label>")]
pub struct CyclicPerm(Vec<Label>);

impl CyclicPerm {
    pub fn new(mut elems: Vec<Label>) -> Result<CyclicPerm, RotsysError> {
        let mut seen = BTreeSet::new();
        for &x in &elems {
            if !seen.insert(x) {
                return Err(RotsysError::RepeatedLabel(x));
            }
        }
        if let Some(pos) = elems.iter().position_min() {
            elems.rotate_left(pos);
        }
        Ok(CyclicPerm(elems))
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: Label) -> bool {
        self.0.contains(&x)
    }

    pub fn position(&self, x: Label) -> Option<usize> {
        self.0.iter().position(|&y| y == x)
    }

    /// Clockwise successor of `x`.
    pub fn successor(&self, x: Label) -> Option<Label> {
        let p = self.position(x)?;
        Some(self.0[(p + 1) % self.0.len()])
    }

    pub fn predecessor(&self, x: Label) -> Option<Label> {
        let p = self.position(x)?;
        let n = self.0.len();
        Some(self.0[(p + n - 1) % n])
    }

    /// The cyclic subsequence on the labels accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(Label) -> bool) -> CyclicPerm {
        CyclicPerm(self.0.iter().copied().filter(|&x| keep(x)).collect())
    }

    pub fn inverse(&self) -> CyclicPerm {
        let mut v = self.0.clone();
        v.reverse();
        CyclicPerm::new(v).expect("reversal keeps labels distinct")
    }

    pub fn relabel(&self, f: impl Fn(Label) -> Label) -> CyclicPerm {
        CyclicPerm::new(self.0.iter().map(|&x| f(x)).collect()).expect("relabeling must be injective")
    }

    /// Sign of this rotation restricted to a three-element subset.
    pub fn sign_on(&self, triple: [Label; 3]) -> Sign {
        let mut t = triple;
        t.sort_unstable();
        let p = t.map(|x| self.position(x).expect("triple label in rotation"));
        cyclic_sign(p[0], p[1], p[2])
    }
}

impl TryFrom<Vec<Label>> for CyclicPerm {
    type Error = RotsysError;
    fn try_from(v: Vec<Label>) -> Result<Self, RotsysError> {
        CyclicPerm::new(v)
    }
}

impl From<CyclicPerm> for Vec<Label> {
    fn from(c: CyclicPerm) -> Self {
        c.0
    }
}

impl fmt::Display for CyclicPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn bit(self) -> u8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => 0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Sign of the cyclic order in which the sorted labels `x < y < z` sit at
/// positions `px, py, pz`: positive iff they read `x, y, z` clockwise.
#[inline]
pub fn cyclic_sign(px: usize, py: usize, pz: usize) -> Sign {
    if (px < py && py < pz) || (py < pz && pz < px) || (pz < px && px < py) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// An `n`-tuple of cyclic `(n-1)`-permutations, one per ground label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSystem", into = "RawSystem")]
pub struct RotationSystem {
    rotations: BTreeMap<Label, CyclicPerm>,
}

#[derive(Serialize, Deserialize)]
struct RawSystem {
    ground: Vec<Label>,
    rotations: BTreeMap<Label, Vec<Label>>,
}

impl TryFrom<RawSystem> for RotationSystem {
    type Error = RotsysError;
    fn try_from(raw: RawSystem) -> Result<Self, RotsysError> {
        let ground: BTreeSet<Label> = raw.ground.iter().copied().collect();
        if ground.len() != raw.ground.len() {
            return Err(RotsysError::Precondition("ground labels must be distinct".into()));
        }
        for &l in raw.rotations.keys() {
            if !ground.contains(&l) {
                return Err(RotsysError::UnknownLabel(l));
            }
        }
        let mut rotations = BTreeMap::new();
        for &g in &ground {
            let rot = raw.rotations.get(&g).ok_or(RotsysError::BadRotation(g))?;
            rotations.insert(g, CyclicPerm::new(rot.clone())?);
        }
        RotationSystem::new(rotations)
    }
}

impl From<RotationSystem> for RawSystem {
    fn from(r: RotationSystem) -> Self {
        RawSystem {
            ground: r.rotations.keys().copied().collect(),
            rotations: r.rotations.into_iter().map(|(k, v)| (k, v.into())).collect(),
        }
    }
}

impl fmt::Display for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.rotations.values().join(","))
    }
}

impl RotationSystem {
    pub fn new(rotations: BTreeMap<Label, CyclicPerm>) -> Result<RotationSystem, RotsysError> {
        let ground: BTreeSet<Label> = rotations.keys().copied().collect();
        for (&v, rot) in &rotations {
            let expected: BTreeSet<Label> = ground.iter().copied().filter(|&u| u != v).collect();
            let got: BTreeSet<Label> = rot.as_slice().iter().copied().collect();
            if rot.len() != expected.len() || got != expected {
                return Err(RotsysError::BadRotation(v));
            }
        }
        Ok(RotationSystem { rotations })
    }

    /// Builds a system on labels `1..=rows.len()` from listed rotations.
    pub fn from_rows(rows: &[&[Label]]) -> Result<RotationSystem, RotsysError> {
        let rotations = rows
            .iter()
            .enumerate()
            .map(|(i, row)| Ok((i as Label + 1, CyclicPerm::new(row.to_vec())?)))
            .collect::<Result<BTreeMap<_, _>, RotsysError>>()?;
        RotationSystem::new(rotations)
    }

    pub fn ground(&self) -> Vec<Label> {
        self.rotations.keys().copied().collect()
    }

    pub fn size(&self) -> usize {
        self.rotations.len()
    }

    pub fn rotation(&self, v: Label) -> Option<&CyclicPerm> {
        self.rotations.get(&v)
    }

    pub fn rotations(&self) -> &BTreeMap<Label, CyclicPerm> {
        &self.rotations
    }

    /// The induced subsystem on `subset`.
    pub fn restrict(&self, subset: &[Label]) -> Result<RotationSystem, RotsysError> {
        let keep: BTreeSet<Label> = subset.iter().copied().collect();
        if keep.len() < 2 {
            return Err(RotsysError::TooSmall { min: 2, found: keep.len() });
        }
        for &w in &keep {
            if !self.rotations.contains_key(&w) {
                return Err(RotsysError::UnknownLabel(w));
            }
        }
        let rotations = keep.iter().map(|&w| (w, self.rotations[&w].restrict(|x| keep.contains(&x)))).collect();
        Ok(RotationSystem { rotations })
    }

    /// Applies an injective relabeling of the ground set.
    pub fn relabel(&self, f: impl Fn(Label) -> Label) -> RotationSystem {
        let rotations = self.rotations.iter().map(|(&v, rot)| (f(v), rot.relabel(&f))).collect();
        RotationSystem::new(rotations).expect("relabeling must be injective")
    }

    /// Every rotation reversed (the mirror image).
    pub fn inverse(&self) -> RotationSystem {
        RotationSystem { rotations: self.rotations.iter().map(|(&v, r)| (v, r.inverse())).collect() }
    }

    /// True when some relabeling maps `self` onto `other`. Brute force over
    /// all bijections; meant for small systems.
    pub fn is_isomorphic_to(&self, other: &RotationSystem) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let src = self.ground();
        let dst = other.ground();
        dst.iter().copied().permutations(dst.len()).any(|img| {
            let map: BTreeMap<Label, Label> = src.iter().copied().zip(img).collect();
            self.relabel(|x| map[&x]) == *other
        })
    }

    fn require_size(&self, n: usize) -> Result<(), RotsysError> {
        if self.size() != n {
            return Err(RotsysError::WrongSize { expected: n, found: self.size() });
        }
        Ok(())
    }

    /// Dense position table: `pos[a][b]` is the index of ground label `b` in
    /// the rotation at ground label `a` (indices into the sorted ground).
    fn position_table(&self) -> (Vec<Label>, Vec<Vec<usize>>) {
        let ground = self.ground();
        let index: BTreeMap<Label, usize> = ground.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let n = ground.len();
        let mut pos = vec![vec![usize::MAX; n]; n];
        for (a, &g) in ground.iter().enumerate() {
            for (p, x) in self.rotations[&g].as_slice().iter().enumerate() {
                pos[a][index[x]] = p;
            }
        }
        (ground, pos)
    }
}

/// Sign of the rotation at each member of the sorted quadruple `q` (indices
/// into the ground) within the induced 4-element subsystem.
fn quad_signs(pos: &[Vec<usize>], q: [usize; 4]) -> [Sign; 4] {
    let mut out = [Sign::Plus; 4];
    for (slot, &l) in q.iter().enumerate() {
        let others: Vec<usize> = q.iter().copied().filter(|&x| x != l).collect();
        out[slot] = cyclic_sign(pos[l][others[0]], pos[l][others[1]], pos[l][others[2]]);
    }
    out
}

/// Sign of the rotation at `l` in a 4-element system.
pub fn rotation_sign(r4: &RotationSystem, l: Label) -> Result<Sign, RotsysError> {
    r4.require_size(4)?;
    let rot = r4.rotation(l).ok_or(RotsysError::UnknownLabel(l))?;
    let s = rot.as_slice();
    Ok(rot.sign_on([s[0], s[1], s[2]]))
}

/// The 4-tuple of rotation signs, in sorted-label order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub [Sign; 4]);

impl Signature {
    pub fn negatives(&self) -> usize {
        self.0.iter().filter(|s| s.is_negative()).count()
    }

    /// Bit `p` set when the `p`-th sorted label has a negative rotation.
    pub fn negative_mask(&self) -> u8 {
        self.0.iter().enumerate().fold(0, |m, (p, s)| if s.is_negative() { m | (1 << p) } else { m })
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

pub fn signature(r4: &RotationSystem) -> Result<Signature, RotsysError> {
    r4.require_size(4)?;
    let (_, pos) = r4.position_table();
    Ok(Signature(quad_signs(&pos, [0, 1, 2, 3])))
}

pub fn is_realizable4(r4: &RotationSystem) -> Result<bool, RotsysError> {
    Ok(signature(r4)?.negatives() % 2 == 0)
}

/// The drawings of `K4` a realizable 4-element system can come from; `R`
/// marks the mirror image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuadrupleTag {
    H1,
    H2,
    H3,
    H4,
    H1R,
    H2R,
    H3R,
    H4R,
    NotRealizable,
}

impl QuadrupleTag {
    pub const REALIZABLE: [QuadrupleTag; 8] = [
        QuadrupleTag::H1,
        QuadrupleTag::H2R,
        QuadrupleTag::H3R,
        QuadrupleTag::H4R,
        QuadrupleTag::H1R,
        QuadrupleTag::H2,
        QuadrupleTag::H3,
        QuadrupleTag::H4,
    ];

    /// The tabulated rotation system on `{1,2,3,4}` for this drawing.
    pub fn system(self) -> Option<RotationSystem> {
        let rows: [[Label; 3]; 4] = match self {
            QuadrupleTag::H1 => [[2, 4, 3], [1, 3, 4], [1, 4, 2], [1, 2, 3]],
            QuadrupleTag::H2R => [[2, 4, 3], [1, 4, 3], [1, 2, 4], [1, 2, 3]],
            QuadrupleTag::H3R => [[2, 3, 4], [1, 3, 4], [1, 2, 4], [1, 2, 3]],
            QuadrupleTag::H4R => [[2, 3, 4], [1, 4, 3], [1, 4, 2], [1, 2, 3]],
            QuadrupleTag::H1R => [[2, 3, 4], [1, 4, 3], [1, 2, 4], [1, 3, 2]],
            QuadrupleTag::H2 => [[2, 3, 4], [1, 3, 4], [1, 4, 2], [1, 3, 2]],
            QuadrupleTag::H3 => [[2, 4, 3], [1, 4, 3], [1, 4, 2], [1, 3, 2]],
            QuadrupleTag::H4 => [[2, 4, 3], [1, 3, 4], [1, 2, 4], [1, 3, 2]],
            QuadrupleTag::NotRealizable => return None,
        };
        let refs: Vec<&[Label]> = rows.iter().map(|r| r.as_slice()).collect();
        Some(RotationSystem::from_rows(&refs).expect("tabulated rows are valid"))
    }
}

/// Which sorted positions pair up into crossing edges: `(p, q, r, s)` means
/// edges `{p,q}` and `{r,s}` cross.
type PositionPairing = Option<[usize; 4]>;

/// Negative-rotation mask (bit per sorted position) to drawing and crossing
/// pair. Fixed once against straight-line drawings of every labeled convex
/// and triangle-with-interior-point configuration of four points.
const SIGN_PATTERN_TABLE: [(u8, QuadrupleTag, PositionPairing); 8] = [
    (0b0101, QuadrupleTag::H1, None),
    (0b1010, QuadrupleTag::H1R, None),
    (0b1111, QuadrupleTag::H3, Some([0, 2, 1, 3])),
    (0b0000, QuadrupleTag::H3R, Some([0, 2, 1, 3])),
    (0b1100, QuadrupleTag::H2, Some([0, 3, 1, 2])),
    (0b0011, QuadrupleTag::H2R, Some([0, 3, 1, 2])),
    (0b1001, QuadrupleTag::H4, Some([0, 1, 2, 3])),
    (0b0110, QuadrupleTag::H4R, Some([0, 1, 2, 3])),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadrupleClass {
    pub tag: QuadrupleTag,
    pub crossing_pair: Option<EdgePair>,
}

fn classify_mask(labels: [Label; 4], mask: u8) -> QuadrupleClass {
    match SIGN_PATTERN_TABLE.iter().find(|(m, _, _)| *m == mask) {
        None => QuadrupleClass { tag: QuadrupleTag::NotRealizable, crossing_pair: None },
        Some(&(_, tag, pairing)) => QuadrupleClass {
            tag,
            crossing_pair: pairing
                .map(|[a, b, c, d]| EdgePair::new(Edge::new(labels[a], labels[b]), Edge::new(labels[c], labels[d]))),
        },
    }
}

/// Classifies a 4-element system through the order-preserving relabeling of
/// its ground onto `{1,2,3,4}`.
pub fn classify_quadruple(r4: &RotationSystem) -> Result<QuadrupleClass, RotsysError> {
    let sig = signature(r4)?;
    let g = r4.ground();
    Ok(classify_mask([g[0], g[1], g[2], g[3]], sig.negative_mask()))
}

/// Every 4-element induced subsystem has even parity.
pub fn is_good(r: &RotationSystem) -> Result<bool, RotsysError> {
    if r.size() < 4 {
        return Err(RotsysError::TooSmall { min: 4, found: r.size() });
    }
    Ok(first_odd_quadruple(r).is_none())
}

/// The first 4-subset (in lexicographic order) whose induced subsystem is
/// not realizable.
pub fn first_odd_quadruple(r: &RotationSystem) -> Option<[Label; 4]> {
    let (ground, pos) = r.position_table();
    (0..ground.len()).combinations(4).find_map(|q| {
        let q = [q[0], q[1], q[2], q[3]];
        let negs = quad_signs(&pos, q).iter().filter(|s| s.is_negative()).count();
        (negs % 2 == 1).then(|| q.map(|i| ground[i]))
    })
}

/// The union, over all 4-subsets, of the crossing pair each subsystem
/// forces. For a realizable system this is the set of crossing edge pairs
/// of any drawing with that rotation system. For good but unrealizable
/// systems it is only the formal union and need not be consistent.
pub fn crossing_pairs_complete(r: &RotationSystem) -> Result<BTreeSet<EdgePair>, RotsysError> {
    if !is_good(r)? {
        return Err(RotsysError::NotGood);
    }
    let (ground, pos) = r.position_table();
    let mut out = BTreeSet::new();
    for q in (0..ground.len()).combinations(4) {
        let q = [q[0], q[1], q[2], q[3]];
        let sig = Signature(quad_signs(&pos, q));
        if let Some(p) = classify_mask(q.map(|i| ground[i]), sig.negative_mask()).crossing_pair {
            out.insert(p);
        }
    }
    Ok(out)
}

/// Convex system on `1..=n`: the rotation at `i` lists the other labels in
/// increasing order.
pub fn convex(n: u32) -> Result<RotationSystem, RotsysError> {
    if n < 3 {
        return Err(RotsysError::TooSmall { min: 3, found: n as usize });
    }
    let rotations = (1..=n).map(|i| (i, CyclicPerm((1..=n).filter(|&x| x != i).collect()).canonical())).collect();
    RotationSystem::new(rotations)
}

/// Twisted system on `1..=n`: the rotation at `i` is
/// `(i-1, ..., 1, i+1, ..., n)`.
pub fn twisted(n: u32) -> Result<RotationSystem, RotsysError> {
    if n < 3 {
        return Err(RotsysError::TooSmall { min: 3, found: n as usize });
    }
    let rotations = (1..=n)
        .map(|i| {
            let seq: Vec<Label> = (1..i).rev().chain(i + 1..=n).collect();
            (i, CyclicPerm(seq).canonical())
        })
        .collect();
    RotationSystem::new(rotations)
}

impl CyclicPerm {
    fn canonical(self) -> CyclicPerm {
        CyclicPerm::new(self.0).expect("distinct labels")
    }
}

/// Type of a triple `(i, j, k)` relative to a base label: the signs at `i`,
/// `j` and `k` in the subsystem on `{base, i, j, k}`, written as bits with
/// `1` for positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TripleType {
    T111,
    T100,
    T010,
    T001,
}

impl TripleType {
    pub fn is_convex(self) -> bool {
        matches!(self, TripleType::T111 | TripleType::T010)
    }
}

impl fmt::Display for TripleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TripleType::T111 => "111",
            TripleType::T100 => "100",
            TripleType::T010 => "010",
            TripleType::T001 => "001",
        })
    }
}

pub fn triple_type(r: &RotationSystem, base: Label, triple: [Label; 3]) -> Result<TripleType, RotsysError> {
    let [i, j, k] = triple;
    if !(base < i && i < j && j < k) {
        return Err(RotsysError::Precondition(format!("need {base} < {i} < {j} < {k}")));
    }
    let sub = r.restrict(&[base, i, j, k])?;
    let sig = signature(&sub)?;
    if sig.0[0] != Sign::Plus {
        return Err(RotsysError::Precondition(format!("rotation at {base} on {{{i},{j},{k}}} is negative")));
    }
    let bits = (sig.0[1].bit(), sig.0[2].bit(), sig.0[3].bit());
    match bits {
        (1, 1, 1) => Ok(TripleType::T111),
        (1, 0, 0) => Ok(TripleType::T100),
        (0, 1, 0) => Ok(TripleType::T010),
        (0, 0, 1) => Ok(TripleType::T001),
        _ => Err(RotsysError::ParityViolation([base, i, j, k])),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Unavoidable {
    Convex(Vec<Label>),
    Twisted(Vec<Label>),
    None,
}

/// Looks for an `m`-subset of the non-base labels whose triples all share
/// one type; the shared type decides whether the subset induces a convex or
/// a twisted system. The base is the smallest label and its rotation must
/// list the others in increasing order. Subsets are tried in lexicographic
/// order and the first hit is returned.
pub fn find_unavoidable(r: &RotationSystem, m: usize) -> Result<Unavoidable, RotsysError> {
    let ground = r.ground();
    let n = ground.len();
    if m < 3 {
        return Err(RotsysError::Precondition("subset size must be at least 3".into()));
    }
    if m > n.saturating_sub(1) {
        return Err(RotsysError::Precondition(format!("m = {m} exceeds n - 1 = {}", n.saturating_sub(1))));
    }
    let base = ground[0];
    let rest = &ground[1..];
    if r.rotation(base).expect("base in ground").as_slice() != rest {
        return Err(RotsysError::Precondition(format!("rotation at {base} is not increasing")));
    }
    let mut types = BTreeMap::new();
    for t in rest.iter().copied().combinations(3) {
        types.insert((t[0], t[1], t[2]), triple_type(r, base, [t[0], t[1], t[2]])?);
    }
    for w in rest.iter().copied().combinations(m) {
        let mut first = None;
        let mono = w.iter().copied().combinations(3).all(|t| {
            let ty = types[&(t[0], t[1], t[2])];
            *first.get_or_insert(ty) == ty
        });
        if mono {
            let ty = first.expect("m >= 3");
            return Ok(if ty.is_convex() { Unavoidable::Convex(w) } else { Unavoidable::Twisted(w) });
        }
    }
    Ok(Unavoidable::None)
}

/// Relabels `r` so that the rotation at the smallest label becomes the
/// increasing cycle, as [`find_unavoidable`] requires. Returns the new
/// system and the map from old to new labels.
pub fn normalize_at_base(r: &RotationSystem) -> (RotationSystem, BTreeMap<Label, Label>) {
    let ground = r.ground();
    let base = ground[0];
    let mut map = BTreeMap::new();
    map.insert(base, ground[0]);
    for (old, &new) in r.rotation(base).expect("base").as_slice().iter().zip(&ground[1..]) {
        map.insert(*old, new);
    }
    (r.relabel(|x| map[&x]), map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(rows: &[&[Label]]) -> RotationSystem {
        RotationSystem::from_rows(rows).unwrap()
    }

    fn r5_1() -> RotationSystem {
        sys(&[&[2, 5, 3, 4], &[1, 3, 4, 5], &[1, 2, 5, 4], &[1, 2, 5, 3], &[1, 3, 4, 2]])
    }

    fn r5_2() -> RotationSystem {
        sys(&[&[2, 3, 5, 4], &[1, 3, 4, 5], &[1, 5, 2, 4], &[1, 2, 5, 3], &[1, 4, 3, 2]])
    }

    #[test]
    fn cyclic_perm_is_canonical() {
        let a = CyclicPerm::new(vec![4, 2, 7]).unwrap();
        let b = CyclicPerm::new(vec![2, 7, 4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.as_slice(), &[2, 7, 4]);
        assert_eq!(a.successor(4), Some(2));
        assert_eq!(a.predecessor(2), Some(4));
        assert_eq!(a.inverse().as_slice(), &[2, 4, 7]);
        assert_eq!(CyclicPerm::new(vec![1, 2, 1]), Err(RotsysError::RepeatedLabel(1)));
    }

    #[test]
    fn restrict_examples() {
        let c5 = convex(5).unwrap();
        assert_eq!(c5.restrict(&[1, 2, 3, 4]).unwrap(), convex(4).unwrap());
        let r = r5_1().restrict(&[1, 2, 3, 4]).unwrap();
        assert_eq!(r, sys(&[&[2, 3, 4], &[1, 3, 4], &[1, 2, 4], &[1, 2, 3]]));
        assert_eq!(c5.restrict(&c5.ground()).unwrap(), c5);
        assert_eq!(c5.restrict(&[1, 9]), Err(RotsysError::UnknownLabel(9)));
        assert!(matches!(c5.restrict(&[1]), Err(RotsysError::TooSmall { .. })));
    }

    #[test]
    fn rotation_sign_examples() {
        let r = sys(&[&[2, 3, 4], &[1, 3, 4], &[1, 2, 4], &[1, 2, 3]]);
        assert_eq!(rotation_sign(&r, 1).unwrap(), Sign::Plus);
        let r = sys(&[&[2, 4, 3], &[1, 3, 4], &[1, 2, 4], &[1, 2, 3]]);
        assert_eq!(rotation_sign(&r, 1).unwrap(), Sign::Minus);
        let mut rot = BTreeMap::new();
        rot.insert(2, CyclicPerm::new(vec![5, 7, 9]).unwrap());
        rot.insert(5, CyclicPerm::new(vec![2, 7, 9]).unwrap());
        rot.insert(7, CyclicPerm::new(vec![2, 5, 9]).unwrap());
        rot.insert(9, CyclicPerm::new(vec![2, 7, 5]).unwrap());
        let r = RotationSystem::new(rot).unwrap();
        assert_eq!(rotation_sign(&r, 9).unwrap(), Sign::Minus);
        assert!(matches!(rotation_sign(&convex(5).unwrap(), 1), Err(RotsysError::WrongSize { .. })));
    }

    #[test]
    fn realizability_examples() {
        assert!(is_realizable4(&QuadrupleTag::H1.system().unwrap()).unwrap());
        assert!(is_realizable4(&QuadrupleTag::H3R.system().unwrap()).unwrap());
        let odd = sys(&[&[2, 4, 3], &[1, 3, 4], &[1, 2, 4], &[1, 2, 3]]);
        assert!(!is_realizable4(&odd).unwrap());
        assert_eq!(classify_quadruple(&odd).unwrap().tag, QuadrupleTag::NotRealizable);
    }

    #[test]
    fn classify_examples() {
        let h3 = classify_quadruple(&QuadrupleTag::H3.system().unwrap()).unwrap();
        assert_eq!(h3.tag, QuadrupleTag::H3);
        assert_eq!(h3.crossing_pair, Some(EdgePair::new(Edge::new(1, 3), Edge::new(2, 4))));
        let h1 = classify_quadruple(&QuadrupleTag::H1.system().unwrap()).unwrap();
        assert_eq!(h1, QuadrupleClass { tag: QuadrupleTag::H1, crossing_pair: None });
        let h2 = classify_quadruple(&QuadrupleTag::H2.system().unwrap()).unwrap();
        assert_eq!(h2.tag, QuadrupleTag::H2);
        assert_eq!(h2.crossing_pair, Some(EdgePair::new(Edge::new(1, 4), Edge::new(2, 3))));
    }

    #[test]
    fn every_tabulated_row_classifies_to_its_own_tag() {
        for tag in QuadrupleTag::REALIZABLE {
            let c = classify_quadruple(&tag.system().unwrap()).unwrap();
            assert_eq!(c.tag, tag);
            assert_eq!(c.crossing_pair.is_none(), matches!(tag, QuadrupleTag::H1 | QuadrupleTag::H1R));
        }
    }

    #[test]
    fn classification_uses_order_isomorphism() {
        let h2 = QuadrupleTag::H2.system().unwrap();
        let moved = h2.relabel(|x| [0, 3, 8, 10, 20][x as usize]);
        let c = classify_quadruple(&moved).unwrap();
        assert_eq!(c.tag, QuadrupleTag::H2);
        assert_eq!(c.crossing_pair, Some(EdgePair::new(Edge::new(3, 20), Edge::new(8, 10))));
    }

    #[test]
    fn goodness_examples() {
        assert!(is_good(&r5_1()).unwrap());
        assert!(is_good(&r5_2()).unwrap());
        let mut bad = r5_1().rotations().clone();
        bad.insert(5, CyclicPerm::new(vec![1, 2, 3, 4]).unwrap());
        let bad = RotationSystem::new(bad).unwrap();
        let odd = first_odd_quadruple(&bad).expect("an odd quadruple");
        assert!(!is_realizable4(&bad.restrict(&odd).unwrap()).unwrap());
        assert!(!is_good(&bad).unwrap());
        assert!(matches!(is_good(&convex(3).unwrap()), Err(RotsysError::TooSmall { .. })));
    }

    #[test]
    fn signatures() {
        use Sign::*;
        assert_eq!(signature(&QuadrupleTag::H3.system().unwrap()).unwrap(), Signature([Minus; 4]));
        assert_eq!(signature(&QuadrupleTag::H3R.system().unwrap()).unwrap(), Signature([Plus; 4]));
        assert_eq!(signature(&QuadrupleTag::H1.system().unwrap()).unwrap(), Signature([Minus, Plus, Minus, Plus]));
    }

    #[test]
    fn convex_and_twisted_rows() {
        assert_eq!(convex(4).unwrap(), sys(&[&[2, 3, 4], &[1, 3, 4], &[1, 2, 4], &[1, 2, 3]]));
        assert_eq!(twisted(4).unwrap(), sys(&[&[2, 3, 4], &[1, 3, 4], &[2, 1, 4], &[3, 2, 1]]));
        assert!(is_good(&convex(6).unwrap()).unwrap());
        assert!(is_good(&twisted(6).unwrap()).unwrap());
        assert!(convex(2).is_err());
    }

    #[test]
    fn crossing_pairs_examples() {
        let p = |a, b, c, d| EdgePair::new(Edge::new(a, b), Edge::new(c, d));
        assert_eq!(crossing_pairs_complete(&convex(4).unwrap()).unwrap(), [p(1, 3, 2, 4)].into());
        assert_eq!(crossing_pairs_complete(&twisted(4).unwrap()).unwrap(), [p(1, 4, 2, 3)].into());
        let c5 = crossing_pairs_complete(&convex(5).unwrap()).unwrap();
        assert_eq!(c5.len(), 5);
        assert!(c5.contains(&p(1, 3, 2, 4)) && c5.contains(&p(2, 4, 3, 5)));
        let odd = sys(&[&[2, 4, 3], &[1, 3, 4], &[1, 2, 4], &[1, 2, 3]]);
        assert_eq!(crossing_pairs_complete(&odd), Err(RotsysError::NotGood));
    }

    #[test]
    fn triple_types() {
        assert_eq!(triple_type(&convex(6).unwrap(), 1, [2, 4, 6]).unwrap(), TripleType::T111);
        assert_eq!(triple_type(&twisted(6).unwrap(), 1, [2, 4, 6]).unwrap(), TripleType::T100);
        assert!(matches!(triple_type(&convex(6).unwrap(), 3, [2, 4, 6]), Err(RotsysError::Precondition(_))));
        let inv = convex(6).unwrap().inverse();
        assert!(matches!(triple_type(&inv, 1, [2, 4, 6]), Err(RotsysError::Precondition(_))));
    }

    #[test]
    fn unavoidable_in_convex_and_twisted() {
        let c7 = convex(7).unwrap();
        assert_eq!(find_unavoidable(&c7, 5).unwrap(), Unavoidable::Convex(vec![2, 3, 4, 5, 6]));
        match find_unavoidable(&twisted(7).unwrap(), 5).unwrap() {
            Unavoidable::Twisted(w) => assert_eq!(w.len(), 5),
            other => panic!("expected twisted, got {other:?}"),
        }
        assert!(find_unavoidable(&c7, 7).is_err());
    }

    #[test]
    fn normalize_makes_base_rotation_increasing() {
        let r = r5_1();
        let (norm, map) = normalize_at_base(&r);
        assert_eq!(norm.rotation(1).unwrap().as_slice(), &[2, 3, 4, 5]);
        assert_eq!(map[&5], 3);
        assert!(is_good(&norm).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let r = QuadrupleTag::H1.system().unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"ground":[1,2,3,4],"rotations":{"1":[2,4,3],"2":[1,3,4],"3":[1,4,2],"4":[1,2,3]}}"#);
        let back: RotationSystem = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        let bad = r#"{"ground":[1,2,3,4],"rotations":{"1":[2,4,3],"2":[1,3,4],"3":[1,4,2],"4":[1,2,2]}}"#;
        assert!(serde_json::from_str::<RotationSystem>(bad).is_err());
    }
}
