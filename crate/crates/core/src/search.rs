//! Exhaustive searches over good rotation systems and the permutation
//! restriction utilities (shattering, VC-dimension, pattern avoidance).
//!
//! Both searches assign rotations one label at a time and test every
//! 4-subset as soon as its largest member is fixed. Sign information is
//! precomputed per candidate rotation as a bitmask over label triples, so a
//! 4-subset test is four bit lookups and an XOR.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::count::ExactCount;
use crate::graph::Label;
use crate::rotsys::{cyclic_sign, is_good, CyclicPerm, RotationSystem, RotsysError};

/// Hard ceiling from the 128-bit triple masks: `C(10, 3) = 120`.
const MASK_LABEL_CAP: usize = 10;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("n = {n} is above the configured limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("n = {0} is below the minimum of 4")]
    TooSmall(usize),
    #[error("node budget of {budget} exhausted")]
    NodeBudget { budget: u64 },
    #[error("time budget of {0:?} exhausted")]
    TimeBudget(Duration),
    #[error("input system is not good")]
    NotGood,
    #[error("system must be on labels 1..=n")]
    BadLabels,
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Rotsys(#[from] RotsysError),
}

impl SearchError {
    pub fn is_budget(&self) -> bool {
        matches!(self, SearchError::NodeBudget { .. } | SearchError::TimeBudget(_))
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub workers: usize,
    /// Maximum number of witnesses kept (first ones in search order).
    pub witnesses: usize,
    pub max_n: usize,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Count one representative per relabeling class instead of labeled systems.
    pub symmetry_reduction: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            witnesses: 0,
            max_n: 6,
            node_budget: None,
            time_budget: None,
            symmetry_reduction: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport<W> {
    pub count: ExactCount,
    pub witnesses: Vec<W>,
    pub nodes_explored: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// An allowed rotation at the new element together with one full good
/// extension that uses it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    pub rotation: CyclicPerm,
    pub witness: RotationSystem,
}

/// Shared node and time accounting. Exceeding either budget aborts every
/// worker; the search then reports an error rather than a partial count.
struct Budget {
    nodes: AtomicU64,
    limit: Option<u64>,
    deadline: Option<(Instant, Duration)>,
    stop: AtomicBool,
}

impl Budget {
    fn new(opts: &SearchOptions, start: Instant) -> Budget {
        Budget {
            nodes: AtomicU64::new(0),
            limit: opts.node_budget,
            deadline: opts.time_budget.map(|d| (start + d, d)),
            stop: AtomicBool::new(false),
        }
    }

    /// Records `k` visited nodes; false once the search must stop.
    fn charge(&self, k: u64) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let total = self.nodes.fetch_add(k, Ordering::Relaxed) + k;
        let over_nodes = self.limit.is_some_and(|l| total > l);
        let over_time = self.deadline.is_some_and(|(t, _)| Instant::now() > t);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn check(&self) -> Result<u64, SearchError> {
        let total = self.nodes.load(Ordering::Relaxed);
        if self.stop.load(Ordering::Relaxed) {
            if let Some(limit) = self.limit.filter(|&l| total > l) {
                return Err(SearchError::NodeBudget { budget: limit });
            }
            let d = self.deadline.map(|(_, d)| d).unwrap_or_default();
            return Err(SearchError::TimeBudget(d));
        }
        Ok(total)
    }
}

/// Counts nodes locally and flushes to the shared budget in batches.
struct Meter<'a> {
    budget: &'a Budget,
    pending: u64,
    alive: bool,
}

impl<'a> Meter<'a> {
    const BATCH: u64 = 1024;

    fn new(budget: &'a Budget) -> Self {
        Meter { budget, pending: 0, alive: true }
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.pending += 1;
        if self.pending >= Self::BATCH {
            self.alive = self.budget.charge(self.pending);
            self.pending = 0;
        }
        self.alive
    }

    fn flush(&mut self) {
        if self.pending > 0 {
            self.alive = self.budget.charge(self.pending) && self.alive;
            self.pending = 0;
        }
    }
}

impl Drop for Meter<'_> {
    fn drop(&mut self) {
        self.flush();
    }
}

/// Index of every sorted triple of `0..n`.
struct TripleIndex {
    n: usize,
    idx: Vec<u8>,
}

impl TripleIndex {
    fn new(n: usize) -> TripleIndex {
        let mut idx = vec![u8::MAX; n * n * n];
        for (t, c) in (0..n).combinations(3).enumerate() {
            idx[(c[0] * n + c[1]) * n + c[2]] = t as u8;
        }
        TripleIndex { n, idx }
    }

    /// Index of the triple `{x, y, z}` in any order.
    #[inline]
    fn get(&self, x: usize, y: usize, z: usize) -> u32 {
        let mut t = [x, y, z];
        t.sort_unstable();
        self.idx[(t[0] * self.n + t[1]) * self.n + t[2]] as u32
    }
}

/// Bitmask of triples on which the rotation `rot` (over indices `0..n`,
/// excluding its own vertex) is negative.
fn negative_mask(rot: &[usize], n: usize, tri: &TripleIndex) -> u128 {
    let mut pos = vec![usize::MAX; n];
    for (p, &x) in rot.iter().enumerate() {
        pos[x] = p;
    }
    let mut mask = 0u128;
    for c in rot.iter().copied().sorted().combinations(3) {
        if cyclic_sign(pos[c[0]], pos[c[1]], pos[c[2]]).is_negative() {
            mask |= 1 << tri.get(c[0], c[1], c[2]);
        }
    }
    mask
}

#[inline]
fn bit(mask: u128, t: u32) -> u128 {
    (mask >> t) & 1
}

/// Every canonical rotation at `v` over `0..n`: the smallest other index
/// first, the rest in every order.
fn canonical_rotations(v: usize, n: usize) -> Vec<Vec<usize>> {
    let others: Vec<usize> = (0..n).filter(|&x| x != v).collect();
    let (first, rest) = others.split_first().expect("n >= 2");
    rest.iter().copied().permutations(rest.len()).map(|p| std::iter::once(*first).chain(p).collect()).collect()
}

fn to_system(rotations: &[Vec<usize>]) -> RotationSystem {
    let map = rotations
        .iter()
        .enumerate()
        .map(|(v, r)| {
            let labels = r.iter().map(|&x| x as Label + 1).collect();
            (v as Label + 1, CyclicPerm::new(labels).expect("distinct"))
        })
        .collect();
    RotationSystem::new(map).expect("complete rotations")
}

/// The four triple indices needed to test quadruple `a < b < c < d`, one
/// per member, each the triple of the other three.
#[derive(Clone, Copy)]
struct QuadCheck {
    a: usize,
    b: usize,
    c: usize,
    ta: u32,
    tb: u32,
    tc: u32,
    td: u32,
}

/// Quadruples grouped by their largest member.
fn quads_by_max(n: usize, tri: &TripleIndex) -> Vec<Vec<QuadCheck>> {
    (0..n)
        .map(|d| {
            (0..d)
                .combinations(3)
                .map(|q| {
                    let (a, b, c) = (q[0], q[1], q[2]);
                    QuadCheck {
                        a,
                        b,
                        c,
                        ta: tri.get(b, c, d),
                        tb: tri.get(a, c, d),
                        tc: tri.get(a, b, d),
                        td: tri.get(a, b, c),
                    }
                })
                .collect()
        })
        .collect()
}

struct GoodSearch {
    n: usize,
    rotations: Vec<Vec<Vec<usize>>>,
    masks: Vec<Vec<u128>>,
    quads: Vec<Vec<QuadCheck>>,
}

#[derive(Default)]
struct Partial {
    count: u64,
    witnesses: Vec<Vec<usize>>,
}

impl GoodSearch {
    fn new(n: usize) -> GoodSearch {
        let tri = TripleIndex::new(n);
        let rotations: Vec<Vec<Vec<usize>>> = (0..n).map(|v| canonical_rotations(v, n)).collect();
        let masks = rotations.iter().map(|rs| rs.iter().map(|r| negative_mask(r, n, &tri)).collect()).collect();
        GoodSearch { n, rotations, masks, quads: quads_by_max(n, &tri) }
    }

    fn fits(&self, level: usize, mask: u128, chosen: &[usize]) -> bool {
        self.quads[level].iter().all(|q| {
            let x = bit(self.masks[q.a][chosen[q.a]], q.ta)
                ^ bit(self.masks[q.b][chosen[q.b]], q.tb)
                ^ bit(self.masks[q.c][chosen[q.c]], q.tc)
                ^ bit(mask, q.td);
            x == 0
        })
    }

    fn dfs(
        &self,
        level: usize,
        chosen: &mut Vec<usize>,
        out: &mut Partial,
        keep: &dyn Fn(&[usize]) -> bool,
        max_witnesses: usize,
        meter: &mut Meter,
    ) {
        if !meter.tick() {
            return;
        }
        if level == self.n {
            if keep(chosen) {
                out.count += 1;
                if out.witnesses.len() < max_witnesses {
                    out.witnesses.push(chosen.clone());
                }
            }
            return;
        }
        for (i, &m) in self.masks[level].iter().enumerate() {
            if self.fits(level, m, chosen) {
                chosen.push(i);
                self.dfs(level + 1, chosen, out, keep, max_witnesses, meter);
                chosen.pop();
                if !meter.alive {
                    return;
                }
            }
        }
    }

    fn system(&self, chosen: &[usize]) -> RotationSystem {
        let rots: Vec<Vec<usize>> = chosen.iter().enumerate().map(|(v, &i)| self.rotations[v][i].clone()).collect();
        to_system(&rots)
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, SearchError> {
    rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().map_err(|e| SearchError::Pool(e.to_string()))
}

/// True when no relabeling of `sys` is lexicographically smaller.
fn is_class_minimum(sys: &RotationSystem) -> bool {
    let n = sys.size() as Label;
    (1..=n).permutations(n as usize).all(|img| sys.relabel(|x| img[x as usize - 1]) >= *sys)
}

/// Counts good rotation systems on labels `1..=n`.
pub fn enumerate_good(n: usize, opts: &SearchOptions) -> Result<SearchReport<RotationSystem>, SearchError> {
    if n < 4 {
        return Err(SearchError::TooSmall(n));
    }
    let limit = opts.max_n.min(MASK_LABEL_CAP);
    if n > limit {
        return Err(SearchError::TooLarge { n, limit });
    }
    let start = Instant::now();
    let search = GoodSearch::new(n);
    let budget = Budget::new(opts, start);

    // Work units: every compatible pair of rotations at labels 1 and 2.
    let prefixes: Vec<[usize; 2]> =
        (0..search.masks[0].len()).cartesian_product(0..search.masks[1].len()).map(|(a, b)| [a, b]).collect();
    let symmetric = opts.symmetry_reduction;
    let keep = |chosen: &[usize]| !symmetric || is_class_minimum(&search.system(chosen));
    let partials: Vec<Partial> = pool(opts.workers)?.install(|| {
        prefixes
            .par_iter()
            .map(|p| {
                let mut meter = Meter::new(&budget);
                let mut out = Partial::default();
                let mut chosen = p.to_vec();
                search.dfs(2, &mut chosen, &mut out, &keep, opts.witnesses, &mut meter);
                out
            })
            .collect()
    });
    let nodes = budget.check()?;

    let count: u64 = partials.iter().map(|p| p.count).sum();
    let witnesses =
        partials.iter().flat_map(|p| p.witnesses.iter()).take(opts.witnesses).map(|c| search.system(c)).collect();
    Ok(SearchReport { count: count.into(), witnesses, nodes_explored: nodes, elapsed: start.elapsed() })
}

/// Finds every rotation the new element `n + 1` can take in a good
/// extension of `r`, with one witness extension for each.
pub fn extend_good(r: &RotationSystem, opts: &SearchOptions) -> Result<SearchReport<Extension>, SearchError> {
    let n = r.size();
    if n < 3 {
        return Err(SearchError::TooSmall(n));
    }
    if n + 1 > MASK_LABEL_CAP {
        return Err(SearchError::TooLarge { n: n + 1, limit: MASK_LABEL_CAP });
    }
    if !r.ground().into_iter().eq(1..=n as Label) {
        return Err(SearchError::BadLabels);
    }
    if n >= 4 && !is_good(r)? {
        return Err(SearchError::NotGood);
    }
    let start = Instant::now();
    let budget = Budget::new(opts, start);
    let total = n + 1;
    let e = n;
    let tri = TripleIndex::new(total);

    let base: Vec<Vec<usize>> = (0..n)
        .map(|v| r.rotation(v as Label + 1).unwrap().as_slice().iter().map(|&x| x as usize - 1).collect())
        .collect();
    // For every old vertex, each way to insert `e` into its rotation.
    let gaps: Vec<Vec<Vec<usize>>> = base
        .iter()
        .map(|rot| {
            (0..rot.len())
                .map(|g| {
                    let mut v = rot.clone();
                    v.insert(g + 1, e);
                    v
                })
                .collect()
        })
        .collect();
    let gap_masks: Vec<Vec<u128>> =
        gaps.iter().map(|gs| gs.iter().map(|g| negative_mask(g, total, &tri)).collect()).collect();
    let new_rotations = canonical_rotations(e, total);

    // Quadruples {a, b, v, e} checked once `v` is the largest old member.
    type QuadCheck = (usize, usize, u32, u32, u32, u32);
    let checks: Vec<Vec<QuadCheck>> = (0..n)
        .map(|v| {
            (0..v)
                .tuple_combinations()
                .map(|(a, b)| (a, b, tri.get(b, v, e), tri.get(a, v, e), tri.get(a, b, e), tri.get(a, b, v)))
                .collect()
        })
        .collect();

    struct Ctx<'a> {
        n: usize,
        gap_masks: &'a [Vec<u128>],
        checks: &'a [Vec<QuadCheck>],
    }

    fn dfs(ctx: &Ctx, v: usize, new_mask: u128, chosen: &mut Vec<usize>, meter: &mut Meter) -> bool {
        if !meter.tick() {
            return false;
        }
        if v == ctx.n {
            return true;
        }
        for (g, &m) in ctx.gap_masks[v].iter().enumerate() {
            let ok = ctx.checks[v].iter().all(|&(a, b, ta, tb, tv, te)| {
                bit(ctx.gap_masks[a][chosen[a]], ta)
                    ^ bit(ctx.gap_masks[b][chosen[b]], tb)
                    ^ bit(m, tv)
                    ^ bit(new_mask, te)
                    == 0
            });
            if ok {
                chosen.push(g);
                if dfs(ctx, v + 1, new_mask, chosen, meter) {
                    return true;
                }
                chosen.pop();
                if !meter.alive {
                    return false;
                }
            }
        }
        false
    }

    let ctx = Ctx { n, gap_masks: &gap_masks, checks: &checks };
    let found: Vec<Option<Vec<usize>>> = pool(opts.workers)?.install(|| {
        new_rotations
            .par_iter()
            .map(|rot| {
                let mut meter = Meter::new(&budget);
                let mask = negative_mask(rot, total, &tri);
                let mut chosen = Vec::with_capacity(n);
                dfs(&ctx, 0, mask, &mut chosen, &mut meter).then_some(chosen)
            })
            .collect()
    });
    let nodes = budget.check()?;

    let mut witnesses = Vec::new();
    for (rot, choice) in new_rotations.iter().zip(found) {
        if let Some(choice) = choice {
            let mut rots: Vec<Vec<usize>> = choice.iter().enumerate().map(|(v, &g)| gaps[v][g].clone()).collect();
            rots.push(rot.clone());
            let labels = rot.iter().map(|&x| x as Label + 1).collect();
            witnesses.push(Extension { rotation: CyclicPerm::new(labels)?, witness: to_system(&rots) });
        }
    }
    Ok(SearchReport {
        count: (witnesses.len() as u64).into(),
        witnesses,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}

/// Every rotation system on `1..=n` whose rotations start at their smallest
/// label, filtered by [`is_good`]. Exponential; an oracle for tiny `n`.
pub fn naive_good_systems(n: usize) -> Vec<RotationSystem> {
    let per_label: Vec<Vec<CyclicPerm>> = (1..=n as Label)
        .map(|v| {
            let others: Vec<Label> = (1..=n as Label).filter(|&x| x != v).collect();
            others
                .iter()
                .copied()
                .permutations(others.len())
                .map(|p| CyclicPerm::new(p).unwrap())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        })
        .collect();
    per_label
        .iter()
        .map(|v| v.iter())
        .multi_cartesian_product()
        .map(|rots| {
            let map: BTreeMap<Label, CyclicPerm> =
                rots.into_iter().enumerate().map(|(i, c)| (i as Label + 1, c.clone())).collect();
            RotationSystem::new(map).unwrap()
        })
        .filter(|s| is_good(s).unwrap())
        .collect()
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("values are not a bijection on 1..=n")]
    NotBijection,
    #[error("positions must be strictly increasing within 1..={0}")]
    BadPositions(usize),
    #[error("permutations of different lengths")]
    MixedLengths,
    #[error("empty permutation set")]
    Empty,
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Permutation, PermError> {
        let n = values.len() as u32;
        let mut seen = vec![false; values.len()];
        for &v in &values {
            if v == 0 || v > n || std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(PermError::NotBijection);
            }
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// Every permutation of `1..=n`, in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n as u32).permutations(n).map(Permutation)
    }

    /// Contains `pattern` as an order-isomorphic subsequence.
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        (1..=self.len()).combinations(pattern.len()).any(|pos| restriction(self, &pos).as_ref() == Ok(pattern))
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = PermError;
    fn try_from(v: Vec<u32>) -> Result<Self, PermError> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// The pattern of `pi` at the given 1-based positions.
pub fn restriction(pi: &Permutation, positions: &[usize]) -> Result<Permutation, PermError> {
    let n = pi.len();
    if positions.iter().any(|&p| p == 0 || p > n) || positions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PermError::BadPositions(n));
    }
    let vals: Vec<u32> = positions.iter().map(|&p| pi.0[p - 1]).collect();
    let ranks = vals.iter().map(|v| vals.iter().filter(|w| *w <= v).count() as u32).collect();
    Ok(Permutation(ranks))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationSet {
    n: usize,
    members: BTreeSet<Permutation>,
}

impl PermutationSet {
    pub fn new(members: impl IntoIterator<Item = Permutation>) -> Result<PermutationSet, PermError> {
        let members: BTreeSet<Permutation> = members.into_iter().collect();
        let n = members.first().ok_or(PermError::Empty)?.len();
        if members.iter().any(|p| p.len() != n) {
            return Err(PermError::MixedLengths);
        }
        Ok(PermutationSet { n, members })
    }

    pub fn all(n: usize) -> PermutationSet {
        PermutationSet { n, members: Permutation::all(n).collect() }
    }

    /// All `n`-permutations avoiding `pattern`.
    pub fn avoiding(n: usize, pattern: &Permutation) -> Result<PermutationSet, PermError> {
        PermutationSet::new(Permutation::all(n).filter(|p| !p.contains_pattern(pattern)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &BTreeSet<Permutation> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Every `k`-pattern occurs as a restriction of some member to `positions`.
pub fn is_shattered(set: &PermutationSet, positions: &[usize]) -> Result<bool, PermError> {
    let k = positions.len();
    let needed: usize = (1..=k).product();
    if set.len() < needed {
        restriction(&Permutation::identity(set.n), positions)?;
        return Ok(false);
    }
    let mut seen = BTreeSet::new();
    for p in &set.members {
        seen.insert(restriction(p, positions)?);
        if seen.len() == needed {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Size of the largest shattered position set.
pub fn vc_dimension(set: &PermutationSet) -> usize {
    (1..=set.n)
        .rev()
        .find(|&k| (1..=set.n).combinations(k).any(|pos| is_shattered(set, &pos).expect("positions in range")))
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotsys::{convex, twisted, QuadrupleTag};

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_four_gives_the_eight_table_rows() {
        let opts = SearchOptions { witnesses: 100, ..Default::default() };
        let rep = enumerate_good(4, &opts).unwrap();
        assert_eq!(rep.count, 8);
        let found: BTreeSet<_> = rep.witnesses.into_iter().collect();
        let table: BTreeSet<_> = QuadrupleTag::REALIZABLE.iter().map(|t| t.system().unwrap()).collect();
        assert_eq!(found, table);
    }

    #[test]
    fn enumerate_five_matches_naive_filter() {
        let naive = naive_good_systems(5);
        let rep = enumerate_good(5, &SearchOptions { witnesses: usize::MAX, ..Default::default() }).unwrap();
        assert_eq!(rep.count, naive.len() as u64);
        let a: BTreeSet<_> = rep.witnesses.into_iter().collect();
        let b: BTreeSet<_> = naive.into_iter().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let one = enumerate_good(5, &SearchOptions { witnesses: 7, ..Default::default() }).unwrap();
        let many = enumerate_good(5, &SearchOptions { witnesses: 7, workers: 4, ..Default::default() }).unwrap();
        assert_eq!(one.count, many.count);
        assert_eq!(one.witnesses, many.witnesses);
        assert_eq!(one.nodes_explored, many.nodes_explored);
    }

    #[test]
    fn symmetry_reduction_counts_classes() {
        let opts = SearchOptions { symmetry_reduction: true, ..Default::default() };
        let rep = enumerate_good(4, &opts).unwrap();
        let classes = enumerate_good(4, &SearchOptions { witnesses: 8, ..Default::default() })
            .unwrap()
            .witnesses
            .into_iter()
            .fold(Vec::<RotationSystem>::new(), |mut acc, s| {
                if !acc.iter().any(|t| t.is_isomorphic_to(&s)) {
                    acc.push(s);
                }
                acc
            });
        assert_eq!(rep.count, classes.len() as u64);
    }

    #[test]
    fn guards_and_budgets() {
        assert_eq!(enumerate_good(7, &SearchOptions::default()).unwrap_err(), SearchError::TooLarge { n: 7, limit: 6 });
        assert_eq!(enumerate_good(3, &SearchOptions::default()).unwrap_err(), SearchError::TooSmall(3));
        let tight = SearchOptions { node_budget: Some(10), ..Default::default() };
        let err = enumerate_good(5, &tight).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn extend_convex_and_twisted() {
        let rep = extend_good(&convex(4).unwrap(), &SearchOptions::default()).unwrap();
        let rots: Vec<_> = rep.witnesses.iter().map(|x| x.rotation.clone()).collect();
        assert!(rots.contains(&CyclicPerm::new(vec![1, 2, 3, 4]).unwrap()));
        for x in &rep.witnesses {
            assert!(is_good(&x.witness).unwrap());
            assert_eq!(x.witness.restrict(&[1, 2, 3, 4]).unwrap(), convex(4).unwrap());
        }
        let rep = extend_good(&twisted(4).unwrap(), &SearchOptions::default()).unwrap();
        assert!(rep.witnesses.iter().any(|x| x.rotation == CyclicPerm::new(vec![3, 2, 1, 4]).unwrap()));
    }

    #[test]
    fn extend_matches_naive_filter() {
        let naive = naive_good_systems(5);
        for base in naive_good_systems(4) {
            let expected: BTreeSet<CyclicPerm> = naive
                .iter()
                .filter(|s| s.restrict(&[1, 2, 3, 4]).unwrap() == base)
                .map(|s| s.rotation(5).unwrap().clone())
                .collect();
            let rep = extend_good(&base, &SearchOptions::default()).unwrap();
            let got: BTreeSet<CyclicPerm> = rep.witnesses.into_iter().map(|x| x.rotation).collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn extend_rejects_bad_input() {
        let odd = RotationSystem::from_rows(&[&[2, 4, 3], &[1, 3, 4], &[1, 2, 4], &[1, 2, 3]]).unwrap();
        assert_eq!(extend_good(&odd, &SearchOptions::default()).unwrap_err(), SearchError::NotGood);
        let shifted = convex(4).unwrap().relabel(|x| x + 1);
        assert_eq!(extend_good(&shifted, &SearchOptions::default()).unwrap_err(), SearchError::BadLabels);
    }

    #[test]
    fn restriction_examples() {
        let pi = perm(&[3, 1, 4, 2]);
        assert_eq!(restriction(&pi, &[1, 3]).unwrap(), perm(&[1, 2]));
        assert_eq!(restriction(&pi, &[1, 2, 4]).unwrap(), perm(&[3, 1, 2]));
        assert_eq!(restriction(&pi, &[1, 2, 3, 4]).unwrap(), pi);
        assert!(restriction(&pi, &[2, 1]).is_err());
        assert!(restriction(&pi, &[0, 1]).is_err());
        assert!(restriction(&pi, &[4, 5]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
    }

    #[test]
    fn vc_dimension_examples() {
        assert_eq!(vc_dimension(&PermutationSet::all(4)), 4);
        assert_eq!(vc_dimension(&PermutationSet::new([Permutation::identity(3)]).unwrap()), 1);
        let avoid = PermutationSet::avoiding(3, &perm(&[2, 1])).unwrap();
        assert_eq!(avoid.len(), 1);
        assert_eq!(vc_dimension(&avoid), 1);
        let avoid321 = PermutationSet::avoiding(4, &perm(&[3, 2, 1])).unwrap();
        assert_eq!(avoid321.len(), 14);
        assert!(is_shattered(&avoid321, &[1, 4]).unwrap());
    }
}
