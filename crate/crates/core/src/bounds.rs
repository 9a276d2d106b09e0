//! Closed-form counts evaluated exactly, adjacent-edge pairs, the random
//! partition machinery with its exact variance, and the inverse Ackermann
//! hierarchy.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::count::{binomial, exact_div, factorial, ExactCount};
use crate::graph::{Edge, Label, SimpleGraph};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("pattern graph must have vertices 1..={q} (found {found} vertices)")]
    PatternMismatch { q: u32, found: usize },
    #[error("no partition met the threshold in {attempts} attempts")]
    NotFound { attempts: u64 },
}

fn fact(n: u64) -> BigUint {
    factorial(n)
}

/// Rooted connected planar maps with `m` edges: `2 (2M)! 3^M / (M! (M+2)!)`.
pub fn tutte_maps(m: u64) -> ExactCount {
    let num = BigUint::from(2u32) * fact(2 * m) * BigUint::from(3u32).pow(m as u32);
    ExactCount(exact_div(num, &(fact(m) * fact(m + 2))))
}

/// Rooted connected loopless planar maps: `6 (4M+1)! / (M! (3M+3)!)`.
pub fn walsh_lehman_loopless(m: u64) -> ExactCount {
    let num = BigUint::from(6u32) * fact(4 * m + 1);
    ExactCount(exact_div(num, &(fact(m) * fact(3 * m + 3))))
}

/// Rooted simple quadrangulations of the disc with `N` internal and
/// `2M + 4` external vertices.
pub fn mullin_schellenberg(m: u64, n: u64) -> Result<ExactCount, BoundsError> {
    if m < 1 {
        return Err(BoundsError::Domain("M must be at least 1".into()));
    }
    let num = fact(3 * m + 3) * fact(2 * n + m - 1);
    let den = fact(m - 1) * fact(2 * m + 3) * fact(n) * fact(n + m + 1);
    Ok(ExactCount(exact_div(num, &den)))
}

/// The binomial upper bound `binom(3M+3, M) binom(2N+M-1, N)`.
pub fn mullin_schellenberg_binomial_bound(m: u64, n: u64) -> Result<ExactCount, BoundsError> {
    if m < 1 {
        return Err(BoundsError::Domain("M must be at least 1".into()));
    }
    Ok(ExactCount(binomial(3 * m + 3, m) * binomial(2 * n + m - 1, n)))
}

/// Arrangements of `n` pseudochords with at most `k` crossings:
/// `binom(3n-3, n-2) binom(3n+2k, n+k+1)`.
pub fn arrangement_bound(n: u64, k: u64) -> Result<ExactCount, BoundsError> {
    if n < 2 {
        return Err(BoundsError::Domain("n must be at least 2".into()));
    }
    Ok(ExactCount(binomial(3 * n - 3, n - 2) * binomial(3 * n + 2 * k, n + k + 1)))
}

pub fn catalan(n: u64) -> ExactCount {
    ExactCount(exact_div(binomial(2 * n, n), &BigUint::from(n + 1)))
}

/// `p(G)`: the number of pairs of edges sharing an endpoint.
pub fn adjacent_edge_pairs(g: &SimpleGraph) -> ExactCount {
    g.vertices().iter().map(|&v| ExactCount(binomial(g.degree(v) as u64, 2))).sum()
}

fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Smallest multiple of `1/scale` that is at least `sqrt(x)`.
fn sqrt_upper(x: &BigRational, scale: &BigUint) -> BigRational {
    assert!(!x.is_negative());
    // sqrt(p/q) <= ceil(sqrt(ceil(p * s^2 / q))) / s
    let s2 = BigInt::from(scale * scale);
    let scaled = (x * BigRational::from_integer(s2)).ceil().to_integer();
    let scaled = scaled.to_biguint().expect("nonnegative");
    let mut r = scaled.sqrt();
    if &r * &r < scaled {
        r += 1u32;
    }
    BigRational::new(BigInt::from(r), BigInt::from(scale.clone()))
}

/// Denominator used when rounding square roots outward.
pub const SQRT_SCALE: u64 = 1 << 24;

/// Upper bound on `f(n, m)`, the largest `p(G)` over graphs with `n`
/// vertices and `m` edges, with every irrational term rounded up.
pub fn nikiforov_bound(n: u64, m: u64) -> Result<BigRational, BoundsError> {
    if n < 1 || m > n * (n - 1) / 2 {
        return Err(BoundsError::Domain(format!("m = {m} exceeds binom({n}, 2)")));
    }
    let scale = BigUint::from(SQRT_SCALE);
    let mq = BigRational::from_integer(m.into());
    if 4 * m >= n * n {
        // sqrt(2) m^{3/2} = m sqrt(2m)
        Ok(&mq * sqrt_upper(&ratio(2 * m, 1), &scale))
    } else {
        let base = BigRational::from_integer((n * n - 2 * m).into());
        let cube = &base * sqrt_upper(&base, &scale);
        let n3 = BigRational::from_integer((n * n * n).into());
        Ok((cube - n3) / ratio(2, 1) + ratio(2 * n * m, 1))
    }
}

/// Largest `C` with `nikiforov_bound(n, m) = nm/2 + C m^2/n` over all
/// `1 <= m <= binom(n, 2)` and `2 <= n <= n_max`.
pub fn corollary_constant(n_max: u64) -> BigRational {
    let mut best = BigRational::zero();
    for n in 2..=n_max {
        for m in 1..=n * (n - 1) / 2 {
            let b = nikiforov_bound(n, m).expect("in range");
            let c = (b - ratio(n * m, 2)) * ratio(n, m * m);
            if c > best {
                best = c;
            }
        }
    }
    best
}

/// Exact `E X` and `E X^2` for the number of edges between two fixed
/// clusters of a uniform random `q`-partition.
pub fn cross_moments(g: &SimpleGraph, q: u32) -> Result<(BigRational, BigRational), BoundsError> {
    if q < 2 {
        return Err(BoundsError::Domain("q must be at least 2".into()));
    }
    let m = g.size() as u64;
    let p = adjacent_edge_pairs(g).0;
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let q3 = &q2 * &q;
    let q4 = &q3 * &q;
    let ex = BigRational::new(BigInt::from(2 * m), q2.clone());
    let pairs = BigInt::from(binomial(m, 2));
    let p = BigInt::from(p);
    let ex2 = &ex
        + BigRational::new(BigInt::from(8) * pairs, q4.clone())
        + (BigRational::new(BigInt::from(4), q3) - BigRational::new(BigInt::from(8), q4))
            * BigRational::from_integer(p);
    Ok((ex, ex2))
}

pub fn cross_variance(g: &SimpleGraph, q: u32) -> Result<BigRational, BoundsError> {
    let (ex, ex2) = cross_moments(g, q)?;
    Ok(&ex2 - &ex * &ex)
}

/// A vertex partition into clusters `1..=q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub q: u32,
    pub clusters: BTreeMap<Label, u32>,
    /// Index of the sampling attempt that produced it.
    pub attempt: u64,
    /// Edge count between the clusters of each pattern edge.
    pub cuts: Vec<(Edge, u64)>,
}

/// Edges of `g` with one endpoint in cluster `i` and the other in `j`.
pub fn cut_size(g: &SimpleGraph, clusters: &BTreeMap<Label, u32>, i: u32, j: u32) -> u64 {
    g.edges()
        .iter()
        .filter(|e| {
            let (a, b) = (clusters[&e.lo()], clusters[&e.hi()]);
            (a == i && b == j) || (a == j && b == i)
        })
        .count() as u64
}

/// True when `x >= 2m/q^2 - sqrt(r) sigma`, decided without rounding.
pub fn meets_threshold(x: u64, m: u64, q: u32, r: u64, variance: &BigRational) -> bool {
    let gap = ratio(2 * m, (q as u64) * (q as u64)) - ratio(x, 1);
    !gap.is_positive() || &gap * &gap <= ratio(r, 1) * variance
}

/// A pattern graph on cluster labels `1..=q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    Matching,
    Complete,
    Path,
    Cycle,
}

pub fn pattern_graph(kind: PatternKind, q: u32) -> Result<SimpleGraph, BoundsError> {
    let edges: Vec<[Label; 2]> = match kind {
        PatternKind::Matching => (1..=q / 2).map(|i| [2 * i - 1, 2 * i]).collect(),
        PatternKind::Complete => (1..=q).flat_map(|i| (i + 1..=q).map(move |j| [i, j])).collect(),
        PatternKind::Path => (1..q).map(|i| [i, i + 1]).collect(),
        PatternKind::Cycle if q >= 3 => (1..=q).map(|i| [i, i % q + 1]).collect(),
        PatternKind::Cycle => return Err(BoundsError::Domain("a cycle needs q >= 3".into())),
    };
    SimpleGraph::with_order(q, edges).map_err(|e| BoundsError::Domain(e.to_string()))
}

/// Samples uniform `q`-partitions until every edge `{i, j}` of `pattern`
/// has at least `2m/q^2 - sqrt(r) sigma` edges of `g` between clusters `i`
/// and `j`, where `r = |E(pattern)|`.
///
/// Attempt `t` draws from ChaCha8 seeded with `seed` on stream `t`;
/// attempts are evaluated in parallel batches and the lowest successful
/// index wins, so the result depends only on `seed`.
pub fn find_partition(
    g: &SimpleGraph,
    q: u32,
    pattern: &SimpleGraph,
    seed: u64,
    max_attempts: u64,
) -> Result<Partition, BoundsError> {
    if q < 2 {
        return Err(BoundsError::Domain("q must be at least 2".into()));
    }
    if !pattern.vertices().iter().copied().eq(1..=q) {
        return Err(BoundsError::PatternMismatch { q, found: pattern.order() });
    }
    let m = g.size() as u64;
    let r = pattern.size() as u64;
    let variance = cross_variance(g, q)?;
    let vertices: Vec<Label> = g.vertices().iter().copied().collect();

    let attempt = |t: u64| -> Option<Partition> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t);
        let clusters: BTreeMap<Label, u32> = vertices.iter().map(|&v| (v, rng.random_range(1..=q))).collect();
        let mut cuts = Vec::with_capacity(pattern.size());
        for e in pattern.edges() {
            let x = cut_size(g, &clusters, e.lo(), e.hi());
            if !meets_threshold(x, m, q, r, &variance) {
                return None;
            }
            cuts.push((*e, x));
        }
        Some(Partition { q, clusters, attempt: t, cuts })
    };

    const BATCH: u64 = 64;
    let mut start = 0;
    while start < max_attempts {
        let end = (start + BATCH).min(max_attempts);
        let hit = (start..end).into_par_iter().filter_map(attempt).min_by_key(|p| p.attempt);
        if let Some(p) = hit {
            return Ok(p);
        }
        start = end;
    }
    Err(BoundsError::NotFound { attempts: max_attempts })
}

/// The inverse Ackermann hierarchy with memoized values.
#[derive(Default)]
pub struct Ackermann {
    memo: HashMap<(u32, u64), u64>,
}

impl Ackermann {
    pub fn new() -> Self {
        Self::default()
    }

    /// `alpha_1(m) = ceil(m/2)`, `alpha_d(1) = 0` for `d >= 2`, and
    /// `alpha_d(m) = 1 + alpha_d(alpha_{d-1}(m))`.
    pub fn alpha_d(&mut self, d: u32, m: u64) -> u64 {
        assert!(d >= 1 && m >= 1, "alpha_d needs d, m >= 1");
        if d == 1 {
            return m.div_ceil(2);
        }
        if m == 1 {
            return 0;
        }
        if let Some(&v) = self.memo.get(&(d, m)) {
            return v;
        }
        let inner = self.alpha_d(d - 1, m);
        let v = 1 + self.alpha_d(d, inner);
        self.memo.insert((d, m), v);
        v
    }

    /// `min { k : alpha_k(m) <= 3 }`.
    pub fn inverse(&mut self, m: u64) -> u64 {
        (1u32..).find(|&k| self.alpha_d(k, m) <= 3).expect("hierarchy collapses") as u64
    }
}

pub fn alpha_d(d: u32, m: u64) -> Result<u64, BoundsError> {
    if d < 1 || m < 1 {
        return Err(BoundsError::Domain("alpha_d needs d, m >= 1".into()));
    }
    Ok(Ackermann::new().alpha_d(d, m))
}

pub fn inverse_ackermann(m: u64) -> Result<u64, BoundsError> {
    if m < 1 {
        return Err(BoundsError::Domain("m must be at least 1".into()));
    }
    Ok(Ackermann::new().inverse(m))
}

/// Exact mean and variance of `X` by averaging over all `q^n` assignments.
/// Exponential; an oracle for small graphs.
pub fn exhaustive_cross_moments(g: &SimpleGraph, q: u32) -> (BigRational, BigRational) {
    let vs: Vec<Label> = g.vertices().iter().copied().collect();
    let n = vs.len() as u32;
    let total = (q as u64).pow(n);
    let (mut s1, mut s2) = (0u64, 0u64);
    let mut clusters: BTreeMap<Label, u32> = BTreeMap::new();
    for code in 0..total {
        let mut c = code;
        for &v in &vs {
            clusters.insert(v, (c % q as u64) as u32 + 1);
            c /= q as u64;
        }
        let x = cut_size(g, &clusters, 1, 2);
        s1 += x;
        s2 += x * x;
    }
    (ratio(s1, total), ratio(s2, total))
}

impl From<ExactCount> for BigRational {
    fn from(c: ExactCount) -> Self {
        BigRational::from_integer(BigInt::from(c.0))
    }
}
