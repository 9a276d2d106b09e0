//! Chord diagrams on `2n` boundary points, crossing statistics and the
//! sawtooth encoding.
//!
//! The circle is cut between positions `2n` and `1`, so every chord has a
//! left endpoint `a` and a right endpoint `b` with `a < b`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::catalan;
use crate::count::{binomial, ExactCount};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ChordError {
    #[error("chords do not partition positions 1..={0}")]
    NotAMatching(usize),
    #[error("parenthesis string is not balanced or has wrong length")]
    Unbalanced,
    #[error("kappa has {found} entries, expected {expected}")]
    KappaLength { expected: usize, found: usize },
    #[error("kappa entry {index} = {value} but only {open} chords are open")]
    KappaTooLarge { index: usize, value: u32, open: usize },
    #[error("n = {n} is above the configured limit {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// A perfect matching of positions `1..=2n`, stored as `(a, b)` pairs with
/// `a < b`, sorted by `a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, u32)>", into = "Vec<(u32, u32)>")]
pub struct ChordDiagram {
    chords: Vec<(u32, u32)>,
}

impl ChordDiagram {
    pub fn new(pairs: Vec<(u32, u32)>) -> Result<ChordDiagram, ChordError> {
        let m = 2 * pairs.len();
        let mut seen = vec![false; m];
        let mut chords = Vec::with_capacity(pairs.len());
        for (x, y) in pairs {
            let (a, b) = (x.min(y), x.max(y));
            for p in [a, b] {
                if p == 0 || p as usize > m || std::mem::replace(&mut seen[p as usize - 1], true) {
                    return Err(ChordError::NotAMatching(m));
                }
            }
            chords.push((a, b));
        }
        chords.sort_unstable();
        Ok(ChordDiagram { chords })
    }

    pub fn n(&self) -> usize {
        self.chords.len()
    }

    pub fn chords(&self) -> &[(u32, u32)] {
        &self.chords
    }

    /// Number of pairs `(a, b)`, `(c, d)` with `a < c < b < d`.
    pub fn crossings(&self) -> usize {
        let c = &self.chords;
        let mut k = 0;
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let ((a, b), (x, y)) = (c[i], c[j]);
                if a < x && x < b && b < y {
                    k += 1;
                }
            }
        }
        k
    }
}

impl TryFrom<Vec<(u32, u32)>> for ChordDiagram {
    type Error = ChordError;
    fn try_from(v: Vec<(u32, u32)>) -> Result<Self, ChordError> {
        ChordDiagram::new(v)
    }
}

impl From<ChordDiagram> for Vec<(u32, u32)> {
    fn from(d: ChordDiagram) -> Self {
        d.chords
    }
}

pub fn crossings(d: &ChordDiagram) -> usize {
    d.crossings()
}

/// Calls `f` on every matching of `2n` points whose position 1 is matched
/// to `first_partner` (or on every matching when `None`).
fn for_each_matching(n: usize, first_partner: Option<u32>, f: &mut dyn FnMut(&ChordDiagram)) {
    fn rec(free: &mut Vec<u32>, acc: &mut Vec<(u32, u32)>, f: &mut dyn FnMut(&ChordDiagram)) {
        if free.is_empty() {
            f(&ChordDiagram::new(acc.clone()).expect("generated matching"));
            return;
        }
        let a = free.remove(0);
        for i in 0..free.len() {
            let b = free.remove(i);
            acc.push((a, b));
            rec(free, acc, f);
            acc.pop();
            free.insert(i, b);
        }
        free.insert(0, a);
    }
    let m = 2 * n as u32;
    let mut acc = Vec::with_capacity(n);
    let mut free: Vec<u32> = (1..=m).collect();
    if let Some(p) = first_partner {
        free.retain(|&x| x != 1 && x != p);
        acc.push((1, p));
    }
    rec(&mut free, &mut acc, f);
}

/// Every chord diagram with `n` chords, in a fixed order.
pub fn all_diagrams(n: usize) -> Vec<ChordDiagram> {
    let mut out = Vec::new();
    for_each_matching(n, None, &mut |d| out.push(d.clone()));
    out
}

/// `C(n, k)` for every `k` from 0 to `n(n-1)/2`, by enumerating all
/// matchings. Work is split by the partner of position 1.
pub fn crossing_distribution(n: usize, limit: usize) -> Result<Vec<ExactCount>, ChordError> {
    if n > limit {
        return Err(ChordError::TooLarge { n, limit });
    }
    let kmax = n * n.saturating_sub(1) / 2;
    if n == 0 {
        return Ok(vec![1u64.into()]);
    }
    let rows: Vec<Vec<u64>> = (2..=2 * n as u32)
        .into_par_iter()
        .map(|p| {
            let mut row = vec![0u64; kmax + 1];
            for_each_matching(n, Some(p), &mut |d| row[d.crossings()] += 1);
            row
        })
        .collect();
    Ok((0..=kmax).map(|k| rows.iter().map(|r| r[k]).sum::<u64>().into()).collect())
}

pub fn count_diagrams(n: usize, k: usize, limit: usize) -> Result<ExactCount, ChordError> {
    let row = crossing_distribution(n, limit)?;
    Ok(row.get(k).cloned().unwrap_or_else(ExactCount::zero))
}

/// Read's bound `Catalan(n) * binom(n + k, n)` on diagrams with at most `k`
/// crossings.
pub fn read_bound(n: u64, k: u64) -> ExactCount {
    ExactCount(catalan(n).0 * binomial(n + k, n))
}

/// Balanced parentheses marking left and right endpoints, and for each chord
/// (ordered by right endpoint) the number of chords opened after it that
/// are still open when it closes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SawtoothCode {
    pub parens: String,
    pub kappa: Vec<u32>,
}

impl fmt::Display for SawtoothCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k: Vec<String> = self.kappa.iter().map(u32::to_string).collect();
        write!(f, "{} ({})", self.parens, k.join(","))
    }
}

pub fn sawtooth_encode(d: &ChordDiagram) -> SawtoothCode {
    let m = 2 * d.n();
    let mut parens = vec![')'; m];
    for &(a, _) in d.chords() {
        parens[a as usize - 1] = '(';
    }
    let mut by_right: Vec<(u32, u32)> = d.chords().to_vec();
    by_right.sort_unstable_by_key(|&(_, b)| b);
    let kappa = by_right
        .iter()
        .map(|&(a, b)| d.chords().iter().filter(|&&(x, y)| a < x && x < b && b < y).count() as u32)
        .collect();
    SawtoothCode { parens: parens.into_iter().collect(), kappa }
}

/// Sweeps left to right; at the `i`-th right endpoint the open chords are
/// stacked with the most recently opened at the bottom, and the
/// `(kappa_i + 1)`-th from the bottom closes.
pub fn sawtooth_decode(code: &SawtoothCode) -> Result<ChordDiagram, ChordError> {
    let chars: Vec<char> = code.parens.chars().collect();
    if chars.len() % 2 == 1 || chars.iter().any(|&c| c != '(' && c != ')') {
        return Err(ChordError::Unbalanced);
    }
    let n = chars.len() / 2;
    if code.kappa.len() != n {
        return Err(ChordError::KappaLength { expected: n, found: code.kappa.len() });
    }
    let mut open: Vec<u32> = Vec::new();
    let mut pairs = Vec::with_capacity(n);
    let mut closed = 0;
    for (i, &c) in chars.iter().enumerate() {
        let pos = i as u32 + 1;
        if c == '(' {
            open.push(pos);
            continue;
        }
        if open.is_empty() {
            return Err(ChordError::Unbalanced);
        }
        let k = code.kappa[closed] as usize;
        if k >= open.len() {
            return Err(ChordError::KappaTooLarge { index: closed, value: code.kappa[closed], open: open.len() });
        }
        let a = open.remove(open.len() - 1 - k);
        pairs.push((a, pos));
        closed += 1;
    }
    if !open.is_empty() {
        return Err(ChordError::Unbalanced);
    }
    ChordDiagram::new(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::double_factorial;
    use std::collections::BTreeSet;

    fn diag(p: &[(u32, u32)]) -> ChordDiagram {
        ChordDiagram::new(p.to_vec()).unwrap()
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(diag(&[(1, 3), (2, 4)]).crossings(), 1);
        assert_eq!(diag(&[(1, 2), (3, 4)]).crossings(), 0);
        assert_eq!(diag(&[(1, 4), (2, 5), (3, 6)]).crossings(), 3);
        assert!(ChordDiagram::new(vec![(1, 2), (2, 3)]).is_err());
        assert!(ChordDiagram::new(vec![(1, 5)]).is_err());
    }

    #[test]
    fn distribution_small_values() {
        assert_eq!(count_diagrams(2, 1, 8).unwrap(), 1);
        let row = crossing_distribution(3, 8).unwrap();
        let total: ExactCount = row.iter().cloned().sum();
        assert_eq!(total, 15);
        assert_eq!(row[0], 5);
        assert!(crossing_distribution(9, 8).is_err());
    }

    #[test]
    fn distribution_matches_serial_bucketing() {
        for n in 1..=5 {
            let mut row = vec![0u64; n * (n - 1) / 2 + 1];
            for d in all_diagrams(n) {
                row[d.crossings()] += 1;
            }
            let par: Vec<u64> = crossing_distribution(n, 8).unwrap().iter().map(|c| c.to_u64().unwrap()).collect();
            assert_eq!(par, row);
            assert_eq!(ExactCount::from(row.iter().sum::<u64>()), ExactCount(double_factorial(2 * n as u64 - 1)));
        }
    }

    #[test]
    fn sawtooth_examples() {
        let c = sawtooth_encode(&diag(&[(1, 3), (2, 4)]));
        assert_eq!(c.parens, "(())");
        assert_eq!(c.kappa, vec![1, 0]);
        assert_eq!(sawtooth_decode(&c).unwrap(), diag(&[(1, 3), (2, 4)]));
        let nested = diag(&[(1, 6), (2, 3), (4, 5)]);
        assert_eq!(sawtooth_encode(&nested).kappa, vec![0, 0, 0]);
    }

    #[test]
    fn figure_code_has_six_crossings() {
        let code = SawtoothCode { parens: "(()(()))((()))".into(), kappa: vec![1, 2, 1, 0, 2, 0, 0] };
        let d = sawtooth_decode(&code).unwrap();
        assert_eq!(d.n(), 7);
        assert_eq!(d.crossings(), 6);
        assert_eq!(sawtooth_encode(&d), code);
    }

    #[test]
    fn decode_rejects_bad_codes() {
        let c = SawtoothCode { parens: "(())".into(), kappa: vec![2, 0] };
        assert!(matches!(sawtooth_decode(&c), Err(ChordError::KappaTooLarge { .. })));
        let c = SawtoothCode { parens: "())(".into(), kappa: vec![0, 0] };
        assert_eq!(sawtooth_decode(&c), Err(ChordError::Unbalanced));
        let c = SawtoothCode { parens: "()".into(), kappa: vec![] };
        assert!(matches!(sawtooth_decode(&c), Err(ChordError::KappaLength { .. })));
    }

    #[test]
    fn sawtooth_is_a_bijection_up_to_five() {
        for n in 1..=5 {
            let mut codes = BTreeSet::new();
            for d in all_diagrams(n) {
                let c = sawtooth_encode(&d);
                assert_eq!(c.kappa.iter().sum::<u32>() as usize, d.crossings());
                assert_eq!(sawtooth_decode(&c).unwrap(), d);
                assert!(codes.insert(c));
            }
        }
    }

    #[test]
    fn read_bound_values() {
        assert_eq!(read_bound(3, 0), 5);
        assert_eq!(read_bound(1, 0), 1);
        assert_eq!(read_bound(2, 1), 6);
    }
}
