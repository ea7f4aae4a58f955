//! Partitions, β-sets and abacus arithmetic.
//!
//! A β-set is a subset `B` of the integers that contains every sufficiently
//! small integer and only finitely many large ones. It is stored as
//! `Z_{<m} ∪ excess` with `m = min(Z \ B)`, so equality of the stored data is
//! equality of the represented sets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Floor division for `i64` with a positive divisor.
pub fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// Least non-negative residue of `a` modulo a positive `b`.
pub fn modulo(a: i64, b: i64) -> i64 {
    a.rem_euclid(b)
}

/// A partition: a weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from a weakly decreasing sequence, dropping zeros.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts that are already weakly decreasing.
    ///
    /// # Panics
    /// Panics if the sequence increases somewhere.
    pub fn from_parts(parts: &[usize]) -> Self {
        Self::new(parts.to_vec()).expect("parts must be weakly decreasing")
    }

    /// The nonzero parts.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// True for the empty partition.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The part in row `a` (1-based); zero beyond the last row.
    pub fn part(&self, a: usize) -> usize {
        if a == 0 {
            return 0;
        }
        self.parts.get(a - 1).copied().unwrap_or(0)
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let first = self.part(1);
        let parts = (1..=first)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// True if no part is repeated `e` or more times.
    pub fn is_e_regular(&self, e: usize) -> bool {
        let mut run = 1;
        for w in self.parts.windows(2) {
            if w[0] == w[1] {
                run += 1;
                if run >= e {
                    return false;
                }
            } else {
                run = 1;
            }
        }
        true
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

/// A β-set `Z_{<threshold} ∪ excess` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BetaSet {
    threshold: i64,
    excess: Vec<i64>,
}

impl BetaSet {
    /// The lower closure `Z_{<m}`.
    pub fn lower(m: i64) -> Self {
        BetaSet {
            threshold: m,
            excess: Vec::new(),
        }
    }

    /// Normalizes `Z_{<m} ∪ elements` into canonical form.
    pub fn from_parts<I: IntoIterator<Item = i64>>(m: i64, elements: I) -> Self {
        let set: BTreeSet<i64> = elements.into_iter().filter(|&x| x >= m).collect();
        let mut threshold = m;
        let mut it = set.into_iter().peekable();
        while it.peek() == Some(&threshold) {
            it.next();
            threshold += 1;
        }
        BetaSet {
            threshold,
            excess: it.collect(),
        }
    }

    /// `m = min(Z \ B)`.
    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    /// The finitely many elements above the threshold, ascending.
    pub fn excess(&self) -> &[i64] {
        &self.excess
    }

    /// Membership test.
    pub fn contains(&self, x: i64) -> bool {
        x < self.threshold || self.excess.binary_search(&x).is_ok()
    }

    /// The charge `m + |excess|`.
    pub fn charge(&self) -> i64 {
        self.threshold + self.excess.len() as i64
    }

    /// The largest element.
    pub fn max_element(&self) -> i64 {
        self.excess.last().copied().unwrap_or(self.threshold - 1)
    }

    /// Elements `≥ from`, descending.
    pub fn elements_from(&self, from: i64) -> Vec<i64> {
        let mut v: Vec<i64> = self.excess.iter().copied().filter(|&x| x >= from).collect();
        v.extend(from.min(self.threshold)..self.threshold);
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// `B ∪ {x}`.
    pub fn insert(&self, x: i64) -> Self {
        BetaSet::from_parts(self.threshold, self.excess.iter().copied().chain([x]))
    }

    /// `B \ {x}`.
    pub fn remove(&self, x: i64) -> Self {
        if x >= self.threshold {
            let rest = self.excess.iter().copied().filter(|&y| y != x);
            return BetaSet::from_parts(self.threshold, rest);
        }
        let above = (x + 1..self.threshold).chain(self.excess.iter().copied());
        BetaSet::from_parts(x, above.collect::<Vec<_>>())
    }

    /// Translation `B^{+k}`.
    pub fn shift(&self, k: i64) -> Self {
        BetaSet {
            threshold: self.threshold + k,
            excess: self.excess.iter().map(|x| x + k).collect(),
        }
    }
}

impl fmt::Display for BetaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z<{}", self.threshold)?;
        if !self.excess.is_empty() {
            let body: Vec<String> = self.excess.iter().map(|x| x.to_string()).collect();
            write!(f, " ∪ {{{}}}", body.join(","))?;
        }
        Ok(())
    }
}

/// `β_t(λ) = {λ_i + t − i : i ≥ 1}`.
pub fn beta_set(lambda: &Partition, t: i64) -> BetaSet {
    let len = lambda.len() as i64;
    let elems = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + t - (i as i64 + 1));
    BetaSet::from_parts(t - len, elems)
}

/// Inverse of [`beta_set`]: the partition and the charge of `b`.
pub fn beta_inverse(b: &BetaSet) -> (Partition, i64) {
    let s = b.charge();
    let parts = b
        .excess()
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &x)| (x - s + i as i64 + 1) as usize)
        .collect();
    (Partition { parts }, s)
}

/// Size of the partition encoded by `b`.
pub fn beta_size(b: &BetaSet) -> usize {
    beta_inverse(b).0.size()
}

/// The e-quotient of a β-set: the runners read as β-sets, with their charges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EQuotientData {
    /// Runner `i + 1` holds `{(x − i)/e : x ∈ B, x ≡ i}`.
    pub components: Vec<BetaSet>,
}

impl EQuotientData {
    /// The charge of every runner.
    pub fn charges(&self) -> Vec<i64> {
        self.components.iter().map(BetaSet::charge).collect()
    }

    /// Number of runners.
    pub fn e(&self) -> usize {
        self.components.len()
    }
}

fn check_e(e: usize) -> Result<i64> {
    if e < 2 {
        return Err(Error::InvalidParameter(format!(
            "e must be at least 2, got {e}"
        )));
    }
    Ok(e as i64)
}

/// Splits `b` into its `e` runners.
pub fn e_quotient(b: &BetaSet, e: usize) -> Result<EQuotientData> {
    let ei = check_e(e)?;
    let m = b.threshold();
    let components = (0..ei)
        .map(|i| {
            let thr = div_floor(m - i + ei - 1, ei);
            let xs = b
                .excess()
                .iter()
                .filter(|&&x| modulo(x, ei) == i)
                .map(|&x| (x - i) / ei);
            BetaSet::from_parts(thr, xs)
        })
        .collect();
    Ok(EQuotientData { components })
}

/// Reassembles a β-set from its runners.
pub fn inverse_quotient(q: &[BetaSet]) -> Result<BetaSet> {
    let ei = check_e(q.len())?;
    let m0 = q
        .iter()
        .enumerate()
        .map(|(i, c)| c.threshold() * ei + i as i64)
        .min()
        .expect("at least two runners");
    let mut elems = Vec::new();
    for (i, c) in q.iter().enumerate() {
        let i = i as i64;
        let lo = div_floor(m0 - i + ei - 1, ei);
        elems.extend((lo..c.threshold()).map(|y| y * ei + i));
        elems.extend(c.excess().iter().map(|y| y * ei + i));
    }
    Ok(BetaSet::from_parts(m0, elems))
}

/// The e-core of `b` and its e-weight.
pub fn e_core_and_weight(b: &BetaSet, e: usize) -> Result<(BetaSet, usize)> {
    let q = e_quotient(b, e)?;
    let weight = q.components.iter().map(beta_size).sum();
    let cores: Vec<BetaSet> = q
        .components
        .iter()
        .map(|c| BetaSet::lower(c.charge()))
        .collect();
    Ok((inverse_quotient(&cores)?, weight))
}

/// The hub: entry `j` is `𝒮(B_{j+1}) − 𝒮(B_j) − δ_{j0}` with `B_0 = B_e`.
pub fn hub(b: &BetaSet, e: usize) -> Result<Vec<i64>> {
    let s = e_quotient(b, e)?.charges();
    Ok(hub_from_runner_charges(&s))
}

/// The hub computed from runner charges `(s_1, …, s_e)`.
pub fn hub_from_runner_charges(s: &[i64]) -> Vec<i64> {
    let e = s.len();
    (0..e)
        .map(|j| {
            let prev = if j == 0 { s[e - 1] } else { s[j - 1] };
            s[j] - prev - i64::from(j == 0)
        })
        .collect()
}

/// Renders `b` on an e-abacus.
///
/// Rows are printed from the highest row down, runner 0 is the leftmost
/// column, beads are `●` and gaps are `·`. The last printed row is the first
/// row consisting entirely of beads.
pub fn render_abacus(b: &BetaSet, e: usize) -> Result<String> {
    let ei = check_e(e)?;
    let top = div_floor(b.max_element().max(b.threshold()), ei);
    let bottom = div_floor(b.threshold(), ei) - 1;
    let mut out = String::new();
    for row in (bottom..=top).rev() {
        let line: Vec<&str> = (0..ei)
            .map(|i| {
                if b.contains(row * ei + i) {
                    "●"
                } else {
                    "·"
                }
            })
            .collect();
        out.push_str(&format!("{row:>4} {}\n", line.join(" ")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::from_parts(parts)
    }

    #[test]
    fn beta_set_examples() {
        assert_eq!(beta_set(&Partition::empty(), 3), BetaSet::lower(3));
        assert_eq!(
            beta_set(&p(&[3, 2, 1, 1, 1, 1]), 1),
            BetaSet::from_parts(-5, [-4, -3, -2, -1, 1, 3])
        );
        assert_eq!(beta_set(&p(&[1]), 0), BetaSet::from_parts(-1, [0]));
        assert_eq!(beta_set(&p(&[2]), 0), BetaSet::from_parts(-1, [1]));
    }

    #[test]
    fn beta_inverse_examples() {
        assert_eq!(beta_inverse(&BetaSet::lower(0)), (Partition::empty(), 0));
        assert_eq!(beta_inverse(&BetaSet::from_parts(-1, [0])), (p(&[1]), 0));
        assert_eq!(beta_inverse(&BetaSet::from_parts(-1, [1])), (p(&[2]), 0));
        assert_eq!(
            beta_inverse(&BetaSet::from_parts(-5, [-4, -3, -2, -1, 1, 3])),
            (p(&[3, 2, 1, 1, 1, 1]), 1)
        );
    }

    #[test]
    fn canonical_form_absorbs_threshold() {
        let b = BetaSet::from_parts(0, [0, 1, 3]);
        assert_eq!(b.threshold(), 2);
        assert_eq!(b.excess(), &[3]);
        assert_eq!(b.charge(), 3);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(BetaSet::lower(0).shift(3), BetaSet::lower(3));
        assert_eq!(
            BetaSet::from_parts(-1, [1]).shift(1),
            BetaSet::from_parts(0, [2])
        );
        assert_eq!(
            BetaSet::from_parts(0, [2, 5]).shift(-2),
            BetaSet::from_parts(-2, [0, 3])
        );
    }

    #[test]
    fn quotient_examples() {
        let q = e_quotient(&BetaSet::lower(0), 3).unwrap();
        assert_eq!(q.components, vec![BetaSet::lower(0); 3]);
        let b = BetaSet::from_parts(-2, [-1, 2, 4, 5]);
        assert_eq!(e_quotient(&b, 3).unwrap().charges().iter().sum::<i64>(), 2);
        assert_eq!(
            e_quotient(&BetaSet::lower(3), 2).unwrap().charges(),
            vec![2, 1]
        );
    }

    #[test]
    fn core_examples() {
        assert_eq!(
            e_core_and_weight(&BetaSet::lower(5), 4).unwrap(),
            (BetaSet::lower(5), 0)
        );
        assert_eq!(
            e_core_and_weight(&BetaSet::from_parts(-2, [-1, 2, 4, 5]), 3).unwrap(),
            (BetaSet::from_parts(0, [2, 5]), 2)
        );
        assert_eq!(
            e_core_and_weight(&BetaSet::from_parts(-1, [1]), 2).unwrap(),
            (BetaSet::lower(0), 1)
        );
    }

    #[test]
    fn hub_of_empty() {
        assert_eq!(hub(&BetaSet::lower(0), 4).unwrap(), vec![-1, 0, 0, 0]);
    }

    #[test]
    fn rejects_small_e() {
        assert!(e_quotient(&BetaSet::lower(0), 1).is_err());
    }

    #[test]
    fn abacus_text() {
        let s = render_abacus(&BetaSet::from_parts(-1, [1]), 2).unwrap();
        assert_eq!(s, "   0 · ●\n  -1 ● ·\n  -2 ● ●\n");
    }
}
