//! Extended affine Weyl groups `Ŵ_m = Sym_m ⋉ Z^m` and their actions.
//!
//! An element is stored in normal form `σt` with `σ` a permutation of
//! `[1, m]` and `t ∈ Z^m`. Products follow `(σt)(τu) = (στ)(t^τ + u)` where
//! `t^τ = (t_{τ(1)}, …, t_{τ(m)})` and permutations compose right to left.

use serde::{Deserialize, Serialize};

use crate::betaset::{
    beta_inverse, beta_set, div_floor, e_quotient, inverse_quotient, modulo, BetaSet, Partition,
};
use crate::error::{Error, Result};
use crate::multipartition::ChargedMultipartition;

/// `x^σ = (x_{σ(1)}, …, x_{σ(m)})` for a 1-based permutation `σ`.
pub fn permute_tuple<T: Clone>(x: &[T], perm: &[usize]) -> Vec<T> {
    perm.iter().map(|&p| x[p - 1].clone()).collect()
}

/// Inverse of a 1-based permutation.
pub fn perm_inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p - 1] = i + 1;
    }
    inv
}

/// Composition `(στ)(x) = σ(τ(x))`.
pub fn perm_compose(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&x| sigma[x - 1]).collect()
}

/// The identity permutation of `[1, m]`.
pub fn perm_identity(m: usize) -> Vec<usize> {
    (1..=m).collect()
}

/// The permutation `s_{i_1} s_{i_2} ⋯` of `[1, m]` for Coxeter generators
/// `s_i = (i, i+1)`, composed right to left.
pub fn perm_from_word(m: usize, word: &[usize]) -> Vec<usize> {
    let mut out = perm_identity(m);
    for &i in word {
        let mut s = perm_identity(m);
        s.swap(i - 1, i);
        out = perm_compose(&out, &s);
    }
    out
}

/// `v_m(x) = (a, …, a, a+1, …, a+1)` with `x = am + b` and `b` trailing
/// entries equal to `a + 1`.
pub fn v_vector(m: usize, x: i64) -> Vec<i64> {
    let a = div_floor(x, m as i64);
    let b = modulo(x, m as i64) as usize;
    (0..m).map(|k| if k >= m - b { a + 1 } else { a }).collect()
}

/// An element `σt` of the extended affine Weyl group of rank `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    perm: Vec<usize>,
    trans: Vec<i64>,
}

impl WeylElement {
    /// The identity of rank `m`.
    pub fn identity(m: usize) -> Self {
        WeylElement {
            perm: perm_identity(m),
            trans: vec![0; m],
        }
    }

    /// Builds `σt` from a 1-based permutation and a translation.
    pub fn new(perm: Vec<usize>, trans: Vec<i64>) -> Result<Self> {
        let m = perm.len();
        if trans.len() != m {
            return Err(Error::RankMismatch {
                expected: m,
                found: trans.len(),
            });
        }
        let mut seen = vec![false; m];
        for &p in &perm {
            if p == 0 || p > m || seen[p - 1] {
                return Err(Error::InvalidParameter(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen[p - 1] = true;
        }
        Ok(WeylElement { perm, trans })
    }

    /// A pure permutation.
    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let m = perm.len();
        Self::new(perm, vec![0; m])
    }

    /// A pure translation.
    pub fn translation(trans: Vec<i64>) -> Self {
        WeylElement {
            perm: perm_identity(trans.len()),
            trans,
        }
    }

    /// The unit translation `e_j` (1-based).
    pub fn unit(m: usize, j: usize) -> Self {
        let mut t = vec![0; m];
        t[j - 1] = 1;
        Self::translation(t)
    }

    /// The generator `s_i`, `i ∈ [0, m−1]`; `s_0 = (1, m)` composed with the
    /// translation `−e_1 + e_m`.
    pub fn s(m: usize, i: usize) -> Result<Self> {
        if m < 2 || i >= m {
            return Err(Error::InvalidParameter(format!(
                "s_{i} is not a generator of rank {m}"
            )));
        }
        let mut perm = perm_identity(m);
        let mut trans = vec![0; m];
        if i == 0 {
            perm.swap(0, m - 1);
            trans[0] = -1;
            trans[m - 1] = 1;
        } else {
            perm.swap(i - 1, i);
        }
        Ok(WeylElement { perm, trans })
    }

    /// `ρ = (1 2 ⋯ m)`, sending `i ↦ i + 1`.
    pub fn rho(m: usize) -> Self {
        let perm = (1..=m).map(|i| i % m + 1).collect();
        WeylElement {
            perm,
            trans: vec![0; m],
        }
    }

    /// `ρ e_m`.
    pub fn rho_e(m: usize) -> Self {
        Self::rho(m).mul(&Self::unit(m, m)).expect("equal ranks")
    }

    /// Product of generators `s_{i_1} s_{i_2} ⋯`.
    pub fn from_word(m: usize, word: &[usize]) -> Result<Self> {
        word.iter()
            .try_fold(Self::identity(m), |acc, &i| acc.mul(&Self::s(m, i)?))
    }

    /// Rank `m`.
    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    /// The permutation `σ = bar(w)`, as the list `(σ(1), …, σ(m))`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// The translation part `t`.
    pub fn trans(&self) -> &[i64] {
        &self.trans
    }

    /// True if the permutation part is the identity.
    pub fn is_translation(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p == i + 1)
    }

    /// True if `w ∈ W_m`, i.e. the translation sums to zero.
    pub fn in_affine_weyl_group(&self) -> bool {
        self.trans.iter().sum::<i64>() == 0
    }

    /// `(σt)(τu) = (στ)(t^τ + u)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        let perm = perm_compose(&self.perm, &other.perm);
        let trans = permute_tuple(&self.trans, &other.perm)
            .into_iter()
            .zip(&other.trans)
            .map(|(a, b)| a + b)
            .collect();
        Ok(WeylElement { perm, trans })
    }

    /// `(σt)^{-1} = σ^{-1}(−t^{σ^{-1}})`.
    pub fn inv(&self) -> Self {
        let pinv = perm_inverse(&self.perm);
        let trans = permute_tuple(&self.trans, &pinv)
            .into_iter()
            .map(|x| -x)
            .collect();
        WeylElement { perm: pinv, trans }
    }

    /// `w^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::identity(self.rank()), |acc, _| {
            acc.mul(&base).expect("equal ranks")
        })
    }

    /// Left action `∙_k` on an integer, with `m = e` runners.
    pub fn dot_int(&self, k: i64, x: i64) -> i64 {
        let e = self.rank() as i64;
        let a = div_floor(x, e);
        let p = modulo(x, e) as usize;
        (a + k * self.trans[p]) * e + self.perm[p] as i64 - 1
    }

    /// Left action `⋄_k` on an e-tuple of integers.
    pub fn diamond_ints(&self, k: i64, a: &[i64]) -> Result<Vec<i64>> {
        self.check_rank(a.len())?;
        let shifted: Vec<i64> = a.iter().zip(&self.trans).map(|(x, t)| x + k * t).collect();
        Ok(permute_tuple(&shifted, &perm_inverse(&self.perm)))
    }

    /// Left action `⋄_k` on an e-tuple of β-sets.
    pub fn diamond_betasets(&self, k: i64, bs: &[BetaSet]) -> Result<Vec<BetaSet>> {
        self.check_rank(bs.len())?;
        let shifted: Vec<BetaSet> = bs
            .iter()
            .zip(&self.trans)
            .map(|(b, t)| b.shift(k * t))
            .collect();
        Ok(permute_tuple(&shifted, &perm_inverse(&self.perm)))
    }

    /// Left action `∙_k` on a β-set, computed through its quotient.
    pub fn dot_betaset(&self, k: i64, b: &BetaSet) -> Result<BetaSet> {
        let q = e_quotient(b, self.rank())?;
        inverse_quotient(&self.diamond_betasets(k, &q.components)?)
    }

    fn check_rank(&self, m: usize) -> Result<()> {
        if m != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: m,
            });
        }
        Ok(())
    }
}

/// Right action on charges: `t^{σu} = t^σ + e·u`.
pub fn right_action_charge(t: &[i64], w: &WeylElement, e: usize) -> Result<Vec<i64>> {
    w.check_rank(t.len())?;
    Ok(permute_tuple(t, w.perm())
        .into_iter()
        .zip(w.trans())
        .map(|(a, u)| a + e as i64 * u)
        .collect())
}

/// Right action on charged multipartitions: `(λ; t)^{σu} = (λ^σ; t^{σu})`.
pub fn right_action(lm: &ChargedMultipartition, w: &WeylElement) -> Result<ChargedMultipartition> {
    let charge = right_action_charge(lm.charge(), w, lm.e())?;
    ChargedMultipartition::new(lm.permute_components(w.perm()), charge, lm.e())
}

/// `s_j ∙_t λ`: removes every removable and adds every addable node of
/// residue `j`.
pub fn s_dot_multipartition(j: usize, lm: &ChargedMultipartition) -> Result<ChargedMultipartition> {
    let s = WeylElement::s(lm.e(), j)?;
    let comps = lm
        .beta_tuple()
        .iter()
        .map(|b| Ok(beta_inverse(&s.dot_betaset(1, b)?).0))
        .collect::<Result<Vec<Partition>>>()?;
    lm.with_components(comps)
}

/// True if `0 ≤ a_1 ≤ ⋯ ≤ a_ℓ < e`.
pub fn in_fundamental_domain(t: &[i64], e: usize) -> bool {
    t.windows(2).all(|w| w[0] <= w[1])
        && t.first().is_none_or(|&a| a >= 0)
        && t.last().is_none_or(|&a| a < e as i64)
}

/// True if `a_1 ≤ ⋯ ≤ a_ℓ ≤ a_1 + e`.
pub fn in_abar(t: &[i64], e: usize) -> bool {
    t.windows(2).all(|w| w[0] <= w[1])
        && match (t.first(), t.last()) {
            (Some(&a), Some(&b)) => b <= a + e as i64,
            _ => true,
        }
}

/// A `w` with `t^w` in the fundamental domain, ties broken by a stable sort.
pub fn reduce_to_domain(t: &[i64], e: usize) -> (WeylElement, Vec<i64>) {
    let ei = e as i64;
    let mut order: Vec<usize> = (1..=t.len()).collect();
    order.sort_by_key(|&i| modulo(t[i - 1], ei));
    let trans = order.iter().map(|&i| -div_floor(t[i - 1], ei)).collect();
    let w = WeylElement { perm: order, trans };
    let tw = right_action_charge(t, &w, e).expect("ranks agree");
    (w, tw)
}

/// A `w` with `t^w ∈ Ā`: the identity when `t` already lies in `Ā`,
/// otherwise the fundamental-domain reduction.
pub fn reduce_to_abar(t: &[i64], e: usize) -> (WeylElement, Vec<i64>) {
    if in_abar(t, e) {
        (WeylElement::identity(t.len()), t.to_vec())
    } else {
        reduce_to_domain(t, e)
    }
}

/// Convenience: `β_t(λ)` followed by `s_j ∙_1`, returning the new partition.
pub fn s_dot_partition(j: usize, lambda: &Partition, t: i64, e: usize) -> Result<Partition> {
    let s = WeylElement::s(e, j)?;
    Ok(beta_inverse(&s.dot_betaset(1, &beta_set(lambda, t))?).0)
}
