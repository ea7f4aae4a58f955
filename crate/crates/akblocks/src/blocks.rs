//! Blocks: core and weight of a charged multipartition, moving vectors,
//! `r*`, the classification of core blocks, weight graphs, and enumeration of
//! the multipartitions lying in a block.

use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::betaset::{
    beta_inverse, beta_set, e_core_and_weight, e_quotient, hub_from_runner_charges,
    inverse_quotient, BetaSet, Partition,
};
use crate::error::{Error, Result};
use crate::multipartition::ChargedMultipartition;
use crate::uglov::{core_wt_of_pair, duality, uglov_inverse, uglov_map};
use crate::weyl::{
    in_abar, perm_inverse, permute_tuple, reduce_to_abar, reduce_to_domain, right_action,
    right_action_charge, s_dot_multipartition, WeylElement,
};

/// Default cap on the number of candidates examined by block enumeration.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 10_000_000;

/// The moving vector of `(λ; r)^w`; requires `r^w ∈ Ā`.
pub fn moving_vector(lm: &ChargedMultipartition, w: &WeylElement) -> Result<Vec<usize>> {
    let shifted = right_action(lm, w)?;
    if !in_abar(shifted.charge(), lm.e()) {
        return Err(Error::ChargeOutsideDomain(shifted.charge().to_vec()));
    }
    Ok(duality(&shifted)?.moving_vector())
}

/// True if every component is an e-core.
pub fn is_multicore(lm: &ChargedMultipartition) -> bool {
    lm.beta_tuple().iter().all(|b| {
        e_core_and_weight(b, lm.e())
            .map(|(_, w)| w == 0)
            .unwrap_or(false)
    })
}

/// The hub of a block read off `r*`: `x_{j+1} − x_j` for residue `j ≠ 0`
/// and `x_1 − x_e − ℓ` for residue 0.
pub fn hub_from_rstar(r_star: &[i64], l: usize) -> Vec<i64> {
    let mut h = hub_from_runner_charges(r_star);
    h[0] += 1 - l as i64;
    h
}

/// A block of an Ariki-Koike algebra together with its cached invariants.
///
/// `w0` is the Weyl element used to read off `r*`, the moving vector and the
/// Scopes data: the identity when the base charge already lies in `Ā`, the
/// fundamental-domain reduction otherwise, followed for core blocks by the
/// least power of `ρ_ℓ e_ℓ` making the last moving-vector entry zero.
#[derive(Debug, Clone)]
pub struct BlockDescriptor {
    e: usize,
    l: usize,
    base_charge: Vec<i64>,
    w0: WeylElement,
    reduced_charge: Vec<i64>,
    core: BetaSet,
    weight: usize,
    size: usize,
    hub: Vec<i64>,
    mv: Vec<usize>,
    r_star: Vec<i64>,
    key_charge: Vec<i64>,
    key_core: BetaSet,
    representative: ChargedMultipartition,
}

impl PartialEq for BlockDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for BlockDescriptor {}

impl Hash for BlockDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

/// The canonical identity of a block: `(e, ℓ, fundamental-domain charge,
/// core at that charge, weight)`.
pub type BlockKey = (usize, usize, Vec<i64>, BetaSet, usize);

/// Serializable summary of a block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub e: usize,
    pub l: usize,
    pub charge: Vec<i64>,
    pub core_threshold: i64,
    pub core_excess: Vec<i64>,
    pub weight: usize,
    pub hub: Vec<i64>,
    pub mv: Vec<usize>,
    pub r_star: Vec<i64>,
    pub reduced_charge: Vec<i64>,
    pub w0_perm: Vec<usize>,
    pub w0_trans: Vec<i64>,
    pub size: usize,
    pub core_block: bool,
}

impl BlockDescriptor {
    /// The block containing `(λ; r)` with the canonical `w0`.
    pub fn of(lm: &ChargedMultipartition) -> Result<Self> {
        let (w1, _) = reduce_to_abar(lm.charge(), lm.e());
        let mv1 = moving_vector(lm, &w1)?;
        let l = lm.level();
        let mut w = w1;
        if mv1.contains(&0) {
            let step = WeylElement::rho_e(l);
            let mut mv = mv1;
            while mv[l - 1] != 0 {
                w = w.mul(&step)?;
                mv = permute_tuple(&mv, WeylElement::rho(l).perm());
            }
        }
        Self::with_w0(lm, &w)
    }

    /// The block containing `(λ; r)`, read at a caller-chosen `w` with
    /// `r^w ∈ Ā`.
    pub fn with_w0(lm: &ChargedMultipartition, w: &WeylElement) -> Result<Self> {
        let e = lm.e();
        let shifted = right_action(lm, w)?;
        if !in_abar(shifted.charge(), e) {
            return Err(Error::ChargeOutsideDomain(shifted.charge().to_vec()));
        }
        let (core, weight) = core_wt_of_pair(&shifted)?;
        let r_star = e_quotient(&core, e)?.charges();
        let mv = duality(&shifted)?.moving_vector();
        let (waf, key_charge) = reduce_to_domain(lm.charge(), e);
        let (key_core, _) = core_wt_of_pair(&right_action(lm, &waf)?)?;
        Ok(BlockDescriptor {
            e,
            l: lm.level(),
            base_charge: lm.charge().to_vec(),
            w0: w.clone(),
            reduced_charge: shifted.charge().to_vec(),
            core,
            weight,
            size: lm.size(),
            hub: lm.hub_of(),
            mv,
            r_star,
            key_charge,
            key_core,
            representative: lm.clone(),
        })
    }

    /// The canonical identity of the block.
    pub fn key(&self) -> BlockKey {
        (
            self.e,
            self.l,
            self.key_charge.clone(),
            self.key_core.clone(),
            self.weight,
        )
    }

    /// The parameter `e`.
    pub fn e(&self) -> usize {
        self.e
    }

    /// The level `ℓ`.
    pub fn l(&self) -> usize {
        self.l
    }

    /// The base charge `r`.
    pub fn base_charge(&self) -> &[i64] {
        &self.base_charge
    }

    /// The Weyl element `w0`.
    pub fn w0(&self) -> &WeylElement {
        &self.w0
    }

    /// `r^{w0}`.
    pub fn reduced_charge(&self) -> &[i64] {
        &self.reduced_charge
    }

    /// The e-core β-set at charge `|r^{w0}|`.
    pub fn core(&self) -> &BetaSet {
        &self.core
    }

    /// The weight.
    pub fn weight(&self) -> usize {
        self.weight
    }

    /// The common size `n` of the multipartitions in the block.
    pub fn size(&self) -> usize {
        self.size
    }

    /// The hub.
    pub fn hub(&self) -> &[i64] {
        &self.hub
    }

    /// The moving vector at `r^{w0}`.
    pub fn mv(&self) -> &[usize] {
        &self.mv
    }

    /// `r*_B = 𝒮(quot_e(β_{|r^{w0}|}(core)))`.
    pub fn r_star(&self) -> &[i64] {
        &self.r_star
    }

    /// A multipartition (at the base charge) lying in the block.
    pub fn representative(&self) -> &ChargedMultipartition {
        &self.representative
    }

    /// Core blocks are exactly those with a zero moving-vector entry.
    pub fn is_core_block(&self) -> bool {
        self.mv.contains(&0)
    }

    /// Decomposable core blocks have at least two zero moving-vector entries.
    pub fn is_decomposable(&self) -> Result<bool> {
        self.require_core()?;
        Ok(self.mv.iter().filter(|&&m| m == 0).count() >= 2)
    }

    /// Errors unless the block is a core block.
    pub fn require_core(&self) -> Result<()> {
        if self.is_core_block() {
            Ok(())
        } else {
            Err(Error::NotCoreBlock(self.mv.clone()))
        }
    }

    /// The same block read at another `w` with `r^w ∈ Ā`.
    pub fn rebase(&self, w: &WeylElement) -> Result<Self> {
        Self::with_w0(&self.representative, w)
    }

    /// `s_j ∙ B`, keeping the same `w0`.
    pub fn s_action(&self, j: usize) -> Result<Self> {
        let rep = s_dot_multipartition(j % self.e, &self.representative)?;
        Self::with_w0(&rep, &self.w0)
    }

    /// Applies `s_{j_1}`, then `s_{j_2}`, and so on.
    pub fn s_action_word(&self, word: &[usize]) -> Result<Self> {
        word.iter().try_fold(self.clone(), |b, &j| b.s_action(j))
    }

    /// The moving vector at the fundamental-domain charge.
    pub fn mv_at_fundamental_domain(&self) -> Result<Vec<usize>> {
        let (w, _) = reduce_to_domain(&self.base_charge, self.e);
        moving_vector(&self.representative, &w)
    }

    /// Undirected edges `{i, i+1 mod ℓ}` (1-based, at `r^{w0}`) with
    /// `mv_i ≠ 0`.
    pub fn gamma_graph(&self) -> Result<Vec<(usize, usize)>> {
        self.require_core()?;
        Ok(gamma_edges(&self.mv))
    }

    /// Serializable summary.
    pub fn to_json(&self) -> BlockJson {
        BlockJson {
            e: self.e,
            l: self.l,
            charge: self.base_charge.clone(),
            core_threshold: self.core.threshold(),
            core_excess: self.core.excess().to_vec(),
            weight: self.weight,
            hub: self.hub.clone(),
            mv: self.mv.clone(),
            r_star: self.r_star.clone(),
            reduced_charge: self.reduced_charge.clone(),
            w0_perm: self.w0.perm().to_vec(),
            w0_trans: self.w0.trans().to_vec(),
            size: self.size,
            core_block: self.is_core_block(),
        }
    }
}

/// The block of `(λ; r)`.
pub fn block_of(lm: &ChargedMultipartition) -> Result<BlockDescriptor> {
    BlockDescriptor::of(lm)
}

/// Edges of the graph on `[1, ℓ]` with `i -- i+1 (mod ℓ)` whenever `mv_i ≠ 0`.
pub fn gamma_edges(mv: &[usize]) -> Vec<(usize, usize)> {
    let l = mv.len();
    (1..=l)
        .filter(|&i| mv[i - 1] != 0 && l > 1)
        .map(|i| {
            let j = i % l + 1;
            (i.min(j), i.max(j))
        })
        .collect()
}

/// Connected components of an undirected graph on `[1, n]`, each sorted,
/// ordered by their least element.
pub fn components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 1..=n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

/// The weight graph of `λ`: an edge `i -- j` of multiplicity equal to the
/// weight of the bipartition `(λ^{(i)}, λ^{(j)})` at charge `(r_i, r_j)`,
/// listed when positive.
pub fn weight_graph(lm: &ChargedMultipartition) -> Result<Vec<(usize, usize, usize)>> {
    let l = lm.level();
    let mut out = Vec::new();
    for i in 1..=l {
        for j in i + 1..=l {
            let pair = ChargedMultipartition::new(
                vec![lm.component(i).clone(), lm.component(j).clone()],
                vec![lm.charge()[i - 1], lm.charge()[j - 1]],
                lm.e(),
            )?;
            let (w, _) = reduce_to_abar(pair.charge(), lm.e());
            let (_, wt) = core_wt_of_pair(&right_action(&pair, &w)?)?;
            if wt > 0 {
                out.push((i, j, wt));
            }
        }
    }
    Ok(out)
}

/// Same Weyl orbit: equal levels, equal fundamental-domain charges and equal
/// moving vectors there.
pub fn same_weyl_orbit(b: &BlockDescriptor, c: &BlockDescriptor) -> Result<bool> {
    if b.e != c.e || b.l != c.l {
        return Err(Error::InvalidParameter(
            "blocks have different e or ℓ".into(),
        ));
    }
    if b.key_charge != c.key_charge {
        return Err(Error::InvalidParameter(
            "blocks lie over different charge orbits".into(),
        ));
    }
    Ok(b.mv_at_fundamental_domain()? == c.mv_at_fundamental_domain()?)
}

/// All e-multipartitions of `w`, in a fixed order.
pub fn e_multipartitions(e: usize, w: usize) -> Vec<Vec<Partition>> {
    crate::multipartition::all_multipartitions(e, w)
}

/// Number of ℓ-partitions of `n`.
pub fn count_multipartitions(l: usize, n: usize) -> u128 {
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            p[m] += p[m - k];
        }
    }
    let mut acc = vec![0u128; n + 1];
    acc[0] = 1;
    for _ in 0..l {
        let mut next = vec![0u128; n + 1];
        for a in 0..=n {
            for b in 0..=n - a {
                next[a + b] += acc[a] * p[b];
            }
        }
        acc = next;
    }
    acc[n]
}

/// All multipartitions in the block, at the base charge, sorted.
///
/// The block is walked through its e-quotient: every e-multipartition `κ`
/// of the weight gives the β-set `quot^{-1}(β_{r*}(κ))`, whose preimage
/// under Uglov's map is kept when its charges equal `r^{w0}`.
pub fn enumerate_in_block(
    b: &BlockDescriptor,
    budget: usize,
) -> Result<Vec<ChargedMultipartition>> {
    let candidates = count_multipartitions(b.e, b.weight);
    if candidates > budget as u128 {
        return Err(Error::BudgetExceeded {
            budget,
            context: format!("enumerating {candidates} quotients of weight {}", b.weight),
        });
    }
    let pinv = perm_inverse(b.w0.perm());
    let mut out = BTreeSet::new();
    for kappa in e_multipartitions(b.e, b.weight) {
        let runners: Vec<BetaSet> = kappa
            .iter()
            .zip(&b.r_star)
            .map(|(p, &c)| beta_set(p, c))
            .collect();
        let x = inverse_quotient(&runners)?;
        let bs = uglov_inverse(&x, b.e, b.l)?;
        let (parts, charges): (Vec<Partition>, Vec<i64>) = bs.iter().map(beta_inverse).unzip();
        if charges != b.reduced_charge {
            continue;
        }
        let comps = permute_tuple(&parts, &pinv);
        out.insert(ChargedMultipartition::new(
            comps,
            b.base_charge.clone(),
            b.e,
        )?);
    }
    Ok(out.into_iter().collect())
}

/// Brute-force enumeration: every ℓ-partition of `n` whose block equals `b`.
pub fn enumerate_in_block_exhaustive(
    b: &BlockDescriptor,
    budget: usize,
) -> Result<Vec<ChargedMultipartition>> {
    let candidates = count_multipartitions(b.l, b.size);
    if candidates > budget as u128 {
        return Err(Error::BudgetExceeded {
            budget,
            context: format!("scanning {candidates} multipartitions of {}", b.size),
        });
    }
    let mut out = Vec::new();
    for comps in crate::multipartition::all_multipartitions(b.l, b.size) {
        let lm = ChargedMultipartition::new(comps, b.base_charge.clone(), b.e)?;
        let (w, _) = reduce_to_domain(lm.charge(), b.e);
        let (core, wt) = core_wt_of_pair(&right_action(&lm, &w)?)?;
        if wt == b.weight && core == b.key_core {
            out.push(lm);
        }
    }
    out.sort();
    Ok(out)
}

/// Builds `λ` with `core_e(λ; t) = U(β_{t*}(λ*))` and `mv_e(λ; t) = m`,
/// where `t_i = t*_i + m_i − m_{i−1}` (with `m_0 = m_ℓ`) and `t` ascending.
pub fn construct_with_mv(
    core_pair: &ChargedMultipartition,
    m: &[usize],
    t: &[i64],
) -> Result<ChargedMultipartition> {
    let e = core_pair.e();
    let l = core_pair.level();
    let tstar = core_pair.charge();
    if m.len() != l || t.len() != l {
        return Err(Error::RankMismatch {
            expected: l,
            found: m.len().min(t.len()),
        });
    }
    let (_, wt) = core_wt_of_pair(core_pair)?;
    if wt != 0 {
        return Err(Error::InvalidParameter(
            "U(β_{t*}(λ*)) is not an e-core".into(),
        ));
    }
    for i in 0..l {
        let prev = m[(i + l - 1) % l] as i64;
        if t[i] != tstar[i] + m[i] as i64 - prev {
            return Err(Error::InvalidParameter(format!(
                "charge {t:?} does not match t* = {tstar:?} and m = {m:?}"
            )));
        }
    }
    if t.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter(format!(
            "charge {t:?} is not ascending"
        )));
    }
    let min = *m.iter().min().expect("ℓ ≥ 1");
    let rot = if m[l - 1] == min {
        0
    } else {
        m.iter().position(|&x| x == min).expect("minimum exists") + 1
    };
    let w = WeylElement::rho_e(l).pow(rot as i64);
    let rho = WeylElement::rho(l).pow(rot as i64);
    let u = right_action_charge(t, &w, e)?;
    let start = right_action(core_pair, &w)?;
    let mprime = permute_tuple(m, rho.perm());
    let base = mprime[l - 1];
    let mut k: Vec<i64> = mprime.iter().map(|&x| (x - base) as i64).collect();
    let mut bs = start.beta_tuple();
    let mut v = start.charge().to_vec();
    while let Some(big_m) = (0..l - 1).rev().find(|&i| k[i] > 0) {
        let small_m = (0..l)
            .rev()
            .find(|&j| u[j] > v[j])
            .ok_or_else(|| Error::Inconsistent("no index with u_j > v_j".into()))?;
        let a = (0..l)
            .rev()
            .find(|&i| v[i] == v[small_m])
            .expect("index exists");
        let b = (0..l)
            .find(|&i| v[i] == v[big_m + 1])
            .expect("index exists");
        let x = (bs[a].threshold().min(bs[b].threshold())..=bs[b].max_element())
            .rev()
            .find(|&x| bs[b].contains(x) && !bs[a].contains(x))
            .ok_or_else(|| Error::Inconsistent("no bead to move".into()))?;
        bs[a] = bs[a].insert(x);
        bs[b] = bs[b].remove(x);
        v[a] += 1;
        v[b] -= 1;
        for ki in k.iter_mut().take(b).skip(a) {
            *ki -= 1;
        }
    }
    let mut parts: Vec<Partition> = bs.iter().map(|b| beta_inverse(b).0).collect();
    if base > 0 {
        let mut last = parts[l - 1].parts().to_vec();
        if last.is_empty() {
            last.push(0);
        }
        last[0] += base * e;
        parts[l - 1] = Partition::new(last)?;
    }
    let comps = permute_tuple(&parts, rho.inv().perm());
    ChargedMultipartition::new(comps, t.to_vec(), e)
}

/// Convenience: `U(β_t(λ))` equals a given β-set.
pub fn uglov_core_matches(lm: &ChargedMultipartition, core: &BetaSet) -> Result<bool> {
    Ok(&uglov_map(&lm.beta_tuple(), lm.e())? == core)
}
