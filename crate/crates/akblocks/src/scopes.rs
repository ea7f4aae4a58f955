//! Scopes equivalence between core blocks: the `y/z` split of `r*`, the
//! permutations `σ_B` and `τ_B`, the Scopes vector, initial blocks, chains of
//! Scopes moves, the equivalence test, class counting, Rouquier reduction and
//! the induced correspondence of Specht modules.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::betaset::{div_floor, e_core_and_weight, e_quotient, modulo, Partition};
use crate::blocks::{enumerate_in_block, BlockDescriptor};
use crate::error::{Error, Result};
use crate::multipartition::ChargedMultipartition;
use crate::uglov::{duality, duality_inverse, DualityImage};
use crate::weyl::{
    perm_compose, perm_identity, perm_inverse, permute_tuple, right_action, WeylElement,
};

/// Default cap on the number of `y`-vectors visited by Rouquier reduction.
pub const DEFAULT_REDUCTION_BUDGET: usize = 1_000_000;

/// The Scopes data of a core block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScopesData {
    pub y: Vec<i64>,
    pub z: Vec<i64>,
    pub frak_y: i64,
    pub j_b: usize,
    pub i_set: Vec<i64>,
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
    pub scopes_vector: Vec<i64>,
}

impl ScopesData {
    /// `σ_B τ_B`.
    pub fn sigma_tau(&self) -> Vec<usize> {
        perm_compose(&self.sigma, &self.tau)
    }

    /// Condition (I): `y_{σ(e)} ≤ y_{σ(1)} + [σ(e) < σ(1)]`.
    pub fn condition_one(&self) -> bool {
        let e = self.y.len();
        let (first, last) = (self.sigma[0], self.sigma[e - 1]);
        self.y[last - 1] <= self.y[first - 1] + i64::from(last < first)
    }

    /// Condition (II): `τ_B` is the identity.
    pub fn condition_two(&self) -> bool {
        self.tau == perm_identity(self.tau.len())
    }

    /// Initial blocks satisfy both conditions.
    pub fn is_initial(&self) -> bool {
        self.condition_one() && self.condition_two()
    }

    /// `ht_{I_B}(b)`.
    pub fn ht(&self, b: i64) -> i64 {
        ht(&self.i_set, b).expect("I_B contains 0")
    }
}

/// `ht_I(b) = max{i ∈ I : b ≥ i}`.
pub fn ht(i_set: &[i64], b: i64) -> Result<i64> {
    if !i_set.contains(&0) {
        return Err(Error::InvalidParameter("I must contain 0".into()));
    }
    Ok(i_set.iter().copied().filter(|&i| b >= i).max().unwrap_or(0))
}

/// The shortest permutation `σ` with `y^σ` weakly increasing.
pub fn sigma_of(y: &[i64]) -> Vec<usize> {
    let mut order: Vec<usize> = (1..=y.len()).collect();
    order.sort_by_key(|&k| y[k - 1]);
    order
}

/// `τ^I_z`: arranges `z` by descending `ht_I`, and within a level lists the
/// entries above the level before those equal to it, each in index order.
pub fn tau_of(z: &[i64], i_set: &[i64]) -> Result<Vec<usize>> {
    let keys = z
        .iter()
        .map(|&b| {
            let h = ht(i_set, b)?;
            Ok((-h, b == h))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (1..=z.len()).collect();
    order.sort_by_key(|&k| keys[k - 1]);
    Ok(order)
}

/// True if `τ` satisfies the defining conditions of `τ^I_z`.
pub fn is_valid_tau(z: &[i64], i_set: &[i64], tau: &[usize]) -> Result<bool> {
    for w in tau.windows(2) {
        let (a, b) = (z[w[0] - 1], z[w[1] - 1]);
        let (ha, hb) = (ht(i_set, a)?, ht(i_set, b)?);
        if ha < hb {
            return Ok(false);
        }
        if ha == hb {
            let first = a > b && b == hb;
            let second = w[0] < w[1] && (a == b || (a > hb && b > hb));
            if !(first || second) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The `y/z` split and derived permutations of a core block.
pub fn yz_split(b: &BlockDescriptor) -> Result<ScopesData> {
    b.require_core()?;
    let (e, l) = (b.e(), b.l() as i64);
    let y: Vec<i64> = b.r_star().iter().map(|&x| div_floor(x, l)).collect();
    let z: Vec<i64> = b.r_star().iter().map(|&x| modulo(x, l)).collect();
    let total: i64 = y.iter().sum();
    let frak_y = div_floor(total, e as i64);
    let j_b = modulo(total, e as i64) as usize;
    let mut i_set: Vec<i64> = b
        .mv()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m == 0)
        .map(|(i, _)| l - (i as i64 + 1))
        .collect();
    i_set.sort_unstable();
    if i_set.first() != Some(&0) {
        return Err(Error::InvalidParameter(format!(
            "w0 must make the last moving-vector entry zero, got {:?}",
            b.mv()
        )));
    }
    let sigma = sigma_of(&y);
    let tau = tau_of(&permute_tuple(&z, &sigma), &i_set)?;
    let scopes_vector = permute_tuple(&z, &perm_compose(&sigma, &tau));
    Ok(ScopesData {
        y,
        z,
        frak_y,
        j_b,
        i_set,
        sigma,
        tau,
        scopes_vector,
    })
}

/// `Sc(B)`.
pub fn scopes_vector(b: &BlockDescriptor) -> Result<Vec<i64>> {
    Ok(yz_split(b)?.scopes_vector)
}

/// True if `B` is an initial core block.
pub fn is_initial(b: &BlockDescriptor) -> Result<bool> {
    Ok(yz_split(b)?.is_initial())
}

/// The kind of Scopes move certified for a residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveKind {
    /// `y_{j+1} > y_j + δ_{je}`: `σ` changes, `τ` does not.
    Sigma,
    /// `y_{j+1} = y_j + δ_{je}`, `z_{j+1} > z_j`, `ht(z_{j+1}) ≥ z_j`.
    Tau,
}

/// The certified move at residue `j ∈ [1, e]` (`e` standing for 0), if any.
pub fn scopes_move(d: &ScopesData, j: usize) -> Option<MoveKind> {
    let e = d.y.len();
    let next = j % e;
    let cur = j - 1;
    let delta = i64::from(j == e);
    if d.y[next] > d.y[cur] + delta {
        Some(MoveKind::Sigma)
    } else if d.y[next] == d.y[cur] + delta && d.z[next] > d.z[cur] && d.ht(d.z[next]) >= d.z[cur] {
        Some(MoveKind::Tau)
    } else {
        None
    }
}

/// One step of a Scopes chain.
#[derive(Debug, Clone)]
pub struct ChainStep {
    /// Residue of the move, in `[0, e−1]`.
    pub residue: usize,
    pub kind: MoveKind,
    pub block: BlockDescriptor,
}

/// A chain of Scopes moves from `B` to an initial block, always taking the
/// least certified residue in `[1, e]`.
pub fn scopes_chain(b: &BlockDescriptor) -> Result<Vec<ChainStep>> {
    let mut out = Vec::new();
    let mut cur = b.clone();
    loop {
        let d = yz_split(&cur)?;
        if d.is_initial() {
            return Ok(out);
        }
        let (j, kind) = (1..=cur.e())
            .find_map(|j| scopes_move(&d, j).map(|k| (j, k)))
            .ok_or_else(|| {
                Error::Inconsistent("non-initial core block without a Scopes move".into())
            })?;
        let residue = j % cur.e();
        let next = cur.s_action(residue)?;
        if next.size() >= cur.size() {
            return Err(Error::Inconsistent(
                "Scopes move did not reduce the size".into(),
            ));
        }
        out.push(ChainStep {
            residue,
            kind,
            block: next.clone(),
        });
        cur = next;
    }
}

/// The initial block reached by the Scopes chain of `B`.
pub fn initial_block(b: &BlockDescriptor) -> Result<BlockDescriptor> {
    Ok(scopes_chain(b)?
        .pop()
        .map_or_else(|| b.clone(), |s| s.block))
}

/// `r*` of the initial block in the class of `B`:
/// `(v_e(|y|)·ℓ + Sc(B))^{ρ_e^{−j_B}}`.
pub fn initial_r_star(b: &BlockDescriptor) -> Result<Vec<i64>> {
    let d = yz_split(b)?;
    let e = b.e();
    let total: i64 = d.y.iter().sum();
    let l = b.l() as i64;
    let v: Vec<i64> = crate::weyl::v_vector(e, total)
        .iter()
        .zip(&d.scopes_vector)
        .map(|(a, s)| a * l + s)
        .collect();
    let rho_inv: Vec<usize> = (1..=e).map(|i| (i + e - 1 - d.j_b % e) % e + 1).collect();
    Ok(permute_tuple(&v, &rho_inv))
}

fn check_compatible(b: &BlockDescriptor, c: &BlockDescriptor) -> Result<()> {
    if b.e() != c.e() || b.l() != c.l() {
        return Err(Error::InvalidParameter(
            "blocks have different e or ℓ".into(),
        ));
    }
    if b.base_charge() != c.base_charge() {
        return Err(Error::InvalidParameter(
            "blocks have different charges".into(),
        ));
    }
    b.require_core()?;
    c.require_core()
}

/// Scopes equivalence: equal moving vectors and equal Scopes vectors.
pub fn scopes_equivalent(b: &BlockDescriptor, c: &BlockDescriptor) -> Result<bool> {
    check_compatible(b, c)?;
    if b.w0() != c.w0() || b.mv() != c.mv() {
        return Ok(false);
    }
    Ok(scopes_vector(b)? == scopes_vector(c)?)
}

/// The duality image `λ*` of `(λ; r)^{w0}`.
pub fn star(b: &BlockDescriptor, lm: &ChargedMultipartition) -> Result<Vec<Partition>> {
    Ok(duality(&right_action(lm, b.w0())?)?.multipartition)
}

/// The inverse of [`star`]: the multipartition of `B` whose image is `mu`.
pub fn from_star(b: &BlockDescriptor, mu: Vec<Partition>) -> Result<ChargedMultipartition> {
    let img = DualityImage {
        multipartition: mu,
        charge: b.r_star().to_vec(),
        e: b.e(),
        l: b.l(),
    };
    let (comps, charge) = duality_inverse(&img)?;
    if charge != b.reduced_charge() {
        return Err(Error::Inconsistent(format!(
            "duality preimage has charge {charge:?}, expected {:?}",
            b.reduced_charge()
        )));
    }
    let shifted = ChargedMultipartition::new(comps, charge, b.e())?;
    right_action(&shifted, &b.w0().inv())
}

/// The correspondence `λ ↦ μ` between Scopes-equivalent core blocks with
/// `(λ*)^{σ_Bτ_B} = (μ*)^{σ_Cτ_C}`.
pub fn specht_correspondence(
    b: &BlockDescriptor,
    c: &BlockDescriptor,
    lm: &ChargedMultipartition,
) -> Result<ChargedMultipartition> {
    if !scopes_equivalent(b, c)? {
        return Err(Error::InvalidParameter(
            "blocks are not Scopes equivalent".into(),
        ));
    }
    let pb = yz_split(b)?.sigma_tau();
    let pc = yz_split(c)?.sigma_tau();
    let target = permute_tuple(&star(b, lm)?, &pb);
    from_star(c, permute_tuple(&target, &perm_inverse(&pc)))
}

/// Orbit class count: `Π_b (Σ k_a)! / Π k_a!` over the strata of `I_B`.
pub fn orbit_class_count(b: &BlockDescriptor) -> Result<u128> {
    let d = yz_split(b)?;
    let l = b.l() as i64;
    let mut bounds = d.i_set.clone();
    bounds.push(l);
    let mut out: u128 = 1;
    for w in bounds.windows(2) {
        let ks: Vec<u128> = (w[0] + 1..w[1])
            .map(|a| d.z.iter().filter(|&&z| z == a).count() as u128)
            .collect();
        out *= multinomial(&ks);
    }
    Ok(out)
}

fn multinomial(ks: &[u128]) -> u128 {
    let mut out = 1u128;
    let mut n = 0u128;
    for &k in ks {
        for i in 1..=k {
            n += 1;
            out = out * n / i;
        }
    }
    out
}

/// Sufficient certificate: `y^B` strictly increasing.
pub fn is_rouquier(b: &BlockDescriptor) -> Result<bool> {
    let d = yz_split(b)?;
    Ok(d.y.windows(2).all(|w| w[0] < w[1]))
}

/// The Rouquier condition checked directly on every multipartition of `B`:
/// `s^{λ,i}_{j+1} ≥ s^{λ,i}_j + wt_e(λ^{(i)}) − 1`.
pub fn is_rouquier_by_definition(b: &BlockDescriptor, budget: usize) -> Result<bool> {
    let e = b.e();
    for lm in enumerate_in_block(b, budget)? {
        for bs in lm.beta_tuple() {
            let (_, wt) = e_core_and_weight(&bs, e)?;
            let s = e_quotient(&bs, e)?.charges();
            if s.windows(2).any(|w| w[1] < w[0] + wt as i64 - 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A shortest word `j_1, …, j_m` (applied in that order) moving `y^B` under
/// `⋄_1` to a strictly increasing vector.
pub fn rouquier_word(y: &[i64], budget: usize) -> Result<Vec<usize>> {
    let e = y.len();
    let gens: Vec<WeylElement> = (0..e)
        .map(|j| WeylElement::s(e, j))
        .collect::<Result<_>>()?;
    let increasing = |v: &[i64]| v.windows(2).all(|w| w[0] < w[1]);
    let mut seen: HashMap<Vec<i64>, (Vec<i64>, usize)> = HashMap::new();
    let mut queue = VecDeque::from([y.to_vec()]);
    seen.insert(y.to_vec(), (Vec::new(), usize::MAX));
    while let Some(v) = queue.pop_front() {
        if increasing(&v) {
            let mut word = Vec::new();
            let mut cur = v;
            while let Some((prev, j)) = seen.get(&cur).cloned().filter(|(_, j)| *j != usize::MAX) {
                word.push(j);
                cur = prev;
            }
            word.reverse();
            return Ok(word);
        }
        for (j, g) in gens.iter().enumerate() {
            let next = g.diamond_ints(1, &v)?;
            if !seen.contains_key(&next) {
                if seen.len() >= budget {
                    return Err(Error::BudgetExceeded {
                        budget,
                        context: "Rouquier reduction search".into(),
                    });
                }
                seen.insert(next.clone(), (v.clone(), j));
                queue.push_back(next);
            }
        }
    }
    Err(Error::Inconsistent(
        "no strictly increasing vector reachable".into(),
    ))
}

/// A Rouquier block Scopes equivalent to `B`, with the residues applied.
pub fn rouquier_reduction(
    b: &BlockDescriptor,
    budget: usize,
) -> Result<(Vec<usize>, BlockDescriptor)> {
    let d = yz_split(b)?;
    let word = rouquier_word(&d.y, budget)?;
    let c = b.s_action_word(&word)?;
    Ok((word, c))
}

/// JSON summary of the Scopes data of a core block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScopesReport {
    pub mv: Vec<usize>,
    pub y: Vec<i64>,
    pub z: Vec<i64>,
    pub frak_y: i64,
    pub j_b: usize,
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
    pub scopes_vector: Vec<i64>,
    pub initial: bool,
    pub rouquier: bool,
    pub class_count: u128,
}

/// Builds the JSON summary.
pub fn scopes_report(b: &BlockDescriptor) -> Result<ScopesReport> {
    let d = yz_split(b)?;
    Ok(ScopesReport {
        mv: b.mv().to_vec(),
        initial: d.is_initial(),
        rouquier: d.y.windows(2).all(|w| w[0] < w[1]),
        class_count: orbit_class_count(b)?,
        y: d.y,
        z: d.z,
        frak_y: d.frak_y,
        j_b: d.j_b,
        sigma: d.sigma,
        tau: d.tau,
        scopes_vector: d.scopes_vector,
    })
}
