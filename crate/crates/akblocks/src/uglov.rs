//! Uglov's map, rank-level duality, and the e-core and e-weight of charged
//! multipartitions.
//!
//! For `x = ae + b` with `b ∈ [0, e−1]`, `υ_i(x) = aeℓ + (ℓ−i)e + b`. Uglov's
//! map sends an ℓ-tuple of β-sets to the union of their `υ`-images, and the
//! rank-level duality reads the e-quotient of that union as an e-multipartition
//! with an e-charge.

use serde::{Deserialize, Serialize};

use crate::betaset::{
    beta_inverse, beta_set, div_floor, e_core_and_weight, e_quotient, inverse_quotient, modulo,
    BetaSet, Partition,
};
use crate::error::{Error, Result};
use crate::multipartition::{content, ChargedMultipartition, Node, Sign};

fn checked(a: Option<i64>) -> Result<i64> {
    a.ok_or(Error::Overflow("upsilon"))
}

/// `υ_i(x) = (x − x̄)ℓ + (ℓ−i)e + x̄` where `x̄ ∈ [0, e−1]` is `x mod e`.
pub fn upsilon(i: usize, x: i64, e: usize, l: usize) -> Result<i64> {
    if i == 0 || i > l {
        return Err(Error::InvalidParameter(format!(
            "component {i} outside [1, {l}]"
        )));
    }
    let (ei, li) = (e as i64, l as i64);
    let b = modulo(x, ei);
    let scaled = checked((x - b).checked_mul(li))?;
    let offset = (li - i as i64) * ei + b;
    checked(scaled.checked_add(offset))
}

/// Inverse of the `υ` maps: the unique `(i, x)` with `υ_i(x) = y`.
pub fn upsilon_inverse(y: i64, e: usize, l: usize) -> (usize, i64) {
    let (ei, li) = (e as i64, l as i64);
    let q = div_floor(y, ei);
    let b = modulo(y, ei);
    let r = modulo(q, li);
    let a = div_floor(q, li);
    ((li - r) as usize, a * ei + b)
}

/// Smallest `x` with `υ_i(x) ≥ m`.
fn first_at_least(i: usize, m: i64, e: usize, l: usize) -> Result<i64> {
    let mut x = div_floor(m, l as i64) - e as i64 - 1;
    while upsilon(i, x, e, l)? < m {
        x += 1;
    }
    Ok(x)
}

/// `U(B^{(1)}, …, B^{(ℓ)}) = ∪_j υ_j(B^{(j)})`.
pub fn uglov_map(bs: &[BetaSet], e: usize) -> Result<BetaSet> {
    let l = bs.len();
    if l == 0 {
        return Err(Error::InvalidParameter("empty tuple of β-sets".into()));
    }
    let mut m0 = i64::MAX;
    for (j, b) in bs.iter().enumerate() {
        m0 = m0.min(upsilon(j + 1, b.threshold(), e, l)?);
    }
    let mut elems = Vec::new();
    for (j, b) in bs.iter().enumerate() {
        let lo = first_at_least(j + 1, m0, e, l)?;
        for x in lo..b.threshold() {
            elems.push(upsilon(j + 1, x, e, l)?);
        }
        for &x in b.excess() {
            elems.push(upsilon(j + 1, x, e, l)?);
        }
    }
    Ok(BetaSet::from_parts(m0, elems))
}

/// The inverse of Uglov's map for level `l`.
pub fn uglov_inverse(x: &BetaSet, e: usize, l: usize) -> Result<Vec<BetaSet>> {
    let mut excess: Vec<Vec<i64>> = vec![Vec::new(); l];
    for &y in x.excess() {
        let (i, v) = upsilon_inverse(y, e, l);
        excess[i - 1].push(v);
    }
    (1..=l)
        .map(|i| {
            let mi = first_at_least(i, x.threshold(), e, l)?;
            Ok(BetaSet::from_parts(mi, excess[i - 1].iter().copied()))
        })
        .collect()
}

/// `U(β_t(λ))` for a charged multipartition.
pub fn uglov_of(lm: &ChargedMultipartition) -> Result<BetaSet> {
    uglov_map(&lm.beta_tuple(), lm.e())
}

/// `Φ_t(λ) = β^{-1}(U(β_t(λ)))` with its charge `|t|`.
pub fn phi(lm: &ChargedMultipartition) -> Result<(Partition, i64)> {
    Ok(beta_inverse(&uglov_of(lm)?))
}

/// The image `(μ; u)` of rank-level duality: an e-multipartition with an
/// e-charge, whose residues are taken modulo ℓ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualityImage {
    pub multipartition: Vec<Partition>,
    pub charge: Vec<i64>,
    pub e: usize,
    pub l: usize,
}

impl DualityImage {
    /// `C_k`: the number of nodes of `μ` with content `b − a + u_j ≡ k (mod ℓ)`.
    pub fn residue_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.l];
        for (j, p) in self.multipartition.iter().enumerate() {
            for (a, &len) in p.parts().iter().enumerate() {
                for b in 1..=len {
                    let n = Node::new(a + 1, b, j + 1);
                    c[modulo(content(&n, &self.charge), self.l as i64) as usize] += 1;
                }
            }
        }
        c
    }

    /// The moving vector `(C_{ℓ−1}, …, C_0)`.
    pub fn moving_vector(&self) -> Vec<usize> {
        let c = self.residue_counts();
        (1..=self.l).map(|i| c[(self.l - i) % self.l]).collect()
    }

    /// Total number of nodes of `μ`.
    pub fn size(&self) -> usize {
        self.multipartition.iter().map(Partition::size).sum()
    }
}

/// `ι_{ℓ,e}(λ; t)`.
pub fn duality(lm: &ChargedMultipartition) -> Result<DualityImage> {
    let q = e_quotient(&uglov_of(lm)?, lm.e())?;
    let (multipartition, charge) = q.components.iter().map(beta_inverse).unzip();
    Ok(DualityImage {
        multipartition,
        charge,
        e: lm.e(),
        l: lm.level(),
    })
}

/// Inverse of rank-level duality: the ℓ-partition and ℓ-charge with the
/// given image.
pub fn duality_inverse(img: &DualityImage) -> Result<(Vec<Partition>, Vec<i64>)> {
    if img.multipartition.len() != img.e || img.charge.len() != img.e {
        return Err(Error::RankMismatch {
            expected: img.e,
            found: img.multipartition.len(),
        });
    }
    let runners: Vec<BetaSet> = img
        .multipartition
        .iter()
        .zip(&img.charge)
        .map(|(p, &u)| beta_set(p, u))
        .collect();
    let x = inverse_quotient(&runners)?;
    let bs = uglov_inverse(&x, img.e, img.l)?;
    Ok(bs.iter().map(beta_inverse).unzip())
}

/// `core_e(λ; t)` and `wt_e(λ; t)`: the e-core and e-weight of `U(β_t(λ))`.
pub fn core_wt_of_pair(lm: &ChargedMultipartition) -> Result<(BetaSet, usize)> {
    e_core_and_weight(&uglov_of(lm)?, lm.e())
}

/// One matched pair of the node correspondence between `AR_j(λ; t)` and
/// `AR_j(Φ_t(λ); |t|)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArPair {
    pub node: Node,
    pub image: Node,
    pub sign: Sign,
}

/// The correspondence `φ` on addable and removable nodes of a nonzero residue
/// `j`, matching `υ_i(cont_t(n)) = cont_{|t|}(φ(n))`.
pub fn ar_correspondence(lm: &ChargedMultipartition, j: usize) -> Result<Vec<ArPair>> {
    if j.is_multiple_of(lm.e()) {
        return Err(Error::InvalidParameter("residue must be nonzero".into()));
    }
    let (p, s) = phi(lm)?;
    let image = ChargedMultipartition::new(vec![p], vec![s], lm.e())?;
    let (ia, ir) = image.addable_removable(j);
    let (a, r) = lm.addable_removable(j);
    let mut out = Vec::new();
    let tagged = a
        .into_iter()
        .map(|n| (n, Sign::Plus))
        .chain(r.into_iter().map(|n| (n, Sign::Minus)));
    for (n, sign) in tagged {
        let c = upsilon(n.comp, content(&n, lm.charge()), lm.e(), lm.level())?;
        let pool = if sign == Sign::Plus { &ia } else { &ir };
        let found = pool
            .iter()
            .find(|m| content(m, &[s]) == c)
            .ok_or_else(|| Error::Inconsistent(format!("no image for node {n}")))?;
        out.push(ArPair {
            node: n,
            image: *found,
            sign,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> ChargedMultipartition {
        ChargedMultipartition::from_parts(
            &[
                vec![3, 2, 1, 1, 1, 1],
                vec![4, 2, 1],
                vec![2, 2, 1],
                vec![1],
            ],
            &[1, 3, 3, 6],
            5,
        )
        .unwrap()
    }

    #[test]
    fn upsilon_examples() {
        assert_eq!(upsilon(4, 0, 5, 4).unwrap(), 0);
        assert_eq!(upsilon(1, 7, 5, 4).unwrap(), 37);
        assert_eq!(
            upsilon(4, 7, 5, 4).unwrap() - 5,
            upsilon(1, 2, 5, 4).unwrap()
        );
        assert!(upsilon(0, 1, 5, 4).is_err());
        assert!(upsilon(1, i64::MAX / 2, 5, 4).is_err());
    }

    #[test]
    fn upsilon_inverse_round_trip() {
        for y in -60..60 {
            let (i, x) = upsilon_inverse(y, 3, 4);
            assert_eq!(upsilon(i, x, 3, 4).unwrap(), y);
        }
    }

    #[test]
    fn uglov_of_lower_closures() {
        let bs = vec![BetaSet::lower(0); 3];
        assert_eq!(uglov_map(&bs, 4).unwrap(), BetaSet::lower(0));
    }

    #[test]
    fn worked_example_duality() {
        let img = duality(&example()).unwrap();
        let one = Partition::from_parts(&[1]);
        let empty = Partition::empty();
        assert_eq!(
            img.multipartition,
            vec![one.clone(), one, empty.clone(), empty.clone(), empty]
        );
        assert_eq!(img.charge, vec![0, 6, 1, 4, 2]);
        assert_eq!(img.moving_vector(), vec![0, 1, 0, 1]);
        let (comps, charge) = duality_inverse(&img).unwrap();
        assert_eq!(comps, example().components());
        assert_eq!(charge, vec![1, 3, 3, 6]);
        assert_eq!(core_wt_of_pair(&example()).unwrap().1, 2);
    }
}
