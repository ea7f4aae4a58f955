//! Simple modules of core blocks: the FLOTW criterion, the tableau attached
//! to a multipartition whose β-sets sit in a window of width `e`, Kostka
//! counting of column-semistandard tableaux, and the number of simple modules
//! in a core block.

use serde::{Deserialize, Serialize};

use crate::betaset::{modulo, Partition};
use crate::blocks::{enumerate_in_block, BlockDescriptor};
use crate::error::{Error, Result};
use crate::multipartition::ChargedMultipartition;
use crate::scopes::{initial_block, yz_split};
use crate::weyl::in_abar;

/// A generalised tableau: a filling of a Young diagram by positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenTableau {
    rows: Vec<Vec<usize>>,
}

impl GenTableau {
    /// Builds a tableau from its rows; the row lengths must form a partition
    /// and every entry must be positive.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::Shape(
                "tableau row lengths must be weakly decreasing".into(),
            ));
        }
        if rows.iter().flatten().any(|&x| x == 0) {
            return Err(Error::Shape("tableau entries must be positive".into()));
        }
        Ok(GenTableau { rows })
    }

    /// The rows, top to bottom.
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// The shape.
    pub fn shape(&self) -> Partition {
        Partition::from_parts(&self.rows.iter().map(Vec::len).collect::<Vec<_>>())
    }

    /// `T(i, j) < T(i, j')` for `j < j'` and `T(i, j) ≤ T(i', j)` for `i < i'`.
    pub fn is_column_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| above <= below));
        rows_ok && cols_ok
    }

    /// `(|T^{-1}{1}|, …, |T^{-1}{len}|)`.
    pub fn type_vector(&self, len: usize) -> Vec<usize> {
        let mut out = vec![0; len];
        for &x in self.rows.iter().flatten() {
            if x <= len {
                out[x - 1] += 1;
            }
        }
        out
    }
}

/// The FLOTW conditions for `t ∈ Ā`: row domination between consecutive
/// components, the wrap-around condition, and for each part size `k` the
/// residues of the row ends of length `k` missing some residue.
pub fn flotw_test(lm: &ChargedMultipartition) -> Result<bool> {
    let t = lm.charge();
    let e = lm.e() as i64;
    if !in_abar(t, lm.e()) {
        return Err(Error::ChargeOutsideDomain(t.to_vec()));
    }
    let l = lm.level();
    let part = |i: usize, a: i64| lm.component(i).part(a as usize);
    for i in 1..l {
        let shift = t[i] - t[i - 1];
        let len = lm.component(i).len() as i64;
        for a in 1..=len + 1 {
            if part(i, a) < part(i + 1, a + shift) {
                return Ok(false);
            }
        }
    }
    let shift = e + t[0] - t[l - 1];
    for a in 1..=lm.component(l).len() as i64 + 1 {
        if part(l, a) < part(1, a + shift) {
            return Ok(false);
        }
    }
    let mut by_length: std::collections::BTreeMap<usize, Vec<bool>> = Default::default();
    for (i, p) in lm.components().iter().enumerate() {
        for (a, &k) in p.parts().iter().enumerate() {
            let res = modulo(k as i64 - (a as i64 + 1) + t[i], e) as usize;
            by_length.entry(k).or_insert_with(|| vec![false; lm.e()])[res] = true;
        }
    }
    Ok(by_length.values().all(|seen| seen.iter().any(|&s| !s)))
}

/// The largest `m` with every `β_{t_i}(λ^{(i)}) = Z_{<m} ∪ L_i` and
/// `L_i ⊆ [m, m+e−1]`, if one exists.
pub fn window_threshold(lm: &ChargedMultipartition) -> Option<i64> {
    let bs = lm.beta_tuple();
    let m = bs.iter().map(|b| b.threshold()).min()?;
    bs.iter()
        .all(|b| b.max_element() < m + lm.e() as i64)
        .then_some(m)
}

/// `T^λ(i, j) = 1 − m + (j-th least element of L_{ℓ−i+1})`, with shape
/// `(|L_ℓ|, …, |L_1|)`.
pub fn tableau_of(lm: &ChargedMultipartition, m: i64) -> Result<GenTableau> {
    let e = lm.e() as i64;
    let mut ls = Vec::new();
    for b in lm.beta_tuple() {
        if b.threshold() < m || b.max_element() >= m + e {
            return Err(Error::Shape(format!(
                "β-set {b} is not of the form Z_<{m} ∪ L with L ⊆ [{m}, {}]",
                m + e - 1
            )));
        }
        let l: Vec<usize> = (m..m + e)
            .filter(|&x| b.contains(x))
            .map(|x| (1 - m + x) as usize)
            .collect();
        ls.push(l);
    }
    ls.reverse();
    GenTableau::new(ls).map_err(|_| Error::Shape("window sizes do not form a partition".into()))
}

/// Number of column-semistandard fillings of `shape` with content `ty`.
pub fn kostka_count(shape: &Partition, ty: &[usize]) -> Result<u128> {
    if shape.size() != ty.iter().sum::<usize>() {
        return Err(Error::Shape(format!(
            "shape of size {} and type of size {}",
            shape.size(),
            ty.iter().sum::<usize>()
        )));
    }
    let cells: Vec<(usize, usize)> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.parts().iter().map(|&len| vec![0; len]).collect();
    let mut quota = ty.to_vec();
    Ok(fill(&cells, 0, &mut grid, &mut quota))
}

fn fill(cells: &[(usize, usize)], k: usize, grid: &mut [Vec<usize>], quota: &mut [usize]) -> u128 {
    let Some(&(r, c)) = cells.get(k) else {
        return 1;
    };
    let left = if c > 0 { grid[r][c - 1] + 1 } else { 1 };
    let above = if r > 0 { grid[r - 1][c] } else { 1 };
    let mut total = 0;
    for v in left.max(above)..=quota.len() {
        if quota[v - 1] == 0 {
            continue;
        }
        quota[v - 1] -= 1;
        grid[r][c] = v;
        total += fill(cells, k + 1, grid, quota);
        quota[v - 1] += 1;
    }
    grid[r][c] = 0;
    total
}

/// `η^B_i = r'_{ℓ+1−i} − |y^B|` and the type `z^B`.
pub fn shape_and_type(b: &BlockDescriptor) -> Result<(Partition, Vec<usize>)> {
    let d = yz_split(b)?;
    let total: i64 = d.y.iter().sum();
    let parts = b
        .reduced_charge()
        .iter()
        .rev()
        .map(|&r| {
            usize::try_from(r - total)
                .map_err(|_| Error::Inconsistent(format!("negative shape entry {}", r - total)))
        })
        .collect::<Result<Vec<usize>>>()?;
    let shape = Partition::new(parts)?;
    let ty = d.z.iter().map(|&z| z as usize).collect();
    Ok((shape, ty))
}

/// The Kostka number `K(η^B, z^B)` read at `B` itself.
pub fn count_simples_direct(b: &BlockDescriptor) -> Result<u128> {
    let (shape, ty) = shape_and_type(b)?;
    kostka_count(&shape, &ty)
}

/// The number of simple modules in a core block: the Kostka number at the
/// initial block of its Scopes class, cross-checked against the same count
/// read at `B`.
pub fn count_simples(b: &BlockDescriptor) -> Result<u128> {
    let at_initial = count_simples_direct(&initial_block(b)?)?;
    let direct = count_simples_direct(b)?;
    if at_initial != direct {
        return Err(Error::Inconsistent(format!(
            "Kostka counts differ: {at_initial} at the initial block, {direct} directly"
        )));
    }
    Ok(direct)
}

fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    (0..k).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// For `ℓ = 2`: `C(|z|, a) − C(|z|, a−1)` with `a = r'_1 − |y^B|`.
pub fn count_simples_level_two(b: &BlockDescriptor) -> Result<u128> {
    if b.l() != 2 {
        return Err(Error::InvalidParameter(
            "the binomial formula needs ℓ = 2".into(),
        ));
    }
    let d = yz_split(b)?;
    let total: i64 = d.y.iter().sum();
    let s: i64 = d.z.iter().sum();
    let a = b.reduced_charge()[0] - total;
    Ok(binomial(s, a) - binomial(s, a - 1))
}

/// The number of Kleshchev multipartitions in the block, by enumeration.
pub fn count_kleshchev(b: &BlockDescriptor, budget: usize) -> Result<u128> {
    Ok(enumerate_in_block(b, budget)?
        .iter()
        .filter(|lm| lm.is_kleshchev())
        .count() as u128)
}
