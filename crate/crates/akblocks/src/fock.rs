//! The level-ℓ Fock space over `Z[v, v^{-1}]`: Laurent polynomials, Fock
//! vectors, the `f_j` operators and their divided powers, canonical bases,
//! v-decomposition matrices of blocks, and the reduction of decomposition
//! numbers of core blocks to level one.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::betaset::Partition;
use crate::blocks::{enumerate_in_block, BlockDescriptor};
use crate::error::{Error, Result};
use crate::multipartition::{order_compare, ChargedMultipartition, Node, NodeOrder};
use crate::scopes::{initial_block, specht_correspondence, yz_split};
use crate::uglov::phi;
use crate::weyl::{in_abar, right_action_charge, WeylElement};

/// Default cap on the number of multipartitions touched by a canonical-basis
/// computation.
pub const DEFAULT_BASIS_BUDGET: usize = 2000;

/// A Laurent polynomial in `v` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant `1`.
    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c·v^k`.
    pub fn monomial(k: i64, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_monomial(k, c);
        }
        p
    }

    /// The nonzero coefficients, keyed by exponent.
    pub fn coeffs(&self) -> &BTreeMap<i64, i64> {
        &self.coeffs
    }

    /// The coefficient of `v^k`.
    pub fn coefficient(&self, k: i64) -> i64 {
        self.coeffs.get(&k).copied().unwrap_or(0)
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_monomial(&mut self, k: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&k);
        }
    }

    /// `p(v^{-1})`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, &c)| (-k, c)).collect(),
        }
    }

    /// True if `p(v^{-1}) = p(v)`.
    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    /// True if `p ∈ vZ[v]`.
    pub fn in_v_z_v(&self) -> bool {
        self.coeffs.keys().all(|&k| k >= 1)
    }

    /// True if every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    /// The unique bar-invariant `α` with `p − α ∈ vZ[v]`.
    pub fn bar_symmetric_part(&self) -> Self {
        let mut out = Self::zero();
        for (&k, &c) in self.coeffs.range(..=0) {
            out.add_monomial(k, c);
            if k != 0 {
                out.add_monomial(-k, c);
            }
        }
        out
    }

    /// `v^k · p`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&x, &c)| (x + k, c)).collect(),
        }
    }

    /// The value at `v = 1`.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// The quantum integer `[k] = v^{k−1} + v^{k−3} + ⋯ + v^{1−k}`.
    pub fn quantum_integer(k: usize) -> Self {
        let k = k as i64;
        Self::from_terms((0..k).map(|i| (k - 1 - 2 * i, 1)))
    }

    /// The quantum factorial `[k]! = [1][2]⋯[k]`.
    pub fn quantum_factorial(k: usize) -> Self {
        (1..=k).fold(Self::one(), |acc, i| &acc * &Self::quantum_integer(i))
    }

    /// Exact division by a nonzero divisor; `None` if it does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (&dlo, &dc) = d.coeffs.iter().next()?;
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some((&k, &c)) = rem.coeffs.iter().next() {
            if c % dc != 0 {
                return None;
            }
            let term = Self::monomial(k - dlo, c / dc);
            rem = &rem - &(&term * d);
            q = &q + &term;
            if q.coeffs.len() > self.coeffs.len() + d.coeffs.len() + 64 {
                return None;
            }
        }
        Some(q)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, &c) in &rhs.coeffs {
            out.add_monomial(k, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, &c) in &self.coeffs {
            for (&b, &d) in &rhs.coeffs {
                out.add_monomial(a + b, c * d);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (&k, &c)) in self.coeffs.iter().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if idx > 0 {
                "+"
            } else {
                ""
            };
            if idx > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "v")?,
                (1, _) => write!(f, "{a}v")?,
                (_, 1) => write!(f, "v^{k}")?,
                _ => write!(f, "{a}v^{k}")?,
            }
        }
        Ok(())
    }
}

/// A finitely supported `Z[v, v^{-1}]`-combination of charged
/// multipartitions sharing one charge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockVector {
    e: usize,
    charge: Vec<i64>,
    terms: BTreeMap<Vec<Partition>, LaurentPoly>,
}

impl FockVector {
    /// The zero vector of `F_t`.
    pub fn zero(e: usize, charge: Vec<i64>) -> Self {
        FockVector {
            e,
            charge,
            terms: BTreeMap::new(),
        }
    }

    /// The basis vector `(λ; t)`.
    pub fn basis(lm: &ChargedMultipartition) -> Self {
        let mut out = Self::zero(lm.e(), lm.charge().to_vec());
        out.add_term(lm.components().to_vec(), &LaurentPoly::one());
        out
    }

    /// The vacuum `(∅; t)`.
    pub fn vacuum(e: usize, charge: Vec<i64>) -> Self {
        let l = charge.len();
        let mut out = Self::zero(e, charge);
        out.add_term(vec![Partition::empty(); l], &LaurentPoly::one());
        out
    }

    /// The quantum characteristic `e`.
    pub fn e(&self) -> usize {
        self.e
    }

    /// The charge `t`.
    pub fn charge(&self) -> &[i64] {
        &self.charge
    }

    /// The nonzero terms.
    pub fn terms(&self) -> &BTreeMap<Vec<Partition>, LaurentPoly> {
        &self.terms
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True for the zero vector.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `(λ; t)`.
    pub fn coefficient(&self, mp: &[Partition]) -> LaurentPoly {
        self.terms.get(mp).cloned().unwrap_or_default()
    }

    /// Adds `c·(λ; t)`.
    pub fn add_term(&mut self, mp: Vec<Partition>, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mp).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.retain(|_, p| !p.is_zero());
        }
    }

    /// `self += a·x`.
    pub fn add_scaled(&mut self, a: &LaurentPoly, x: &FockVector) -> Result<()> {
        if x.charge != self.charge || x.e != self.e {
            return Err(Error::InvalidParameter(
                "Fock vectors of different charges".into(),
            ));
        }
        for (mp, c) in &x.terms {
            self.add_term(mp.clone(), &(a * c));
        }
        Ok(())
    }

    /// The coefficientwise bar involution on the standard basis.
    pub fn bar_coefficients(&self) -> Self {
        FockVector {
            e: self.e,
            charge: self.charge.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, p)| (k.clone(), p.bar()))
                .collect(),
        }
    }

    fn element(&self, mp: &[Partition]) -> Result<ChargedMultipartition> {
        ChargedMultipartition::new(mp.to_vec(), self.charge.clone(), self.e)
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (mp, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let label: Vec<String> = mp.iter().map(|p| p.to_string()).collect();
            write!(f, "({c})({})", label.join(", "))?;
        }
        Ok(())
    }
}

fn count_above(n: &Node, nodes: &[Node], t: &[i64]) -> i64 {
    nodes
        .iter()
        .filter(|m| order_compare(m, n, t, NodeOrder::Component).is_gt())
        .count() as i64
}

fn check_residue(j: usize, e: usize) -> Result<()> {
    if j >= e {
        return Err(Error::InvalidParameter(format!(
            "residue {j} not in [0, {}]",
            e - 1
        )));
    }
    Ok(())
}

/// `f_j(λ; t) = Σ_n v^{N(n)} (λ^{+n}; t)` over addable `j`-nodes `n`, with
/// `N(n)` the number of addable minus removable `j`-nodes above `n` in the
/// component order; extended linearly.
pub fn f_op(j: usize, x: &FockVector) -> Result<FockVector> {
    f_divided(j, 1, x)
}

/// The divided power `f_j^{(k)} = f_j^k / [k]!`: a sum over `k`-sets `S` of
/// addable `j`-nodes of `v^{N(S)} (λ ∪ S; t)` with
/// `N(S) = Σ_{n∈S} (#{addable n' ∉ S above n} − #{removable n' above n})`.
pub fn f_divided(j: usize, k: usize, x: &FockVector) -> Result<FockVector> {
    check_residue(j, x.e)?;
    let mut out = FockVector::zero(x.e, x.charge.clone());
    for (mp, c) in &x.terms {
        let lm = x.element(mp)?;
        let (add, rem) = lm.addable_removable(j);
        for subset in k_subsets(add.len(), k) {
            let mut exponent = 0;
            let mut target = lm.clone();
            for &i in &subset {
                let n = &add[i];
                let outside: Vec<Node> = add
                    .iter()
                    .enumerate()
                    .filter(|(a, _)| !subset.contains(a))
                    .map(|(_, m)| *m)
                    .collect();
                exponent += count_above(n, &outside, x.charge()) - count_above(n, &rem, x.charge());
                target = target.add_node(n)?;
            }
            out.add_term(target.components().to_vec(), &c.shift(exponent));
        }
    }
    Ok(out)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Partial sums `Σ_{c'<c} |λ^{(c')}| + Σ_{r'≤r} λ^{(c)}_{r'}` over all
/// `(c, r)` with `r ≤ |λ|`; lexicographic comparison of these keys is a
/// total order extending dominance.
pub fn dominance_key(mp: &[Partition]) -> Vec<usize> {
    let n: usize = mp.iter().map(Partition::size).sum();
    let mut out = Vec::with_capacity(mp.len() * n);
    let mut before = 0;
    for p in mp {
        let mut acc = before;
        for r in 1..=n {
            acc += p.part(r);
            out.push(acc);
        }
        before += p.size();
    }
    out
}

/// `λ ⊵ μ` in the dominance order on multipartitions of equal size.
pub fn dominates(a: &[Partition], b: &[Partition]) -> bool {
    let (ka, kb) = (dominance_key(a), dominance_key(b));
    ka.len() == kb.len() && ka.iter().zip(&kb).all(|(x, y)| x >= y)
}

/// Which residue the recursion removes normal nodes of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathChoice {
    /// The smallest residue with a normal node.
    Smallest,
    /// The largest residue with a normal node.
    Largest,
}

/// A memoised canonical-basis engine for one Fock space `F_t`.
#[derive(Debug)]
pub struct CanonicalBasis {
    e: usize,
    charge: Vec<i64>,
    budget: usize,
    path: PathChoice,
    cache: Mutex<HashMap<Vec<Partition>, Arc<FockVector>>>,
}

impl CanonicalBasis {
    /// An engine for `F_t` with the given term budget.
    pub fn new(e: usize, charge: Vec<i64>, budget: usize) -> Result<Self> {
        Self::with_path(e, charge, budget, PathChoice::Smallest)
    }

    /// An engine that builds its auxiliary vectors along the given path.
    pub fn with_path(e: usize, charge: Vec<i64>, budget: usize, path: PathChoice) -> Result<Self> {
        if e < 2 || charge.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "e = {e}, level {}",
                charge.len()
            )));
        }
        Ok(CanonicalBasis {
            e,
            charge,
            budget,
            path,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// The charge `t`.
    pub fn charge(&self) -> &[i64] {
        &self.charge
    }

    /// The quantum characteristic.
    pub fn e(&self) -> usize {
        self.e
    }

    /// `G(μ; t)`; `μ` must be Kleshchev.
    pub fn get(&self, mu: &[Partition]) -> Result<Arc<FockVector>> {
        self.get_inner(mu, &mut Vec::new())
    }

    fn get_inner(
        &self,
        mu: &[Partition],
        stack: &mut Vec<Vec<Partition>>,
    ) -> Result<Arc<FockVector>> {
        if let Some(g) = self.cache.lock().expect("cache lock").get(mu) {
            return Ok(g.clone());
        }
        if stack.iter().any(|s| s.as_slice() == mu) {
            return Err(Error::Inconsistent(format!("cyclic dependency at {mu:?}")));
        }
        stack.push(mu.to_vec());
        let g = self.compute(mu, stack);
        stack.pop();
        let g = Arc::new(g?);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(mu.to_vec(), g.clone());
        Ok(g)
    }

    fn kleshchev_element(&self, mp: &[Partition]) -> Result<ChargedMultipartition> {
        let lm = ChargedMultipartition::new(mp.to_vec(), self.charge.clone(), self.e)?;
        if !lm.is_kleshchev() {
            return Err(Error::InvalidParameter(format!("{lm} is not Kleshchev")));
        }
        Ok(lm)
    }

    fn compute(&self, mu: &[Partition], stack: &mut Vec<Vec<Partition>>) -> Result<FockVector> {
        if mu.len() != self.charge.len() {
            return Err(Error::RankMismatch {
                expected: self.charge.len(),
                found: mu.len(),
            });
        }
        let lm = self.kleshchev_element(mu)?;
        if lm.size() == 0 {
            return Ok(FockVector::basis(&lm));
        }
        let mut residues =
            (0..self.e).filter(|&j| !lm.normal_nodes(j, NodeOrder::Component).is_empty());
        let j = match self.path {
            PathChoice::Smallest => residues.next(),
            PathChoice::Largest => residues.next_back(),
        }
        .ok_or_else(|| Error::Inconsistent(format!("{lm} has no normal node")))?;
        let normal = lm.normal_nodes(j, NodeOrder::Component);
        let mut nu = lm.clone();
        for n in &normal {
            nu = nu.remove_node(n)?;
        }
        let g_nu = self.get_inner(nu.components(), stack)?;
        let mut a = f_divided(j, normal.len(), &g_nu)?;
        self.check_budget(&a)?;
        let key_mu = dominance_key(mu);

        loop {
            let (top, coeff) = a
                .terms
                .iter()
                .max_by(|x, y| dominance_key(x.0).cmp(&dominance_key(y.0)))
                .map(|(k, c)| (k.clone(), c.clone()))
                .ok_or_else(|| Error::Inconsistent(format!("auxiliary vector of {lm} vanished")))?;
            if top.as_slice() == mu {
                break;
            }
            if dominance_key(&top) < key_mu || !coeff.is_bar_invariant() {
                return Err(Error::Inconsistent(format!(
                    "auxiliary vector of {lm} has leading term {top:?} with coefficient {coeff}"
                )));
            }
            let g = self.get_inner(&top, stack)?;
            a.add_scaled(&-&coeff, &g)?;
        }
        if a.coefficient(mu) != LaurentPoly::one() {
            return Err(Error::Inconsistent(format!(
                "auxiliary vector of {lm} has leading coefficient {}",
                a.coefficient(mu)
            )));
        }

        loop {
            let offending = a
                .terms
                .iter()
                .filter(|(k, c)| k.as_slice() != mu && !c.in_v_z_v())
                .max_by(|x, y| dominance_key(x.0).cmp(&dominance_key(y.0)))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((lam, coeff)) = offending else {
                break;
            };
            let g = self.get_inner(&lam, stack)?;
            a.add_scaled(&-&coeff.bar_symmetric_part(), &g)?;
            self.check_budget(&a)?;
        }
        if a.coefficient(mu) != LaurentPoly::one() {
            return Err(Error::Inconsistent(format!(
                "correction changed the leading term of {lm}"
            )));
        }
        Ok(a)
    }

    fn check_budget(&self, x: &FockVector) -> Result<()> {
        if x.len() > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                context: "computing a canonical basis vector".into(),
            });
        }
        Ok(())
    }
}

/// `G(μ; t)` computed by a fresh engine.
pub fn canonical_basis(lm: &ChargedMultipartition, budget: usize) -> Result<FockVector> {
    let engine = CanonicalBasis::new(lm.e(), lm.charge().to_vec(), budget)?;
    Ok((*engine.get(lm.components())?).clone())
}

/// A v-decomposition matrix: rows are the multipartitions of a block, columns
/// its Kleshchev multipartitions, both in decreasing dominance-compatible
/// order; `entries[row][col] = d_{λμ}(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionMatrix {
    pub e: usize,
    pub charge: Vec<i64>,
    pub rows: Vec<Vec<Partition>>,
    pub columns: Vec<Vec<Partition>>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

/// JSON form of a decomposition matrix: labels as sequences of part lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionMatrixJson {
    pub e: usize,
    pub charge: Vec<i64>,
    pub rows: Vec<Vec<Vec<usize>>>,
    pub columns: Vec<Vec<Vec<usize>>>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

fn label_parts(mp: &[Partition]) -> Vec<Vec<usize>> {
    mp.iter().map(|p| p.parts().to_vec()).collect()
}

fn label_text(mp: &[Partition]) -> String {
    let parts: Vec<String> = mp.iter().map(|p| p.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl DecompositionMatrix {
    /// The entry `d_{λμ}(v)`, zero when either label is absent.
    pub fn entry(&self, lambda: &[Partition], mu: &[Partition]) -> LaurentPoly {
        let r = self.rows.iter().position(|x| x.as_slice() == lambda);
        let c = self.columns.iter().position(|x| x.as_slice() == mu);
        match (r, c) {
            (Some(r), Some(c)) => self.entries[r][c].clone(),
            _ => LaurentPoly::zero(),
        }
    }

    /// The JSON form.
    pub fn to_json(&self) -> DecompositionMatrixJson {
        DecompositionMatrixJson {
            e: self.e,
            charge: self.charge.clone(),
            rows: self.rows.iter().map(|r| label_parts(r)).collect(),
            columns: self.columns.iter().map(|c| label_parts(c)).collect(),
            entries: self.entries.clone(),
        }
    }

    /// A plain-text table with aligned columns.
    pub fn to_text(&self) -> String {
        let mut grid: Vec<Vec<String>> = Vec::with_capacity(self.rows.len() + 1);
        let mut header = vec![String::new()];
        header.extend(self.columns.iter().map(|c| label_text(c)));
        grid.push(header);
        for (r, row) in self.rows.iter().enumerate() {
            let mut line = vec![label_text(row)];
            line.extend(self.entries[r].iter().map(|p| {
                if p.is_zero() {
                    ".".to_string()
                } else {
                    p.to_string()
                }
            }));
            grid.push(line);
        }
        let widths: Vec<usize> = (0..grid[0].len())
            .map(|c| grid.iter().map(|l| l[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for line in grid {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

fn sort_by_dominance(mut v: Vec<Vec<Partition>>) -> Vec<Vec<Partition>> {
    v.sort_by(|a, b| dominance_key(b).cmp(&dominance_key(a)).then(a.cmp(b)));
    v
}

/// The v-decomposition matrix of a block at its base charge. Only Kleshchev
/// columns carry canonical basis vectors, so `restrict_to_kleshchev_columns`
/// must be true.
pub fn decomposition_matrix(
    b: &BlockDescriptor,
    restrict_to_kleshchev_columns: bool,
    budget: usize,
) -> Result<DecompositionMatrix> {
    if !restrict_to_kleshchev_columns {
        return Err(Error::InvalidParameter(
            "canonical basis vectors exist only for Kleshchev columns".into(),
        ));
    }
    let members = enumerate_in_block(b, budget)?;
    let engine = CanonicalBasis::new(b.e(), b.base_charge().to_vec(), budget)?;
    matrix_from_members(&engine, members)
}

fn matrix_from_members(
    engine: &CanonicalBasis,
    members: Vec<ChargedMultipartition>,
) -> Result<DecompositionMatrix> {
    let columns = sort_by_dominance(
        members
            .iter()
            .filter(|lm| lm.is_kleshchev())
            .map(|lm| lm.components().to_vec())
            .collect(),
    );
    let rows = sort_by_dominance(members.iter().map(|lm| lm.components().to_vec()).collect());
    let row_set: BTreeSet<&Vec<Partition>> = rows.iter().collect();
    let vectors: Vec<Arc<FockVector>> = columns
        .par_iter()
        .map(|mu| engine.get(mu))
        .collect::<Result<_>>()?;
    for (mu, g) in columns.iter().zip(&vectors) {
        if let Some(stray) = g.terms().keys().find(|k| !row_set.contains(k)) {
            return Err(Error::Inconsistent(format!(
                "G({mu:?}) has support {stray:?} outside the block"
            )));
        }
    }
    let entries = rows
        .iter()
        .map(|r| vectors.iter().map(|g| g.coefficient(r)).collect())
        .collect();
    Ok(DecompositionMatrix {
        e: engine.e(),
        charge: engine.charge().to_vec(),
        rows,
        columns,
        entries,
    })
}

/// The level-one v-decomposition matrix of the partitions of `n` at charge
/// `s`, over all partitions (not only one block).
pub fn level_one_matrix(e: usize, s: i64, n: usize, budget: usize) -> Result<DecompositionMatrix> {
    let engine = CanonicalBasis::new(e, vec![s], budget)?;
    let members = Partition::all_of_size(n)
        .into_iter()
        .map(|p| ChargedMultipartition::new(vec![p], vec![s], e))
        .collect::<Result<Vec<_>>>()?;
    matrix_from_members(&engine, members)
}

/// `Φ_u(ν) = β^{-1}(U(β_u(ν)))`.
pub fn phi_u(nu: &[Partition], u: &[i64], e: usize) -> Result<Partition> {
    let (p, _) = phi(&ChargedMultipartition::new(nu.to_vec(), u.to_vec(), e)?)?;
    Ok(p)
}

/// `Ψ_{t,u}`: the linear map `(ν; t) ↦ (Φ_u(ν); |u|)` into level one.
pub fn psi(x: &FockVector, u: &[i64]) -> Result<FockVector> {
    if u.len() != x.charge().len() {
        return Err(Error::RankMismatch {
            expected: x.charge().len(),
            found: u.len(),
        });
    }
    let mut out = FockVector::zero(x.e(), vec![u.iter().sum()]);
    for (mp, c) in x.terms() {
        out.add_term(vec![phi_u(mp, u, x.e())?], c);
    }
    Ok(out)
}

/// A pure translation `w` with `r^w ∈ Ā` and `mv_ℓ = 0` at `r^w`, if any.
pub fn translation_hypothesis(b: &BlockDescriptor) -> Result<Option<WeylElement>> {
    let e = b.e() as i64;
    let r = b.base_charge();
    let l = r.len();
    let mut candidates: Vec<Vec<i64>> = vec![vec![r[0]]];
    for &ri in &r[1..] {
        let lo = r[0] + (ri - r[0]).rem_euclid(e);
        let choices: Vec<i64> = [lo, lo + e]
            .into_iter()
            .filter(|&x| x <= r[0] + e)
            .collect();
        candidates = candidates
            .into_iter()
            .flat_map(|c| {
                choices.iter().map(move |&x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    for x in candidates {
        if !in_abar(&x, b.e()) {
            continue;
        }
        let w = WeylElement::translation(r.iter().zip(&x).map(|(a, b)| (b - a) / e).collect());
        if right_action_charge(r, &w, b.e())? != x {
            return Err(Error::Inconsistent(
                "translation does not reach its target".into(),
            ));
        }
        let bw = BlockDescriptor::with_w0(b.representative(), &w)?;
        if bw.is_core_block() && bw.mv()[l - 1] == 0 {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// The comparison of a core block's decomposition matrix with level one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelOneReport {
    pub w_trans: Vec<i64>,
    pub u: Vec<i64>,
    pub level_one_charge: i64,
    pub matrix: DecompositionMatrix,
    /// `Φ_u(Ω(λ))` for each row `λ`.
    pub row_images: Vec<Partition>,
    /// `Φ_u(Ω(μ))` for each column `μ`.
    pub column_images: Vec<Partition>,
    /// Number of entries with `d^r_{λμ} ≠ d_{Φ_u(Ω(λ)), Φ_u(Ω(μ))}`.
    pub mismatches: usize,
    /// Every column image is e-regular.
    pub e_regular: bool,
    /// Level-one columns vanish outside the image of the block.
    pub vanishing: bool,
}

impl LevelOneReport {
    /// True if every clause of the correspondence holds.
    pub fn holds(&self) -> bool {
        self.mismatches == 0 && self.e_regular && self.vanishing
    }
}

/// Computes both decomposition matrices of a core block satisfying the
/// translation hypothesis and compares them entrywise through
/// `λ ↦ Φ_u(Ω(λ))`.
pub fn level_one_reduction(b: &BlockDescriptor, budget: usize) -> Result<LevelOneReport> {
    b.require_core()?;
    let w = translation_hypothesis(b)?.ok_or_else(|| {
        Error::NotApplicable(
            "no pure translation w with r^w in the closed alcove and mv_l = 0".into(),
        )
    })?;
    let bw = BlockDescriptor::with_w0(b.representative(), &w)?;
    let b0 = initial_block(&bw)?;
    let y_total: i64 = yz_split(&bw)?.y.iter().sum();
    let u: Vec<i64> = bw.reduced_charge().iter().map(|x| x - y_total).collect();
    let s: i64 = u.iter().sum();

    let matrix = decomposition_matrix(&bw, true, budget)?;
    let image = |mp: &[Partition]| -> Result<Partition> {
        let lm = ChargedMultipartition::new(mp.to_vec(), bw.base_charge().to_vec(), bw.e())?;
        let omega = specht_correspondence(&bw, &b0, &lm)?;
        phi_u(omega.components(), &u, bw.e())
    };
    let row_images: Vec<Partition> = matrix
        .rows
        .iter()
        .map(|r| image(r))
        .collect::<Result<_>>()?;
    let column_images: Vec<Partition> = matrix
        .columns
        .iter()
        .map(|c| image(c))
        .collect::<Result<_>>()?;
    let distinct: BTreeSet<&Partition> = row_images.iter().collect();
    if distinct.len() != row_images.len() {
        return Err(Error::Inconsistent(
            "Φ_u∘Ω is not injective on the block".into(),
        ));
    }

    let engine = CanonicalBasis::new(bw.e(), vec![s], budget)?;
    let e_regular = column_images.iter().all(|p| p.is_e_regular(bw.e()));
    let mut mismatches = 0;
    let mut vanishing = true;
    for (c, img) in column_images.iter().enumerate() {
        if !img.is_e_regular(bw.e()) {
            continue;
        }
        let g = engine.get(std::slice::from_ref(img))?;
        for (r, row_img) in row_images.iter().enumerate() {
            if g.coefficient(std::slice::from_ref(row_img)) != matrix.entries[r][c] {
                mismatches += 1;
            }
        }
        vanishing &= g.terms().keys().all(|k| distinct.contains(&k[0]));
    }
    Ok(LevelOneReport {
        w_trans: w.trans().to_vec(),
        u,
        level_one_charge: s,
        matrix,
        row_images,
        column_images,
        mismatches,
        e_regular,
        vanishing,
    })
}
