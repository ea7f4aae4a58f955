//! Charged multipartitions: nodes, contents, residues, addable and removable
//! nodes, the two total orders on nodes of a common residue, signatures, good
//! nodes, and the Kleshchev and Uglov recursions.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::betaset::{beta_set, hub, modulo, BetaSet, Partition};
use crate::error::{Error, Result};

/// A node `(a, b, i)`: row `a`, column `b` of component `i`, all 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
    pub comp: usize,
}

impl Node {
    /// Builds a node from row, column and component.
    pub fn new(row: usize, col: usize, comp: usize) -> Self {
        Node { row, col, comp }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.comp)
    }
}

/// The t-content `b − a + t_i` of a node.
pub fn content(n: &Node, t: &[i64]) -> i64 {
    n.col as i64 - n.row as i64 + t[n.comp - 1]
}

/// The two total orders on nodes of a fixed residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeOrder {
    /// `⪰_t`: larger content first, then smaller component index.
    Content,
    /// `⊵_t`: smaller component index first, then larger content.
    Component,
}

/// Compares two nodes; `Greater` means `n1` is strictly above `n2`.
pub fn order_compare(n1: &Node, n2: &Node, t: &[i64], which: NodeOrder) -> Ordering {
    let (c1, c2) = (content(n1, t), content(n2, t));
    match which {
        NodeOrder::Content => c1.cmp(&c2).then(n2.comp.cmp(&n1.comp)),
        NodeOrder::Component => n2.comp.cmp(&n1.comp).then(c1.cmp(&c2)),
    }
}

/// Sign of an entry of a residue signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    /// An addable node.
    Plus,
    /// A removable node.
    Minus,
}

/// An ℓ-partition together with an ℓ-charge and the parameter `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChargedMultipartition {
    components: Vec<Partition>,
    charge: Vec<i64>,
    e: usize,
}

impl ChargedMultipartition {
    /// Builds `(λ; t)`; the number of components must equal the charge length.
    pub fn new(components: Vec<Partition>, charge: Vec<i64>, e: usize) -> Result<Self> {
        if e < 2 {
            return Err(Error::InvalidParameter(format!(
                "e must be at least 2, got {e}"
            )));
        }
        if charge.is_empty() {
            return Err(Error::InvalidParameter("level must be at least 1".into()));
        }
        if components.len() != charge.len() {
            return Err(Error::RankMismatch {
                expected: charge.len(),
                found: components.len(),
            });
        }
        Ok(ChargedMultipartition {
            components,
            charge,
            e,
        })
    }

    /// Builds `(λ; t)` from raw part lists.
    pub fn from_parts(parts: &[Vec<usize>], charge: &[i64], e: usize) -> Result<Self> {
        let comps = parts
            .iter()
            .map(|p| Partition::new(p.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps, charge.to_vec(), e)
    }

    /// The empty ℓ-partition at charge `t`.
    pub fn empty(charge: Vec<i64>, e: usize) -> Result<Self> {
        let comps = vec![Partition::empty(); charge.len()];
        Self::new(comps, charge, e)
    }

    /// The components `λ^{(1)}, …, λ^{(ℓ)}`.
    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    /// Component `i` (1-based).
    pub fn component(&self, i: usize) -> &Partition {
        &self.components[i - 1]
    }

    /// The charge `t`.
    pub fn charge(&self) -> &[i64] {
        &self.charge
    }

    /// The parameter `e`.
    pub fn e(&self) -> usize {
        self.e
    }

    /// The level `ℓ`.
    pub fn level(&self) -> usize {
        self.charge.len()
    }

    /// `|λ| = Σ |λ^{(i)}|`.
    pub fn size(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }

    /// Same ℓ-partition with a different charge of the same length.
    pub fn with_charge(&self, charge: Vec<i64>) -> Result<Self> {
        Self::new(self.components.clone(), charge, self.e)
    }

    /// Same charge with different components.
    pub fn with_components(&self, components: Vec<Partition>) -> Result<Self> {
        Self::new(components, self.charge.clone(), self.e)
    }

    /// `(β_{t_1}(λ^{(1)}), …, β_{t_ℓ}(λ^{(ℓ)}))`.
    pub fn beta_tuple(&self) -> Vec<BetaSet> {
        self.components
            .iter()
            .zip(&self.charge)
            .map(|(p, &t)| beta_set(p, t))
            .collect()
    }

    /// Residue of a node in `[0, e−1]`.
    pub fn residue(&self, n: &Node) -> usize {
        modulo(content(n, &self.charge), self.e as i64) as usize
    }

    /// All nodes of the Young diagram.
    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (i, p) in self.components.iter().enumerate() {
            for (a, &len) in p.parts().iter().enumerate() {
                out.extend((1..=len).map(|b| Node::new(a + 1, b, i + 1)));
            }
        }
        out
    }

    /// Addable and removable nodes of residue `j`, read off the β-sets.
    pub fn addable_removable(&self, j: usize) -> (Vec<Node>, Vec<Node>) {
        let e = self.e as i64;
        let mut add = Vec::new();
        let mut rem = Vec::new();
        for (idx, b) in self.beta_tuple().iter().enumerate() {
            let t = self.charge[idx];
            let comp = idx + 1;
            let ex = b.excess();
            let m = b.threshold();
            let node_at = |x: i64, row: usize| Node::new(row, (x - t + row as i64) as usize, comp);
            for (k, &x) in ex.iter().enumerate() {
                let row = ex.len() - k;
                if !b.contains(x - 1) && modulo(x, e) == j as i64 {
                    rem.push(node_at(x, row));
                }
                if !b.contains(x + 1) && modulo(x + 1, e) == j as i64 {
                    add.push(node_at(x + 1, row));
                }
            }
            if modulo(m, e) == j as i64 {
                add.push(node_at(m, ex.len() + 1));
            }
        }
        (add, rem)
    }

    /// Entry `j` is the number of removable minus addable nodes of residue `j`.
    pub fn hub_of(&self) -> Vec<i64> {
        let mut out = vec![0; self.e];
        for b in self.beta_tuple() {
            let h = hub(&b, self.e).expect("e validated at construction");
            for (o, v) in out.iter_mut().zip(h) {
                *o += v;
            }
        }
        out
    }

    /// Adds an addable node.
    pub fn add_node(&self, n: &Node) -> Result<Self> {
        let mut parts = self.components[n.comp - 1].parts().to_vec();
        if n.row == parts.len() + 1 && n.col == 1 {
            parts.push(1);
        } else if n.row <= parts.len() && parts[n.row - 1] + 1 == n.col {
            parts[n.row - 1] += 1;
        } else {
            return Err(Error::Shape(format!("{n} is not addable")));
        }
        let mut comps = self.components.clone();
        comps[n.comp - 1] = Partition::new(parts)?;
        self.with_components(comps)
    }

    /// Removes a removable node.
    pub fn remove_node(&self, n: &Node) -> Result<Self> {
        let mut parts = self.components[n.comp - 1].parts().to_vec();
        if n.row == 0 || n.row > parts.len() || parts[n.row - 1] != n.col {
            return Err(Error::Shape(format!("{n} is not removable")));
        }
        parts[n.row - 1] -= 1;
        let mut comps = self.components.clone();
        comps[n.comp - 1] = Partition::new(parts)?;
        self.with_components(comps)
    }

    /// The residue-`j` signature, listed in ascending order.
    pub fn signature(&self, j: usize, which: NodeOrder) -> Vec<(Sign, Node)> {
        let (add, rem) = self.addable_removable(j);
        let mut sig: Vec<(Sign, Node)> = add
            .into_iter()
            .map(|n| (Sign::Plus, n))
            .chain(rem.into_iter().map(|n| (Sign::Minus, n)))
            .collect();
        sig.sort_by(|a, b| order_compare(&a.1, &b.1, &self.charge, which));
        sig
    }

    /// The reduced signature after deleting adjacent `−+` pairs.
    pub fn reduced_signature(&self, j: usize, which: NodeOrder) -> Vec<(Sign, Node)> {
        let mut stack: Vec<(Sign, Node)> = Vec::new();
        for entry in self.signature(j, which) {
            if entry.0 == Sign::Plus && matches!(stack.last(), Some((Sign::Minus, _))) {
                stack.pop();
            } else {
                stack.push(entry);
            }
        }
        stack
    }

    /// The normal removable nodes of residue `j`, in ascending order.
    pub fn normal_nodes(&self, j: usize, which: NodeOrder) -> Vec<Node> {
        self.reduced_signature(j, which)
            .into_iter()
            .filter(|(s, _)| *s == Sign::Minus)
            .map(|(_, n)| n)
            .collect()
    }

    /// The conormal addable nodes of residue `j`, in ascending order.
    pub fn conormal_nodes(&self, j: usize, which: NodeOrder) -> Vec<Node> {
        self.reduced_signature(j, which)
            .into_iter()
            .filter(|(s, _)| *s == Sign::Plus)
            .map(|(_, n)| n)
            .collect()
    }

    /// The good node of residue `j`: the smallest normal node, if any.
    pub fn good_node(&self, j: usize, which: NodeOrder) -> Option<Node> {
        self.normal_nodes(j, which).into_iter().next()
    }

    fn reaches_empty(&self, which: NodeOrder) -> bool {
        let mut cur = self.clone();
        while cur.size() > 0 {
            let next = (0..self.e).find_map(|j| cur.good_node(j, which));
            match next {
                Some(n) => cur = cur.remove_node(&n).expect("good nodes are removable"),
                None => return false,
            }
        }
        true
    }

    /// Kleshchev: good-node removal under `⊵_t` reaches the empty ℓ-partition.
    pub fn is_kleshchev(&self) -> bool {
        self.reaches_empty(NodeOrder::Component)
    }

    /// Uglov: good-node removal under `⪰_t` reaches the empty ℓ-partition.
    pub fn is_uglov(&self) -> bool {
        self.reaches_empty(NodeOrder::Content)
    }

    /// Applies a permutation to the components: entry `k` becomes
    /// component `perm[k]` (1-based values).
    pub fn permute_components(&self, perm: &[usize]) -> Vec<Partition> {
        perm.iter()
            .map(|&p| self.components[p - 1].clone())
            .collect()
    }
}

impl fmt::Display for ChargedMultipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        let ch: Vec<String> = self.charge.iter().map(|c| c.to_string()).collect();
        write!(f, "(({}); ({}))", comps.join(", "), ch.join(","))
    }
}

/// All ℓ-partitions of `n`.
pub fn all_multipartitions(l: usize, n: usize) -> Vec<Vec<Partition>> {
    let by_size: Vec<Vec<Partition>> = (0..=n).map(Partition::all_of_size).collect();
    let mut out = Vec::new();
    let mut cur: Vec<Partition> = Vec::with_capacity(l);
    fn rec(
        l: usize,
        rem: usize,
        by_size: &[Vec<Partition>],
        cur: &mut Vec<Partition>,
        out: &mut Vec<Vec<Partition>>,
    ) {
        if cur.len() + 1 == l {
            for p in &by_size[rem] {
                cur.push(p.clone());
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for k in (0..=rem).rev() {
            for p in &by_size[k] {
                cur.push(p.clone());
                rec(l, rem - k, by_size, cur, out);
                cur.pop();
            }
        }
    }
    if l == 0 {
        return out;
    }
    rec(l, n, &by_size, &mut cur, &mut out);
    out
}
