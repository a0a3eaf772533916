//! Involutions on `T(n)` exchanging `deg(0)` with `deg(p)`, where `p` is the
//! parent of vertex 1, their conjugates on `PF(n, n)`, and preference
//! partitions.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forest::{phi, phi_inv, RootedForest, RootedTree};
use crate::pf::{ParkingFunction, Params};

/// Cut the edge `1–p`, join `1` to `0`, then swap the labels `0` and `p`.
///
/// The result is re-rooted at the vertex now labelled `0`. Identity when
/// `p = 0`.
pub fn theta(tree: &RootedTree) -> RootedTree {
    let n = tree.n() as usize;
    let p = tree.parent(1);
    if p == 0 {
        return tree.clone();
    }
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for v in 1..=tree.n() {
        let u = if v == 1 { 0 } else { tree.parent(v) };
        adj[v as usize].push(u);
        adj[u as usize].push(v);
    }
    let relabel = |v: u32| match v {
        0 => p,
        v if v == p => 0,
        v => v,
    };
    // Walk the old labels outward from the old p, which becomes the root.
    let mut parent = vec![0u32; n];
    let mut seen = vec![false; n + 1];
    let mut queue = VecDeque::from([p]);
    seen[p as usize] = true;
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u as usize] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                parent[relabel(w) as usize - 1] = relabel(u);
                queue.push_back(w);
            }
        }
    }
    RootedTree::from_parents_unchecked(parent)
}

/// [`rho_at`] with `i = 1`.
pub fn rho(tree: &RootedTree) -> RootedTree {
    rho_at(tree, 1).expect("vertex 1 exists")
}

/// Let `p` be the parent of `i` and `q` the child of `0` on the path to `i`.
/// Every other child of `0` moves under `p` and every child of `p` other
/// than `i` moves under `0`. Identity when `p = 0`.
pub fn rho_at(tree: &RootedTree, i: u32) -> Result<RootedTree> {
    if !(1..=tree.n()).contains(&i) {
        return Err(Error::BadParameter(format!("vertex {i} outside [1, {}]", tree.n())));
    }
    let p = tree.parent(i);
    if p == 0 {
        return Ok(tree.clone());
    }
    let path = tree.path_to_root(i);
    let q = path[path.len() - 2];
    let mut parent = tree.parents().to_vec();
    for v in 1..=tree.n() {
        let old = tree.parent(v);
        if old == 0 && v != q {
            parent[v as usize - 1] = p;
        } else if old == p && v != i {
            parent[v as usize - 1] = 0;
        }
    }
    Ok(RootedTree::from_parents_unchecked(parent))
}

fn conjugate(pf: &ParkingFunction, map: impl Fn(&RootedTree) -> RootedTree) -> Result<ParkingFunction> {
    match pf.params() {
        Params::Classical(p) if p.m() == p.n() => {}
        _ => {
            return Err(Error::NotAParkingFunction(format!(
                "{} is not a classical PF(n, n)",
                pf.params()
            )))
        }
    }
    let tree = RootedTree::try_from(&phi_inv(pf)?)?;
    Ok(phi(&RootedForest::from(&map(&tree))))
}

/// `φ ∘ θ ∘ φ⁻¹` on `PF(n, n)`.
pub fn theta_hat(pf: &ParkingFunction) -> Result<ParkingFunction> {
    conjugate(pf, theta)
}

/// `φ ∘ ρ ∘ φ⁻¹` on `PF(n, n)`.
pub fn rho_hat(pf: &ParkingFunction) -> Result<ParkingFunction> {
    conjugate(pf, rho)
}

/// `φ ∘ ρ_i ∘ φ⁻¹` on `PF(n, n)`.
pub fn rho_hat_at(pf: &ParkingFunction, i: u32) -> Result<ParkingFunction> {
    if !(1..=pf.m()).contains(&i) {
        return Err(Error::BadParameter(format!("vertex {i} outside [1, {}]", pf.m())));
    }
    conjugate(pf, |t| rho_at(t, i).expect("checked above"))
}

/// A set partition in canonical form: blocks sorted internally and ordered
/// by their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct SetPartition {
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    /// Empty blocks are dropped; overlapping blocks are rejected.
    pub fn new(blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut blocks: Vec<Vec<u32>> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        let mut all: Vec<u32> = blocks.iter().flatten().copied().collect();
        let total = all.len();
        all.sort_unstable();
        all.dedup();
        if all.len() != total {
            return Err(Error::BadParameter("partition blocks overlap".into()));
        }
        Ok(SetPartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// The union of all blocks, increasing.
    pub fn ground_set(&self) -> Vec<u32> {
        let mut all: Vec<u32> = self.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}

impl TryFrom<Vec<Vec<u32>>> for SetPartition {
    type Error = Error;

    fn try_from(blocks: Vec<Vec<u32>>) -> Result<Self> {
        SetPartition::new(blocks)
    }
}

impl From<SetPartition> for Vec<Vec<u32>> {
    fn from(p: SetPartition) -> Self {
        p.blocks
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            let inner: Vec<String> = b.iter().map(u32::to_string).collect();
            write!(f, "{{{}}}", inner.join(","))?;
        }
        f.write_str("}")
    }
}

/// `K(π)`: cars preferring `1` or `π₁`.
pub fn k_set(prefs: &[u32]) -> Vec<u32> {
    let lead = prefs[0];
    (1..)
        .zip(prefs)
        .filter(|&(_, &v)| v == 1 || v == lead)
        .map(|(j, _)| j)
        .collect()
}

/// `B_π(i) = {j : π_j = i}` for every `i` up to the largest preference.
pub fn preference_blocks(prefs: &[u32]) -> Vec<Vec<u32>> {
    let top = prefs.iter().copied().max().unwrap_or(0) as usize;
    let mut blocks = vec![Vec::new(); top];
    for (j, &v) in (1..).zip(prefs) {
        blocks[v as usize - 1].push(j);
    }
    blocks
}

/// Non-empty `B_π(i)` as a partition of the car set.
pub fn preference_partition(prefs: &[u32]) -> SetPartition {
    SetPartition::new(preference_blocks(prefs)).expect("preference blocks are disjoint")
}

/// The preference partition with `B_π(1)` and `B_π(π₁)` merged.
pub fn reduced_preference_partition(prefs: &[u32]) -> SetPartition {
    let mut blocks = preference_blocks(prefs);
    let lead = prefs[0] as usize;
    if lead != 1 {
        let moved = std::mem::take(&mut blocks[lead - 1]);
        blocks[0].extend(moved);
    }
    SetPartition::new(blocks).expect("preference blocks are disjoint")
}
