//! `(a, b)`-colored trees: root edges carry colors in `[a]`, all other edges
//! colors in `[b]`. The colored BFS bijection maps them onto `PF(a, b, m)`.

use std::collections::{BTreeMap, VecDeque};

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::enumerate::{domain_size, SizeCap};
use crate::error::{Error, Result};
use crate::forest::{enumerate_trees, RootedTree};
use crate::pf::{AbParams, ParkingFunction, Params};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredTree {
    a: u32,
    b: u32,
    parent: Vec<u32>,
    color: Vec<u32>,
}

impl ColoredTree {
    pub fn new(a: u32, b: u32, parent: Vec<u32>, color: Vec<u32>) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::MalformedTree(format!("color ranges a={a}, b={b} must be positive")));
        }
        if parent.len() != color.len() {
            return Err(Error::MalformedTree(format!(
                "{} parents but {} colors",
                parent.len(),
                color.len()
            )));
        }
        RootedTree::new(parent.clone()).map_err(|e| Error::MalformedTree(e.to_string()))?;
        for (v, (&p, &c)) in (1..).zip(parent.iter().zip(&color)) {
            let top = if p == 0 { a } else { b };
            if !(1..=top).contains(&c) {
                return Err(Error::MalformedTree(format!("edge ({p},{v}) has color {c} outside [1, {top}]")));
            }
        }
        Ok(ColoredTree { a, b, parent, color })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn n(&self) -> u32 {
        self.parent.len() as u32
    }

    pub fn parent(&self, v: u32) -> u32 {
        self.parent[v as usize - 1]
    }

    /// Color of the edge from `v` to its parent.
    pub fn color(&self, v: u32) -> u32 {
        self.color[v as usize - 1]
    }

    pub fn parents(&self) -> &[u32] {
        &self.parent
    }

    pub fn colors(&self) -> &[u32] {
        &self.color
    }

    /// Children of `v` ordered by (edge color, label).
    pub fn children(&self, v: u32) -> Vec<u32> {
        let mut kids: Vec<u32> = (1..=self.n()).filter(|&c| self.parent(c) == v).collect();
        kids.sort_by_key(|&c| (self.color(c), c));
        kids
    }

    /// Per-color child counts: length `a` at the root, `b` elsewhere.
    pub fn degree_vector(&self, v: u32) -> Vec<u32> {
        let len = if v == 0 { self.a } else { self.b };
        let mut deg = vec![0u32; len as usize];
        for c in 1..=self.n() {
            if self.parent(c) == v {
                deg[self.color(c) as usize - 1] += 1;
            }
        }
        deg
    }

    pub fn underlying(&self) -> RootedTree {
        RootedTree::new(self.parent.clone()).expect("validated on construction")
    }

    fn path_to_root(&self, v: u32) -> Vec<u32> {
        let mut path = vec![v];
        let mut cur = v;
        while cur != 0 {
            cur = self.parent(cur);
            path.push(cur);
        }
        path
    }
}

/// BFS order starting at `0`, siblings by (edge color, label).
pub fn colored_bfs(tree: &ColoredTree) -> Vec<u32> {
    let mut kids: Vec<Vec<u32>> = vec![Vec::new(); tree.n() as usize + 1];
    for v in 1..=tree.n() {
        kids[tree.parent(v) as usize].push(v);
    }
    for list in &mut kids {
        list.sort_by_key(|&c| (tree.color(c), c));
    }
    let mut order = vec![0];
    let mut queue = VecDeque::from([0u32]);
    while let Some(v) = queue.pop_front() {
        for &c in &kids[v as usize] {
            order.push(c);
            queue.push_back(c);
        }
    }
    order
}

/// Car `i` prefers its edge color when its parent is `0`, and
/// `a + (k-1)b + color` when its parent is the `(k+1)`-th vertex in BFS order.
pub fn colored_phi(tree: &ColoredTree) -> ParkingFunction {
    let order = colored_bfs(tree);
    let mut pos = vec![0u32; order.len()];
    for (k, &v) in order.iter().enumerate() {
        pos[v as usize] = k as u32;
    }
    let (a, b) = (tree.a, tree.b);
    let prefs = (1..=tree.n())
        .map(|v| match tree.parent(v) {
            0 => tree.color(v),
            p => a + (pos[p as usize] - 1) * b + tree.color(v),
        })
        .collect();
    ParkingFunction::ab(a, b, tree.n(), prefs).expect("colored BFS image is an (a,b)-parking function")
}

/// Inverse of [`colored_phi`].
pub fn colored_phi_inv(pf: &ParkingFunction) -> Result<ColoredTree> {
    let ab = ab_params(pf)?;
    let (a, b) = (ab.a(), ab.b());
    let tau_inv = pf.order_permutation().inverse();
    let mut parent = Vec::with_capacity(pf.prefs().len());
    let mut color = Vec::with_capacity(pf.prefs().len());
    for &p in pf.prefs() {
        if p <= a {
            parent.push(0);
            color.push(p);
        } else {
            let k = (p - a).div_ceil(b);
            parent.push(tau_inv.apply(k));
            color.push(p - a - (k - 1) * b);
        }
    }
    ColoredTree::new(a, b, parent, color)
}

fn ab_params(pf: &ParkingFunction) -> Result<AbParams> {
    match pf.params() {
        Params::Ab(p) => Ok(p),
        Params::Classical(p) => Ok(p.as_ab()),
    }
}

/// Vertex `1`'s parent `p` and the child `q` of `0` on the path to `1`.
fn path_ends(tree: &ColoredTree) -> (u32, u32) {
    let path = tree.path_to_root(1);
    (tree.parent(1), path[path.len() - 2])
}

/// The `a = 1` involution. Other root children move under `p` with the
/// color `j` of edge `(p,1)`; children of `p` of color `j` other than `1`
/// move under `0`. Identity when `p = 0`.
pub fn rho_1b(tree: &ColoredTree) -> Result<ColoredTree> {
    if tree.a != 1 {
        return Err(Error::WrongColorParameters {
            expected: "a = 1",
            a: tree.a,
            b: tree.b,
        });
    }
    let (p, q) = path_ends(tree);
    if p == 0 {
        return Ok(tree.clone());
    }
    let j = tree.color(1);
    let mut out = tree.clone();
    for v in 1..=tree.n() {
        let (par, col) = (tree.parent(v), tree.color(v));
        let slot = v as usize - 1;
        if par == 0 && v != q {
            out.parent[slot] = p;
            out.color[slot] = j;
        } else if par == p && col == j && v != 1 {
            out.parent[slot] = 0;
            out.color[slot] = 1;
        }
    }
    Ok(out)
}

/// The `a = b = k` involution. Other root children and other children of
/// `p` trade places keeping their colors, then the colors of `(0,q)` and
/// `(p,1)` are exchanged. Identity when `p = 0`.
pub fn rho_kk(tree: &ColoredTree) -> Result<ColoredTree> {
    if tree.a != tree.b {
        return Err(Error::WrongColorParameters {
            expected: "a = b",
            a: tree.a,
            b: tree.b,
        });
    }
    let (p, q) = path_ends(tree);
    if p == 0 {
        return Ok(tree.clone());
    }
    let mut out = tree.clone();
    for v in 1..=tree.n() {
        let par = tree.parent(v);
        if par == 0 && v != q {
            out.parent[v as usize - 1] = p;
        } else if par == p && v != 1 {
            out.parent[v as usize - 1] = 0;
        }
    }
    out.color.swap(q as usize - 1, 0);
    Ok(out)
}

fn conjugate(pf: &ParkingFunction, map: fn(&ColoredTree) -> Result<ColoredTree>) -> Result<ParkingFunction> {
    Ok(colored_phi(&map(&colored_phi_inv(pf)?)?))
}

/// `φ ∘ ρ_{1,b} ∘ φ⁻¹` on `PF(1, b, m)`.
pub fn rho_1b_hat(pf: &ParkingFunction) -> Result<ParkingFunction> {
    conjugate(pf, rho_1b)
}

/// `φ ∘ ρ_{k,k} ∘ φ⁻¹` on `PF(k, k, m)`.
pub fn rho_kk_hat(pf: &ParkingFunction) -> Result<ParkingFunction> {
    conjugate(pf, rho_kk)
}

/// `S_π(i) = (B_π(ik-k+1), .., B_π(ik))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockVector(pub Vec<Vec<u32>>);

impl BlockVector {
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(Vec::is_empty)
    }
}

/// Every non-trivial `S_π(i)`, keyed by `i`.
pub fn block_vectors(prefs: &[u32], k: u32) -> BTreeMap<u32, BlockVector> {
    let mut out: BTreeMap<u32, BlockVector> = BTreeMap::new();
    for (car, &v) in (1..).zip(prefs) {
        let i = v.div_ceil(k);
        let entry = out
            .entry(i)
            .or_insert_with(|| BlockVector(vec![Vec::new(); k as usize]));
        entry.0[((v - 1) % k) as usize].push(car);
    }
    out
}

/// `O(π)`: non-trivial block vectors with index outside `{1, ℓ(π)}`, sorted.
pub fn o_set(prefs: &[u32], k: u32) -> Vec<BlockVector> {
    let lead = prefs[0].div_ceil(k);
    let mut set: Vec<BlockVector> = block_vectors(prefs, k)
        .into_iter()
        .filter(|&(i, _)| i != 1 && i != lead)
        .map(|(_, s)| s)
        .collect();
    set.sort();
    set
}

/// Every `(a,b)`-colored tree on `[n]₀`: acyclic parent maps times
/// admissible colorings.
pub fn enumerate_colored_trees(a: u32, b: u32, n: u32, cap: SizeCap) -> Result<Vec<ColoredTree>> {
    if a == 0 || b == 0 || n == 0 {
        return Err(Error::InvalidParams(format!("need a, b, n ≥ 1, got a={a} b={b} n={n}")));
    }
    cap.admit(domain_size(n + 1, n as usize).saturating_mul(domain_size(a.max(b), n as usize)))?;
    let mut out = Vec::new();
    for tree in enumerate_trees(n, cap)? {
        let top: Vec<u32> = tree.parents().iter().map(|&p| if p == 0 { a } else { b }).collect();
        let mut color = vec![1u32; n as usize];
        loop {
            out.push(ColoredTree {
                a,
                b,
                parent: tree.parents().to_vec(),
                color: color.clone(),
            });
            // mixed-radix increment, last position fastest
            let mut i = n as usize;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if color[i] < top[i] {
                    color[i] += 1;
                    break;
                }
                color[i] = 1;
            }
            if color.iter().all(|&c| c == 1) {
                break;
            }
        }
    }
    Ok(out)
}

#[derive(Deserialize)]
struct ColoredJson {
    a: u32,
    b: u32,
    parent: BTreeMap<String, u32>,
    color: BTreeMap<String, u32>,
}

fn numbered_map<S: Serializer>(s: S, values: &[u32]) -> std::result::Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(values.len()))?;
    for (i, v) in (1u32..).zip(values) {
        map.serialize_entry(&i.to_string(), v)?;
    }
    map.end()
}

impl Serialize for ColoredTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Numbered<'a>(&'a [u32]);
        impl Serialize for Numbered<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                numbered_map(s, self.0)
            }
        }
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ColoredTree", 4)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("b", &self.b)?;
        st.serialize_field("parent", &Numbered(&self.parent))?;
        st.serialize_field("color", &Numbered(&self.color))?;
        st.end()
    }
}

fn dense<E: serde::de::Error>(map: &BTreeMap<String, u32>, n: usize, what: &str) -> std::result::Result<Vec<u32>, E> {
    let mut out = vec![None; n];
    for (k, &v) in map {
        let i: usize = k.parse().map_err(|_| E::custom(format!("bad {what} label {k:?}")))?;
        let slot = i
            .checked_sub(1)
            .and_then(|i| out.get_mut(i))
            .ok_or_else(|| E::custom(format!("{what} label {k} outside [1, {n}]")))?;
        *slot = Some(v);
    }
    out.into_iter()
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(|| E::custom(format!("missing {what} entries")))
}

impl<'de> Deserialize<'de> for ColoredTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ColoredJson::deserialize(d)?;
        let n = raw.parent.len();
        let parent = dense(&raw.parent, n, "parent")?;
        let color = dense(&raw.color, n, "color")?;
        ColoredTree::new(raw.a, raw.b, parent, color).map_err(D::Error::custom)
    }
}
