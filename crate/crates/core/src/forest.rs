//! Rooted forests `F(m, n)`, rooted trees `T(n)`, breadth-first order and
//! the BFS bijection with `PF(m, n)`.
//!
//! A forest has roots `01, .., 0(n-m+1)` and non-root vertices `1..=m`,
//! stored as a parent map. Trees are the case `m = n` with the single root
//! written `0`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::enumerate::{fold_tuples, SizeCap, Tuples};
use crate::error::{Error, Result};
use crate::pf::{OrderPermutation, ParkingFunction, Params, PfParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    /// Root `0j`, `j` counted from 1.
    Root(u32),
    /// Non-root vertex with its label.
    Node(u32),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Root(j) => write!(f, "0{j}"),
            Vertex::Node(i) => write!(f, "{i}"),
        }
    }
}

impl FromStr for Vertex {
    type Err = Error;

    /// `"0j"` is root `j`, a bare `"0"` is the root of a tree.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad vertex {s:?}"));
        if s == "0" {
            return Ok(Vertex::Root(1));
        }
        if let Some(rest) = s.strip_prefix('0') {
            let j: u32 = rest.parse().map_err(|_| bad())?;
            return if j == 0 { Err(bad()) } else { Ok(Vertex::Root(j)) };
        }
        let i: u32 = s.parse().map_err(|_| bad())?;
        Ok(Vertex::Node(i))
    }
}

/// A forest in `F(m, n)` given by its parent map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedForest {
    m: u32,
    n: u32,
    parent: Vec<Vertex>,
}

impl RootedForest {
    pub fn new(m: u32, n: u32, parent: Vec<Vertex>) -> Result<Self> {
        PfParams::new(m, n).map_err(|e| Error::MalformedForest(e.to_string()))?;
        if parent.len() != m as usize {
            return Err(Error::MalformedForest(format!(
                "{} parent entries for {m} vertices",
                parent.len()
            )));
        }
        let roots = n - m + 1;
        for (i, &p) in (1..).zip(&parent) {
            let ok = match p {
                Vertex::Root(j) => (1..=roots).contains(&j),
                Vertex::Node(j) => (1..=m).contains(&j) && j != i,
            };
            if !ok {
                return Err(Error::MalformedForest(format!("vertex {i} has bad parent {p}")));
            }
        }
        if !is_acyclic(&parent) {
            return Err(Error::MalformedForest("parent map has a cycle".into()));
        }
        Ok(RootedForest { m, n, parent })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn root_count(&self) -> u32 {
        self.n - self.m + 1
    }

    /// Parent of the non-root vertex `i`.
    pub fn parent(&self, i: u32) -> Vertex {
        self.parent[i as usize - 1]
    }

    pub fn parents(&self) -> &[Vertex] {
        &self.parent
    }

    /// Labels of the children of `v`, increasing.
    pub fn children(&self, v: Vertex) -> Vec<u32> {
        (1..=self.m).filter(|&i| self.parent(i) == v).collect()
    }

    pub fn child_count(&self, v: Vertex) -> u32 {
        self.parent.iter().filter(|&&p| p == v).count() as u32
    }

    /// Total number of children of all roots.
    pub fn deg_root_total(&self) -> u32 {
        self.parent
            .iter()
            .filter(|p| matches!(p, Vertex::Root(_)))
            .count() as u32
    }

    /// Child count of the parent of vertex `i`.
    pub fn deg_parent_of(&self, i: u32) -> u32 {
        self.child_count(self.parent(i))
    }

    /// Child count of the parent of vertex 1.
    pub fn deg_parent_of_1(&self) -> u32 {
        self.deg_parent_of(1)
    }

    pub fn bfs_order(&self) -> BfsOrder {
        let mut kids: Vec<Vec<u32>> = vec![Vec::new(); (self.root_count() + self.m) as usize];
        for i in 1..=self.m {
            kids[self.slot(self.parent(i))].push(i);
        }
        let mut order: Vec<Vertex> = (1..=self.root_count()).map(Vertex::Root).collect();
        let mut queue: VecDeque<Vertex> = order.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            for &c in &kids[self.slot(v)] {
                order.push(Vertex::Node(c));
                queue.push_back(Vertex::Node(c));
            }
        }
        BfsOrder::new(order, self.root_count())
    }

    fn slot(&self, v: Vertex) -> usize {
        match v {
            Vertex::Root(j) => j as usize - 1,
            Vertex::Node(i) => (self.root_count() + i) as usize - 1,
        }
    }

    /// `t(f)`: child counts of the first `n` vertices in BFS order.
    pub fn specification(&self) -> ForestSpecification {
        let order = self.bfs_order();
        ForestSpecification(
            order.vertices()[..self.n as usize]
                .iter()
                .map(|&v| self.child_count(v))
                .collect(),
        )
    }

    /// `σ_f`: position of each non-root vertex in BFS order, roots removed.
    pub fn sigma(&self) -> OrderPermutation {
        self.bfs_order().sigma()
    }
}

fn is_acyclic(parent: &[Vertex]) -> bool {
    // 0 unvisited, 1 on the current path, 2 known to reach a root
    let mut state = vec![0u8; parent.len()];
    let mut path = Vec::new();
    for start in 0..parent.len() {
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            path.push(v);
            match parent[v] {
                Vertex::Root(_) => break,
                Vertex::Node(p) => {
                    let p = p as usize - 1;
                    if state[p] == 1 {
                        return false;
                    }
                    v = p;
                }
            }
        }
        for u in path.drain(..) {
            state[u] = 2;
        }
    }
    true
}

/// Breadth-first order: roots by index, then level by level, siblings by
/// label, groups by the BFS position of their parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsOrder {
    order: Vec<Vertex>,
    roots: u32,
}

impl BfsOrder {
    fn new(order: Vec<Vertex>, roots: u32) -> Self {
        BfsOrder { order, roots }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.order
    }

    /// Non-root vertices in BFS order (`σ_f⁻¹`).
    pub fn sigma_inverse(&self) -> Vec<u32> {
        self.order[self.roots as usize..]
            .iter()
            .map(|v| match v {
                Vertex::Node(i) => *i,
                Vertex::Root(_) => unreachable!("roots come first"),
            })
            .collect()
    }

    pub fn sigma(&self) -> OrderPermutation {
        let inv = self.sigma_inverse();
        let mut sigma = vec![0u32; inv.len()];
        for (pos, &v) in (1..).zip(&inv) {
            sigma[v as usize - 1] = pos;
        }
        OrderPermutation::new(sigma).expect("BFS visits every vertex once")
    }
}

/// Degree vector `t(f) = (r_1, .., r_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestSpecification(pub Vec<u32>);

impl ForestSpecification {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// The BFS bijection `F(m, n) → PF(m, n)`.
///
/// `π_i = j` when `f_i = 0j`, otherwise `π_i = (n-m+1) + σ_f(f_i)`.
pub fn phi(forest: &RootedForest) -> ParkingFunction {
    let sigma = forest.sigma();
    let level = forest.root_count();
    let prefs = forest
        .parent
        .iter()
        .map(|&p| match p {
            Vertex::Root(j) => j,
            Vertex::Node(v) => level + sigma.apply(v),
        })
        .collect();
    ParkingFunction::classical(forest.m, forest.n, prefs).expect("BFS image is a parking function")
}

/// Inverse of [`phi`]: `f_i = 0j` when `π_i = j ≤ n-m+1`, otherwise
/// `f_i = τ_π⁻¹(π_i - (n-m+1))`.
pub fn phi_inv(pf: &ParkingFunction) -> Result<RootedForest> {
    let Params::Classical(params) = pf.params() else {
        return Err(Error::NotAParkingFunction(
            "phi_inv needs a classical PF(m, n)".into(),
        ));
    };
    let level = params.level();
    let tau_inv = pf.order_permutation().inverse();
    let parent = pf
        .prefs()
        .iter()
        .map(|&p| {
            if p <= level {
                Vertex::Root(p)
            } else {
                Vertex::Node(tau_inv.apply(p - level))
            }
        })
        .collect();
    RootedForest::new(params.m(), params.n(), parent)
}

fn decode_parent(v: u32, roots: u32) -> Vertex {
    if v <= roots {
        Vertex::Root(v)
    } else {
        Vertex::Node(v - roots)
    }
}

fn parent_slice_acyclic(t: &[u32], roots: u32, buf: &mut Vec<Vertex>) -> bool {
    buf.clear();
    for (i, &v) in (1..).zip(t) {
        let p = decode_parent(v, roots);
        if p == Vertex::Node(i) {
            return false;
        }
        buf.push(p);
    }
    is_acyclic(buf)
}

/// Lexicographic stream of `F(m, n)`, filtered from all parent maps.
#[derive(Debug, Clone)]
pub struct ForestIter {
    m: u32,
    n: u32,
    tuples: Tuples,
    buf: Vec<Vertex>,
}

impl Iterator for ForestIter {
    type Item = RootedForest;

    fn next(&mut self) -> Option<RootedForest> {
        let roots = self.n - self.m + 1;
        while let Some(t) = self.tuples.advance() {
            if parent_slice_acyclic(t, roots, &mut self.buf) {
                return Some(RootedForest {
                    m: self.m,
                    n: self.n,
                    parent: self.buf.clone(),
                });
            }
        }
        None
    }
}

/// Every acyclic parent map on `m` vertices with `n-m+1` roots.
pub fn enumerate_forests(m: u32, n: u32, cap: SizeCap) -> Result<ForestIter> {
    PfParams::new(m, n)?;
    cap.check(n + 1, m as usize)?;
    Ok(ForestIter {
        m,
        n,
        tuples: Tuples::new(n + 1, m as usize),
        buf: Vec::with_capacity(m as usize),
    })
}

/// Order-independent fold over `F(m, n)`.
pub fn fold_forests<T, I, F, M>(m: u32, n: u32, cap: SizeCap, init: I, visit: F, merge: M) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &RootedForest) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    PfParams::new(m, n)?;
    let roots = n - m + 1;
    fold_tuples(
        n + 1,
        m as usize,
        cap,
        init,
        |acc, t| {
            let mut buf = Vec::with_capacity(t.len());
            if parent_slice_acyclic(t, roots, &mut buf) {
                visit(acc, &RootedForest { m, n, parent: buf })
            }
        },
        merge,
    )
}

/// A rooted tree on `[n]₀` with root `0`; `parent[i-1] ∈ [n]₀` for `i ∈ [n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedTree {
    parent: Vec<u32>,
}

impl RootedTree {
    pub fn new(parent: Vec<u32>) -> Result<Self> {
        let n = parent.len() as u32;
        if n == 0 {
            return Err(Error::MalformedForest("tree needs at least one edge".into()));
        }
        let as_vertices = parent
            .iter()
            .map(|&p| if p == 0 { Vertex::Root(1) } else { Vertex::Node(p) })
            .collect();
        RootedForest::new(n, n, as_vertices)?;
        Ok(RootedTree { parent })
    }

    pub fn n(&self) -> u32 {
        self.parent.len() as u32
    }

    pub fn parent(&self, v: u32) -> u32 {
        self.parent[v as usize - 1]
    }

    pub fn parents(&self) -> &[u32] {
        &self.parent
    }

    pub fn children(&self, v: u32) -> Vec<u32> {
        (1..=self.n()).filter(|&i| self.parent(i) == v).collect()
    }

    pub fn child_count(&self, v: u32) -> u32 {
        self.parent.iter().filter(|&&p| p == v).count() as u32
    }

    /// Vertices from `v` up to and including the root.
    pub fn path_to_root(&self, v: u32) -> Vec<u32> {
        let mut path = vec![v];
        let mut cur = v;
        while cur != 0 {
            cur = self.parent(cur);
            path.push(cur);
        }
        path
    }

    pub(crate) fn from_parents_unchecked(parent: Vec<u32>) -> Self {
        debug_assert!(RootedTree::new(parent.clone()).is_ok());
        RootedTree { parent }
    }
}

impl From<&RootedTree> for RootedForest {
    fn from(t: &RootedTree) -> Self {
        let parent = t
            .parent
            .iter()
            .map(|&p| if p == 0 { Vertex::Root(1) } else { Vertex::Node(p) })
            .collect();
        RootedForest {
            m: t.n(),
            n: t.n(),
            parent,
        }
    }
}

impl TryFrom<&RootedForest> for RootedTree {
    type Error = Error;

    fn try_from(f: &RootedForest) -> Result<Self> {
        if f.m != f.n {
            return Err(Error::MalformedForest(format!(
                "forest with {} roots is not a tree",
                f.root_count()
            )));
        }
        Ok(RootedTree {
            parent: f
                .parent
                .iter()
                .map(|p| match p {
                    Vertex::Root(_) => 0,
                    Vertex::Node(v) => *v,
                })
                .collect(),
        })
    }
}

/// Every tree in `T(n)`.
pub fn enumerate_trees(n: u32, cap: SizeCap) -> Result<impl Iterator<Item = RootedTree>> {
    Ok(enumerate_forests(n, n, cap)?.map(|f| RootedTree::try_from(&f).expect("m = n")))
}

#[derive(Serialize, Deserialize)]
struct ForestJson {
    m: u32,
    n: u32,
    parent: BTreeMap<String, String>,
}

impl Serialize for RootedForest {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Parents<'a>(&'a [Vertex]);
        impl Serialize for Parents<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (i, p) in (1u32..).zip(self.0) {
                    map.serialize_entry(&i.to_string(), &p.to_string())?;
                }
                map.end()
            }
        }
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RootedForest", 3)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("parent", &Parents(&self.parent))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RootedForest {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ForestJson::deserialize(d)?;
        let mut parent = vec![None; raw.m as usize];
        for (k, v) in &raw.parent {
            let i: usize = k.parse().map_err(|_| D::Error::custom(format!("bad label {k:?}")))?;
            let slot = i
                .checked_sub(1)
                .and_then(|i| parent.get_mut(i))
                .ok_or_else(|| D::Error::custom(format!("label {k} outside [1, {}]", raw.m)))?;
            *slot = Some(v.parse::<Vertex>().map_err(D::Error::custom)?);
        }
        let parent: Option<Vec<Vertex>> = parent.into_iter().collect();
        let parent = parent.ok_or_else(|| D::Error::custom("missing parent entries"))?;
        RootedForest::new(raw.m, raw.n, parent).map_err(D::Error::custom)
    }
}
