//! O-rooted labeled r-trees stored as father maps.
//!
//! The vertex set is `O = {o1..or}` (roots) and `V = {v1..vn}` (labeled).
//! Every labeled vertex `v` has a father set `F(v)` of `r` vertices, and
//! `v` together with `F(v)` spans an `(r+1)`-clique. A map `F` comes from an
//! r-tree exactly when the father relation on `V` is acyclic and every
//! non-root father set shares `r - 1` elements with the father set of one of
//! its members.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Roots sort before labeled vertices; both carry 0-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Root(u32),
    Labeled(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Root(i) => write!(f, "o{}", i + 1),
            Vertex::Labeled(i) => write!(f, "v{}", i + 1),
        }
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a vertex name: {s:?}"));
        let (tag, idx) = s.split_at_checked(1).ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        match tag {
            "o" => Ok(Vertex::Root(u32::try_from(idx - 1).map_err(|_| bad())?)),
            "v" => Ok(Vertex::Labeled(idx - 1)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RTree {
    n: usize,
    r: u32,
    fathers: Vec<Vec<Vertex>>,
}

impl RTree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Sorted father set of `v_j`.
    pub fn fathers(&self, j: usize) -> &[Vertex] {
        &self.fathers[j]
    }

    pub fn father_sets(&self) -> &[Vec<Vertex>] {
        &self.fathers
    }

    pub fn has_root_fathers(&self, j: usize) -> bool {
        self.fathers[j].iter().all(|v| matches!(v, Vertex::Root(_)))
    }

    fn roots(&self) -> impl Iterator<Item = Vertex> {
        (0..self.r).map(Vertex::Root)
    }

    /// Labeled vertices that are nobody's father, in increasing order.
    pub fn childless(&self) -> Vec<usize> {
        let mut used = vec![false; self.n];
        for f in &self.fathers {
            for v in f {
                if let Vertex::Labeled(i) = v {
                    used[*i] = true;
                }
            }
        }
        (0..self.n).filter(|&j| !used[j]).collect()
    }

    /// Derived edge set: the root clique plus the clique on each `v_j ∪ F(v_j)`.
    pub fn edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        let mut edges = BTreeSet::new();
        let mut clique = |members: &[Vertex]| {
            for (a, x) in members.iter().enumerate() {
                for y in &members[a + 1..] {
                    edges.insert(if x < y { (*x, *y) } else { (*y, *x) });
                }
            }
        };
        clique(&self.roots().collect::<Vec<_>>());
        for (j, f) in self.fathers.iter().enumerate() {
            let mut members = f.clone();
            members.push(Vertex::Labeled(j));
            clique(&members);
        }
        edges
    }

    pub fn neighbors(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.edges()
            .into_iter()
            .filter_map(|(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Father sets read from the edges under the attachment order `order`:
    /// the neighbours of each vertex among the roots and earlier vertices.
    pub fn father_sets_under_order(&self, order: &[usize]) -> Vec<Vec<Vertex>> {
        let edges = self.edges();
        let mut seen: BTreeSet<Vertex> = self.roots().collect();
        let mut out = vec![Vec::new(); self.n];
        for &j in order {
            let me = Vertex::Labeled(j);
            out[j] = seen
                .iter()
                .copied()
                .filter(|u| edges.contains(&if *u < me { (*u, me) } else { (me, *u) }))
                .collect();
            seen.insert(me);
        }
        out
    }

    /// Tree on `n - 1` vertices obtained by deleting the childless vertex `j`
    /// and renumbering the vertices after it.
    pub fn remove_childless(&self, j: usize) -> Result<RTree> {
        if j >= self.n {
            return Err(Error::IndexOutOfRange {
                index: j,
                n: self.n,
            });
        }
        assert!(
            self.childless().contains(&j),
            "v{} has children and cannot be removed",
            j + 1
        );
        let relabel = |v: &Vertex| match *v {
            Vertex::Labeled(i) if i > j => Vertex::Labeled(i - 1),
            other => other,
        };
        let fathers = self
            .fathers
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, f)| f.iter().map(relabel).collect())
            .collect();
        validate(self.n - 1, self.r, fathers)
    }

    /// Graphviz rendering with deterministic node and edge order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph rtree {\n");
        for o in self.roots() {
            out.push_str(&format!("  {o} [shape=doublecircle];\n"));
        }
        for j in 0..self.n {
            out.push_str(&format!("  {} [shape=circle];\n", Vertex::Labeled(j)));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("  {a} -- {b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for RTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, fs) in self.fathers.iter().enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            let names: Vec<String> = fs.iter().map(Vertex::to_string).collect();
            write!(f, "F(v{})={{{}}}", j + 1, names.join(","))?;
        }
        Ok(())
    }
}

/// Checks a father map and returns the tree it determines.
pub fn validate(n: usize, r: u32, fathers: Vec<Vec<Vertex>>) -> Result<RTree> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidSpec { n, r });
    }
    if fathers.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: fathers.len(),
        });
    }
    let mut sets = Vec::with_capacity(n);
    for (j, mut f) in fathers.into_iter().enumerate() {
        f.sort();
        f.dedup();
        let in_range = f.iter().all(|v| match *v {
            Vertex::Root(i) => i < r,
            Vertex::Labeled(i) => i < n,
        });
        if f.len() != r as usize || !in_range {
            return Err(Error::WrongDegree {
                vertex: j,
                expected: r,
            });
        }
        sets.push(f);
    }
    if let Some(chain) = find_cycle(&sets) {
        return Err(Error::Cyclic { chain });
    }
    let tree = RTree {
        n,
        r,
        fathers: sets,
    };
    for j in 0..n {
        if !tree.has_root_fathers(j) && clique_father(&tree, j).is_none() {
            return Err(Error::BadClique { vertex: j });
        }
    }
    Ok(tree)
}

/// A directed cycle in "v_a is a father of v_b", listed along the edges.
fn find_cycle(sets: &[Vec<Vertex>]) -> Option<Vec<usize>> {
    let n = sets.len();
    let children = |a: usize| (0..n).filter(move |&b| sets[b].contains(&Vertex::Labeled(a)));
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut stack: Vec<usize> = Vec::new();

    fn visit(
        a: usize,
        state: &mut [u8],
        stack: &mut Vec<usize>,
        children: &dyn Fn(usize) -> Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[a] = 1;
        stack.push(a);
        for b in children(a) {
            if state[b] == 1 {
                let start = stack.iter().position(|&v| v == b).unwrap();
                let mut chain = stack[start..].to_vec();
                chain.push(b);
                return Some(chain);
            }
            if state[b] == 0 {
                if let Some(c) = visit(b, state, stack, children) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[a] = 2;
        None
    }

    let children = |a: usize| children(a).collect::<Vec<_>>();
    (0..n).find_map(|a| {
        if state[a] == 0 {
            visit(a, &mut state, &mut stack, &children)
        } else {
            None
        }
    })
}

/// The unique `v_i ∈ F(v_j)` with `|F(v_j) ∩ F(v_i)| = r - 1`.
fn clique_father(tree: &RTree, j: usize) -> Option<usize> {
    let fj = &tree.fathers[j];
    let mut found = None;
    for v in fj {
        if let Vertex::Labeled(i) = *v {
            let shared = tree.fathers[i].iter().filter(|u| fj.contains(u)).count();
            if shared + 1 == tree.r as usize {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
    }
    found
}

/// Ordered f-tuples and the `(p_j, q_j)` data recovered from a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTupleTable {
    tuples: Vec<Vec<Vertex>>,
    parents: Vec<Option<(usize, u32)>>,
    order: Vec<usize>,
}

impl FTupleTable {
    pub fn tuple(&self, j: usize) -> &[Vertex] {
        &self.tuples[j]
    }

    /// `p_j` as a 0-based vertex index, `None` when `F(v_j) = O`.
    pub fn p(&self, j: usize) -> Option<usize> {
        self.parents[j].map(|(p, _)| p)
    }

    /// `q_j`, 1-based, defined only when `p_j` is.
    pub fn q(&self, j: usize) -> Option<u32> {
        self.parents[j].map(|(_, q)| q)
    }

    pub fn parent(&self, j: usize) -> Option<(usize, u32)> {
        self.parents[j]
    }

    /// Processing order: by distance to an all-root ancestor, then index.
    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

pub fn f_tuples(tree: &RTree) -> FTupleTable {
    let n = tree.n;
    let parent_of: Vec<Option<usize>> = (0..n)
        .map(|j| {
            if tree.has_root_fathers(j) {
                None
            } else {
                Some(clique_father(tree, j).expect("validated tree"))
            }
        })
        .collect();

    let mut depth = vec![None; n];
    fn depth_of(j: usize, parent_of: &[Option<usize>], depth: &mut [Option<usize>]) -> usize {
        if let Some(d) = depth[j] {
            return d;
        }
        let d = match parent_of[j] {
            None => 0,
            Some(p) => depth_of(p, parent_of, depth) + 1,
        };
        depth[j] = Some(d);
        d
    }
    let mut order: Vec<usize> = (0..n).collect();
    for j in 0..n {
        depth_of(j, &parent_of, &mut depth);
    }
    order.sort_by_key(|&j| (depth[j], j));

    let root_tuple: Vec<Vertex> = (0..tree.r).map(Vertex::Root).collect();
    let mut tuples: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut parents = vec![None; n];
    for &j in &order {
        match parent_of[j] {
            None => tuples[j] = root_tuple.clone(),
            Some(p) => {
                let fj = &tree.fathers[j];
                let parent_tuple = &tuples[p];
                let q = parent_tuple
                    .iter()
                    .position(|v| !fj.contains(v))
                    .expect("father sets differ in exactly one element");
                let mut t: Vec<Vertex> = parent_tuple
                    .iter()
                    .enumerate()
                    .filter(|(pos, _)| *pos != q)
                    .map(|(_, v)| *v)
                    .collect();
                t.push(Vertex::Labeled(p));
                tuples[j] = t;
                parents[j] = Some((p, q as u32 + 1));
            }
        }
    }
    FTupleTable {
        tuples,
        parents,
        order,
    }
}

/// Whether `order` is a valid attachment order: a permutation of `0..n` that
/// lists every father before its children.
pub fn is_valid_order(tree: &RTree, order: &[usize]) -> bool {
    if order.len() != tree.n {
        return false;
    }
    let mut pos = vec![usize::MAX; tree.n];
    for (t, &v) in order.iter().enumerate() {
        if v >= tree.n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = t;
    }
    tree.fathers.iter().enumerate().all(|(t, f)| {
        f.iter().all(|v| match *v {
            Vertex::Labeled(s) => pos[s] < pos[t],
            Vertex::Root(_) => true,
        })
    })
}

fn subsets(pool: &[Vertex], size: usize) -> Vec<Vec<Vertex>> {
    fn go(
        pool: &[Vertex],
        size: usize,
        start: usize,
        cur: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < size - cur.len() {
                break;
            }
            cur.push(pool[i]);
            go(pool, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, size, 0, &mut Vec::with_capacity(size), &mut out);
    out
}

/// Every O-rooted labeled r-tree on `n` labeled vertices, by filtering all
/// candidate father maps through [`validate`]. Sorted by father sets.
pub fn enumerate_rtrees(n: usize, r: u32) -> Vec<RTree> {
    if n == 0 || r == 0 {
        return Vec::new();
    }
    let candidates: Vec<Vec<Vec<Vertex>>> = (0..n)
        .map(|j| {
            let pool: Vec<Vertex> = (0..r)
                .map(Vertex::Root)
                .chain((0..n).filter(|&i| i != j).map(Vertex::Labeled))
                .collect();
            subsets(&pool, r as usize)
        })
        .collect();

    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let fathers = (0..n).map(|j| candidates[j][idx[j]].clone()).collect();
        if let Ok(tree) = validate(n, r, fathers) {
            out.push(tree);
        }
        // odometer, last vertex fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                out.sort();
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < candidates[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
