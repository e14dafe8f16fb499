//! Hyperplanes of the r-Shi and r-Catalan arrangements and their regions.
//!
//! A region is stored as one open "window" per pair `i < j`: the interval
//! between consecutive thresholds that contains `x_i - x_j`. A complete window
//! assignment is a region exactly when the strict difference-constraint system
//! it describes is satisfiable.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::RangeInclusive;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rational::{int, is_integer_value, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Shi,
    Catalan,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Shi => "shi",
            Kind::Catalan => "catalan",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which arrangement, in which dimension `n`, with deformation depth `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrangementSpec {
    kind: Kind,
    n: usize,
    r: u32,
}

impl ArrangementSpec {
    pub fn new(kind: Kind, n: usize, r: u32) -> Result<Self> {
        if n == 0 || r == 0 {
            return Err(Error::InvalidSpec { n, r });
        }
        Ok(Self { kind, n, r })
    }

    pub fn shi(n: usize, r: u32) -> Result<Self> {
        Self::new(Kind::Shi, n, r)
    }

    pub fn catalan(n: usize, r: u32) -> Result<Self> {
        Self::new(Kind::Catalan, n, r)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Same kind and depth in another dimension.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(self.kind, n, self.r)
    }

    pub fn min_threshold(&self) -> i64 {
        match self.kind {
            Kind::Shi => 1 - i64::from(self.r),
            Kind::Catalan => -i64::from(self.r),
        }
    }

    pub fn max_threshold(&self) -> i64 {
        i64::from(self.r)
    }

    /// Offsets `c` such that `x_i - x_j = c` is a hyperplane for `i < j`.
    pub fn thresholds(&self) -> RangeInclusive<i64> {
        self.min_threshold()..=self.max_threshold()
    }

    pub fn is_threshold(&self, t: i64) -> bool {
        self.thresholds().contains(&t)
    }

    pub fn pair_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Pairs `(i, j)` with `i < j` in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    /// Position of the pair `(i, j)`, `i < j`, in [`pairs`](Self::pairs).
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// All legal windows, in increasing order.
    pub fn windows(&self) -> Vec<Window> {
        let mut out = Vec::with_capacity(self.thresholds().count() + 1);
        out.push(Window::new(None, Some(self.min_threshold())));
        for a in self.min_threshold()..self.max_threshold() {
            out.push(Window::new(Some(a), Some(a + 1)));
        }
        out.push(Window::new(Some(self.max_threshold()), None));
        out
    }

    pub fn is_legal_window(&self, w: Window) -> bool {
        match (w.lo, w.hi) {
            (None, Some(hi)) => hi == self.min_threshold(),
            (Some(lo), None) => lo == self.max_threshold(),
            (Some(lo), Some(hi)) => {
                hi == lo + 1 && lo >= self.min_threshold() && hi <= self.max_threshold()
            }
            (None, None) => false,
        }
    }

    fn check_window(&self, i: usize, j: usize, w: Window) -> Result<()> {
        if self.is_legal_window(w) {
            Ok(())
        } else {
            Err(Error::InvalidWindow {
                i,
                j,
                lo: w.lo,
                hi: w.hi,
            })
        }
    }

    /// The window containing the value `d` of `x_i - x_j` (`i < j`), or the
    /// threshold `d` lands on.
    pub fn window_of_difference(&self, d: &Rational) -> std::result::Result<Window, i64> {
        if is_integer_value(d) && self.is_threshold(d.to_integer()) {
            return Err(d.to_integer());
        }
        if *d < int(self.min_threshold()) {
            Ok(Window::new(None, Some(self.min_threshold())))
        } else if *d > int(self.max_threshold()) {
            Ok(Window::new(Some(self.max_threshold()), None))
        } else {
            let lo = d.floor().to_integer();
            Ok(Window::new(Some(lo), Some(lo + 1)))
        }
    }
}

impl fmt::Display for ArrangementSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}, r={})", self.kind, self.n, self.r)
    }
}

/// The hyperplane `x_i - x_j = offset`, `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub i: usize,
    pub j: usize,
    pub offset: i64,
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}-x{}={}", self.i + 1, self.j + 1, self.offset)
    }
}

/// Open interval `(lo, hi)`; `None` stands for the matching infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Window {
    pub const fn new(lo: Option<i64>, hi: Option<i64>) -> Self {
        Self { lo, hi }
    }

    pub fn bounded(lo: i64) -> Self {
        Self::new(Some(lo), Some(lo + 1))
    }

    pub fn contains(&self, d: &Rational) -> bool {
        self.lo.is_none_or(|lo| *d > int(lo)) && self.hi.is_none_or(|hi| *d < int(hi))
    }

    /// The window of `-d` when `self` is the window of `d`.
    pub fn negated(self) -> Self {
        Self::new(self.hi.map(|h| -h), self.lo.map(|l| -l))
    }
}

impl Ord for Window {
    fn cmp(&self, other: &Self) -> Ordering {
        // -inf < finite on the left end, finite < +inf on the right end
        let lo = |w: &Window| w.lo.map_or((0, 0), |v| (1, v));
        let hi = |w: &Window| w.hi.map_or((1, 0), |v| (0, v));
        lo(self).cmp(&lo(other)).then(hi(self).cmp(&hi(other)))
    }
}

impl PartialOrd for Window {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lo {
            Some(v) => write!(f, "({v}, ")?,
            None => write!(f, "(-inf, ")?,
        }
        match self.hi {
            Some(v) => write!(f, "{v})"),
            None => write!(f, "+inf)"),
        }
    }
}

/// A region: a feasible complete window assignment plus an interior point.
///
/// Equality, ordering and hashing only look at the spec and the windows.
#[derive(Debug, Clone)]
pub struct Region {
    spec: ArrangementSpec,
    windows: Vec<Window>,
    rep: Vec<Rational>,
}

impl Region {
    /// Builds a region from windows listed in [`ArrangementSpec::pairs`] order.
    pub fn from_windows(spec: ArrangementSpec, windows: Vec<Window>) -> Result<Self> {
        let rep = representative(spec, &windows)?;
        Ok(Self { spec, windows, rep })
    }

    /// Builds a region whose interior point is supplied by the caller.
    pub fn with_representative(
        spec: ArrangementSpec,
        windows: Vec<Window>,
        rep: Vec<Rational>,
    ) -> Result<Self> {
        let region = region_of_point(spec, &rep)?;
        if region.windows != windows {
            for ((i, j), w) in spec.pairs().zip(&windows) {
                spec.check_window(i, j, *w)?;
            }
            return Err(Error::Parse(
                "representative does not lie in the given windows".into(),
            ));
        }
        Ok(region)
    }

    pub fn spec(&self) -> ArrangementSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn windows(&self) -> &[Window] {
        &self.windows
    }

    pub fn representative(&self) -> &[Rational] {
        &self.rep
    }

    /// Window of `x_i - x_j` for any `i != j`.
    pub fn window(&self, i: usize, j: usize) -> Window {
        assert_ne!(i, j, "no window on the diagonal");
        if i < j {
            self.windows[self.spec.pair_index(i, j)]
        } else {
            self.windows[self.spec.pair_index(j, i)].negated()
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.n()
            && self
                .spec
                .pairs()
                .zip(&self.windows)
                .all(|((i, j), w)| w.contains(&(x[i] - x[j])))
    }

    /// Largest `s` such that every difference stays at least `s` away from
    /// its window ends at the representative. `None` when unconstrained.
    pub fn slack(&self) -> Option<Rational> {
        let mut best: Option<Rational> = None;
        for ((i, j), w) in self.spec.pairs().zip(&self.windows) {
            let d = self.rep[i] - self.rep[j];
            let gaps = [w.lo.map(|lo| d - int(lo)), w.hi.map(|hi| int(hi) - d)];
            for g in gaps.into_iter().flatten() {
                best = Some(best.map_or(g, |b| b.min(g)));
            }
        }
        best
    }
}

impl PartialEq for Region {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.windows == other.windows
    }
}

impl Eq for Region {}

impl Hash for Region {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.spec.hash(state);
        self.windows.hash(state);
    }
}

impl Ord for Region {
    fn cmp(&self, other: &Self) -> Ordering {
        self.spec
            .cmp(&other.spec)
            .then_with(|| self.windows.cmp(&other.windows))
    }
}

impl PartialOrd for Region {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.spec)?;
        for ((i, j), w) in self.spec.pairs().zip(&self.windows) {
            write!(f, " x{}-x{}∈{w}", i + 1, j + 1)?;
        }
        Ok(())
    }
}

pub fn hyperplanes(spec: ArrangementSpec) -> Vec<Hyperplane> {
    spec.pairs()
        .flat_map(|(i, j)| {
            spec.thresholds()
                .map(move |offset| Hyperplane { i, j, offset })
        })
        .collect()
}

/// Edge `from -> to` of weight `w` encodes `x_to <= x_from + w / (n + 1)`.
#[derive(Debug, Clone, Copy)]
struct Edge {
    from: usize,
    to: usize,
    weight: i64,
}

/// Each strict bound `x_a - x_b < c` becomes `x_a - x_b <= c - 1/(n+1)`.
/// Every simple cycle has at most `n` edges and integer total, so its tightened
/// weight is negative exactly when the original total is `<= 0`.
fn window_edges(scale: i64, i: usize, j: usize, w: Window) -> impl Iterator<Item = Edge> {
    // x_i - x_j < hi  ==>  x_i <= x_j + hi - eps
    let upper = w.hi.map(|hi| Edge {
        from: j,
        to: i,
        weight: scale * hi - 1,
    });
    // x_i - x_j > lo  ==>  x_j <= x_i - lo - eps
    let lower = w.lo.map(|lo| Edge {
        from: i,
        to: j,
        weight: -scale * lo - 1,
    });
    upper.into_iter().chain(lower)
}

fn collect_edges(spec: ArrangementSpec, partial: &[Option<Window>]) -> Result<Vec<Edge>> {
    if partial.len() != spec.pair_count() {
        return Err(Error::DimensionMismatch {
            expected: spec.pair_count(),
            got: partial.len(),
        });
    }
    let scale = spec.n as i64 + 1;
    let mut edges = Vec::new();
    for ((i, j), w) in spec.pairs().zip(partial) {
        if let Some(w) = *w {
            spec.check_window(i, j, w)?;
            edges.extend(window_edges(scale, i, j, w));
        }
    }
    Ok(edges)
}

/// Shortest-path potentials from a virtual source joined to every vertex by a
/// zero edge, or `None` on a negative cycle.
fn bellman_ford(n: usize, edges: &[Edge]) -> Option<Vec<i64>> {
    let mut dist = vec![0i64; n];
    for _ in 0..n {
        let mut changed = false;
        for e in edges {
            let cand = dist[e.from] + e.weight;
            if cand < dist[e.to] {
                dist[e.to] = cand;
                changed = true;
            }
        }
        if !changed {
            return Some(dist);
        }
    }
    // n + 1 vertices counting the source: one more relaxation round must be quiet
    edges
        .iter()
        .all(|e| dist[e.from] + e.weight >= dist[e.to])
        .then_some(dist)
}

/// Whether a (possibly partial) window assignment, indexed like
/// [`ArrangementSpec::pairs`], admits a real solution.
pub fn feasible(spec: ArrangementSpec, partial: &[Option<Window>]) -> Result<bool> {
    let edges = collect_edges(spec, partial)?;
    Ok(bellman_ford(spec.n, &edges).is_some())
}

/// Interior point of a complete window assignment, built from the potentials of
/// the tightened constraint graph. Denominators divide `n + 1`.
pub fn representative(spec: ArrangementSpec, windows: &[Window]) -> Result<Vec<Rational>> {
    let partial: Vec<Option<Window>> = windows.iter().copied().map(Some).collect();
    let edges = collect_edges(spec, &partial)?;
    let dist = bellman_ford(spec.n, &edges).ok_or(Error::InfeasibleRegion)?;
    let scale = spec.n as i64 + 1;
    Ok(dist.into_iter().map(|d| Rational::new(d, scale)).collect())
}

pub fn region_of_point(spec: ArrangementSpec, x: &[Rational]) -> Result<Region> {
    if x.len() != spec.n {
        return Err(Error::DimensionMismatch {
            expected: spec.n,
            got: x.len(),
        });
    }
    let windows = spec
        .pairs()
        .map(|(i, j)| {
            spec.window_of_difference(&(x[i] - x[j]))
                .map_err(|offset| Error::OnHyperplane(Hyperplane { i, j, offset }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Region {
        spec,
        windows,
        rep: x.to_vec(),
    })
}

/// Drops coordinate `j`, renumbering the rest in order.
pub fn project(region: &Region, j: usize) -> Result<Region> {
    let spec = region.spec.with_n(region.n() - 1)?;
    if j >= region.n() {
        return Err(Error::IndexOutOfRange {
            index: j,
            n: region.n(),
        });
    }
    let windows = region
        .spec
        .pairs()
        .zip(&region.windows)
        .filter(|((a, b), _)| *a != j && *b != j)
        .map(|(_, w)| *w)
        .collect();
    let rep = region
        .rep
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != j)
        .map(|(_, v)| *v)
        .collect();
    Ok(Region { spec, windows, rep })
}

/// All-pairs shortest paths of the constraints assigned so far, maintained
/// incrementally during the search. `None` is +inf.
#[derive(Clone)]
struct Closure {
    n: usize,
    dist: Vec<Option<i64>>,
}

impl Closure {
    fn new(n: usize) -> Self {
        let mut dist = vec![None; n * n];
        for v in 0..n {
            dist[v * n + v] = Some(0);
        }
        Self { n, dist }
    }

    fn get(&self, a: usize, b: usize) -> Option<i64> {
        self.dist[a * self.n + b]
    }

    /// Adds an edge; returns false if it closes a negative cycle.
    fn add(&mut self, e: Edge) -> bool {
        if let Some(back) = self.get(e.to, e.from) {
            if back + e.weight < 0 {
                return false;
            }
        }
        let n = self.n;
        for a in 0..n {
            let Some(da) = self.get(a, e.from) else {
                continue;
            };
            for b in 0..n {
                if let Some(db) = self.get(e.to, b) {
                    let cand = da + e.weight + db;
                    let slot = &mut self.dist[a * n + b];
                    if slot.is_none_or(|cur| cand < cur) {
                        *slot = Some(cand);
                    }
                }
            }
        }
        true
    }
}

struct Search<'a> {
    spec: ArrangementSpec,
    pairs: Vec<(usize, usize)>,
    choices: &'a [Window],
}

impl Search<'_> {
    fn run(
        &self,
        depth: usize,
        closure: &Closure,
        chosen: &mut Vec<Window>,
        out: &mut Vec<Region>,
    ) {
        if depth == self.pairs.len() {
            let region = Region::from_windows(self.spec, chosen.clone())
                .expect("search only reaches feasible assignments");
            out.push(region);
            return;
        }
        let (i, j) = self.pairs[depth];
        let scale = self.spec.n as i64 + 1;
        for &w in self.choices {
            let mut next = closure.clone();
            if window_edges(scale, i, j, w).all(|e| next.add(e)) {
                chosen.push(w);
                self.run(depth + 1, &next, chosen, out);
                chosen.pop();
            }
        }
    }
}

/// Every region, in canonical (lexicographic window) order.
pub fn enumerate_regions(spec: ArrangementSpec) -> Vec<Region> {
    enumerate_regions_sharded(spec, 1)
}

/// Like [`enumerate_regions`], splitting the search over the windows of the
/// first pair across `jobs` worker threads. Output does not depend on `jobs`.
pub fn enumerate_regions_sharded(spec: ArrangementSpec, jobs: usize) -> Vec<Region> {
    let choices = spec.windows();
    let search = Search {
        spec,
        pairs: spec.pairs().collect(),
        choices: &choices,
    };
    let root = Closure::new(spec.n);
    let mut out = Vec::new();
    if jobs <= 1 || search.pairs.is_empty() {
        search.run(0, &root, &mut Vec::new(), &mut out);
    } else {
        let (i, j) = search.pairs[0];
        let scale = spec.n as i64 + 1;
        let shard = |w: &Window| {
            let mut closure = root.clone();
            let mut part = Vec::new();
            if window_edges(scale, i, j, *w).all(|e| closure.add(e)) {
                search.run(1, &closure, &mut vec![*w], &mut part);
            }
            part
        };
        #[cfg(feature = "parallel")]
        let parts = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| choices.par_iter().map(shard).collect::<Vec<_>>()),
            Err(_) => choices.iter().map(shard).collect(),
        };
        #[cfg(not(feature = "parallel"))]
        let parts: Vec<Vec<Region>> = choices.iter().map(shard).collect();
        out = parts.into_iter().flatten().collect();
    }
    out.sort();
    out
}
