//! Cubic matrices `C_x` (Shi) and `D_x` (Catalan) and their sign tensors.
//!
//! Entry `(i, j, k)` has the form `x_i - x_j - offset(i, j, k)`: for the Shi
//! flavor the offset is `k` above the diagonal and `k - 1` below it, for the
//! Catalan flavor it is `k` everywhere. Diagonal entries are zero.

use std::fmt;

use crate::arrangement::{Kind, Region};
use crate::rational::{int, to_pq, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn of(x: &Rational) -> Self {
        match x.cmp(&int(0)) {
            std::cmp::Ordering::Less => Sign::Minus,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Plus,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Zero => '0',
            Sign::Plus => '+',
        }
    }
}

/// Integer offset in entry `(i, j, k)`; `k` is 1-based.
pub fn entry_offset(flavor: Kind, i: usize, j: usize, k: u32) -> i64 {
    let k = i64::from(k);
    match flavor {
        Kind::Shi if i > j => k - 1,
        _ => k,
    }
}

fn slot(n: usize, r: u32, i: usize, j: usize, k: u32) -> usize {
    assert!(
        i < n && j < n && (1..=r).contains(&k),
        "cubic index out of range"
    );
    (i * n + j) * r as usize + (k as usize - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicMatrix {
    flavor: Kind,
    n: usize,
    r: u32,
    entries: Vec<Rational>,
}

impl CubicMatrix {
    fn build(flavor: Kind, x: &[Rational], r: u32) -> Self {
        let n = x.len();
        let mut entries = Vec::with_capacity(n * n * r as usize);
        for i in 0..n {
            for j in 0..n {
                for k in 1..=r {
                    entries.push(if i == j {
                        int(0)
                    } else {
                        x[i] - x[j] - int(entry_offset(flavor, i, j, k))
                    });
                }
            }
        }
        Self {
            flavor,
            n,
            r,
            entries,
        }
    }

    pub fn flavor(&self) -> Kind {
        self.flavor
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn entry(&self, i: usize, j: usize, k: u32) -> Rational {
        self.entries[slot(self.n, self.r, i, j, k)]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, k: u32, value: Rational) {
        let s = slot(self.n, self.r, i, j, k);
        self.entries[s] = value;
    }

    /// Entries `(j, k, value)` of the `i`-th row slice.
    pub fn row_slice(&self, i: usize) -> impl Iterator<Item = (usize, u32, Rational)> + '_ {
        (0..self.n).flat_map(move |j| (1..=self.r).map(move |k| (j, k, self.entry(i, j, k))))
    }

    /// Entries `(i, k, value)` of the `j`-th column slice.
    pub fn column_slice(&self, j: usize) -> impl Iterator<Item = (usize, u32, Rational)> + '_ {
        (0..self.n).flat_map(move |i| (1..=self.r).map(move |k| (i, k, self.entry(i, j, k))))
    }

    pub fn signs(&self) -> SignTensor {
        SignTensor {
            flavor: self.flavor,
            n: self.n,
            r: self.r,
            signs: self.entries.iter().map(Sign::of).collect(),
        }
    }

    /// Checks the six additive identities between entries of a Shi cubic
    /// matrix, over all `a > b > c` and depths `s + t <= r`.
    pub fn satisfies_linear_facts(&self) -> bool {
        let e = |i, j, k| self.entry(i, j, k);
        for a in 0..self.n {
            for b in 0..a {
                for c in 0..b {
                    for s in 1..self.r {
                        for t in 1..=(self.r - s) {
                            let ok = e(a, b, s) + e(b, c, t) == e(a, c, s + t - 1)
                                && e(a, c, s) + e(c, b, t) == e(a, b, s + t)
                                && e(c, a, s) + e(a, b, t) == e(c, b, s + t - 1)
                                && e(c, b, s) + e(b, a, t) == e(c, a, s + t)
                                && e(b, c, s) + e(c, a, t) == e(b, a, s + t - 1)
                                && e(b, a, s) + e(a, c, t) == e(b, c, s + t);
                            if !ok {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// `r` square blocks of `p/q` strings, one block per depth.
    pub fn render(&self) -> String {
        render_blocks(self.n, self.r, |i, j, k| to_pq(&self.entry(i, j, k)))
    }
}

impl fmt::Display for CubicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn render_blocks(n: usize, r: u32, cell: impl Fn(usize, usize, u32) -> String) -> String {
    let mut out = String::new();
    for k in 1..=r {
        if k > 1 {
            out.push('\n');
        }
        out.push_str(&format!("k={k}\n"));
        let rows: Vec<Vec<String>> = (0..n)
            .map(|i| (0..n).map(|j| cell(i, j, k)).collect())
            .collect();
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(0);
        for row in rows {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn shi_cubic(x: &[Rational], r: u32) -> CubicMatrix {
    CubicMatrix::build(Kind::Shi, x, r)
}

pub fn catalan_cubic(x: &[Rational], r: u32) -> CubicMatrix {
    CubicMatrix::build(Kind::Catalan, x, r)
}

pub fn check_linear_facts(x: &[Rational], r: u32) -> bool {
    shi_cubic(x, r).satisfies_linear_facts()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignTensor {
    flavor: Kind,
    n: usize,
    r: u32,
    signs: Vec<Sign>,
}

impl SignTensor {
    pub fn flavor(&self) -> Kind {
        self.flavor
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn get(&self, i: usize, j: usize, k: u32) -> Sign {
        self.signs[slot(self.n, self.r, i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: u32, sign: Sign) {
        let s = slot(self.n, self.r, i, j, k);
        self.signs[s] = sign;
    }

    pub fn positive_count(&self) -> usize {
        self.signs.iter().filter(|s| **s == Sign::Plus).count()
    }

    pub fn render(&self) -> String {
        render_blocks(self.n, self.r, |i, j, k| {
            self.get(i, j, k).symbol().to_string()
        })
    }
}

impl fmt::Display for SignTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Sign pattern of the region's cubic matrix, read off the windows alone.
///
/// Entry `(i, j, k)` is positive iff `x_i - x_j` lies above `offset(i, j, k)`,
/// which the window of `x_i - x_j` decides because that offset is always one of
/// its thresholds.
pub fn sign_tensor(region: &Region) -> SignTensor {
    let spec = region.spec();
    let (n, r, flavor) = (spec.n(), spec.r(), spec.kind());
    let mut signs = Vec::with_capacity(n * n * r as usize);
    for i in 0..n {
        for j in 0..n {
            for k in 1..=r {
                if i == j {
                    signs.push(Sign::Zero);
                    continue;
                }
                let w = region.window(i, j);
                let c = entry_offset(flavor, i, j, k);
                signs.push(if w.lo.is_some_and(|lo| lo >= c) {
                    Sign::Plus
                } else if w.hi.is_some_and(|hi| hi <= c) {
                    Sign::Minus
                } else {
                    unreachable!("offset {c} is interior to window {w}")
                });
            }
        }
    }
    SignTensor {
        flavor,
        n,
        r,
        signs,
    }
}

/// Position `(p, q)` of a minimal positive entry in a column slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColumnMinimum {
    pub row: usize,
    pub depth: u32,
}

/// `Ok(None)` when the whole column slice is nonpositive.
pub fn min_positive_in_column(c: &CubicMatrix, j: usize) -> Result<Option<ColumnMinimum>> {
    if j >= c.n {
        return Err(Error::IndexOutOfRange { index: j, n: c.n });
    }
    let zero = int(0);
    let mut best: Option<(Rational, ColumnMinimum)> = None;
    let mut tied = false;
    for (i, k, v) in c.column_slice(j) {
        if v <= zero {
            continue;
        }
        match &best {
            Some((m, _)) if v > *m => {}
            Some((m, _)) if v == *m => tied = true,
            _ => {
                best = Some((v, ColumnMinimum { row: i, depth: k }));
                tied = false;
            }
        }
    }
    if tied {
        return Err(Error::TieOnMinimum { column: j });
    }
    Ok(best.map(|(_, pos)| pos))
}

/// Column minima for every column of the region's Shi cubic matrix.
pub fn column_minima(region: &Region) -> Result<Vec<Option<ColumnMinimum>>> {
    if region.spec().kind() != Kind::Shi {
        return Err(Error::WrongKind { expected: "shi" });
    }
    let c = shi_cubic(region.representative(), region.spec().r());
    (0..c.n).map(|j| min_positive_in_column(&c, j)).collect()
}

pub fn row_positive_count(s: &SignTensor, i: usize) -> usize {
    (0..s.n)
        .flat_map(|j| (1..=s.r).map(move |k| (j, k)))
        .filter(|&(j, k)| s.get(i, j, k) == Sign::Plus)
        .count()
}

pub fn col_positive_count(s: &SignTensor, j: usize) -> usize {
    (0..s.n)
        .flat_map(|i| (1..=s.r).map(move |k| (i, k)))
        .filter(|&(i, k)| s.get(i, j, k) == Sign::Plus)
        .count()
}

/// The four-way sign relation between column `j` and the row of its minimal
/// positive entry. The triple `(i, j, p)` is even for the cyclic orders
/// `i<j<p`, `p<i<j`, `j<p<i` and odd for the other three.
pub fn sign_relations_hold(s: &SignTensor, minima: &[Option<ColumnMinimum>]) -> bool {
    for (j, m) in minima.iter().enumerate() {
        let Some(ColumnMinimum { row: p, depth: q }) = *m else {
            continue;
        };
        for i in (0..s.n).filter(|&i| i != j && i != p) {
            let even = (i < j && j < p) || (p < i && i < j) || (j < p && p < i);
            for k in 1..=s.r {
                let expected = match (even, q <= k, q >= k) {
                    (true, true, _) => s.get(i, p, k - q + 1),
                    (true, false, _) => s.get(p, i, q - k).flip(),
                    (false, _, true) => s.get(p, i, q - k + 1).flip(),
                    (false, _, false) => s.get(i, p, k - q),
                };
                if s.get(i, j, k) != expected {
                    return false;
                }
            }
        }
    }
    true
}

pub fn check_sign_relations(region: &Region) -> Result<bool> {
    let minima = column_minima(region)?;
    Ok(sign_relations_hold(&sign_tensor(region), &minima))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{enumerate_regions, region_of_point, ArrangementSpec};

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn blue_point() -> Vec<Rational> {
        vec![q(1, 5), q(-1, 5), int(0)]
    }

    #[test]
    fn shi_matrix_of_blue_point() {
        let c = shi_cubic(&blue_point(), 1);
        let expected = [
            [int(0), q(-3, 5), q(-4, 5)],
            [q(-2, 5), int(0), q(-6, 5)],
            [q(-1, 5), q(1, 5), int(0)],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert_eq!(c.entry(i, j, 1), *want, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn shi_two_depths() {
        let c = shi_cubic(&[q(3, 2), int(0)], 2);
        assert_eq!(c.entry(0, 1, 1), q(1, 2));
        assert_eq!(c.entry(0, 1, 2), q(-1, 2));
        assert_eq!(c.entry(1, 0, 1), q(-3, 2));
        assert_eq!(c.entry(1, 0, 2), q(-5, 2));
        assert_eq!(c.entry(1, 1, 2), int(0));
    }

    #[test]
    fn catalan_entries() {
        let d = catalan_cubic(&[int(2), int(0)], 1);
        assert_eq!(d.entry(0, 1, 1), int(1));
        assert_eq!(d.entry(1, 0, 1), int(-3));
        assert_eq!(d.entry(0, 0, 1), int(0));
    }

    #[test]
    fn minima_of_blue_columns() {
        let c = shi_cubic(&blue_point(), 1);
        assert_eq!(
            min_positive_in_column(&c, 1).unwrap(),
            Some(ColumnMinimum { row: 2, depth: 1 })
        );
        assert_eq!(min_positive_in_column(&c, 0).unwrap(), None);
        assert_eq!(min_positive_in_column(&c, 2).unwrap(), None);

        let single = shi_cubic(&[int(5)], 3);
        assert_eq!(min_positive_in_column(&single, 0).unwrap(), None);
    }

    #[test]
    fn tie_is_an_error() {
        // x = (1/2, 1/2, 0): both x1 - x3 and x2 - x3 equal, a point on x1 = x2
        let c = shi_cubic(&[q(3, 2), q(3, 2), int(0)], 1);
        assert_eq!(
            min_positive_in_column(&c, 2),
            Err(Error::TieOnMinimum { column: 2 })
        );
    }

    #[test]
    fn blue_sign_pattern_and_counts() {
        let spec = ArrangementSpec::shi(3, 1).unwrap();
        let blue = region_of_point(spec, &blue_point()).unwrap();
        let s = sign_tensor(&blue);
        assert_eq!(s, shi_cubic(&blue_point(), 1).signs());
        assert_eq!(s.positive_count(), 1);
        assert_eq!(s.get(2, 1, 1), Sign::Plus);
        let rows: Vec<usize> = (0..3).map(|i| row_positive_count(&s, i)).collect();
        assert_eq!(rows, vec![0, 0, 1]);
    }

    #[test]
    fn row_counts_partition_positives() {
        let spec = ArrangementSpec::shi(3, 2).unwrap();
        for region in enumerate_regions(spec) {
            let s = sign_tensor(&region);
            let by_row: usize = (0..3).map(|i| row_positive_count(&s, i)).sum();
            let by_col: usize = (0..3).map(|j| col_positive_count(&s, j)).sum();
            assert_eq!(by_row, s.positive_count());
            assert_eq!(by_col, s.positive_count());
        }
    }

    #[test]
    fn base_region_all_negative() {
        let spec = ArrangementSpec::shi(4, 2).unwrap();
        let base = region_of_point(spec, &[q(3, 5), q(2, 5), q(1, 5), int(0)]).unwrap();
        let s = sign_tensor(&base);
        assert_eq!(s.positive_count(), 0);
        for i in 0..4 {
            for j in 0..4 {
                for k in 1..=2 {
                    let want = if i == j { Sign::Zero } else { Sign::Minus };
                    assert_eq!(s.get(i, j, k), want);
                }
            }
        }
    }

    #[test]
    fn linear_facts_and_mutation() {
        let x = [q(1, 3), q(-7, 4), int(2), q(5, 6)];
        assert!(check_linear_facts(&x[..3], 1));
        assert!(check_linear_facts(&x, 3));
        let mut c = shi_cubic(&x, 3);
        c.set_entry(2, 1, 1, c.entry(2, 1, 1) + q(1, 100));
        assert!(!c.satisfies_linear_facts());
    }

    #[test]
    fn sign_relations_on_small_shi() {
        for r in 1..=2 {
            let spec = ArrangementSpec::shi(3, r).unwrap();
            for region in enumerate_regions(spec) {
                assert!(check_sign_relations(&region).unwrap(), "{region}");
            }
        }
    }

    #[test]
    fn flipped_sign_breaks_relations() {
        let spec = ArrangementSpec::shi(3, 1).unwrap();
        let blue = region_of_point(spec, &blue_point()).unwrap();
        let minima = column_minima(&blue).unwrap();
        let mut s = sign_tensor(&blue);
        assert!(sign_relations_hold(&s, &minima));
        // (1, 2, p_2 = 3) is even with q = k = 1: Sgn c_121 = Sgn c_131
        s.set(0, 1, 1, s.get(0, 1, 1).flip());
        assert!(!sign_relations_hold(&s, &minima));
    }

    #[test]
    fn render_blocks_layout() {
        let c = shi_cubic(&[int(1), int(0)], 2);
        let text = c.render();
        assert!(text.starts_with("k=1\n"));
        assert!(text.contains("\nk=2\n"));
        assert_eq!(text.lines().count(), 7);
        let s = c.signs().render();
        assert!(s.contains("0 -"));
    }
}
