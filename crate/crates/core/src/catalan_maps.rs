//! The r-Catalan side: a region maps to the permutation sorting its points
//! together with an r-Dyck path whose heights count positive entries in the
//! column slices of `D_x`.

use std::fmt;
use std::str::FromStr;

use crate::arrangement::{region_of_point, Kind, Region};
use crate::cubic::{col_positive_count, sign_tensor};
use crate::{Error, Result};

/// One-line notation, 0-based internally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Parse(format!("not a permutation: {images:?}")));
            }
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, v)| i == *v)
    }

    /// `π(x) = (x_π(1), ..., x_π(n))`.
    pub fn apply<T: Clone>(&self, x: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| x[i].clone()).collect()
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = vec![Permutation(cur.clone())];
        // next lexicographic permutation
        loop {
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Permutation(cur.clone()));
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() >= 10 { " " } else { "" };
        let parts: Vec<String> = self.0.iter().map(|v| (v + 1).to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `436125` or space separated `4 3 6 1 2 5`, 1-based.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a permutation: {s:?}"));
        let digits: Vec<usize> = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        if digits.contains(&0) {
            return Err(bad());
        }
        Permutation::new(digits.into_iter().map(|d| d - 1).collect())
    }
}

/// An r-Dyck path of length `n`, stored by its height sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    r: u32,
    heights: Vec<u32>,
}

impl DyckPath {
    pub fn n(&self) -> usize {
        self.heights.len()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    /// Step word over `E` and `N`, `n + rn` letters.
    pub fn steps(&self) -> String {
        let mut out = String::with_capacity(self.n() * (self.r as usize + 1));
        let mut y = 0;
        for &h in &self.heights {
            out.extend(std::iter::repeat_n('N', (h - y) as usize));
            out.push('E');
            y = h;
        }
        let top = self.r * self.n() as u32;
        out.extend(std::iter::repeat_n('N', (top - y) as usize));
        out
    }

    /// Reads a step word back; the path must end at `(n, rn)` and never rise
    /// above `y = rx`.
    pub fn from_steps(word: &str, r: u32) -> Result<Self> {
        let (mut x, mut y) = (0u32, 0u32);
        let mut heights = Vec::new();
        for c in word.chars() {
            match c {
                'E' => {
                    heights.push(y);
                    x += 1;
                }
                'N' => {
                    y += 1;
                    if y > r * x {
                        return Err(Error::Parse(format!("path {word} rises above y = {r}x")));
                    }
                }
                _ => return Err(Error::Parse(format!("unexpected step {c:?}"))),
            }
        }
        if y != r * x {
            return Err(Error::Parse(format!(
                "path {word} does not end on y = {r}x"
            )));
        }
        heights_to_path(
            &heights.iter().map(|&h| i64::from(h)).collect::<Vec<_>>(),
            r,
        )
    }

    /// Lattice points from `y = rn` down to `0`: `o` on the path, `/` on the
    /// line `y = rx`, `.` strictly below it.
    pub fn render_ascii(&self) -> String {
        let n = self.n() as u32;
        let mut on_path = vec![(0u32, 0u32)];
        let (mut x, mut y) = (0, 0);
        for c in self.steps().chars() {
            if c == 'E' {
                x += 1;
            } else {
                y += 1;
            }
            on_path.push((x, y));
        }
        let mut out = String::new();
        for row in (0..=self.r * n).rev() {
            let cells: Vec<char> = (0..=n)
                .map(|col| {
                    if on_path.contains(&(col, row)) {
                        'o'
                    } else if row == self.r * col {
                        '/'
                    } else if row < self.r * col {
                        '.'
                    } else {
                        ' '
                    }
                })
                .collect();
            let line: String = cells
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.steps())
    }
}

pub fn heights_to_path(h: &[i64], r: u32) -> Result<DyckPath> {
    let mut heights = Vec::with_capacity(h.len());
    for (i, &height) in h.iter().enumerate() {
        let bound = i64::from(r) * i as i64;
        if height < 0 || height > bound {
            return Err(Error::HeightBound {
                index: i,
                height,
                bound,
            });
        }
        if i > 0 && height < h[i - 1] {
            return Err(Error::NotMonotone { index: i });
        }
        heights.push(height as u32);
    }
    Ok(DyckPath { r, heights })
}

pub fn path_to_heights(path: &DyckPath) -> Vec<i64> {
    path.heights.iter().map(|&h| i64::from(h)).collect()
}

fn require_catalan(region: &Region) -> Result<()> {
    if region.spec().kind() == Kind::Catalan {
        Ok(())
    } else {
        Err(Error::WrongKind {
            expected: "catalan",
        })
    }
}

/// The permutation listing coordinates in decreasing order, decided by the
/// windows of the `x_i = x_j` hyperplanes.
pub fn sort_permutation(region: &Region) -> Result<Permutation> {
    require_catalan(region)?;
    let n = region.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if region.window(a, b).lo.is_some_and(|lo| lo >= 0) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    Permutation::new(order)
}

pub fn phi(region: &Region) -> Result<(Permutation, DyckPath)> {
    let pi = sort_permutation(region)?;
    let sorted = region_of_point(region.spec(), &pi.apply(region.representative()))?;
    let s = sign_tensor(&sorted);
    let heights: Vec<i64> = (0..region.n())
        .map(|j| col_positive_count(&s, j) as i64)
        .collect();
    let path = heights_to_path(&heights, region.spec().r())?;
    Ok((pi, path))
}

/// `binom(rn + n, n) / (rn + 1)`.
pub fn fuss_catalan(n: usize, r: u32) -> u128 {
    let n = n as u128;
    let m = u128::from(r) * n + n;
    let mut binom: u128 = 1;
    for i in 1..=n {
        binom = binom * (m - n + i) / i;
    }
    binom / (u128::from(r) * n + 1)
}

/// Every r-Dyck path of length `n`, lexicographic in the height sequence.
pub fn enumerate_dyck_paths(n: usize, r: u32) -> Vec<DyckPath> {
    fn go(i: usize, n: usize, r: u32, cur: &mut Vec<u32>, out: &mut Vec<DyckPath>) {
        if i == n {
            out.push(DyckPath {
                r,
                heights: cur.clone(),
            });
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for h in lo..=r * i as u32 {
            cur.push(h);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::with_capacity(n), &mut out);
    out
}
