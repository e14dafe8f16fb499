//! Maps out of the r-Shi arrangement: regions to r-trees and back, and the
//! Pak-Stanley labeling by r-parking functions.

use std::fmt;

use crate::arrangement::{enumerate_regions, feasible, ArrangementSpec, Kind, Region, Window};
use crate::cubic::{column_minima, row_positive_count, sign_tensor, ColumnMinimum};
use crate::rational::{int, Rational};
use crate::rtree::{validate, RTree, Vertex};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParkingFunction {
    r: u32,
    entries: Vec<u32>,
}

impl ParkingFunction {
    pub fn new(entries: Vec<u32>, r: u32) -> Result<Self> {
        if is_parking_function(&entries, r) {
            Ok(Self { r, entries })
        } else {
            Err(Error::NotParking)
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }
}

impl fmt::Display for ParkingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Sorted entries must satisfy `a_i <= r (i - 1)`.
pub fn is_parking_function(seq: &[u32], r: u32) -> bool {
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .enumerate()
        .all(|(i, &a)| u64::from(a) <= u64::from(r) * i as u64)
}

fn require_shi(region: &Region) -> Result<()> {
    if region.spec().kind() == Kind::Shi {
        Ok(())
    } else {
        Err(Error::WrongKind { expected: "shi" })
    }
}

/// Father sets built from column minima: `f(v_j) = (o1..or)` when column `j`
/// is nonpositive, otherwise `f(v_p)` minus its `q`-th element, then `v_p`.
fn tree_from_minima(n: usize, r: u32, minima: &[Option<ColumnMinimum>]) -> Result<RTree> {
    fn tuple(
        j: usize,
        r: u32,
        minima: &[Option<ColumnMinimum>],
        memo: &mut [Option<Vec<Vertex>>],
        guard: usize,
    ) -> Vec<Vertex> {
        if let Some(t) = &memo[j] {
            return t.clone();
        }
        assert!(guard <= minima.len(), "column minima form a cycle");
        let t = match minima[j] {
            None => (0..r).map(Vertex::Root).collect(),
            Some(ColumnMinimum { row, depth }) => {
                let mut t = tuple(row, r, minima, memo, guard + 1);
                t.remove(depth as usize - 1);
                t.push(Vertex::Labeled(row));
                t
            }
        };
        memo[j] = Some(t.clone());
        t
    }
    let mut memo = vec![None; n];
    let fathers = (0..n).map(|j| tuple(j, r, minima, &mut memo, 0)).collect();
    validate(n, r, fathers)
}

/// The r-tree of a Shi region, read from the minimal positive entries of the
/// column slices of its cubic matrix.
pub fn psi(region: &Region) -> Result<RTree> {
    require_shi(region)?;
    let minima = column_minima(region)?;
    tree_from_minima(region.n(), region.spec().r(), &minima)
}

/// Parent vertex of each column for `r = 1`, using the plain `n × n` matrix
/// with entries `x_i - x_j - 1` above and `x_i - x_j` below the diagonal.
pub fn psi_classic(region: &Region) -> Result<Vec<Option<usize>>> {
    require_shi(region)?;
    if region.spec().r() != 1 {
        return Err(Error::WrongKind {
            expected: "shi with r = 1",
        });
    }
    let x = region.representative();
    let n = x.len();
    let a = |i: usize, j: usize| -> Rational {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => x[i] - x[j] - int(1),
            std::cmp::Ordering::Equal => int(0),
            std::cmp::Ordering::Greater => x[i] - x[j],
        }
    };
    (0..n)
        .map(|j| {
            let mut best: Option<(Rational, usize)> = None;
            let mut tied = false;
            for i in 0..n {
                let v = a(i, j);
                if v <= int(0) {
                    continue;
                }
                match best {
                    Some((m, _)) if v > m => {}
                    Some((m, _)) if v == m => tied = true,
                    _ => {
                        best = Some((v, i));
                        tied = false;
                    }
                }
            }
            if tied {
                Err(Error::TieOnMinimum { column: j })
            } else {
                Ok(best.map(|(_, i)| i))
            }
        })
        .collect()
}

/// Pak-Stanley label: `λ_i` counts the positive entries of row slice `i`.
pub fn pak_stanley(region: &Region) -> Result<ParkingFunction> {
    require_shi(region)?;
    let s = sign_tensor(region);
    let entries = (0..region.n())
        .map(|i| row_positive_count(&s, i) as u32)
        .collect();
    ParkingFunction::new(entries, region.spec().r())
}

pub fn tree_to_parking(tree: &RTree) -> Result<ParkingFunction> {
    pak_stanley(&psi_inverse(tree)?)
}

/// Region of the r-Shi arrangement whose r-tree is `tree`.
///
/// Removes the childless vertex `v_j'` of smallest index and inverts the
/// smaller tree to a region `D'`. The answer is then the unique lift of `D'`
/// mapping to `tree`: the windows of pairs not involving `j'` are copied from
/// `D'` and those involving `j'` are searched depth first, pruned by
/// feasibility.
///
/// Solving for `x_j'` over a fixed representative of `D'` is not enough, since
/// the projection of the answer can be a proper subset of `D'` that misses the
/// representative.
pub fn psi_inverse(tree: &RTree) -> Result<Region> {
    let spec = ArrangementSpec::shi(tree.n(), tree.r())?;
    if tree.n() == 1 {
        return Region::from_windows(spec, Vec::new());
    }
    let leaf = tree.childless()[0];
    let sub = psi_inverse(&tree.remove_childless(leaf)?)?;
    let shrink = |i: usize| if i > leaf { i - 1 } else { i };

    let mut slots: Vec<Option<Window>> = vec![None; spec.pair_count()];
    let mut open = Vec::new();
    for (idx, (i, j)) in spec.pairs().enumerate() {
        if i == leaf || j == leaf {
            open.push(idx);
        } else {
            slots[idx] = Some(sub.window(shrink(i), shrink(j)));
        }
    }
    let choices = spec.windows();
    lift(spec, tree, &choices, &open, &mut slots)?.ok_or(Error::EmptyFiber { vertex: leaf })
}

fn lift(
    spec: ArrangementSpec,
    tree: &RTree,
    choices: &[Window],
    open: &[usize],
    slots: &mut [Option<Window>],
) -> Result<Option<Region>> {
    let Some((&idx, rest)) = open.split_first() else {
        let windows = slots.iter().map(|w| w.expect("complete")).collect();
        let region = Region::from_windows(spec, windows)?;
        return Ok((psi(&region)? == *tree).then_some(region));
    };
    for &w in choices {
        slots[idx] = Some(w);
        if feasible(spec, slots)? {
            if let Some(found) = lift(spec, tree, choices, rest, slots)? {
                return Ok(Some(found));
            }
        }
    }
    slots[idx] = None;
    Ok(None)
}

/// Reference inverse: scan every region for the one mapping to `tree`.
pub fn psi_inverse_exhaustive(tree: &RTree) -> Result<Region> {
    let spec = ArrangementSpec::shi(tree.n(), tree.r())?;
    enumerate_regions(spec)
        .into_iter()
        .find(|region| psi(region).as_ref() == Ok(tree))
        .ok_or(Error::EmptyFiber { vertex: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::region_of_point;
    use crate::cubic::Sign;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn o(i: u32) -> Vertex {
        Vertex::Root(i - 1)
    }

    fn v(i: usize) -> Vertex {
        Vertex::Labeled(i - 1)
    }

    fn blue() -> Region {
        region_of_point(
            ArrangementSpec::shi(3, 1).unwrap(),
            &[q(1, 5), q(-1, 5), int(0)],
        )
        .unwrap()
    }

    #[test]
    fn blue_region_tree() {
        let t = psi(&blue()).unwrap();
        assert_eq!(t.fathers(0), &[o(1)]);
        assert_eq!(t.fathers(1), &[v(3)]);
        assert_eq!(t.fathers(2), &[o(1)]);
        assert_eq!(psi_classic(&blue()).unwrap(), vec![None, Some(2), None]);
    }

    #[test]
    fn base_region_maps_to_roots() {
        for r in 1..=3 {
            let spec = ArrangementSpec::shi(4, r).unwrap();
            let base = Region::from_windows(spec, vec![Window::bounded(0); 6]).unwrap();
            let t = psi(&base).unwrap();
            assert!((0..4).all(|j| t.has_root_fathers(j)));
            assert_eq!(psi_inverse(&t).unwrap(), base);
            assert_eq!(pak_stanley(&base).unwrap().entries(), &[0, 0, 0, 0]);
        }
    }

    #[test]
    fn green_tree_inverse() {
        let green = validate(3, 1, vec![vec![o(1)], vec![v(1)], vec![v(1)]]).unwrap();
        let omega = psi_inverse(&green).unwrap();
        assert_eq!(
            omega.windows(),
            &[
                Window::new(Some(1), None),
                Window::new(Some(1), None),
                Window::bounded(0)
            ]
        );
        let s = sign_tensor(&omega);
        assert_eq!(s.get(0, 1, 1), Sign::Plus);
        assert_eq!(s.get(0, 2, 1), Sign::Plus);
        for (i, j) in [(1, 0), (1, 2), (2, 0), (2, 1)] {
            assert_eq!(s.get(i, j, 1), Sign::Minus);
        }
        assert_eq!(psi(&omega).unwrap(), green);
    }

    #[test]
    fn blue_label() {
        assert_eq!(pak_stanley(&blue()).unwrap().entries(), &[0, 0, 1]);
    }

    #[test]
    fn parking_predicate() {
        assert!(is_parking_function(&[0, 0, 0], 1));
        assert!(is_parking_function(&[0, 0, 0], 4));
        assert!(is_parking_function(&[1, 0, 0], 1));
        assert!(!is_parking_function(&[1, 1, 1], 1));
        assert!(is_parking_function(&[0, 2, 4], 2));
        assert!(is_parking_function(&[4, 0, 2], 2));
        assert!(!is_parking_function(&[0, 3, 4], 1));
        assert!(ParkingFunction::new(vec![2, 2], 1).is_err());
    }

    #[test]
    fn all_root_tree_label() {
        let t = validate(3, 1, vec![vec![o(1)]; 3]).unwrap();
        assert_eq!(tree_to_parking(&t).unwrap().entries(), &[0, 0, 0]);
    }

    #[test]
    fn catalan_region_rejected() {
        let spec = ArrangementSpec::catalan(2, 1).unwrap();
        let region = region_of_point(spec, &[q(1, 2), int(0)]).unwrap();
        assert!(matches!(psi(&region), Err(Error::WrongKind { .. })));
        assert!(pak_stanley(&region).is_err());
    }

    #[test]
    fn round_trip_small() {
        for r in 1..=2 {
            let spec = ArrangementSpec::shi(3, r).unwrap();
            for region in enumerate_regions(spec) {
                let t = psi(&region).unwrap();
                assert_eq!(psi_inverse(&t).unwrap(), region);
            }
        }
    }
}
