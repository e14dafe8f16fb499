//! Self-checks run by `arrange-bij verify`.
//!
//! Counting checks compare against tables embedded below rather than formulas.
//! Random points come from a ChaCha stream seeded by `ARRANGE_BIJ_SEED`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{
    enumerate_regions_sharded, region_of_point, ArrangementSpec, Region, Window,
};
use crate::catalan_maps::{enumerate_dyck_paths, fuss_catalan, phi, DyckPath, Permutation};
use crate::cubic::{
    catalan_cubic, check_linear_facts, check_sign_relations, shi_cubic, sign_tensor,
};
use crate::rational::{int, Rational};
use crate::rtree::{enumerate_rtrees, validate, RTree, Vertex};
use crate::shi_maps::{is_parking_function, pak_stanley, psi, psi_inverse};
use crate::{Error, Kind, Result};

pub const SEED_VAR: &str = "ARRANGE_BIJ_SEED";
pub const DEFAULT_SEED: u64 = 20_240_601;

const RANDOM_POINTS: usize = 1000;
const JITTERS: usize = 20;

// (n, r, |R(S_n^r)|, |R(C_n^r)|, r-Dyck paths of length n)
const COUNTS: &[(usize, u32, u64, u64, u64)] = &[
    (1, 1, 1, 1, 1),
    (2, 1, 3, 4, 2),
    (3, 1, 16, 30, 5),
    (4, 1, 125, 336, 14),
    (5, 1, 1296, 5040, 42),
    (6, 1, 16807, 95040, 132),
    (1, 2, 1, 1, 1),
    (2, 2, 5, 6, 3),
    (3, 2, 49, 72, 12),
    (4, 2, 729, 1320, 55),
    (5, 2, 14641, 32760, 273),
    (6, 2, 371293, 1028160, 1428),
    (1, 3, 1, 1, 1),
    (2, 3, 7, 8, 4),
    (3, 3, 100, 132, 22),
    (4, 3, 2197, 3360, 140),
    (5, 3, 65536, 116280, 969),
    (6, 3, 2476099, 5100480, 7084),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Counts,
    Bijections,
    Identities,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub n: usize,
    pub r: u32,
    pub jobs: usize,
    pub seed: u64,
}

/// Reads `ARRANGE_BIJ_SEED`, falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| {
            Error::Parse(format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))
        }),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

pub fn table_counts(n: usize, r: u32) -> Option<(u64, u64, u64)> {
    COUNTS
        .iter()
        .find(|c| c.0 == n && c.1 == r)
        .map(|c| (c.2, c.3, c.4))
}

/// A rational with numerator in `[-60, 60]` and denominator in `[1, 12]`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-60..=60), rng.gen_range(1..=12))
}

pub fn random_point<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng)).collect()
}

/// A point near the representative, moved by less than half the slack in
/// each coordinate, so every difference stays in its window.
pub fn jitter<R: Rng>(region: &Region, rng: &mut R) -> Vec<Rational> {
    let rep = region.representative();
    let Some(slack) = region.slack() else {
        return rep.iter().map(|x| x + random_rational(rng)).collect();
    };
    let step = slack / int(2);
    rep.iter()
        .map(|x| x + step * Rational::new(rng.gen_range(-999..=999), 1000))
        .collect()
}

struct Context {
    opts: Options,
    shi: Option<Vec<Region>>,
    catalan: Option<Vec<Region>>,
}

impl Context {
    fn spec(&self, kind: Kind) -> Result<ArrangementSpec> {
        ArrangementSpec::new(kind, self.opts.n, self.opts.r)
    }

    fn regions(&mut self, kind: Kind) -> Result<&[Region]> {
        let spec = self.spec(kind)?;
        let jobs = self.opts.jobs;
        let slot = match kind {
            Kind::Shi => &mut self.shi,
            Kind::Catalan => &mut self.catalan,
        };
        Ok(slot.get_or_insert_with(|| enumerate_regions_sharded(spec, jobs)))
    }
}

pub fn run(suite: Suite, opts: Options) -> Result<Vec<CheckResult>> {
    ArrangementSpec::shi(opts.n, opts.r)?;
    let mut cx = Context {
        opts,
        shi: None,
        catalan: None,
    };
    let mut out = Vec::new();
    if matches!(suite, Suite::Counts | Suite::All) {
        out.extend(counts(&mut cx)?);
    }
    if matches!(suite, Suite::Bijections | Suite::All) {
        out.extend(bijections(&mut cx)?);
    }
    if matches!(suite, Suite::Identities | Suite::All) {
        out.extend(identities(&mut cx)?);
    }
    Ok(out)
}

fn compare(name: &str, got: u64, want: u64) -> CheckResult {
    CheckResult::new(name, got == want, format!("got {got}, expected {want}"))
}

fn counts(cx: &mut Context) -> Result<Vec<CheckResult>> {
    let (n, r) = (cx.opts.n, cx.opts.r);
    let (shi, catalan, paths) = table_counts(n, r).ok_or(Error::NoTableEntry { n, r })?;
    let mut out = vec![
        compare(
            "counts.shi_regions",
            cx.regions(Kind::Shi)?.len() as u64,
            shi,
        ),
        compare(
            "counts.catalan_regions",
            cx.regions(Kind::Catalan)?.len() as u64,
            catalan,
        ),
        compare("counts.rtrees", enumerate_rtrees(n, r).len() as u64, shi),
    ];
    let brute = enumerate_dyck_paths(n, r).len() as u64;
    let formula = fuss_catalan(n, r);
    out.push(CheckResult::new(
        "counts.dyck_paths",
        brute == paths && formula == u128::from(paths),
        format!("enumerated {brute}, formula {formula}, expected {paths}"),
    ));
    Ok(out)
}

fn bijections(cx: &mut Context) -> Result<Vec<CheckResult>> {
    let (n, r) = (cx.opts.n, cx.opts.r);
    let trees = enumerate_rtrees(n, r);
    let regions = cx.regions(Kind::Shi)?.to_vec();
    let mut out = Vec::new();

    let images: Vec<RTree> = regions.iter().map(psi).collect::<Result<_>>()?;
    let distinct: BTreeSet<&RTree> = images.iter().collect();
    let expected: BTreeSet<&RTree> = trees.iter().collect();
    out.push(CheckResult::new(
        "bijections.psi",
        distinct.len() == regions.len() && distinct == expected,
        format!(
            "{} regions, {} distinct trees, {} r-trees",
            regions.len(),
            distinct.len(),
            trees.len()
        ),
    ));

    let mut bad = 0usize;
    let mut empty = 0usize;
    for (region, tree) in regions.iter().zip(&images) {
        match psi_inverse(tree) {
            Ok(back) if &back == region => {}
            Ok(_) => bad += 1,
            Err(Error::EmptyFiber { .. }) => empty += 1,
            Err(e) => return Err(e),
        }
    }
    for tree in &trees {
        match psi_inverse(tree) {
            Ok(region) if psi(&region)? == *tree => {}
            Ok(_) => bad += 1,
            Err(Error::EmptyFiber { .. }) => empty += 1,
            Err(e) => return Err(e),
        }
    }
    out.push(CheckResult::new(
        "bijections.psi_inverse",
        bad == 0 && empty == 0,
        format!("{bad} mismatched round trips, {empty} empty fibers"),
    ));

    let labels: Vec<Vec<u32>> = regions
        .iter()
        .map(|g| pak_stanley(g).map(|pf| pf.entries().to_vec()))
        .collect::<Result<_>>()?;
    let valid = labels.iter().filter(|l| is_parking_function(l, r)).count();
    let distinct: HashSet<&Vec<u32>> = labels.iter().collect();
    let (want, _, _) = table_counts(n, r).unwrap_or((regions.len() as u64, 0, 0));
    out.push(CheckResult::new(
        "bijections.pak_stanley",
        valid == labels.len() && distinct.len() == labels.len() && labels.len() as u64 == want,
        format!(
            "{} labels, {} distinct, {} valid",
            labels.len(),
            distinct.len(),
            valid
        ),
    ));

    let catalan = cx.regions(Kind::Catalan)?;
    let pairs: Vec<(Permutation, DyckPath)> = catalan.iter().map(phi).collect::<Result<_>>()?;
    let distinct: BTreeSet<&(Permutation, DyckPath)> = pairs.iter().collect();
    let mut classes: BTreeMap<&Permutation, usize> = BTreeMap::new();
    for (pi, _) in &pairs {
        *classes.entry(pi).or_default() += 1;
    }
    let c = fuss_catalan(n, r);
    let all_perms = Permutation::all(n).len();
    let paths: BTreeSet<DyckPath> = enumerate_dyck_paths(n, r).into_iter().collect();
    let onto = pairs.iter().all(|(_, p)| paths.contains(p));
    out.push(CheckResult::new(
        "bijections.phi",
        distinct.len() == pairs.len()
            && onto
            && classes.len() == all_perms
            && classes.values().all(|&k| k as u128 == c),
        format!(
            "{} regions, {} distinct pairs, {} permutation classes of size {}",
            pairs.len(),
            distinct.len(),
            classes.len(),
            c
        ),
    ));
    Ok(out)
}

fn identities(cx: &mut Context) -> Result<Vec<CheckResult>> {
    let (n, r) = (cx.opts.n, cx.opts.r);
    let mut rng = ChaCha8Rng::seed_from_u64(cx.opts.seed);
    let mut out = Vec::new();

    let failures = (0..RANDOM_POINTS)
        .filter(|_| !check_linear_facts(&random_point(&mut rng, n), r))
        .count();
    out.push(CheckResult::new(
        "identities.linear",
        failures == 0,
        format!(
            "{failures} of {RANDOM_POINTS} random points violate an identity (seed {})",
            cx.opts.seed
        ),
    ));

    let shi = cx.regions(Kind::Shi)?.to_vec();
    let mut violations = 0usize;
    for region in &shi {
        if !check_sign_relations(region)? {
            violations += 1;
        }
    }
    out.push(CheckResult::new(
        "identities.sign_relations",
        violations == 0,
        format!(
            "{violations} of {} regions violate a sign relation",
            shi.len()
        ),
    ));

    let catalan = cx.regions(Kind::Catalan)?.to_vec();
    let mut drift = 0usize;
    let mut total = 0usize;
    for region in shi.iter().chain(&catalan) {
        let want = sign_tensor(region);
        for _ in 0..JITTERS {
            let x = jitter(region, &mut rng);
            let got = match region.spec().kind() {
                Kind::Shi => shi_cubic(&x, r).signs(),
                Kind::Catalan => catalan_cubic(&x, r).signs(),
            };
            total += 1;
            if got != want || !region.contains(&x) {
                drift += 1;
            }
        }
    }
    out.push(CheckResult::new(
        "identities.jitter",
        drift == 0,
        format!("{drift} of {total} jittered points changed sign tensor"),
    ));

    out.extend(golden()?);
    Ok(out)
}

/// Fixed worked examples, independent of `n` and `r`.
pub fn golden() -> Result<Vec<CheckResult>> {
    let q = Rational::new;
    let mut out = Vec::new();

    let spec = ArrangementSpec::shi(3, 1)?;
    let blue = region_of_point(spec, &[q(1, 5), q(-1, 5), int(0)])?;
    let matrix = shi_cubic(blue.representative(), 1);
    let printed = [
        [int(0), q(-3, 5), q(-4, 5)],
        [q(-2, 5), int(0), q(-6, 5)],
        [q(-1, 5), q(1, 5), int(0)],
    ];
    let entries_ok = (0..3).all(|i| (0..3).all(|j| matrix.entry(i, j, 1) == printed[i][j]));
    let tree = psi(&blue)?;
    let want = validate(
        3,
        1,
        vec![
            vec![Vertex::Root(0)],
            vec![Vertex::Labeled(2)],
            vec![Vertex::Root(0)],
        ],
    )?;
    out.push(CheckResult::new(
        "golden.shi_tree",
        entries_ok && tree == want,
        format!(
            "matrix entries {}, fathers {}",
            if entries_ok { "match" } else { "differ" },
            tree
        ),
    ));

    let green = validate(
        3,
        1,
        vec![
            vec![Vertex::Root(0)],
            vec![Vertex::Labeled(0)],
            vec![Vertex::Labeled(0)],
        ],
    )?;
    let omega = psi_inverse(&green)?;
    let want = [
        Window::new(Some(1), None),
        Window::new(Some(1), None),
        Window::bounded(0),
    ];
    out.push(CheckResult::new(
        "golden.shi_inverse",
        omega.windows() == want,
        format!("region {omega}"),
    ));

    let spec = ArrangementSpec::catalan(6, 1)?;
    let x = [q(2, 1), q(1, 2), q(16, 5), q(17, 5), int(0), q(5, 2)];
    let delta = region_of_point(spec, &x)?;
    let (pi, path) = phi(&delta)?;
    out.push(CheckResult::new(
        "golden.catalan_pair",
        pi.to_string() == "436125" && path.heights() == [0, 0, 0, 2, 4, 4],
        format!("permutation {pi}, heights {:?}", path.heights()),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(n: usize, r: u32) -> Options {
        Options {
            n,
            r,
            jobs: 1,
            seed: DEFAULT_SEED,
        }
    }

    #[test]
    fn all_checks_pass_small() {
        for (n, r) in [(2, 1), (3, 1), (2, 2)] {
            for c in run(Suite::All, opts(n, r)).unwrap() {
                assert!(c.passed, "{} failed at n={n} r={r}: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn golden_examples() {
        for c in golden().unwrap() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn table_lookup() {
        assert_eq!(table_counts(4, 2), Some((729, 1320, 55)));
        assert_eq!(table_counts(7, 1), None);
        assert!(matches!(
            run(Suite::Counts, opts(7, 1)),
            Err(Error::NoTableEntry { n: 7, r: 1 })
        ));
    }

    #[test]
    fn jitter_stays_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let spec = ArrangementSpec::catalan(3, 2).unwrap();
        for region in enumerate_regions_sharded(spec, 1) {
            for _ in 0..5 {
                assert!(region.contains(&jitter(&region, &mut rng)));
            }
        }
    }
}
