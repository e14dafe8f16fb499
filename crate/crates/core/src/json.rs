//! JSON forms of regions, trees, parking functions and Dyck paths.
//!
//! Indices are 1-based on the wire (`"i": 1`, `"v1"`, permutation `[4,3,6,1,2,5]`)
//! and rationals are `"p/q"` strings.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::arrangement::{region_of_point, ArrangementSpec, Kind, Region, Window};
use crate::catalan_maps::{heights_to_path, DyckPath, Permutation};
use crate::rational::{parse, to_pq};
use crate::rtree::{validate, RTree, Vertex};
use crate::shi_maps::ParkingFunction;
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Bound {
    Finite(i64),
    Infinite(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct WindowJson {
    i: usize,
    j: usize,
    lo: Bound,
    hi: Bound,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RegionJson {
    kind: Kind,
    n: usize,
    r: u32,
    #[serde(default)]
    windows: Option<Vec<WindowJson>>,
    #[serde(default)]
    rep: Option<Vec<String>>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn region_to_json(region: &Region) -> Value {
    let spec = region.spec();
    let windows = spec
        .pairs()
        .zip(region.windows())
        .map(|((i, j), w)| WindowJson {
            i: i + 1,
            j: j + 1,
            lo: w.lo.map_or(Bound::Infinite("-inf".into()), Bound::Finite),
            hi: w.hi.map_or(Bound::Infinite("+inf".into()), Bound::Finite),
        })
        .collect();
    let doc = RegionJson {
        kind: spec.kind(),
        n: spec.n(),
        r: spec.r(),
        windows: Some(windows),
        rep: Some(region.representative().iter().map(to_pq).collect()),
    };
    serde_json::to_value(doc).expect("plain data")
}

/// Accepts windows, a representative, or both. With both, the point must lie
/// inside the windows.
pub fn region_from_json(value: &Value) -> Result<Region> {
    let doc: RegionJson = serde_json::from_value(value.clone()).map_err(parse_err)?;
    let spec = ArrangementSpec::new(doc.kind, doc.n, doc.r)?;
    let rep = doc
        .rep
        .map(|xs| xs.iter().map(|s| parse(s)).collect::<Result<Vec<_>>>())
        .transpose()?;
    let windows = match doc.windows {
        None => None,
        Some(list) => {
            let mut slots: Vec<Option<Window>> = vec![None; spec.pair_count()];
            for w in list {
                if !(1 <= w.i && w.i < w.j && w.j <= spec.n()) {
                    return Err(Error::Parse(format!("bad pair ({}, {})", w.i, w.j)));
                }
                let lo = match w.lo {
                    Bound::Finite(v) => Some(v),
                    Bound::Infinite(s) if s == "-inf" => None,
                    Bound::Infinite(s) => {
                        return Err(Error::Parse(format!("bad lower bound {s:?}")))
                    }
                };
                let hi = match w.hi {
                    Bound::Finite(v) => Some(v),
                    Bound::Infinite(s) if s == "+inf" || s == "inf" => None,
                    Bound::Infinite(s) => {
                        return Err(Error::Parse(format!("bad upper bound {s:?}")))
                    }
                };
                let slot = &mut slots[spec.pair_index(w.i - 1, w.j - 1)];
                if slot.replace(Window::new(lo, hi)).is_some() {
                    return Err(Error::Parse(format!(
                        "pair ({}, {}) listed twice",
                        w.i, w.j
                    )));
                }
            }
            if slots.iter().any(Option::is_none) {
                return Err(Error::Parse("every pair needs a window".into()));
            }
            Some(slots.into_iter().flatten().collect::<Vec<_>>())
        }
    };
    match (windows, rep) {
        (Some(w), Some(x)) => Region::with_representative(spec, w, x),
        (Some(w), None) => Region::from_windows(spec, w),
        (None, Some(x)) => region_of_point(spec, &x),
        (None, None) => Err(Error::Parse("region needs windows or rep".into())),
    }
}

pub fn tree_to_json(tree: &RTree) -> Value {
    let mut fathers = Map::new();
    for j in 0..tree.n() {
        let names = tree
            .fathers(j)
            .iter()
            .map(|v| Value::String(v.to_string()))
            .collect();
        fathers.insert(Vertex::Labeled(j).to_string(), Value::Array(names));
    }
    serde_json::json!({ "n": tree.n(), "r": tree.r(), "fathers": fathers })
}

#[derive(Deserialize)]
struct TreeJson {
    n: usize,
    r: u32,
    fathers: Map<String, Value>,
}

pub fn tree_from_json(value: &Value) -> Result<RTree> {
    let doc: TreeJson = serde_json::from_value(value.clone()).map_err(parse_err)?;
    let mut fathers: Vec<Option<Vec<Vertex>>> = vec![None; doc.n];
    for (key, list) in &doc.fathers {
        let idx = match key.parse::<Vertex>()? {
            Vertex::Labeled(i) if i < doc.n => i,
            _ => return Err(Error::Parse(format!("bad vertex key {key:?}"))),
        };
        let names: Vec<String> = serde_json::from_value(list.clone()).map_err(parse_err)?;
        let set = names
            .iter()
            .map(|s| s.parse::<Vertex>())
            .collect::<Result<Vec<_>>>()?;
        fathers[idx] = Some(set);
    }
    let fathers = fathers
        .into_iter()
        .enumerate()
        .map(|(j, f)| f.ok_or_else(|| Error::Parse(format!("missing fathers of v{}", j + 1))))
        .collect::<Result<Vec<_>>>()?;
    validate(doc.n, doc.r, fathers)
}

#[derive(Serialize, Deserialize)]
struct ParkingJson {
    r: u32,
    entries: Vec<u32>,
}

pub fn parking_to_json(pf: &ParkingFunction) -> Value {
    serde_json::to_value(ParkingJson {
        r: pf.r(),
        entries: pf.entries().to_vec(),
    })
    .expect("plain data")
}

pub fn parking_from_json(value: &Value) -> Result<ParkingFunction> {
    let doc: ParkingJson = serde_json::from_value(value.clone()).map_err(parse_err)?;
    ParkingFunction::new(doc.entries, doc.r)
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    n: usize,
    r: u32,
    heights: Vec<i64>,
}

pub fn path_to_json(path: &DyckPath) -> Value {
    serde_json::to_value(PathJson {
        n: path.n(),
        r: path.r(),
        heights: path.heights().iter().map(|&h| i64::from(h)).collect(),
    })
    .expect("plain data")
}

pub fn path_from_json(value: &Value) -> Result<DyckPath> {
    let doc: PathJson = serde_json::from_value(value.clone()).map_err(parse_err)?;
    if doc.heights.len() != doc.n {
        return Err(Error::DimensionMismatch {
            expected: doc.n,
            got: doc.heights.len(),
        });
    }
    heights_to_path(&doc.heights, doc.r)
}

pub fn pair_to_json(pi: &Permutation, path: &DyckPath) -> Value {
    let one_line: Vec<usize> = pi.images().iter().map(|v| v + 1).collect();
    serde_json::json!({ "permutation": one_line, "path": path_to_json(path) })
}

pub fn pair_from_json(value: &Value) -> Result<(Permutation, DyckPath)> {
    let perm: Vec<usize> = value
        .get("permutation")
        .cloned()
        .ok_or_else(|| Error::Parse("missing permutation".into()))
        .and_then(|v| serde_json::from_value(v).map_err(parse_err))?;
    if perm.contains(&0) {
        return Err(Error::Parse("permutation entries are 1-based".into()));
    }
    let pi = Permutation::new(perm.into_iter().map(|v| v - 1).collect())?;
    let path = path_from_json(
        value
            .get("path")
            .ok_or_else(|| Error::Parse("missing path".into()))?,
    )?;
    Ok((pi, path))
}

/// Splits a stream of concatenated JSON documents (JSON Lines included).
pub fn read_documents(input: &str) -> Result<Vec<Value>> {
    serde_json::Deserializer::from_str(input)
        .into_iter::<Value>()
        .map(|v| v.map_err(parse_err))
        .collect()
}
