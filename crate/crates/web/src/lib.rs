//! Browser demo for three coordinates. Regions of `S_3^r` and `C_3^r` live in
//! the plane `a = x1 - x2`, `b = x2 - x3`; they are drawn on a triangular
//! lattice via `X = a + b/2`, `Y = b * sqrt(3)/2`, clipped to `|a|, |b| <= r + 2`.
//!
//! Every export returns a JSON string. Failures come back as `{"error": ...}`.

use arrangebij::json::{
    pair_to_json, parking_to_json, region_to_json, tree_from_json, tree_to_json,
};
use arrangebij::{
    enumerate_regions, pak_stanley, phi, psi, psi_inverse, region_of_point, ArrangementSpec, Kind,
    Rational, Region, Window,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// Closed half-plane `u * a + v * b >= c`.
#[derive(Debug, Clone, Copy)]
struct HalfPlane {
    u: i64,
    v: i64,
    c: Rational,
}

impl HalfPlane {
    fn value(&self, p: &(Rational, Rational)) -> Rational {
        Rational::from_integer(self.u) * p.0 + Rational::from_integer(self.v) * p.1 - self.c
    }
}

fn clip(poly: Vec<(Rational, Rational)>, h: HalfPlane) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for (k, p) in poly.iter().enumerate() {
        let q = &poly[(k + 1) % poly.len()];
        let (fp, fq) = (h.value(p), h.value(q));
        let zero = Rational::from_integer(0);
        if fp >= zero {
            out.push(*p);
        }
        if (fp > zero && fq < zero) || (fp < zero && fq > zero) {
            let t = fp / (fp - fq);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}

fn window_planes(w: Window, u: i64, v: i64) -> impl Iterator<Item = HalfPlane> {
    let lo = w.lo.map(|lo| HalfPlane {
        u,
        v,
        c: Rational::from_integer(lo),
    });
    let hi = w.hi.map(|hi| HalfPlane {
        u: -u,
        v: -v,
        c: Rational::from_integer(-hi),
    });
    lo.into_iter().chain(hi)
}

/// Exact polygon of a three-coordinate region inside the drawing box, in
/// `(a, b)` coordinates.
pub fn polygon(region: &Region) -> Vec<(Rational, Rational)> {
    let bound = Rational::from_integer(region.spec().r() as i64 + 2);
    let mut poly = vec![
        (-bound, -bound),
        (bound, -bound),
        (bound, bound),
        (-bound, bound),
    ];
    let planes = window_planes(region.window(0, 1), 1, 0)
        .chain(window_planes(region.window(0, 2), 1, 1))
        .chain(window_planes(region.window(1, 2), 0, 1));
    for h in planes {
        poly = clip(poly, h);
        if poly.is_empty() {
            break;
        }
    }
    poly.dedup();
    if poly.len() > 1 && poly.first() == poly.last() {
        poly.pop();
    }
    poly
}

fn to_screen(p: &(Rational, Rational)) -> [f64; 2] {
    let f = |x: &Rational| *x.numer() as f64 / *x.denom() as f64;
    let (a, b) = (f(&p.0), f(&p.1));
    [a + b / 2.0, b * SQRT3_2]
}

fn parse_kind(kind: &str) -> Result<Kind, String> {
    match kind {
        "shi" => Ok(Kind::Shi),
        "catalan" => Ok(Kind::Catalan),
        other => Err(format!("unknown arrangement {other:?}")),
    }
}

fn describe(region: &Region) -> Result<Value, String> {
    let mut v = json!({ "region": region_to_json(region) });
    let poly = polygon(region);
    v["polygon"] = json!(poly.iter().map(to_screen).collect::<Vec<_>>());
    match region.spec().kind() {
        Kind::Shi => {
            let tree = psi(region).map_err(|e| e.to_string())?;
            v["tree"] = tree_to_json(&tree);
            v["dot"] = json!(tree.to_dot());
            v["parking"] = parking_to_json(&pak_stanley(region).map_err(|e| e.to_string())?);
        }
        Kind::Catalan => {
            let (pi, path) = phi(region).map_err(|e| e.to_string())?;
            v["pair"] = pair_to_json(&pi, &path);
            v["ascii"] = json!(path.render_ascii());
        }
    }
    Ok(v)
}

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Every region of `S_3^r` or `C_3^r` with its polygon and its image under the
/// matching bijection.
#[wasm_bindgen]
pub fn regions(kind: &str, r: u32) -> String {
    respond((|| {
        let spec = ArrangementSpec::new(parse_kind(kind)?, 3, r).map_err(|e| e.to_string())?;
        let list = enumerate_regions(spec)
            .iter()
            .map(describe)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(json!({ "kind": kind, "r": r, "bound": r + 2, "regions": list }))
    })())
}

/// The region under the screen point `(sx, sy)`.
#[wasm_bindgen]
pub fn region_at(kind: &str, r: u32, sx: f64, sy: f64) -> String {
    respond((|| {
        let spec = ArrangementSpec::new(parse_kind(kind)?, 3, r).map_err(|e| e.to_string())?;
        if !sx.is_finite() || !sy.is_finite() {
            return Err("coordinates must be finite".into());
        }
        const DEN: i64 = 720_720;
        let b = sy / SQRT3_2;
        let a = sx - b / 2.0;
        let exact = |t: f64| Rational::new((t * DEN as f64).round() as i64, DEN);
        let (a, b) = (exact(a), exact(b));
        let x = [a + b, b, Rational::from_integer(0)];
        let region = region_of_point(spec, &x).map_err(|e| e.to_string())?;
        describe(&region)
    })())
}

/// The Shi region whose r-tree is given as `{"n":3,"r":..,"fathers":{..}}`.
#[wasm_bindgen]
pub fn tree_to_region(tree_json: &str) -> String {
    respond((|| {
        let doc: Value = serde_json::from_str(tree_json).map_err(|e| e.to_string())?;
        let tree = tree_from_json(&doc).map_err(|e| e.to_string())?;
        if tree.n() != 3 {
            return Err("the demo draws trees on three labeled vertices".into());
        }
        describe(&psi_inverse(&tree).map_err(|e| e.to_string())?)
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_region_is_the_unit_triangle() {
        let spec = ArrangementSpec::shi(3, 1).unwrap();
        let base = Region::from_windows(spec, vec![Window::bounded(0); 3]).unwrap();
        let poly = polygon(&base);
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        assert_eq!(poly.len(), 3);
        for corner in [(zero, zero), (one, zero), (zero, one)] {
            assert!(poly.contains(&corner), "{poly:?}");
        }
    }

    #[test]
    fn unbounded_regions_are_clipped() {
        let spec = ArrangementSpec::catalan(3, 1).unwrap();
        for region in enumerate_regions(spec) {
            let poly = polygon(&region);
            assert!(poly.len() >= 3, "{region}");
            let k = Rational::from_integer(poly.len() as i64);
            let a = poly.iter().map(|p| p.0).sum::<Rational>() / k;
            let b = poly.iter().map(|p| p.1).sum::<Rational>() / k;
            assert!(
                region.contains(&[a + b, b, Rational::from_integer(0)]),
                "{region}"
            );
        }
    }
}
