use arrangebij_web::{region_at, regions, tree_to_region};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn area(poly: &[Value]) -> f64 {
    let pts: Vec<(f64, f64)> = poly
        .iter()
        .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect();
    let mut twice = 0.0;
    for k in 0..pts.len() {
        let (p, q) = (pts[k], pts[(k + 1) % pts.len()]);
        twice += p.0 * q.1 - q.0 * p.1;
    }
    twice.abs() / 2.0
}

#[test]
fn region_maps_have_expected_sizes() {
    for (kind, r, count) in [
        ("shi", 1, 16),
        ("shi", 2, 49),
        ("catalan", 1, 30),
        ("catalan", 2, 72),
    ] {
        let v = parse(&regions(kind, r));
        assert_eq!(
            v["regions"].as_array().unwrap().len(),
            count,
            "{kind} r={r}"
        );
    }
}

#[test]
fn polygons_tile_the_box() {
    for (kind, r) in [("shi", 1), ("catalan", 2)] {
        let v = parse(&regions(kind, r));
        let b = v["bound"].as_f64().unwrap();
        let total: f64 = v["regions"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| area(g["polygon"].as_array().unwrap()))
            .sum();
        // the box |a|, |b| <= bound is a rhombus of area (2b)^2 sin 60
        let want = 4.0 * b * b * 0.866_025_403_784_438_6;
        assert!((total - want).abs() < 1e-9, "{kind}: {total} vs {want}");
    }
}

#[test]
fn shi_records_carry_tree_and_label() {
    let v = parse(&regions("shi", 1));
    for g in v["regions"].as_array().unwrap() {
        assert!(g["tree"]["fathers"].is_object());
        assert_eq!(g["parking"]["entries"].as_array().unwrap().len(), 3);
        assert!(g["dot"].as_str().unwrap().starts_with("graph"));
    }
    let v = parse(&regions("catalan", 1));
    for g in v["regions"].as_array().unwrap() {
        assert_eq!(g["pair"]["permutation"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn clicking_locates_the_blue_region() {
    // a = 2/5, b = -1/5 for the point (1/5, -1/5, 0)
    let (a, b) = (0.4, -0.2);
    let v = parse(&region_at(
        "shi",
        1,
        a + b / 2.0,
        b * 0.866_025_403_784_438_6,
    ));
    assert_eq!(
        v["tree"].to_string(),
        r#"{"n":3,"r":1,"fathers":{"v1":["o1"],"v2":["v3"],"v3":["o1"]}}"#
    );
    let v = parse(&region_at("shi", 1, 0.0, 0.0));
    assert!(v["error"].as_str().unwrap().contains("hyperplane"));
}

#[test]
fn tree_inverse_round_trip() {
    let green = r#"{"n":3,"r":1,"fathers":{"v1":["o1"],"v2":["v1"],"v3":["v1"]}}"#;
    let v = parse(&tree_to_region(green));
    assert_eq!(v["tree"], parse(green));
    assert_eq!(v["region"]["windows"][2]["lo"], 0);
    assert!(parse(&tree_to_region("{}"))["error"].is_string());
    assert!(parse(&regions("braid", 1))["error"].is_string());
}
