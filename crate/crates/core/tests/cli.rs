use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_arrange-bij"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_shi_emits_sixteen_records() {
    let o = run(
        &["enumerate", "shi", "-n", "3", "-r", "1", "--format", "json"],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<_> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 16);
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["kind"], "shi");
        assert_eq!(v["windows"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn output_is_byte_identical_across_runs_and_shards() {
    let a = run(&["enumerate", "catalan", "-n", "3", "-r", "2"], "");
    let b = run(
        &["enumerate", "catalan", "-n", "3", "-r", "2", "--jobs", "4"],
        "",
    );
    let c = run(&["enumerate", "catalan", "-n", "3", "-r", "2"], "");
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(stdout(&a).lines().count(), 72);
}

#[test]
fn blue_region_maps_to_documented_tree() {
    let blue = r#"{"kind":"shi","n":3,"r":1,"windows":[{"i":1,"j":2,"lo":0,"hi":1},{"i":1,"j":3,"lo":0,"hi":1},{"i":2,"j":3,"lo":"-inf","hi":0}],"rep":["1/5","-1/5","0/1"]}"#;
    let o = run(&["map", "shi-to-tree"], blue);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"n\":3,\"r\":1,\"fathers\":{\"v1\":[\"o1\"],\"v2\":[\"v3\"],\"v3\":[\"o1\"]}}\n"
    );
    let o = run(&["map", "shi-to-parking", "--input", blue], "");
    assert_eq!(stdout(&o), "{\"r\":1,\"entries\":[0,0,1]}\n");
}

#[test]
fn map_and_invert_round_trip_through_pipes() {
    let regions = run(&["enumerate", "shi", "-n", "3", "-r", "2"], "");
    let trees = run(&["map", "shi-to-tree"], &stdout(&regions));
    assert_eq!(stdout(&trees).lines().count(), 49);
    let back = run(&["invert", "tree-to-shi"], &stdout(&trees));
    assert_eq!(back.status.code(), Some(0));
    let strip = |s: String| -> Vec<serde_json::Value> {
        s.lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("rep");
                v
            })
            .collect()
    };
    assert_eq!(strip(stdout(&back)), strip(stdout(&regions)));
}

#[test]
fn catalan_pair_from_file_input() {
    let dir = std::env::temp_dir().join(format!("arrange-bij-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("delta.json");
    std::fs::write(
        &path,
        r#"{"kind":"catalan","n":6,"r":1,"rep":["2","1/2","16/5","17/5","0","5/2"]}"#,
    )
    .unwrap();
    let o = run(
        &["map", "catalan-to-pair", "--input", path.to_str().unwrap()],
        "",
    );
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"permutation\":[4,3,6,1,2,5],\"path\":{\"n\":6,\"r\":1,\"heights\":[0,0,0,2,4,4]}}\n"
    );
}

#[test]
fn renderings() {
    let o = run(
        &["render", "tree-dot"],
        r#"{"n":2,"r":1,"fathers":{"v1":["o1"],"v2":["v1"]}}"#,
    );
    let dot = stdout(&o);
    assert!(dot.starts_with("graph rtree {"));
    assert!(dot.contains("v1 -- v2;"));
    assert!(dot.contains("doublecircle"));
    let o = run(
        &["render", "path-ascii"],
        r#"{"n":2,"r":1,"heights":[0,1]}"#,
    );
    assert_eq!(stdout(&o), "    o\n  o o\no o .\n");
    let o = run(
        &[
            "enumerate",
            "paths",
            "-n",
            "3",
            "-r",
            "1",
            "--format",
            "ascii",
        ],
        "",
    );
    assert_eq!(
        stdout(&o).split("\n\n").filter(|b| !b.is_empty()).count(),
        5
    );
}

#[test]
fn verify_reports_pass() {
    let o = run(&["verify", "all", "-n", "3", "-r", "2"], "");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().count() >= 10);
    assert!(text.lines().all(|l| l.contains("\"status\":\"PASS\"")));
}

#[test]
fn seed_variable_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_arrange-bij"))
        .args(["verify", "identities", "-n", "2"])
        .env("ARRANGE_BIJ_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_arrange-bij"))
        .args(["verify", "identities", "-n", "2"])
        .env("ARRANGE_BIJ_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().contains("seed 17"));
}

#[test]
fn exit_codes_and_single_line_diagnostics() {
    let cases: &[(&[&str], &str, i32)] = &[
        (&["enumerate", "shi"], "", 2),
        (&["enumerate", "nothing", "-n", "2"], "", 2),
        (
            &["map", "shi-to-tree", "--input", "/no/such/file.json"],
            "",
            2,
        ),
        (&["render", "path-ascii", "--format", "dot"], "", 2),
        (
            &["invert", "tree-to-shi"],
            r#"{"n":2,"r":1,"fathers":{"v1":["v2"],"v2":["v1"]}}"#,
            1,
        ),
        (
            &["invert", "tree-to-shi"],
            r#"{"n":2,"r":2,"fathers":{"v1":["o1"],"v2":["o1"]}}"#,
            1,
        ),
        (
            &["map", "shi-to-tree"],
            r#"{"kind":"catalan","n":2,"r":1,"rep":["1/2","0"]}"#,
            1,
        ),
        (
            &["render", "path-ascii"],
            r#"{"n":2,"r":1,"heights":[1,0]}"#,
            1,
        ),
        (&["map", "shi-to-tree"], "{not json", 1),
    ];
    for (args, stdin, code) in cases {
        let o = run(args, stdin);
        assert_eq!(o.status.code(), Some(*code), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}
