//! The `arrange-bij` command line.
//!
//! Exit codes: 0 success, 1 domain error (bad tree, non-parking sequence,
//! infeasible region, failed check), 2 usage error. Diagnostics are one line
//! on stderr.

use std::io::{Read, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arrangement::{enumerate_regions_sharded, ArrangementSpec, Kind, Region};
use crate::catalan_maps::{enumerate_dyck_paths, phi};
use crate::json::{
    pair_to_json, parking_to_json, path_from_json, path_to_json, read_documents, region_from_json,
    region_to_json, tree_from_json, tree_to_json,
};
use crate::rtree::enumerate_rtrees;
use crate::shi_maps::{pak_stanley, psi, psi_inverse};
use crate::verify::{self, Suite};
use crate::Error;

#[derive(Debug, Parser)]
#[command(
    name = "arrange-bij",
    version,
    about = "Regions of r-Shi and r-Catalan arrangements and their bijections"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every object of a family as JSON Lines.
    Enumerate {
        #[arg(value_enum)]
        target: EnumerateTarget,
        #[command(flatten)]
        common: Common,
    },
    /// Apply a forward map to each input record.
    Map {
        #[arg(value_enum)]
        target: MapTarget,
        #[command(flatten)]
        common: Common,
    },
    /// Apply an inverse map to each input record.
    Invert {
        #[arg(value_enum)]
        target: InvertTarget,
        #[command(flatten)]
        common: Common,
    },
    /// Run self-checks and report PASS or FAIL per check.
    Verify {
        #[arg(value_enum)]
        suite: VerifySuite,
        #[command(flatten)]
        common: Common,
    },
    /// Draw each input record.
    Render {
        #[arg(value_enum)]
        target: RenderTarget,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Number of coordinates (labeled vertices, path length).
    #[arg(short = 'n')]
    pub n: Option<usize>,
    #[arg(short = 'r', default_value_t = 1)]
    pub r: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for region enumeration.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// A file path or inline JSON. Read from stdin when absent.
    #[arg(long)]
    pub input: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Ascii,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerateTarget {
    Shi,
    Catalan,
    Trees,
    Paths,
    Parking,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapTarget {
    ShiToTree,
    ShiToParking,
    CatalanToPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InvertTarget {
    TreeToShi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifySuite {
    Counts,
    Bijections,
    Identities,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderTarget {
    TreeDot,
    PathAscii,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("usage error");
            let _ = writeln!(stderr, "{}", line.trim());
            return 2;
        }
    };
    let mut out = String::new();
    let status = match execute(cli.command, stdin, &mut out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    };
    if stdout
        .write_all(out.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
        && status == 0
    {
        return 1;
    }
    status
}

fn require_n(common: &Common) -> Outcome<usize> {
    common
        .n
        .ok_or_else(|| Failure::Usage("this command needs -n".into()))
}

fn require_format(common: &Common, allowed: &[Format]) -> Outcome<Format> {
    if allowed.contains(&common.format) {
        Ok(common.format)
    } else {
        Err(Failure::Usage(format!(
            "--format {} is not available here",
            common
                .format
                .to_possible_value()
                .map_or("?".into(), |v| v.get_name().to_string())
        )))
    }
}

fn read_input(common: &Common, stdin: &mut dyn Read) -> Outcome<Vec<Value>> {
    let text = match &common.input {
        Some(s) if s.trim_start().starts_with(['{', '[']) => s.clone(),
        Some(path) if Path::new(path).is_file() => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?,
        Some(path) => return Err(Failure::Usage(format!("no such input file: {path}"))),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    let docs = read_documents(&text)?;
    // A top-level array is a list of records.
    Ok(docs
        .into_iter()
        .flat_map(|d| match d {
            Value::Array(items) => items,
            other => vec![other],
        })
        .collect())
}

fn push_line(out: &mut String, v: &Value) {
    out.push_str(&v.to_string());
    out.push('\n');
}

fn execute(command: Command, stdin: &mut dyn Read, out: &mut String) -> Outcome<i32> {
    match command {
        Command::Enumerate { target, common } => enumerate(target, &common, out),
        Command::Map { target, common } => {
            require_format(&common, &[Format::Json, Format::Dot])?;
            if common.format == Format::Dot && target != MapTarget::ShiToTree {
                return Err(Failure::Usage(
                    "--format dot only applies to shi-to-tree".into(),
                ));
            }
            for doc in read_input(&common, stdin)? {
                let region = region_from_json(&doc)?;
                match target {
                    MapTarget::ShiToTree => {
                        let tree = psi(&region)?;
                        if common.format == Format::Dot {
                            out.push_str(&tree.to_dot());
                        } else {
                            push_line(out, &tree_to_json(&tree));
                        }
                    }
                    MapTarget::ShiToParking => {
                        push_line(out, &parking_to_json(&pak_stanley(&region)?))
                    }
                    MapTarget::CatalanToPair => {
                        let (pi, path) = phi(&region)?;
                        push_line(out, &pair_to_json(&pi, &path));
                    }
                }
            }
            Ok(0)
        }
        Command::Invert {
            target: InvertTarget::TreeToShi,
            common,
        } => {
            require_format(&common, &[Format::Json])?;
            for doc in read_input(&common, stdin)? {
                push_line(out, &region_to_json(&psi_inverse(&tree_from_json(&doc)?)?));
            }
            Ok(0)
        }
        Command::Verify { suite, common } => {
            require_format(&common, &[Format::Json])?;
            let seed = verify::seed_from_env().map_err(|e| Failure::Usage(e.to_string()))?;
            let opts = verify::Options {
                n: require_n(&common)?,
                r: common.r,
                jobs: common.jobs,
                seed,
            };
            let suite = match suite {
                VerifySuite::Counts => Suite::Counts,
                VerifySuite::Bijections => Suite::Bijections,
                VerifySuite::Identities => Suite::Identities,
                VerifySuite::All => Suite::All,
            };
            let results = verify::run(suite, opts)?;
            for c in &results {
                push_line(
                    out,
                    &json!({
                        "check": c.name,
                        "n": opts.n,
                        "r": opts.r,
                        "status": if c.passed { "PASS" } else { "FAIL" },
                        "detail": c.detail,
                    }),
                );
            }
            Ok(if results.iter().all(|c| c.passed) {
                0
            } else {
                1
            })
        }
        Command::Render { target, common } => {
            // the default json is accepted and means the target's own format
            match target {
                RenderTarget::TreeDot => require_format(&common, &[Format::Json, Format::Dot])?,
                RenderTarget::PathAscii => require_format(&common, &[Format::Json, Format::Ascii])?,
            };
            for doc in read_input(&common, stdin)? {
                match target {
                    RenderTarget::TreeDot => out.push_str(&tree_from_json(&doc)?.to_dot()),
                    RenderTarget::PathAscii => out.push_str(&path_from_json(&doc)?.render_ascii()),
                }
            }
            Ok(0)
        }
    }
}

fn enumerate(target: EnumerateTarget, common: &Common, out: &mut String) -> Outcome<i32> {
    let n = require_n(common)?;
    let r = common.r;
    let regions = |kind| -> Outcome<Vec<Region>> {
        let spec = ArrangementSpec::new(kind, n, r)?;
        Ok(enumerate_regions_sharded(spec, common.jobs))
    };
    match target {
        EnumerateTarget::Shi | EnumerateTarget::Catalan => {
            require_format(common, &[Format::Json])?;
            let kind = if target == EnumerateTarget::Shi {
                Kind::Shi
            } else {
                Kind::Catalan
            };
            for region in regions(kind)? {
                push_line(out, &region_to_json(&region));
            }
        }
        EnumerateTarget::Trees => {
            let format = require_format(common, &[Format::Json, Format::Dot])?;
            ArrangementSpec::shi(n, r)?;
            for tree in enumerate_rtrees(n, r) {
                match format {
                    Format::Dot => out.push_str(&tree.to_dot()),
                    _ => push_line(out, &tree_to_json(&tree)),
                }
            }
        }
        EnumerateTarget::Paths => {
            let format = require_format(common, &[Format::Json, Format::Ascii])?;
            ArrangementSpec::shi(n, r)?;
            for path in enumerate_dyck_paths(n, r) {
                match format {
                    Format::Ascii => {
                        out.push_str(&path.render_ascii());
                        out.push('\n');
                    }
                    _ => push_line(out, &path_to_json(&path)),
                }
            }
        }
        EnumerateTarget::Parking => {
            require_format(common, &[Format::Json])?;
            let mut labels = regions(Kind::Shi)?
                .iter()
                .map(pak_stanley)
                .collect::<crate::Result<Vec<_>>>()?;
            labels.sort_by(|a, b| a.entries().cmp(b.entries()));
            for pf in &labels {
                push_line(out, &parking_to_json(pf));
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("arrange-bij").chain(args.iter().copied());
        let code = run(argv, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn enumerate_counts_lines() {
        let (code, out, _) = call(&["enumerate", "shi", "-n", "3", "-r", "1"], "");
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 16);
        let (_, out, _) = call(&["enumerate", "parking", "-n", "3"], "");
        assert_eq!(out.lines().count(), 16);
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = call(&["enumerate", "shi"], "");
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
        let (code, _, err) = call(&["frobnicate"], "");
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
        let (code, _, _) = call(&["enumerate", "shi", "-n", "2", "--format", "dot"], "");
        assert_eq!(code, 2);
    }

    #[test]
    fn domain_errors_exit_one() {
        let cyclic = r#"{"n":2,"r":1,"fathers":{"v1":["v2"],"v2":["v1"]}}"#;
        let (code, out, err) = call(&["invert", "tree-to-shi"], cyclic);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1);
        let (code, _, _) = call(&["enumerate", "shi", "-n", "0"], "");
        assert_eq!(code, 1);
    }

    #[test]
    fn blue_region_to_tree() {
        let blue = r#"{"kind":"shi","n":3,"r":1,"rep":["1/5","-1/5","0/1"]}"#;
        let (code, out, _) = call(&["map", "shi-to-tree", "--input", blue], "");
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"n\":3,\"r\":1,\"fathers\":{\"v1\":[\"o1\"],\"v2\":[\"v3\"],\"v3\":[\"o1\"]}}\n"
        );
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, err) = call(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("enumerate"));
        assert!(err.is_empty());
    }
}
