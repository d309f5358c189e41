//! `surfrep` command line: every command writes one JSON report to stdout.
//!
//! Exit codes: 0 all checks pass, 1 some check fails, 2 bad input.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{propagate, Seed, SubjectTags};
use crate::certificate::{certify_instance, Instance};
use crate::error::Error;
use crate::exec::Execution;
use crate::facewidth::{shortest_noncontractible, FaceWidth, MapFile};
use crate::families::{generate, verify_batch, Check, FamilySpec};
use crate::piece::PlanarPiece;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "surfrep", version, about = "Representativity certificates, face-width and invariant bounds")]
pub struct Cli {
    /// Machine-readable JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the multicurve of a family member, e.g. `exactly:4,2`.
    Generate { spec: String },
    /// Check intersection counts, components and representativity of family members.
    Verify {
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// Certify a lower bound on hand-encoded planar pieces.
    Certify {
        file: PathBuf,
        /// Bound to certify; overrides `n` in the file.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Genus and face-width of an embedded graph given by a rotation system.
    Facewidth { file: PathBuf },
    /// Propagate invariant bounds from tags and seed facts.
    Bounds {
        /// `name` or `name=params`, e.g. `torus_knot=3,5`.
        #[arg(long = "tag")]
        tags: Vec<String>,
        /// `attr=v`, `attr=lo..hi` or `attr=lo..`.
        #[arg(long = "seed")]
        seeds: Vec<String>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub result: Value,
    pub verdict: Verdict,
    /// Wall-clock data; the only field that varies between identical runs.
    pub timing: Timing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Timing {
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

struct Partial {
    inputs: Value,
    checks: Vec<Check>,
    result: Value,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_instance(path: &PathBuf, n: Option<u64>) -> Result<Instance, String> {
    let raw: Value = read_json(path)?;
    let (file_n, pieces) = match raw {
        Value::Array(_) => (None, raw),
        Value::Object(mut o) => (
            o.get("n").and_then(Value::as_u64),
            o.remove("pieces").ok_or("instance file has no \"pieces\"")?,
        ),
        _ => return Err("instance file must be an object or a list of pieces".into()),
    };
    let pieces: Vec<PlanarPiece> =
        serde_json::from_value(pieces).map_err(|e| format!("{}: {e}", path.display()))?;
    if pieces.is_empty() {
        return Err("instance has no pieces".into());
    }
    let n = n.or(file_n).ok_or("no bound given: pass --n or put \"n\" in the file")?;
    Ok(Instance { n, pieces })
}

fn verify(specs: &[String], exec: Execution) -> Result<Partial, String> {
    let parsed: Vec<FamilySpec> = specs
        .iter()
        .map(|s| s.parse().map_err(|e: Error| e.to_string()))
        .collect::<Result<_, _>>()?;
    let reports = verify_batch(&parsed, exec)
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let checks = reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(move |c| Check {
                name: format!("{}: {}", r.spec, c.name),
                ..c.clone()
            })
        })
        .collect();
    Ok(Partial {
        inputs: json!({ "specs": specs }),
        checks,
        result: serde_json::to_value(&reports).expect("reports serialize"),
    })
}

fn certify(file: &PathBuf, n: Option<u64>, exec: Execution) -> Result<Partial, String> {
    let inst = parse_instance(file, n)?;
    let cert = certify_instance(&inst, exec).map_err(|e| e.to_string())?;
    let mut checks = Vec::new();
    for p in &cert.pieces {
        if let Some(l) = p.loop_min {
            checks.push(Check::new(format!("{} loop", p.id), format!(">= {}", cert.n), l, l >= cert.n));
        }
        if let Some(a) = p.arc_min {
            checks.push(Check::new(format!("{} arc", p.id), format!(">= {}/2", cert.n), a, 2 * a >= cert.n));
        }
    }
    checks.push(Check::new("lower bound", true, cert.lower_ok, cert.lower_ok));
    Ok(Partial {
        inputs: json!({ "file": file.display().to_string(), "n": inst.n }),
        checks,
        result: serde_json::to_value(&cert).expect("certificate serializes"),
    })
}

fn facewidth(file: &PathBuf, exec: Execution) -> Result<Partial, String> {
    let mf: MapFile = read_json(file)?;
    let map = mf.to_map().map_err(|e| e.to_string())?;
    let genus = map.genus().map_err(|e| e.to_string())?;
    let shortest = shortest_noncontractible(&map, exec).map_err(|e| e.to_string())?;
    let width = match &shortest {
        None => FaceWidth::Infinite,
        Some((_, cycle)) => FaceWidth::Finite(cycle.len() as u64 / 2),
    };
    let mut checks = Vec::new();
    if let Some((radial, cycle)) = &shortest {
        let pieces = radial.cut(cycle).map_err(|e| e.to_string())?.len();
        let null = radial.is_null_homologous(cycle);
        checks.push(Check::new(
            "cut pieces vs homology",
            "non-separating iff not null-homologous",
            format!("{pieces} piece(s), null-homologous: {null}"),
            (pieces == 1) != null,
        ));
    }
    Ok(Partial {
        inputs: json!({ "file": file.display().to_string() }),
        checks,
        result: json!({
            "vertices": map.num_vertices(),
            "edges": map.num_edges(),
            "faces": map.faces().len(),
            "genus": genus,
            "face_width": width,
        }),
    })
}

fn bounds(tags: &[String], seeds: &[String]) -> Result<Partial, String> {
    let t = SubjectTags::parse(tags).map_err(|e| e.to_string())?;
    let s: Vec<Seed> = seeds
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, Error>>()
        .map_err(|e| e.to_string())?;
    let inputs = json!({ "tags": tags, "seeds": seeds });
    Ok(match propagate(&t, &s) {
        Ok(facts) => Partial {
            inputs,
            checks: vec![Check::new("consistent", true, true, true)],
            result: serde_json::to_value(&facts).expect("facts serialize"),
        },
        Err(Error::Contradiction { attr, detail, chain }) => Partial {
            inputs,
            checks: vec![Check::new("consistent", true, false, false)],
            result: json!({ "contradiction": { "attr": attr, "detail": detail, "chain": chain } }),
        },
        Err(e) => return Err(e.to_string()),
    })
}

fn pretty(report: &RunReport) -> String {
    let mut out = String::new();
    writeln!(out, "{} ({:?})", report.command, report.verdict).unwrap();
    if !report.checks.is_empty() {
        let w = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &report.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            writeln!(out, "  {mark} {:w$}  expected {}  got {}", c.name, c.expected, c.actual).unwrap();
        }
    }
    match report.result.get("facts").and_then(Value::as_object) {
        Some(facts) => {
            for (attr, f) in facts {
                let end = |side: &str| f[side]["value"].as_str().unwrap_or("inf").to_string();
                let from = |side: &str| {
                    f[side]["from"]
                        .as_array()
                        .map(|a| a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(" > "))
                        .unwrap_or_default()
                };
                writeln!(
                    out,
                    "  {attr:10} [{}, {}]  lo: {}  hi: {}",
                    end("lo"),
                    end("hi"),
                    from("lo"),
                    from("hi")
                )
                .unwrap();
            }
        }
        None => writeln!(out, "{}", serde_json::to_string_pretty(&report.result).unwrap()).unwrap(),
    }
    out
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::input_error(text.trim_start_matches("error: ").trim_end())
            };
        }
    };
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::best_available()
    };
    let start = Instant::now();
    let (name, partial) = match &cli.command {
        Command::Generate { spec } => {
            let mc = spec.parse::<FamilySpec>().and_then(generate);
            return match mc {
                Ok(mc) => Outcome {
                    code: 0,
                    stdout: if cli.pretty {
                        format!("{mc}\n")
                    } else {
                        format!("{}\n", serde_json::to_string(&mc).expect("multicurve serializes"))
                    },
                    stderr: String::new(),
                },
                Err(e) => Outcome::input_error(e),
            };
        }
        Command::Verify { specs } => ("verify", verify(specs, exec)),
        Command::Certify { file, n } => ("certify", certify(file, *n, exec)),
        Command::Facewidth { file } => ("facewidth", facewidth(file, exec)),
        Command::Bounds { tags, seeds } => ("bounds", bounds(tags, seeds)),
    };
    let partial = match partial {
        Ok(p) => p,
        Err(e) => return Outcome::input_error(e),
    };
    let pass = partial.checks.iter().all(|c| c.pass);
    let report = RunReport {
        schema: SCHEMA_VERSION,
        command: name.to_string(),
        inputs: partial.inputs,
        checks: partial.checks,
        result: partial.result,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        timing: Timing {
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    };
    let failing: String = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("failed: {} (expected {}, got {})\n", c.name, c.expected, c.actual))
        .collect();
    Outcome {
        code: if pass { 0 } else { 1 },
        stdout: if cli.pretty {
            pretty(&report)
        } else {
            format!("{}\n", serde_json::to_string(&report).expect("report serializes"))
        },
        stderr: failing,
    }
}
