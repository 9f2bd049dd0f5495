use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use cograph_retract::absolute::{is_absolute_retract, AbsoluteVerdict};
use cograph_retract::cograph::partitioned::PartitionedInstance;
use cograph_retract::folding::folding_number;
use cograph_retract::format::{format_graph6, parse_vertex_set, GraphFormat};
use cograph_retract::oracle::{self, SearchBudget};
use cograph_retract::reduction::{encode, encode_unchecked, ThreePartitionInstance};
use cograph_retract::{
    build_cotree, classify, fpt_retract, is_homomorphism, partitioned_retract, retract, threshold_retract,
    tp_retract, verify_retract_certificate, Error, Graph, Route, Verdict,
};

#[derive(Parser)]
#[command(name = "cograph-retract", version, about = "Retracts, foldings and absolute retracts of cographs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Solver {
    Auto,
    Threshold,
    Tp,
    Fpt,
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Is H a retract of G? Exit code 0 for yes, 1 for no, 2 on error.
    Retract {
        /// Host graph (.el, .g6 or .ct; other extensions are sniffed).
        g: Option<PathBuf>,
        /// Pattern graph.
        h: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        solver: Solver,
        /// File of vertex ids of G inducing H; the retraction must fix them.
        #[arg(long, value_name = "IDFILE", conflicts_with = "h")]
        partitioned: Option<PathBuf>,
        /// File with one `G H` path pair per line, relative to the file.
        #[arg(long, value_name = "MANIFEST", conflicts_with_all = ["g", "h", "partitioned"])]
        batch: Option<PathBuf>,
    },
    /// Folding number with a verified fold sequence.
    Folding { g: PathBuf },
    /// Is H an absolute retract for cographs?
    Absolute {
        h: PathBuf,
        /// Where to write the counterexample supergraph; format from the extension, edge list otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a 3-partition instance; writes `<PREFIX>_G.ct` and `<PREFIX>_H.ct`.
    Reduce3p {
        instance: PathBuf,
        prefix: PathBuf,
        /// Encode even if the instance violates the range or sum conditions.
        #[arg(long)]
        force: bool,
    },
    /// Threshold, trivially perfect, cograph, or none, with a witness.
    Classify { g: PathBuf },
    /// Exhaustive searches (budget from RETRACT_ORACLE_BUDGET).
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
}

#[derive(Subcommand)]
enum OracleQuery {
    Retract { g: PathBuf, h: PathBuf },
    Hom { g: PathBuf, h: PathBuf },
    Achromatic { g: PathBuf },
    Folding { g: PathBuf },
    Clique { g: PathBuf },
    Chromatic { g: PathBuf },
}

struct Input {
    graph: Graph,
    digest: String,
}

fn load(path: &Path) -> anyhow::Result<Input> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = String::from_utf8(bytes.clone()).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let format = path
        .extension()
        .and_then(|e| e.to_str())
        .and_then(GraphFormat::from_extension)
        .unwrap_or_else(|| GraphFormat::sniff(&text));
    let graph = format.parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(Input {
        graph,
        digest: hex::encode(Sha256::digest(&bytes)),
    })
}

/// Oracle caps: `vertices[,states[,seconds]]`.
fn oracle_budget(base: SearchBudget) -> anyhow::Result<SearchBudget> {
    let Ok(value) = std::env::var("RETRACT_ORACLE_BUDGET") else {
        return Ok(base);
    };
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    let bad = || anyhow!("RETRACT_ORACLE_BUDGET must look like `vertices[,states[,seconds]]`, got {value:?}");
    let mut b = base;
    match parts[..] {
        [v] => b.max_vertices = v.parse().map_err(|_| bad())?,
        [v, s] => {
            b.max_vertices = v.parse().map_err(|_| bad())?;
            b.max_states = s.parse().map_err(|_| bad())?;
        }
        [v, s, t] => {
            b.max_vertices = v.parse().map_err(|_| bad())?;
            b.max_states = s.parse().map_err(|_| bad())?;
            b.time_limit = Some(std::time::Duration::from_secs_f64(t.parse().map_err(|_| bad())?));
        }
        _ => return Err(bad()),
    }
    Ok(b)
}

fn omega(g: &Graph) -> Option<usize> {
    build_cotree(g).ok().map(|t| t.clique_number())
}

/// Exit status and report of one command.
struct Report {
    code: u8,
    body: Value,
}

fn verdict_report(mut body: Value, verdict: &Verdict, g: &Graph, h: &Graph) -> anyhow::Result<Report> {
    if let Some(c) = verdict.certificate() {
        if !verify_retract_certificate(g, h, c) {
            bail!("internal error: certificate failed verification");
        }
    }
    let obj = body.as_object_mut().expect("report is an object");
    obj.insert("verdict".into(), json!(if verdict.is_yes() { "yes" } else { "no" }));
    obj.insert("certificate".into(), json!(verdict.certificate()));
    obj.insert("reason".into(), json!(verdict.reason()));
    obj.insert("omega_g".into(), json!(omega(g)));
    obj.insert("omega_h".into(), json!(omega(h)));
    Ok(Report {
        code: if verdict.is_yes() { 0 } else { 1 },
        body,
    })
}

fn solve(g: &Graph, h: &Graph, solver: Solver) -> anyhow::Result<(Route, Verdict)> {
    Ok(match solver {
        Solver::Auto => retract(g, h)?,
        Solver::Threshold => (Route::Threshold, threshold_retract(g, h)?),
        Solver::Tp => (Route::TriviallyPerfect, tp_retract(g, h)?),
        Solver::Fpt => (Route::Fpt, fpt_retract(g, h)?),
        Solver::Oracle => (
            Route::Oracle,
            oracle::brute_retract(g, h, &oracle_budget(SearchBudget::retract())?)?,
        ),
    })
}

fn cmd_retract(g_path: &Path, h_path: &Path, solver: Solver) -> anyhow::Result<Report> {
    let g = load(g_path)?;
    let h = load(h_path)?;
    let (route, verdict) = solve(&g.graph, &h.graph, solver)?;
    let body = json!({
        "command": "retract",
        "inputs": { "g": g.digest, "h": h.digest },
        "route": route.as_str(),
    });
    verdict_report(body, &verdict, &g.graph, &h.graph)
}

fn cmd_partitioned(g_path: &Path, ids: &Path) -> anyhow::Result<Report> {
    let g = load(g_path)?;
    let id_text = std::fs::read_to_string(ids).with_context(|| format!("reading {}", ids.display()))?;
    let hset = parse_vertex_set(&id_text).with_context(|| format!("parsing {}", ids.display()))?;
    let inst = PartitionedInstance::new(g.graph.clone(), &hset)?;
    let verdict = partitioned_retract(&inst)?;
    let body = json!({
        "command": "retract",
        "inputs": { "g": g.digest, "hset": hex::encode(Sha256::digest(id_text.as_bytes())) },
        "route": Route::Partitioned.as_str(),
        "hset": inst.hset,
    });
    verdict_report(body, &verdict, &g.graph, &inst.pattern())
}

fn cmd_batch(manifest: &Path, solver: Solver) -> anyhow::Result<Report> {
    let text = std::fs::read_to_string(manifest).with_context(|| format!("reading {}", manifest.display()))?;
    let dir = manifest.parent().unwrap_or(Path::new("."));
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [g, h] = parts[..] else {
            bail!("{}: line {}: expected `G H`", manifest.display(), i + 1);
        };
        pairs.push((dir.join(g), dir.join(h)));
    }
    let results: Vec<Report> = pairs
        .par_iter()
        .map(|(g, h)| timed(|| cmd_retract(g, h, solver)))
        .collect();
    let code = results.iter().map(|r| r.code).max().unwrap_or(0);
    let items: Vec<Value> = results.into_iter().map(|r| r.body).collect();
    Ok(Report {
        code,
        body: json!({ "command": "batch", "results": items }),
    })
}

fn cmd_folding(path: &Path) -> anyhow::Result<Report> {
    let g = load(path)?;
    let f = folding_number(&g.graph, &oracle_budget(SearchBudget::folding())?)?;
    if !f.verify(&g.graph) {
        bail!("internal error: fold sequence failed verification");
    }
    Ok(Report {
        code: 0,
        body: json!({
            "command": "folding",
            "inputs": { "g": g.digest },
            "folding_number": f.number,
            "component": f.component,
            "sequence": f.sequence,
            "verified": true,
        }),
    })
}

fn cmd_absolute(path: &Path, out: Option<&Path>) -> anyhow::Result<Report> {
    let h = load(path)?;
    Ok(match is_absolute_retract(&h.graph)? {
        AbsoluteVerdict::Absolute { cliques } => Report {
            code: 0,
            body: json!({
                "command": "absolute",
                "inputs": { "h": h.digest },
                "absolute": true,
                "cliques": cliques,
            }),
        },
        AbsoluteVerdict::NotAbsolute { vertex, supergraph } => {
            if let Some(out) = out {
                let format = out
                    .extension()
                    .and_then(|e| e.to_str())
                    .and_then(GraphFormat::from_extension)
                    .unwrap_or(GraphFormat::EdgeList);
                std::fs::write(out, format.format(&supergraph)?)
                    .with_context(|| format!("writing {}", out.display()))?;
            }
            Report {
                code: 1,
                body: json!({
                    "command": "absolute",
                    "inputs": { "h": h.digest },
                    "absolute": false,
                    "vertex": vertex,
                    "counterexample": format_graph6(&supergraph),
                    "written": out.map(|p| p.display().to_string()),
                }),
            }
        }
    })
}

fn cmd_reduce3p(path: &Path, prefix: &Path, force: bool) -> anyhow::Result<Report> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let inst: ThreePartitionInstance = text.parse().with_context(|| format!("parsing {}", path.display()))?;
    let violations: Vec<String> = inst.validate().iter().map(|v| v.to_string()).collect();
    let e = if force { encode_unchecked(&inst) } else { encode(&inst)? };
    let name = |side: &str| {
        let mut p = prefix.as_os_str().to_owned();
        p.push(format!("_{side}.ct"));
        PathBuf::from(p)
    };
    let (gp, hp) = (name("G"), name("H"));
    std::fs::write(&gp, format!("{}\n", e.g)).with_context(|| format!("writing {}", gp.display()))?;
    std::fs::write(&hp, format!("{}\n", e.h)).with_context(|| format!("writing {}", hp.display()))?;
    Ok(Report {
        code: 0,
        body: json!({
            "command": "reduce3p",
            "inputs": { "instance": hex::encode(Sha256::digest(text.as_bytes())) },
            "m": inst.m,
            "bound": inst.bound,
            "triples": e.triples.len(),
            "degenerate": e.degenerate,
            "violations": violations,
            "vertices_g": e.g.vertex_count(),
            "vertices_h": e.h.vertex_count(),
            "files": [gp.display().to_string(), hp.display().to_string()],
        }),
    })
}

fn cmd_classify(path: &Path) -> anyhow::Result<Report> {
    let g = load(path)?;
    let class = classify(&g.graph)?;
    let cotree = build_cotree(&g.graph).ok();
    Ok(Report {
        code: 0,
        body: json!({
            "command": "classify",
            "inputs": { "g": g.digest },
            "class": class,
            "vertices": g.graph.vertex_count(),
            "edges": g.graph.edge_count(),
            "omega": cotree.as_ref().map(|t| t.clique_number()),
            "cotree": cotree.map(|t| t.to_string()),
        }),
    })
}

fn cmd_oracle(query: &OracleQuery) -> anyhow::Result<Report> {
    let number = |name: &str, g: &Input, value: usize| Report {
        code: 0,
        body: json!({ "command": "oracle", "query": name, "inputs": { "g": g.digest }, "value": value }),
    };
    Ok(match query {
        OracleQuery::Retract { g, h } => return cmd_retract(g, h, Solver::Oracle),
        OracleQuery::Hom { g, h } => {
            let (g, h) = (load(g)?, load(h)?);
            let m = oracle::brute_hom(&g.graph, &h.graph, &oracle_budget(SearchBudget::retract())?)?;
            if let Some(m) = &m {
                if !is_homomorphism(&g.graph, &h.graph, m.as_slice()) {
                    bail!("internal error: homomorphism failed verification");
                }
            }
            Report {
                code: if m.is_some() { 0 } else { 1 },
                body: json!({
                    "command": "oracle",
                    "query": "hom",
                    "inputs": { "g": g.digest, "h": h.digest },
                    "verdict": if m.is_some() { "yes" } else { "no" },
                    "map": m,
                }),
            }
        }
        OracleQuery::Achromatic { g } => {
            let g = load(g)?;
            let (psi, coloring) = oracle::brute_achromatic(&g.graph, &oracle_budget(SearchBudget::achromatic())?)?;
            let mut r = number("achromatic", &g, psi);
            r.body["coloring"] = json!(coloring);
            r
        }
        OracleQuery::Folding { g } => {
            let g = load(g)?;
            let f = oracle::brute_folding_number(&g.graph, &oracle_budget(SearchBudget::folding())?)?;
            let mut r = number("folding", &g, f.number);
            r.body["component"] = json!(f.component);
            r.body["sequence"] = json!(f.sequence);
            r
        }
        OracleQuery::Clique { g } => {
            let g = load(g)?;
            let v = oracle::brute_clique(&g.graph)?;
            number("clique", &g, v)
        }
        OracleQuery::Chromatic { g } => {
            let g = load(g)?;
            let v = oracle::brute_chromatic(&g.graph)?;
            number("chromatic", &g, v)
        }
    })
}

/// Runs a command, turning failures into an error report with code 2 and
/// adding the elapsed time.
fn timed(f: impl FnOnce() -> anyhow::Result<Report>) -> Report {
    let start = Instant::now();
    let mut r = f().unwrap_or_else(|e| {
        let mut body = json!({ "error": format!("{e:#}") });
        if let Some(Error::NotCograph(p4)) = e.downcast_ref::<Error>() {
            body["p4"] = json!(p4);
        }
        Report { code: 2, body }
    });
    r.body["millis"] = json!(start.elapsed().as_millis() as u64);
    r
}

fn run(cli: Cli) -> Report {
    timed(|| match &cli.command {
        Command::Retract {
            g,
            h,
            solver,
            partitioned,
            batch,
        } => match (g, h, partitioned, batch) {
            (_, _, _, Some(m)) => cmd_batch(m, *solver),
            (Some(g), None, Some(ids), None) => cmd_partitioned(g, ids),
            (Some(g), Some(h), None, None) => cmd_retract(g, h, *solver),
            _ => bail!("retract needs `G H`, `G --partitioned IDFILE`, or `--batch MANIFEST`"),
        },
        Command::Folding { g } => cmd_folding(g),
        Command::Absolute { h, out } => cmd_absolute(h, out.as_deref()),
        Command::Reduce3p { instance, prefix, force } => cmd_reduce3p(instance, prefix, *force),
        Command::Classify { g } => cmd_classify(g),
        Command::Oracle { query } => cmd_oracle(query),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Deep cotrees recurse in the solvers.
    let report = thread::Builder::new()
        .stack_size(512 << 20)
        .spawn(move || run(cli))
        .expect("spawn worker")
        .join()
        .unwrap_or_else(|_| Report {
            code: 2,
            body: json!({ "error": "solver panicked" }),
        });
    if let Some(e) = report.body.get("error").and_then(Value::as_str) {
        eprintln!("error: {e}");
    }
    // A closed pipe downstream is not our failure.
    let _ = writeln!(std::io::stdout().lock(), "{}", report.body);
    ExitCode::from(report.code)
}
