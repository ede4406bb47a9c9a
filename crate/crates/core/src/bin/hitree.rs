use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hitree::certificates::{degree2_violation, find_bad_path, verify_structure, verify_w_configuration, WConfig};
use hitree::generators::GenSpec;
use hitree::io::{parse_edge_pairs, read_graph, to_edge_list, to_graph6, write_graph, Format};
use hitree::oracle::{
    all_trees_satisfy, count_spanning_trees, exists_tree_satisfying, for_each_spanning_tree, sample_trees_satisfy,
    EnumStatus, EnumerationBudget, OracleResult, TreePredicate, Verdict,
};
use hitree::reduction::{find_structure, high_degree_set, ReductionError};
use hitree::report::{Fingerprint, RunReport, Status};
use hitree::structure::{find_star_cover, w_configuration_at, StarCover};
use hitree::synthesis::{build_good_tree, build_tree_no_adjacent_deg2, grow_star_tree, SynthesisError, MIN_STAR_SIZE};
use hitree::{Edge, Graph, Tree};

#[derive(Parser, Debug)]
#[command(name = "hitree", version, about = "Spanning trees close to homeomorphically irreducible")]
struct Cli {
    /// Graph file format; defaults to the file extension (.g6 or edge list).
    #[arg(long, value_enum, global = true)]
    format: Option<FormatArg>,
    /// Seed for random families and tree sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, env = "HITREE_BUDGET_TREES", default_value_t = EnumerationBudget::DEFAULT_TREES)]
    budget_trees: u64,
    #[arg(long, global = true, env = "HITREE_BUDGET_SECONDS", default_value_t = EnumerationBudget::DEFAULT_SECONDS)]
    budget_seconds: f64,
    #[arg(long, value_enum, global = true, default_value = "text")]
    report: ReportArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    G6,
    El,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::G6 => Format::Graph6,
            FormatArg::El => Format::EdgeList,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportArg {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    GoodTree,
    NoAdjacentDeg2,
    StarGrow,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Check {
    Good,
    Deg2Independent,
    WConfig,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a named graph or family member.
    Generate {
        family: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        leaves: Option<u64>,
        /// Output file; the graph goes into the report when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a spanning tree.
    Build {
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Star cover for star-grow: `embedded` (the `.cover` file written
        /// next to a generated graph) or a JSON file. Searched for if absent.
        #[arg(long)]
        cover: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a tree or configuration against a graph.
    Verify {
        input: PathBuf,
        /// Tree edge list, or a JSON configuration for `w-config`.
        witness: PathBuf,
        #[arg(long, value_enum)]
        check: Check,
    },
    /// Find a reducible structure (cycle, path or configuration).
    Structure {
        input: PathBuf,
        /// `auto` (degree at least 4), `auto+centres`, or a comma-separated id list.
        #[arg(long = "s", default_value = "auto")]
        s: String,
    },
    /// Brute-force checks over all spanning trees.
    #[command(group(ArgGroup::new("query").required(true).args(["all", "exists", "count"])))]
    Oracle {
        input: PathBuf,
        /// Every spanning tree satisfies the predicate.
        #[arg(long)]
        all: Option<String>,
        /// Some spanning tree satisfies the predicate.
        #[arg(long)]
        exists: Option<String>,
        /// Count spanning trees by enumeration and by determinant.
        #[arg(long)]
        count: bool,
        /// With --all: check this many uniformly sampled trees instead.
        #[arg(long)]
        sample: Option<u64>,
    },
}

enum Failure {
    Usage(String),
    Negative(String),
    Internal(String),
}

type Outcome = Result<Status, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn load(path: &Path, format: Option<FormatArg>, report: &mut RunReport) -> Result<Graph, Failure> {
    let g = read_graph(path, format.map(Format::from)).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    report.input = Some(Fingerprint::of(&g));
    Ok(g)
}

fn edges_json(edges: &[Edge]) -> Value {
    Value::Array(edges.iter().map(|e| json!([e.0, e.1])).collect())
}

fn write_tree(path: &Path, t: &Tree) -> Result<(), Failure> {
    std::fs::write(path, to_edge_list(&t.to_graph())).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_tree(path: &Path, g: &Graph) -> Result<Tree, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let (n, pairs) = parse_edge_pairs(&text).map_err(usage)?;
    if n.is_some_and(|n| n != g.vertex_count()) {
        return Err(usage(format!("tree file has {} vertices, graph has {}", n.unwrap(), g.vertex_count())));
    }
    Tree::spanning(g, pairs.into_iter().map(|(a, b)| Edge::new(a, b))).map_err(usage)
}

fn synthesis_failure(e: SynthesisError) -> Failure {
    match e {
        SynthesisError::Precondition(_) => Failure::Usage(e.to_string()),
        SynthesisError::NoStarCover(_) => Failure::Negative(e.to_string()),
        _ => Failure::Internal(e.to_string()),
    }
}

fn cover_path(input: &Path) -> PathBuf {
    let mut s = input.as_os_str().to_owned();
    s.push(".cover");
    PathBuf::from(s)
}

fn generate(cli: &Cli, report: &mut RunReport) -> Outcome {
    let Command::Generate { family, n, m, d, k, a, b, leaves, out } = &cli.command else { unreachable!() };
    let mut spec = GenSpec::new(family);
    for (key, val) in [("n", n), ("m", m), ("d", d), ("k", k), ("a", a), ("b", b), ("leaves", leaves)] {
        if let Some(v) = val {
            spec = spec.with(key, *v);
        }
    }
    spec.seed = Some(cli.seed);
    let generated = spec.generate().map_err(usage)?;
    let g = &generated.graph;
    report.input = Some(Fingerprint::of(g));
    report.set("spec", spec.to_string());
    report.set("vertices", g.vertex_count());
    report.set("edges", g.edge_count());
    match out {
        Some(path) => {
            let format = cli.format.map(Format::from).unwrap_or_else(|| Format::from_path(path));
            write_graph(path, g, format).map_err(usage)?;
            report.set("written", path.display().to_string());
            if let Some(cover) = &generated.cover {
                let side = cover_path(path);
                std::fs::write(&side, serde_json::to_string(cover).unwrap()).map_err(usage)?;
                report.set("cover written", side.display().to_string());
            }
        }
        None => {
            let text = match cli.format {
                Some(FormatArg::El) => to_edge_list(g),
                _ => to_graph6(g),
            };
            report.set("graph", text.trim_end().to_string());
            if let Some(cover) = &generated.cover {
                report.set("cover", serde_json::to_value(cover).unwrap());
            }
        }
    }
    Ok(Status::Ok)
}

fn build(cli: &Cli, report: &mut RunReport) -> Outcome {
    let Command::Build { input, mode, cover, out } = &cli.command else { unreachable!() };
    let g = load(input, cli.format, report)?;
    let tree = match mode {
        Mode::GoodTree => {
            let built = build_good_tree(&g).map_err(synthesis_failure)?;
            let mut branches: BTreeMap<String, usize> = BTreeMap::new();
            for s in &built.steps {
                *branches.entry(s.branch.clone()).or_default() += 1;
            }
            report.set("recursion steps", built.steps.len());
            report.set("branches", serde_json::to_value(branches).unwrap());
            let good = matches!(find_bad_path(&g, &built.tree), Ok(None));
            report.set("G-good", good);
            if !good {
                return Err(Failure::Internal("constructed tree is not G-good".into()));
            }
            built.tree
        }
        Mode::NoAdjacentDeg2 | Mode::StarGrow => {
            let t = if matches!(mode, Mode::NoAdjacentDeg2) {
                build_tree_no_adjacent_deg2(&g).map_err(synthesis_failure)?
            } else {
                let cover: StarCover = match cover.as_deref() {
                    Some(spec) => {
                        let path = if spec == "embedded" { cover_path(input) } else { PathBuf::from(spec) };
                        let text = std::fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
                    }
                    None => find_star_cover(&g, MIN_STAR_SIZE)
                        .map_err(|e| Failure::Negative(format!("no star cover found: {e}")))?,
                };
                let (t, log) = grow_star_tree(&g, &cover).map_err(synthesis_failure)?;
                report.set("growth steps", serde_json::to_value(&log.steps).unwrap());
                report.set("condition checks", log.checks);
                t
            };
            let ok = degree2_violation(&t).is_none();
            report.set("degree-2 independent", ok);
            if !ok {
                return Err(Failure::Internal("constructed tree has adjacent degree-2 vertices".into()));
            }
            t
        }
    };
    report.set("tree", edges_json(tree.edges()));
    if let Some(path) = out {
        write_tree(path, &tree)?;
    }
    Ok(Status::Ok)
}

fn verify(cli: &Cli, report: &mut RunReport) -> Outcome {
    let Command::Verify { input, witness, check } = &cli.command else { unreachable!() };
    let g = load(input, cli.format, report)?;
    match check {
        Check::Good => {
            let t = read_tree(witness, &g)?;
            match find_bad_path(&g, &t).map_err(usage)? {
                None => {
                    report.set("G-good", true);
                    Ok(Status::Ok)
                }
                Some(w) => {
                    report.set("G-good", false);
                    report.set("bad path", json!([w.vertices.0, w.vertices.1, w.vertices.2]));
                    Ok(Status::Negative)
                }
            }
        }
        Check::Deg2Independent => {
            let t = read_tree(witness, &g)?;
            match degree2_violation(&t) {
                None => {
                    report.set("degree-2 independent", true);
                    Ok(Status::Ok)
                }
                Some(e) => {
                    report.set("degree-2 independent", false);
                    report.set("adjacent pair", json!([e.0, e.1]));
                    Ok(Status::Negative)
                }
            }
        }
        Check::WConfig => {
            let text = std::fs::read_to_string(witness).map_err(|e| usage(format!("{}: {e}", witness.display())))?;
            let c: WConfig = serde_json::from_str(&text).map_err(usage)?;
            match verify_w_configuration(&g, &c) {
                Ok(()) => {
                    report.set("configuration", true);
                    Ok(Status::Ok)
                }
                Err(clause) => {
                    report.set("configuration", false);
                    report.set("failed clause", clause.to_string());
                    Ok(Status::Negative)
                }
            }
        }
    }
}

fn parse_s(g: &Graph, spec: &str) -> Result<BTreeSet<usize>, Failure> {
    match spec.trim() {
        "auto" => Ok(high_degree_set(g)),
        "auto+centres" => {
            let mut s = high_degree_set(g);
            s.extend((0..g.vertex_count()).filter(|&v| w_configuration_at(g, v).is_some()));
            Ok(s)
        }
        "" => Ok(BTreeSet::new()),
        list => list
            .split(',')
            .map(|t| {
                let v: usize = t.trim().parse().map_err(|_| usage(format!("bad vertex id {t:?}")))?;
                if v >= g.vertex_count() {
                    return Err(usage(format!("vertex {v} out of range")));
                }
                Ok(v)
            })
            .collect(),
    }
}

fn structure(cli: &Cli, report: &mut RunReport) -> Outcome {
    let Command::Structure { input, s } = &cli.command else { unreachable!() };
    let g = load(input, cli.format, report)?;
    let s = parse_s(&g, s)?;
    report.set("S", serde_json::to_value(&s).unwrap());
    let found = find_structure(&g, &s).map_err(|e| match e {
        ReductionError::Precondition(_) => usage(e),
        ReductionError::Internal { .. } => Failure::Internal(e.to_string()),
    })?;
    report.set("variant", found.structure.label());
    report.set("structure", serde_json::to_value(&found.structure).unwrap());
    report.set("trace", serde_json::to_value(&found.trace).unwrap());
    match verify_structure(&g, &s, &found.structure) {
        Ok(()) => {
            report.set("verified", true);
            Ok(Status::Ok)
        }
        Err(v) => Err(Failure::Internal(format!("structure failed verification: {v}"))),
    }
}

fn verdict_status(r: &OracleResult, report: &mut RunReport, witness_key: &str) -> Status {
    let verdict = serde_json::to_value(r.verdict).unwrap();
    report.set("verdict", verdict);
    report.set("trees visited", r.visited);
    report.set("truncated", r.verdict == Verdict::Unknown);
    if let Some(c) = r.exact_count {
        report.set("tree count", c);
    }
    if let Some(t) = &r.witness {
        report.set(witness_key, edges_json(t.edges()));
    }
    if r.verdict == Verdict::True {
        Status::Ok
    } else {
        Status::Negative
    }
}

fn oracle(cli: &Cli, report: &mut RunReport) -> Outcome {
    let Command::Oracle { input, all, exists, count, sample } = &cli.command else { unreachable!() };
    let g = load(input, cli.format, report)?;
    let budget = EnumerationBudget { max_trees: cli.budget_trees, max_seconds: cli.budget_seconds };
    if budget.max_trees == 0 || budget.max_seconds.is_nan() || budget.max_seconds <= 0.0 {
        return Err(usage("budgets must be positive"));
    }
    let oracle_err = |e: hitree::oracle::OracleError| usage(e);
    if *count {
        let det = count_spanning_trees(&g);
        report.set("kirchhoff count", det.to_string());
        let run = for_each_spanning_tree(&g, budget, |_| true).map_err(oracle_err)?;
        report.set("trees visited", run.count);
        report.set("truncated", run.status != EnumStatus::Completed);
        if run.status != EnumStatus::Completed {
            report.set("verdict", "unknown");
            return Ok(Status::Negative);
        }
        let agree = det == run.count.into();
        report.set("tree count", run.count);
        report.set("verdict", agree);
        return if agree {
            Ok(Status::Ok)
        } else {
            Err(Failure::Internal("enumeration and determinant disagree".into()))
        };
    }
    if let Some(p) = all {
        let p: TreePredicate = p.parse().map_err(usage)?;
        report.set("predicate", format!("all: {p}"));
        if let Some(k) = sample {
            let r = sample_trees_satisfy(&g, &p, *k, cli.seed).map_err(oracle_err)?;
            report.set("sampled", true);
            report.set("samples", r.samples);
            report.set("failures", r.failures);
            if let Some(t) = &r.counterexample {
                report.set("counterexample", edges_json(t.edges()));
            }
            report.set("verdict", if r.failures == 0 { "true (sampled)" } else { "false" });
            return Ok(if r.failures == 0 { Status::Ok } else { Status::Negative });
        }
        let r = all_trees_satisfy(&g, &p, budget).map_err(oracle_err)?;
        return Ok(verdict_status(&r, report, "counterexample"));
    }
    if let Some(p) = exists {
        if sample.is_some() {
            return Err(usage("--sample only applies to --all"));
        }
        let p: TreePredicate = p.parse().map_err(usage)?;
        report.set("predicate", format!("exists: {p}"));
        let r = exists_tree_satisfying(&g, &p, budget).map_err(oracle_err)?;
        return Ok(verdict_status(&r, report, "witness"));
    }
    Err(usage("one of --all, --exists or --count is required"))
}

fn emit(report: &RunReport, json: bool) {
    use std::io::Write;
    let text = if json { report.to_json() + "\n" } else { report.to_text() };
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let start = Instant::now();
    // Echo without the invocation path so reports do not depend on it.
    let echo = std::iter::once("hitree".to_string()).chain(args.iter().skip(1).cloned()).collect();
    let mut report = RunReport::new(echo);
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let json = args.windows(2).any(|w| w[0] == "--report" && w[1] == "json")
                || args.iter().any(|a| a == "--report=json");
            let _ = e.print();
            report.finish(Status::UsageError, Some(e.kind().to_string()));
            emit(&report, json);
            return ExitCode::from(2);
        }
    };
    let outcome = match cli.command {
        Command::Generate { .. } => generate(&cli, &mut report),
        Command::Build { .. } => build(&cli, &mut report),
        Command::Verify { .. } => verify(&cli, &mut report),
        Command::Structure { .. } => structure(&cli, &mut report),
        Command::Oracle { .. } => oracle(&cli, &mut report),
    };
    match outcome {
        Ok(status) => report.finish(status, None),
        Err(Failure::Usage(m)) => report.finish(Status::UsageError, Some(m)),
        Err(Failure::Negative(m)) => report.finish(Status::Negative, Some(m)),
        Err(Failure::Internal(m)) => report.finish(Status::InternalError, Some(m)),
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    emit(&report, cli.report == ReportArg::Json);
    ExitCode::from(report.exit_code as u8)
}
