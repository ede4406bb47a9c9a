//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hitree::certificates::{
    degree2_independent, find_bad_path, find_chord, verify_structure, walk_edges, Structure,
};
use hitree::generators::{
    complete, complete_bipartite, cycle, double_star, figure1, gkd, hypercube, path, petersen, random_connected,
    random_cubic, random_min_degree, w_tree, wa_config, wab_config, LeafConfig,
};
use hitree::graph::{connected_without_edges, is_three_edge_connected, Edge, Graph};
use hitree::oracle::{
    all_trees_satisfy, count_spanning_trees, exists_tree_satisfying, for_each_spanning_tree, sample_trees_satisfy,
    EnumStatus, EnumerationBudget, TreePredicate, Verdict,
};
use hitree::reduction::{find_structure, high_degree_set};
use hitree::structure::{find_nonseparating_induced_path, for_each_induced_path, max_bipartite_local};
use hitree::synthesis::{build_good_tree, grow_star_tree, CASE_1, CASE_2, CASE_3, CLAIM_1};
use hitree::synthesis::{CLAIM_2_CONNECTED, CLAIM_2_DISCONNECTED, CLAIM_2_LOW_DEGREE, CLAIM_2_NON_ADJACENT};

const FIGURE1_TREES: u64 = 32_768;
const FIGURE1_SECONDS: f64 = 60.0;
const GOOD_RANDOM_GRAPHS: u64 = 500;
const GOOD_MAX_N: usize = 60;
const GOOD_ORACLE_GRAPHS: u64 = 200;
const GOOD_ORACLE_MAX_N: usize = 12;
const GOOD_SECONDS: f64 = 300.0;
const STAR_SECONDS_PER_RUN: f64 = 1.0;
const G23_TREES: u64 = 1_048_576;
const G33_SAMPLES: u64 = 10_000;
const GKD_SECONDS: f64 = 180.0;
const TOTALITY_GRAPHS: u64 = 1_000;
const TOTALITY_MAX_N: usize = 40;
const TOTALITY_SECONDS: f64 = 300.0;
const RAIL_GRAPHS: usize = 20;
const RAIL_MAX_N: usize = 14;
const INDUCED_PATH_BUDGET: u64 = 50_000_000;
const BIPARTITE_GRAPHS: u64 = 200;
const BIPARTITE_MAX_N: usize = 80;
const KIRCHHOFF_GRAPHS: u64 = 50;
const KIRCHHOFF_MAX_N: usize = 10;
/// Fixtures with more trees than this are checked by determinant only.
const KIRCHHOFF_ENUM_CAP: u64 = 50_000_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn count_exact(g: &Graph) -> Result<u64, String> {
    let run = for_each_spanning_tree(g, EnumerationBudget::unlimited(), |_| true).map_err(|e| e.to_string())?;
    ensure(run.status == EnumStatus::Completed, || "enumeration did not complete".into())?;
    Ok(run.count)
}

fn named_fixtures() -> Vec<(String, Graph)> {
    let mut out = vec![
        ("figure1".to_string(), figure1()),
        ("petersen".into(), petersen()),
        ("K1".into(), complete(1)),
        ("K2".into(), complete(2)),
        ("K4".into(), complete(4)),
        ("K5".into(), complete(5)),
        ("C5".into(), cycle(5).unwrap()),
        ("P6".into(), path(6)),
        ("K3,3".into(), complete_bipartite(3, 3)),
        ("K13,13".into(), complete_bipartite(13, 13)),
        ("Q3".into(), hypercube(3)),
        ("Q4".into(), hypercube(4)),
        ("G(2,3)".into(), gkd(2, 3).unwrap()),
        ("G(2,4)".into(), gkd(2, 4).unwrap()),
        ("wa(3)".into(), wa_config(3).unwrap().0),
        ("wab(2,2)".into(), wab_config(2, 2).unwrap().0),
    ];
    for m in 6..=10 {
        out.push((format!("double-star({m})"), double_star(m).unwrap().0));
    }
    for (name, leaves) in w_tree_fixtures() {
        out.push((name, w_tree(&leaves).unwrap().graph));
    }
    out
}

fn w_tree_fixtures() -> Vec<(String, Vec<LeafConfig>)> {
    use LeafConfig::{Wa, Wab};
    vec![
        ("w-tree(wa1 x3)".into(), vec![Wa(1), Wa(1), Wa(1)]),
        ("w-tree(wa2 x3)".into(), vec![Wa(2), Wa(2), Wa(2)]),
        ("w-tree(mixed)".into(), vec![Wa(3), Wab(1, 2), Wab(2, 2), Wa(1)]),
        ("w-tree(wab x4)".into(), vec![Wab(1, 2), Wab(3, 1), Wab(2, 3), Wab(1, 4)]),
    ]
}

/// Connected graph with a spread of low-degree vertices.
fn sparse_random(rng: &mut ChaCha8Rng, max_n: usize, seed: u64) -> Graph {
    let n = rng.gen_range(4..=max_n);
    let max_m = n * (n - 1) / 2;
    let extra = rng.gen_range(0..=(2 * n).min(max_m - (n - 1)));
    random_connected(n, n - 1 + extra, seed).unwrap()
}

fn figure1_reproduction() -> Outcome {
    let start = Instant::now();
    let g = figure1();
    ensure(g.vertex_count() == 16 && g.edge_count() == 24, || "wrong size".into())?;
    ensure((0..16).all(|v| g.degree(v) == 3), || "not cubic".into())?;
    let all = all_trees_satisfy(&g, &TreePredicate::AdjacentDeg2Pair, EnumerationBudget::unlimited())
        .map_err(|e| e.to_string())?;
    ensure(all.verdict == Verdict::True, || format!("counterexample {:?}", all.witness))?;
    let count = all.exact_count.ok_or("no exact count")?;
    ensure(BigInt::from(count) == count_spanning_trees(&g), || "enumeration disagrees with determinant".into())?;
    ensure(count == FIGURE1_TREES, || format!("tree count {count}"))?;
    let some = exists_tree_satisfying(&g, &TreePredicate::NoThreeConsecutiveDeg2, EnumerationBudget::unlimited())
        .map_err(|e| e.to_string())?;
    ensure(some.verdict == Verdict::True, || "no tree avoids three consecutive degree-2 vertices".into())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < FIGURE1_SECONDS, || format!("took {secs:.1}s"))?;
    Ok(format!("{count} trees, all with an adjacent degree-2 pair; {secs:.2}s"))
}

fn good_trees() -> Outcome {
    let start = Instant::now();
    let mut branches: BTreeMap<String, u64> = BTreeMap::new();
    let mut lifts: BTreeMap<String, u64> = BTreeMap::new();
    let mut check = |name: &str, g: &Graph| -> Result<(), String> {
        let built = build_good_tree(g).map_err(|e| format!("{name}: {e}"))?;
        match find_bad_path(g, &built.tree) {
            Ok(None) => {}
            other => return Err(format!("{name}: bad tree {other:?}")),
        }
        for s in &built.steps {
            *branches.entry(s.branch.clone()).or_default() += 1;
            if let Some(l) = &s.lift {
                *lifts.entry(format!("{}/{l}", s.branch)).or_default() += 1;
            }
        }
        Ok(())
    };
    let fixtures = named_fixtures();
    for (name, g) in &fixtures {
        check(name, g)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for seed in 0..GOOD_RANDOM_GRAPHS {
        // Every fifth graph has minimum degree 3, the rest are sparse.
        let g = if seed % 5 == 0 {
            random_min_degree(rng.gen_range(5..=GOOD_MAX_N), 3, seed).unwrap()
        } else {
            sparse_random(&mut rng, GOOD_MAX_N, seed)
        };
        check(&format!("random #{seed}"), &g)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for seed in 0..GOOD_ORACLE_GRAPHS {
        let g = sparse_random(&mut rng, GOOD_ORACLE_MAX_N, 10_000 + seed);
        check(&format!("small #{seed}"), &g)?;
        let r = exists_tree_satisfying(&g, &TreePredicate::Good, EnumerationBudget::unlimited())
            .map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::True, || format!("oracle finds no good tree for small #{seed}"))?;
    }
    let adjacent = [CLAIM_2_LOW_DEGREE, CLAIM_2_CONNECTED, CLAIM_2_DISCONNECTED]
        .iter()
        .any(|b| branches.contains_key(*b));
    for b in [CLAIM_1, CLAIM_2_NON_ADJACENT, CASE_1, CASE_2, CASE_3] {
        ensure(branches.contains_key(b), || format!("branch {b:?} never taken: {branches:?}"))?;
    }
    ensure(adjacent, || "adjacent-neighbour Claim 2 branch never taken".into())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < GOOD_SECONDS, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "{} fixtures + {GOOD_RANDOM_GRAPHS} random + {GOOD_ORACLE_GRAPHS} oracle-checked; branches {branches:?}; lifts {lifts:?}; {secs:.1}s",
        fixtures.len()
    ))
}

fn star_growth() -> Outcome {
    let mut details = Vec::new();
    for m in 6..=10 {
        let (g, cover) = double_star(m).unwrap();
        let start = Instant::now();
        let (t, log) = grow_star_tree(&g, &cover).map_err(|e| format!("m = {m}: {e}"))?;
        let secs = start.elapsed().as_secs_f64();
        ensure(degree2_independent(&t), || format!("m = {m}: adjacent degree-2 vertices"))?;
        ensure(log.checks == log.steps.len() + 1, || format!("m = {m}: conditions not checked every step"))?;
        ensure(secs < STAR_SECONDS_PER_RUN, || format!("m = {m}: took {secs:.2}s"))?;
        details.push(format!("m={m}: {} steps", log.steps.len()));
    }
    Ok(details.join(", "))
}

fn degree_histograms() -> Outcome {
    let start = Instant::now();
    let g = gkd(2, 3).unwrap();
    let all = all_trees_satisfy(&g, &TreePredicate::HasDegrees(vec![1, 2]), EnumerationBudget::unlimited())
        .map_err(|e| e.to_string())?;
    ensure(all.verdict == Verdict::True, || format!("G(2,3) counterexample {:?}", all.witness))?;
    let count = all.exact_count.unwrap();
    ensure(count == G23_TREES, || format!("G(2,3) has {count} trees"))?;
    ensure(BigInt::from(count) == count_spanning_trees(&g), || "determinant disagrees".into())?;
    let big = gkd(3, 3).unwrap();
    ensure(big.vertex_count() == 100, || "G(3,3) size".into())?;
    let sampled = sample_trees_satisfy(&big, &TreePredicate::HasDegrees(vec![1, 2, 3]), G33_SAMPLES, 33)
        .map_err(|e| e.to_string())?;
    ensure(sampled.failures == 0, || format!("{} sampled G(3,3) trees lack a degree", sampled.failures))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < GKD_SECONDS, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "G(2,3): all {count} trees contain degrees 1,2 (exact); G(3,3): {G33_SAMPLES} uniform samples contain 1,2,3 (sampled evidence); {secs:.1}s"
    ))
}

fn structure_totality() -> Outcome {
    let start = Instant::now();
    let mut variants: BTreeMap<&str, u64> = BTreeMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..TOTALITY_GRAPHS {
        let g = random_min_degree(rng.gen_range(4..=TOTALITY_MAX_N), 3, 50_000 + seed).unwrap();
        let mut s = high_degree_set(&g);
        // Half the instances also put some degree-3 vertices into S.
        if seed % 2 == 1 {
            s.extend((0..g.vertex_count()).filter(|_| rng.gen_bool(0.2)));
        }
        let found = find_structure(&g, &s).map_err(|e| format!("graph #{seed}: {e}"))?;
        verify_structure(&g, &s, &found.structure).map_err(|e| format!("graph #{seed}: {e}"))?;
        *variants.entry(found.structure.label()).or_default() += 1;
    }
    for (name, leaves) in w_tree_fixtures() {
        let w = w_tree(&leaves).unwrap();
        let mut s = high_degree_set(&w.graph);
        s.extend(w.centres());
        let found = find_structure(&w.graph, &s).map_err(|e| format!("{name}: {e}"))?;
        verify_structure(&w.graph, &s, &found.structure).map_err(|e| format!("{name}: {e}"))?;
        ensure(matches!(found.structure, Structure::Configuration { .. }), || {
            format!("{name}: expected W, got {}", found.structure.label())
        })?;
    }
    let empty = BTreeSet::new();
    for seed in 0..100 {
        let g = random_cubic(2 * (2 + seed as usize % 19), seed).unwrap();
        let found = find_structure(&g, &empty).map_err(|e| format!("cubic #{seed}: {e}"))?;
        verify_structure(&g, &empty, &found.structure).map_err(|e| format!("cubic #{seed}: {e}"))?;
        ensure(matches!(found.structure, Structure::Cycle { .. }), || format!("cubic #{seed}: not C"))?;
    }
    for g in [figure1(), petersen(), hypercube(3), complete(4)] {
        let found = find_structure(&g, &empty).map_err(|e| e.to_string())?;
        ensure(matches!(found.structure, Structure::Cycle { .. }), || "named cubic graph: not C".into())?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < TOTALITY_SECONDS, || format!("took {secs:.1}s"))?;
    Ok(format!("{TOTALITY_GRAPHS} random {variants:?}; w-trees all W; cubic all C; {secs:.1}s"))
}

fn induced_paths() -> Outcome {
    let mut graphs = Vec::new();
    let mut seed = 0;
    while graphs.len() < RAIL_GRAPHS {
        let n = 6 + (seed as usize % (RAIL_MAX_N - 5));
        let g = random_min_degree(n, 3 + (seed as usize % 2), 90_000 + seed).unwrap();
        if is_three_edge_connected(&g) {
            graphs.push(g);
        }
        seed += 1;
    }
    let mut pairs = 0;
    for (i, g) in graphs.iter().enumerate() {
        let n = g.vertex_count();
        for a in 0..n {
            for b in a + 1..n {
                let p = find_nonseparating_induced_path(g, a, b, &BTreeSet::new())
                    .ok_or_else(|| format!("graph {i}: climb stuck for {a}-{b}"))?;
                let removed: BTreeSet<Edge> = walk_edges(&p, false).into_iter().collect();
                ensure(p[0] == a && *p.last().unwrap() == b, || format!("graph {i}: wrong ends"))?;
                ensure(find_chord(g, &p, false).is_none(), || format!("graph {i}: path {p:?} has a chord"))?;
                ensure(connected_without_edges(g, &removed), || format!("graph {i}: path {p:?} separates"))?;
                let (found, complete) = for_each_induced_path(g, a, b, |_| true, INDUCED_PATH_BUDGET, |q| {
                    let e: BTreeSet<Edge> = walk_edges(q, false).into_iter().collect();
                    connected_without_edges(g, &e)
                });
                ensure(found.is_some() || !complete, || format!("graph {i}: enumeration disagrees on {a}-{b}"))?;
                ensure(found.is_some(), || format!("graph {i}: enumeration budget hit on {a}-{b}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{RAIL_GRAPHS} graphs, {pairs} pairs, climb and enumeration agree"))
}

fn bipartite_halves() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..BIPARTITE_GRAPHS {
        let n = rng.gen_range(2..=BIPARTITE_MAX_N);
        let max_m = n * (n - 1) / 2;
        let m = rng.gen_range(n - 1..=max_m.min(6 * n));
        let g = random_connected(n, m, 70_000 + seed).unwrap();
        let b = max_bipartite_local(&g);
        let h = &b.h;
        ensure(h.vertex_count() == n, || format!("graph #{seed}: not spanning"))?;
        ensure(h.is_connected(), || format!("graph #{seed}: not connected"))?;
        for e in h.edges() {
            ensure(g.has_edge(e.0, e.1), || format!("graph #{seed}: {e} not in G"))?;
            ensure(b.side[e.0] != b.side[e.1], || format!("graph #{seed}: {e} inside a part"))?;
        }
        for v in 0..n {
            ensure(2 * h.degree(v) >= g.degree(v), || format!("graph #{seed}: vertex {v} keeps too few edges"))?;
        }
    }
    Ok(format!("{BIPARTITE_GRAPHS} graphs: spanning, connected, bipartite, half degree kept"))
}

fn oracle_consistency() -> Outcome {
    ensure(count_exact(&complete(4))? == 16, || "K4".into())?;
    ensure(count_spanning_trees(&complete(4)) == BigInt::from(16), || "K4 determinant".into())?;
    for n in 3..=12 {
        let c = cycle(n).unwrap();
        ensure(count_exact(&c)? == n as u64, || format!("C{n}"))?;
        ensure(count_spanning_trees(&c) == BigInt::from(n), || format!("C{n} determinant"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for seed in 0..KIRCHHOFF_GRAPHS {
        let n = rng.gen_range(1..=KIRCHHOFF_MAX_N);
        let max_m = n * (n - 1) / 2;
        let m = rng.gen_range(n.saturating_sub(1)..=max_m);
        let g = random_connected(n, m, 80_000 + seed).unwrap();
        let e = count_exact(&g)?;
        ensure(BigInt::from(e) == count_spanning_trees(&g), || format!("random #{seed}: {e} trees enumerated"))?;
    }
    let mut fixtures = 0;
    let mut too_big = Vec::new();
    for (name, g) in named_fixtures() {
        let det = count_spanning_trees(&g);
        if det <= BigInt::from(KIRCHHOFF_ENUM_CAP) {
            ensure(BigInt::from(count_exact(&g)?) == det, || format!("{name}: counts disagree"))?;
            fixtures += 1;
        } else {
            too_big.push(name);
        }
    }
    Ok(format!(
        "K4, C3..C12, {KIRCHHOFF_GRAPHS} random graphs and {fixtures} fixtures agree exactly; over {KIRCHHOFF_ENUM_CAP} trees, not enumerated: {}",
        too_big.join(", ")
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Figure-1 reproduction", figure1_reproduction),
        ("good spanning trees at desk scale", good_trees),
        ("star growth on double stars", star_growth),
        ("degree histograms of G(k,d)", degree_histograms),
        ("reducible structure totality", structure_totality),
        ("non-separating induced paths", induced_paths),
        ("large bipartite subgraph inequality", bipartite_halves),
        ("oracle self-consistency", oracle_consistency),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = format!("criterion {}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str()) || id.ends_with(f.as_str())) {
            continue;
        }
        match std::panic::catch_unwind(run) {
            Ok(Ok(detail)) => println!("{id} ({name}): PASS - {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("{id} ({name}): FAIL - {why}");
            }
            Err(_) => {
                failed += 1;
                println!("{id} ({name}): FAIL - panicked");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
