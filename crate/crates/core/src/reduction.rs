//! Finds a non-separating cycle (C), a non-separating path between two
//! vertices of `S` (P), or a W-configuration centred in `S` (W) in a graph
//! of minimum degree 3, following the case analysis of the existence proof.
//!
//! Every returned structure is re-checked with
//! [`verify_structure`](crate::certificates::verify_structure). Branches the
//! argument rules out by minimality of the chosen 2-edge cut are reported as
//! [`ReductionError::Internal`] with the trace so far.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificates::{verify_structure, Structure, WConfig, WKind};
use crate::graph::{
    bfs_path, blocks_and_cutvertices, bridges, components_filtered, induced_subgraph, is_three_edge_connected,
    min_two_edge_cut_component, Graph, GraphError, Vertex,
};
use crate::structure::{climb_induced_path, climb_vertex_path, find_induced_cycle, find_nonseparating_induced_path, for_each_induced_path, is_nonseparating, Climb, Separation};

pub const ENDBLOCK_3EC: &str = "Endblock: 3-edge-connected";
pub const ENDBLOCK_P: &str = "Endblock: P";
pub const ENDBLOCK_C: &str = "Endblock: C";
pub const ENDBLOCK_CUT: &str = "Endblock: 2-edge cut";
pub const CASE_1: &str = "Case 1";
pub const CASE_2: &str = "Case 2";
pub const CASE_3: &str = "Case 3";
pub const CASE_3_1: &str = "Case 3.1";
pub const CASE_3_2: &str = "Case 3.2";
pub const CASE_3_3: &str = "Case 3.3";
pub const CASE_3_3_C: &str = "Case 3.3: C";
pub const CASE_3_3_1: &str = "Case 3.3.1";
pub const CASE_3_3_2: &str = "Case 3.3.2";
pub const CASE_3_3_2_C: &str = "Case 3.3.2: C avoiding P";
pub const CASE_3_3_2_1: &str = "Case 3.3.2.1";
pub const CASE_3_3_2_2: &str = "Case 3.3.2.2";
pub const CASE_TRIANGLE: &str = "Case 3.3.2.2: triangle";
pub const CASE_C_P: &str = "Case 3.3.2.2: C_P";
pub const CASE_C_W: &str = "Case 3.3.2.2: C_w";
pub const CASE_C_U: &str = "Case 3.3.2.2: C_u";

/// Parent of each trace label; the first label hangs off the root.
const CASE_TREE: &[(&str, Option<&str>)] = &[
    (ENDBLOCK_3EC, None),
    (ENDBLOCK_CUT, None),
    (ENDBLOCK_P, Some(ENDBLOCK_3EC)),
    (ENDBLOCK_C, Some(ENDBLOCK_3EC)),
    (CASE_1, Some(ENDBLOCK_CUT)),
    (CASE_2, Some(ENDBLOCK_CUT)),
    (CASE_3, Some(ENDBLOCK_CUT)),
    (CASE_3_1, Some(CASE_3)),
    (CASE_3_2, Some(CASE_3)),
    (CASE_3_3, Some(CASE_3)),
    (CASE_3_3_C, Some(CASE_3_3)),
    (CASE_3_3_1, Some(CASE_3_3)),
    (CASE_3_3_2, Some(CASE_3_3)),
    (CASE_3_3_2_C, Some(CASE_3_3_2)),
    (CASE_3_3_2_1, Some(CASE_3_3_2)),
    (CASE_3_3_2_2, Some(CASE_3_3_2)),
    (CASE_TRIANGLE, Some(CASE_3_3_2_2)),
    (CASE_C_P, Some(CASE_3_3_2_2)),
    (CASE_C_W, Some(CASE_3_3_2_2)),
    (CASE_C_U, Some(CASE_3_3_2_2)),
];

/// Whether `trace` walks from the root of the case tree down to a leaf.
pub fn is_valid_trace(trace: &[String]) -> bool {
    let parent = |l: &str| CASE_TREE.iter().find(|(n, _)| *n == l).map(|(_, p)| *p);
    let is_leaf = |l: &str| CASE_TREE.iter().all(|(_, p)| *p != Some(l));
    let mut prev: Option<&str> = None;
    for label in trace {
        match parent(label) {
            Some(p) if p == prev => prev = Some(label.as_str()),
            _ => return false,
        }
    }
    prev.is_some_and(is_leaf)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureResult {
    #[serde(flatten)]
    pub structure: Structure,
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal error (no case applies) after [{}]: {detail}", trace.join(" > "))]
    Internal { trace: Vec<String>, detail: String },
}

impl From<GraphError> for ReductionError {
    fn from(e: GraphError) -> Self {
        ReductionError::Precondition(e.to_string())
    }
}

struct Run<'a> {
    g: &'a Graph,
    s: &'a BTreeSet<Vertex>,
    trace: Vec<String>,
}

impl Run<'_> {
    fn enter(&mut self, label: &str) {
        self.trace.push(label.to_string());
    }

    fn bug(&self, detail: impl Into<String>) -> ReductionError {
        ReductionError::Internal {
            trace: self.trace.clone(),
            detail: detail.into(),
        }
    }

    fn accept(&self, structure: Structure) -> Result<StructureResult, ReductionError> {
        verify_structure(self.g, self.s, &structure)
            .map_err(|why| self.bug(format!("produced {} failed verification: {why}", structure.label())))?;
        Ok(StructureResult {
            structure,
            trace: self.trace.clone(),
        })
    }

    /// First induced cycle inside `region`, avoiding `S` and `avoid`, whose
    /// edge deletion keeps the whole graph connected.
    fn cycle_in(&self, region: &[bool], avoid: Option<Vertex>) -> Option<Vec<Vertex>> {
        let g = self.g;
        find_induced_cycle(
            g,
            |u| region[u] && !self.s.contains(&u) && Some(u) != avoid,
            |c| is_nonseparating(g, c, true, Separation::EdgeDeletion),
        )
    }

    fn cycle_or_bug(&self, region: &[bool], avoid: Option<Vertex>, what: &str) -> Result<StructureResult, ReductionError> {
        match self.cycle_in(region, avoid) {
            Some(cycle) => self.accept(Structure::Cycle { cycle }),
            None => Err(self.bug(format!("no non-separating induced cycle {what}"))),
        }
    }

    fn mask(&self, vs: impl IntoIterator<Item = Vertex>) -> Vec<bool> {
        let mut m = vec![false; self.g.vertex_count()];
        for v in vs {
            m[v] = true;
        }
        m
    }
}

fn check_preconditions(g: &Graph, s: &BTreeSet<Vertex>) -> Result<(), ReductionError> {
    let n = g.vertex_count();
    if let Some(&v) = s.iter().find(|&&v| v >= n) {
        return Err(ReductionError::Precondition(format!("S contains {v}, graph has {n} vertices")));
    }
    if n == 0 || !g.is_connected() {
        return Err(ReductionError::Precondition("graph is not connected".into()));
    }
    if g.min_degree() < 3 {
        return Err(ReductionError::Precondition(format!(
            "minimum degree is {}, expected at least 3",
            g.min_degree()
        )));
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) > 3 && !s.contains(&v)) {
        return Err(ReductionError::Precondition(format!(
            "vertex {v} has degree {} but is not in S",
            g.degree(v)
        )));
    }
    Ok(())
}

/// Returns a verified (C), (P) or (W) structure together with the case
/// labels visited.
pub fn find_structure(g: &Graph, s: &BTreeSet<Vertex>) -> Result<StructureResult, ReductionError> {
    check_preconditions(g, s)?;
    let mut run = Run {
        g,
        s,
        trace: Vec::new(),
    };
    let bd = blocks_and_cutvertices(g)?;
    let block: Vec<Vertex> = bd.endblocks().next().expect("a connected graph has an endblock").to_vec();
    let b = bd.cutvertices_in(&block).first().copied();
    let (bg, map) = induced_subgraph(g, &block)?;

    if is_three_edge_connected(&bg) {
        run.enter(ENDBLOCK_3EC);
        let sb: Vec<Vertex> = block.iter().copied().filter(|v| s.contains(v)).collect();
        if sb.len() >= 2 {
            run.enter(ENDBLOCK_P);
            let (a, z) = (map.local(sb[0]).unwrap(), map.local(sb[1]).unwrap());
            let path = find_nonseparating_induced_path(&bg, a, z, &BTreeSet::new())
                .ok_or_else(|| run.bug("path climb got stuck in a 3-edge-connected block"))?;
            return run.accept(Structure::Path {
                path: map.host_path(&path),
            });
        }
        run.enter(ENDBLOCK_C);
        let v = sb.first().copied().or(b).unwrap_or(block[0]);
        let region = run.mask(block.iter().copied());
        return run.cycle_or_bug(&region, Some(v), "in the endblock");
    }

    run.enter(ENDBLOCK_CUT);
    let cut = min_two_edge_cut_component(g, &block, b)?
        .ok_or_else(|| run.bug("block is neither 3-edge-connected nor has a 2-edge cut"))?;
    let h = cut.component;
    let sh: Vec<Vertex> = h.iter().copied().filter(|v| s.contains(v)).collect();
    let in_h = run.mask(h.iter().copied());
    match sh.len() {
        0 => {
            run.enter(CASE_1);
            run.cycle_or_bug(&in_h, None, "in H")
        }
        1 => case_3(&mut run, &h, &in_h, sh[0]),
        _ => {
            run.enter(CASE_2);
            let start = bfs_path(g, sh[0], sh[1], |u| in_h[u], |_, _| true)
                .ok_or_else(|| run.bug("H is not connected"))?;
            let outside: Vec<Vertex> = (0..g.vertex_count()).filter(|&u| !in_h[u]).collect();
            match climb_induced_path(g, start, &outside) {
                Climb::Connected(path) => run.accept(Structure::Path { path }),
                Climb::Stuck(p) => Err(run.bug(format!("path climb stuck at {p:?}; H was not minimal"))),
            }
        }
    }
}

fn attachments(g: &Graph, h: &[Vertex], in_h: &[bool]) -> Vec<Vertex> {
    h.iter()
        .copied()
        .filter(|&u| g.neighbors(u).iter().any(|&w| !in_h[w]))
        .collect()
}

fn case_3(run: &mut Run, h: &[Vertex], in_h: &[bool], v: Vertex) -> Result<StructureResult, ReductionError> {
    let g = run.g;
    run.enter(CASE_3);
    let hv_alive = |u: Vertex| in_h[u] && u != v;
    let hv_comps = components_filtered(g, hv_alive, |_, _| true);
    let hv_vertices: Vec<Vertex> = h.iter().copied().filter(|&u| u != v).collect();
    let hv_edges = hv_vertices
        .iter()
        .map(|&u| g.neighbors(u).iter().filter(|&&w| hv_alive(w) && u < w).count())
        .sum::<usize>();

    if hv_comps.len() > 1 {
        run.enter(CASE_3_1);
        let (hg, map) = induced_subgraph(g, h)?;
        let bd = blocks_and_cutvertices(&hg)?;
        let att = attachments(g, h, in_h);
        for block in &bd.blocks {
            let host: Vec<Vertex> = block.iter().map(|&u| map.host(u)).collect();
            if host.iter().filter(|u| att.contains(u)).count() > 1 {
                continue;
            }
            let region = run.mask(host);
            if let Some(cycle) = run.cycle_in(&region, Some(v)) {
                return run.accept(Structure::Cycle { cycle });
            }
        }
        return Err(run.bug("no block of H with at most one attachment holds a suitable cycle"));
    }

    if hv_edges + 1 == hv_vertices.len() {
        run.enter(CASE_3_2);
        let config = path_configuration(g, &hv_vertices, v).ok_or_else(|| run.bug("H - v is a tree but not a path"))?;
        return run.accept(Structure::Configuration { config });
    }

    run.enter(CASE_3_3);
    let hv_mask = run.mask(hv_vertices.iter().copied());
    if let Some(cycle) = run.cycle_in(&hv_mask, None) {
        run.enter(CASE_3_3_C);
        return run.accept(Structure::Cycle { cycle });
    }
    let att = attachments(g, h, in_h);
    if att.len() != 2 || att.contains(&v) {
        return Err(run.bug(format!("expected two attachments other than the centre, found {att:?}")));
    }
    let (x, y) = (att[0], att[1]);
    if g.has_edge(x, y) {
        return Err(run.bug("attachments are adjacent; H was not minimal"));
    }

    let (hvg, hv_map) = induced_subgraph(g, &hv_vertices)?;
    let hv_blocks = blocks_and_cutvertices(&hvg)?;
    if !hv_blocks.cutvertices.is_empty() {
        run.enter(CASE_3_3_1);
        let e_local = *bridges(&hvg)
            .iter()
            .next()
            .ok_or_else(|| run.bug("H - v has a cutvertex but no bridge"))?;
        let e = hv_map.host_edge(e_local);
        let (hg, h_map) = induced_subgraph(g, h)?;
        let mut h_minus_e = hg.clone();
        h_minus_e.remove_edge(h_map.local(e.0).unwrap(), h_map.local(e.1).unwrap());
        let bd = blocks_and_cutvertices(&h_minus_e)?;
        let local_v = h_map.local(v).unwrap();
        if bd.cutvertices.iter().any(|&c| c != local_v) {
            return Err(run.bug(format!("H - {e} has a cutvertex other than the centre; H was not minimal")));
        }
        let (lx, ly) = (h_map.local(x).unwrap(), h_map.local(y).unwrap());
        for block in &bd.blocks {
            if block.contains(&lx) || block.contains(&ly) {
                continue;
            }
            let region = run.mask(block.iter().map(|&u| h_map.host(u)));
            if let Some(cycle) = run.cycle_in(&region, Some(v)) {
                return run.accept(Structure::Cycle { cycle });
            }
        }
        return Err(run.bug("no cycle in the block of H - e avoiding both attachments"));
    }

    run.enter(CASE_3_3_2);
    let p = case_332_path(g, h, v, x).map_err(|e| match e {
        ReductionError::Precondition(d) | ReductionError::Internal { detail: d, .. } => run.bug(d),
    })?;
    let on_p = run.mask(p.iter().copied());
    let t_alive = |u: Vertex| in_h[u] && !on_p[u];
    let t_vertices: Vec<Vertex> = h.iter().copied().filter(|&u| t_alive(u)).collect();
    let t_edges: usize = t_vertices
        .iter()
        .map(|&u| g.neighbors(u).iter().filter(|&&w| t_alive(w) && u < w).count())
        .sum();
    let t_comps = components_filtered(g, t_alive, |_, _| true).len();
    if t_edges + t_comps != t_vertices.len() {
        run.enter(CASE_3_3_2_C);
        let region = run.mask(t_vertices.iter().copied());
        return run.cycle_or_bug(&region, None, "in H - V(P)");
    }
    if t_comps != 1 {
        return Err(run.bug("H - V(P) is a forest with several components"));
    }

    if p.len() <= 3 {
        run.enter(CASE_3_3_2_1);
        let config = wab_from_short_path(g, &p, &t_vertices, x, y)
            .ok_or_else(|| run.bug(format!("no W_(a,b) around path {p:?}")))?;
        return run.accept(Structure::Configuration { config });
    }

    run.enter(CASE_3_3_2_2);
    let k = p.len();
    let (u, w) = (p[k - 3], p[k - 2]);
    let off_path = |a: Vertex| -> Vec<Vertex> { g.neighbors(a).iter().copied().filter(|&b| !on_p[b]).collect() };
    let (u_off, w_off) = (off_path(u), off_path(w));
    if u_off.len() != 1 || w_off.len() != 1 {
        return Err(run.bug("path vertices next to x do not have exactly one neighbour off the path"));
    }
    let (u1, w1) = (u_off[0], w_off[0]);
    let try_cycle = |run: &mut Run, label: &str, cycle: Vec<Vertex>| -> Option<StructureResult> {
        let st = Structure::Cycle { cycle };
        if verify_structure(run.g, run.s, &st).is_ok() {
            run.enter(label);
            Some(StructureResult {
                structure: st,
                trace: run.trace.clone(),
            })
        } else {
            None
        }
    };
    if u1 == w1 {
        if let Some(r) = try_cycle(run, CASE_TRIANGLE, vec![u, u1, w]) {
            return Ok(r);
        }
        return Err(run.bug("triangle u u' w is not a valid (C)"));
    }
    let tree_path = |a: Vertex, b: Vertex| bfs_path(g, a, b, t_alive, |_, _| true);
    let p_prime = tree_path(u1, w1).ok_or_else(|| run.bug("u' and w' are not joined in T"))?;
    let mut c_p = vec![u];
    c_p.extend(&p_prime);
    c_p.push(w);
    if let Some(r) = try_cycle(run, CASE_C_P, c_p) {
        return Ok(r);
    }
    let z = g
        .neighbors(x)
        .iter()
        .copied()
        .find(|&a| t_alive(a))
        .ok_or_else(|| run.bug("x has no neighbour in T"))?;
    if let Some(zw) = tree_path(z, w1) {
        let mut c_w = vec![x];
        c_w.extend(zw);
        c_w.push(w);
        if let Some(r) = try_cycle(run, CASE_C_W, c_w) {
            return Ok(r);
        }
    }
    if let Some(zu) = tree_path(z, u1) {
        let mut c_u = vec![x];
        c_u.extend(zu);
        c_u.extend([u, w]);
        if let Some(r) = try_cycle(run, CASE_C_U, c_u) {
            return Ok(r);
        }
    }
    Err(run.bug("none of C_P, C_w, C_u qualifies; H - x - y - w - z would have a smaller 2-edge cut"))
}

/// `H - v` is the path `x v_1 ... v_a y`; read off the `W_a` configuration.
fn path_configuration(g: &Graph, hv: &[Vertex], v: Vertex) -> Option<WConfig> {
    let inside = |u: Vertex| hv.binary_search(&u).is_ok();
    let inner_deg = |u: Vertex| g.neighbors(u).iter().filter(|&&w| inside(w)).count();
    let ends: Vec<Vertex> = hv.iter().copied().filter(|&u| inner_deg(u) == 1).collect();
    if ends.len() != 2 || hv.iter().any(|&u| inner_deg(u) > 2) {
        return None;
    }
    let seq = bfs_path(g, ends[0], ends[1], inside, |_, _| true)?;
    if seq.len() != hv.len() || seq.len() < 3 {
        return None;
    }
    Some(WConfig {
        kind: WKind::Wa,
        centre: v,
        connectors: (seq[0], seq[seq.len() - 1]),
        path_p: seq[1..seq.len() - 1].to_vec(),
        path_q: None,
    })
}

/// `P = v u x` and `T = H - V(P)` is a path through `y`; split `T` at `y`
/// into the two configuration paths.
fn wab_from_short_path(g: &Graph, p: &[Vertex], t: &[Vertex], x: Vertex, y: Vertex) -> Option<WConfig> {
    if p.len() != 3 {
        return None;
    }
    let (v, u) = (p[0], p[1]);
    let inside = |a: Vertex| t.binary_search(&a).is_ok();
    let tx = g.neighbors(x).iter().copied().find(|&a| inside(a))?;
    let inner_deg = |a: Vertex| g.neighbors(a).iter().filter(|&&b| inside(b)).count();
    let far = t.iter().copied().find(|&a| a != tx && inner_deg(a) <= 1).or((t.len() == 1).then_some(tx))?;
    let seq = bfs_path(g, tx, far, inside, |_, _| true)?;
    if seq.len() != t.len() {
        return None;
    }
    let iy = seq.iter().position(|&a| a == y)?;
    let path_p = seq[..iy].to_vec();
    let mut path_q = vec![u];
    path_q.extend(seq[iy + 1..].iter().rev());
    Some(WConfig {
        kind: WKind::Wab,
        centre: v,
        connectors: (x, y),
        path_p,
        path_q: Some(path_q),
    })
}

const CLAIM_PATH_BUDGET: u64 = 5_000_000;

/// An induced `v`–`x` path inside `h` whose vertex deletion keeps `g`
/// connected. Tries the component-growing exchange first and falls back to
/// enumerating induced paths.
pub fn case_332_path(g: &Graph, h: &[Vertex], v: Vertex, x: Vertex) -> Result<Vec<Vertex>, ReductionError> {
    let n = g.vertex_count();
    let mut in_h = vec![false; n];
    for &u in h {
        if u >= n {
            return Err(ReductionError::Precondition(format!("vertex {u} out of range")));
        }
        in_h[u] = true;
    }
    if !in_h[v] || !in_h[x] || v == x {
        return Err(ReductionError::Precondition("v and x must be distinct vertices of H".into()));
    }
    let outside: Vec<Vertex> = (0..n).filter(|&u| !in_h[u]).collect();
    if outside.is_empty() {
        return Err(ReductionError::Precondition("H must be a proper subgraph".into()));
    }
    if components_filtered(g, |u| in_h[u] && u != v, |_, _| true).len() != 1 {
        return Err(ReductionError::Precondition("H - v is not connected".into()));
    }
    let start = bfs_path(g, v, x, |u| in_h[u], |_, _| true)
        .ok_or_else(|| ReductionError::Precondition("v and x are not joined inside H".into()))?;
    if let Climb::Connected(p) = climb_vertex_path(g, start, &outside, |u| in_h[u]) {
        return Ok(p);
    }
    let (found, _) = for_each_induced_path(g, v, x, |u| in_h[u], CLAIM_PATH_BUDGET, |p| {
        is_nonseparating(g, p, false, Separation::VertexDeletion)
    });
    found.ok_or_else(|| ReductionError::Internal {
        trace: Vec::new(),
        detail: "no induced v-x path in H leaves G - V(P) connected".into(),
    })
}

/// `S` = vertices of degree at least 4.
pub fn high_degree_set(g: &Graph) -> BTreeSet<Vertex> {
    (0..g.vertex_count()).filter(|&v| g.degree(v) >= 4).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn k(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        graph(10, &e)
    }

    #[test]
    fn petersen_with_empty_s_gives_cycle() {
        let g = petersen();
        let r = find_structure(&g, &BTreeSet::new()).unwrap();
        assert!(matches!(&r.structure, Structure::Cycle { cycle } if cycle.len() == 5));
        assert!(is_valid_trace(&r.trace));
    }

    #[test]
    fn k5_with_full_s_gives_edge_path() {
        let g = k(5);
        let s: BTreeSet<Vertex> = (0..5).collect();
        let r = find_structure(&g, &s).unwrap();
        assert_eq!(r.structure, Structure::Path { path: vec![0, 1] });
        assert_eq!(r.trace, vec![ENDBLOCK_3EC.to_string(), ENDBLOCK_P.to_string()]);
    }

    #[test]
    fn rejects_bad_inputs() {
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(matches!(find_structure(&c4, &BTreeSet::new()), Err(ReductionError::Precondition(_))));
        assert!(matches!(find_structure(&k(5), &BTreeSet::new()), Err(ReductionError::Precondition(_))));
        assert!(matches!(find_structure(&k(4), &BTreeSet::from([9])), Err(ReductionError::Precondition(_))));
    }

    #[test]
    fn trace_validation() {
        let t = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(is_valid_trace(&t(&[ENDBLOCK_CUT, CASE_3, CASE_3_3, CASE_3_3_2, CASE_3_3_2_2, CASE_C_U])));
        assert!(!is_valid_trace(&t(&[ENDBLOCK_CUT, CASE_3])));
        assert!(!is_valid_trace(&t(&[CASE_3, CASE_3_1])));
        assert!(!is_valid_trace(&[]));
    }

    #[test]
    fn claim_path_guard() {
        // H = star-like piece where removing v disconnects H.
        let g = graph(5, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)]);
        assert!(matches!(case_332_path(&g, &[0, 1, 2], 0, 1), Err(ReductionError::Precondition(_))));
    }
}
