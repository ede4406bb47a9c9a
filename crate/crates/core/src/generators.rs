//! Named graphs and parameterised families.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::certificates::{WConfig, WKind};
use crate::graph::{Graph, Vertex};
use crate::structure::{Star, StarCover};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("missing parameter {0:?}")]
    MissingParam(&'static str),
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("could not parse generator spec {0:?}")]
    Syntax(String),
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::Invalid(msg.into())
}

fn build(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator emits a simple graph")
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(invalid("a cycle needs at least 3 vertices"));
    }
    Ok(build(n, (0..n).map(|i| (i, (i + 1) % n))))
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(a + b, (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))))
}

pub fn petersen() -> Graph {
    build(
        10,
        (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]),
    )
}

pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    build(
        n,
        (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))).filter(|&(u, w)| u < w)),
    )
}

/// Four diamonds (K4 minus an edge) joined in a ring. Diamond `i` occupies
/// `4i..4i+4` as `p q r s` with edges `pq qr rs sp qs`; its `r` is joined to
/// the `p` of the next diamond.
pub fn figure1() -> Graph {
    let mut edges = Vec::new();
    for i in 0..4 {
        let (p, q, r, s) = (4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3);
        edges.extend([(p, q), (q, r), (r, s), (s, p), (q, s)]);
        edges.push((r, 4 * ((i + 1) % 4)));
    }
    build(16, edges)
}

/// `G(1,d) = K_{d+1}`; `G(k,d)` hangs a copy of `K_{d+1}` off every vertex
/// of `G(k-1,d)` by a single edge. Old vertices keep their ids; the copy for
/// `v` follows in order, and its first vertex carries the bridge.
pub fn gkd(k: u32, d: usize) -> Result<Graph, GenError> {
    if k < 1 || d < 2 {
        return Err(invalid("need k >= 1 and d >= 2"));
    }
    let mut g = complete(d + 1);
    for _ in 1..k {
        let n = g.vertex_count();
        let mut edges: Vec<(Vertex, Vertex)> = g.edges().into_iter().map(|e| (e.0, e.1)).collect();
        for v in 0..n {
            let base = n + v * (d + 1);
            for a in 0..=d {
                for b in a + 1..=d {
                    edges.push((base + a, base + b));
                }
            }
            edges.push((v, base));
        }
        g = build(n * (d + 2), edges);
    }
    Ok(g)
}

/// Two stars with `m` leaves each. Centre A is 0 with leaves `1..=m`, centre
/// B is `m+1` with leaves `m+2..=2m+1`; leaf `a_i` is joined to `b_i` and
/// `b_{i+1}` (indices mod `m`). The embedded cover is returned too.
pub fn double_star(m: usize) -> Result<(Graph, StarCover), GenError> {
    if m < 3 {
        return Err(invalid("double star needs m >= 3"));
    }
    let ca = 0;
    let cb = m + 1;
    let a = |i: usize| 1 + i % m;
    let b = |i: usize| m + 2 + i % m;
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push((ca, a(i)));
        edges.push((cb, b(i)));
        edges.push((a(i), b(i)));
        edges.push((a(i), b(i + 1)));
    }
    let g = build(2 * m + 2, edges);
    let cover = StarCover {
        stars: vec![
            Star { centre: ca, leaves: (0..m).map(a).collect() },
            Star { centre: cb, leaves: (0..m).map(b).collect() },
        ],
    };
    Ok((g, cover))
}

/// Appends a configuration to `edges` with fresh ids from `next`; returns
/// it without wiring the connectors anywhere.
fn push_configuration(kind: LeafConfig, next: &mut Vertex, edges: &mut Vec<(Vertex, Vertex)>) -> WConfig {
    let mut fresh = |k: usize| -> Vec<Vertex> {
        let out = (*next..*next + k).collect();
        *next += k;
        out
    };
    let head = fresh(3);
    let (v, x, y) = (head[0], head[1], head[2]);
    let (a, b) = match kind {
        LeafConfig::Wa(a) => (a, 0),
        LeafConfig::Wab(a, b) => (a, b),
    };
    let p = fresh(a);
    let q = fresh(b);
    let mut add_path = |path: &[Vertex]| {
        for w in path.windows(2) {
            edges.push((w[0], w[1]));
        }
        for &u in path {
            edges.push((v, u));
        }
        edges.push((x, path[0]));
        edges.push((y, path[path.len() - 1]));
    };
    add_path(&p);
    match kind {
        LeafConfig::Wa(_) => {
            edges.push((v, x));
            edges.push((v, y));
            WConfig { kind: WKind::Wa, centre: v, connectors: (x, y), path_p: p, path_q: None }
        }
        LeafConfig::Wab(..) => {
            add_path(&q);
            WConfig { kind: WKind::Wab, centre: v, connectors: (x, y), path_p: p, path_q: Some(q) }
        }
    }
}

/// A configuration whose connectors are joined to two vertices of a `K4`
/// stub. The centre is 0, connectors 1 and 2, paths follow, then the stub.
fn configuration_host(kind: LeafConfig) -> (Graph, WConfig) {
    let mut next = 0;
    let mut edges = Vec::new();
    let c = push_configuration(kind, &mut next, &mut edges);
    let stub: Vec<Vertex> = (next..next + 4).collect();
    for i in 0..4 {
        for j in i + 1..4 {
            edges.push((stub[i], stub[j]));
        }
    }
    edges.push((c.connectors.0, stub[0]));
    edges.push((c.connectors.1, stub[1]));
    (build(next + 4, edges), c)
}

pub fn wa_config(a: usize) -> Result<(Graph, WConfig), GenError> {
    if a < 1 {
        return Err(invalid("W_a needs a >= 1"));
    }
    Ok(configuration_host(LeafConfig::Wa(a)))
}

pub fn wab_config(a: usize, b: usize) -> Result<(Graph, WConfig), GenError> {
    if a < 1 || b < 1 || a + b < 3 {
        return Err(invalid("W_(a,b) needs a, b >= 1 and a + b >= 3"));
    }
    Ok(configuration_host(LeafConfig::Wab(a, b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafConfig {
    Wa(usize),
    Wab(usize, usize),
}

impl FromStr for LeafConfig {
    type Err = GenError;

    /// `wa:A` or `wab:A:B`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| GenError::Syntax(s.to_string()));
        match parts.as_slice() {
            ["wa", a] => Ok(LeafConfig::Wa(num(a)?)),
            ["wab", a, b] => Ok(LeafConfig::Wab(num(a)?, num(b)?)),
            _ => Err(GenError::Syntax(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WTree {
    pub graph: Graph,
    pub configs: Vec<WConfig>,
}

impl WTree {
    pub fn centres(&self) -> Vec<Vertex> {
        self.configs.iter().map(|c| c.centre).collect()
    }
}

/// A homeomorphically irreducible skeleton with a configuration hanging off
/// every leaf, both connectors joined to the leaf. The skeleton is the star
/// `K_{1,L}` (centre 0, leaves `1..=L`) for `L >= 3` configurations, or a
/// single edge for two.
pub fn w_tree(leaves: &[LeafConfig]) -> Result<WTree, GenError> {
    let l = leaves.len();
    if l < 2 {
        return Err(invalid("need at least two leaf configurations"));
    }
    for c in leaves {
        match *c {
            LeafConfig::Wa(a) if a >= 1 => {}
            LeafConfig::Wab(a, b) if a >= 1 && b >= 1 && a + b >= 3 => {}
            _ => return Err(invalid(format!("bad leaf configuration {c:?}"))),
        }
    }
    let mut edges = Vec::new();
    let skeleton_leaves: Vec<Vertex> = if l == 2 {
        edges.push((0, 1));
        vec![0, 1]
    } else {
        for t in 1..=l {
            edges.push((0, t));
        }
        (1..=l).collect()
    };
    let mut next = if l == 2 { 2 } else { l + 1 };
    let mut configs = Vec::new();
    for (&t, &kind) in skeleton_leaves.iter().zip(leaves) {
        let c = push_configuration(kind, &mut next, &mut edges);
        edges.push((t, c.connectors.0));
        edges.push((t, c.connectors.1));
        configs.push(c);
    }
    Ok(WTree { graph: build(next, edges), configs })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random spanning tree (each vertex joined to an earlier one, on a shuffled
/// order) plus `m - (n - 1)` further random edges.
pub fn random_connected(n: usize, m: usize, seed: u64) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let max = n * (n - 1) / 2;
    if m + 1 < n || m > max {
        return Err(invalid(format!("m must lie in {}..={max}", n - 1)));
    }
    let mut r = rng(seed);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut r);
    let mut g = Graph::empty(n);
    for i in 1..n {
        let j = r.gen_range(0..i);
        g.add_edge(order[i], order[j]).unwrap();
    }
    while g.edge_count() < m {
        let u = r.gen_range(0..n);
        let v = r.gen_range(0..n);
        if u != v && !g.has_edge(u, v) {
            g.add_edge(u, v).unwrap();
        }
    }
    Ok(g)
}

/// Connected graph with minimum degree at least `d`: a random tree, then
/// random edges from every deficient vertex.
pub fn random_min_degree(n: usize, d: usize, seed: u64) -> Result<Graph, GenError> {
    if n <= d || d < 1 {
        return Err(invalid("need n > d >= 1"));
    }
    let mut g = random_connected(n, n - 1, seed)?;
    let mut r = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    for v in 0..n {
        while g.degree(v) < d {
            let candidates: Vec<Vertex> = (0..n).filter(|&w| w != v && !g.has_edge(v, w)).collect();
            // Prefer partners that are themselves deficient.
            let needy: Vec<Vertex> = candidates.iter().copied().filter(|&w| g.degree(w) < d).collect();
            let pool = if needy.is_empty() { &candidates } else { &needy };
            let w = *pool.choose(&mut r).expect("n > d leaves a free partner");
            g.add_edge(v, w).unwrap();
        }
    }
    Ok(g)
}

/// Uniform-ish connected cubic graph from the pairing model with rejection.
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n < 4 || n % 2 == 1 {
        return Err(invalid("cubic graphs need an even n >= 4"));
    }
    let mut r = rng(seed);
    for _ in 0..100_000 {
        let mut points: Vec<Vertex> = (0..3 * n).map(|p| p / 3).collect();
        points.shuffle(&mut r);
        let mut g = Graph::empty(n);
        let ok = points.chunks(2).all(|pair| g.add_edge(pair[0], pair[1]).is_ok());
        if ok && g.is_connected() {
            return Ok(g);
        }
    }
    Err(invalid("pairing model kept failing"))
}

/// A family name, integer parameters and an optional seed, e.g.
/// `gkd:k=2,d=3` or `random-min-degree:n=20,d=3,seed=1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub family: String,
    pub params: BTreeMap<String, u64>,
    pub seed: Option<u64>,
}

/// A generated graph and, for families that embed one, its star cover.
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub cover: Option<StarCover>,
}

pub const FAMILIES: &[&str] = &[
    "figure1",
    "gkd",
    "double-star",
    "wa",
    "wab",
    "w-tree",
    "petersen",
    "complete",
    "cycle",
    "path",
    "complete-bipartite",
    "hypercube",
    "random",
    "random-min-degree",
    "random-cubic",
];

impl GenSpec {
    pub fn new(family: &str) -> Self {
        GenSpec {
            family: family.to_string(),
            params: BTreeMap::new(),
            seed: None,
        }
    }

    pub fn with(mut self, key: &str, value: u64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    fn get(&self, key: &'static str) -> Result<usize, GenError> {
        self.params
            .get(key)
            .map(|&v| v as usize)
            .ok_or(GenError::MissingParam(key))
    }

    fn get_or(&self, key: &'static str, default: usize) -> usize {
        self.params.get(key).map(|&v| v as usize).unwrap_or(default)
    }

    pub fn generate(&self) -> Result<Generated, GenError> {
        let seed = self.seed.unwrap_or(0);
        let plain = |graph: Graph| Ok(Generated { graph, cover: None });
        match self.family.as_str() {
            "figure1" => plain(figure1()),
            "gkd" => plain(gkd(self.get("k")? as u32, self.get("d")?)?),
            "double-star" => {
                let (graph, cover) = double_star(self.get("m")?)?;
                Ok(Generated { graph, cover: Some(cover) })
            }
            "wa" => plain(wa_config(self.get("a")?)?.0),
            "wab" => plain(wab_config(self.get("a")?, self.get("b")?)?.0),
            "w-tree" => {
                let a = self.get_or("a", 1);
                let b = self.get_or("b", 0);
                let leaf = if b == 0 { LeafConfig::Wa(a) } else { LeafConfig::Wab(a, b) };
                plain(w_tree(&vec![leaf; self.get_or("leaves", 3)])?.graph)
            }
            "petersen" => plain(petersen()),
            "complete" => plain(complete(self.get("n")?)),
            "cycle" => plain(cycle(self.get("n")?)?),
            "path" => plain(path(self.get("n")?)),
            "complete-bipartite" => plain(complete_bipartite(self.get("a")?, self.get("b")?)),
            "hypercube" => plain(hypercube(self.get("d")? as u32)),
            "random" => plain(random_connected(self.get("n")?, self.get("m")?, seed)?),
            "random-min-degree" => plain(random_min_degree(self.get("n")?, self.get("d")?, seed)?),
            "random-cubic" => plain(random_cubic(self.get("n")?, seed)?),
            other => Err(GenError::UnknownFamily(other.to_string())),
        }
    }
}

impl FromStr for GenSpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut spec = GenSpec::new(family.trim());
        for kv in rest.split(',').filter(|t| !t.trim().is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| GenError::Syntax(s.to_string()))?;
            let v: u64 = v.trim().parse().map_err(|_| GenError::Syntax(s.to_string()))?;
            if k.trim() == "seed" {
                spec.seed = Some(v);
            } else {
                spec.params.insert(k.trim().to_string(), v);
            }
        }
        Ok(spec)
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        let mut parts: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if let Some(s) = self.seed {
            parts.push(format!("seed={s}"));
        }
        if !parts.is_empty() {
            write!(f, ":{}", parts.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::verify_w_configuration;
    use crate::graph::bridges;

    #[test]
    fn figure1_shape() {
        let g = figure1();
        assert_eq!((g.vertex_count(), g.edge_count()), (16, 24));
        assert!((0..16).all(|v| g.degree(v) == 3));
        assert!(g.is_connected());
    }

    #[test]
    fn gkd_sizes() {
        assert_eq!(gkd(1, 3).unwrap(), complete(4));
        let g = gkd(2, 3).unwrap();
        assert_eq!(g.vertex_count(), 20);
        assert_eq!(g.min_degree(), 3);
        assert_eq!(bridges(&g).len(), 4);
        assert_eq!(gkd(3, 3).unwrap().vertex_count(), 100);
        assert!(gkd(0, 3).is_err());
    }

    #[test]
    fn double_star_shape() {
        let (g, cover) = double_star(6).unwrap();
        assert_eq!(g.vertex_count(), 14);
        assert_eq!((g.degree(0), g.degree(7)), (6, 6));
        assert!(g.is_connected());
        assert!((1..7).chain(8..14).all(|v| g.degree(v) == 3));
        assert!(!g.has_triangle());
        assert_eq!(cover.validate(&g, 6), Ok(()));
    }

    #[test]
    fn configuration_hosts_verify() {
        for a in 1..5 {
            let (g, c) = wa_config(a).unwrap();
            assert_eq!(verify_w_configuration(&g, &c), Ok(()));
            assert_eq!(g.degree(c.centre), a + 2);
        }
        let (g, c) = wab_config(2, 2).unwrap();
        assert_eq!(verify_w_configuration(&g, &c), Ok(()));
        assert_eq!(g.degree(c.centre), 4);
        assert!(!g.has_edge(c.centre, c.connectors.0));
    }

    #[test]
    fn w_tree_configurations_verify() {
        let t = w_tree(&[LeafConfig::Wa(1), LeafConfig::Wab(1, 2), LeafConfig::Wa(3)]).unwrap();
        assert!(t.graph.is_connected());
        assert!(t.graph.min_degree() >= 3);
        for c in &t.configs {
            assert_eq!(verify_w_configuration(&t.graph, c), Ok(()));
        }
        assert!(w_tree(&[LeafConfig::Wa(1)]).is_err());
    }

    #[test]
    fn random_families_are_seeded() {
        let a = random_min_degree(20, 3, 1).unwrap();
        assert_eq!(a, random_min_degree(20, 3, 1).unwrap());
        assert!(a.is_connected() && a.min_degree() >= 3);
        let c = random_cubic(12, 5).unwrap();
        assert!((0..12).all(|v| c.degree(v) == 3));
        let r = random_connected(10, 15, 2).unwrap();
        assert_eq!(r.edge_count(), 15);
        assert!(r.is_connected());
    }

    #[test]
    fn spec_parsing() {
        let s: GenSpec = "gkd:k=2,d=3".parse().unwrap();
        assert_eq!(s.family, "gkd");
        assert_eq!(s.generate().unwrap().graph.vertex_count(), 20);
        assert_eq!(s.to_string(), "gkd:d=3,k=2");
        let r: GenSpec = "random-cubic:n=10,seed=4".parse().unwrap();
        assert_eq!(r.seed, Some(4));
        assert!(matches!("nope".parse::<GenSpec>().unwrap().generate(), Err(GenError::UnknownFamily(_))));
        assert!(matches!(GenSpec::new("gkd").generate(), Err(GenError::MissingParam("k"))));
        assert_eq!("wab:1:2".parse::<LeafConfig>(), Ok(LeafConfig::Wab(1, 2)));
    }
}
