//! Brute-force ground truth over spanning trees.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::tree::Tree;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    pub max_trees: u64,
    pub max_seconds: f64,
}

impl EnumerationBudget {
    pub const DEFAULT_TREES: u64 = 10_000_000;
    pub const DEFAULT_SECONDS: f64 = 300.0;

    pub fn unlimited() -> Self {
        EnumerationBudget { max_trees: u64::MAX, max_seconds: f64::INFINITY }
    }
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_trees: Self::DEFAULT_TREES, max_seconds: Self::DEFAULT_SECONDS }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumStatus {
    Completed,
    /// The tree or time budget ran out.
    Truncated,
    /// The visitor asked to stop.
    Stopped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub status: EnumStatus,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("unknown predicate {0:?}")]
    UnknownPredicate(String),
}

/// Union-find with undo; no path compression so that rollback is exact.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<(usize, usize)>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu { parent: (0..n).collect(), size: vec![1; n], log: Vec::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.log.push((a, b));
        true
    }

    fn undo(&mut self) {
        let (a, b) = self.log.pop().expect("undo without union");
        self.parent[b] = b;
        self.size[a] -= self.size[b];
    }
}

struct Enumerator<F> {
    n: usize,
    edges: Vec<Edge>,
    dsu: RollbackDsu,
    chosen: Vec<Edge>,
    visit: F,
    budget: EnumerationBudget,
    start: Instant,
    count: u64,
    nodes: u64,
    halted: Option<EnumStatus>,
    scratch: Vec<usize>,
}

impl<F: FnMut(&[Edge]) -> bool> Enumerator<F> {
    /// Whether the chosen components stay connected using edges `from..`.
    fn completable(&mut self, from: usize) -> bool {
        let n = self.n;
        let scratch = &mut self.scratch;
        scratch.clear();
        scratch.extend(0..n);
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut parts = 0;
        for v in 0..n {
            if self.dsu.find(v) == v {
                parts += 1;
            }
        }
        for e in &self.edges[from..] {
            let (a, b) = (self.dsu.find(e.0), self.dsu.find(e.1));
            let (ra, rb) = (root(scratch, a), root(scratch, b));
            if ra != rb {
                scratch[ra] = rb;
                parts -= 1;
                if parts == 1 {
                    return true;
                }
            }
        }
        parts == 1
    }

    fn run(&mut self, i: usize) {
        if self.halted.is_some() {
            return;
        }
        if self.chosen.len() + 1 == self.n {
            self.count += 1;
            if !(self.visit)(&self.chosen) {
                self.halted = Some(EnumStatus::Stopped);
            } else if self.count >= self.budget.max_trees {
                self.halted = Some(EnumStatus::Truncated);
            }
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && self.start.elapsed() > Duration::from_secs_f64(self.budget.max_seconds.min(1e9)) {
            self.halted = Some(EnumStatus::Truncated);
            return;
        }
        if i == self.edges.len() || self.edges.len() - i < self.n - 1 - self.chosen.len() {
            return;
        }
        let e = self.edges[i];
        if self.dsu.union(e.0, e.1) {
            self.chosen.push(e);
            self.run(i + 1);
            self.chosen.pop();
            self.dsu.undo();
        }
        if self.halted.is_none() && self.completable(i + 1) {
            self.run(i + 1);
        }
    }
}

/// Visits every spanning tree once (edges sorted, inclusion branch first).
/// The visitor returns `false` to stop early.
pub fn for_each_spanning_tree<F>(g: &Graph, budget: EnumerationBudget, visit: F) -> Result<Enumeration, OracleError>
where
    F: FnMut(&[Edge]) -> bool,
{
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let mut en = Enumerator {
        n,
        edges: g.edges(),
        dsu: RollbackDsu::new(n),
        chosen: Vec::with_capacity(n),
        visit,
        budget,
        start: Instant::now(),
        count: 0,
        nodes: 0,
        halted: None,
        scratch: Vec::with_capacity(n),
    };
    en.run(0);
    Ok(Enumeration { status: en.halted.unwrap_or(EnumStatus::Completed), count: en.count })
}

/// A property of a spanning tree, possibly relative to the host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreePredicate {
    /// Two adjacent vertices both of tree degree 2.
    AdjacentDeg2Pair,
    /// No two adjacent vertices of tree degree 2.
    Deg2Independent,
    /// No path on three vertices all of tree degree 2.
    NoThreeConsecutiveDeg2,
    /// No path on three vertices of tree degree 2 and host degree at least 3.
    Good,
    /// The tree degree histogram contains each listed degree.
    HasDegrees(Vec<usize>),
}

impl TreePredicate {
    pub fn holds_on(&self, g: &Graph, edges: &[Edge]) -> bool {
        let n = g.vertex_count();
        let mut deg = vec![0usize; n];
        // For degree-2 vertices, their two tree neighbours.
        let mut pair = vec![[usize::MAX; 2]; n];
        for e in edges {
            for (a, b) in [(e.0, e.1), (e.1, e.0)] {
                if deg[a] < 2 {
                    pair[a][deg[a]] = b;
                }
                deg[a] += 1;
            }
        }
        let run = |mask: &dyn Fn(Vertex) -> bool| {
            (0..n).any(|q| {
                deg[q] == 2 && mask(q) && pair[q].iter().all(|&p| deg[p] == 2 && mask(p))
            })
        };
        match self {
            TreePredicate::AdjacentDeg2Pair => edges.iter().any(|e| deg[e.0] == 2 && deg[e.1] == 2),
            TreePredicate::Deg2Independent => !edges.iter().any(|e| deg[e.0] == 2 && deg[e.1] == 2),
            TreePredicate::NoThreeConsecutiveDeg2 => !run(&|_| true),
            TreePredicate::Good => !run(&|v| g.degree(v) >= 3),
            TreePredicate::HasDegrees(ds) => ds.iter().all(|&d| deg.contains(&d)),
        }
    }

    pub fn holds(&self, g: &Graph, t: &Tree) -> bool {
        self.holds_on(g, t.edges())
    }
}

impl FromStr for TreePredicate {
    type Err = OracleError;

    /// `adjacent-deg2-pair`, `deg2-independent`, `no-3-consecutive-deg2`,
    /// `good`, or `has-degrees:1,2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "adjacent-deg2-pair" => return Ok(TreePredicate::AdjacentDeg2Pair),
            "deg2-independent" => return Ok(TreePredicate::Deg2Independent),
            "no-3-consecutive-deg2" => return Ok(TreePredicate::NoThreeConsecutiveDeg2),
            "good" => return Ok(TreePredicate::Good),
            _ => {}
        }
        if let Some(list) = s.strip_prefix("has-degrees:") {
            let ds: Result<Vec<usize>, _> = list.split(',').map(|t| t.trim().parse()).collect();
            if let Ok(ds) = ds {
                if !ds.is_empty() {
                    return Ok(TreePredicate::HasDegrees(ds));
                }
            }
        }
        Err(OracleError::UnknownPredicate(s.to_string()))
    }
}

impl fmt::Display for TreePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreePredicate::AdjacentDeg2Pair => f.write_str("adjacent-deg2-pair"),
            TreePredicate::Deg2Independent => f.write_str("deg2-independent"),
            TreePredicate::NoThreeConsecutiveDeg2 => f.write_str("no-3-consecutive-deg2"),
            TreePredicate::Good => f.write_str("good"),
            TreePredicate::HasDegrees(ds) => {
                let parts: Vec<String> = ds.iter().map(usize::to_string).collect();
                write!(f, "has-degrees:{}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub verdict: Verdict,
    /// Counterexample for a universal check, example for an existential one.
    pub witness: Option<Tree>,
    pub visited: u64,
    /// Total number of spanning trees, known when the enumeration finished.
    pub exact_count: Option<u64>,
}

fn witness_tree(g: &Graph, edges: Vec<Edge>) -> Tree {
    Tree::spanning(g, edges).expect("enumerated edge sets are spanning trees")
}

pub fn all_trees_satisfy(g: &Graph, p: &TreePredicate, budget: EnumerationBudget) -> Result<OracleResult, OracleError> {
    let mut bad = None;
    let run = for_each_spanning_tree(g, budget, |edges| {
        if p.holds_on(g, edges) {
            true
        } else {
            bad = Some(edges.to_vec());
            false
        }
    })?;
    let (verdict, exact_count) = match run.status {
        EnumStatus::Completed => (Verdict::True, Some(run.count)),
        EnumStatus::Stopped => (Verdict::False, None),
        EnumStatus::Truncated => (Verdict::Unknown, None),
    };
    Ok(OracleResult { verdict, witness: bad.map(|e| witness_tree(g, e)), visited: run.count, exact_count })
}

pub fn exists_tree_satisfying(g: &Graph, p: &TreePredicate, budget: EnumerationBudget) -> Result<OracleResult, OracleError> {
    let mut good = None;
    let run = for_each_spanning_tree(g, budget, |edges| {
        if p.holds_on(g, edges) {
            good = Some(edges.to_vec());
            false
        } else {
            true
        }
    })?;
    let (verdict, exact_count) = match run.status {
        EnumStatus::Completed => (Verdict::False, Some(run.count)),
        EnumStatus::Stopped => (Verdict::True, None),
        EnumStatus::Truncated => (Verdict::Unknown, None),
    };
    let witness = good.map(|e| witness_tree(g, e));
    debug_assert!(witness.as_ref().is_none_or(|t| p.holds(g, t)));
    Ok(OracleResult { verdict, witness, visited: run.count, exact_count })
}

/// Number of spanning trees by the matrix-tree theorem, with fraction-free
/// (Bareiss) elimination on a Laplacian cofactor.
pub fn count_spanning_trees(g: &Graph) -> BigInt {
    let n = g.vertex_count();
    if n <= 1 {
        return BigInt::one();
    }
    let k = n - 1;
    let mut a: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        BigInt::from(g.degree(i))
                    } else if g.has_edge(i, j) {
                        BigInt::from(-1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for p in 0..k {
        if a[p][p].is_zero() {
            match (p + 1..k).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let v = &a[i][j] * &a[p][p] - &a[i][p] * &a[p][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[p][p].clone();
    }
    a[k - 1][k - 1].clone() * sign
}

/// A uniformly random spanning tree by Wilson's loop-erased walks.
pub fn sample_spanning_tree<R: Rng>(g: &Graph, rng: &mut R) -> Result<Tree, OracleError> {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let mut in_tree = vec![false; n];
    let mut next = vec![usize::MAX; n];
    in_tree[0] = true;
    let mut edges = Vec::with_capacity(n - 1);
    for start in 1..n {
        let mut u = start;
        while !in_tree[u] {
            let nb = g.neighbors(u);
            next[u] = nb[rng.gen_range(0..nb.len())];
            u = next[u];
        }
        let mut u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            edges.push(Edge::new(u, next[u]));
            u = next[u];
        }
    }
    Ok(Tree::spanning(g, edges).expect("loop-erased walks form a spanning tree"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleResult {
    pub samples: u64,
    pub failures: u64,
    pub counterexample: Option<Tree>,
}

/// Evidence, not proof: checks `p` on `samples` independent uniform trees.
pub fn sample_trees_satisfy(g: &Graph, p: &TreePredicate, samples: u64, seed: u64) -> Result<SampleResult, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SampleResult { samples, failures: 0, counterexample: None };
    for _ in 0..samples {
        let t = sample_spanning_tree(g, &mut rng)?;
        if !p.holds(g, &t) {
            out.failures += 1;
            out.counterexample.get_or_insert(t);
        }
    }
    Ok(out)
}
