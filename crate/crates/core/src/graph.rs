//! Simple undirected graphs and the connectivity machinery the rest of the
//! crate is built on: components, bridges, blocks, minimal 2-edge cuts,
//! induced subgraphs and almost balanced orientations of multigraphs.
//!
//! Vertices are dense integers `0..n`. Edges are stored normalised as
//! `(min, max)` so that edge lists are canonical and comparable.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

/// An undirected edge, always stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`. `v` must be an endpoint.
    pub fn other(self, v: Vertex) -> Vertex {
        debug_assert!(self.contains(v));
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("parallel edge {0}")]
    ParallelEdge(Edge),
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex set does not induce a 2-edge-connected subgraph")]
    NotTwoEdgeConnected,
    #[error("duplicate multigraph edge tag {0}")]
    DuplicateTag(usize),
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting loops, repeated edges and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    /// All edges in increasing `(min, max)` order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push(Edge(u, v));
                }
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v >= self.adj.len() {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.adj.len(),
            })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::ParallelEdge(Edge::new(u, v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    /// Removes `uv` if present; returns whether it was present.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        let pos = self.adj[u].binary_search(&v).unwrap();
        self.adj[u].remove(pos);
        let pos = self.adj[v].binary_search(&u).unwrap();
        self.adj[v].remove(pos);
        true
    }

    pub fn without_edges<'a, I>(&self, edges: I) -> Graph
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut g = self.clone();
        for e in edges {
            g.remove_edge(e.0, e.1);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || connected_components(self).len() == 1
    }

    /// True if the graph contains a triangle.
    pub fn has_triangle(&self) -> bool {
        for e in self.edges() {
            let (a, b) = (&self.adj[e.0], &self.adj[e.1]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => return true,
                }
            }
        }
        false
    }
}

/// Connected components of the subgraph made of the vertices accepted by
/// `alive` and the edges accepted by `edge_ok`. Components are sorted
/// internally and listed by their smallest vertex.
pub fn components_filtered<A, E>(g: &Graph, alive: A, edge_ok: E) -> Vec<Vec<Vertex>>
where
    A: Fn(Vertex) -> bool,
    E: Fn(Vertex, Vertex) -> bool,
{
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] || !alive(s) {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = vec![s];
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] && alive(w) && edge_ok(v, w) {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    components_filtered(g, |_| true, |_, _| true)
}

/// Whether `g` minus the given edges is connected (on all of its vertices).
pub fn connected_without_edges(g: &Graph, removed: &BTreeSet<Edge>) -> bool {
    g.vertex_count() <= 1
        || components_filtered(g, |_| true, |u, v| !removed.contains(&Edge::new(u, v))).len() == 1
}

/// Whether `g` minus the given vertices is connected. The empty graph counts
/// as connected.
pub fn connected_without_vertices(g: &Graph, removed: &[Vertex]) -> bool {
    let mut dead = vec![false; g.vertex_count()];
    for &v in removed {
        dead[v] = true;
    }
    components_filtered(g, |v| !dead[v], |_, _| true).len() <= 1
}

/// Shortest path from `from` to `to` using only vertices accepted by `alive`
/// and edges accepted by `edge_ok`. Neighbours are explored in increasing
/// order, so ties resolve towards lexicographically small paths.
pub fn bfs_path<A, E>(g: &Graph, from: Vertex, to: Vertex, alive: A, edge_ok: E) -> Option<Vec<Vertex>>
where
    A: Fn(Vertex) -> bool,
    E: Fn(Vertex, Vertex) -> bool,
{
    let n = g.vertex_count();
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    prev[from] = from;
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in g.neighbors(v) {
            if prev[w] == usize::MAX && alive(w) && edge_ok(v, w) {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    if prev[to] == usize::MAX {
        return None;
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

/// Result of a single lowpoint DFS: bridges plus the block decomposition.
struct LowpointScan {
    bridges: BTreeSet<Edge>,
    blocks: Vec<Vec<Vertex>>,
    cutvertices: BTreeSet<Vertex>,
}

fn lowpoint_scan(g: &Graph) -> LowpointScan {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut bridges = BTreeSet::new();
    let mut blocks = Vec::new();
    let mut cutvertices = BTreeSet::new();
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        if g.degree(root) == 0 {
            blocks.push(vec![root]);
            continue;
        }
        let mut root_children = 0usize;
        stack.push((root, UNSEEN, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent, i) = *top;
            if i < g.degree(v) {
                top.2 += 1;
                let w = g.neighbors(v)[i];
                if w == parent {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] > disc[u] {
                        bridges.insert(Edge::new(u, v));
                    }
                    if low[v] >= disc[u] {
                        let mut block = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.insert(a);
                            block.insert(b);
                            if (a, b) == (u, v) {
                                break;
                            }
                        }
                        blocks.push(block.into_iter().collect());
                        if u != root {
                            cutvertices.insert(u);
                        }
                    }
                }
            }
        }
        if root_children >= 2 {
            cutvertices.insert(root);
        }
    }
    blocks.sort();
    LowpointScan {
        bridges,
        blocks,
        cutvertices,
    }
}

/// Edges whose removal increases the number of components.
pub fn bridges(g: &Graph) -> BTreeSet<Edge> {
    lowpoint_scan(g).bridges
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks, each sorted, listed in lexicographic order.
    pub blocks: Vec<Vec<Vertex>>,
    pub cutvertices: BTreeSet<Vertex>,
    /// `endblock[i]` is true when block `i` contains at most one cutvertex.
    pub endblock: Vec<bool>,
}

impl BlockDecomposition {
    pub fn endblocks(&self) -> impl Iterator<Item = &[Vertex]> {
        self.blocks
            .iter()
            .zip(&self.endblock)
            .filter(|(_, &e)| e)
            .map(|(b, _)| b.as_slice())
    }

    /// Cutvertices of the whole graph lying in `block`.
    pub fn cutvertices_in(&self, block: &[Vertex]) -> Vec<Vertex> {
        block
            .iter()
            .copied()
            .filter(|v| self.cutvertices.contains(v))
            .collect()
    }
}

pub fn blocks_and_cutvertices(g: &Graph) -> Result<BlockDecomposition, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let scan = lowpoint_scan(g);
    let endblock = scan
        .blocks
        .iter()
        .map(|b| b.iter().filter(|v| scan.cutvertices.contains(v)).count() <= 1)
        .collect();
    Ok(BlockDecomposition {
        blocks: scan.blocks,
        cutvertices: scan.cutvertices,
        endblock,
    })
}

/// Maps between the vertices of an induced subgraph and its host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdMap {
    to_host: Vec<Vertex>,
    from_host: Vec<Option<Vertex>>,
}

impl IdMap {
    pub fn host(&self, local: Vertex) -> Vertex {
        self.to_host[local]
    }

    pub fn local(&self, host: Vertex) -> Option<Vertex> {
        self.from_host.get(host).copied().flatten()
    }

    pub fn hosts(&self) -> &[Vertex] {
        &self.to_host
    }

    pub fn host_edge(&self, e: Edge) -> Edge {
        Edge::new(self.to_host[e.0], self.to_host[e.1])
    }

    pub fn host_path(&self, path: &[Vertex]) -> Vec<Vertex> {
        path.iter().map(|&v| self.to_host[v]).collect()
    }
}

/// The subgraph induced by `keep`, relabelled in increasing host order.
pub fn induced_subgraph(g: &Graph, keep: &[Vertex]) -> Result<(Graph, IdMap), GraphError> {
    let n = g.vertex_count();
    let mut to_host: Vec<Vertex> = keep.to_vec();
    to_host.sort_unstable();
    to_host.dedup();
    if let Some(&v) = to_host.iter().find(|&&v| v >= n) {
        return Err(GraphError::VertexOutOfRange { vertex: v, n });
    }
    let mut from_host = vec![None; n];
    for (i, &v) in to_host.iter().enumerate() {
        from_host[v] = Some(i);
    }
    let mut adj = vec![Vec::new(); to_host.len()];
    for (i, &v) in to_host.iter().enumerate() {
        adj[i] = g.neighbors(v).iter().filter_map(|&w| from_host[w]).collect();
    }
    Ok((Graph { adj }, IdMap { to_host, from_host }))
}

/// A minimal 2-edge cut inside a block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutResult {
    pub cut_edges: (Edge, Edge),
    /// The side of the cut being reported, sorted, in host ids.
    pub component: Vec<Vertex>,
}

/// Among all 2-edge cuts of the subgraph induced by `block`, the one whose
/// side avoiding `avoid` is smallest (ties: lexicographically smallest side).
/// With no `avoid`, both sides of each cut compete. Returns `None` exactly
/// when the block is 3-edge-connected.
///
/// Every pair is found as `{e1, e2}` with `e2` a bridge of `block - e1`, which
/// covers all pairs in `O(m (n + m))`.
pub fn min_two_edge_cut_component(
    g: &Graph,
    block: &[Vertex],
    avoid: Option<Vertex>,
) -> Result<Option<CutResult>, GraphError> {
    let (sub, map) = induced_subgraph(g, block)?;
    if sub.vertex_count() < 2 || !sub.is_connected() || !bridges(&sub).is_empty() {
        return Err(GraphError::NotTwoEdgeConnected);
    }
    let avoid_local = match avoid {
        Some(a) => Some(map.local(a).ok_or(GraphError::VertexOutOfRange {
            vertex: a,
            n: g.vertex_count(),
        })?),
        None => None,
    };
    let mut best: Option<(Vec<Vertex>, (Edge, Edge))> = None;
    let edges = sub.edges();
    for &e1 in &edges {
        let mut minus = sub.clone();
        minus.remove_edge(e1.0, e1.1);
        for e2 in bridges(&minus) {
            if e2 <= e1 {
                continue;
            }
            minus.remove_edge(e2.0, e2.1);
            let comps = connected_components(&minus);
            minus.add_edge(e2.0, e2.1).expect("re-adding a removed edge");
            debug_assert_eq!(comps.len(), 2);
            for side in comps {
                if avoid_local.is_some_and(|a| side.binary_search(&a).is_ok()) {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some((cur, _)) => (side.len(), &side) < (cur.len(), cur),
                };
                if better {
                    best = Some((side, (e1, e2)));
                }
            }
        }
    }
    Ok(best.map(|(side, (e1, e2))| {
        let mut component: Vec<Vertex> = side.iter().map(|&v| map.host(v)).collect();
        component.sort_unstable();
        CutResult {
            cut_edges: (map.host_edge(e1), map.host_edge(e2)),
            component,
        }
    }))
}

/// Connected, bridgeless, and without 2-edge cuts.
pub fn is_three_edge_connected(g: &Graph) -> bool {
    if g.vertex_count() < 2 || !g.is_connected() || !bridges(g).is_empty() {
        return false;
    }
    let all: Vec<Vertex> = (0..g.vertex_count()).collect();
    matches!(min_two_edge_cut_component(g, &all, None), Ok(None))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiEdge {
    pub a: usize,
    pub b: usize,
    pub tag: usize,
}

/// A multigraph over a list of host vertices; loops and parallel edges are
/// allowed. Endpoints index into `labels`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    labels: Vec<Vertex>,
    edges: Vec<MultiEdge>,
}

impl Multigraph {
    pub fn new(labels: Vec<Vertex>) -> Self {
        Multigraph {
            labels,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize, tag: usize) -> Result<(), GraphError> {
        let n = self.labels.len();
        for x in [a, b] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if self.edges.iter().any(|e| e.tag == tag) {
            return Err(GraphError::DuplicateTag(tag));
        }
        self.edges.push(MultiEdge { a, b, tag });
        Ok(())
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn edges(&self) -> &[MultiEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, i: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.a == i) + usize::from(e.b == i))
            .sum()
    }
}

/// One direction per multigraph edge, as `(tail, head)` in multigraph
/// indices, parallel to `Multigraph::edges`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub arcs: Vec<(usize, usize)>,
}

impl Orientation {
    pub fn in_degree(&self, i: usize) -> usize {
        self.arcs.iter().filter(|&&(_, h)| h == i).count()
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.arcs.iter().filter(|&&(t, _)| t == i).count()
    }
}

/// Orients every edge so that in- and out-degree agree at even-degree
/// vertices and differ by one at odd-degree vertices.
///
/// A phantom vertex is joined to every odd-degree vertex, making all degrees
/// even; each edge is then oriented along the closed trails of Hierholzer's
/// walk, and the phantom edges are dropped.
pub fn almost_balanced_orientation(m: &Multigraph) -> Orientation {
    let n = m.vertex_count();
    let phantom = n;
    let mut ends: Vec<(usize, usize)> = m.edges.iter().map(|e| (e.a, e.b)).collect();
    for i in 0..n {
        if m.degree(i) % 2 == 1 {
            ends.push((i, phantom));
        }
    }
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (id, &(a, b)) in ends.iter().enumerate() {
        incident[a].push((id, b));
        incident[b].push((id, a));
    }
    let mut used = vec![false; ends.len()];
    let mut arcs = vec![(0usize, 0usize); ends.len()];
    let mut next = vec![0usize; n + 1];
    for start in 0..=n {
        let mut stack = vec![start];
        while let Some(&v) = stack.last() {
            while next[v] < incident[v].len() && used[incident[v][next[v]].0] {
                next[v] += 1;
            }
            if let Some(&(id, w)) = incident[v].get(next[v]) {
                used[id] = true;
                arcs[id] = (v, w);
                stack.push(w);
            } else {
                stack.pop();
            }
        }
    }
    arcs.truncate(m.edges.len());
    Orientation { arcs }
}
