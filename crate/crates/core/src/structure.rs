//! Searches for the substructures the constructions consume.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificates::{verify_w_configuration, walk_edges, WConfig, WKind};
use crate::graph::{bfs_path, components_filtered, Edge, Graph, Vertex};

/// Which deletion a "non-separating" test refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separation {
    /// `G - V(C)` must be connected.
    VertexDeletion,
    /// `G - E(C)` must be connected.
    EdgeDeletion,
}

/// Whether `g` stays connected after deleting the vertices (or edges) of the
/// cycle or path `seq`.
pub fn is_nonseparating(g: &Graph, seq: &[Vertex], closed: bool, mode: Separation) -> bool {
    match mode {
        Separation::VertexDeletion => {
            let mut dead = vec![false; g.vertex_count()];
            for &v in seq {
                dead[v] = true;
            }
            components_filtered(g, |v| !dead[v], |_, _| true).len() <= 1
        }
        Separation::EdgeDeletion => {
            let removed: BTreeSet<Edge> = walk_edges(seq, closed).into_iter().collect();
            components_filtered(g, |_| true, |u, v| !removed.contains(&Edge::new(u, v))).len() <= 1
        }
    }
}

/// Visits chordless cycles on vertices accepted by `allowed` in order of
/// length, then lexicographically (each cycle written from its smallest
/// vertex, second vertex smaller than the last), and returns the first one
/// `accept` takes.
pub fn find_induced_cycle<A, F>(g: &Graph, allowed: A, mut accept: F) -> Option<Vec<Vertex>>
where
    A: Fn(Vertex) -> bool,
    F: FnMut(&[Vertex]) -> bool,
{
    let n = g.vertex_count();
    let verts: Vec<Vertex> = (0..n).filter(|&v| allowed(v)).collect();
    let mut on = vec![false; n];
    for len in 3..=verts.len() {
        for &s in &verts {
            let mut path = vec![s];
            on[s] = true;
            let found = extend_cycle(g, &allowed, len, &mut path, &mut on, &mut accept);
            on[s] = false;
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

fn extend_cycle<A, F>(
    g: &Graph,
    allowed: &A,
    len: usize,
    path: &mut Vec<Vertex>,
    on: &mut [bool],
    accept: &mut F,
) -> Option<Vec<Vertex>>
where
    A: Fn(Vertex) -> bool,
    F: FnMut(&[Vertex]) -> bool,
{
    let s = path[0];
    let last = *path.last().unwrap();
    let closing = path.len() + 1 == len;
    for &w in g.neighbors(last) {
        if w <= s || on[w] || !allowed(w) {
            continue;
        }
        let mut touches_start = false;
        let mut chord = false;
        for &x in g.neighbors(w) {
            if x == s {
                touches_start = true;
            } else if x != last && on[x] {
                chord = true;
                break;
            }
        }
        // The start vertex counts as `last` for the second vertex.
        if chord || (touches_start && !closing && path.len() > 1) {
            continue;
        }
        if closing {
            if !touches_start || w < path[1] {
                continue;
            }
            path.push(w);
            if accept(path) {
                return Some(path.clone());
            }
            path.pop();
            continue;
        }
        path.push(w);
        on[w] = true;
        let found = extend_cycle(g, allowed, len, path, on, accept);
        on[w] = false;
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// First chordless cycle (by length, then lexicographically) avoiding
/// `forbidden` whose deletion in the given sense keeps `g` connected.
pub fn find_nonseparating_induced_cycle(
    g: &Graph,
    forbidden: &BTreeSet<Vertex>,
    mode: Separation,
) -> Option<Vec<Vertex>> {
    find_induced_cycle(g, |v| !forbidden.contains(&v), |c| is_nonseparating(g, c, true, mode))
}

/// Removes chords from a simple path by always jumping to the furthest later
/// vertex adjacent to the current one. Endpoints are kept.
pub fn shortcut_to_induced(g: &Graph, seq: &[Vertex]) -> Vec<Vertex> {
    let mut out = vec![seq[0]];
    let mut i = 0;
    while i + 1 < seq.len() {
        let j = (i + 1..seq.len())
            .rev()
            .find(|&j| g.has_edge(seq[i], seq[j]))
            .expect("consecutive path vertices are adjacent");
        out.push(seq[j]);
        i = j;
    }
    out
}

/// Component ids of `g - E(path)` and the id of the tracked component.
fn edge_deleted_components(g: &Graph, path: &[Vertex], anchor: &[Vertex]) -> (Vec<usize>, Vec<usize>, usize) {
    let removed: BTreeSet<Edge> = walk_edges(path, false).into_iter().collect();
    let comps = components_filtered(g, |_| true, |u, v| !removed.contains(&Edge::new(u, v)));
    label_components(g.vertex_count(), comps, anchor)
}

fn vertex_deleted_components(g: &Graph, path: &[Vertex], anchor: &[Vertex]) -> (Vec<usize>, Vec<usize>, usize) {
    let mut dead = vec![false; g.vertex_count()];
    for &v in path {
        dead[v] = true;
    }
    let comps = components_filtered(g, |v| !dead[v], |_, _| true);
    label_components(g.vertex_count(), comps, anchor)
}

/// Returns (component id per vertex, or `usize::MAX`; sizes; tracked id).
/// The tracked component contains `anchor[0]`, or is the largest one.
fn label_components(n: usize, comps: Vec<Vec<Vertex>>, anchor: &[Vertex]) -> (Vec<usize>, Vec<usize>, usize) {
    let mut id = vec![usize::MAX; n];
    let mut sizes = Vec::with_capacity(comps.len());
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            id[v] = i;
        }
        sizes.push(c.len());
    }
    let tracked = match anchor.first() {
        Some(&a) => id[a],
        None => (0..sizes.len())
            .max_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(b.cmp(&a)))
            .unwrap_or(usize::MAX),
    };
    (id, sizes, tracked)
}

/// Outcome of a hill-climb over induced paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Climb {
    /// The deletion leaves the graph connected.
    Connected(Vec<Vertex>),
    /// No exchange improves the tracked component; the path is a local optimum.
    Stuck(Vec<Vertex>),
}

/// Improves an induced path with fixed endpoints until `g - E(P)` is
/// connected. A component `L` other than the tracked one `K` whose first and
/// last path vertices enclose a vertex of `K` is rerouted through: the
/// enclosed subpath is replaced by a path inside `L`, then chords are cut.
/// `K` contains `anchor[0]`, or is the largest component when `anchor` is
/// empty; `anchor` vertices should stay off the path.
pub fn climb_induced_path(g: &Graph, start: Vec<Vertex>, anchor: &[Vertex]) -> Climb {
    let mut path = shortcut_to_induced(g, &start);
    loop {
        let (id, sizes, k) = edge_deleted_components(g, &path, anchor);
        if sizes.len() <= 1 {
            return Climb::Connected(path);
        }
        let removed: BTreeSet<Edge> = walk_edges(&path, false).into_iter().collect();
        let mut best: Option<(usize, Vec<Vertex>)> = None;
        for l in 0..sizes.len() {
            if l == k {
                continue;
            }
            let idx: Vec<usize> = (0..path.len()).filter(|&i| id[path[i]] == l).collect();
            let (Some(&i1), Some(&i2)) = (idx.first(), idx.last()) else {
                continue;
            };
            if !(i1 + 1..i2).any(|j| id[path[j]] == k) {
                continue;
            }
            let detour = bfs_path(
                g,
                path[i1],
                path[i2],
                |v| id[v] == l,
                |u, v| !removed.contains(&Edge::new(u, v)),
            )
            .expect("component is connected");
            let mut cand = path[..i1].to_vec();
            cand.extend(detour);
            cand.extend_from_slice(&path[i2 + 1..]);
            let cand = shortcut_to_induced(g, &cand);
            let rep = (0..g.vertex_count()).find(|&v| id[v] == k).unwrap();
            let (cid, csizes, _) = edge_deleted_components(g, &cand, anchor);
            let score = csizes[cid[rep]];
            let better = match &best {
                None => true,
                Some((s, p)) => score > *s || (score == *s && cand < *p),
            };
            if better {
                best = Some((score, cand));
            }
        }
        match best {
            Some((score, cand)) if score > sizes[k] => path = cand,
            _ => return Climb::Stuck(path),
        }
    }
}

/// An induced `a`–`b` path whose edge deletion keeps `g` connected, found by
/// hill-climbing from a shortest path. Always succeeds on 3-edge-connected
/// graphs; `None` means the climb got stuck.
pub fn find_nonseparating_induced_path(
    g: &Graph,
    a: Vertex,
    b: Vertex,
    anchor: &BTreeSet<Vertex>,
) -> Option<Vec<Vertex>> {
    if a == b || a >= g.vertex_count() || b >= g.vertex_count() {
        return None;
    }
    let start = bfs_path(g, a, b, |_| true, |_, _| true)?;
    let anchor: Vec<Vertex> = anchor.iter().copied().collect();
    match climb_induced_path(g, start, &anchor) {
        Climb::Connected(p) => Some(p),
        Climb::Stuck(_) => None,
    }
}

/// Vertex-deletion analogue of [`climb_induced_path`]: grows the component
/// of `g - V(P)` holding `anchor[0]` by rerouting through other components.
pub fn climb_vertex_path<A>(g: &Graph, start: Vec<Vertex>, anchor: &[Vertex], alive: A) -> Climb
where
    A: Fn(Vertex) -> bool,
{
    let mut path = shortcut_to_induced(g, &start);
    loop {
        let (id, sizes, k) = vertex_deleted_components(g, &path, anchor);
        if sizes.len() <= 1 {
            return Climb::Connected(path);
        }
        let mut best: Option<(usize, Vec<Vertex>)> = None;
        for l in 0..sizes.len() {
            if l == k {
                continue;
            }
            let touching: Vec<usize> = (0..path.len())
                .filter(|&i| g.neighbors(path[i]).iter().any(|&w| id[w] == l))
                .collect();
            let (Some(&i1), Some(&i2)) = (touching.first(), touching.last()) else {
                continue;
            };
            if i2 < i1 + 2 {
                continue;
            }
            let entry: Vec<Vertex> = g.neighbors(path[i1]).iter().copied().filter(|&w| id[w] == l && alive(w)).collect();
            let exits: BTreeSet<Vertex> = g.neighbors(path[i2]).iter().copied().filter(|&w| id[w] == l && alive(w)).collect();
            let mut detour = None;
            for &s in &entry {
                for &t in &exits {
                    if let Some(p) = bfs_path(g, s, t, |v| id[v] == l && alive(v), |_, _| true) {
                        if detour.as_ref().is_none_or(|d: &Vec<Vertex>| p.len() < d.len()) {
                            detour = Some(p);
                        }
                    }
                }
            }
            let Some(detour) = detour else { continue };
            let mut cand = path[..=i1].to_vec();
            cand.extend(detour);
            cand.extend_from_slice(&path[i2..]);
            let cand = shortcut_to_induced(g, &cand);
            let (_, csizes, ck) = vertex_deleted_components(g, &cand, anchor);
            let score = if ck == usize::MAX { 0 } else { csizes[ck] };
            let better = match &best {
                None => true,
                Some((s, p)) => score > *s || (score == *s && cand < *p),
            };
            if better {
                best = Some((score, cand));
            }
        }
        match best {
            Some((score, cand)) if score > sizes[k] => path = cand,
            _ => return Climb::Stuck(path),
        }
    }
}

/// Calls `visit` on every induced `a`–`b` path inside `alive`, in
/// lexicographic order, until it returns `true` or `budget` extension steps
/// have been spent. Returns the accepted path, and whether the search ran to
/// completion.
pub fn for_each_induced_path<A, F>(
    g: &Graph,
    a: Vertex,
    b: Vertex,
    alive: A,
    budget: u64,
    mut visit: F,
) -> (Option<Vec<Vertex>>, bool)
where
    A: Fn(Vertex) -> bool,
    F: FnMut(&[Vertex]) -> bool,
{
    struct Walk<'a, A, F> {
        g: &'a Graph,
        b: Vertex,
        alive: A,
        visit: F,
        steps: u64,
        budget: u64,
        on: Vec<bool>,
        path: Vec<Vertex>,
    }
    impl<A: Fn(Vertex) -> bool, F: FnMut(&[Vertex]) -> bool> Walk<'_, A, F> {
        fn go(&mut self) -> Option<Vec<Vertex>> {
            let last = *self.path.last().unwrap();
            for &w in self.g.neighbors(last) {
                if self.steps >= self.budget {
                    return None;
                }
                if self.on[w] || !(self.alive)(w) {
                    continue;
                }
                let chord = self.g.neighbors(w).iter().any(|&x| x != last && self.on[x]);
                if chord {
                    continue;
                }
                self.steps += 1;
                self.path.push(w);
                if w == self.b {
                    if (self.visit)(&self.path) {
                        return Some(self.path.clone());
                    }
                } else {
                    self.on[w] = true;
                    let found = self.go();
                    self.on[w] = false;
                    if found.is_some() {
                        return found;
                    }
                }
                self.path.pop();
            }
            None
        }
    }
    if a == b {
        return (None, true);
    }
    let mut walk = Walk {
        g,
        b,
        alive,
        visit: &mut visit,
        steps: 0,
        budget,
        on: vec![false; g.vertex_count()],
        path: vec![a],
    };
    walk.on[a] = true;
    let found = walk.go();
    let complete = found.is_some() || walk.steps < walk.budget;
    (found, complete)
}

/// `k >= 3` internally disjoint `x`–`y` paths whose interior vertices have
/// degree 2 in the host. Paths are listed with both endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRail {
    pub endpoints: (Vertex, Vertex),
    pub paths: Vec<Vec<Vertex>>,
}

/// Finds a k-rail with all its vertices in `region`, preferring the
/// lexicographically smallest endpoint pair.
pub fn find_k_rail(g: &Graph, region: &BTreeSet<Vertex>) -> Option<KRail> {
    let mut groups: BTreeMap<(Vertex, Vertex), Vec<Vec<Vertex>>> = BTreeMap::new();
    let mut seen = vec![false; g.vertex_count()];
    for t in 0..g.vertex_count() {
        if seen[t] || g.degree(t) != 2 {
            continue;
        }
        // Walk the thread of degree-2 vertices through t in both directions.
        let mut thread = vec![t];
        seen[t] = true;
        let mut ends = Vec::new();
        for &first in g.neighbors(t) {
            let mut prev = t;
            let mut cur = first;
            let mut side = Vec::new();
            while g.degree(cur) == 2 && cur != t {
                seen[cur] = true;
                side.push(cur);
                let nb = g.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
            }
            if cur == t {
                ends.clear();
                break;
            }
            ends.push((cur, side));
        }
        if ends.len() != 2 {
            continue;
        }
        let (x, mut left) = ends.remove(0);
        let (y, right) = ends.remove(0);
        if x == y {
            continue;
        }
        left.reverse();
        let mut full = vec![x];
        full.extend(left);
        full.append(&mut thread);
        full.extend(right);
        full.push(y);
        if x > y {
            full.reverse();
        }
        groups.entry((x.min(y), x.max(y))).or_default().push(full);
    }
    for (&(x, y), paths) in groups.iter_mut() {
        if g.has_edge(x, y) {
            paths.push(vec![x, y]);
        }
        paths.retain(|p| p.iter().all(|v| region.contains(v)));
        if paths.len() >= 3 {
            paths.sort();
            return Some(KRail {
                endpoints: (x, y),
                paths: paths.clone(),
            });
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub centre: Vertex,
    pub leaves: Vec<Vertex>,
}

impl Star {
    pub fn size(&self) -> usize {
        self.leaves.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(self.centre).chain(self.leaves.iter().copied())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarCover {
    pub stars: Vec<Star>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StarCoverError {
    #[error("vertex {0} is covered twice")]
    Overlap(Vertex),
    #[error("vertex {0} is not covered")]
    Uncovered(Vertex),
    #[error("leaf {leaf} is not adjacent to centre {centre}")]
    NotAdjacent { centre: Vertex, leaf: Vertex },
    #[error("star at {centre} has size {size}, below {min_size}")]
    TooSmall { centre: Vertex, size: usize, min_size: usize },
    #[error("vertex {0} is out of range")]
    OutOfRange(Vertex),
}

impl StarCover {
    pub fn validate(&self, g: &Graph, min_size: usize) -> Result<(), StarCoverError> {
        let n = g.vertex_count();
        let mut covered = vec![false; n];
        for s in &self.stars {
            for v in s.vertices() {
                if v >= n {
                    return Err(StarCoverError::OutOfRange(v));
                }
                if std::mem::replace(&mut covered[v], true) {
                    return Err(StarCoverError::Overlap(v));
                }
            }
            if let Some(&leaf) = s.leaves.iter().find(|&&l| !g.has_edge(s.centre, l)) {
                return Err(StarCoverError::NotAdjacent { centre: s.centre, leaf });
            }
            if s.size() < min_size {
                return Err(StarCoverError::TooSmall {
                    centre: s.centre,
                    size: s.size(),
                    min_size,
                });
            }
        }
        match covered.iter().position(|&c| !c) {
            Some(v) => Err(StarCoverError::Uncovered(v)),
            None => Ok(()),
        }
    }

    /// Index of the star containing each vertex.
    pub fn star_index(&self, n: usize) -> Vec<usize> {
        let mut idx = vec![usize::MAX; n];
        for (i, s) in self.stars.iter().enumerate() {
            for v in s.vertices() {
                idx[v] = i;
            }
        }
        idx
    }

    fn normalised(mut self) -> StarCover {
        for s in &mut self.stars {
            s.leaves.sort_unstable();
        }
        self.stars.sort_by_key(|s| s.centre);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum StarCoverFailure {
    #[error("exhaustive search proved that no star cover exists")]
    ProvenNone,
    #[error("no star cover found (heuristic search or budget exhausted)")]
    NotFound,
}

/// Graphs up to this size are searched exactly.
pub const EXACT_STAR_COVER_LIMIT: usize = 30;
const STAR_SEARCH_NODES: u64 = 5_000_000;

/// A star cover with every star of size at least `min_size`: exact
/// backtracking for small graphs, greedy with repair otherwise.
pub fn find_star_cover(g: &Graph, min_size: usize) -> Result<StarCover, StarCoverFailure> {
    let min_size = min_size.max(1);
    if g.vertex_count() == 0 {
        return Ok(StarCover { stars: Vec::new() });
    }
    let cover = if g.vertex_count() <= EXACT_STAR_COVER_LIMIT {
        exact_star_cover(g, min_size)?
    } else {
        greedy_star_cover(g, min_size).ok_or(StarCoverFailure::NotFound)?
    };
    debug_assert_eq!(cover.validate(g, min_size), Ok(()));
    Ok(cover.normalised())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Free,
    Centre,
    Leaf(Vertex),
}

struct CoverSearch<'a> {
    g: &'a Graph,
    min_size: usize,
    role: Vec<Role>,
    leaves: Vec<usize>,
    free_nbrs: Vec<usize>,
    nodes: u64,
    solution: Option<Vec<Role>>,
}

impl CoverSearch<'_> {
    fn set(&mut self, v: Vertex, r: Role) {
        debug_assert!(self.role[v] == Role::Free);
        self.role[v] = r;
        for &w in self.g.neighbors(v) {
            self.free_nbrs[w] -= 1;
        }
        if let Role::Leaf(c) = r {
            self.leaves[c] += 1;
        }
    }

    fn unset(&mut self, v: Vertex) {
        if let Role::Leaf(c) = self.role[v] {
            self.leaves[c] -= 1;
        }
        self.role[v] = Role::Free;
        for &w in self.g.neighbors(v) {
            self.free_nbrs[w] += 1;
        }
    }

    fn options(&self, u: Vertex) -> Vec<(Vertex, Role)> {
        let mut out = Vec::new();
        for &c in self.g.neighbors(u) {
            if self.role[c] == Role::Centre {
                out.push((u, Role::Leaf(c)));
            }
        }
        for &c in self.g.neighbors(u) {
            if self.role[c] == Role::Free && self.free_nbrs[c] >= self.min_size {
                out.push((c, Role::Centre));
            }
        }
        if self.free_nbrs[u] >= self.min_size {
            out.push((u, Role::Centre));
        }
        out
    }

    fn feasible(&self) -> bool {
        let n = self.g.vertex_count();
        (0..n).all(|v| match self.role[v] {
            Role::Centre => self.leaves[v] + self.free_nbrs[v] >= self.min_size,
            Role::Free => {
                self.free_nbrs[v] >= self.min_size
                    || self.g.neighbors(v).iter().any(|&c| {
                        self.role[c] == Role::Centre
                            || (self.role[c] == Role::Free && self.free_nbrs[c] >= self.min_size)
                    })
            }
            Role::Leaf(_) => true,
        })
    }

    /// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
    fn search(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > STAR_SEARCH_NODES {
            return None;
        }
        if !self.feasible() {
            return Some(false);
        }
        let n = self.g.vertex_count();
        let mut pick: Option<(usize, Vertex)> = None;
        for v in 0..n {
            if self.role[v] == Role::Free {
                let k = self.options(v).len();
                if pick.is_none_or(|(best, _)| k < best) {
                    pick = Some((k, v));
                }
            }
        }
        let Some((_, u)) = pick else {
            let ok = (0..n).all(|v| self.role[v] != Role::Centre || self.leaves[v] >= self.min_size);
            if ok {
                self.solution = Some(self.role.clone());
            }
            return Some(ok);
        };
        for (target, role) in self.options(u) {
            // Opening a neighbour as a centre also makes `u` its leaf.
            let opened = target != u;
            self.set(target, role);
            if opened {
                self.set(u, Role::Leaf(target));
            }
            let r = self.search();
            if opened {
                self.unset(u);
            }
            self.unset(target);
            match r {
                Some(false) => {}
                other => return other,
            }
        }
        Some(false)
    }
}

fn exact_star_cover(g: &Graph, min_size: usize) -> Result<StarCover, StarCoverFailure> {
    let n = g.vertex_count();
    let mut s = CoverSearch {
        g,
        min_size,
        role: vec![Role::Free; n],
        leaves: vec![0; n],
        free_nbrs: (0..n).map(|v| g.degree(v)).collect(),
        nodes: 0,
        solution: None,
    };
    match s.search() {
        Some(true) => {
            let role = s.solution.expect("recorded on success");
            let mut stars: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
            for (v, r) in role.iter().enumerate().take(n) {
                match *r {
                    Role::Centre => {
                        stars.entry(v).or_default();
                    }
                    Role::Leaf(c) => stars.entry(c).or_default().push(v),
                    Role::Free => unreachable!("complete assignment"),
                }
            }
            Ok(StarCover {
                stars: stars
                    .into_iter()
                    .map(|(centre, leaves)| Star { centre, leaves })
                    .collect(),
            })
        }
        Some(false) => Err(StarCoverFailure::ProvenNone),
        None => Err(StarCoverFailure::NotFound),
    }
}

fn greedy_star_cover(g: &Graph, min_size: usize) -> Option<StarCover> {
    let n = g.vertex_count();
    let mut owner: Vec<Option<Vertex>> = vec![None; n];
    let mut centres = BTreeSet::new();
    loop {
        let pick = (0..n)
            .filter(|&v| owner[v].is_none())
            .max_by_key(|&v| (g.neighbors(v).iter().filter(|&&w| owner[w].is_none()).count(), std::cmp::Reverse(v)));
        let Some(c) = pick else { break };
        owner[c] = Some(c);
        centres.insert(c);
        for &w in g.neighbors(c) {
            if owner[w].is_none() {
                owner[w] = Some(c);
            }
        }
    }
    let size = |owner: &[Option<Vertex>], c: Vertex| owner.iter().filter(|&&o| o == Some(c)).count() - 1;
    let mut changed = true;
    while changed {
        changed = false;
        let small: Vec<Vertex> = centres.iter().copied().filter(|&c| size(&owner, c) < min_size).collect();
        for c in small {
            if !centres.contains(&c) {
                continue;
            }
            // Steal surplus leaves from neighbouring stars.
            for &w in g.neighbors(c) {
                if size(&owner, c) >= min_size {
                    break;
                }
                if let Some(o) = owner[w] {
                    if o != c && o != w && size(&owner, o) > min_size {
                        owner[w] = Some(c);
                        changed = true;
                    }
                }
            }
            if size(&owner, c) >= min_size {
                continue;
            }
            // Otherwise dissolve the star into adjacent centres if possible.
            let members: Vec<Vertex> = (0..n).filter(|&v| owner[v] == Some(c)).collect();
            let mut moves = Vec::new();
            for &m in &members {
                match g.neighbors(m).iter().copied().find(|&w| w != c && centres.contains(&w)) {
                    Some(t) => moves.push((m, t)),
                    None => break,
                }
            }
            if moves.len() == members.len() {
                centres.remove(&c);
                for (m, t) in moves {
                    owner[m] = Some(t);
                }
                changed = true;
            }
        }
    }
    let stars: Vec<Star> = centres
        .iter()
        .map(|&c| Star {
            centre: c,
            leaves: (0..n).filter(|&v| v != c && owner[v] == Some(c)).collect(),
        })
        .collect();
    let cover = StarCover { stars };
    cover.validate(g, min_size).ok().map(|_| cover)
}

/// A connected spanning bipartite subgraph in which every vertex keeps at
/// least half of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteSubgraph {
    pub h: Graph,
    /// `side[v]` is the part containing `v`.
    pub side: Vec<bool>,
}

/// Local search for a large cut: start from BFS parity classes, flip single
/// vertices with more neighbours on their own side, and flip a whole
/// component of the cut graph whenever it is disconnected.
pub fn max_bipartite_local(g: &Graph) -> BipartiteSubgraph {
    let n = g.vertex_count();
    let mut side = vec![false; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    side[w] = !side[v];
                    queue.push_back(w);
                }
            }
        }
    }
    loop {
        let mut flipped = false;
        for v in 0..n {
            let same = g.neighbors(v).iter().filter(|&&w| side[w] == side[v]).count();
            if 2 * same > g.degree(v) {
                side[v] = !side[v];
                flipped = true;
            }
        }
        if flipped {
            continue;
        }
        let comps = components_filtered(g, |_| true, |u, v| side[u] != side[v]);
        let whole = components_filtered(g, |_| true, |_, _| true).len();
        if comps.len() <= whole {
            break;
        }
        // Some same-side edge joins two cut components; flip the first
        // component that has one.
        let mut comp_of = vec![0; n];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let target = comps
            .iter()
            .position(|c| c.iter().any(|&v| g.neighbors(v).iter().any(|&w| comp_of[w] != comp_of[v])))
            .expect("a disconnected cut graph of a connected graph has a crossing edge");
        for &v in &comps[target] {
            side[v] = !side[v];
        }
    }
    let h = Graph::from_edges(
        n,
        g.edges().into_iter().filter(|e| side[e.0] != side[e.1]).map(|e| (e.0, e.1)),
    )
    .expect("subgraph of a simple graph");
    BipartiteSubgraph { h, side }
}

/// A `W_a` or `W_{a,b}` configuration centred at `v`, if one exists.
pub fn w_configuration_at(g: &Graph, v: Vertex) -> Option<WConfig> {
    let nv: BTreeSet<Vertex> = g.neighbors(v).iter().copied().collect();
    let comps = components_filtered(g, |u| nv.contains(&u), |_, _| true);
    let as_path = |c: &[Vertex]| -> Option<Vec<Vertex>> {
        let inner = |u: Vertex| g.neighbors(u).iter().filter(|w| c.binary_search(w).is_ok()).count();
        if c.iter().any(|&u| inner(u) > 2) {
            return None;
        }
        let start = *c.iter().find(|&&u| inner(u) <= 1)?;
        let mut seq = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = g.neighbors(cur).iter().copied().find(|&w| w != prev && c.binary_search(&w).is_ok());
            match next {
                Some(w) => {
                    seq.push(w);
                    prev = cur;
                    cur = w;
                }
                None => break,
            }
        }
        (seq.len() == c.len()).then_some(seq)
    };
    let outside = |u: Vertex| -> Vec<Vertex> {
        g.neighbors(u).iter().copied().filter(|&w| w != v && !nv.contains(&w)).collect()
    };
    match comps.len() {
        1 => {
            let seq = as_path(&comps[0])?;
            if seq.len() < 3 {
                return None;
            }
            let mut seq = seq;
            if seq[0] > seq[seq.len() - 1] {
                seq.reverse();
            }
            let c = WConfig {
                kind: WKind::Wa,
                centre: v,
                connectors: (seq[0], seq[seq.len() - 1]),
                path_p: seq[1..seq.len() - 1].to_vec(),
                path_q: None,
            };
            verify_w_configuration(g, &c).ok().map(|_| c)
        }
        2 => {
            let p = as_path(&comps[0])?;
            let q = as_path(&comps[1])?;
            let mut rq = q.clone();
            rq.reverse();
            for q in [q, rq] {
                let xs: Vec<Vertex> = outside(p[0]).into_iter().filter(|w| outside(q[0]).contains(w)).collect();
                let ys: Vec<Vertex> = outside(p[p.len() - 1])
                    .into_iter()
                    .filter(|w| outside(q[q.len() - 1]).contains(w))
                    .collect();
                for &x in &xs {
                    for &y in &ys {
                        if x == y {
                            continue;
                        }
                        let (c0, c1, pp, qq) = if x < y {
                            (x, y, p.clone(), q.clone())
                        } else {
                            let mut pr = p.clone();
                            pr.reverse();
                            let mut qr = q.clone();
                            qr.reverse();
                            (y, x, pr, qr)
                        };
                        let c = WConfig {
                            kind: WKind::Wab,
                            centre: v,
                            connectors: (c0, c1),
                            path_p: pp,
                            path_q: Some(qq),
                        };
                        if verify_w_configuration(g, &c).is_ok() {
                            return Some(c);
                        }
                    }
                }
            }
            None
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::find_chord;

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

    fn q3() -> Graph {
        let mut e = Vec::new();
        for u in 0..8usize {
            for b in 0..3 {
                let w = u ^ (1 << b);
                if u < w {
                    e.push((u, w));
                }
            }
        }
        graph(8, &e)
    }

    #[test]
    fn cycle_in_k4_avoiding_a_vertex() {
        let c = find_nonseparating_induced_cycle(&k(4), &BTreeSet::from([0]), Separation::VertexDeletion);
        assert_eq!(c, Some(vec![1, 2, 3]));
    }

    #[test]
    fn petersen_cycle_is_a_five_cycle() {
        let g = petersen();
        let c = find_nonseparating_induced_cycle(&g, &BTreeSet::new(), Separation::VertexDeletion).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(find_chord(&g, &c, true), None);
        assert!(is_nonseparating(&g, &c, true, Separation::VertexDeletion));
    }

    #[test]
    fn cycle_order_is_length_then_lex() {
        // C4 0-1-2-3 with pendant triangle 3-4-5.
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 3)]);
        let mut seen = Vec::new();
        find_induced_cycle(&g, |_| true, |c| {
            seen.push(c.to_vec());
            false
        });
        assert_eq!(seen, vec![vec![3, 4, 5], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn shortcut_removes_chords() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)]);
        assert_eq!(shortcut_to_induced(&g, &[0, 1, 2, 3, 4]), vec![0, 1, 3, 4]);
    }

    #[test]
    fn paths_in_complete_graphs_are_single_edges() {
        for n in [4, 5] {
            let g = k(n);
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        let p = find_nonseparating_induced_path(&g, a, b, &BTreeSet::new()).unwrap();
                        assert_eq!(p, vec![a, b]);
                    }
                }
            }
        }
    }

    #[test]
    fn cube_antipodal_path() {
        let g = q3();
        let p = find_nonseparating_induced_path(&g, 0, 7, &BTreeSet::new()).unwrap();
        assert_eq!((p[0], *p.last().unwrap()), (0, 7));
        assert_eq!(find_chord(&g, &p, false), None);
        assert!(is_nonseparating(&g, &p, false, Separation::EdgeDeletion));
    }

    #[test]
    fn induced_path_enumeration() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let mut seen = Vec::new();
        let (_, complete) = for_each_induced_path(&g, 0, 2, |_| true, u64::MAX, |p| {
            seen.push(p.to_vec());
            false
        });
        assert!(complete);
        assert_eq!(seen, vec![vec![0, 1, 2], vec![0, 3, 2]]);
    }

    #[test]
    fn theta_graph_rail() {
        let g = graph(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        let all: BTreeSet<Vertex> = (0..5).collect();
        let r = find_k_rail(&g, &all).unwrap();
        assert_eq!(r.endpoints, (0, 1));
        assert_eq!(r.paths, vec![vec![0, 2, 1], vec![0, 3, 1], vec![0, 4, 1]]);
        assert_eq!(find_k_rail(&g, &BTreeSet::from([0, 1, 2, 3])), None);
        assert_eq!(find_k_rail(&k(4), &(0..4).collect()), None);
    }

    #[test]
    fn rail_with_direct_edge() {
        let g = graph(4, &[(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)]);
        let r = find_k_rail(&g, &(0..4).collect()).unwrap();
        assert_eq!(r.paths, vec![vec![0, 1], vec![0, 2, 1], vec![0, 3, 1]]);
    }

    #[test]
    fn star_cover_small_cases() {
        let c = find_star_cover(&k(13), 6).unwrap();
        assert_eq!(c.stars.len(), 1);
        assert_eq!(c.stars[0].size(), 12);
        let star = graph(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6)]);
        let c = find_star_cover(&star, 6).unwrap();
        assert_eq!(c.stars, vec![Star { centre: 0, leaves: vec![1, 2, 3, 4, 5, 6] }]);
        assert_eq!(find_star_cover(&k(4), 6), Err(StarCoverFailure::ProvenNone));
    }

    #[test]
    fn star_cover_validation() {
        let g = k(4);
        let bad = StarCover {
            stars: vec![Star { centre: 0, leaves: vec![1, 2] }],
        };
        assert_eq!(bad.validate(&g, 1), Err(StarCoverError::Uncovered(3)));
        let overlap = StarCover {
            stars: vec![Star { centre: 0, leaves: vec![1, 2, 3] }, Star { centre: 3, leaves: vec![] }],
        };
        assert_eq!(overlap.validate(&g, 0), Err(StarCoverError::Overlap(3)));
    }

    #[test]
    fn bipartite_of_small_graphs() {
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(max_bipartite_local(&c4).h, c4);
        let h = max_bipartite_local(&k(4)).h;
        assert_eq!(h.edge_count(), 4);
        assert!((0..4).all(|v| h.degree(v) == 2));
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let h = max_bipartite_local(&c5).h;
        assert_eq!(h.edge_count(), 4);
        assert!(h.is_connected());
    }

    #[test]
    fn detects_wa_configuration() {
        // Centre 0, connectors 1 and 2, path 3-4, K4 stub 5..9.
        let g = graph(
            9,
            &[
                (0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (3, 4), (4, 2),
                (1, 5), (2, 6), (5, 6), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8),
            ],
        );
        let c = w_configuration_at(&g, 0).unwrap();
        assert_eq!(c.kind, WKind::Wa);
        assert_eq!(c.connectors, (1, 2));
        assert_eq!(c.path_p, vec![3, 4]);
        assert_eq!(w_configuration_at(&g, 5), None);
    }
}
