//! Spanning-tree certificates over a host graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("edge {0} is not an edge of the host graph")]
    NotInHost(Edge),
    #[error("edge {0} listed twice")]
    Duplicate(Edge),
    #[error("edge {0} closes a cycle")]
    Cycle(Edge),
    #[error("edge set is not connected")]
    Disconnected,
    #[error("tree covers {covered} of {total} host vertices")]
    NotSpanning { covered: usize, total: usize },
}

/// An acyclic, connected edge subset of a host graph. Vertex ids are host
/// ids; vertices not touched by any edge are simply uncovered (a single
/// vertex host is spanned by the empty tree).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tree {
    host_vertices: usize,
    adj: Vec<Vec<Vertex>>,
    edges: Vec<Edge>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

impl Tree {
    /// Validates that `edges` is an acyclic connected subset of `host`.
    pub fn new<I>(host: &Graph, edges: I) -> Result<Tree, TreeError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let n = host.vertex_count();
        let mut set = BTreeSet::new();
        for e in edges {
            let e = Edge::new(e.0, e.1);
            if !host.contains_edge(e) {
                return Err(TreeError::NotInHost(e));
            }
            if !set.insert(e) {
                return Err(TreeError::Duplicate(e));
            }
        }
        let tree = Tree::from_sorted_unchecked(n, set.into_iter().collect());
        let mut dsu = Dsu((0..n).collect());
        for &e in &tree.edges {
            if !dsu.union(e.0, e.1) {
                return Err(TreeError::Cycle(e));
            }
        }
        let covered = tree.covered_count();
        if covered > 0 && tree.edges.len() + 1 != covered {
            return Err(TreeError::Disconnected);
        }
        Ok(tree)
    }

    /// Like [`Tree::new`] but also requires every host vertex to be covered.
    pub fn spanning<I>(host: &Graph, edges: I) -> Result<Tree, TreeError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let t = Tree::new(host, edges)?;
        if !t.is_spanning() {
            return Err(TreeError::NotSpanning {
                covered: t.covered_count(),
                total: t.host_vertices,
            });
        }
        Ok(t)
    }

    /// Builds the structure without any checks; `edges` must be sorted,
    /// normalised and acyclic.
    pub(crate) fn from_sorted_unchecked(host_vertices: usize, edges: Vec<Edge>) -> Tree {
        let mut adj = vec![Vec::new(); host_vertices];
        for e in &edges {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Tree {
            host_vertices,
            adj,
            edges,
        }
    }

    pub fn host_vertex_count(&self) -> usize {
        self.host_vertices
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Sorted edge list.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&Edge::new(u, v)).is_ok()
    }

    fn covered_count(&self) -> usize {
        if self.edges.is_empty() {
            return usize::from(self.host_vertices == 1);
        }
        self.adj.iter().filter(|nb| !nb.is_empty()).count()
    }

    pub fn is_spanning(&self) -> bool {
        self.covered_count() == self.host_vertices
    }

    /// The tree as a graph on the host's vertex ids.
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.host_vertices, self.edges.iter().map(|e| (e.0, e.1)))
            .expect("tree edges form a simple graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn star_in_k4() {
        let t = Tree::spanning(&k4(), [Edge(0, 1), Edge(0, 2), Edge(0, 3)]).unwrap();
        assert_eq!(t.degree(0), 3);
        assert_eq!(t.degree(2), 1);
        assert!(t.has_edge(2, 0));
        assert!(!t.has_edge(1, 2));
    }

    #[test]
    fn rejects_bad_edge_sets() {
        let g = k4();
        assert_eq!(
            Tree::new(&g, [Edge(0, 1), Edge(1, 2), Edge(0, 2)]),
            Err(TreeError::Cycle(Edge(1, 2)))
        );
        assert_eq!(Tree::new(&g, [Edge(0, 1), Edge(2, 3)]), Err(TreeError::Disconnected));
        assert_eq!(
            Tree::new(&g, [Edge(0, 1), Edge(1, 0)]),
            Err(TreeError::Duplicate(Edge(0, 1)))
        );
        let p = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(Tree::new(&p, [Edge(0, 2)]), Err(TreeError::NotInHost(Edge(0, 2))));
        assert_eq!(
            Tree::spanning(&g, [Edge(0, 1)]),
            Err(TreeError::NotSpanning { covered: 2, total: 4 })
        );
    }

    #[test]
    fn single_vertex_is_spanned_by_empty_tree() {
        let g = Graph::empty(1);
        assert!(Tree::spanning(&g, []).unwrap().is_spanning());
        assert!(Tree::spanning(&Graph::empty(2), []).is_err());
    }
}
