//! Simple undirected graphs with the surgery operations used by the matching
//! recursions.
//!
//! A [`Graph`] is an immutable value: every surgery operation returns a new
//! graph. Vertices are always `0..n`, and isolated vertices are significant
//! (the edgeless graph `E_n` is a legal input everywhere).

use std::collections::VecDeque;
use std::fmt;

use crate::error::GraphError;

/// Largest vertex count accepted by any constructor.
pub const MAX_VERTICES: usize = 1 << 16;

/// An undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    /// Builds the normalized edge `{u, v}`; panics on a loop.
    pub fn new(u: usize, v: usize) -> Edge {
        assert_ne!(u, v, "self-loop");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Star,
    Cycle,
    Complete,
    Edgeless,
    /// Center joined to `k` legs, each leg a two-vertex path.
    Spider,
}

impl std::str::FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "path" => Family::Path,
            "star" => Family::Star,
            "cycle" => Family::Cycle,
            "complete" => Family::Complete,
            "edgeless" => Family::Edgeless,
            "spider" => Family::Spider,
            other => return Err(GraphError::UnknownFamily(other.to_string())),
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push(Edge::new(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Graph::from_sorted(n, list))
    }

    // `edges` must already be normalized, sorted and duplicate-free.
    fn from_sorted(n: usize, edges: Vec<Edge>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &Edge(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::from_sorted(n, Vec::new())
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_sorted(n, (1..n).map(|i| Edge(i - 1, i)).collect())
    }

    /// Star on `n` vertices with center 0.
    pub fn star(n: usize) -> Graph {
        Graph::from_sorted(n, (1..n).map(|i| Edge(0, i)).collect())
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push(Edge(u, v));
            }
        }
        Graph::from_sorted(n, edges)
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<Edge> = (1..n).map(|i| Edge(i - 1, i)).collect();
        if n >= 3 {
            edges.push(Edge(0, n - 1));
            edges.sort_unstable();
        }
        Graph::from_sorted(n, edges)
    }

    /// Spider with `k` legs: center 0, leg `i` is `0 - (2i+1) - (2i+2)`.
    pub fn spider(k: usize) -> Graph {
        let mut edges = Vec::with_capacity(2 * k);
        for i in 0..k {
            edges.push(Edge(0, 2 * i + 1));
            edges.push(Edge(2 * i + 1, 2 * i + 2));
        }
        edges.sort_unstable();
        Graph::from_sorted(2 * k + 1, edges)
    }

    /// Builds a member of a named family. For spiders the size argument is the
    /// number of legs; for every other family it is the vertex count.
    pub fn named(family: Family, size: usize) -> Result<Graph, GraphError> {
        let min = match family {
            Family::Cycle => 3,
            _ => 1,
        };
        let too_big = match family {
            Family::Spider => size > (MAX_VERTICES - 1) / 2,
            _ => size > MAX_VERTICES,
        };
        if size < min || too_big {
            return Err(GraphError::InvalidSize { family, size });
        }
        Ok(match family {
            Family::Path => Graph::path(size),
            Family::Star => Graph::star(size),
            Family::Cycle => Graph::cycle(size),
            Family::Complete => Graph::complete(size),
            Family::Edgeless => Graph::edgeless(size),
            Family::Spider => Graph::spider(size),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_labels().1 == 1
    }

    /// A forest is an acyclic graph: `|E| = n - #components`.
    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.component_labels().1 == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let e = Edge::new(u, v);
        match self.edges.binary_search(&e) {
            Ok(_) => Err(GraphError::DuplicateEdge(e.0, e.1)),
            Err(pos) => {
                let mut edges = self.edges.clone();
                edges.insert(pos, e);
                Ok(Graph::from_sorted(self.n, edges))
            }
        }
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if u == v {
            return Err(GraphError::EdgeAbsent(u, v));
        }
        let e = Edge::new(u, v);
        match self.edges.binary_search(&e) {
            Ok(pos) => {
                let mut edges = self.edges.clone();
                edges.remove(pos);
                Ok(Graph::from_sorted(self.n, edges))
            }
            Err(_) => Err(GraphError::EdgeAbsent(e.0, e.1)),
        }
    }

    /// Induced subgraph on the vertices not in `vs`.
    ///
    /// Remaining vertices are compacted in increasing label order; the returned
    /// map sends each old label to its new label, or `None` if it was deleted.
    pub fn delete_vertices(&self, vs: &[usize]) -> Result<(Graph, Vec<Option<usize>>), GraphError> {
        let mut removed = vec![false; self.n];
        for &v in vs {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            removed[v] = true;
        }
        let mut map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !removed[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&Edge(u, v)| Some(Edge(map[u]?, map[v]?)))
            .collect();
        // order preserving relabeling keeps the edge list sorted
        Ok((Graph::from_sorted(next, edges), map))
    }

    /// Shorthand for [`Graph::delete_vertices`] that drops the relabeling map.
    pub fn without_vertices(&self, vs: &[usize]) -> Result<Graph, GraphError> {
        self.delete_vertices(vs).map(|(g, _)| g)
    }

    /// Component index of every vertex (numbered by smallest member) and the
    /// number of components.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Connected components ordered by smallest original vertex, each
    /// relabeled order-preservingly, together with their original vertex lists.
    pub fn components_with_vertices(&self) -> Vec<(Graph, Vec<usize>)> {
        let (label, count) = self.component_labels();
        if count == 1 {
            return vec![(self.clone(), (0..self.n).collect())];
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        let mut local = vec![0; self.n];
        for v in 0..self.n {
            local[v] = members[label[v]].len();
            members[label[v]].push(v);
        }
        let mut edges: Vec<Vec<Edge>> = vec![Vec::new(); count];
        for &Edge(u, v) in &self.edges {
            edges[label[u]].push(Edge(local[u], local[v]));
        }
        members
            .into_iter()
            .zip(edges)
            .map(|(vs, es)| (Graph::from_sorted(vs.len(), es), vs))
            .collect()
    }

    pub fn components(&self) -> Vec<Graph> {
        self.components_with_vertices().into_iter().map(|(g, _)| g).collect()
    }

    /// Relabels the graph so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut edges: Vec<Edge> = self.edges.iter().map(|&Edge(u, v)| Edge::new(perm[u], perm[v])).collect();
        edges.sort_unstable();
        Graph::from_sorted(self.n, edges)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&Edge(u, v)| Edge(u + shift, v + shift)));
        Graph::from_sorted(self.n + other.n, edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, Edge(u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}
