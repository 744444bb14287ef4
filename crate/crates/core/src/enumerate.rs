//! Exhaustive corpora: free trees by canonical level sequences, and small
//! graphs up to isomorphism by canonical vertex augmentation.

use std::collections::HashSet;

use crate::canon::{canonical_form, canonical_key, CanonicalKey};
use crate::error::EnumerationError;
use crate::graph::Graph;

/// Order caps for the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_tree_order: usize,
    pub max_graph_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_tree_order: 22, max_graph_order: 8 }
    }
}

/// Free trees of a fixed order, each isomorphism class exactly once.
///
/// Walks level sequences of trees rooted at a center in the order of Wright,
/// Richmond, Odlyzko and McKay, which visits every free tree once with
/// constant amortized work per tree.
#[derive(Debug, Clone)]
pub struct TreeIterator {
    n: usize,
    layout: Option<Vec<usize>>,
    single_pending: bool,
}

pub fn free_trees(n: usize) -> Result<TreeIterator, EnumerationError> {
    free_trees_with(n, &Limits::default())
}

pub fn free_trees_with(n: usize, limits: &Limits) -> Result<TreeIterator, EnumerationError> {
    if n < 1 || n > limits.max_tree_order {
        return Err(EnumerationError::OrderOutOfRange { n, min: 1, max: limits.max_tree_order });
    }
    if n == 1 {
        return Ok(TreeIterator { n, layout: None, single_pending: true });
    }
    let layout = (0..=n / 2).chain(1..n.div_ceil(2)).collect();
    Ok(TreeIterator { n, layout: Some(layout), single_pending: false })
}

impl TreeIterator {
    pub fn order(&self) -> usize {
        self.n
    }
}

impl Iterator for TreeIterator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.single_pending {
            self.single_pending = false;
            return Some(Graph::edgeless(1));
        }
        let layout = next_tree(self.layout.take()?)?;
        let tree = layout_to_graph(&layout);
        self.layout = next_rooted_tree(&layout, None);
        Some(tree)
    }
}

fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits a layout into the subtree under the root's first child (levels
/// shifted down by one) and the rest of the tree.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout.iter().enumerate().filter(|&(_, &l)| l == 1).nth(1).map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let rest = std::iter::once(0).chain(layout[m..].iter().copied()).collect();
    (left, rest)
}

fn next_tree(candidate: Vec<usize>) -> Option<Vec<usize>> {
    let (left, rest) = split_tree(&candidate);
    let left_height = left.iter().max().copied().unwrap_or(0);
    let rest_height = rest.iter().max().copied().unwrap_or(0);
    let mut valid = rest_height >= left_height;
    if valid && rest_height == left_height
        && (left.len() > rest.len() || (left.len() == rest.len() && left > rest)) {
            valid = false;
        }
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted_tree(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let h = new_left.iter().max().copied().unwrap_or(0);
        let len = next.len();
        for (slot, level) in next[len - (h + 1)..].iter_mut().zip(1..) {
            *slot = level;
        }
    }
    Some(next)
}

fn layout_to_graph(layout: &[usize]) -> Graph {
    let mut edges = Vec::with_capacity(layout.len().saturating_sub(1));
    let mut stack: Vec<usize> = Vec::new();
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if layout[j] >= level {
                stack.pop();
            } else {
                edges.push((j, i));
                break;
            }
        }
        stack.push(i);
    }
    Graph::new(layout.len(), edges).expect("level sequence yields a tree")
}

/// All graphs on `n` vertices up to isomorphism, optionally only connected
/// ones. Representatives are in canonical form.
///
/// Each class on `n` vertices arises from some class on `n-1` vertices by
/// adding a vertex, so the catalog augments the smaller catalog with every
/// neighbourhood of the new vertex and keeps the first graph of each class.
pub struct GraphCatalog {
    n: usize,
    connected_only: bool,
    keys: HashSet<CanonicalKey>,
    parents: Vec<Graph>,
    parent: usize,
    mask: u64,
}

pub fn small_graphs(n: usize, connected_only: bool) -> Result<GraphCatalog, EnumerationError> {
    small_graphs_with(n, connected_only, &Limits::default())
}

pub fn small_graphs_with(n: usize, connected_only: bool, limits: &Limits) -> Result<GraphCatalog, EnumerationError> {
    let max = limits.max_graph_order.min(16);
    if n < 1 || n > max {
        return Err(EnumerationError::OrderOutOfRange { n, min: 1, max });
    }
    let parents = if n == 1 { vec![Graph::edgeless(0)] } else { GraphCatalog::all(n - 1) };
    Ok(GraphCatalog { n, connected_only, keys: HashSet::new(), parents, parent: 0, mask: 0 })
}

impl GraphCatalog {
    fn all(n: usize) -> Vec<Graph> {
        let parents = if n == 1 { vec![Graph::edgeless(0)] } else { GraphCatalog::all(n - 1) };
        GraphCatalog { n, connected_only: false, keys: HashSet::new(), parents, parent: 0, mask: 0 }.collect()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn connected_only(&self) -> bool {
        self.connected_only
    }

    /// Classes emitted so far.
    pub fn emitted(&self) -> usize {
        self.keys.len()
    }
}

impl Iterator for GraphCatalog {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let new = self.n - 1;
        while self.parent < self.parents.len() {
            let base = &self.parents[self.parent];
            let mask = self.mask;
            self.mask += 1;
            if self.mask == 1u64 << new {
                self.mask = 0;
                self.parent += 1;
            }
            let edges = base
                .edges()
                .iter()
                .map(|e| (e.0, e.1))
                .chain((0..new).filter(|&u| mask >> u & 1 == 1).map(|u| (u, new)));
            let g = Graph::new(self.n, edges).expect("augmented graph is simple");
            if self.connected_only && !g.is_connected() {
                continue;
            }
            if self.keys.insert(canonical_key(&g)) {
                return Some(canonical_form(&g));
            }
        }
        None
    }
}

/// Round-robin slice `index, index + count, ...` of a stream.
pub fn shard<I: Iterator>(
    stream: I,
    count: usize,
    index: usize,
) -> Result<std::iter::StepBy<std::iter::Skip<I>>, EnumerationError> {
    if count == 0 || index >= count {
        return Err(EnumerationError::BadShard { index, count });
    }
    Ok(stream.skip(index).step_by(count))
}
