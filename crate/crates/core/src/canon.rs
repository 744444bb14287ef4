//! Isomorphism-invariant keys.
//!
//! Forests get a rooted-tree encoding (each component rooted at its center).
//! Every other graph goes through individualization-refinement: an equitable
//! partition is refined, the first non-singleton cell is branched on, and the
//! lexicographically smallest adjacency certificate over all leaves wins.
//! Branches are pruned across twins (vertices with the same neighborhood apart
//! from each other), since swapping twins is an automorphism that fixes every
//! individualized vertex.

use std::fmt;

use crate::graph::Graph;

const TAG_FOREST: u8 = b'F';
const TAG_GENERAL: u8 = b'G';

/// Canonical-form encoding of an isomorphism class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    if g.is_forest() {
        forest_key(g)
    } else {
        refinement_key(g)
    }
}

/// Canonically relabeled copy of `g` (the representative of its class).
pub fn canonical_form(g: &Graph) -> Graph {
    let labeling = canonical_labeling(g);
    g.permuted(&labeling)
}

fn header(tag: u8, n: usize) -> Vec<u8> {
    let mut out = vec![tag];
    out.extend_from_slice(&(n as u32).to_le_bytes());
    out
}

// ---------------------------------------------------------------------------
// forests

fn forest_key(g: &Graph) -> CanonicalKey {
    let mut codes: Vec<Vec<u8>> = g.components().iter().map(tree_code).collect();
    codes.sort_unstable();
    let mut out = header(TAG_FOREST, g.n());
    for code in codes {
        out.extend_from_slice(&code);
    }
    CanonicalKey(out)
}

/// Parenthesis code of a tree rooted at its center; for bicentral trees the
/// smaller of the two rootings.
fn tree_code(t: &Graph) -> Vec<u8> {
    centers(t).into_iter().map(|c| rooted_code(t, c)).min().unwrap_or_default()
}

pub(crate) fn centers(t: &Graph) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in t.neighbors(v) {
                if degree[w] > 1 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            degree[v] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(t: &Graph, root: usize) -> Vec<u8> {
    let n = t.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    order.push(root);
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in t.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut child_codes: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
    let mut code = Vec::new();
    for &v in order.iter().rev() {
        let mut kids = std::mem::take(&mut child_codes[v]);
        kids.sort_unstable();
        let mut c = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        c.push(b'(');
        for k in kids {
            c.extend_from_slice(&k);
        }
        c.push(b')');
        if v == root {
            code = c;
        } else {
            child_codes[parent[v]].push(c);
        }
    }
    code
}

// ---------------------------------------------------------------------------
// general graphs

fn refinement_key(g: &Graph) -> CanonicalKey {
    let labeling = canonical_labeling_ir(g);
    let mut out = header(TAG_GENERAL, g.n());
    out.extend_from_slice(&certificate(g, &labeling));
    CanonicalKey(out)
}

/// Key computed by individualization-refinement regardless of forest-ness.
#[doc(hidden)]
pub fn refinement_key_for_tests(g: &Graph) -> CanonicalKey {
    refinement_key(g)
}

fn canonical_labeling(g: &Graph) -> Vec<usize> {
    canonical_labeling_ir(g)
}

/// Upper-triangle adjacency bits in the relabeled graph, packed 8 per byte.
fn certificate(g: &Graph, labeling: &[usize]) -> Vec<u8> {
    let n = g.n();
    let mut inverse = vec![0; n];
    for (v, &l) in labeling.iter().enumerate() {
        inverse[l] = v;
    }
    let mut bits = Vec::with_capacity(n * n / 16 + 1);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(inverse[i], inverse[j]) as u8;
            filled += 1;
            if filled == 8 {
                bits.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bits.push(acc << (8 - filled));
    }
    bits
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

fn canonical_labeling_ir(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut search = Search { g, best: None };
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    refine(g, &mut cells);
    search.descend(cells);
    search.best.expect("search visits at least one leaf").1
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let mut labeling = vec![0; self.g.n()];
            for (i, cell) in cells.iter().enumerate() {
                labeling[cell[0]] = i;
            }
            let cert = certificate(self.g, &labeling);
            if self.best.as_ref().is_none_or(|(b, _)| cert < *b) {
                self.best = Some((cert, labeling));
            }
            return;
        };
        let cell = &cells[target];
        let mut tried: Vec<usize> = Vec::new();
        for &v in cell {
            if tried.iter().any(|&u| twins(self.g, u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            refine(self.g, &mut next);
            self.descend(next);
        }
    }
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    let a = g.neighbors(u).iter().filter(|&&w| w != v);
    let b = g.neighbors(v).iter().filter(|&&w| w != u);
    a.eq(b)
}

/// Refines an ordered partition to the coarsest equitable partition below it.
/// Fragments of a split cell are ordered by their neighbor count into the
/// splitting cell, which keeps the procedure label-invariant.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    let mut counts = vec![0usize; g.n()];
    'outer: loop {
        for s in 0..cells.len() {
            counts.iter_mut().for_each(|c| *c = 0);
            for &v in &cells[s] {
                for &w in g.neighbors(v) {
                    counts[w] += 1;
                }
            }
            for t in 0..cells.len() {
                let cell = &cells[t];
                if cell.len() == 1 {
                    continue;
                }
                let c0 = counts[cell[0]];
                if cell.iter().all(|&v| counts[v] == c0) {
                    continue;
                }
                let mut sorted = cell.clone();
                sorted.sort_by_key(|&v| (counts[v], v));
                let mut fragments: Vec<Vec<usize>> = Vec::new();
                let mut last = usize::MAX;
                for v in sorted {
                    if counts[v] != last {
                        fragments.push(Vec::new());
                        last = counts[v];
                    }
                    fragments.last_mut().unwrap().push(v);
                }
                cells.splice(t..=t, fragments);
                continue 'outer;
            }
        }
        return;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chair() -> Graph {
        Graph::new(5, [(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn path_reversal_and_star() {
        let p4 = Graph::path(4);
        assert_eq!(canonical_key(&p4), canonical_key(&p4.permuted(&[3, 2, 1, 0])));
        assert_ne!(canonical_key(&p4), canonical_key(&Graph::star(4)));
        assert_ne!(refinement_key(&p4), refinement_key(&Graph::star(4)));
    }

    #[test]
    fn chair_single_key() {
        let t = chair();
        let k = canonical_key(&t);
        let ir = refinement_key(&t);
        for p in permutations(5) {
            let q = t.permuted(&p);
            assert_eq!(canonical_key(&q), k);
            assert_eq!(refinement_key(&q), ir);
        }
    }

    #[test]
    fn forest_and_general_distinct() {
        assert_ne!(canonical_key(&Graph::path(3)), canonical_key(&Graph::complete(3)));
        assert_ne!(canonical_key(&Graph::edgeless(2)), canonical_key(&Graph::path(2)));
        assert_ne!(canonical_key(&Graph::edgeless(2)), canonical_key(&Graph::edgeless(3)));
    }

    #[test]
    fn centers_of_paths() {
        assert_eq!(centers(&Graph::path(5)), vec![2]);
        assert_eq!(centers(&Graph::path(4)), vec![1, 2]);
        assert_eq!(centers(&Graph::star(6)), vec![0]);
        assert_eq!(centers(&Graph::path(1)), vec![0]);
    }

    #[test]
    fn canonical_form_is_stable() {
        let c6 = Graph::cycle(6);
        let f = canonical_form(&c6);
        assert_eq!(canonical_form(&c6.permuted(&[5, 3, 1, 0, 2, 4])), f);
        assert_eq!(canonical_key(&f), canonical_key(&c6));
    }

    #[test]
    fn large_symmetric_graphs_are_fast() {
        let k = canonical_key(&Graph::complete(40));
        assert_eq!(k, canonical_key(&Graph::complete(40).permuted(&(0..40).rev().collect::<Vec<_>>())));
        let _ = refinement_key(&Graph::star(30));
        let _ = refinement_key(&Graph::edgeless(30));
    }
}
