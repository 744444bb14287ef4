//! Independent oracles shared by the integration tests. Nothing here calls
//! the recursion, the canonical labeler's internals or the generators.

#![allow(dead_code)]

use std::collections::HashSet;

use matchavg::{canonical_key, Graph};
use num_bigint::BigUint;

/// `m(G, k)` for every `k` by testing all `2^|E|` edge subsets for
/// pairwise disjointness.
pub fn brute_force_profile(g: &Graph) -> Vec<BigUint> {
    let edges = g.edges();
    assert!(edges.len() <= 24, "too many edges for brute force");
    let mut counts = vec![0u64; g.n() / 2 + 1];
    for subset in 0u32..(1u32 << edges.len()) {
        let mut used = 0u64;
        let mut ok = true;
        for (i, e) in edges.iter().enumerate() {
            if subset >> i & 1 == 1 {
                let bits = 1u64 << e.0 | 1u64 << e.1;
                if used & bits != 0 {
                    ok = false;
                    break;
                }
                used |= bits;
            }
        }
        if ok {
            counts[subset.count_ones() as usize] += 1;
        }
    }
    while counts.len() > 1 && *counts.last().unwrap() == 0 {
        counts.pop();
    }
    counts.into_iter().map(BigUint::from).collect()
}

/// Decodes a Prüfer sequence over `0..n` into a labeled tree.
pub fn prufer_decode(seq: &[usize], n: usize) -> Graph {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges).unwrap()
}

/// Number of isomorphism classes among all `n^(n-2)` labeled trees.
pub fn prufer_tree_classes(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut keys = HashSet::new();
    loop {
        keys.insert(canonical_key(&prufer_decode(&seq, n)));
        let mut i = 0;
        loop {
            if i == len {
                return keys.len();
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

/// Every labeled graph on `n` vertices, as an iterator over edge masks.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap()
    })
}

/// Isomorphism classes among all labeled graphs on `n` vertices.
pub fn labeled_graph_classes(n: usize, connected_only: bool) -> usize {
    labeled_graphs(n)
        .filter(|g| !connected_only || g.is_connected())
        .map(|g| canonical_key(&g))
        .collect::<HashSet<_>>()
        .len()
}

/// Free-tree counts `t(1..=n_max)` from Otter's formula on top of the
/// rooted-tree recurrence `r(n+1) = (1/n) Σ_k (Σ_{d|k} d·r(d)) r(n-k+1)`.
pub fn otter_free_tree_counts(n_max: usize) -> Vec<u64> {
    let mut r = vec![0u64; n_max + 1];
    r[1] = 1;
    for n in 1..n_max {
        let mut sum = 0u64;
        for k in 1..=n {
            let s: u64 = (1..=k).filter(|d| k % d == 0).map(|d| d as u64 * r[d]).sum();
            sum += s * r[n - k + 1];
        }
        r[n + 1] = sum / n as u64;
    }
    (1..=n_max)
        .map(|n| {
            let pairs: u64 = (1..n).map(|i| r[i] * r[n - i]).sum();
            let even = if n % 2 == 0 { r[n / 2] } else { 0 };
            r[n] - (pairs - even) / 2
        })
        .collect()
}

/// Lexicographically next permutation in place; false after the last.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn ratio(p: i64, q: i64) -> matchavg::BigRational {
    matchavg::BigRational::new(p.into(), q.into())
}

/// A random simple graph on `n` vertices from an edge mask.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, pairs.enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, e)| e)).unwrap()
}
