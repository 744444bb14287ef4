mod common;

use common::{graph_from_mask, labeled_graphs, next_permutation};
use matchavg::graph6::{parse_edge_list, parse_graph6, write_edge_list, write_graph6};
use matchavg::enumerate::small_graphs;
use matchavg::{canonical_form, canonical_key, Family, Graph, GraphError};
use proptest::prelude::*;

fn chair() -> Graph {
    Graph::new(5, [(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap()
}

#[test]
fn construction_rejects_bad_edges() {
    assert!(Graph::new(3, [(0, 0)]).is_err());
    assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
    assert!(Graph::new(3, [(0, 3)]).is_err());
    assert!(matches!(Graph::named(Family::Cycle, 2), Err(GraphError::InvalidSize { .. })));
}

#[test]
fn named_families() {
    assert_eq!(Graph::path(5).edge_count(), 4);
    assert_eq!(Graph::star(5).max_degree(), 4);
    assert_eq!(Graph::complete(6).edge_count(), 15);
    assert_eq!(Graph::cycle(4).edge_count(), 4);
    assert_eq!(Graph::edgeless(3).edge_count(), 0);
    let spider = Graph::spider(3);
    assert_eq!((spider.n(), spider.edge_count(), spider.degree(0)), (7, 6, 3));
    assert!(spider.is_tree());
    assert_eq!(Graph::named(Family::Spider, 3).unwrap(), spider);
    assert_eq!("path".parse::<Family>().unwrap(), Family::Path);
}

#[test]
fn deletion_and_components() {
    let t = chair();
    let cut = t.delete_edge(1, 2).unwrap();
    let mut sizes: Vec<usize> = cut.components().iter().map(Graph::n).collect();
    sizes.sort();
    assert_eq!(sizes, [2, 3]);
    assert!(t.delete_edge(0, 3).is_err());
    let (h, map) = t.delete_vertices(&[1]).unwrap();
    assert_eq!(h.n(), 4);
    assert_eq!(h.edge_count(), 1);
    assert_eq!(map[1], None);
    assert!(t.without_vertices(&[7]).is_err());
}

#[test]
fn chair_labelings_share_one_key() {
    let t = chair();
    let key = canonical_key(&t);
    let mut perm: Vec<usize> = (0..5).collect();
    loop {
        assert_eq!(canonical_key(&t.permuted(&perm)), key);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    assert_ne!(canonical_key(&Graph::path(5)), key);
    assert_ne!(canonical_key(&Graph::star(5)), key);
}

#[test]
fn canonical_key_is_permutation_invariant_up_to_six() {
    // one representative per class, every permutation
    for n in 1..=6 {
        for g in small_graphs(n, false).unwrap() {
            let key = canonical_key(&g);
            let mut perm: Vec<usize> = (0..n).collect();
            loop {
                assert_eq!(canonical_key(&g.permuted(&perm)), key, "{g:?} under {perm:?}");
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
    }
}

#[test]
fn canonical_key_separates_labeled_graphs_on_five() {
    // labeled graphs with equal keys must be isomorphic
    let graphs: Vec<Graph> = labeled_graphs(5).collect();
    let mut by_key = std::collections::HashMap::new();
    for g in &graphs {
        by_key.entry(canonical_key(g)).or_insert_with(Vec::new).push(g.clone());
    }
    for class in by_key.values() {
        let first = canonical_form(&class[0]);
        for g in class {
            assert_eq!(canonical_form(g), first);
        }
    }
    assert_eq!(by_key.len(), 34);
}

#[test]
fn graph6_round_trip_on_catalog() {
    for n in 1..=8 {
        for g in small_graphs(n, false).unwrap() {
            let text = write_graph6(&g).unwrap();
            assert_eq!(parse_graph6(&text).unwrap(), g);
        }
    }
}

#[test]
fn graph6_known_strings() {
    assert_eq!(write_graph6(&Graph::complete(4)).unwrap(), "C~");
    assert_eq!(write_graph6(&Graph::edgeless(1)).unwrap(), "@");
    assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), Graph::complete(4));
    assert!(parse_graph6("").is_err());
    assert!(parse_graph6("C").is_err());
}

#[test]
fn edge_list_round_trip() {
    let t = chair();
    assert_eq!(parse_edge_list(&write_edge_list(&t)).unwrap(), t);
}

proptest! {
    #[test]
    fn delete_then_readd_is_identity(n in 2usize..10, mask in any::<u64>()) {
        let g = graph_from_mask(n, mask);
        for e in g.edges() {
            let back = g.delete_edge(e.0, e.1).unwrap().with_edge(e.0, e.1).unwrap();
            prop_assert_eq!(&back, &g);
        }
    }

    #[test]
    fn components_partition_vertices_and_edges(n in 1usize..11, mask in any::<u64>()) {
        let g = graph_from_mask(n, mask);
        let parts = g.components_with_vertices();
        let vertices: usize = parts.iter().map(|(c, _)| c.n()).sum();
        prop_assert_eq!(vertices, n);
        let mut edges: Vec<(usize, usize)> = parts
            .iter()
            .flat_map(|(c, map)| c.edges().iter().map(move |e| {
                let (u, v) = (map[e.0], map[e.1]);
                (u.min(v), u.max(v))
            }))
            .collect();
        edges.sort();
        let mut original: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.0, e.1)).collect();
        original.sort();
        prop_assert_eq!(edges, original);
    }

    #[test]
    fn canonical_form_is_isomorphic_and_stable(n in 1usize..10, mask in any::<u64>(), seed in any::<u64>()) {
        let g = graph_from_mask(n, mask);
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permuted(&perm);
        prop_assert_eq!(canonical_key(&g), canonical_key(&h));
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert_eq!(canonical_form(&g).edge_count(), g.edge_count());
    }

    #[test]
    fn graph6_round_trip_random(n in 1usize..11, mask in any::<u64>()) {
        let g = graph_from_mask(n, mask);
        prop_assert_eq!(parse_graph6(&write_graph6(&g).unwrap()).unwrap(), g);
    }
}
