//! Exhaustive cross-checks between fast paths and independent brute force.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use mcds_core::bounds::f;
use mcds_core::constructions::{base_graph, compose, BaseSpec, BlockSpec};
use mcds_core::enumeration::{block_mcds, count_mcds, enumerate_mcds, EnumerationRequest, Mode};
use mcds_core::graph::{Graph, VertexSet};
use mcds_core::predicates::{is_minimal_cds, is_minimal_cds_reference};
use mcds_core::search::generate_connected;

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

/// Number of isomorphism classes of connected labeled graphs of order `n`,
/// by minimizing the adjacency code over every permutation.
fn connected_classes_by_permutation(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    for bits in 0u64..1 << pairs.len() {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|&(k, _)| bits >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::new(n, edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        let code = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .fold(0u64, |acc, &(i, j)| acc << 1 | g.has_edge(p[i], p[j]) as u64)
            })
            .min()
            .unwrap();
        classes.insert(code);
    }
    classes.len()
}

#[test]
fn generator_matches_permutation_dedup() {
    for n in 1..=6 {
        assert_eq!(
            generate_connected(n).unwrap().len(),
            connected_classes_by_permutation(n),
            "order {n}"
        );
    }
}

#[test]
fn minimality_tiers_agree_on_all_small_connected_graphs() {
    for n in 1..=7 {
        for g in generate_connected(n).unwrap() {
            for mask in 0u64..1 << n {
                let s = VertexSet::from_mask(n, mask);
                assert_eq!(
                    is_minimal_cds(&g, &s).unwrap(),
                    is_minimal_cds_reference(&g, &s).unwrap(),
                    "{g:?} {s:?}"
                );
            }
        }
    }
}

#[test]
fn base_graphs_at_order_nine_agree_on_all_subsets() {
    for clique_x in [false, true] {
        let g = base_graph(BaseSpec { t: 4, clique_x }).unwrap().graph;
        for mask in 0u64..1 << 9 {
            let s = VertexSet::from_mask(9, mask);
            assert_eq!(
                is_minimal_cds(&g, &s).unwrap(),
                is_minimal_cds_reference(&g, &s).unwrap()
            );
        }
    }
}

#[test]
fn product_formula_over_blocks() {
    let k1 = BlockSpec::new(Graph::new(1, []).unwrap(), VertexSet::full(1)).unwrap();
    let p2 = BlockSpec::new(Graph::new(2, [(0, 1)]).unwrap(), VertexSet::full(2)).unwrap();
    let blocks = [BlockSpec::base(2).unwrap(), BlockSpec::base(3).unwrap(), k1, p2];
    for block in &blocks {
        let per_block = block_mcds(block, Mode::Count).unwrap().count;
        for k in 2..=3 {
            let composed = compose(block, k).unwrap();
            assert_eq!(
                count_mcds(&composed).unwrap(),
                num_traits::pow(per_block.clone(), k),
                "{block:?} k = {k}"
            );
        }
    }
}

#[test]
fn block_counts_follow_closed_form() {
    for t in 2..=5 {
        let block = BlockSpec::base(t).unwrap();
        assert_eq!(block_mcds(&block, Mode::Count).unwrap().count, f(t).unwrap());
    }
}

#[test]
fn filtered_and_disjoint_counts_partition_the_total() {
    for t in 2..=4 {
        let c = base_graph(BaseSpec { t, clique_x: true }).unwrap();
        let all = enumerate_mcds(&EnumerationRequest::new(&c.graph).mode(Mode::collect())).unwrap();
        let meeting = enumerate_mcds(&EnumerationRequest::new(&c.graph).filter(c.x.clone()))
            .unwrap()
            .count;
        let disjoint = all
            .sets
            .unwrap()
            .iter()
            .filter(|s| !s.intersects(&c.x))
            .count();
        assert_eq!(all.count, meeting + BigUint::from(disjoint));
        // Sets avoiding X are exactly {y_i, y_j, z}.
        assert_eq!(disjoint, t * (t - 1) / 2);
    }
}

#[test]
fn block_sets_reproduce_hub_solutions() {
    // Each T from block_mcds plus the hub is a minimal CDS of the k = 2 composite restricted to one block.
    let block = BlockSpec::base(3).unwrap();
    let sets = block_mcds(&block, Mode::collect()).unwrap().sets.unwrap();
    assert_eq!(sets.len(), 15);
    let composed = compose(&block, 2).unwrap();
    let m = block.graph().order();
    for a in &sets {
        for b in &sets {
            let s = VertexSet::from_vertices(
                composed.order(),
                std::iter::once(0)
                    .chain(a.iter().map(|v| v + 1))
                    .chain(b.iter().map(|v| v + 1 + m)),
            )
            .unwrap();
            assert!(is_minimal_cds(&composed, &s).unwrap());
        }
    }
}
