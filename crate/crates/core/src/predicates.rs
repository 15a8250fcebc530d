//! Domination, induced connectivity and (minimal) connected domination.
//!
//! Two minimality checks exist. [`is_minimal_cds_reference`] applies the
//! definition literally and inspects every proper subset. [`is_minimal_cds`]
//! only tries single-vertex deletions: if a CDS `S` contains a smaller CDS
//! `S'`, every vertex of `S \ S'` is dominated by `S'`, so removing any one of
//! them leaves a set that still contains `S'` and stays connected. The
//! enumeration engine uses the single-deletion form on bit masks.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest set size the literal minimality reference will expand.
pub const REFERENCE_SET_LIMIT: usize = 30;

/// True iff `set` is nonempty and induces a connected subgraph.
pub fn is_connected_induced(graph: &Graph, set: &VertexSet) -> Result<bool> {
    graph.check_set(set)?;
    Ok(connected_within(graph, set))
}

fn connected_within(graph: &Graph, set: &VertexSet) -> bool {
    let Some(start) = set.iter().next() else {
        return false;
    };
    let mut seen = VertexSet::empty(graph.order());
    seen.insert(start);
    let mut queue = VecDeque::from([start]);
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &v in graph.neighbors(u) {
            if set.contains(v) && !seen.contains(v) {
                seen.insert(v);
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    reached == set.len()
}

/// True iff every vertex is in `set` or adjacent to it.
pub fn is_dominating(graph: &Graph, set: &VertexSet) -> Result<bool> {
    graph.check_set(set)?;
    Ok(dominates(graph, set))
}

fn dominates(graph: &Graph, set: &VertexSet) -> bool {
    let closed = set
        .iter()
        .fold(set.clone(), |acc, v| acc.union(graph.neighbor_set(v)));
    closed.len() == graph.order()
}

fn require_connected(graph: &Graph) -> Result<()> {
    if graph.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// True iff `set` is a connected dominating set. The graph must be connected.
pub fn is_cds(graph: &Graph, set: &VertexSet) -> Result<bool> {
    graph.check_set(set)?;
    require_connected(graph)?;
    Ok(cds(graph, set))
}

fn cds(graph: &Graph, set: &VertexSet) -> bool {
    dominates(graph, set) && connected_within(graph, set)
}

/// Minimal CDS test by single-vertex deletion.
pub fn is_minimal_cds(graph: &Graph, set: &VertexSet) -> Result<bool> {
    if !is_cds(graph, set)? {
        return Ok(false);
    }
    Ok(set.iter().all(|v| {
        let mut smaller = set.clone();
        smaller.remove(v);
        !cds(graph, &smaller)
    }))
}

/// Minimal CDS test that checks every proper subset of `set`.
///
/// Exponential in `|set|`; sets larger than [`REFERENCE_SET_LIMIT`] are refused.
pub fn is_minimal_cds_reference(graph: &Graph, set: &VertexSet) -> Result<bool> {
    if !is_cds(graph, set)? {
        return Ok(false);
    }
    let members = set.to_vec();
    if members.len() > REFERENCE_SET_LIMIT {
        return Err(Error::OrderGuard {
            order: members.len(),
            limit: REFERENCE_SET_LIMIT,
            hint: "use the single-deletion check for large sets",
        });
    }
    let full = (1u64 << members.len()) - 1;
    for pick in 0..full {
        let subset = VertexSet::from_vertices(
            graph.order(),
            members
                .iter()
                .enumerate()
                .filter(|&(i, _)| pick >> i & 1 == 1)
                .map(|(_, &v)| v),
        )?;
        if cds(graph, &subset) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bit-mask forms of the predicates for graphs of order at most 64.
///
/// `adj[v]` is the open neighborhood of `v`; `full` is the mask of all vertices.
pub(crate) mod masks {
    #[inline]
    pub fn closed_neighborhood(adj: &[u64], set: u64) -> u64 {
        let mut out = set;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= adj[v];
        }
        out
    }

    #[inline]
    pub fn connected(adj: &[u64], set: u64) -> bool {
        if set == 0 {
            return false;
        }
        let mut reached = set & set.wrapping_neg();
        let mut frontier = reached;
        while frontier != 0 {
            let grown = closed_neighborhood(adj, frontier) & set & !reached;
            reached |= grown;
            frontier = grown;
        }
        reached == set
    }

    #[inline]
    pub fn cds(adj: &[u64], full: u64, set: u64) -> bool {
        closed_neighborhood(adj, set) == full && connected(adj, set)
    }

    /// `set` is a CDS and no single deletion from `deletable` leaves one.
    #[inline]
    pub fn minimal_cds(adj: &[u64], full: u64, set: u64, deletable: u64) -> bool {
        if !cds(adj, full, set) {
            return false;
        }
        let mut rest = set & deletable;
        while rest != 0 {
            let v = rest & rest.wrapping_neg();
            rest &= rest - 1;
            if cds(adj, full, set & !v) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{base_graph, BaseSpec};

    fn g4() -> Graph {
        base_graph(BaseSpec { t: 4, clique_x: true }).unwrap().graph
    }

    // G_4 labels: x_i = i-1, y_j = 3+j, z = 8.
    fn set(vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(9, vs.iter().copied()).unwrap()
    }
    const X1: usize = 0;
    const X2: usize = 1;
    const Y1: usize = 4;
    const Y2: usize = 5;
    const Z: usize = 8;

    #[test]
    fn induced_connectivity() {
        let g = g4();
        assert!(is_connected_induced(&g, &set(&[Y1, Z, Y2])).unwrap());
        assert!(!is_connected_induced(&g, &set(&[X1, Z])).unwrap());
        assert!(is_connected_induced(&g, &set(&[3])).unwrap());
        assert!(!is_connected_induced(&g, &set(&[])).unwrap());
    }

    #[test]
    fn domination() {
        let g = g4();
        assert!(!is_dominating(&g, &set(&[X1, X2])).unwrap());
        assert!(is_dominating(&g, &set(&[X1, X2, Y1])).unwrap());
        assert!(is_dominating(&g, &g.vertices()).unwrap());
    }

    #[test]
    fn connected_domination() {
        let g = g4();
        assert!(is_cds(&g, &set(&[X1, Z, Y2])).unwrap());
        assert!(!is_cds(&g, &set(&[X1, Z])).unwrap());
        assert!(is_cds(&g, &g.vertices()).unwrap());
        assert!(!is_cds(&g, &set(&[])).unwrap());
    }

    #[test]
    fn minimality_examples() {
        let g = g4();
        for check in [is_minimal_cds, is_minimal_cds_reference] {
            assert!(check(&g, &set(&[X1, X2, Y1])).unwrap());
            assert!(!check(&g, &set(&[X1, X2, Y1, Z])).unwrap());
            assert!(check(&g, &set(&[Y1, Y2, Z])).unwrap());
        }
    }

    #[test]
    fn disconnected_graph_is_an_error() {
        let g = make_graph_unchecked(4, &[(0, 1), (2, 3)]);
        let s = VertexSet::from_vertices(4, [0, 1]).unwrap();
        assert_eq!(is_cds(&g, &s), Err(Error::Disconnected));
        assert_eq!(is_minimal_cds(&g, &s), Err(Error::Disconnected));
    }

    #[test]
    fn mismatched_set_order_is_an_error() {
        let g = g4();
        let s = VertexSet::from_vertices(3, [0]).unwrap();
        assert!(matches!(
            is_dominating(&g, &s),
            Err(Error::OrderMismatch { set: 3, graph: 9 })
        ));
    }

    #[test]
    fn mask_forms_agree_with_set_forms() {
        let g = g4();
        let adj = g.adjacency_masks().unwrap();
        let full = (1u64 << 9) - 1;
        for m in 0..=full {
            let s = VertexSet::from_mask(9, m);
            assert_eq!(masks::cds(adj, full, m), cds(&g, &s));
            assert_eq!(
                masks::minimal_cds(adj, full, m, full),
                is_minimal_cds(&g, &s).unwrap()
            );
        }
    }

    fn make_graph_unchecked(n: usize, e: &[(usize, usize)]) -> Graph {
        crate::graph::make_graph(n, e).unwrap()
    }
}
