//! Structural properties: articulation points, 2-coloring, degeneracy.

use crate::graph::{Graph, VertexSet};

/// Articulation points, via iterative DFS low-link.
pub fn cut_vertices(graph: &Graph) -> VertexSet {
    let n = graph.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut cut = VertexSet::empty(n);
    let mut clock = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
            if let Some(&v) = graph.neighbors(u).get(*next) {
                *next += 1;
                if disc[v] == usize::MAX {
                    disc[v] = clock;
                    low[v] = clock;
                    clock += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((v, u, 0));
                } else if v != parent {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if parent != root && low[u] >= disc[parent] {
                        cut.insert(parent);
                    }
                }
            }
        }
        if root_children > 1 {
            cut.insert(root);
        }
    }
    cut
}

/// A proper 2-coloring: `color(v)` is 0 or 1 and no edge is monochromatic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring(Vec<u8>);

impl Coloring {
    pub fn color(&self, v: usize) -> u8 {
        self.0[v]
    }

    pub fn colors(&self) -> &[u8] {
        &self.0
    }

    pub fn is_proper(&self, graph: &Graph) -> bool {
        self.0.len() == graph.order() && graph.edges().iter().all(|&(u, v)| self.0[u] != self.0[v])
    }

    /// Vertices of the given color.
    pub fn class(&self, color: u8) -> Vec<usize> {
        (0..self.0.len()).filter(|&v| self.0[v] == color).collect()
    }
}

/// Outcome of a 2-coloring sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    Bipartite(Coloring),
    /// A closed walk of odd length; consecutive entries (and last to first) are adjacent.
    OddClosedWalk(Vec<usize>),
}

/// BFS 2-coloring over every component, with an odd closed walk on failure.
pub fn bipartition(graph: &Graph) -> Bipartition {
    let n = graph.order();
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in graph.neighbors(u) {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    parent[v] = u;
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return Bipartition::OddClosedWalk(odd_walk(&parent, u, v));
                }
            }
        }
    }
    Bipartition::Bipartite(Coloring(color))
}

// u and v share a color, so their tree paths to the root have equal parity
// and the walk u -> root -> v -> u has odd length.
fn odd_walk(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let to_root = |mut w: usize| {
        let mut path = vec![w];
        while parent[w] != usize::MAX {
            w = parent[w];
            path.push(w);
        }
        path
    };
    let mut walk = to_root(u);
    let mut back = to_root(v);
    back.pop();
    back.reverse();
    walk.extend(back);
    walk
}

pub fn is_bipartite(graph: &Graph) -> Option<Coloring> {
    match bipartition(graph) {
        Bipartition::Bipartite(c) => Some(c),
        Bipartition::OddClosedWalk(_) => None,
    }
}

/// Degeneracy by repeatedly removing a minimum-degree vertex (smallest label on ties).
///
/// Returns the degeneracy and the elimination order; every vertex has at most
/// that many neighbors appearing after it in the order.
pub fn degeneracy(graph: &Graph) -> (usize, Vec<usize>) {
    let n = graph.order();
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("a vertex remains");
        best = best.max(degree[v]);
        removed[v] = true;
        order.push(v);
        for &w in graph.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    }
    (best, order)
}

/// Largest number of neighbors any vertex has later in `order`.
pub fn later_neighbor_bound(graph: &Graph, order: &[usize]) -> usize {
    let mut position = vec![0; graph.order()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    (0..graph.order())
        .map(|v| {
            graph
                .neighbors(v)
                .iter()
                .filter(|&&w| position[w] > position[v])
                .count()
        })
        .max()
        .unwrap_or(0)
}
