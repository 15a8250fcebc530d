//! Immutable simple undirected graphs and vertex subsets.
//!
//! Vertices are labeled `0..n`. Adjacency is kept both as sorted neighbor
//! lists and as bit rows, so membership queries are constant time. Graphs of
//! order at most 64 additionally expose single-word neighborhood masks, which
//! the enumeration engine works on directly.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(order: usize) -> usize {
    order.div_ceil(WORD)
}

/// A subset of the vertices of a graph of a fixed order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    order: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(order: usize) -> Self {
        Self {
            order,
            words: vec![0; words_for(order)],
        }
    }

    pub fn full(order: usize) -> Self {
        let mut set = Self::empty(order);
        for v in 0..order {
            set.insert(v);
        }
        set
    }

    pub fn from_vertices<I>(order: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty(order);
        for v in vertices {
            if v >= order {
                return Err(Error::VertexOutOfRange { vertex: v, order });
            }
            set.insert(v);
        }
        Ok(set)
    }

    /// Builds a set from a single-word mask. Bits at or above `order` are dropped.
    ///
    /// Panics if `order > 64`.
    pub fn from_mask(order: usize, mask: u64) -> Self {
        assert!(order <= WORD, "from_mask needs order <= 64");
        let mut words = vec![0; words_for(order)];
        if let Some(w) = words.first_mut() {
            *w = mask & low_mask(order);
        }
        Self { order, words }
    }

    /// The single-word mask of this set, if the order fits in one word.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.order && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Panics if `v` is out of range.
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.order, "vertex {v} out of range {}", self.order);
        self.words[v / WORD] |= 1 << (v % WORD);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.order {
            self.words[v / WORD] &= !(1 << (v % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut out = self.zip_with(self, |a, _| !a);
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .any(|(&a, &b)| a & b != 0)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.order, other.order, "vertex set orders differ");
        Self {
            order: self.order,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    fn trim(&mut self) {
        let rem = self.order % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub(crate) fn low_mask(order: usize) -> u64 {
    if order >= WORD {
        u64::MAX
    } else {
        (1u64 << order) - 1
    }
}

/// An immutable simple undirected graph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    order: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    rows: Vec<VertexSet>,
    masks: Option<Vec<u64>>,
}

impl Graph {
    /// Builds a graph from an edge list, collapsing duplicates in either direction.
    pub fn new(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut rows = vec![VertexSet::empty(order); order];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(Error::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        let neighbors: Vec<Vec<usize>> = rows.iter().map(VertexSet::to_vec).collect();
        let edges = neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        let masks = (order <= WORD).then(|| {
            rows.iter()
                .map(|r| r.to_mask().unwrap_or_default())
                .collect()
        });
        Ok(Self {
            order,
            edges,
            neighbors,
            rows,
            masks,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && self.rows[u].contains(v)
    }

    /// Open-neighborhood bit masks, available when the order is at most 64.
    pub fn adjacency_masks(&self) -> Option<&[u64]> {
        self.masks.as_deref()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    pub fn is_connected(&self) -> bool {
        if self.order == 0 {
            return false;
        }
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.neighbors[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == self.order
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    ///
    /// Panics if `perm` is not a permutation of `0..order`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.order);
        Self::new(self.order, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabeling preserves simplicity")
    }

    /// Disjoint union with `other`, whose vertices are shifted past this graph's.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.order;
        Self::new(
            self.order + other.order,
            self.edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift))),
        )
        .expect("disjoint union of simple graphs is simple")
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.order() != self.order {
            return Err(Error::OrderMismatch {
                set: set.order(),
                graph: self.order,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Builds a graph of order `n` from vertex pairs.
pub fn make_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::new(n, edges.iter().copied())
}
