//! Builders for the base graph `G_t`, the hub composite `G_t^k`, generic hub
//! composition of a block, and a plane rotation system for `G_3^k`.
//!
//! Labeling is fixed. In `G_t`, `x_i` is vertex `i - 1`, `y_j` is `t + j - 1`
//! and `z` is `2t`. In a composite the hub `s` is vertex 0 and block `b`
//! (0-based) occupies `1 + b(2t+1) ..= (b+1)(2t+1)` with the same internal
//! layout.

use crate::embedding::RotationSystem;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseSpec {
    pub t: usize,
    /// Whether `X` induces a clique.
    pub clique_x: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompositeSpec {
    pub t: usize,
    pub k: usize,
    pub clique_x: bool,
}

/// A constructed graph with display labels and its `X` layer.
#[derive(Clone, Debug)]
pub struct Construction {
    pub graph: Graph,
    pub labels: Vec<String>,
    /// Every `x` vertex across all blocks.
    pub x: VertexSet,
    pub hub: Option<usize>,
}

fn check_t(t: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!(
            "t must be at least 2 (G_1 leaves x_1 isolated), got {t}"
        )));
    }
    Ok(())
}

fn block_edges(t: usize, offset: usize, clique_x: bool) -> Vec<(usize, usize)> {
    let x = |i: usize| offset + i;
    let y = |j: usize| offset + t + j;
    let z = offset + 2 * t;
    let mut edges = Vec::new();
    for i in 0..t {
        for j in 0..t {
            if i != j {
                edges.push((x(i), y(j)));
            }
        }
    }
    edges.extend((0..t).map(|j| (z, y(j))));
    if clique_x {
        for i in 0..t {
            for j in i + 1..t {
                edges.push((x(i), x(j)));
            }
        }
    }
    edges
}

pub fn base_graph(spec: BaseSpec) -> Result<Construction> {
    check_t(spec.t)?;
    let t = spec.t;
    let graph = Graph::new(2 * t + 1, block_edges(t, 0, spec.clique_x))?;
    let labels = (1..=t)
        .map(|i| format!("x_{i}"))
        .chain((1..=t).map(|j| format!("y_{j}")))
        .chain(std::iter::once("z".to_string()))
        .collect();
    Ok(Construction {
        x: VertexSet::from_vertices(graph.order(), 0..t)?,
        graph,
        labels,
        hub: None,
    })
}

pub fn composite(spec: CompositeSpec) -> Result<Construction> {
    check_t(spec.t)?;
    if spec.k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let (t, k) = (spec.t, spec.k);
    let width = 2 * t + 1;
    let order = k * width + 1;
    let mut edges = Vec::new();
    let mut labels = vec!["s".to_string()];
    let mut x = VertexSet::empty(order);
    for b in 0..k {
        let offset = 1 + b * width;
        edges.extend(block_edges(t, offset, spec.clique_x));
        for i in 0..t {
            edges.push((0, offset + i));
            x.insert(offset + i);
        }
        let bb = b + 1;
        labels.extend((1..=t).map(|i| format!("x_{{{bb},{i}}}")));
        labels.extend((1..=t).map(|j| format!("y_{{{bb},{j}}}")));
        labels.push(format!("z_{bb}"));
    }
    Ok(Construction {
        graph: Graph::new(order, edges)?,
        labels,
        x,
        hub: Some(0),
    })
}

/// A block `H` and its attachment set `A`, the vertices joined to the hub.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    graph: Graph,
    attach: VertexSet,
}

impl BlockSpec {
    /// Requires `A` nonempty and `H` plus a hub adjacent to `A` connected.
    pub fn new(graph: Graph, attach: VertexSet) -> Result<Self> {
        graph.check_set(&attach)?;
        if attach.is_empty() {
            return Err(Error::InvalidParameter("attachment set is empty".into()));
        }
        let block = Self { graph, attach };
        if !block.hub_augmented().is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(block)
    }

    /// `G_t - E(X)` attached through `X`.
    pub fn base(t: usize) -> Result<Self> {
        let c = base_graph(BaseSpec { t, clique_x: false })?;
        Self::new(c.graph, c.x)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn attach(&self) -> &VertexSet {
        &self.attach
    }

    /// `H` with one extra vertex, numbered `|V(H)|`, adjacent to `A`.
    pub fn hub_augmented(&self) -> Graph {
        let m = self.graph.order();
        Graph::new(
            m + 1,
            self.graph
                .edges()
                .iter()
                .copied()
                .chain(self.attach.iter().map(|a| (a, m))),
        )
        .expect("hub edges are in range")
    }
}

/// Hub `s = 0` joined to the attachment set of each of `k` disjoint copies.
pub fn compose(block: &BlockSpec, k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let m = block.graph.order();
    let mut edges = Vec::new();
    for b in 0..k {
        let offset = 1 + b * m;
        edges.extend(
            block
                .graph
                .edges()
                .iter()
                .map(|&(u, v)| (u + offset, v + offset)),
        );
        edges.extend(block.attach.iter().map(|a| (0, a + offset)));
    }
    Graph::new(k * m + 1, edges)
}

/// Plane rotation system for `composite(t = 3, k, clique_x = false)`.
///
/// Blocks sit left to right above the hub. Inside a block the `y` row reads
/// `y_2, y_3, y_1` and the edge `y_2 x_3` loops over `z` and comes down to the
/// right of `y_1`. Rotations are counterclockwise.
pub fn planar_rotation_g3k(k: usize) -> Result<(Graph, RotationSystem)> {
    let construction = composite(CompositeSpec {
        t: 3,
        k,
        clique_x: false,
    })?;
    let graph = construction.graph;
    let mut rotations = vec![Vec::new(); graph.order()];
    for b in (0..k).rev() {
        let o = 1 + 7 * b;
        let (x1, x2, x3) = (o, o + 1, o + 2);
        let (y1, y2, y3) = (o + 3, o + 4, o + 5);
        let z = o + 6;
        rotations[0].extend([x3, x2, x1]);
        rotations[z] = vec![y2, y3, y1];
        rotations[y2] = vec![z, x3, x1];
        rotations[y3] = vec![z, x1, x2];
        rotations[y1] = vec![z, x2, x3];
        rotations[x1] = vec![y3, y2, 0];
        rotations[x2] = vec![y1, y3, 0];
        rotations[x3] = vec![y2, y1, 0];
    }
    let rotation = RotationSystem::new(&graph, rotations)?;
    Ok((graph, rotation))
}
