//! Rotation systems and face tracing.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Cyclic neighbor order at each vertex of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    rotations: Vec<Vec<usize>>,
}

impl RotationSystem {
    /// Checks that each list is a permutation of the vertex's neighbors in `graph`.
    pub fn new(graph: &Graph, rotations: Vec<Vec<usize>>) -> Result<Self> {
        if rotations.len() != graph.order() {
            return Err(Error::MalformedRotation(format!(
                "{} rotation lists for {} vertices",
                rotations.len(),
                graph.order()
            )));
        }
        for (v, list) in rotations.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if sorted != graph.neighbors(v) {
                return Err(Error::MalformedRotation(format!(
                    "rotation at vertex {v} is {list:?}, neighbors are {:?}",
                    graph.neighbors(v)
                )));
            }
        }
        Ok(Self { rotations })
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn order(&self) -> usize {
        self.rotations.len()
    }
}

/// A face as its cyclic sequence of directed edges `(u, v)`.
pub type Face = Vec<(usize, usize)>;

/// Traces faces: from the directed edge `(u, v)` continue with `(v, w)`, where
/// `w` follows `u` in the rotation at `v`.
pub fn trace_faces(graph: &Graph, rotation: &RotationSystem) -> Result<Vec<Face>> {
    if rotation.order() != graph.order() {
        return Err(Error::MalformedRotation("order mismatch".into()));
    }
    // Revalidate, since the rotation may have been built for another graph.
    RotationSystem::new(graph, rotation.rotations.clone())?;

    let mut position: HashMap<(usize, usize), usize> = HashMap::new();
    for (v, list) in rotation.rotations.iter().enumerate() {
        for (i, &u) in list.iter().enumerate() {
            position.insert((v, u), i);
        }
    }

    let mut darts: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .collect();
    darts.sort_unstable();
    let mut used = std::collections::HashSet::new();
    let mut faces = Vec::new();
    for &start in &darts {
        if used.contains(&start) {
            continue;
        }
        let mut face = Vec::new();
        let mut dart = start;
        while used.insert(dart) {
            face.push(dart);
            let (u, v) = dart;
            let list = &rotation.rotations[v];
            let w = list[(position[&(v, u)] + 1) % list.len()];
            dart = (v, w);
        }
        faces.push(face);
    }
    Ok(faces)
}

/// `V - E + F`; equals 2 exactly when a connected graph's rotation system is planar.
pub fn euler_characteristic(graph: &Graph, faces: &[Face]) -> i64 {
    graph.order() as i64 - graph.size() as i64 + faces.len() as i64
}
