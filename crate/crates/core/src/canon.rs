//! Brute-force canonical forms for small graphs.
//!
//! The canonical form is the lexicographically least upper-triangle adjacency
//! bit string, read column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! over all `n!` vertex orderings. Positions are filled one at a time and the
//! bits of column `j` are fixed as soon as position `j` is, so a partial
//! ordering whose prefix already exceeds the best complete string is dropped.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by [`canonical_form`].
pub const CANON_LIMIT: usize = 8;

/// Canonical byte string: the order, then the minimal bit string packed
/// most-significant bit first.
pub fn canonical_form(graph: &Graph) -> Result<Vec<u8>> {
    canonical_labeling(graph).map(|(form, _)| form)
}

/// Canonical form together with a permutation `position -> vertex` attaining it.
pub fn canonical_labeling(graph: &Graph) -> Result<(Vec<u8>, Vec<usize>)> {
    let n = graph.order();
    if n > CANON_LIMIT {
        return Err(Error::OrderGuard {
            order: n,
            limit: CANON_LIMIT,
            hint: "canonical forms are brute force and limited to small graphs",
        });
    }
    let adj: Vec<u64> = graph
        .adjacency_masks()
        .expect("small graphs carry masks")
        .to_vec();
    let total_bits = n * n.saturating_sub(1) / 2;
    let mut search = Search {
        adj,
        n,
        total_bits,
        best: None,
        best_perm: Vec::new(),
        perm: Vec::with_capacity(n),
    };
    search.extend(0, 0, false);
    let code = search.best.unwrap_or(0);
    let perm = if n == 0 { Vec::new() } else { search.best_perm };

    let mut bytes = vec![n as u8];
    let mut packed = vec![0u8; total_bits.div_ceil(8)];
    for bit in 0..total_bits {
        if code >> (total_bits - 1 - bit) & 1 == 1 {
            packed[bit / 8] |= 0x80 >> (bit % 8);
        }
    }
    bytes.extend(packed);
    Ok((bytes, perm))
}

/// The graph relabeled into its canonical ordering.
pub fn canonical_graph(graph: &Graph) -> Result<Graph> {
    let (_, perm) = canonical_labeling(graph)?;
    let mut inverse = vec![0; perm.len()];
    for (position, &v) in perm.iter().enumerate() {
        inverse[v] = position;
    }
    Ok(graph.relabel(&inverse))
}

struct Search {
    adj: Vec<u64>,
    n: usize,
    total_bits: usize,
    best: Option<u64>,
    best_perm: Vec<usize>,
    perm: Vec<usize>,
}

impl Search {
    // `code` holds the bits of columns 0..depth; `below` means the prefix is
    // already strictly less than the best string's prefix.
    fn extend(&mut self, depth: usize, code: u64, below: bool) {
        if depth == self.n {
            if self.best.is_none_or(|b| code < b) {
                self.best = Some(code);
                self.best_perm = self.perm.clone();
            }
            return;
        }
        let used: u64 = self.perm.iter().fold(0, |m, &v| m | 1 << v);
        for v in 0..self.n {
            if used >> v & 1 == 1 {
                continue;
            }
            let mut next = code;
            for &u in &self.perm {
                next = next << 1 | (self.adj[u] >> v & 1);
            }
            let mut strictly_below = below;
            if !below {
                if let Some(best) = self.best {
                    let prefix_bits = (depth + 1) * depth / 2;
                    let best_prefix = best >> (self.total_bits - prefix_bits);
                    if next > best_prefix {
                        continue;
                    }
                    strictly_below = next < best_prefix;
                }
            }
            self.perm.push(v);
            self.extend(depth + 1, next, strictly_below);
            self.perm.pop();
        }
    }
}
