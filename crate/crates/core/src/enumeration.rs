//! Exact enumeration and counting of minimal connected dominating sets.
//!
//! Candidates are bit masks. Forced vertices are fixed to 1 and only the
//! remaining positions are iterated, in ascending numeric order of the full
//! mask. Each candidate is tested with the single-deletion minimality check
//! from [`crate::predicates`].

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::constructions::BlockSpec;
use crate::error::{Error, Result};
use crate::graph::{low_mask, Graph, VertexSet};
use crate::predicates::masks;
use crate::structure::cut_vertices;

/// Default largest graph order enumerated by brute force.
pub const DEFAULT_ORDER_LIMIT: usize = 30;
/// Hard ceiling: candidates are single-word masks.
pub const MAX_ORDER: usize = 63;
/// Default number of sets materialized in collect mode.
pub const DEFAULT_COLLECT_CAP: usize = 1_000_000;

const CHUNK_BITS: u32 = 14;

const DECOMPOSE_HINT: &str =
    "decompose at cut vertices and count per block (block_mcds / composite_count_via_blocks), \
     or raise the limit explicitly";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Count,
    /// Materialize up to `cap` sets; the count is exact regardless.
    Collect { cap: usize },
}

impl Mode {
    pub fn collect() -> Self {
        Mode::Collect {
            cap: DEFAULT_COLLECT_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationRequest<'g> {
    pub graph: &'g Graph,
    pub mode: Mode,
    /// Keep only sets meeting this set.
    pub intersect_filter: Option<VertexSet>,
    /// Vertices assumed to be in every solution.
    pub forced: Option<VertexSet>,
    pub order_limit: usize,
    /// Split the candidate range across the rayon pool.
    pub parallel: bool,
}

impl<'g> EnumerationRequest<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self {
            graph,
            mode: Mode::Count,
            intersect_filter: None,
            forced: None,
            order_limit: DEFAULT_ORDER_LIMIT,
            parallel: false,
        }
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn filter(mut self, set: VertexSet) -> Self {
        self.intersect_filter = Some(set);
        self
    }

    pub fn forced(mut self, set: VertexSet) -> Self {
        self.forced = Some(set);
        self
    }

    pub fn order_limit(mut self, limit: usize) -> Self {
        self.order_limit = limit;
        self
    }

    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub subsets_inspected: u64,
    pub cds_found: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub count: BigUint,
    /// Present in collect mode, in ascending mask order.
    pub sets: Option<Vec<VertexSet>>,
    /// Set when the collect cap cut the list short.
    pub truncated: bool,
    pub stats: Stats,
}

/// The compiled search: masks plus which positions vary.
struct Engine {
    order: usize,
    adj: Vec<u64>,
    full: u64,
    forced: u64,
    free: u64,
    free_bits: u32,
    deletable: u64,
    filter: Option<u64>,
}

#[derive(Default)]
struct ChunkOutcome {
    count: u64,
    inspected: u64,
    cds: u64,
    hits: Vec<u64>,
}

impl Engine {
    fn new(graph: &Graph, forced: u64, deletable: u64, filter: Option<u64>) -> Self {
        let order = graph.order();
        let full = low_mask(order);
        let free = full & !forced;
        Self {
            order,
            adj: graph.adjacency_masks().expect("order checked").to_vec(),
            full,
            forced,
            free,
            free_bits: free.count_ones(),
            deletable,
            filter,
        }
    }

    // Spreads the low bits of `index` over the free positions.
    fn scatter(&self, index: u64) -> u64 {
        let mut out = 0;
        let mut positions = self.free;
        let mut i = 0;
        while positions != 0 {
            let bit = positions & positions.wrapping_neg();
            positions &= positions - 1;
            if index >> i & 1 == 1 {
                out |= bit;
            }
            i += 1;
        }
        out
    }

    fn run(&self, start: u64, len: u64, keep: usize, outcome: &mut ChunkOutcome) {
        let mut sub = self.scatter(start);
        for _ in 0..len {
            let set = sub | self.forced;
            sub = sub.wrapping_sub(self.free) & self.free;
            if set == 0 {
                continue;
            }
            outcome.inspected += 1;
            if !masks::cds(&self.adj, self.full, set) {
                continue;
            }
            outcome.cds += 1;
            if self.filter.is_some_and(|f| set & f == 0) {
                continue;
            }
            if masks::minimal_cds(&self.adj, self.full, set, self.deletable) {
                outcome.count += 1;
                if outcome.hits.len() < keep {
                    outcome.hits.push(set);
                }
            }
        }
    }

    fn execute(&self, mode: Mode, parallel: bool) -> EnumerationResult {
        let started = Instant::now();
        let keep = match mode {
            Mode::Count => 0,
            Mode::Collect { cap } => cap,
        };
        let total: u64 = 1u64 << self.free_bits;
        let chunk = 1u64 << CHUNK_BITS.min(self.free_bits);
        let chunks = total / chunk;
        let run_chunk = |c: u64| {
            let mut out = ChunkOutcome::default();
            self.run(c * chunk, chunk, keep, &mut out);
            out
        };
        let outcomes: Vec<ChunkOutcome> = if parallel && chunks > 1 {
            (0..chunks).into_par_iter().map(run_chunk).collect()
        } else {
            (0..chunks).map(run_chunk).collect()
        };

        let mut stats = Stats::default();
        let mut count = BigUint::zero();
        let mut hits = Vec::new();
        for o in outcomes {
            count += o.count;
            stats.subsets_inspected += o.inspected;
            stats.cds_found += o.cds;
            let room = keep.saturating_sub(hits.len());
            hits.extend(o.hits.into_iter().take(room));
        }
        stats.elapsed = started.elapsed();
        let truncated = matches!(mode, Mode::Collect { .. }) && count > BigUint::from(hits.len());
        let sets = matches!(mode, Mode::Collect { .. }).then(|| {
            hits.into_iter()
                .map(|m| VertexSet::from_mask(self.order, m))
                .collect()
        });
        EnumerationResult {
            count,
            sets,
            truncated,
            stats,
        }
    }
}

fn check_order(graph: &Graph, limit: usize) -> Result<()> {
    let n = graph.order();
    if n > limit.min(MAX_ORDER) {
        return Err(Error::OrderGuard {
            order: n,
            limit: limit.min(MAX_ORDER),
            hint: DECOMPOSE_HINT,
        });
    }
    Ok(())
}

fn mask_of(graph: &Graph, set: &Option<VertexSet>) -> Result<Option<u64>> {
    set.as_ref()
        .map(|s| {
            graph.check_set(s)?;
            Ok(s.to_mask().expect("order checked"))
        })
        .transpose()
}

/// All minimal connected dominating sets of a connected graph, subject to
/// the request's filter and forced vertices.
pub fn enumerate_mcds(req: &EnumerationRequest<'_>) -> Result<EnumerationResult> {
    let graph = req.graph;
    check_order(graph, req.order_limit)?;
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let forced = mask_of(graph, &req.forced)?.unwrap_or(0);
    let filter = mask_of(graph, &req.intersect_filter)?;
    let engine = Engine::new(graph, forced, low_mask(graph.order()), filter);
    Ok(engine.execute(req.mode, req.parallel))
}

/// Calls `sink` for every minimal CDS in ascending mask order; returns the count.
pub fn for_each_mcds<F>(req: &EnumerationRequest<'_>, mut sink: F) -> Result<BigUint>
where
    F: FnMut(VertexSet),
{
    let graph = req.graph;
    check_order(graph, req.order_limit)?;
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let forced = mask_of(graph, &req.forced)?.unwrap_or(0);
    let filter = mask_of(graph, &req.intersect_filter)?;
    let engine = Engine::new(graph, forced, low_mask(graph.order()), filter);
    let mut count = BigUint::zero();
    let chunk = 1u64 << CHUNK_BITS.min(engine.free_bits);
    for c in 0..(1u64 << engine.free_bits) / chunk {
        let mut out = ChunkOutcome::default();
        engine.run(c * chunk, chunk, usize::MAX, &mut out);
        count += out.count;
        for m in out.hits {
            sink(VertexSet::from_mask(graph.order(), m));
        }
    }
    Ok(count)
}

/// Number of minimal CDS, with cut vertices seeded as forced.
pub fn count_mcds(graph: &Graph) -> Result<BigUint> {
    count_mcds_limited(graph, DEFAULT_ORDER_LIMIT)
}

pub fn count_mcds_limited(graph: &Graph, order_limit: usize) -> Result<BigUint> {
    check_order(graph, order_limit)?;
    let req = EnumerationRequest::new(graph)
        .forced(cut_vertices(graph))
        .order_limit(order_limit)
        .parallel(true);
    Ok(enumerate_mcds(&req)?.count)
}

/// Minimal sets `T ⊆ V(H)` such that `T` plus a hub adjacent to `A` is a
/// connected dominating set of the hub-augmented block. Returned sets are
/// over the vertices of `H`.
pub fn block_mcds(block: &BlockSpec, mode: Mode) -> Result<EnumerationResult> {
    block_mcds_limited(block, mode, DEFAULT_ORDER_LIMIT)
}

pub fn block_mcds_limited(
    block: &BlockSpec,
    mode: Mode,
    order_limit: usize,
) -> Result<EnumerationResult> {
    let m = block.graph().order();
    check_order(block.graph(), order_limit.min(MAX_ORDER - 1))?;
    let augmented = block.hub_augmented();
    let hub = 1u64 << m;
    // Cut vertices of the augmented block lie in every solution that contains the hub.
    let cuts = cut_vertices(&augmented).to_mask().expect("order checked");
    let engine = Engine::new(&augmented, hub | cuts, low_mask(m), None);
    let mut result = engine.execute(mode, false);
    if let Some(sets) = result.sets.as_mut() {
        for set in sets.iter_mut() {
            let mask = set.to_mask().expect("order checked") & !hub;
            *set = VertexSet::from_mask(m, mask);
        }
    }
    Ok(result)
}

/// `block_mcds(block)^k`, valid when the hub is a cut vertex (`k >= 2`).
pub fn composite_count_via_blocks(block: &BlockSpec, k: usize) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::InvalidParameter(
            "the product shortcut needs k >= 2; count the composed graph with count_mcds".into(),
        ));
    }
    let per_block = block_mcds(block, Mode::Count)?.count;
    Ok(num_traits::pow(per_block, k))
}
