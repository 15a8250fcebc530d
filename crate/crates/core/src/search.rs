//! Search for base graphs whose per-block count beats the `G_4` construction.
//!
//! Candidates come from a graph6 stream or from the small-order generator.
//! Each candidate is scored by [`evaluate_candidate`] over an attachment
//! policy; hits and a final summary are written as JSON lines. Evaluation is
//! parallel across candidates, but output follows input order, so any
//! parallelism width yields the same bytes.

use std::collections::BTreeMap;
use std::io::{self, BufRead};

use num_bigint::BigUint;
use serde::Serialize;

use crate::bounds::{rate_of, rate_exceeds, threshold};
use crate::canon::{canonical_graph, canonical_labeling};
use crate::codec::{emit_graph6, Graph6Reader};
use crate::constructions::{compose, BlockSpec};
use crate::enumeration::{block_mcds, count_mcds_limited, Mode, DEFAULT_ORDER_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order produced by [`generate_connected`].
pub const GENERATOR_LIMIT: usize = 7;
/// Largest block order for the all-subsets attachment policy.
pub const ALL_POLICY_LIMIT: usize = 10;
/// Largest composed order for the `k = 2` product spot check.
pub const PRODUCT_CHECK_LIMIT: usize = 26;

/// All graphs of order `n` up to isomorphism, keyed by canonical form.
fn all_graphs(n: usize) -> Result<BTreeMap<Vec<u8>, Graph>> {
    let mut classes = BTreeMap::new();
    if n == 0 {
        return Ok(classes);
    }
    if n == 1 {
        let g = Graph::new(1, [])?;
        classes.insert(canonical_labeling(&g)?.0, g);
        return Ok(classes);
    }
    // Every graph of order n is some order n-1 graph plus a vertex.
    for smaller in all_graphs(n - 1)?.values() {
        for neighborhood in 0u64..1 << (n - 1) {
            let edges = smaller.edges().iter().copied().chain(
                (0..n - 1)
                    .filter(|&v| neighborhood >> v & 1 == 1)
                    .map(|v| (v, n - 1)),
            );
            let g = Graph::new(n, edges)?;
            let form = canonical_labeling(&g)?.0;
            if let std::collections::btree_map::Entry::Vacant(slot) = classes.entry(form) {
                slot.insert(canonical_graph(&g)?);
            }
        }
    }
    Ok(classes)
}

/// One canonically labeled representative of every connected graph of order
/// `n`, ordered by canonical form.
pub fn generate_connected(n: usize) -> Result<Vec<Graph>> {
    if !(1..=GENERATOR_LIMIT).contains(&n) {
        return Err(Error::OrderGuard {
            order: n,
            limit: GENERATOR_LIMIT,
            hint: "feed larger orders as a graph6 stream from an external generator",
        });
    }
    Ok(all_graphs(n)?
        .into_values()
        .filter(Graph::is_connected)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttachmentPolicy {
    /// Every nonempty subset of the block's vertices.
    AllNonempty,
    /// The whole vertex set.
    Full,
    /// Explicit vertex lists; lists out of range for a block are skipped.
    Sets(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThresholdMode {
    /// Hit iff the block's rate exceeds `36^(1/9)`.
    BeatBest,
    MinCount(BigUint),
}

impl ThresholdMode {
    pub fn threshold_for(&self, order: usize) -> Result<BigUint> {
        match self {
            ThresholdMode::BeatBest => threshold(order),
            ThresholdMode::MinCount(c) => Ok(c.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    /// Best attachment set (sorted) and its per-block count.
    pub best: Option<(Vec<usize>, BigUint)>,
    pub evaluated: usize,
    /// Attachment sets whose hub-augmented block is disconnected.
    pub skipped: usize,
}

fn attachment_sets(graph: &Graph, policy: &AttachmentPolicy) -> Result<Vec<Option<VertexSet>>> {
    let m = graph.order();
    Ok(match policy {
        AttachmentPolicy::AllNonempty => {
            if m > ALL_POLICY_LIMIT {
                return Err(Error::OrderGuard {
                    order: m,
                    limit: ALL_POLICY_LIMIT,
                    hint: "the all-subsets policy is exponential; use the full or explicit policy",
                });
            }
            (1u64..1 << m).map(|mask| Some(VertexSet::from_mask(m, mask))).collect()
        }
        AttachmentPolicy::Full => vec![(m > 0).then(|| VertexSet::full(m))],
        AttachmentPolicy::Sets(lists) => lists
            .iter()
            .map(|l| VertexSet::from_vertices(m, l.iter().copied()).ok())
            .collect(),
    })
}

/// Maximizes `block_mcds(H, A)` over the policy's attachment sets. Ties go to
/// the lexicographically least sorted vertex list.
pub fn evaluate_candidate(graph: &Graph, policy: &AttachmentPolicy) -> Result<Evaluation> {
    if graph.order() > DEFAULT_ORDER_LIMIT {
        return Err(Error::OrderGuard {
            order: graph.order(),
            limit: DEFAULT_ORDER_LIMIT,
            hint: "block too large for brute-force evaluation",
        });
    }
    let mut eval = Evaluation {
        best: None,
        evaluated: 0,
        skipped: 0,
    };
    for attach in attachment_sets(graph, policy)? {
        let Some(block) = attach.and_then(|a| BlockSpec::new(graph.clone(), a).ok()) else {
            eval.skipped += 1;
            continue;
        };
        eval.evaluated += 1;
        let count = block_mcds(&block, Mode::Count)?.count;
        let list = block.attach().to_vec();
        let better = match &eval.best {
            None => true,
            Some((best_list, best_count)) => {
                count > *best_count || (count == *best_count && list < *best_list)
            }
        };
        if better {
            eval.best = Some((list, count));
        }
    }
    Ok(eval)
}

/// One input record for the harness.
#[derive(Clone, Debug)]
pub struct Candidate {
    /// 1-based position in the input, counting malformed records.
    pub seq: usize,
    /// Source line, when read from a text stream.
    pub line: Option<usize>,
    pub graph: std::result::Result<Graph, String>,
}

/// Candidates from a graph6 stream; I/O failures surface as `Err`.
pub fn graph6_candidates<R: BufRead>(input: R) -> impl Iterator<Item = io::Result<Candidate>> {
    Graph6Reader::new(input)
        .enumerate()
        .map(|(i, (line, record))| {
            record.map(|parsed| Candidate {
                seq: i + 1,
                line: Some(line),
                graph: parsed.map_err(|e| e.to_string()),
            })
        })
}

/// Every connected graph of order `1..=max_order` from the generator.
pub fn generated_candidates(max_order: usize) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        for graph in generate_connected(n)? {
            out.push(Candidate {
                seq: out.len() + 1,
                line: None,
                graph: Ok(graph),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub policy: AttachmentPolicy,
    pub mode: ThresholdMode,
    /// Worker threads; 1 evaluates inline.
    pub jobs: usize,
    /// Recount `compose(H, 2)` by brute force for each hit when feasible.
    pub verify_product: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            policy: AttachmentPolicy::Full,
            mode: ThresholdMode::BeatBest,
            jobs: 1,
            verify_product: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchHit {
    pub seq: usize,
    pub graph6: String,
    pub order: usize,
    pub attachment: Vec<usize>,
    pub count: String,
    pub threshold: String,
    pub rate: f64,
    /// Whether `count_mcds(compose(H, 2)) == count²`; absent when too large to check.
    pub product_check: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BestSeen {
    pub seq: usize,
    pub graph6: String,
    pub order: usize,
    pub attachment: Vec<usize>,
    pub count: String,
    pub rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Skip {
    pub seq: usize,
    pub line: Option<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SearchSummary {
    pub processed: usize,
    pub hits: usize,
    pub skipped: Vec<Skip>,
    pub skipped_attachments: usize,
    pub best: Option<BestSeen>,
}

impl SearchSummary {
    /// The summary as its marked JSON line: `{"summary": {...}}`.
    pub fn to_json_line(&self) -> String {
        serde_json::json!({ "summary": self }).to_string()
    }
}

impl SearchHit {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("hits serialize")
    }
}

#[derive(Debug, thiserror::Error)]
#[error("search aborted after {} records: {error}", summary.processed + summary.skipped.len())]
pub struct SearchAbort {
    pub summary: SearchSummary,
    pub error: io::Error,
}

enum Outcome {
    Scored {
        graph: Graph,
        eval: Evaluation,
        threshold: BigUint,
    },
    Skipped(String),
}

fn score(candidate: &Candidate, config: &SearchConfig) -> Outcome {
    let graph = match &candidate.graph {
        Ok(g) => g,
        Err(e) => return Outcome::Skipped(e.clone()),
    };
    let run = || -> Result<Outcome> {
        let eval = evaluate_candidate(graph, &config.policy)?;
        let threshold = config.mode.threshold_for(graph.order().max(1))?;
        Ok(Outcome::Scored {
            graph: graph.clone(),
            eval,
            threshold,
        })
    };
    run().unwrap_or_else(|e| Outcome::Skipped(e.to_string()))
}

fn product_check(graph: &Graph, attachment: &[usize], count: &BigUint) -> Option<bool> {
    if 2 * graph.order() + 1 > PRODUCT_CHECK_LIMIT {
        return None;
    }
    let attach = VertexSet::from_vertices(graph.order(), attachment.iter().copied()).ok()?;
    let block = BlockSpec::new(graph.clone(), attach).ok()?;
    let composed = compose(&block, 2).ok()?;
    let direct = count_mcds_limited(&composed, PRODUCT_CHECK_LIMIT).ok()?;
    Some(direct == count * count)
}

/// Evaluates every candidate once and writes hit lines to `sink` in input
/// order. The summary line is left to the caller.
pub fn search_stream<I, F>(
    candidates: I,
    config: &SearchConfig,
    mut sink: F,
) -> std::result::Result<SearchSummary, Box<SearchAbort>>
where
    I: IntoIterator<Item = io::Result<Candidate>>,
    F: FnMut(&SearchHit) -> io::Result<()>,
{
    let jobs = config.jobs.max(1);
    let pool = (jobs > 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool")
    });
    let batch_size = jobs * 16;
    let mut summary = SearchSummary::default();
    let mut best_key: Option<(BigUint, usize)> = None;
    let mut input = candidates.into_iter();

    loop {
        let mut batch = Vec::with_capacity(batch_size);
        let mut failure = None;
        for item in input.by_ref() {
            match item {
                Ok(c) => batch.push(c),
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
            if batch.len() == batch_size {
                break;
            }
        }
        if batch.is_empty() && failure.is_none() {
            return Ok(summary);
        }

        let outcomes: Vec<Outcome> = match &pool {
            Some(pool) => pool.install(|| {
                use rayon::prelude::*;
                batch.par_iter().map(|c| score(c, config)).collect()
            }),
            None => batch.iter().map(|c| score(c, config)).collect(),
        };

        for (candidate, outcome) in batch.iter().zip(outcomes) {
            match outcome {
                Outcome::Skipped(reason) => summary.skipped.push(Skip {
                    seq: candidate.seq,
                    line: candidate.line,
                    reason,
                }),
                Outcome::Scored {
                    graph,
                    eval,
                    threshold,
                } => {
                    summary.processed += 1;
                    summary.skipped_attachments += eval.skipped;
                    let Some((attachment, count)) = eval.best else {
                        continue;
                    };
                    let m = graph.order();
                    let graph6 = emit_graph6(&graph).expect("block orders are small");
                    let rate = rate_of(&count, m);
                    let improves = match &best_key {
                        None => true,
                        Some((c, order)) => rate_exceeds(&count, m, c, *order),
                    };
                    if improves {
                        best_key = Some((count.clone(), m));
                        summary.best = Some(BestSeen {
                            seq: candidate.seq,
                            graph6: graph6.clone(),
                            order: m,
                            attachment: attachment.clone(),
                            count: count.to_string(),
                            rate,
                        });
                    }
                    if count >= threshold {
                        let check = config
                            .verify_product
                            .then(|| product_check(&graph, &attachment, &count))
                            .flatten();
                        let hit = SearchHit {
                            seq: candidate.seq,
                            graph6,
                            order: m,
                            attachment,
                            count: count.to_string(),
                            threshold: threshold.to_string(),
                            rate,
                            product_check: check,
                        };
                        summary.hits += 1;
                        if let Err(error) = sink(&hit) {
                            return Err(Box::new(SearchAbort { summary, error }));
                        }
                    }
                }
            }
        }
        if let Some(error) = failure {
            return Err(Box::new(SearchAbort { summary, error }));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::beats_best;
    use crate::codec::parse_graph6;

    #[test]
    fn generator_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| generate_connected(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        assert!(generate_connected(8).is_err());
        assert!(generate_connected(0).is_err());
    }

    #[test]
    fn generator_is_deterministic_and_connected() {
        let a = generate_connected(5).unwrap();
        let b = generate_connected(5).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(Graph::is_connected));
    }

    #[test]
    fn evaluate_g4_block_with_x() {
        let block = BlockSpec::base(4).unwrap();
        let policy = AttachmentPolicy::Sets(vec![vec![0, 1, 2, 3]]);
        let eval = evaluate_candidate(block.graph(), &policy).unwrap();
        assert_eq!(eval.best, Some((vec![0, 1, 2, 3], 36u32.into())));
    }

    #[test]
    fn evaluate_g3_block_all_subsets() {
        let block = BlockSpec::base(3).unwrap();
        let eval = evaluate_candidate(block.graph(), &AttachmentPolicy::AllNonempty).unwrap();
        assert_eq!(eval.best, Some((vec![0, 1, 2], 15u32.into())));
        assert!(BigUint::from(15u32) < threshold(7).unwrap());
        assert!(!beats_best(&15u32.into(), 7));
        assert_eq!(eval.evaluated + eval.skipped, 127);
    }

    #[test]
    fn evaluate_single_vertex() {
        let k1 = Graph::new(1, []).unwrap();
        for policy in [AttachmentPolicy::AllNonempty, AttachmentPolicy::Full] {
            let eval = evaluate_candidate(&k1, &policy).unwrap();
            assert_eq!(eval.best, Some((vec![0], 1u32.into())));
        }
    }

    #[test]
    fn disconnecting_attachments_are_skipped() {
        let two = Graph::new(2, []).unwrap();
        let eval = evaluate_candidate(&two, &AttachmentPolicy::AllNonempty).unwrap();
        assert_eq!(eval.skipped, 2);
        assert_eq!(eval.best, Some((vec![0, 1], 1u32.into())));
    }

    #[test]
    fn min_count_hit_on_g4_block() {
        let g = BlockSpec::base(4).unwrap().graph().clone();
        let line = emit_graph6(&g).unwrap();
        let config = SearchConfig {
            policy: AttachmentPolicy::Sets(vec![vec![0, 1, 2, 3]]),
            mode: ThresholdMode::MinCount(36u32.into()),
            ..SearchConfig::default()
        };
        let mut hits = Vec::new();
        let summary = search_stream(
            graph6_candidates(format!("{line}\n").as_bytes()),
            &config,
            |h| {
                hits.push(h.clone());
                Ok(())
            },
        )
        .unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].count, "36");
        assert_eq!(hits[0].product_check, Some(true));
        assert_eq!(parse_graph6(&hits[0].graph6).unwrap(), g);
        assert_eq!(summary.processed, 1);
    }

    #[test]
    fn small_orders_never_beat_best() {
        let config = SearchConfig {
            policy: AttachmentPolicy::AllNonempty,
            ..SearchConfig::default()
        };
        let candidates = generated_candidates(4).unwrap().into_iter().map(Ok);
        let summary = search_stream(candidates, &config, |_| panic!("no hit expected")).unwrap();
        assert_eq!(summary.hits, 0);
        assert_eq!(summary.processed, 1 + 1 + 2 + 6);
        assert!(summary.best.is_some());
    }

    #[test]
    fn empty_stream() {
        let summary = search_stream(
            graph6_candidates(&b""[..]),
            &SearchConfig::default(),
            |_| Ok(()),
        )
        .unwrap();
        assert_eq!(summary.processed, 0);
        assert_eq!(summary.hits, 0);
        assert!(summary.best.is_none());
    }

    #[test]
    fn malformed_lines_are_recorded() {
        let input = "Bw\nB!\n\nC~\n";
        let summary =
            search_stream(graph6_candidates(input.as_bytes()), &SearchConfig::default(), |_| Ok(()))
                .unwrap();
        assert_eq!(summary.processed, 2);
        assert_eq!(summary.skipped.len(), 1);
        assert_eq!(summary.skipped[0].line, Some(2));
        assert_eq!(summary.skipped[0].seq, 2);
    }

    #[test]
    fn io_failure_aborts_with_partial_summary() {
        let k3 = Candidate {
            seq: 1,
            line: None,
            graph: Ok(parse_graph6("Bw").unwrap()),
        };
        let items = vec![Ok(k3), Err(io::Error::other("boom"))];
        let abort = search_stream(items, &SearchConfig::default(), |_| Ok(())).unwrap_err();
        assert_eq!(abort.summary.processed, 1);
    }
}
