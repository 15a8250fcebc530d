use mcds_core::bounds::{f, growth_rate};
use mcds_core::constructions::{
    base_graph, composite, planar_rotation_g3k, BaseSpec, BlockSpec, CompositeSpec,
};
use mcds_core::embedding::{euler_characteristic, trace_faces};
use mcds_core::enumeration::{
    block_mcds, composite_count_via_blocks, count_mcds_limited, enumerate_mcds,
    EnumerationRequest, Mode,
};
use mcds_core::structure::{cut_vertices, degeneracy, is_bipartite};

use crate::CliError;

/// Collects one PASS/FAIL line per check.
#[derive(Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub failed: usize,
}

impl Report {
    fn record(&mut self, pass: bool, line: String) {
        if !pass {
            self.failed += 1;
        }
        self.lines
            .push(format!("{} {line}", if pass { "PASS" } else { "FAIL" }));
    }
}

pub fn lemma1(report: &mut Report, t_max: usize, limit: usize) -> Result<(), CliError> {
    for t in 2..=t_max {
        let c = base_graph(BaseSpec { t, clique_x: true })?;
        let req = EnumerationRequest::new(&c.graph)
            .filter(c.x.clone())
            .order_limit(limit);
        let counted = enumerate_mcds(&req)?.count;
        let block = block_mcds(&BlockSpec::base(t)?, Mode::Count)?.count;
        let expected = f(t)?;
        report.record(
            counted == expected,
            format!("lemma1 t={t}: {counted} X-meeting sets in G_t, f({t}) = {expected}"),
        );
        report.record(
            block == expected,
            format!("lemma1 t={t}: {block} block sets in G_t - E(X), f({t}) = {expected}"),
        );
    }
    Ok(())
}

pub fn product(report: &mut Report, t: usize, k: usize, limit: usize) -> Result<(), CliError> {
    let g = composite(CompositeSpec {
        t,
        k,
        clique_x: false,
    })?
    .graph;
    let direct = count_mcds_limited(&g, limit)?;
    let formula = f(t)?.pow(k as u32);
    report.record(
        direct == formula,
        format!("product t={t} k={k}: brute force {direct} = f({t})^{k} = {formula}"),
    );
    if k >= 2 {
        let via_blocks = composite_count_via_blocks(&BlockSpec::base(t)?, k)?;
        report.record(
            via_blocks == direct,
            format!("product t={t} k={k}: block count^{k} = {via_blocks}"),
        );
    }
    Ok(())
}

pub fn corollary(report: &mut Report) -> Result<(), CliError> {
    let g = composite(CompositeSpec {
        t: 3,
        k: 3,
        clique_x: false,
    })?
    .graph;
    let bipartite = is_bipartite(&g).is_some_and(|c| c.is_proper(&g));
    report.record(bipartite, "corollary: G_3^3 is bipartite".into());
    let (d, _) = degeneracy(&g);
    report.record(d == 3, format!("corollary: degeneracy = {d}"));
    let cuts = cut_vertices(&g).to_vec();
    report.record(cuts == [0], format!("corollary: cut vertices = {cuts:?}"));
    for k in 1..=3 {
        let (h, rotation) = planar_rotation_g3k(k)?;
        let faces = trace_faces(&h, &rotation)?;
        let chi = euler_characteristic(&h, &faces);
        report.record(
            chi == 2,
            format!(
                "corollary: k={k} V={} E={} F={} V-E+F={chi}",
                h.order(),
                h.size(),
                faces.len()
            ),
        );
    }
    let rate = growth_rate(3)?;
    report.record(
        (rate.rate - 1.472).abs() < 5e-4,
        format!("corollary: rate {} ({:.7})", rate.rendered, rate.rate),
    );
    Ok(())
}
