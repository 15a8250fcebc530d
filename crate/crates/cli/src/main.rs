use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use mcds_core::bounds::{best_t, growth_rate, threshold};
use mcds_core::codec::{emit_dot, emit_edge_list, emit_graph6};
use mcds_core::constructions::{planar_rotation_g3k, BlockSpec};
use mcds_core::embedding::{euler_characteristic, trace_faces};
use mcds_core::enumeration::{
    block_mcds_limited, enumerate_mcds, for_each_mcds, EnumerationRequest,
    Mode, DEFAULT_ORDER_LIMIT, MAX_ORDER,
};
use mcds_core::search::{
    generated_candidates, graph6_candidates, search_stream, AttachmentPolicy, SearchConfig,
    ThresholdMode,
};
use mcds_core::structure::{cut_vertices, degeneracy, is_bipartite};
use mcds_core::{Error, Graph, VertexSet};

mod source;
mod verify;

use source::{Loaded, SourceArgs};

const EXIT_ABORT: u8 = 1;
const EXIT_SKIPS: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_GUARD: u8 = 65;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Guard(String),
    Abort(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::OrderGuard { .. } => CliError::Guard(e.to_string()),
            Error::InvalidParameter(_) => CliError::Usage(e.to_string()),
            _ => CliError::Abort(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Abort(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "mcds", version, about = "Minimal connected dominating set toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Graph6,
    Edges,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build G_t or G_t^k
    Construct {
        #[command(flatten)]
        spec: ConstructArgs,
        #[arg(long, value_enum, default_value = "graph6")]
        format: OutputFormat,
        /// Also print the plane rotation system (t = 3 composites) and its Euler check
        #[arg(long)]
        rotation: bool,
    },
    /// Count minimal connected dominating sets
    Count {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        opts: EnumOpts,
        #[arg(long)]
        json: bool,
    },
    /// List minimal connected dominating sets, one sorted vertex list per line
    Enumerate {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        opts: EnumOpts,
        #[arg(long)]
        json: bool,
    },
    /// Re-run the numeric checks behind the construction
    Verify {
        #[arg(long)]
        lemma1: bool,
        #[arg(long, default_value_t = 5)]
        t_max: usize,
        #[arg(long)]
        product: bool,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        corollary: bool,
        #[arg(long)]
        force: bool,
    },
    /// Growth rate table for t = 2..=t_max
    Rate {
        #[arg(long, default_value_t = 50)]
        t_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Least per-block count an order-M base graph needs to beat G_4
    Threshold {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Score candidate base graphs and report those reaching a threshold
    Search {
        /// graph6 stream, or `-` for stdin
        #[arg(long, required_unless_present = "generate", conflicts_with = "generate")]
        input: Option<String>,
        /// Use every connected graph of order 1..=N from the built-in generator
        #[arg(long)]
        generate: Option<usize>,
        /// all | full | sets:0,1;2,3
        #[arg(long, default_value = "full")]
        policy: String,
        /// beat-t4 | min-count:N
        #[arg(long, default_value = "beat-t4")]
        mode: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Skip the k = 2 brute-force recount of each hit
        #[arg(long)]
        no_product_check: bool,
        #[arg(long)]
        json: bool,
    },
    /// Bipartiteness, degeneracy and cut vertices
    Properties {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args, Debug)]
struct ConstructArgs {
    /// Layer size
    #[arg(long)]
    t: usize,
    /// Number of blocks around the hub
    #[arg(long, required_unless_present = "base", conflicts_with = "base")]
    k: Option<usize>,
    /// Build the base graph G_t instead of the composite
    #[arg(long)]
    base: bool,
    /// Make X a clique
    #[arg(long)]
    clique_x: bool,
}

impl ConstructArgs {
    fn source(&self) -> SourceArgs {
        SourceArgs {
            input: None,
            format: None,
            t: Some(self.t),
            k: self.k,
            base: self.base,
            clique_x: self.clique_x,
        }
    }
}

#[derive(clap::Args, Debug)]
struct EnumOpts {
    /// Keep only sets meeting X (constructions only)
    #[arg(long)]
    filter_x: bool,
    /// Treat the graph as a block attached to a hub through --attach
    #[arg(long, requires = "attach")]
    block: bool,
    /// Attachment set: comma-separated vertices, or X
    #[arg(long)]
    attach: Option<String>,
    /// Lift the brute-force order limit
    #[arg(long)]
    force: bool,
}

fn order_limit(force: bool) -> Result<usize, CliError> {
    if force {
        return Ok(MAX_ORDER);
    }
    match std::env::var("MCDS_FORCE_LIMIT") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("MCDS_FORCE_LIMIT is not an integer: {v:?}"))),
        Err(_) => Ok(DEFAULT_ORDER_LIMIT),
    }
}

fn format_set(set: &VertexSet) -> String {
    set.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_construct(
    out: &mut impl Write,
    spec: &ConstructArgs,
    output: OutputFormat,
    rotation: bool,
) -> Result<u8, CliError> {
    let c = source::build(&spec.source())?;
    match output {
        OutputFormat::Graph6 => writeln!(out, "{}", emit_graph6(&c.graph)?)?,
        OutputFormat::Edges => write!(out, "{}", emit_edge_list(&c.graph))?,
        OutputFormat::Dot => write!(out, "{}", emit_dot(&c.graph, Some(&c.labels)))?,
    }
    if rotation {
        if spec.t != 3 || spec.base || spec.clique_x {
            return Err(CliError::Usage(
                "--rotation needs a t = 3 composite without --clique-x".into(),
            ));
        }
        let (g, r) = planar_rotation_g3k(spec.k.unwrap_or(1))?;
        for v in 0..g.order() {
            let list: Vec<String> = r.rotation(v).iter().map(|w| w.to_string()).collect();
            writeln!(out, "# rotation {v}: {}", list.join(" "))?;
        }
        let faces = trace_faces(&g, &r)?;
        let chi = euler_characteristic(&g, &faces);
        writeln!(
            out,
            "# euler V={} E={} F={} V-E+F={chi} {}",
            g.order(),
            g.size(),
            faces.len(),
            if chi == 2 { "PASS" } else { "FAIL" }
        )?;
    }
    Ok(0)
}

fn filter_for(loaded: &Loaded, opts: &EnumOpts) -> Result<Option<VertexSet>, CliError> {
    if opts.filter_x {
        Ok(Some(loaded.x()?.clone()))
    } else {
        Ok(None)
    }
}

fn block_of(loaded: &Loaded, opts: &EnumOpts) -> Result<Option<BlockSpec>, CliError> {
    if !opts.block {
        return Ok(None);
    }
    let attach = source::attachment(opts.attach.as_deref().unwrap_or_default(), loaded)?;
    Ok(Some(BlockSpec::new(loaded.graph.clone(), attach)?))
}

/// Single-threaded request with cut vertices seeded as forced.
fn request(graph: &Graph, filter: Option<VertexSet>, limit: usize) -> EnumerationRequest<'_> {
    let mut req = EnumerationRequest::new(graph).order_limit(limit);
    if graph.order() <= limit {
        req = req.forced(cut_vertices(graph));
    }
    if let Some(filter) = filter {
        req = req.filter(filter);
    }
    req
}

fn cmd_count(
    out: &mut impl Write,
    source: &SourceArgs,
    opts: &EnumOpts,
    json: bool,
) -> Result<u8, CliError> {
    let loaded = source::load(source)?;
    let limit = order_limit(opts.force)?;
    let filter = filter_for(&loaded, opts)?;
    let count: BigUint = if let Some(block) = block_of(&loaded, opts)? {
        if filter.is_some() {
            return Err(CliError::Usage("--filter-x does not apply to --block".into()));
        }
        block_mcds_limited(&block, Mode::Count, limit)?.count
    } else {
        enumerate_mcds(&request(&loaded.graph, filter, limit))?.count
    };
    if json {
        let line = json!({
            "order": loaded.graph.order(),
            "count": count.to_string(),
            "filter_x": opts.filter_x,
            "block": opts.block,
        });
        writeln!(out, "{line}")?;
    } else {
        writeln!(out, "{count}")?;
    }
    Ok(0)
}

fn cmd_enumerate(
    out: &mut impl Write,
    source: &SourceArgs,
    opts: &EnumOpts,
    json: bool,
) -> Result<u8, CliError> {
    let loaded = source::load(source)?;
    let limit = order_limit(opts.force)?;
    let filter = filter_for(&loaded, opts)?;
    let print = |out: &mut dyn Write, set: &VertexSet| -> io::Result<()> {
        if json {
            writeln!(out, "{}", serde_json::to_string(&set.to_vec()).expect("vec serializes"))
        } else {
            writeln!(out, "{}", format_set(set))
        }
    };
    if let Some(block) = block_of(&loaded, opts)? {
        let result = block_mcds_limited(&block, Mode::collect(), limit)?;
        for set in result.sets.unwrap_or_default() {
            print(out, &set)?;
        }
        return Ok(0);
    }
    let req = request(&loaded.graph, filter, limit);
    let mut failure = None;
    for_each_mcds(&req, |set| {
        if failure.is_none() {
            failure = print(out, &set).err();
        }
    })?;
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(0),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    out: &mut impl Write,
    lemma1: bool,
    t_max: usize,
    product: bool,
    t: usize,
    k: usize,
    corollary: bool,
    force: bool,
) -> Result<u8, CliError> {
    let all = !(lemma1 || product || corollary);
    let limit = order_limit(force)?;
    let mut report = verify::Report::default();
    if lemma1 || all {
        verify::lemma1(&mut report, t_max, limit)?;
    }
    if product || all {
        verify::product(&mut report, t, k, limit)?;
    }
    if corollary || all {
        verify::corollary(&mut report)?;
    }
    for line in &report.lines {
        writeln!(out, "{line}")?;
    }
    Ok(if report.failed == 0 { 0 } else { EXIT_ABORT })
}

fn cmd_rate(out: &mut impl Write, t_max: usize, json: bool) -> Result<u8, CliError> {
    let best = best_t(t_max)?;
    if !json {
        writeln!(out, "{:>4} {:>10} {:>6} {:>10}", "t", "f(t)", "2t+1", "rate")?;
    }
    for t in 2..=t_max {
        let r = growth_rate(t)?;
        if json {
            let line = json!({
                "t": r.t,
                "f": r.f.to_string(),
                "order": r.order,
                "rate": r.rate,
                "rendered": r.rendered,
                "argmax": t == best,
            });
            writeln!(out, "{line}")?;
        } else {
            writeln!(
                out,
                "{:>4} {:>10} {:>6} {:>10}{}",
                r.t,
                r.f,
                r.order,
                r.rendered,
                if t == best { "  *" } else { "" }
            )?;
        }
    }
    Ok(0)
}

fn cmd_threshold(out: &mut impl Write, order: usize, json: bool) -> Result<u8, CliError> {
    let c = threshold(order)?;
    if json {
        writeln!(out, "{}", json!({"order": order, "threshold": c.to_string()}))?;
    } else {
        writeln!(out, "{c}")?;
    }
    Ok(0)
}

fn parse_policy(spec: &str) -> Result<AttachmentPolicy, CliError> {
    match spec {
        "all" => Ok(AttachmentPolicy::AllNonempty),
        "full" => Ok(AttachmentPolicy::Full),
        _ => {
            let sets = spec.strip_prefix("sets:").ok_or_else(|| {
                CliError::Usage(format!("unknown policy {spec:?}; use all, full or sets:..."))
            })?;
            let lists = sets
                .split(';')
                .map(source::parse_vertex_list)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(AttachmentPolicy::Sets(lists))
        }
    }
}

fn parse_mode(spec: &str) -> Result<ThresholdMode, CliError> {
    if spec == "beat-t4" {
        return Ok(ThresholdMode::BeatBest);
    }
    spec.strip_prefix("min-count:")
        .and_then(|n| n.parse::<BigUint>().ok())
        .map(ThresholdMode::MinCount)
        .ok_or_else(|| CliError::Usage(format!("unknown mode {spec:?}; use beat-t4 or min-count:N")))
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    out: &mut impl Write,
    input: Option<&str>,
    generate: Option<usize>,
    policy: &str,
    mode: &str,
    jobs: usize,
    product_check: bool,
    json: bool,
) -> Result<u8, CliError> {
    let config = SearchConfig {
        policy: parse_policy(policy)?,
        mode: parse_mode(mode)?,
        jobs,
        verify_product: product_check,
    };
    let mut sink = |hit: &mcds_core::search::SearchHit| -> io::Result<()> {
        if json {
            writeln!(out, "{}", hit.to_json_line())
        } else {
            writeln!(
                out,
                "hit seq={} graph6={} order={} attachment={:?} count={} threshold={} rate={:.6}",
                hit.seq, hit.graph6, hit.order, hit.attachment, hit.count, hit.threshold, hit.rate
            )
        }
    };
    let result = match (input, generate) {
        (_, Some(n)) => {
            let candidates = generated_candidates(n)?.into_iter().map(Ok);
            search_stream(candidates, &config, &mut sink)
        }
        (Some("-"), None) => search_stream(graph6_candidates(io::stdin().lock()), &config, &mut sink),
        (Some(path), None) => {
            let file = std::fs::File::open(path)
                .map_err(|e| CliError::Abort(format!("opening {path}: {e}")))?;
            search_stream(graph6_candidates(io::BufReader::new(file)), &config, &mut sink)
        }
        (None, None) => return Err(CliError::Usage("give --input or --generate".into())),
    };
    let (summary, code) = match result {
        Ok(summary) => {
            let code = if summary.skipped.is_empty() { 0 } else { EXIT_SKIPS };
            (summary, code)
        }
        Err(abort) => {
            eprintln!("mcds: {}", abort.error);
            (abort.summary, EXIT_ABORT)
        }
    };
    if json {
        writeln!(out, "{}", summary.to_json_line())?;
    } else {
        writeln!(
            out,
            "processed={} hits={} skipped={} skipped_attachments={}",
            summary.processed,
            summary.hits,
            summary.skipped.len(),
            summary.skipped_attachments
        )?;
        for skip in &summary.skipped {
            let line = skip.line.map_or("-".to_string(), |l| l.to_string());
            writeln!(out, "skip seq={} line={line}: {}", skip.seq, skip.reason)?;
        }
        if let Some(best) = &summary.best {
            writeln!(
                out,
                "best seq={} graph6={} order={} attachment={:?} count={} rate={:.6}",
                best.seq, best.graph6, best.order, best.attachment, best.count, best.rate
            )?;
        }
    }
    Ok(code)
}

fn cmd_properties(out: &mut impl Write, source: &SourceArgs, json: bool) -> Result<u8, CliError> {
    let loaded = source::load(source)?;
    let g = &loaded.graph;
    let bipartite = is_bipartite(g).is_some();
    let (d, _) = degeneracy(g);
    let cuts: Vec<String> = cut_vertices(g).iter().map(|v| loaded.label(v)).collect();
    if json {
        let line = json!({
            "order": g.order(),
            "size": g.size(),
            "connected": g.is_connected(),
            "bipartite": bipartite,
            "degeneracy": d,
            "cut": cuts,
        });
        writeln!(out, "{line}")?;
    } else {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        writeln!(out, "order={}", g.order())?;
        writeln!(out, "size={}", g.size())?;
        writeln!(out, "connected={}", yes_no(g.is_connected()))?;
        writeln!(out, "bipartite={}", yes_no(bipartite))?;
        writeln!(out, "degeneracy={d}")?;
        writeln!(out, "cut={{{}}}", cuts.join(","))?;
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match &cli.command {
        Command::Construct {
            spec,
            format,
            rotation,
        } => cmd_construct(&mut out, spec, *format, *rotation),
        Command::Count { source, opts, json } => cmd_count(&mut out, source, opts, *json),
        Command::Enumerate { source, opts, json } => cmd_enumerate(&mut out, source, opts, *json),
        Command::Verify {
            lemma1,
            t_max,
            product,
            t,
            k,
            corollary,
            force,
        } => cmd_verify(&mut out, *lemma1, *t_max, *product, *t, *k, *corollary, *force),
        Command::Rate { t_max, json } => cmd_rate(&mut out, *t_max, *json),
        Command::Threshold { order, json } => cmd_threshold(&mut out, *order, *json),
        Command::Search {
            input,
            generate,
            policy,
            mode,
            jobs,
            no_product_check,
            json,
        } => cmd_search(
            &mut out,
            input.as_deref(),
            *generate,
            policy,
            mode,
            *jobs,
            !no_product_check,
            *json,
        ),
        Command::Properties { source, json } => cmd_properties(&mut out, source, *json),
    };
    out.flush()?;
    code
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("mcds: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Guard(msg)) => {
            eprintln!("mcds: {msg}");
            ExitCode::from(EXIT_GUARD)
        }
        Err(CliError::Abort(msg)) => {
            eprintln!("mcds: {msg}");
            ExitCode::from(EXIT_ABORT)
        }
    }
}
