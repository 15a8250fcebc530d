//! Where a command's graph comes from: a file, stdin, or a construction.

use std::io::Read;

use clap::{Args, ValueEnum};
use mcds_core::codec::{detect_format, parse_edge_list, parse_graph6, Format};
use mcds_core::constructions::{base_graph, composite, BaseSpec, CompositeSpec, Construction};
use mcds_core::{Graph, VertexSet};

use crate::CliError;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum InputFormat {
    Graph6,
    Edges,
}

#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    /// Graph file (graph6 or edge list), or `-` for stdin
    #[arg(long, conflicts_with_all = ["t", "k", "base"])]
    pub input: Option<String>,

    /// Input format; detected from the first line when omitted
    #[arg(long, requires = "input")]
    pub format: Option<InputFormat>,

    /// Layer size of the built-in construction
    #[arg(long)]
    pub t: Option<usize>,

    /// Number of blocks around the hub
    #[arg(long)]
    pub k: Option<usize>,

    /// Use the base graph G_t instead of the composite
    #[arg(long)]
    pub base: bool,

    /// Make X a clique
    #[arg(long)]
    pub clique_x: bool,
}

/// A loaded graph, with construction metadata when it was built in-process.
pub struct Loaded {
    pub graph: Graph,
    pub construction: Option<Construction>,
}

impl Loaded {
    pub fn x(&self) -> Result<&VertexSet, CliError> {
        self.construction
            .as_ref()
            .map(|c| &c.x)
            .ok_or_else(|| CliError::Usage("X is only known for built-in constructions".into()))
    }

    pub fn label(&self, v: usize) -> String {
        match &self.construction {
            Some(c) => c.labels[v].clone(),
            None => v.to_string(),
        }
    }
}

pub fn build(args: &SourceArgs) -> Result<Construction, CliError> {
    let t = args
        .t
        .ok_or_else(|| CliError::Usage("--t is required for constructions".into()))?;
    if args.base {
        if args.k.is_some() {
            return Err(CliError::Usage("--base takes no --k".into()));
        }
        Ok(base_graph(BaseSpec {
            t,
            clique_x: args.clique_x,
        })?)
    } else {
        let k = args
            .k
            .ok_or_else(|| CliError::Usage("--k is required unless --base is given".into()))?;
        Ok(composite(CompositeSpec {
            t,
            k,
            clique_x: args.clique_x,
        })?)
    }
}

pub fn read_text(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Abort(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Abort(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

pub fn parse_text(text: &str, format: Option<InputFormat>) -> Result<Graph, CliError> {
    let format = match format {
        Some(InputFormat::Graph6) => Format::Graph6,
        Some(InputFormat::Edges) => Format::EdgeList,
        None => detect_format(text).ok_or_else(|| {
            CliError::Usage("cannot tell the input format; pass --format graph6|edges".into())
        })?,
    };
    Ok(match format {
        Format::EdgeList => parse_edge_list(text)?,
        Format::Graph6 => {
            let mut records = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && *l != ">>graph6<<");
            let first = records
                .next()
                .ok_or_else(|| CliError::Abort("no graph in input".into()))?;
            if records.next().is_some() {
                return Err(CliError::Usage(
                    "input holds several graphs; use `search` for streams".into(),
                ));
            }
            parse_graph6(first)?
        }
    })
}

pub fn load(args: &SourceArgs) -> Result<Loaded, CliError> {
    match &args.input {
        Some(path) => Ok(Loaded {
            graph: parse_text(&read_text(path)?, args.format)?,
            construction: None,
        }),
        None => {
            let c = build(args)?;
            Ok(Loaded {
                graph: c.graph.clone(),
                construction: Some(c),
            })
        }
    }
}

/// Parses `--attach`: a comma-separated vertex list, or `X` for constructions.
pub fn attachment(spec: &str, loaded: &Loaded) -> Result<VertexSet, CliError> {
    if spec.eq_ignore_ascii_case("x") {
        return Ok(loaded.x()?.clone());
    }
    let vertices = parse_vertex_list(spec)?;
    Ok(VertexSet::from_vertices(loaded.graph.order(), vertices)?)
}

pub fn parse_vertex_list(spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| CliError::Usage(format!("not a vertex number: {s:?}")))
        })
        .collect()
}
