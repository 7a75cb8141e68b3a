use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use cubex_core::{CubeComplex, Vertex};

use crate::input::{self, Named};

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#393b79", "#637939",
];

#[derive(Args)]
pub struct DotArgs {
    pub complex: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Highlight a stored path (its edges) or set (its vertices). Repeatable.
    #[arg(long)]
    pub highlight: Vec<String>,
    /// Emphasize the edges of a chain of walls: a stored chain name or a JSON file.
    #[arg(long)]
    pub highlight_chain: Option<String>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render(c: &CubeComplex, highlight: &[String], chain: Option<&str>) -> anyhow::Result<String> {
    let mut marked_vertices = HashSet::new();
    let mut marked_edges: HashSet<(Vertex, Vertex)> = HashSet::new();
    for name in highlight {
        match input::named(c, name)? {
            Named::Path(path) => {
                marked_vertices.extend(path.iter().copied());
                for w in path.windows(2) {
                    marked_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
                }
            }
            Named::Set(set) => marked_vertices.extend(set.ones().map(Vertex::from_index)),
        }
    }
    let chain_walls: HashSet<_> = match chain {
        Some(spec) => input::wall_chain(c, spec)?.into_iter().collect(),
        None => HashSet::new(),
    };

    let mut out = String::from("graph cubex {\n  node [shape=circle, fontsize=10];\n");
    for v in c.vertices() {
        let name = quote(c.vertex_name(v));
        let mut attrs = Vec::new();
        if v == c.basepoint() {
            attrs.push("shape=doublecircle".to_string());
        }
        if marked_vertices.contains(&v) {
            attrs.push("style=filled, fillcolor=gold".to_string());
        }
        if attrs.is_empty() {
            writeln!(out, "  {name};")?;
        } else {
            writeln!(out, "  {name} [{}];", attrs.join(", "))?;
        }
    }
    for e in c.edges() {
        let color = PALETTE[e.wall.index() % PALETTE.len()];
        let mut attrs = vec![format!("label={}", quote(c.wall_name(e.wall))), format!("color=\"{color}\"")];
        if marked_edges.contains(&(e.u.min(e.v), e.u.max(e.v))) {
            attrs.push("penwidth=3".into());
        }
        if chain_walls.contains(&e.wall) {
            attrs.push("penwidth=5, style=bold".into());
        }
        writeln!(out, "  {} -- {} [{}];", quote(c.vertex_name(e.u)), quote(c.vertex_name(e.v)), attrs.join(", "))?;
    }
    out.push_str("}\n");
    Ok(out)
}

pub fn run(args: DotArgs) -> anyhow::Result<()> {
    let c = input::load(&args.complex)?;
    let text = render(&c, &args.highlight, args.highlight_chain.as_deref())?;
    match &args.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}
