use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::Subcommand;
use cubex_core::complex::realize_pocset;
use cubex_core::gallery::{gen_grid, gen_product, gen_staircase, gen_tree, gen_tripod, TreeOfFlats};
use cubex_core::report::AnalysisReport;
use cubex_core::{CubeComplex, HalfSpaceSystem, ValidationOptions};
use serde_json::json;

use crate::{input, OutputArg, Outcome};

#[derive(Subcommand)]
pub enum BuildKind {
    /// `m × n` grid of vertices.
    Grid {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Tree from its edges; the first vertex named is the basepoint.
    Tree {
        /// One edge; repeat for each edge.
        #[arg(long = "edge", num_args = 2, value_names = ["U", "V"], required = true)]
        edges: Vec<String>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Three legs of length `k` around a centre.
    Tripod {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Cartesian product of two complex files.
    Product {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Diagonal band of width four in the `k × k` grid.
    Staircase {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Spine of the Cayley complex of Z * Z^2 along the ray c a c a^2 ... c a^n.
    TreeOfFlats {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        a_margin: usize,
        #[arg(long, default_value_t = 2)]
        b_margin: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Dual complex of a half-space system file.
    Pocset {
        system: PathBuf,
        /// Maximum number of search nodes.
        #[arg(long, default_value_t = 1 << 22)]
        budget: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Validate an edge-list file and write it in canonical form.
    FromFile {
        input: PathBuf,
        /// Above this many vertices the median check samples triples.
        #[arg(long, default_value_t = ValidationOptions::default().median_vertex_cap)]
        median_cap: usize,
        #[arg(long, default_value_t = ValidationOptions::default().sampled_triples)]
        samples: usize,
        #[arg(long, default_value_t = ValidationOptions::default().seed)]
        seed: u64,
        #[command(flatten)]
        out: OutputArg,
    },
}

pub fn run(kind: BuildKind, echo: &str) -> anyhow::Result<Outcome> {
    let mut extra = serde_json::Map::new();
    let mut seed = None;
    let (name, complex, out) = match kind {
        BuildKind::Grid { m, n, out } => ("grid", gen_grid(m, n)?, out),
        BuildKind::Tree { edges, out } => {
            let pairs: Vec<(String, String)> = edges.chunks(2).map(|p| (p[0].clone(), p[1].clone())).collect();
            ("tree", gen_tree(&pairs)?, out)
        }
        BuildKind::Tripod { k, out } => ("tripod", gen_tripod(k)?, out),
        BuildKind::Product { first, second, out } => {
            ("product", gen_product(&input::load(&first)?, &input::load(&second)?)?, out)
        }
        BuildKind::Staircase { k, out } => ("staircase", gen_staircase(k)?, out),
        BuildKind::TreeOfFlats { n, a_margin, b_margin, out } => {
            let model = TreeOfFlats::generate(n, a_margin, b_margin)?;
            extra.insert("ray_length".into(), (model.ray().len() - 1).into());
            ("tree-of-flats", model.into_complex(), out)
        }
        BuildKind::Pocset { system, budget, out } => {
            let text = fs::read_to_string(&system).with_context(|| format!("reading {}", system.display()))?;
            ("pocset", realize_pocset(&HalfSpaceSystem::from_json_str(&text)?, budget)?, out)
        }
        BuildKind::FromFile { input, median_cap, samples, seed: s, out } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let options = ValidationOptions { median_vertex_cap: median_cap, sampled_triples: samples, seed: s };
            let complex = CubeComplex::from_json_str_with(&text, &options)?;
            let report = complex.validate_with(&options);
            if report.checks.iter().any(|c| matches!(c.status, cubex_core::complex::CheckStatus::ProbabilisticPass { .. })) {
                seed = Some(s);
            }
            extra.insert("validation".into(), serde_json::to_value(&report)?);
            ("from-file", complex, out)
        }
    };
    complex.save(&out.output).with_context(|| format!("writing {}", out.output.display()))?;
    let mut results = json!({
        "kind": name,
        "output": out.output.display().to_string(),
        "vertices": complex.vertex_count(),
        "walls": complex.wall_count(),
        "edges": complex.edge_count(),
        "dimension": complex.dimension(),
    });
    results.as_object_mut().expect("object").extend(extra);
    let mut report = AnalysisReport::new(echo, complex.digest(), results);
    if let Some(s) = seed {
        report = report.with_seed(s).with_exactness(cubex_core::report::Exactness::Sampled);
    }
    Ok(report.into())
}
