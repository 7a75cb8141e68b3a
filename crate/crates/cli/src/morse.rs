use std::path::PathBuf;

use anyhow::bail;
use clap::Args;
use cubex_core::gallery::TreeOfFlats;
use cubex_core::morse::{
    grows_with_window, DiscretePath, ExcursionChain, ExcursionVerdict, SampleSpec, SublinearFunction, TrendPoint,
};
use cubex_core::report::{AnalysisReport, Exactness};
use cubex_core::{CubeComplex, Wall};
use serde_json::{json, Value};

use crate::input::{self, names, wall_names, Named};
use crate::query::ConvexTarget;
use crate::Outcome;

#[derive(Args)]
pub struct ExcursionArgs {
    pub complex: PathBuf,
    /// A path stored in the complex metadata.
    #[arg(long)]
    pub path: String,
    /// Gauge: `one`, `log:p`, `pow:s` or `table:FILE`.
    #[arg(long, default_value = "one")]
    pub kappa: String,
    /// A fixed chain to verify and trend: a chain name in the metadata or a JSON file of
    /// wall names. Defaults to the complex's only stored chain, if it has exactly one.
    #[arg(long)]
    pub chain: Option<String>,
}

#[derive(Args)]
pub struct ContractionArgs {
    pub complex: PathBuf,
    #[command(flatten)]
    pub target: HullTarget,
    #[arg(long, default_value = "one")]
    pub kappa: String,
    /// Check this many random pairs instead of all of them.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct HullTarget {
    /// A convex set stored in the complex metadata.
    #[arg(long)]
    pub convex: Option<String>,
    /// A JSON file listing the vertices of a convex set.
    #[arg(long)]
    pub convex_file: Option<PathBuf>,
    /// Use the convex hull of a stored path or set.
    #[arg(long)]
    pub hull: Option<String>,
}

#[derive(Args)]
pub struct DemoArgs {
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Gauge for the excursion check and the counterexample ratios.
    #[arg(long, default_value = "pow:0.5")]
    pub kappa: String,
    #[arg(long, default_value_t = 2)]
    pub a_margin: usize,
    #[arg(long, default_value_t = 2)]
    pub b_margin: usize,
    /// Also write the model to this file.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn chain_json(c: &CubeComplex, chain: &ExcursionChain) -> Value {
    json!({
        "walls": wall_names(c, chain.walls()),
        "anchors": names(c, chain.entries.iter().map(|e| e.anchor)),
        "c": chain.c,
    })
}

fn verdict_json(verdict: &ExcursionVerdict) -> Value {
    json!({
        "valid": verdict.valid,
        "minimal_c": verdict.minimal_c,
        "worst_step": verdict.worst_step,
        "steps": verdict.steps,
        "exactness": verdict.exactness,
    })
}

/// Prefix lengths 2, 4, 8, … up to the full path.
fn windows(len: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut w = 2;
    while w < len {
        out.push(w);
        w *= 2;
    }
    out.push(len);
    out
}

fn trend_json(points: &[TrendPoint]) -> Value {
    serde_json::to_value(points).expect("trend points serialize")
}

fn default_chain(c: &CubeComplex, requested: Option<&str>) -> anyhow::Result<Option<Vec<Wall>>> {
    match requested {
        Some(spec) => Ok(Some(input::wall_chain(c, spec)?)),
        None => {
            let keys = c.meta_keys("chains");
            match keys.as_slice() {
                [only] => Ok(Some(c.named_chain(only)?)),
                _ => Ok(None),
            }
        }
    }
}

pub fn excursion(args: ExcursionArgs, echo: &str) -> anyhow::Result<Outcome> {
    let c = input::load(&args.complex)?;
    let kappa = input::kappa(&args.kappa)?;
    let path = DiscretePath::new(&c, c.named_path(&args.path)?)?;
    let (q, big_q) = path.constants();
    let search = c.find_excursion_chain(&path, &kappa)?;
    let mut exactness = search.verdict.as_ref().map_or(Exactness::Exact, |v| v.exactness);
    let greedy = json!({
        "chain": search.chain.as_ref().map(|ch| chain_json(&c, ch)),
        "verdict": search.verdict.as_ref().map(verdict_json),
        "diagnostic": search.diagnostic,
        "note": "greedy search: c is an upper bound on the minimal c",
    });
    let fixed_walls = default_chain(&c, args.chain.as_deref())?;
    let trend_walls: Vec<Wall> = match (&fixed_walls, &search.chain) {
        (Some(walls), _) => walls.clone(),
        (None, Some(chain)) => chain.walls(),
        (None, None) => Vec::new(),
    };
    let fixed = match &fixed_walls {
        Some(walls) => {
            let chain = c.chain_along_path(&path, walls, &kappa)?;
            let verdict = c.verify_excursion(&chain, Some(&path))?;
            exactness = exactness.and(verdict.exactness);
            json!({ "chain": chain_json(&c, &chain), "verdict": verdict_json(&verdict) })
        }
        None => Value::Null,
    };
    let trend = if trend_walls.len() >= 2 {
        c.excursion_trend(&path, &trend_walls, &kappa, &windows(path.len()))?
    } else {
        Vec::new()
    };
    let results = json!({
        "kappa": kappa.to_string(),
        "path": { "name": args.path, "length": path.len() - 1, "q": q, "big_q": big_q, "geodesic": path.is_geodesic() },
        "greedy": greedy,
        "fixed_chain": fixed,
        "trend": trend_json(&trend),
        "no_uniform_constant": grows_with_window(&trend),
    });
    Ok(AnalysisReport::new(echo, c.digest(), results).with_exactness(exactness).into())
}

pub fn contraction(args: ContractionArgs, echo: &str) -> anyhow::Result<AnalysisReport> {
    let c = input::load(&args.complex)?;
    let kappa = input::kappa(&args.kappa)?;
    let t = &args.target;
    let y = match &t.hull {
        Some(name) => {
            let set = match input::named(&c, name)? {
                Named::Path(vertices) => c.vertex_set(vertices),
                Named::Set(set) => set,
            };
            c.hull(&set)?
        }
        None => ConvexTarget { convex: t.convex.clone(), convex_file: t.convex_file.clone() }.resolve(&c)?,
    };
    let spec = match args.samples {
        Some(pairs) => SampleSpec::Sampled { pairs, seed: args.seed },
        None => SampleSpec::Exhaustive,
    };
    let profile = c.contraction_profile(&y, &kappa, spec)?;
    let results = json!({
        "kappa": kappa.to_string(),
        "convex_size": y.len(),
        "max_ratio": profile.max_ratio,
        "witness": profile.witness.map(|(x, z)| json!({ "x": c.vertex_name(x), "y": c.vertex_name(z) })),
        "pairs_checked": profile.pairs_checked,
        "windows": profile.windows,
    });
    let mut report = AnalysisReport::new(echo, c.digest(), results).with_exactness(profile.exactness);
    if let Some(seed) = profile.seed {
        report = report.with_seed(seed);
    }
    Ok(report)
}

pub fn demo(args: DemoArgs, echo: &str) -> anyhow::Result<Outcome> {
    if args.n < 2 {
        bail!(cubex_core::Error::InvalidParameter("demo-zz2 needs n >= 2".into()));
    }
    let kappa = input::kappa(&args.kappa)?;
    let model = TreeOfFlats::generate(args.n, args.a_margin, args.b_margin)?;
    let c = model.complex();
    if let Some(out) = &args.output {
        c.save(out)?;
    }
    let n = args.n;
    let t_n = n + n * (n + 1) / 2;
    let ray_length = model.ray().len() - 1;
    let end = model.ray()[ray_length];
    let contact = model.contact_distance(c.basepoint(), end);
    let diam = model.flat_projection_diam(model.ray(), n)?;
    let path = model.ray_path();

    let chain = c.chain_along_path(&path, model.c_walls(), &kappa)?;
    let verdict = c.verify_excursion(&chain, Some(&path))?;
    let one = SublinearFunction::One;
    let constant_trend = c.excursion_trend(&path, model.c_walls(), &one, &windows(path.len()))?;
    let constant_chain = c.chain_along_path(&path, model.c_walls(), &one)?;
    let report = model.counterexample_report(&kappa)?;

    let checks = json!({
        "ray_length_formula": ray_length == t_n,
        "ray_is_geodesic": path.is_geodesic() && c.distance(c.basepoint(), end) == t_n,
        "contact_distance_is_n": contact == n,
        "flat_projection_diam_is_n": diam == n,
    });
    let passed = checks.as_object().expect("object").values().all(|v| v == &Value::Bool(true));
    let results = json!({
        "n": n,
        "margins": [args.a_margin, args.b_margin],
        "vertices": c.vertex_count(),
        "t_n": t_n,
        "ray_length": ray_length,
        "contact_distance": contact,
        "flat_projection_diam": diam,
        "checks": checks,
        "counterexample": report,
        "excursion": {
            "kappa": kappa.to_string(),
            "chain": chain_json(c, &chain),
            "verdict": verdict_json(&verdict),
        },
        "constant_gauge": {
            "minimal_c": constant_chain.c,
            "trend": trend_json(&constant_trend),
            "no_uniform_constant": grows_with_window(&constant_trend),
        },
        "truncation": c.meta().get("truncation").cloned().unwrap_or(Value::Null),
    });
    Ok(Outcome { report: AnalysisReport::new(echo, c.digest(), results), checks_passed: passed })
}
