use std::path::PathBuf;

use anyhow::bail;
use clap::{Args, Subcommand};
use cubex_core::report::{AnalysisReport, Exactness};
use cubex_core::{ConvexSubset, CubeComplex};
use serde_json::{json, Value};

use crate::input::{self, wall_names};

#[derive(Subcommand)]
pub enum QueryOp {
    /// Path distance and the walls separating two vertices.
    Distance { complex: PathBuf, x: String, y: String },
    /// Median of three vertices.
    Median { complex: PathBuf, x: String, y: String, z: String },
    /// All vertices on geodesics between two vertices.
    Interval { complex: PathBuf, x: String, y: String },
    /// Convex hull of the given vertices (or of a named set).
    Hull {
        complex: PathBuf,
        vertices: Vec<String>,
        /// Start from a set stored in the complex metadata.
        #[arg(long)]
        set: Option<String>,
    },
    /// Nearest vertex of a convex set.
    Gate {
        complex: PathBuf,
        x: String,
        #[command(flatten)]
        target: ConvexTarget,
    },
    /// Well-separation degree of two wall carriers and their gate-image diameters.
    Wellsep { complex: PathBuf, first: String, second: String },
    /// Relative position of two walls, or of three.
    Crossing { complex: PathBuf, first: String, second: String, third: Option<String> },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct ConvexTarget {
    /// A convex set stored in the complex metadata.
    #[arg(long)]
    pub convex: Option<String>,
    /// A JSON file listing the vertices of a convex set.
    #[arg(long)]
    pub convex_file: Option<PathBuf>,
}

impl ConvexTarget {
    pub fn resolve(&self, complex: &CubeComplex) -> anyhow::Result<ConvexSubset> {
        let set = match (&self.convex, &self.convex_file) {
            (Some(name), _) => complex.named_set(name)?,
            (None, Some(path)) => input::vertex_file(complex, path)?,
            (None, None) => bail!("give --convex or --convex-file"),
        };
        Ok(complex.certify(set)?)
    }
}

fn side_token(side: Option<cubex_core::Side>) -> Value {
    match side {
        Some(cubex_core::Side::Plus) => "+".into(),
        Some(cubex_core::Side::Minus) => "-".into(),
        None => Value::Null,
    }
}

pub fn run(op: QueryOp, echo: &str) -> anyhow::Result<AnalysisReport> {
    let (file, results, exactness) = match op {
        QueryOp::Distance { complex, x, y } => {
            let c = input::load(&complex)?;
            let (vx, vy) = (c.vertex(&x)?, c.vertex(&y)?);
            let r = json!({
                "x": x,
                "y": y,
                "distance": c.distance(vx, vy),
                "separating_walls": wall_names(&c, c.separating_walls(vx, vy)),
            });
            (c, r, Exactness::Exact)
        }
        QueryOp::Median { complex, x, y, z } => {
            let c = input::load(&complex)?;
            let m = c.median(c.vertex(&x)?, c.vertex(&y)?, c.vertex(&z)?);
            let r = json!({ "x": x, "y": y, "z": z, "median": c.vertex_name(m) });
            (c, r, Exactness::Exact)
        }
        QueryOp::Interval { complex, x, y } => {
            let c = input::load(&complex)?;
            let set = c.interval(c.vertex(&x)?, c.vertex(&y)?);
            let r = json!({ "x": x, "y": y, "size": set.count_ones(..), "vertices": c.names_of(&set) });
            (c, r, Exactness::Exact)
        }
        QueryOp::Hull { complex, vertices, set } => {
            let c = input::load(&complex)?;
            let mut a = c.vertex_set_from_names(&vertices)?;
            if let Some(name) = &set {
                a.union_with(&c.named_set(name)?);
            }
            let hull = c.hull(&a)?;
            let r = json!({ "size": hull.len(), "vertices": c.names_of(hull.set()) });
            (c, r, Exactness::Exact)
        }
        QueryOp::Gate { complex, x, target } => {
            let c = input::load(&complex)?;
            let y = target.resolve(&c)?;
            let vx = c.vertex(&x)?;
            let g = c.gate(vx, &y)?;
            let r = json!({
                "x": x,
                "gate": c.vertex_name(g),
                "distance": c.distance(vx, g),
                "separating_walls": wall_names(&c, c.separating_walls(vx, g)),
            });
            (c, r, Exactness::Exact)
        }
        QueryOp::Wellsep { complex, first, second } => {
            let c = input::load(&complex)?;
            let (a, b) = (c.wall(&first)?, c.wall(&second)?);
            let degree = c.wall_wellsep_degree(a, b)?;
            let (ya, yb) = (c.carrier_subset(a), c.carrier_subset(b));
            let crossing = wall_names(&c, c.walls().filter(|&w| w != a && w != b && c.crosses(w, a) && c.crosses(w, b)));
            let genevois = match c.genevois_pair_report(&ya, &yb) {
                Ok(report) => serde_json::to_value(report)?,
                Err(cubex_core::Error::NotDisjoint(_)) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            let r = json!({
                "first": first,
                "second": second,
                "degree": degree.value,
                "degree_exactness": degree.exactness,
                "crossing_walls": crossing,
                "carrier_pair": genevois,
            });
            (c, r, degree.exactness)
        }
        QueryOp::Crossing { complex, first, second, third } => {
            let c = input::load(&complex)?;
            let (a, b) = (c.wall(&first)?, c.wall(&second)?);
            let mut r = json!({
                "first": first,
                "second": second,
                "crosses": c.crosses(a, b),
                "side_of_first_holding_second": side_token(c.side_of(a, b)),
                "side_of_second_holding_first": side_token(c.side_of(b, a)),
            });
            if let Some(third) = &third {
                let w = c.wall(third)?;
                let obj = r.as_object_mut().expect("object");
                obj.insert("third".into(), third.clone().into());
                obj.insert("facing_triple".into(), c.is_facing_triple(a, b, w).into());
                obj.insert("chain_in_order".into(), c.is_chain(&[a, b, w])?.into());
            }
            (c, r, Exactness::Exact)
        }
    };
    Ok(AnalysisReport::new(echo, file.digest(), results).with_exactness(exactness))
}
