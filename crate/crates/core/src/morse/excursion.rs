//! Excursion chains: chains of walls along a path with controlled gaps and
//! well-separation.

use serde::Serialize;

use super::kappa::SublinearFunction;
use super::path::{DiscretePath, FirstCrossing};
use crate::complex::{CubeComplex, Side, Vertex, VertexSet, Wall};
use crate::error::{Error, Result};
use crate::geodesics::GEODESIC_CAP;
use crate::report::Exactness;

const EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainEntry {
    pub wall: Wall,
    pub anchor: Vertex,
    /// Position of the anchor on the path it was taken from, if any.
    pub path_index: Option<usize>,
}

impl From<FirstCrossing> for ChainEntry {
    fn from(fc: FirstCrossing) -> Self {
        ChainEntry { wall: fc.wall, anchor: fc.anchor, path_index: Some(fc.index) }
    }
}

/// A chain of walls `h_i` with anchors `x_i` such that consecutive anchors are at most
/// `c κ(‖x_i‖)` apart and consecutive walls are `c κ(‖x_i‖)`-well-separated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExcursionChain {
    pub entries: Vec<ChainEntry>,
    pub c: f64,
    pub kappa: SublinearFunction,
}

impl ExcursionChain {
    pub fn walls(&self) -> Vec<Wall> {
        self.entries.iter().map(|e| e.wall).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Measurements for one consecutive pair `(h_i, h_{i+1})`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChainStep {
    pub gap: usize,
    pub degree: usize,
    pub degree_exactness: Exactness,
    pub anchor_norm: usize,
    pub kappa: f64,
    /// `max(gap, degree) / κ(‖x_i‖)`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExcursionVerdict {
    /// Whether the chain's declared `c` is at least the minimal one.
    pub valid: bool,
    pub minimal_c: f64,
    /// Index of the step attaining the minimal `c`.
    pub worst_step: usize,
    pub steps: Vec<ChainStep>,
    /// `LowerBound` when some degree is only a lower bound, making `minimal_c` one too.
    pub exactness: Exactness,
}

/// Result of the greedy chain search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExcursionSearch {
    pub chain: Option<ExcursionChain>,
    pub verdict: Option<ExcursionVerdict>,
    pub diagnostic: Option<String>,
}

/// Minimal excursion constant of a growing window, for trend reporting.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrendPoint {
    pub window: usize,
    pub chain_len: usize,
    pub minimal_c: f64,
}

/// Outcome of checking where geodesics cross a chain wall.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalityReport {
    /// The interior chain index `i` used.
    pub index: usize,
    /// `4 c κ(‖x_i‖)`.
    pub bound: f64,
    /// Largest `d(z, x_i)` seen over the geodesics checked.
    pub max_distance: usize,
    /// A crossing vertex attaining `max_distance`.
    pub witness: Vertex,
    pub holds: bool,
    pub geodesics_checked: usize,
    pub total_geodesics: u128,
    pub exactness: Exactness,
    pub seed: Option<u64>,
}

impl CubeComplex {
    /// Re-checks an excursion chain and returns the least `c` it satisfies.
    ///
    /// Anchors must lie in the carriers of their walls; when a path is given, anchors
    /// with a path index must sit at that index with the next path vertex across
    /// the wall.
    pub fn verify_excursion(&self, chain: &ExcursionChain, path: Option<&DiscretePath>) -> Result<ExcursionVerdict> {
        let walls = chain.walls();
        if !self.is_chain(&walls)? {
            return Err(Error::Precondition("walls do not form a chain".into()));
        }
        for e in &chain.entries {
            if !self.carrier(e.wall).contains(e.anchor.index()) {
                return Err(Error::Precondition(format!(
                    "anchor `{}` is not on the carrier of `{}`",
                    self.vertex_name(e.anchor),
                    self.wall_name(e.wall)
                )));
            }
            if let (Some(path), Some(i)) = (path, e.path_index) {
                let here = path.get(i);
                let next = path.get(i + 1);
                let crosses = matches!((here, next), (Some(a), Some(b))
                    if a == e.anchor && self.side(e.wall, a) != self.side(e.wall, b));
                if !crosses {
                    return Err(Error::Precondition(format!(
                        "path does not cross `{}` from the anchor at index {i}",
                        self.wall_name(e.wall)
                    )));
                }
            }
        }
        let mut steps = Vec::with_capacity(walls.len() - 1);
        let mut exactness = Exactness::Exact;
        for pair in chain.entries.windows(2) {
            let degree = self.wall_wellsep_degree(pair[0].wall, pair[1].wall)?;
            exactness = exactness.and(degree.exactness);
            let gap = self.distance(pair[0].anchor, pair[1].anchor);
            let anchor_norm = self.norm(pair[0].anchor);
            let kappa = chain.kappa.at(anchor_norm);
            steps.push(ChainStep {
                gap,
                degree: degree.value,
                degree_exactness: degree.exactness,
                anchor_norm,
                kappa,
                ratio: gap.max(degree.value) as f64 / kappa,
            });
        }
        let (worst_step, minimal_c) = steps
            .iter()
            .enumerate()
            .fold((0, 0.0), |best, (i, s)| if s.ratio > best.1 { (i, s.ratio) } else { best });
        Ok(ExcursionVerdict {
            valid: minimal_c <= chain.c * (1.0 + EPS) + EPS,
            minimal_c,
            worst_step,
            steps,
            exactness,
        })
    }

    /// Builds a chain with anchors at the path's first crossing of each wall and
    /// `c` set to the minimal verified constant.
    pub fn chain_along_path(&self, path: &DiscretePath, walls: &[Wall], kappa: &SublinearFunction) -> Result<ExcursionChain> {
        let crossings = path.first_crossings(self);
        let entries = walls
            .iter()
            .map(|&w| {
                crossings
                    .iter()
                    .find(|fc| fc.wall == w)
                    .map(|&fc| ChainEntry::from(fc))
                    .ok_or_else(|| Error::Precondition(format!("path never crosses `{}`", self.wall_name(w))))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut chain = ExcursionChain { entries, c: f64::INFINITY, kappa: kappa.clone() };
        chain.c = self.verify_excursion(&chain, Some(path))?.minimal_c;
        Ok(chain)
    }

    /// Greedy chain search along a path from the basepoint.
    ///
    /// Walls are scanned in order of first crossing. A wall is appended when it does
    /// not cross the last chain wall, keeps the sequence a chain, and its
    /// well-separation degree from the last wall fits within the running constant
    /// (the running constant grows with the anchor gaps of accepted walls). The
    /// returned constant is an upper bound on the best achievable one.
    pub fn find_excursion_chain(&self, path: &DiscretePath, kappa: &SublinearFunction) -> Result<ExcursionSearch> {
        if !path.starts_at_basepoint() {
            return Err(Error::Precondition("path must start at the basepoint".into()));
        }
        let mut entries: Vec<FirstCrossing> = Vec::new();
        let mut running = 0.0f64;
        for fc in path.first_crossings(self) {
            let Some(&last) = entries.last() else {
                entries.push(fc);
                continue;
            };
            if self.walls_cross(last.wall, fc.wall) {
                continue;
            }
            if entries.len() >= 2 && !self.separates_walls(last.wall, entries[entries.len() - 2].wall, fc.wall) {
                continue;
            }
            let k = kappa.at(self.norm(last.anchor));
            let candidate = running.max(self.distance(last.anchor, fc.anchor) as f64 / k);
            let degree = self.wall_wellsep_degree(last.wall, fc.wall)?;
            if degree.value as f64 <= candidate * k + EPS {
                entries.push(fc);
                running = candidate;
            }
        }
        if entries.len() < 2 {
            return Ok(ExcursionSearch {
                chain: None,
                verdict: None,
                diagnostic: Some("no chain of two or more walls within the window".into()),
            });
        }
        let mut chain =
            ExcursionChain { entries: entries.into_iter().map(ChainEntry::from).collect(), c: f64::INFINITY, kappa: kappa.clone() };
        let verdict = self.verify_excursion(&chain, Some(path))?;
        chain.c = verdict.minimal_c;
        Ok(ExcursionSearch { chain: Some(chain), verdict: Some(verdict), diagnostic: None })
    }

    /// Minimal constant of a fixed chain restricted to the walls first crossed within
    /// each window (a prefix length of the path).
    pub fn excursion_trend(
        &self,
        path: &DiscretePath,
        walls: &[Wall],
        kappa: &SublinearFunction,
        windows: &[usize],
    ) -> Result<Vec<TrendPoint>> {
        let crossings = path.first_crossings(self);
        let mut out = Vec::new();
        for &window in windows {
            let inside: Vec<Wall> = walls
                .iter()
                .copied()
                .filter(|w| crossings.iter().any(|fc| fc.wall == *w && fc.index + 1 < window))
                .collect();
            let minimal_c = if inside.len() < 2 {
                0.0
            } else {
                self.chain_along_path(path, &inside, kappa)?.c
            };
            out.push(TrendPoint { window, chain_len: inside.len(), minimal_c });
        }
        Ok(out)
    }

    /// Vertices between two non-crossing walls: on the side of each facing the other.
    pub fn between_walls(&self, a: Wall, b: Wall) -> Result<VertexSet> {
        let (sa, sb) = match (self.side_of(a, b), self.side_of(b, a)) {
            (Some(sa), Some(sb)) => (sa, sb),
            _ => return Err(Error::WallsCross(self.wall_name(a).to_string(), self.wall_name(b).to_string())),
        };
        let mut set = self.half_space(a, sa);
        set.intersect_with(&self.half_space(b, sb));
        Ok(set)
    }

    /// Checks that geodesics from `x` to `y` cross `h_i` near its anchor, where `x` lies
    /// between `h_{i-2}` and `h_{i-1}` and `y` between `h_{i+1}` and `h_{i+2}`.
    ///
    /// The crossing point `z` is the geodesic vertex just before the crossing edge.
    /// All geodesics are checked when there are at most [`GEODESIC_CAP`], otherwise
    /// `samples` random ones drawn with `seed`.
    pub fn crossing_locality_check(
        &self,
        chain: &ExcursionChain,
        x: Vertex,
        y: Vertex,
        samples: usize,
        seed: u64,
    ) -> Result<LocalityReport> {
        let e = &chain.entries;
        let index = (2..e.len().saturating_sub(2))
            .find(|&i| {
                let left = self.between_walls(e[i - 2].wall, e[i - 1].wall);
                let right = self.between_walls(e[i + 1].wall, e[i + 2].wall);
                matches!((left, right), (Ok(l), Ok(r)) if l.contains(x.index()) && r.contains(y.index()))
            })
            .ok_or_else(|| Error::Precondition("x and y are not around an interior chain wall".into()))?;
        let wall = e[index].wall;
        let anchor = e[index].anchor;
        let bound = 4.0 * chain.c * chain.kappa.at(self.norm(anchor));
        let side_x: Side = self.side(wall, x);
        let mut max_distance = 0;
        let mut witness = anchor;
        let mut first = true;
        let visit = self.visit_geodesics(x, y, GEODESIC_CAP, samples, seed, |path| {
            let k = path
                .iter()
                .position(|&v| self.side(wall, v) != side_x)
                .expect("the wall separates x from y");
            let z = path[k - 1];
            let d = self.distance(z, anchor);
            if first || d > max_distance {
                max_distance = d;
                witness = z;
                first = false;
            }
        });
        let seed = (visit.exactness == Exactness::Sampled).then_some(seed);
        Ok(LocalityReport {
            index,
            bound,
            max_distance,
            witness,
            holds: max_distance as f64 <= bound + EPS,
            geodesics_checked: visit.visited,
            total_geodesics: visit.total,
            exactness: visit.exactness,
            seed,
        })
    }
}

/// True when the last window's constant is at least 1.5 times the constant at a
/// quarter of that window, the signature of a constant growing with the window
/// (square-root growth already doubles over a factor of four).
pub fn grows_with_window(points: &[TrendPoint]) -> bool {
    let Some(last) = points.last() else { return false };
    let half = points.iter().rfind(|p| 4 * p.window <= last.window + 3);
    match half {
        Some(h) if h.minimal_c > 0.0 => last.minimal_c >= 1.5 * h.minimal_c,
        _ => false,
    }
}
