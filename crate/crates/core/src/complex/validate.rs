//! Structural validation of a labeled graph as a wall-labeled median graph.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{orientation_vectors, EdgeList, Vertex, Wall};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Up to this many vertices every triple is checked for a unique median.
    pub median_vertex_cap: usize,
    /// Number of random triples checked above the cap.
    pub sampled_triples: usize,
    pub seed: u64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions { median_vertex_cap: 2000, sampled_triples: 200_000, seed: 0x5eed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Connected,
    DistinctLabelsAtVertex,
    WallSplitsInTwo,
    ConvexSides,
    MedianTriples,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Unreachable { vertex: String },
    RepeatedLabel { vertex: String, wall: String },
    WallComponents { wall: String, components: usize },
    /// `x` and `y` lie on one side of `wall`, `z` on the other, and `z` is on a geodesic from `x` to `y`.
    NonConvexSide { wall: String, x: String, y: String, z: String },
    NonMedianTriple { x: String, y: String, z: String, medians: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    ProbabilisticPass { triples: usize, seed: u64 },
    Fail { witness: Witness },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub invariant: Invariant,
    #[serde(flatten)]
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub vertex_count: usize,
    pub wall_count: usize,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    /// True when no check failed or was skipped.
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::ProbabilisticPass { .. }))
    }

    pub fn status(&self, invariant: Invariant) -> Option<&CheckStatus> {
        self.checks.iter().find(|c| c.invariant == invariant).map(|c| &c.status)
    }

    pub fn first_failure(&self) -> Option<(&Invariant, &Witness)> {
        self.checks.iter().find_map(|c| match &c.status {
            CheckStatus::Fail { witness } => Some((&c.invariant, witness)),
            _ => None,
        })
    }

    pub(crate) fn single_failure(graph: &EdgeList, invariant: Invariant, witness: Witness) -> Self {
        ValidationReport {
            vertex_count: graph.vertex_count(),
            wall_count: graph.wall_count(),
            checks: vec![Check { invariant, status: CheckStatus::Fail { witness } }],
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Unreachable { vertex } => write!(f, "vertex `{vertex}` is unreachable from the basepoint"),
            Witness::RepeatedLabel { vertex, wall } => {
                write!(f, "two edges at `{vertex}` carry label `{wall}`")
            }
            Witness::WallComponents { wall, components } => write!(
                f,
                "removing the edges of wall `{wall}` leaves {components} component(s) or an edge inside one side"
            ),
            Witness::NonConvexSide { wall, x, y, z } => write!(
                f,
                "side of wall `{wall}` is not convex: `{z}` lies on a geodesic from `{x}` to `{y}`"
            ),
            Witness::NonMedianTriple { x, y, z, medians } => {
                write!(f, "triple ({x}, {y}, {z}) has {medians} medians")
            }
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_failure() {
            Some((invariant, witness)) => write!(f, "{invariant:?} failed: {witness}"),
            None if self.passed() => write!(f, "all checks passed"),
            None => write!(f, "some checks were skipped"),
        }
    }
}

/// Largest graph for which medians are counted from all-pairs distances (quartic time).
const BRUTE_FORCE_CAP: usize = 120;

/// Checks every invariant a wall-labeled median graph must satisfy.
///
/// Later checks are skipped when an earlier one they depend on fails. The median
/// check runs on every triple up to `median_vertex_cap` vertices and on seeded random
/// triples above it, which is reported as a probabilistic pass.
pub fn validate_edge_list(graph: &EdgeList, options: &ValidationOptions) -> ValidationReport {
    let n = graph.vertex_count();
    let mut checks = Vec::new();
    let skip = |reason: &str| CheckStatus::Skipped { reason: reason.to_string() };

    let from_base = graph.bfs_distances(graph.basepoint());
    let connected = match from_base.iter().position(|&d| d == u32::MAX) {
        Some(v) => CheckStatus::Fail {
            witness: Witness::Unreachable {
                vertex: graph.vertex_name(Vertex::from_index(v)).to_string(),
            },
        },
        None => CheckStatus::Pass,
    };
    let is_connected = connected == CheckStatus::Pass;
    checks.push(Check { invariant: Invariant::Connected, status: connected });

    let labels = repeated_label(graph).map_or(CheckStatus::Pass, |witness| CheckStatus::Fail { witness });
    let labels_ok = labels == CheckStatus::Pass;
    checks.push(Check { invariant: Invariant::DistinctLabelsAtVertex, status: labels });

    let mut plus = Vec::with_capacity(graph.wall_count());
    let split = if !is_connected {
        skip("graph is disconnected")
    } else {
        let mut status = CheckStatus::Pass;
        for w in 0..graph.wall_count() {
            match graph.wall_split(Wall::from_index(w)) {
                Ok(side) => plus.push(side),
                Err(failure) => {
                    status = CheckStatus::Fail {
                        witness: Witness::WallComponents {
                            wall: graph.wall_name(Wall::from_index(w)).to_string(),
                            components: failure.components,
                        },
                    };
                    break;
                }
            }
        }
        status
    };
    let split_ok = split == CheckStatus::Pass;
    checks.push(Check { invariant: Invariant::WallSplitsInTwo, status: split });

    let walls_ok = is_connected && labels_ok && split_ok;
    let orientation = walls_ok.then(|| orientation_vectors(&plus, n));
    let convex = match &orientation {
        None => skip("wall structure is invalid"),
        Some(orientation) => {
            non_convex_side(graph, orientation).map_or(CheckStatus::Pass, |witness| CheckStatus::Fail { witness })
        }
    };
    let convex_ok = convex == CheckStatus::Pass;
    checks.push(Check { invariant: Invariant::ConvexSides, status: convex });

    let median = if !is_connected {
        skip("graph is disconnected")
    } else if convex_ok {
        median_by_majority(graph, orientation.as_ref().expect("walls valid"), options)
    } else if n <= BRUTE_FORCE_CAP {
        median_by_distances(graph)
    } else {
        skip("walls are invalid and the graph is too large for an all-pairs median check")
    };
    checks.push(Check { invariant: Invariant::MedianTriples, status: median });

    ValidationReport { vertex_count: n, wall_count: graph.wall_count(), checks }
}

fn repeated_label(graph: &EdgeList) -> Option<Witness> {
    let mut seen = HashSet::new();
    for v in 0..graph.vertex_count() {
        seen.clear();
        let v = Vertex::from_index(v);
        for inc in graph.neighbors(v) {
            if !seen.insert(inc.wall) {
                return Some(Witness::RepeatedLabel {
                    vertex: graph.vertex_name(v).to_string(),
                    wall: graph.wall_name(inc.wall).to_string(),
                });
            }
        }
    }
    None
}

/// Compares graph distance with the number of separating walls from every source.
/// A mismatch means some geodesic crosses a wall twice, which exhibits a non-convex side.
fn non_convex_side(graph: &EdgeList, orientation: &[FixedBitSet]) -> Option<Witness> {
    let n = graph.vertex_count();
    (0..n).into_par_iter().find_map_first(|s| {
        let (dist, parent) = bfs_tree(graph, Vertex::from_index(s));
        let bad = (0..n).find(|&v| dist[v] as usize != orientation[s].symmetric_difference_count(&orientation[v]))?;
        let mut path = vec![Vertex::from_index(bad)];
        while let Some((p, _)) = parent[path.last().unwrap().index()] {
            path.push(p);
        }
        path.reverse();
        let mut first_crossing: HashMap<Wall, usize> = HashMap::new();
        for i in 0..path.len() - 1 {
            let wall = parent[path[i + 1].index()].expect("not the root").1;
            if let Some(&j) = first_crossing.get(&wall) {
                return Some(Witness::NonConvexSide {
                    wall: graph.wall_name(wall).to_string(),
                    x: graph.vertex_name(path[j]).to_string(),
                    y: graph.vertex_name(path[i + 1]).to_string(),
                    z: graph.vertex_name(path[j + 1]).to_string(),
                });
            }
            first_crossing.insert(wall, i);
        }
        unreachable!("a geodesic that crosses no wall twice has length equal to the wall count")
    })
}

fn bfs_tree(graph: &EdgeList, source: Vertex) -> (Vec<u32>, Vec<Option<(Vertex, Wall)>>) {
    let n = graph.vertex_count();
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![None; n];
    let mut queue = std::collections::VecDeque::new();
    dist[source.index()] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for inc in graph.neighbors(u) {
            if dist[inc.to.index()] == u32::MAX {
                dist[inc.to.index()] = dist[u.index()] + 1;
                parent[inc.to.index()] = Some((u, inc.wall));
                queue.push_back(inc.to);
            }
        }
    }
    (dist, parent)
}

/// With convex sides, the only median candidate of a triple is the vertex whose
/// orientation is the coordinatewise majority, so a triple fails exactly when that
/// vertex is missing.
fn median_by_majority(graph: &EdgeList, orientation: &[FixedBitSet], options: &ValidationOptions) -> CheckStatus {
    let n = graph.vertex_count();
    let position: HashSet<&[usize]> = orientation.iter().map(|o| o.as_slice()).collect();
    let blocks = orientation.first().map_or(0, |o| o.as_slice().len());
    let has_median = |x: usize, y: usize, z: usize, buf: &mut Vec<usize>| {
        buf.clear();
        let (a, b, c) = (orientation[x].as_slice(), orientation[y].as_slice(), orientation[z].as_slice());
        buf.extend((0..blocks).map(|i| (a[i] & b[i]) | (b[i] & c[i]) | (a[i] & c[i])));
        position.contains(buf.as_slice())
    };
    let fail = |x: usize, y: usize, z: usize| {
        let name = |v: usize| graph.vertex_name(Vertex::from_index(v)).to_string();
        CheckStatus::Fail { witness: Witness::NonMedianTriple { x: name(x), y: name(y), z: name(z), medians: 0 } }
    };
    if n <= options.median_vertex_cap {
        let found = (0..n).into_par_iter().find_map_first(|x| {
            let mut buf = Vec::with_capacity(blocks);
            for y in x + 1..n {
                for z in y + 1..n {
                    if !has_median(x, y, z, &mut buf) {
                        return Some((x, y, z));
                    }
                }
            }
            None
        });
        match found {
            Some((x, y, z)) => fail(x, y, z),
            None => CheckStatus::Pass,
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let mut buf = Vec::with_capacity(blocks);
        for _ in 0..options.sampled_triples {
            let (x, y, z) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            if !has_median(x, y, z, &mut buf) {
                return fail(x, y, z);
            }
        }
        CheckStatus::ProbabilisticPass { triples: options.sampled_triples, seed: options.seed }
    }
}

/// Median count from all-pairs distances; used when walls do not give coordinates.
fn median_by_distances(graph: &EdgeList) -> CheckStatus {
    let n = graph.vertex_count();
    let dist: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|s| graph.bfs_distances(Vertex::from_index(s)))
        .collect();
    let found = (0..n).into_par_iter().find_map_first(|x| {
        for y in x + 1..n {
            for z in y + 1..n {
                let medians = (0..n)
                    .filter(|&v| {
                        dist[x][v] + dist[v][y] == dist[x][y]
                            && dist[y][v] + dist[v][z] == dist[y][z]
                            && dist[x][v] + dist[v][z] == dist[x][z]
                    })
                    .count();
                if medians != 1 {
                    return Some((x, y, z, medians));
                }
            }
        }
        None
    });
    match found {
        None => CheckStatus::Pass,
        Some((x, y, z, medians)) => {
            let name = |v: usize| graph.vertex_name(Vertex::from_index(v)).to_string();
            CheckStatus::Fail { witness: Witness::NonMedianTriple { x: name(x), y: name(y), z: name(z), medians } }
        }
    }
}
