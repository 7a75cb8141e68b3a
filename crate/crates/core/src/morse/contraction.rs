//! Contraction profiles, κ-neighbourhood gauges and divergence checks.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::kappa::SublinearFunction;
use super::path::DiscretePath;
use crate::complex::{CubeComplex, Side, Vertex, VertexSet, Wall};
use crate::error::{Error, Result};
use crate::median::ConvexSubset;
use crate::report::Exactness;

/// Which pairs a contraction profile looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SampleSpec {
    Exhaustive,
    /// `pairs` draws of a uniform `x` and a uniform `y` in its admissible ball.
    Sampled { pairs: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileWindow {
    /// Only `x` with `‖x‖ ≤ radius` count toward this window.
    pub radius: usize,
    pub max_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractionProfile {
    /// Largest `d(P(x), P(y)) / κ(‖x‖)` over admissible pairs.
    pub max_ratio: f64,
    /// The pair attaining `max_ratio`, smallest indices first on ties.
    pub witness: Option<(Vertex, Vertex)>,
    pub pairs_checked: usize,
    pub windows: Vec<ProfileWindow>,
    pub exactness: Exactness,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivergenceReport {
    pub degree: usize,
    pub holds: bool,
    /// Smallest `d(q(t), q'(t)) − d(q(t), q(t0)) + L` over checked `t`.
    pub min_slack: i64,
    pub checked: usize,
    /// A `t` with negative slack, if any.
    pub witness: Option<usize>,
}

impl CubeComplex {
    /// Measures how far balls avoiding `y` spread under the gate map.
    ///
    /// Admissible pairs are `(x, x')` with `d(x, x') ≤ d(x, y)`; the ratio is
    /// `d(P(x), P(x')) / κ(‖x‖)`. Windows report the maximum over `x` with
    /// `‖x‖ ≤ R` for doubling `R`.
    pub fn contraction_profile(
        &self,
        y: &ConvexSubset,
        kappa: &SublinearFunction,
        spec: SampleSpec,
    ) -> Result<ContractionProfile> {
        let projector = self.projector(y)?;
        let n = self.vertex_count();
        let gates: Vec<Vertex> = (0..n).into_par_iter().map(|x| projector.gate(self, Vertex::from_index(x))).collect();
        let reach: Vec<usize> = (0..n).map(|x| self.distance(Vertex::from_index(x), gates[x])).collect();
        let ratio = |x: usize, z: usize| {
            self.distance(gates[x], gates[z]) as f64 / kappa.at(self.norm(Vertex::from_index(x)))
        };

        // Best (ratio, partner) per x; ties keep the smallest partner.
        let mut best: Vec<Option<(f64, usize)>> = vec![None; n];
        let (pairs_checked, exactness, seed) = match spec {
            SampleSpec::Exhaustive => {
                let per_x: Vec<(Option<(f64, usize)>, usize)> = (0..n)
                    .into_par_iter()
                    .map(|x| {
                        let vx = Vertex::from_index(x);
                        let mut top: Option<(f64, usize)> = None;
                        let mut count = 0;
                        for z in 0..n {
                            if self.distance(vx, Vertex::from_index(z)) <= reach[x] {
                                count += 1;
                                let r = ratio(x, z);
                                if top.is_none_or(|(b, _)| r > b) {
                                    top = Some((r, z));
                                }
                            }
                        }
                        (top, count)
                    })
                    .collect();
                let mut total = 0;
                for (x, (top, count)) in per_x.into_iter().enumerate() {
                    best[x] = top;
                    total += count;
                }
                (total, Exactness::Exact, None)
            }
            SampleSpec::Sampled { pairs, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..pairs {
                    let x = rng.random_range(0..n);
                    let ball = self.ball(Vertex::from_index(x), reach[x]);
                    let z = ball[rng.random_range(0..ball.len())].index();
                    let r = ratio(x, z);
                    let replace = match best[x] {
                        None => true,
                        Some((b, bz)) => r > b || (r == b && z < bz),
                    };
                    if replace {
                        best[x] = Some((r, z));
                    }
                }
                (pairs, Exactness::Sampled, Some(seed))
            }
        };

        let mut max_ratio = 0.0;
        let mut witness = None;
        for (x, entry) in best.iter().enumerate() {
            if let Some((r, z)) = *entry {
                if witness.is_none() || r > max_ratio {
                    max_ratio = r;
                    witness = Some((Vertex::from_index(x), Vertex::from_index(z)));
                }
            }
        }
        let max_norm = self.vertices().map(|v| self.norm(v)).max().unwrap_or(0);
        let mut windows = Vec::new();
        let mut radius = 1;
        loop {
            let radius_now = radius.min(max_norm);
            let window_max = best
                .iter()
                .enumerate()
                .filter(|(x, _)| self.norm(Vertex::from_index(*x)) <= radius_now)
                .filter_map(|(_, e)| e.map(|(r, _)| r))
                .fold(0.0, f64::max);
            windows.push(ProfileWindow { radius: radius_now, max_ratio: window_max });
            if radius >= max_norm {
                break;
            }
            radius *= 2;
        }
        Ok(ContractionProfile { max_ratio, witness, pairs_checked, windows, exactness, seed })
    }

    /// Vertices within distance `r` of `x`, in breadth-first order.
    pub fn ball(&self, x: Vertex, r: usize) -> Vec<Vertex> {
        let mut seen = self.empty_vertex_set();
        let mut out = vec![x];
        let mut queue = VecDeque::from([(x, 0)]);
        seen.insert(x.index());
        while let Some((u, d)) = queue.pop_front() {
            if d == r {
                continue;
            }
            for inc in self.neighbors(u) {
                if !seen.contains(inc.to.index()) {
                    seen.insert(inc.to.index());
                    out.push(inc.to);
                    queue.push_back((inc.to, d + 1));
                }
            }
        }
        out
    }

    /// The least `n` with every path vertex `p` satisfying `d(p, z) ≤ n κ(‖p‖)`.
    pub fn kappa_gauge(&self, z: &VertexSet, path: &DiscretePath, kappa: &SublinearFunction) -> Result<f64> {
        if z.is_clear() {
            return Err(Error::EmptySet);
        }
        let dist = self.distances_to_set(z);
        Ok(path
            .vertices()
            .iter()
            .map(|&p| dist[p.index()] as f64 / kappa.at(self.norm(p)))
            .fold(0.0, f64::max))
    }

    /// Checks `d(q(t), q'(t)) ≥ d(q(t), q(t0)) − L` for every `t ≥ t0` covered by both
    /// paths, after confirming the walls are non-crossing with degree at most `l`,
    /// `q(t) ∈ w2⁺` for `t ≥ t0` and `q' ⊆ w1⁻`.
    #[allow(clippy::too_many_arguments)]
    pub fn divergence_check(
        &self,
        q: &DiscretePath,
        q_prime: &DiscretePath,
        w1: Wall,
        w2: Wall,
        t0: usize,
        l: usize,
    ) -> Result<DivergenceReport> {
        let degree = self.wall_wellsep_degree(w1, w2)?.value;
        if degree > l {
            return Err(Error::Precondition(format!(
                "`{}` and `{}` have degree {degree}, more than L = {l}",
                self.wall_name(w1),
                self.wall_name(w2)
            )));
        }
        if t0 >= q.len() {
            return Err(Error::Precondition("t0 is beyond the end of q".into()));
        }
        if let Some(t) = (t0..q.len()).find(|&t| self.side(w2, q.vertices()[t]) != Side::Plus) {
            return Err(Error::Precondition(format!("q({t}) is not on the plus side of `{}`", self.wall_name(w2))));
        }
        if let Some(t) = (0..q_prime.len()).find(|&t| self.side(w1, q_prime.vertices()[t]) != Side::Minus) {
            return Err(Error::Precondition(format!("q'({t}) is not on the minus side of `{}`", self.wall_name(w1))));
        }
        let base = q.vertices()[t0];
        let end = q.len().min(q_prime.len());
        let mut min_slack = i64::MAX;
        let mut witness = None;
        let mut checked = 0;
        for t in t0..end {
            let (a, b) = (q.vertices()[t], q_prime.vertices()[t]);
            let slack = self.distance(a, b) as i64 - self.distance(a, base) as i64 + l as i64;
            checked += 1;
            if slack < min_slack {
                min_slack = slack;
            }
            if slack < 0 && witness.is_none() {
                witness = Some(t);
            }
        }
        Ok(DivergenceReport { degree, holds: witness.is_none(), min_slack, checked, witness })
    }

    /// `diam(h⁻ ∩ k⁻ ∩ H)`, zero when the intersection is empty.
    pub fn corridor_diameter(&self, hull: &VertexSet, h: Wall, k: Wall) -> usize {
        let mut set = hull.clone();
        set.difference_with(self.plus_side(h));
        set.difference_with(self.plus_side(k));
        self.diameter(&set)
    }
}
