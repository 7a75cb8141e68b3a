//! Enumeration and sampling of combinatorial geodesics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{CubeComplex, Vertex};
use crate::report::Exactness;

/// Default number of geodesics enumerated before switching to sampling.
pub const GEODESIC_CAP: u128 = 100_000;

/// Summary of a geodesic visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeodesicVisit {
    /// Number of geodesics between the endpoints (saturating).
    pub total: u128,
    pub visited: usize,
    pub exactness: Exactness,
}

impl CubeComplex {
    /// Neighbours of `u` one step closer to `y`.
    fn steps_toward(&self, u: Vertex, y: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.neighbors(u)
            .iter()
            .filter(move |inc| self.side(inc.wall, u) != self.side(inc.wall, y))
            .map(|inc| inc.to)
    }

    /// Number of geodesics from every vertex of `[x, y]` to `y`, indexed by vertex
    /// (zero outside the interval). Saturates at `u128::MAX`.
    fn geodesic_counts(&self, x: Vertex, y: Vertex) -> Vec<u128> {
        let interval = self.interval(x, y);
        let mut members: Vec<Vertex> = interval.ones().map(Vertex::from_index).collect();
        members.sort_by_key(|&v| self.distance(v, y));
        let mut count = vec![0u128; self.vertex_count()];
        for v in members {
            count[v.index()] = if v == y {
                1
            } else {
                self.steps_toward(v, y).fold(0u128, |acc, w| acc.saturating_add(count[w.index()]))
            };
        }
        count
    }

    pub fn count_geodesics(&self, x: Vertex, y: Vertex) -> u128 {
        self.geodesic_counts(x, y)[x.index()]
    }

    /// Calls `f` on every geodesic from `x` to `y` when there are at most `cap` of
    /// them, otherwise on `samples` geodesics drawn uniformly at random with `seed`.
    pub fn visit_geodesics(
        &self,
        x: Vertex,
        y: Vertex,
        cap: u128,
        samples: usize,
        seed: u64,
        mut f: impl FnMut(&[Vertex]),
    ) -> GeodesicVisit {
        let count = self.geodesic_counts(x, y);
        let total = count[x.index()];
        if total <= cap {
            let mut path = vec![x];
            let mut visited = 0;
            self.walk_all(y, &mut path, &mut visited, &mut f);
            return GeodesicVisit { total, visited, exactness: Exactness::Exact };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut path = Vec::new();
        for _ in 0..samples {
            path.clear();
            path.push(x);
            let mut u = x;
            while u != y {
                let options: Vec<Vertex> = self.steps_toward(u, y).collect();
                let weights: Vec<f64> = options.iter().map(|w| count[w.index()] as f64).collect();
                let mut pick = rng.random::<f64>() * weights.iter().sum::<f64>();
                let mut next = *options.last().expect("interval step exists");
                for (w, &weight) in options.iter().zip(&weights) {
                    if pick < weight {
                        next = *w;
                        break;
                    }
                    pick -= weight;
                }
                u = next;
                path.push(u);
            }
            f(&path);
        }
        GeodesicVisit { total, visited: samples, exactness: Exactness::Sampled }
    }

    fn walk_all(&self, y: Vertex, path: &mut Vec<Vertex>, visited: &mut usize, f: &mut impl FnMut(&[Vertex])) {
        let u = *path.last().expect("path starts nonempty");
        if u == y {
            *visited += 1;
            f(path);
            return;
        }
        let next: Vec<Vertex> = self.steps_toward(u, y).collect();
        for w in next {
            path.push(w);
            self.walk_all(y, path, visited, f);
            path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::gen_grid;

    fn binomial(n: u128, k: u128) -> u128 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn grid_geodesics_are_binomial() {
        let g = gen_grid(5, 4).unwrap();
        let (x, y) = (g.vertex("v00").unwrap(), g.vertex("v43").unwrap());
        assert_eq!(g.count_geodesics(x, y), binomial(7, 3));
        let mut seen = 0;
        let visit = g.visit_geodesics(x, y, GEODESIC_CAP, 0, 0, |p| {
            assert_eq!(p.len(), 8);
            seen += 1;
        });
        assert_eq!(visit.visited, 35);
        assert_eq!(seen, 35);
        assert_eq!(visit.exactness, Exactness::Exact);
    }

    #[test]
    fn sampling_kicks_in_above_the_cap() {
        let g = gen_grid(5, 5).unwrap();
        let (x, y) = (g.vertex("v00").unwrap(), g.vertex("v44").unwrap());
        let visit = g.visit_geodesics(x, y, 10, 25, 9, |p| {
            assert_eq!(p.len(), 9);
            assert!(p.windows(2).all(|w| g.distance(w[0], w[1]) == 1));
        });
        assert_eq!(visit.exactness, Exactness::Sampled);
        assert_eq!(visit.visited, 25);
        assert_eq!(visit.total, 70);
    }
}
