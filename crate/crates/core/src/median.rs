//! Medians, intervals, convex hulls and gate projections.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::complex::{CubeComplex, Vertex, VertexSet, Wall, WallSet};
use crate::error::{Error, Result};

/// How a [`ConvexSubset`] came to be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Certificate {
    /// Convexity was checked (or the set was built as a hull).
    Verified,
    /// The caller asserted convexity without a check.
    Assumed,
}

/// A nonempty vertex set together with evidence that it is convex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexSubset {
    set: VertexSet,
    certificate: Certificate,
}

impl ConvexSubset {
    /// Wraps a set without checking it. Gates onto such a set are only available
    /// through [`CubeComplex::gate_assumed`].
    pub fn assumed(set: VertexSet) -> Self {
        ConvexSubset { set, certificate: Certificate::Assumed }
    }

    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn len(&self) -> usize {
        self.set.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_clear()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.set.contains(v.index())
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.set.ones().map(Vertex::from_index)
    }
}

/// Precomputed data for repeated gate projections onto one convex subset.
#[derive(Clone, Debug)]
pub struct Projector {
    /// Walls with vertices of the subset on both sides.
    crossing: WallSet,
    /// Walls whose plus side contains the whole subset.
    plus_all: WallSet,
}

impl Projector {
    /// Walls that cross the subset.
    pub fn crossing_walls(&self) -> &WallSet {
        &self.crossing
    }

    /// The gate of `x`: agrees with `x` on every wall crossing the subset and with the
    /// subset on every other wall.
    pub fn gate(&self, complex: &CubeComplex, x: Vertex) -> Vertex {
        let o = complex.orientation(x).as_slice();
        let target: Vec<usize> = o
            .iter()
            .zip(self.crossing.as_slice())
            .zip(self.plus_all.as_slice())
            .map(|((&bits, &cross), &plus)| (bits & cross) | plus)
            .collect();
        complex.vertex_at(&target).expect("gate orientation is realized in a median graph")
    }

    /// Walls separating `x` from the subset (equivalently from its gate).
    pub fn separating_walls(&self, complex: &CubeComplex, x: Vertex) -> Vec<Wall> {
        let g = self.gate(complex, x);
        complex.separating_walls(x, g)
    }
}

impl CubeComplex {
    /// The median of three vertices: the unique vertex on geodesics between each pair.
    pub fn median(&self, x: Vertex, y: Vertex, z: Vertex) -> Vertex {
        let (a, b, c) = (
            self.orientation(x).as_slice(),
            self.orientation(y).as_slice(),
            self.orientation(z).as_slice(),
        );
        let majority: Vec<usize> = (0..a.len()).map(|i| (a[i] & b[i]) | (b[i] & c[i]) | (a[i] & c[i])).collect();
        self.vertex_at(&majority).expect("validated complexes have all medians")
    }

    /// Vertices on some geodesic from `x` to `y`.
    pub fn interval(&self, x: Vertex, y: Vertex) -> VertexSet {
        let (ox, oy) = (self.orientation(x).as_slice(), self.orientation(y).as_slice());
        let mut set = self.empty_vertex_set();
        for v in self.vertices() {
            let ov = self.orientation(v).as_slice();
            if ov.iter().zip(ox).zip(oy).all(|((&v, &x), &y)| (v ^ x) & (v ^ y) == 0) {
                set.insert(v.index());
            }
        }
        set
    }

    /// One join step: the union of all intervals between points of `a`.
    pub fn join(&self, a: &VertexSet) -> Result<VertexSet> {
        if a.is_clear() {
            return Err(Error::EmptySet);
        }
        let mut result = a.clone();
        let mut visited = self.empty_vertex_set();
        let mut queue = VecDeque::new();
        for x in a.ones().map(Vertex::from_index) {
            // Everything reachable from `a` by steps that move closer to `x` is
            // exactly the union of the intervals [a_i, x].
            visited.clear();
            for s in a.ones() {
                visited.insert(s);
                queue.push_back(Vertex::from_index(s));
            }
            while let Some(u) = queue.pop_front() {
                for inc in self.neighbors(u) {
                    if !visited.contains(inc.to.index()) && self.side(inc.wall, u) != self.side(inc.wall, x) {
                        visited.insert(inc.to.index());
                        queue.push_back(inc.to);
                    }
                }
            }
            result.union_with(&visited);
        }
        Ok(result)
    }

    /// Convex hull by iterating [`CubeComplex::join`] until it stabilizes.
    pub fn hull_by_joins(&self, a: &VertexSet) -> Result<VertexSet> {
        let mut current = a.clone();
        loop {
            let next = self.join(&current)?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }

    /// Convex hull as the intersection of all half-spaces containing `a`.
    pub fn halfspace_hull(&self, a: &VertexSet) -> Result<VertexSet> {
        if a.is_clear() {
            return Err(Error::EmptySet);
        }
        let mut hull = self.full_vertex_set();
        for w in self.walls() {
            let plus = self.plus_side(w);
            if a.is_subset(plus) {
                hull.intersect_with(plus);
            } else if a.is_disjoint(plus) {
                hull.difference_with(plus);
            }
        }
        Ok(hull)
    }

    /// Convex hull of a nonempty set, certified convex.
    pub fn hull(&self, a: &VertexSet) -> Result<ConvexSubset> {
        let set = self.halfspace_hull(a)?;
        if cfg!(debug_assertions) {
            let size = a.count_ones(..);
            if size * size * self.vertex_count() <= 10_000_000 {
                debug_assert_eq!(set, self.hull_by_joins(a)?, "hull methods disagree");
            }
        }
        Ok(ConvexSubset { set, certificate: Certificate::Verified })
    }

    pub fn is_convex(&self, y: &VertexSet) -> bool {
        y.is_clear() || self.halfspace_hull(y).map(|h| &h == y).unwrap_or(false)
    }

    /// For a non-convex set, vertices `x, y` in the set and `z` outside it with `z`
    /// on a geodesic from `x` to `y`.
    pub fn convexity_witness(&self, y: &VertexSet) -> Option<(Vertex, Vertex, Vertex)> {
        if self.is_convex(y) {
            return None;
        }
        let start = Vertex::from_index(y.ones().next().expect("nonempty"));
        let reached = self.reach_within(start, y);
        if let Some(other) = y.difference(&reached).next().map(Vertex::from_index) {
            // No geodesic between different components can stay inside the set.
            let path = self.geodesic(start, other);
            let z = path.into_iter().find(|v| !y.contains(v.index())).expect("path leaves the set");
            return Some((start, other, z));
        }
        // Connected and locally convex implies convex, so a distance-two pair suffices.
        for x in y.ones().map(Vertex::from_index) {
            for inc in self.neighbors(x) {
                if y.contains(inc.to.index()) {
                    continue;
                }
                for far in self.neighbors(inc.to) {
                    if far.to != x && y.contains(far.to.index()) && self.distance(x, far.to) == 2 {
                        return Some((x, far.to, inc.to));
                    }
                }
            }
        }
        unreachable!("a connected, locally convex set is convex")
    }

    /// Checks convexity and attaches a certificate.
    pub fn certify(&self, y: VertexSet) -> Result<ConvexSubset> {
        if y.is_clear() {
            return Err(Error::EmptySet);
        }
        if let Some((a, b, c)) = self.convexity_witness(&y) {
            return Err(Error::NotConvex {
                x: self.vertex_name(a).to_string(),
                y: self.vertex_name(b).to_string(),
                z: self.vertex_name(c).to_string(),
            });
        }
        Ok(ConvexSubset { set: y, certificate: Certificate::Verified })
    }

    pub fn certify_names<S: AsRef<str>>(&self, names: &[S]) -> Result<ConvexSubset> {
        self.certify(self.vertex_set_from_names(names)?)
    }

    pub fn projector(&self, y: &ConvexSubset) -> Result<Projector> {
        if y.certificate != Certificate::Verified {
            return Err(Error::UnverifiedConvex);
        }
        Ok(self.projector_unchecked(y.set()))
    }

    fn projector_unchecked(&self, y: &VertexSet) -> Projector {
        let mut crossing = FixedBitSet::with_capacity(self.wall_count());
        let mut plus_all = FixedBitSet::with_capacity(self.wall_count());
        for w in self.walls() {
            let plus = self.plus_side(w);
            if y.is_subset(plus) {
                plus_all.insert(w.index());
            } else if !y.is_disjoint(plus) {
                crossing.insert(w.index());
            }
        }
        Projector { crossing, plus_all }
    }

    /// The nearest-point projection of `x` onto a verified convex subset.
    pub fn gate(&self, x: Vertex, y: &ConvexSubset) -> Result<Vertex> {
        if y.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(self.projector(y)?.gate(self, x))
    }

    /// Gate onto a subset whose convexity is taken on trust. The result is
    /// meaningless if the subset is not convex.
    pub fn gate_assumed(&self, x: Vertex, y: &ConvexSubset) -> Result<Vertex> {
        if y.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(self.projector_unchecked(y.set()).gate(self, x))
    }

    /// Vertices reachable from `start` inside `set`.
    pub fn reach_within(&self, start: Vertex, set: &VertexSet) -> VertexSet {
        let mut seen = self.empty_vertex_set();
        let mut queue = VecDeque::from([start]);
        seen.insert(start.index());
        while let Some(u) = queue.pop_front() {
            for inc in self.neighbors(u) {
                if set.contains(inc.to.index()) && !seen.contains(inc.to.index()) {
                    seen.insert(inc.to.index());
                    queue.push_back(inc.to);
                }
            }
        }
        seen
    }

    /// A geodesic from `x` to `y`, crossing at each step the separating wall of
    /// smallest index available.
    pub fn geodesic(&self, x: Vertex, y: Vertex) -> Vec<Vertex> {
        let mut path = vec![x];
        let mut current = x;
        while current != y {
            let step = self
                .neighbors(current)
                .iter()
                .filter(|inc| self.side(inc.wall, current) != self.side(inc.wall, y))
                .min_by_key(|inc| inc.wall)
                .expect("a separating wall is dual to an edge at every vertex short of the target");
            current = step.to;
            path.push(current);
        }
        path
    }

    /// Diameter of a vertex set in the combinatorial metric.
    pub fn diameter(&self, set: &VertexSet) -> usize {
        let members: Vec<Vertex> = set.ones().map(Vertex::from_index).collect();
        let mut best = 0;
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                best = best.max(self.distance(a, b));
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::gen_grid;

    #[test]
    fn median_of_grid_corners() {
        let g = gen_grid(3, 3).unwrap();
        let v = |n: &str| g.vertex(n).unwrap();
        assert_eq!(g.median(v("v00"), v("v22"), v("v20")), v("v20"));
        assert_eq!(g.median(v("v02"), v("v20"), v("v11")), v("v11"));
        assert_eq!(g.interval(v("v00"), v("v22")).count_ones(..), 9);
        assert_eq!(g.interval(v("v00"), v("v20")).count_ones(..), 3);
    }

    #[test]
    fn hull_of_two_points_is_a_box() {
        let g = gen_grid(5, 5).unwrap();
        let a = g.vertex_set_from_names(&["v11", "v32"]).unwrap();
        let hull = g.hull(&a).unwrap();
        assert_eq!(hull.len(), 6);
        assert_eq!(g.hull_by_joins(&a).unwrap(), *hull.set());
    }

    #[test]
    fn witness_for_disconnected_and_for_bent_sets() {
        let g = gen_grid(3, 3).unwrap();
        let apart = g.vertex_set_from_names(&["v00", "v02"]).unwrap();
        let (x, y, z) = g.convexity_witness(&apart).unwrap();
        assert!(g.interval(x, y).contains(z.index()) && !apart.contains(z.index()));
        let bent = g.vertex_set_from_names(&["v00", "v10", "v11"]).unwrap();
        let (x, y, z) = g.convexity_witness(&bent).unwrap();
        assert_eq!(g.vertex_name(z), "v01");
        assert!(bent.contains(x.index()) && bent.contains(y.index()));
        assert!(matches!(g.certify(bent), Err(Error::NotConvex { .. })));
    }

    #[test]
    fn gate_needs_a_verified_subset() {
        let g = gen_grid(4, 4).unwrap();
        let col = g.vertex_set_from_names(&["v00", "v01", "v02", "v03"]).unwrap();
        let x = g.vertex("v32").unwrap();
        assert!(matches!(g.gate(x, &ConvexSubset::assumed(col.clone())), Err(Error::UnverifiedConvex)));
        assert_eq!(g.gate_assumed(x, &ConvexSubset::assumed(col.clone())).unwrap(), g.vertex("v02").unwrap());
        let verified = g.certify(col).unwrap();
        assert_eq!(g.gate(x, &verified).unwrap(), g.vertex("v02").unwrap());
        assert!(matches!(g.certify(g.empty_vertex_set()), Err(Error::EmptySet)));
    }

    #[test]
    fn geodesic_has_length_equal_to_distance() {
        let g = gen_grid(4, 3).unwrap();
        let (x, y) = (g.vertex("v00").unwrap(), g.vertex("v32").unwrap());
        let path = g.geodesic(x, y);
        assert_eq!(path.len() - 1, g.distance(x, y));
    }
}
