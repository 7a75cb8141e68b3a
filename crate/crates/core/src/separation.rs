//! Crossing, facing triples, chains, well-separation and gate-image duality.

use std::collections::HashSet;

use serde::Serialize;

use crate::complex::{CubeComplex, Side, VertexSet, Wall, WallSet};
use crate::error::{Error, Result};
use crate::median::ConvexSubset;
use crate::report::Exactness;

/// Above this many crossing walls the facing-triple-free search falls back to a greedy
/// lower bound.
pub const EXACT_SEARCH_LIMIT: usize = 20;

/// Well-separation degree together with whether it is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Degree {
    pub value: usize,
    pub exactness: Exactness,
}

/// Gate-image diameters of a pair of disjoint convex sets next to their degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenevoisReport {
    pub degree: usize,
    pub degree_exactness: Exactness,
    /// Diameter of the gate image of the second set in the first.
    pub diam_onto_first: usize,
    /// Diameter of the gate image of the first set in the second.
    pub diam_onto_second: usize,
    /// `degree == 0` exactly when both diameters are at most 1.
    pub zero_iff_diam_at_most_one: bool,
    /// `degree == 0` exactly when both images are single vertices.
    pub zero_iff_single_vertex: bool,
}

impl CubeComplex {
    /// Distinct walls cross when all four quadrants are nonempty.
    pub fn crosses(&self, a: Wall, b: Wall) -> bool {
        self.walls_cross(a, b)
    }

    /// The side of `a` containing wall `b`, if the two do not cross.
    ///
    /// The carrier of a wall that does not cross `a` lies entirely on one side of `a`.
    pub fn side_of(&self, a: Wall, b: Wall) -> Option<Side> {
        if a == b || self.walls_cross(a, b) {
            return None;
        }
        let v = self.carrier(b).ones().next().expect("every wall has a dual edge");
        Some(self.side(a, crate::complex::Vertex::from_index(v)))
    }

    /// Whether `w` separates walls `a` and `b`.
    pub fn separates_walls(&self, w: Wall, a: Wall, b: Wall) -> bool {
        match (self.side_of(w, a), self.side_of(w, b)) {
            (Some(sa), Some(sb)) => sa != sb,
            _ => false,
        }
    }

    /// Three pairwise non-crossing walls none of which separates the other two.
    pub fn is_facing_triple(&self, a: Wall, b: Wall, c: Wall) -> bool {
        if a == b || b == c || a == c {
            return false;
        }
        if self.walls_cross(a, b) || self.walls_cross(b, c) || self.walls_cross(a, c) {
            return false;
        }
        !self.separates_walls(a, b, c) && !self.separates_walls(b, a, c) && !self.separates_walls(c, a, b)
    }

    /// Whether every interior wall of the sequence separates its two neighbours.
    pub fn is_chain(&self, walls: &[Wall]) -> Result<bool> {
        if walls.len() < 2 {
            return Err(Error::InvalidParameter("a chain needs at least two walls".into()));
        }
        let mut seen = HashSet::new();
        for &w in walls {
            if !seen.insert(w) {
                return Err(Error::InvalidParameter(format!("wall `{}` repeats", self.wall_name(w))));
            }
        }
        if walls.len() == 2 {
            return Ok(!self.walls_cross(walls[0], walls[1]));
        }
        Ok(walls.windows(3).all(|t| self.separates_walls(t[1], t[0], t[2])))
    }

    /// Walls with vertices of `y` on both sides.
    pub fn crossing_walls(&self, y: &VertexSet) -> WallSet {
        let mut out = WallSet::with_capacity(self.wall_count());
        for w in self.walls() {
            let plus = self.plus_side(w);
            if !y.is_subset(plus) && !y.is_disjoint(plus) {
                out.insert(w.index());
            }
        }
        out
    }

    /// Walls crossing both of two disjoint convex sets.
    pub fn walls_crossing_both(&self, y1: &ConvexSubset, y2: &ConvexSubset) -> Result<Vec<Wall>> {
        if !y1.set().is_disjoint(y2.set()) {
            return Err(Error::NotDisjoint("the two convex sets share a vertex".into()));
        }
        Ok(self.walls_crossing_both_unchecked(y1.set(), y2.set()))
    }

    fn walls_crossing_both_unchecked(&self, y1: &VertexSet, y2: &VertexSet) -> Vec<Wall> {
        let mut both = self.crossing_walls(y1);
        both.intersect_with(&self.crossing_walls(y2));
        both.ones().map(Wall::from_index).collect()
    }

    /// Size of the largest subfamily of `walls` containing no facing triple.
    ///
    /// Exact by branch and bound up to [`EXACT_SEARCH_LIMIT`] candidates; a greedy
    /// lower bound beyond.
    pub fn max_facing_free(&self, walls: &[Wall]) -> Degree {
        let k = walls.len();
        let mut triples: Vec<(usize, usize, usize)> = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    if self.is_facing_triple(walls[a], walls[b], walls[c]) {
                        triples.push((a, b, c));
                    }
                }
            }
        }
        if triples.is_empty() {
            return Degree { value: k, exactness: Exactness::Exact };
        }
        // facing[c] lists pairs (a, b), a < b < c, completing a facing triple with c.
        let mut facing = vec![Vec::new(); k];
        for &(a, b, c) in &triples {
            facing[c].push((a, b));
        }
        if k > EXACT_SEARCH_LIMIT {
            let mut chosen = vec![false; k];
            let mut size = 0;
            for c in 0..k {
                if facing[c].iter().all(|&(a, b)| !(chosen[a] && chosen[b])) {
                    chosen[c] = true;
                    size += 1;
                }
            }
            return Degree { value: size, exactness: Exactness::LowerBound };
        }
        let mut chosen = vec![false; k];
        let mut best = 0;
        branch(&facing, 0, 0, &mut chosen, &mut best);
        Degree { value: best, exactness: Exactness::Exact }
    }

    /// Well-separation degree of two disjoint convex sets: the largest facing-triple-free
    /// family of walls crossing both.
    pub fn wellsep_degree(&self, y1: &ConvexSubset, y2: &ConvexSubset) -> Result<Degree> {
        let walls = self.walls_crossing_both(y1, y2)?;
        Ok(self.max_facing_free(&walls))
    }

    /// Well-separation degree of two non-crossing walls, measured on their carriers.
    ///
    /// Carriers of distinct non-crossing walls may share vertices (consecutive edges
    /// of a tree); the degree is still defined since it only asks which walls cross
    /// both carriers.
    pub fn wall_wellsep_degree(&self, a: Wall, b: Wall) -> Result<Degree> {
        if a == b {
            return Err(Error::InvalidParameter("walls must be distinct".into()));
        }
        if self.walls_cross(a, b) {
            return Err(Error::WallsCross(self.wall_name(a).to_string(), self.wall_name(b).to_string()));
        }
        let walls = self.walls_crossing_both_unchecked(self.carrier(a), self.carrier(b));
        Ok(self.max_facing_free(&walls))
    }

    /// Gates of every vertex of `a` onto `y`.
    pub fn gate_image(&self, a: &VertexSet, y: &ConvexSubset) -> Result<VertexSet> {
        let projector = self.projector(y)?;
        let mut image = self.empty_vertex_set();
        for v in a.ones() {
            image.insert(projector.gate(self, crate::complex::Vertex::from_index(v)).index());
        }
        Ok(image)
    }

    /// Diameter of the gate image of `y2` in `y1`.
    pub fn gate_diameter(&self, y1: &ConvexSubset, y2: &ConvexSubset) -> Result<usize> {
        Ok(self.diameter(&self.gate_image(y2.set(), y1)?))
    }

    pub fn genevois_pair_report(&self, y1: &ConvexSubset, y2: &ConvexSubset) -> Result<GenevoisReport> {
        let degree = self.wellsep_degree(y1, y2)?;
        let d1 = self.gate_diameter(y1, y2)?;
        let d2 = self.gate_diameter(y2, y1)?;
        Ok(GenevoisReport {
            degree: degree.value,
            degree_exactness: degree.exactness,
            diam_onto_first: d1,
            diam_onto_second: d2,
            zero_iff_diam_at_most_one: (degree.value == 0) == (d1 <= 1 && d2 <= 1),
            zero_iff_single_vertex: (degree.value == 0) == (d1 == 0 && d2 == 0),
        })
    }

    /// Carrier of a wall as a verified convex subset.
    pub fn carrier_subset(&self, w: Wall) -> ConvexSubset {
        self.hull(self.carrier(w)).expect("carriers are nonempty")
    }
}

fn branch(facing: &[Vec<(usize, usize)>], next: usize, size: usize, chosen: &mut [bool], best: &mut usize) {
    if size > *best {
        *best = size;
    }
    if next == chosen.len() || size + (chosen.len() - next) <= *best {
        return;
    }
    if facing[next].iter().all(|&(a, b)| !(chosen[a] && chosen[b])) {
        chosen[next] = true;
        branch(facing, next + 1, size + 1, chosen, best);
        chosen[next] = false;
    }
    branch(facing, next + 1, size, chosen, best);
}
