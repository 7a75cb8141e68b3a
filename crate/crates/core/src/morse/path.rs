use std::collections::HashSet;

use serde::Serialize;

use crate::complex::{CubeComplex, Vertex, Wall};
use crate::error::{Error, Result};

/// A finite edge path with its measured quasi-geodesic constants.
///
/// The multiplicative constant is fixed at `q = 1`; `big_q` is then the least `Q`
/// with `(j − i) − Q ≤ d(p_i, p_j)` over all index pairs. The upper inequality
/// `d(p_i, p_j) ≤ j − i` holds for every edge path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscretePath {
    vertices: Vec<Vertex>,
    big_q: usize,
    from_basepoint: bool,
}

/// Where a path first crosses a wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FirstCrossing {
    pub wall: Wall,
    /// The path vertex just before the crossing.
    pub anchor: Vertex,
    pub index: usize,
}

impl DiscretePath {
    pub fn new(complex: &CubeComplex, vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParameter("a path needs at least one vertex".into()));
        }
        if let Some(w) = vertices.windows(2).find(|w| complex.distance(w[0], w[1]) != 1) {
            return Err(Error::InvalidParameter(format!(
                "path vertices `{}` and `{}` are not adjacent",
                complex.vertex_name(w[0]),
                complex.vertex_name(w[1])
            )));
        }
        let mut big_q = 0;
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                big_q = big_q.max((j - i) - complex.distance(vertices[i], vertices[j]));
            }
        }
        let from_basepoint = vertices[0] == complex.basepoint();
        Ok(DiscretePath { vertices, big_q, from_basepoint })
    }

    pub fn from_names<S: AsRef<str>>(complex: &CubeComplex, names: &[S]) -> Result<Self> {
        let vertices = names.iter().map(|n| complex.vertex(n.as_ref())).collect::<Result<_>>()?;
        Self::new(complex, vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<Vertex> {
        self.vertices.get(i).copied()
    }

    /// Quasi-geodesic constants `(q, Q)`.
    pub fn constants(&self) -> (usize, usize) {
        (1, self.big_q)
    }

    pub fn is_geodesic(&self) -> bool {
        self.big_q == 0
    }

    pub fn starts_at_basepoint(&self) -> bool {
        self.from_basepoint
    }

    /// The first crossing of each wall, in path order.
    pub fn first_crossings(&self, complex: &CubeComplex) -> Vec<FirstCrossing> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (i, w) in self.vertices.windows(2).enumerate() {
            let wall = complex.separating_walls(w[0], w[1])[0];
            if seen.insert(wall) {
                out.push(FirstCrossing { wall, anchor: w[0], index: i });
            }
        }
        out
    }

    /// The prefix with the first `len` vertices.
    pub fn prefix(&self, complex: &CubeComplex, len: usize) -> Result<Self> {
        Self::new(complex, self.vertices[..len.min(self.vertices.len())].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::gen_grid;

    #[test]
    fn constants_of_a_detour() {
        let g = gen_grid(3, 3).unwrap();
        let straight = DiscretePath::from_names(&g, &["v00", "v10", "v20"]).unwrap();
        assert!(straight.is_geodesic());
        let back = DiscretePath::from_names(&g, &["v00", "v10", "v00", "v01"]).unwrap();
        assert_eq!(back.constants(), (1, 2));
        assert!(DiscretePath::from_names(&g, &["v00", "v11"]).is_err());
        let crossings = back.first_crossings(&g);
        assert_eq!(crossings.len(), 2);
        assert_eq!(g.vertex_name(crossings[1].anchor), "v00");
        assert_eq!(crossings[1].index, 2);
    }
}
