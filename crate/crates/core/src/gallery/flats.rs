//! The spine of the Cayley square complex of `Z * Z² = ⟨a, b, c | [a, b]⟩` along the
//! ray `c a c a² c a³ ⋯ c aⁿ`.
//!
//! Flat `F_i` is a grid with local coordinates `(a, b)`; the ray enters it at the
//! origin through the wall `c{i}`, walks `i` steps along the `a` axis and leaves
//! through `c{i+1}`. Only the flats the ray visits are built.

use serde::Serialize;
use serde_json::Map;

use super::{insert_meta, names_value};
use crate::complex::{CubeComplex, EdgeList, Vertex, VertexSet, Wall};
use crate::error::{Error, Result};
use crate::median::ConvexSubset;
use crate::morse::{DiscretePath, SublinearFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct FlatExtent {
    a_min: i64,
    a_max: i64,
    b_min: i64,
    b_max: i64,
}

#[derive(Clone, Debug)]
pub struct TreeOfFlats {
    complex: CubeComplex,
    n: usize,
    a_margin: usize,
    b_margin: usize,
    /// Flat index and local coordinates of each vertex.
    coords: Vec<(usize, i64, i64)>,
    ray: Vec<Vertex>,
    c_walls: Vec<Wall>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CounterexampleRow {
    pub k: usize,
    /// Ray length up to the end of flat `k`: `k + k(k+1)/2`.
    pub t_k: usize,
    /// Diameter of the ray's projection to the `a` axis of flat `k`.
    pub flat_diameter: usize,
    /// Number of c-walls between the basepoint and the ray at `t_k`.
    pub contact_distance: usize,
    /// `flat_diameter / κ'(contact_distance)`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub n: usize,
    pub kappa: SublinearFunction,
    pub rows: Vec<CounterexampleRow>,
    /// Ratios increase strictly with `k`.
    pub ratio_increasing: bool,
    pub final_ratio: f64,
}

fn vertex_name(flat: usize, a: i64, b: i64) -> String {
    format!("F{flat}:{a},{b}")
}

impl TreeOfFlats {
    /// Flats `F_0..F_n`; flat `i` spans `a ∈ [-a_margin, i + a_margin]` and
    /// `b ∈ [-b_margin, b_margin]`.
    pub fn generate(n: usize, a_margin: usize, b_margin: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("the spine needs at least one flat after F0".into()));
        }
        let (am, bm) = (a_margin as i64, b_margin as i64);
        let extents: Vec<FlatExtent> = (0..=n)
            .map(|i| FlatExtent { a_min: -am, a_max: i as i64 + am, b_min: -bm, b_max: bm })
            .collect();
        let mut vertices = Vec::new();
        let mut coords = Vec::new();
        let mut edges = Vec::new();
        for (i, e) in extents.iter().enumerate() {
            for a in e.a_min..=e.a_max {
                for b in e.b_min..=e.b_max {
                    vertices.push(vertex_name(i, a, b));
                    coords.push((i, a, b));
                }
            }
            for a in e.a_min..e.a_max {
                for b in e.b_min..=e.b_max {
                    edges.push((vertex_name(i, a, b), vertex_name(i, a + 1, b), format!("F{i}:a{a}")));
                }
            }
            for b in e.b_min..e.b_max {
                for a in e.a_min..=e.a_max {
                    edges.push((vertex_name(i, a, b), vertex_name(i, a, b + 1), format!("F{i}:b{b}")));
                }
            }
            if i < n {
                edges.push((vertex_name(i, i as i64, 0), vertex_name(i + 1, 0, 0), format!("c{}", i + 1)));
            }
        }
        let graph = EdgeList::new(&vertices, edges, &vertex_name(0, 0, 0))?;
        let complex = CubeComplex::assemble(graph)?;

        let mut ray_names = vec![vertex_name(0, 0, 0)];
        for i in 1..=n {
            for a in 0..=i as i64 {
                ray_names.push(vertex_name(i, a, 0));
            }
        }
        let ray = ray_names.iter().map(|s| complex.vertex(s)).collect::<Result<Vec<_>>>()?;
        let c_names: Vec<String> = (1..=n).map(|i| format!("c{i}")).collect();
        let c_walls = c_names.iter().map(|s| complex.wall(s)).collect::<Result<Vec<_>>>()?;

        let mut meta = Map::new();
        meta.insert("truncation".into(), "spine-only: flats visited by the ray and the c-edges joining them".into());
        meta.insert("n".into(), n.into());
        meta.insert("a_margin".into(), a_margin.into());
        meta.insert("b_margin".into(), b_margin.into());
        insert_meta(&mut meta, "paths", "ray", names_value(ray_names.iter().map(String::as_str)));
        insert_meta(&mut meta, "chains", "c-walls", names_value(c_names.iter().map(String::as_str)));
        for i in 0..=n {
            let names = vertices.iter().zip(&coords).filter(|(_, c)| c.0 == i).map(|(s, _)| s.as_str());
            insert_meta(&mut meta, "sets", &format!("F{i}"), names_value(names));
        }
        Ok(TreeOfFlats { complex: complex.with_meta(meta), n, a_margin, b_margin, coords, ray, c_walls })
    }

    pub fn complex(&self) -> &CubeComplex {
        &self.complex
    }

    pub fn into_complex(self) -> CubeComplex {
        self.complex
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn margins(&self) -> (usize, usize) {
        (self.a_margin, self.b_margin)
    }

    /// The ray `h` as vertices `h(0), h(1), …, h(t_n)`.
    pub fn ray(&self) -> &[Vertex] {
        &self.ray
    }

    pub fn ray_path(&self) -> DiscretePath {
        DiscretePath::new(&self.complex, self.ray.clone()).expect("the ray is an edge path")
    }

    /// `t_k = k + k(k+1)/2`, the ray index at the end of flat `k`.
    pub fn milestone(k: usize) -> usize {
        k + k * (k + 1) / 2
    }

    pub fn c_walls(&self) -> &[Wall] {
        &self.c_walls
    }

    /// Flat index and local `(a, b)` coordinates of a vertex.
    pub fn locate(&self, v: Vertex) -> (usize, i64, i64) {
        self.coords[v.index()]
    }

    pub fn flat(&self, i: usize) -> Result<VertexSet> {
        if i > self.n {
            return Err(Error::InvalidParameter(format!("flat index {i} exceeds {}", self.n)));
        }
        Ok(self.complex.vertex_set(
            self.coords.iter().enumerate().filter(|(_, c)| c.0 == i).map(|(v, _)| Vertex::from_index(v)),
        ))
    }

    fn flat_subset(&self, i: usize) -> Result<ConvexSubset> {
        self.complex.certify(self.flat(i)?)
    }

    /// Number of c-walls separating `x` and `y`.
    pub fn contact_distance(&self, x: Vertex, y: Vertex) -> usize {
        self.c_walls.iter().filter(|&&w| self.complex.side(w, x) != self.complex.side(w, y)).count()
    }

    /// Local coordinates of the gate of `x` in flat `i`.
    pub fn flat_projection(&self, x: Vertex, i: usize) -> Result<(i64, i64)> {
        let flat = self.flat_subset(i)?;
        let g = self.complex.gate(x, &flat)?;
        let (_, a, b) = self.locate(g);
        Ok((a, b))
    }

    /// Spread of the projections of `set` to flat `i`, measured along the `a` axis.
    pub fn flat_projection_diam(&self, set: &[Vertex], i: usize) -> Result<usize> {
        let flat = self.flat_subset(i)?;
        let projector = self.complex.projector(&flat)?;
        let coords: Vec<i64> = set.iter().map(|&x| self.locate(projector.gate(&self.complex, x)).1).collect();
        match (coords.iter().min(), coords.iter().max()) {
            (Some(lo), Some(hi)) => Ok((hi - lo) as usize),
            _ => Ok(0),
        }
    }

    /// For each `k ≤ n`: the flat diameter of the ray in flat `k`, the contact
    /// distance to `h(t_k)`, and their ratio under `κ'`. Fails unless `κ'` validates.
    pub fn counterexample_report(&self, kappa: &SublinearFunction) -> Result<CounterexampleReport> {
        if self.n < 2 {
            return Err(Error::InvalidParameter("the report needs at least two flats".into()));
        }
        kappa.require_valid()?;
        let o = self.complex.basepoint();
        let mut rows = Vec::with_capacity(self.n);
        for k in 1..=self.n {
            let t_k = Self::milestone(k);
            let flat_diameter = self.flat_projection_diam(&self.ray, k)?;
            let contact_distance = self.contact_distance(o, self.ray[t_k]);
            rows.push(CounterexampleRow {
                k,
                t_k,
                flat_diameter,
                contact_distance,
                ratio: flat_diameter as f64 / kappa.at(contact_distance),
            });
        }
        let ratio_increasing = rows.windows(2).all(|w| w[1].ratio > w[0].ratio);
        let final_ratio = rows.last().map_or(0.0, |r| r.ratio);
        Ok(CounterexampleReport { n: self.n, kappa: kappa.clone(), rows, ratio_increasing, final_ratio })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ray_lengths() {
        for (n, t) in [(1, 2), (3, 9), (30, 495)] {
            assert_eq!(TreeOfFlats::milestone(n), t);
            if n <= 3 {
                let model = TreeOfFlats::generate(n, 2, 2).unwrap();
                assert_eq!(model.ray().len() - 1, t);
                let end = *model.ray().last().unwrap();
                assert_eq!(model.complex().distance(model.complex().basepoint(), end), t);
            }
        }
    }

    #[test]
    fn structure() {
        let m = TreeOfFlats::generate(3, 2, 2).unwrap();
        let c = m.complex();
        assert!(c.validate().passed());
        let c1 = c.hyperplane_named("c1").unwrap();
        assert_eq!(c1.minus_side, m.flat(0).unwrap());
        let o = c.basepoint();
        assert_eq!(m.flat_projection(o, 0).unwrap(), (0, 0));
        let end = *m.ray().last().unwrap();
        assert_eq!(m.flat_projection(end, 0).unwrap(), (0, 0));
        assert_eq!(m.contact_distance(o, end), 3);
        let f1 = c.vertex("F1:0,0").unwrap();
        let f3 = c.vertex("F3:0,0").unwrap();
        assert_eq!(m.contact_distance(f1, f3), 2);
        assert_eq!(m.flat_projection_diam(m.ray(), 3).unwrap(), 3);
        let f2 = c.vertex("F2:0,0").unwrap();
        let flat0 = c.certify(m.flat(0).unwrap()).unwrap();
        assert_eq!(c.vertex_name(c.gate(f2, &flat0).unwrap()), "F0:0,0");
    }

    #[test]
    fn report_needs_a_sublinear_gauge() {
        let m = TreeOfFlats::generate(10, 2, 2).unwrap();
        let r = m.counterexample_report(&SublinearFunction::sqrt()).unwrap();
        assert!(r.ratio_increasing);
        assert!(r.final_ratio >= 3.0);
        let ones = m.counterexample_report(&SublinearFunction::One).unwrap();
        assert!(ones.rows.iter().all(|row| row.ratio == row.k as f64));
        let linear = SublinearFunction::table(vec![(0.0, 1.0), (1.0, 2.0)]).unwrap();
        assert!(matches!(m.counterexample_report(&linear), Err(Error::InvalidKappa(_))));
    }
}
