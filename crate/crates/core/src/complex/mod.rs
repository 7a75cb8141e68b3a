//! Finite CAT(0) cube complexes stored as wall-labeled median graphs.

mod io;
mod pocset;
mod validate;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub use pocset::{random_pocset, realize_pocset, HalfSpaceSystem, Token};
pub use validate::{
    validate_edge_list, Check, CheckStatus, Invariant, ValidationOptions, ValidationReport, Witness,
};

/// A set of vertices, indexed by [`Vertex::index`].
pub type VertexSet = FixedBitSet;
/// A set of walls, indexed by [`Wall::index`].
pub type WallSet = FixedBitSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex(u32);

impl Vertex {
    pub fn from_index(index: usize) -> Self {
        Vertex(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Wall(u32);

impl Wall {
    pub fn from_index(index: usize) -> Self {
        Wall(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The two half-spaces of a wall. `Minus` always contains the basepoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub wall: Wall,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub to: Vertex,
    pub wall: Wall,
    pub edge: usize,
}

/// A labeled graph exactly as supplied, before any cube-complex invariant is checked.
///
/// Wall indices follow the order in which labels first appear in the edge list, so
/// a complex and its JSON round trip agree on every index.
#[derive(Clone, Debug)]
pub struct EdgeList {
    vertex_names: Vec<String>,
    vertex_lookup: HashMap<String, Vertex>,
    wall_names: Vec<String>,
    wall_lookup: HashMap<String, Wall>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<Incidence>>,
    basepoint: Vertex,
}

/// Why removing the dual edges of a wall fails to cut the graph into two halves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct SplitFailure {
    pub components: usize,
}

impl EdgeList {
    pub fn new<V, E>(
        vertices: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = (E, E, E)>,
        basepoint: &str,
    ) -> Result<Self>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let mut vertex_names = Vec::new();
        let mut vertex_lookup = HashMap::new();
        for name in vertices {
            let name = name.as_ref().to_string();
            if vertex_lookup.contains_key(&name) {
                return Err(Error::DuplicateVertex(name));
            }
            vertex_lookup.insert(name.clone(), Vertex::from_index(vertex_names.len()));
            vertex_names.push(name);
        }
        let basepoint = *vertex_lookup
            .get(basepoint)
            .ok_or_else(|| Error::UnknownVertex(basepoint.to_string()))?;

        let mut wall_names = Vec::new();
        let mut wall_lookup: HashMap<String, Wall> = HashMap::new();
        let mut list = Vec::new();
        let mut adjacency = vec![Vec::new(); vertex_names.len()];
        let mut seen_pairs = std::collections::HashSet::new();
        for (u, v, w) in edges {
            let (u, v, w) = (u.as_ref(), v.as_ref(), w.as_ref());
            let lookup = |name: &str| {
                vertex_lookup.get(name).copied().ok_or_else(|| {
                    Error::MalformedEdges(format!("edge {u}-{v} references undeclared vertex `{name}`"))
                })
            };
            let (a, b) = (lookup(u)?, lookup(v)?);
            if a == b {
                return Err(Error::MalformedEdges(format!("self-loop at `{u}`")));
            }
            if !seen_pairs.insert((a.min(b), a.max(b))) {
                return Err(Error::MalformedEdges(format!("repeated edge {u}-{v}")));
            }
            let wall = match wall_lookup.get(w) {
                Some(&wall) => wall,
                None => {
                    let wall = Wall::from_index(wall_names.len());
                    wall_names.push(w.to_string());
                    wall_lookup.insert(w.to_string(), wall);
                    wall
                }
            };
            let index = list.len();
            list.push(Edge { u: a, v: b, wall });
            adjacency[a.index()].push(Incidence { to: b, wall, edge: index });
            adjacency[b.index()].push(Incidence { to: a, wall, edge: index });
        }
        Ok(EdgeList {
            vertex_names,
            vertex_lookup,
            wall_names,
            wall_lookup,
            edges: list,
            adjacency,
            basepoint,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn wall_count(&self) -> usize {
        self.wall_names.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn basepoint(&self) -> Vertex {
        self.basepoint
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn wall_name(&self, w: Wall) -> &str {
        &self.wall_names[w.index()]
    }

    pub fn neighbors(&self, v: Vertex) -> &[Incidence] {
        &self.adjacency[v.index()]
    }

    /// Breadth-first distances from `source`; unreachable vertices get `u32::MAX`.
    pub fn bfs_distances(&self, source: Vertex) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source.index()] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u.index()];
            for inc in self.neighbors(u) {
                if dist[inc.to.index()] == u32::MAX {
                    dist[inc.to.index()] = du + 1;
                    queue.push_back(inc.to);
                }
            }
        }
        dist
    }

    /// Plus side of `wall`: the vertices not reachable from the basepoint once the
    /// wall's dual edges are removed, provided the removal leaves exactly two
    /// components with every dual edge running between them.
    pub(crate) fn wall_split(&self, wall: Wall) -> std::result::Result<VertexSet, SplitFailure> {
        let n = self.vertex_count();
        let mut component = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        let order = std::iter::once(self.basepoint.index()).chain(0..n);
        for start in order {
            if component[start] != usize::MAX {
                continue;
            }
            component[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for inc in &self.adjacency[u] {
                    if inc.wall != wall && component[inc.to.index()] == usize::MAX {
                        component[inc.to.index()] = count;
                        queue.push_back(inc.to.index());
                    }
                }
            }
            count += 1;
        }
        let crosses_cleanly = self
            .edges
            .iter()
            .filter(|e| e.wall == wall)
            .all(|e| component[e.u.index()] != component[e.v.index()]);
        if count != 2 || !crosses_cleanly {
            return Err(SplitFailure { components: count });
        }
        let mut plus = FixedBitSet::with_capacity(n);
        for (v, &c) in component.iter().enumerate() {
            if c == 1 {
                plus.insert(v);
            }
        }
        Ok(plus)
    }
}

/// A validated finite CAT(0) cube complex with a basepoint.
///
/// Immutable after construction; every query is a pure function of the stored state.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    graph: EdgeList,
    plus: Vec<VertexSet>,
    carriers: Vec<VertexSet>,
    dual_edges: Vec<Vec<usize>>,
    orientation: Vec<WallSet>,
    position: HashMap<Box<[usize]>, Vertex>,
    dimension: usize,
    meta: Map<String, Value>,
}

/// A wall with its two half-spaces, dual edges and carrier.
#[derive(Clone, Debug)]
pub struct Hyperplane {
    pub wall: Wall,
    pub minus_side: VertexSet,
    pub plus_side: VertexSet,
    pub dual_edges: Vec<Edge>,
    pub carrier: VertexSet,
}

impl CubeComplex {
    /// Builds and fully validates a complex from named vertices and labeled edges.
    pub fn from_edge_list<V, E>(
        vertices: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = (E, E, E)>,
        basepoint: &str,
    ) -> Result<Self>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        Self::from_edge_list_with(vertices, edges, basepoint, &ValidationOptions::default())
    }

    pub fn from_edge_list_with<V, E>(
        vertices: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = (E, E, E)>,
        basepoint: &str,
        options: &ValidationOptions,
    ) -> Result<Self>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let graph = EdgeList::new(vertices, edges, basepoint)?;
        let report = validate_edge_list(&graph, options);
        if !report.passed() {
            return Err(Error::Invalid(Box::new(report)));
        }
        Self::assemble(graph)
    }

    /// Computes the wall structure without the (cubic) convexity and median checks.
    /// Used by generators whose output is a median graph by construction.
    pub(crate) fn assemble(graph: EdgeList) -> Result<Self> {
        let n = graph.vertex_count();
        let walls = graph.wall_count();
        let mut plus = Vec::with_capacity(walls);
        for w in 0..walls {
            let wall = Wall::from_index(w);
            match graph.wall_split(wall) {
                Ok(side) => plus.push(side),
                Err(failure) => {
                    let report = ValidationReport::single_failure(
                        &graph,
                        Invariant::WallSplitsInTwo,
                        Witness::WallComponents {
                            wall: graph.wall_name(wall).to_string(),
                            components: failure.components,
                        },
                    );
                    return Err(Error::Invalid(Box::new(report)));
                }
            }
        }
        let mut dual_edges = vec![Vec::new(); walls];
        let mut carriers = vec![FixedBitSet::with_capacity(n); walls];
        for (i, e) in graph.edges.iter().enumerate() {
            dual_edges[e.wall.index()].push(i);
            carriers[e.wall.index()].insert(e.u.index());
            carriers[e.wall.index()].insert(e.v.index());
        }
        let orientation = orientation_vectors(&plus, n);
        let position = orientation
            .iter()
            .enumerate()
            .map(|(v, bits)| (Box::from(bits.as_slice()), Vertex::from_index(v)))
            .collect();
        let mut complex = CubeComplex {
            graph,
            plus,
            carriers,
            dual_edges,
            orientation,
            position,
            dimension: 0,
            meta: Map::new(),
        };
        complex.dimension = complex.compute_dimension();
        Ok(complex)
    }

    pub fn graph(&self) -> &EdgeList {
        &self.graph
    }

    pub fn validate(&self) -> ValidationReport {
        validate_edge_list(&self.graph, &ValidationOptions::default())
    }

    pub fn validate_with(&self, options: &ValidationOptions) -> ValidationReport {
        validate_edge_list(&self.graph, options)
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn wall_count(&self) -> usize {
        self.graph.wall_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.graph.edges
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = Vertex> + Clone {
        (0..self.vertex_count()).map(Vertex::from_index)
    }

    pub fn walls(&self) -> impl ExactSizeIterator<Item = Wall> + Clone {
        (0..self.wall_count()).map(Wall::from_index)
    }

    pub fn basepoint(&self) -> Vertex {
        self.graph.basepoint
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.graph
            .vertex_lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn wall(&self, name: &str) -> Result<Wall> {
        self.graph
            .wall_lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownWall(name.to_string()))
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        self.graph.vertex_name(v)
    }

    pub fn wall_name(&self, w: Wall) -> &str {
        self.graph.wall_name(w)
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.graph.vertex_names
    }

    pub fn wall_names(&self) -> &[String] {
        &self.graph.wall_names
    }

    pub fn neighbors(&self, v: Vertex) -> &[Incidence] {
        self.graph.neighbors(v)
    }

    pub fn meta(&self) -> &Map<String, Value> {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut Map<String, Value> {
        &mut self.meta
    }

    pub fn with_meta(mut self, meta: Map<String, Value>) -> Self {
        self.meta = meta;
        self
    }

    /// Resolves a list of vertex names into a set.
    pub fn vertex_set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        let mut set = self.empty_vertex_set();
        for name in names {
            set.insert(self.vertex(name.as_ref())?.index());
        }
        Ok(set)
    }

    pub fn vertex_set(&self, vertices: impl IntoIterator<Item = Vertex>) -> VertexSet {
        let mut set = self.empty_vertex_set();
        for v in vertices {
            set.insert(v.index());
        }
        set
    }

    pub fn empty_vertex_set(&self) -> VertexSet {
        FixedBitSet::with_capacity(self.vertex_count())
    }

    pub fn full_vertex_set(&self) -> VertexSet {
        let mut set = self.empty_vertex_set();
        set.insert_range(..);
        set
    }

    pub fn names_of(&self, set: &VertexSet) -> Vec<String> {
        set.ones().map(|i| self.graph.vertex_names[i].clone()).collect()
    }

    pub fn side(&self, wall: Wall, v: Vertex) -> Side {
        if self.plus[wall.index()].contains(v.index()) {
            Side::Plus
        } else {
            Side::Minus
        }
    }

    pub fn plus_side(&self, wall: Wall) -> &VertexSet {
        &self.plus[wall.index()]
    }

    pub fn minus_side(&self, wall: Wall) -> VertexSet {
        let mut minus = self.plus[wall.index()].clone();
        minus.toggle_range(..);
        minus
    }

    pub fn half_space(&self, wall: Wall, side: Side) -> VertexSet {
        match side {
            Side::Plus => self.plus[wall.index()].clone(),
            Side::Minus => self.minus_side(wall),
        }
    }

    pub fn carrier(&self, wall: Wall) -> &VertexSet {
        &self.carriers[wall.index()]
    }

    pub fn dual_edges(&self, wall: Wall) -> impl Iterator<Item = &Edge> {
        self.dual_edges[wall.index()].iter().map(|&i| &self.graph.edges[i])
    }

    /// The walls on whose plus side `v` lies.
    pub fn orientation(&self, v: Vertex) -> &WallSet {
        &self.orientation[v.index()]
    }

    /// The vertex with the given orientation vector, if there is one.
    pub fn vertex_at(&self, orientation: &[usize]) -> Option<Vertex> {
        self.position.get(orientation).copied()
    }

    pub fn hyperplane(&self, wall: Wall) -> Hyperplane {
        Hyperplane {
            wall,
            minus_side: self.minus_side(wall),
            plus_side: self.plus[wall.index()].clone(),
            dual_edges: self.dual_edges(wall).copied().collect(),
            carrier: self.carriers[wall.index()].clone(),
        }
    }

    pub fn hyperplane_named(&self, name: &str) -> Result<Hyperplane> {
        Ok(self.hyperplane(self.wall(name)?))
    }

    /// Combinatorial distance, computed as the number of separating walls.
    pub fn distance(&self, x: Vertex, y: Vertex) -> usize {
        self.orientation[x.index()].symmetric_difference_count(&self.orientation[y.index()])
    }

    pub fn distance_named(&self, x: &str, y: &str) -> Result<usize> {
        Ok(self.distance(self.vertex(x)?, self.vertex(y)?))
    }

    /// `d(o, v)` for the basepoint `o`.
    pub fn norm(&self, v: Vertex) -> usize {
        self.orientation[v.index()].count_ones(..)
    }

    pub fn separating_walls(&self, x: Vertex, y: Vertex) -> Vec<Wall> {
        self.orientation[x.index()]
            .symmetric_difference(&self.orientation[y.index()])
            .map(Wall::from_index)
            .collect()
    }

    pub fn bfs_distances(&self, source: Vertex) -> Vec<u32> {
        self.graph.bfs_distances(source)
    }

    /// Distance from `v` to the nearest vertex of a nonempty set.
    pub fn distance_to_set(&self, v: Vertex, set: &VertexSet) -> Option<usize> {
        set.ones()
            .map(|u| self.distance(v, Vertex::from_index(u)))
            .min()
    }

    /// Multi-source breadth-first distances to a set.
    pub fn distances_to_set(&self, set: &VertexSet) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        for u in set.ones() {
            dist[u] = 0;
            queue.push_back(u);
        }
        while let Some(u) = queue.pop_front() {
            for inc in &self.graph.adjacency[u] {
                if dist[inc.to.index()] == u32::MAX {
                    dist[inc.to.index()] = dist[u] + 1;
                    queue.push_back(inc.to.index());
                }
            }
        }
        dist
    }

    /// Whether the two walls cross, i.e. all four quadrants are nonempty.
    pub fn walls_cross(&self, a: Wall, b: Wall) -> bool {
        if a == b {
            return false;
        }
        let (pa, pb) = (&self.plus[a.index()], &self.plus[b.index()]);
        let n = self.vertex_count();
        let both = pa.intersection_count(pb);
        let only_a = pa.difference_count(pb);
        let only_b = pb.difference_count(pa);
        let neither = n - pa.union_count(pb);
        both > 0 && only_a > 0 && only_b > 0 && neither > 0
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Largest set of pairwise-crossing walls all dual to edges at one vertex.
    fn compute_dimension(&self) -> usize {
        let mut best = 0;
        for v in self.vertices() {
            let walls: Vec<Wall> = self.neighbors(v).iter().map(|inc| inc.wall).collect();
            if walls.len() <= best {
                continue;
            }
            let k = walls.len();
            let adjacent: Vec<Vec<bool>> = (0..k)
                .map(|i| (0..k).map(|j| i != j && self.walls_cross(walls[i], walls[j])).collect())
                .collect();
            let mut clique = Vec::new();
            best = best.max(max_clique(&adjacent, &mut clique, 0, best));
        }
        best
    }
}

fn orientation_vectors(plus: &[VertexSet], n: usize) -> Vec<WallSet> {
    let mut orientation = vec![FixedBitSet::with_capacity(plus.len()); n];
    for (w, side) in plus.iter().enumerate() {
        for v in side.ones() {
            orientation[v].insert(w);
        }
    }
    orientation
}

fn max_clique(adjacent: &[Vec<bool>], clique: &mut Vec<usize>, start: usize, best: usize) -> usize {
    let mut best = best.max(clique.len());
    for candidate in start..adjacent.len() {
        if clique.len() + (adjacent.len() - candidate) <= best {
            break;
        }
        if clique.iter().all(|&c| adjacent[c][candidate]) {
            clique.push(candidate);
            best = best.max(max_clique(adjacent, clique, candidate + 1, best));
            clique.pop();
        }
    }
    best
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w#{}", self.0)
    }
}
