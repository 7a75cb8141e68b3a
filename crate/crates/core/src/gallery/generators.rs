use std::collections::{HashMap, HashSet};

use serde_json::Map;

use super::{insert_meta, names_value};
use crate::complex::{CubeComplex, EdgeList};
use crate::error::{Error, Result};

fn digits(mut k: usize) -> usize {
    let mut d = 1;
    while k >= 10 {
        k /= 10;
        d += 1;
    }
    d
}

/// Grid vertex name: `v{x}{y}`, each coordinate zero-padded to `width` digits.
fn grid_name(x: usize, y: usize, width: usize) -> String {
    format!("v{x:0width$}{y:0width$}")
}

/// The `m × n` grid of vertices `(x, y)`, `0 ≤ x < m`, `0 ≤ y < n`, named `v{x}{y}`
/// (zero-padded once a coordinate reaches two digits).
///
/// Walls `wV{i}` separate columns `i` and `i + 1`; walls `wH{j}` separate rows `j` and
/// `j + 1`. The basepoint is `v00`. Metadata sets: `col0` (the column `x = 0`) and
/// `diag-hull` (the square block spanned by `(0,0)` and `(k,k)` with
/// `k = (min(m, n) - 1) / 2`).
pub fn gen_grid(m: usize, n: usize) -> Result<CubeComplex> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("grid sides must be positive".into()));
    }
    let width = digits(m.max(n) - 1);
    let name = |x, y| grid_name(x, y, width);
    let vertices: Vec<String> = (0..m).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| name(x, y)).collect();
    let mut edges = Vec::new();
    for x in 0..m.saturating_sub(1) {
        for y in 0..n {
            edges.push((name(x, y), name(x + 1, y), format!("wV{x}")));
        }
    }
    for y in 0..n.saturating_sub(1) {
        for x in 0..m {
            edges.push((name(x, y), name(x, y + 1), format!("wH{y}")));
        }
    }
    let graph = EdgeList::new(&vertices, edges, &name(0, 0))?;
    let mut meta = Map::new();
    let col0: Vec<String> = (0..n).map(|y| name(0, y)).collect();
    insert_meta(&mut meta, "sets", "col0", names_value(col0.iter().map(String::as_str)));
    let k = (m.min(n) - 1) / 2;
    let block: Vec<String> = (0..=k).flat_map(|x| (0..=k).map(move |y| (x, y))).map(|(x, y)| name(x, y)).collect();
    insert_meta(&mut meta, "sets", "diag-hull", names_value(block.iter().map(String::as_str)));
    Ok(CubeComplex::assemble(graph)?.with_meta(meta))
}

/// A path with `k` edges: vertices `p0..pk`, walls `e0..e{k-1}`, basepoint `p0`.
pub fn gen_path(k: usize) -> Result<CubeComplex> {
    let vertices: Vec<String> = (0..=k).map(|i| format!("p{i}")).collect();
    let edges: Vec<(String, String, String)> =
        (0..k).map(|i| (vertices[i].clone(), vertices[i + 1].clone(), format!("e{i}"))).collect();
    let mut meta = Map::new();
    insert_meta(&mut meta, "paths", "line", names_value(vertices.iter().map(String::as_str)));
    let chain: Vec<String> = (0..k).map(|i| format!("e{i}")).collect();
    insert_meta(&mut meta, "chains", "edges", names_value(chain.iter().map(String::as_str)));
    Ok(CubeComplex::assemble(EdgeList::new(&vertices, edges, "p0")?)?.with_meta(meta))
}

/// A tree from an undirected edge list. Vertices are ordered by first appearance,
/// the first one is the basepoint, and edge `i` carries wall `w{i}`.
pub fn gen_tree<S: AsRef<str>>(edges: &[(S, S)]) -> Result<CubeComplex> {
    if edges.is_empty() {
        return Err(Error::InvalidParameter("a tree needs at least one edge".into()));
    }
    let mut vertices: Vec<String> = Vec::new();
    let mut seen = HashSet::new();
    for (u, v) in edges {
        for name in [u.as_ref(), v.as_ref()] {
            if seen.insert(name.to_string()) {
                vertices.push(name.to_string());
            }
        }
    }
    if vertices.len() != edges.len() + 1 {
        return Err(Error::InvalidParameter("edge list contains a cycle or repeated edge".into()));
    }
    let labeled: Vec<(String, String, String)> = edges
        .iter()
        .enumerate()
        .map(|(i, (u, v))| (u.as_ref().to_string(), v.as_ref().to_string(), format!("w{i}")))
        .collect();
    let graph = EdgeList::new(&vertices, labeled, &vertices[0])?;
    if graph.bfs_distances(graph.basepoint()).contains(&u32::MAX) {
        return Err(Error::InvalidParameter("edge list is not connected".into()));
    }
    CubeComplex::assemble(graph)
}

/// Three legs of length `k` glued at a center `c`. Leg `l` has vertices
/// `l{l}_1..l{l}_k` and walls `t{l}_1..t{l}_k`, numbered outward. Basepoint `c`.
pub fn gen_tripod(k: usize) -> Result<CubeComplex> {
    if k == 0 {
        return Err(Error::InvalidParameter("tripod legs must have positive length".into()));
    }
    let mut vertices = vec!["c".to_string()];
    let mut edges = Vec::new();
    let mut meta = Map::new();
    for leg in 0..3 {
        let mut prev = "c".to_string();
        let mut path = vec!["c".to_string()];
        for j in 1..=k {
            let v = format!("l{leg}_{j}");
            vertices.push(v.clone());
            edges.push((prev, v.clone(), format!("t{leg}_{j}")));
            path.push(v.clone());
            prev = v;
        }
        insert_meta(&mut meta, "paths", &format!("leg{leg}"), names_value(path.iter().map(String::as_str)));
    }
    Ok(CubeComplex::assemble(EdgeList::new(&vertices, edges, "c")?)?.with_meta(meta))
}

/// Cartesian product. Vertices are `({a},{b})`; walls of the factors become `1:{w}`
/// and `2:{w}`. The basepoint is the pair of basepoints.
pub fn gen_product(first: &CubeComplex, second: &CubeComplex) -> Result<CubeComplex> {
    let pair = |a: &str, b: &str| format!("({a},{b})");
    let mut vertices = Vec::with_capacity(first.vertex_count() * second.vertex_count());
    for a in first.vertex_names() {
        for b in second.vertex_names() {
            vertices.push(pair(a, b));
        }
    }
    let mut edges = Vec::new();
    for e in first.edges() {
        for b in second.vertex_names() {
            edges.push((
                pair(first.vertex_name(e.u), b),
                pair(first.vertex_name(e.v), b),
                format!("1:{}", first.wall_name(e.wall)),
            ));
        }
    }
    for e in second.edges() {
        for a in first.vertex_names() {
            edges.push((
                pair(a, second.vertex_name(e.u)),
                pair(a, second.vertex_name(e.v)),
                format!("2:{}", second.wall_name(e.wall)),
            ));
        }
    }
    let base = pair(first.vertex_name(first.basepoint()), second.vertex_name(second.basepoint()));
    CubeComplex::assemble(EdgeList::new(&vertices, edges, &base)?)
}

/// A diagonal strip of squares: the grid points `(x, y)` in `[0, k]²` with
/// `-1 ≤ x - y ≤ 2`, named like [`gen_grid`] vertices, with the same `wV`/`wH` walls.
///
/// Metadata: path `stairs` climbing `(0,0), (1,0), (1,1), (2,1), …, (k,k)` and chain
/// `v-even` of the walls `wV0, wV2, wV4, …`.
pub fn gen_staircase(k: usize) -> Result<CubeComplex> {
    if k == 0 {
        return Err(Error::InvalidParameter("staircase size must be positive".into()));
    }
    let width = digits(k);
    let name = |x, y| grid_name(x, y, width);
    let inside = |x: usize, y: usize| x <= k && y <= k && x + 1 >= y && x <= y + 2;
    let mut vertices = Vec::new();
    let mut index = HashMap::new();
    for x in 0..=k {
        for y in 0..=k {
            if inside(x, y) {
                index.insert((x, y), vertices.len());
                vertices.push(name(x, y));
            }
        }
    }
    let mut edges = Vec::new();
    for x in 0..k {
        for y in 0..=k {
            if inside(x, y) && inside(x + 1, y) {
                edges.push((name(x, y), name(x + 1, y), format!("wV{x}")));
            }
        }
    }
    for y in 0..k {
        for x in 0..=k {
            if inside(x, y) && inside(x, y + 1) {
                edges.push((name(x, y), name(x, y + 1), format!("wH{y}")));
            }
        }
    }
    let mut meta = Map::new();
    let mut stairs = vec![name(0, 0)];
    for i in 0..k {
        stairs.push(name(i + 1, i));
        stairs.push(name(i + 1, i + 1));
    }
    insert_meta(&mut meta, "paths", "stairs", names_value(stairs.iter().map(String::as_str)));
    let chain: Vec<String> = (0..k).step_by(2).map(|i| format!("wV{i}")).collect();
    insert_meta(&mut meta, "chains", "v-even", names_value(chain.iter().map(String::as_str)));
    Ok(CubeComplex::assemble(EdgeList::new(&vertices, edges, &name(0, 0))?)?.with_meta(meta))
}

/// A fixed corpus of small complexes, all at most 500 vertices, covering
/// dimensions 1 to 3.
pub fn standard_gallery() -> Vec<(String, CubeComplex)> {
    let tree = gen_tree(&[
        ("r", "a"),
        ("r", "b"),
        ("a", "a1"),
        ("a", "a2"),
        ("b", "b1"),
        ("b1", "b2"),
        ("b1", "b3"),
        ("r", "c"),
    ])
    .expect("fixed tree");
    let square_path = gen_product(&gen_grid(3, 3).expect("grid"), &gen_path(2).expect("path")).expect("product");
    let flats = super::TreeOfFlats::generate(4, 1, 1).expect("tree of flats").into_complex();
    vec![
        ("grid-3x3".into(), gen_grid(3, 3).expect("grid")),
        ("grid-4x6".into(), gen_grid(4, 6).expect("grid")),
        ("grid-7x7".into(), gen_grid(7, 7).expect("grid")),
        ("path-6".into(), gen_path(6).expect("path")),
        ("tree".into(), tree),
        ("tripod-3".into(), gen_tripod(3).expect("tripod")),
        ("grid3-x-path2".into(), square_path),
        ("staircase-6".into(), gen_staircase(6).expect("staircase")),
        ("tree-of-flats-4".into(), flats),
    ]
}
