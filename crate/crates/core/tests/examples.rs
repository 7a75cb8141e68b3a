//! Worked examples on small named complexes.

use cubex_core::complex::realize_pocset;
use cubex_core::gallery::{gen_grid, gen_path, gen_product, gen_tree, gen_tripod, TreeOfFlats};
use cubex_core::morse::{sublinear_constants, validate_kappa, DiscretePath, SampleSpec, SublinearFunction};
use cubex_core::{CubeComplex, HalfSpaceSystem, Vertex, Wall};

fn diagonal(g: &CubeComplex, n: usize) -> DiscretePath {
    let w = if n >= 10 { 2 } else { 1 };
    let name = |x: usize, y: usize| format!("v{x:0w$}{y:0w$}");
    let mut names = vec![name(0, 0)];
    for i in 0..n {
        names.push(name(i + 1, i));
        names.push(name(i + 1, i + 1));
    }
    DiscretePath::from_names(g, &names).unwrap()
}

#[test]
fn facing_pocset_realizes_a_tripod() {
    let system = HalfSpaceSystem::from_json_str(
        r#"{"walls": ["a", "b", "c"], "nesting": [["a+", "b-"], ["a+", "c-"], ["b+", "c-"]]}"#,
    )
    .unwrap();
    let c = realize_pocset(&system, 1 << 16).unwrap();
    assert_eq!(c.vertex_count(), 4);
    assert_eq!(c.dimension(), 1);
    let centre = c.vertices().find(|&v| c.neighbors(v).len() == 3).expect("a centre of degree 3");
    assert!(c.vertices().filter(|&v| v != centre).all(|v| c.neighbors(v).len() == 1));
    let w: Vec<Wall> = c.walls().collect();
    assert!(c.is_facing_triple(w[0], w[1], w[2]));
}

#[test]
fn tree_of_flats_walls() {
    let model = TreeOfFlats::generate(4, 2, 2).unwrap();
    let c = model.complex();
    let o = c.basepoint();
    let end = *model.ray().last().unwrap();
    let crossed = c.separating_walls(o, end);
    let c_walls = crossed.iter().filter(|w| c.wall_name(**w).starts_with('c')).count();
    assert_eq!(c_walls, 4);

    let c2 = c.hyperplane_named("c2").unwrap();
    let mut before = model.flat(0).unwrap();
    before.union_with(&model.flat(1).unwrap());
    assert_eq!(c2.minus_side, before);

    for &cw in model.c_walls() {
        assert!(c.walls().filter(|&w| w != cw).all(|w| !c.crosses(cw, w)));
    }
    assert!(c.is_chain(model.c_walls()).unwrap());

    let y1 = c.carrier_subset(model.c_walls()[0]);
    let y2 = c.carrier_subset(model.c_walls()[2]);
    assert!(c.walls_crossing_both(&y1, &y2).unwrap().is_empty());
    assert_eq!(c.wellsep_degree(&y1, &y2).unwrap().value, 0);

    let a1 = c.carrier_subset(c.wall("F1:a0").unwrap());
    let a3 = c.carrier_subset(c.wall("F3:a1").unwrap());
    let r = c.genevois_pair_report(&a1, &a3).unwrap();
    assert_eq!((r.degree, r.diam_onto_first, r.diam_onto_second), (0, 0, 0));
}

#[test]
fn dimension_of_a_product() {
    let p = gen_product(&gen_grid(3, 3).unwrap(), &gen_path(1).unwrap()).unwrap();
    assert_eq!(p.dimension(), 3);
    assert!(p.validate().passed());
    assert_eq!(gen_tripod(1).unwrap().wall_count(), 3);
}

#[test]
fn intervals_and_convexity() {
    let t = gen_tripod(2).unwrap();
    let leaf1 = t.vertex("l0_2").unwrap();
    let leaf2 = t.vertex("l1_2").unwrap();
    let names = t.names_of(&t.interval(leaf1, leaf2));
    assert_eq!(names.len(), 5);
    assert!(names.contains(&"c".to_string()));

    let g = gen_grid(3, 3).unwrap();
    let corners = g.vertex_set_from_names(&["v00", "v22"]).unwrap();
    let (x, y, z) = g.convexity_witness(&corners).expect("corners are not convex");
    assert!(corners.contains(x.index()) && corners.contains(y.index()) && !corners.contains(z.index()));
    for w in g.walls() {
        assert!(g.is_convex(g.carrier(w)));
        assert!(g.is_convex(g.plus_side(w)));
    }
}

#[test]
fn ray_prefix_hull_is_the_traversed_segments() {
    let model = TreeOfFlats::generate(5, 2, 2).unwrap();
    let c = model.complex();
    let prefix = &model.ray()[..=TreeOfFlats::milestone(3)];
    let a = c.vertex_set(prefix.iter().copied());
    let hull = c.hull(&a).unwrap();
    assert_eq!(hull.set(), &c.halfspace_hull(&a).unwrap());
    assert_eq!(hull.len(), prefix.len());
}

#[test]
fn tree_carriers_have_single_vertex_images() {
    let t = gen_tree(&[("r", "a"), ("a", "b"), ("r", "c"), ("c", "d")]).unwrap();
    let y1 = t.carrier_subset(t.wall("w1").unwrap());
    let y2 = t.carrier_subset(t.wall("w3").unwrap());
    assert_eq!(t.gate_diameter(&y1, &y2).unwrap(), 0);
    let r = t.genevois_pair_report(&y1, &y2).unwrap();
    assert_eq!((r.degree, r.diam_onto_first, r.diam_onto_second), (0, 0, 0));
}

#[test]
fn gauges() {
    let cube = SublinearFunction::log_power(1.0).unwrap().pow(3.0).unwrap();
    assert!(validate_kappa(&cube, 1e6, 0.01).valid);
    assert!(!validate_kappa(&SublinearFunction::sqrt().pow(2.0).unwrap(), 1e6, 0.01).valid);
    assert_eq!(sublinear_constants(&SublinearFunction::sqrt(), 0.0, 1e6), (1.0, 1.0));
    assert_eq!(sublinear_constants(&SublinearFunction::One, 5.0, 1e6), (1.0, 1.0));
}

#[test]
fn ray_stays_near_its_hull() {
    let model = TreeOfFlats::generate(6, 2, 2).unwrap();
    let c = model.complex();
    let hull = c.hull(&c.vertex_set(model.ray().iter().copied())).unwrap();
    let path = model.ray_path();
    assert_eq!(c.kappa_gauge(hull.set(), &path, &SublinearFunction::sqrt()).unwrap(), 0.0);
    let flat = model.flat(6).unwrap();
    let gauge = c.kappa_gauge(&flat, &path, &SublinearFunction::sqrt()).unwrap();
    assert!(gauge.is_finite() && gauge > 0.0);
}

#[test]
fn greedy_search_recovers_the_c_walls() {
    let model = TreeOfFlats::generate(8, 2, 2).unwrap();
    let c = model.complex();
    let found = c.find_excursion_chain(&model.ray_path(), &SublinearFunction::sqrt()).unwrap();
    let chain = found.chain.expect("a chain exists");
    let walls = chain.walls();
    assert!(model.c_walls().iter().all(|w| walls.contains(w)));
    assert!(chain.c <= 3.0);
}

#[test]
fn grid_diagonal_has_no_uniform_constant() {
    let cs: Vec<f64> = [4, 8, 16]
        .into_iter()
        .map(|n| {
            let g = gen_grid(n + 1, n + 1).unwrap();
            let found = g.find_excursion_chain(&diagonal(&g, n), &SublinearFunction::One).unwrap();
            found.chain.map_or(f64::INFINITY, |ch| ch.c)
        })
        .collect();
    assert!(cs.windows(2).all(|w| w[1] > w[0]), "{cs:?}");
    assert!(cs[2] >= 8.0);
}

#[test]
fn divergence_from_the_first_flat() {
    let model = TreeOfFlats::generate(4, 2, 2).unwrap();
    let c = model.complex();
    let q = model.ray_path();
    let q_prime = DiscretePath::from_names(c, &["F0:0,0", "F0:0,1", "F0:0,2", "F0:-1,2", "F0:-2,2"]).unwrap();
    let (c1, c2) = (model.c_walls()[0], model.c_walls()[1]);
    let report = c.divergence_check(&q, &q_prime, c1, c2, 3, 0).unwrap();
    assert!(report.holds);
    assert_eq!(report.checked, 2);
}

#[test]
fn tree_chain_crosses_at_the_dual_edge() {
    let p = gen_path(8).unwrap();
    let path = DiscretePath::new(&p, p.named_path("line").unwrap()).unwrap();
    let walls = p.named_chain("edges").unwrap();
    let chain = p.chain_along_path(&path, &walls, &SublinearFunction::One).unwrap();
    assert_eq!(chain.c, 1.0);
    let report = p.crossing_locality_check(&chain, p.vertex("p1").unwrap(), p.vertex("p4").unwrap(), 0, 0).unwrap();
    assert!(report.holds);
    assert_eq!((report.index, report.max_distance, report.total_geodesics), (2, 0, 1));
}

#[test]
fn grid_block_profile_grows_and_tree_profile_vanishes() {
    let small = gen_grid(5, 5).unwrap();
    let big = gen_grid(11, 11).unwrap();
    let ratio = |g: &CubeComplex| {
        let y = g.certify(g.named_set("diag-hull").unwrap()).unwrap();
        g.contraction_profile(&y, &SublinearFunction::One, SampleSpec::Exhaustive).unwrap().max_ratio
    };
    assert!(ratio(&big) > 2.0 * ratio(&small));

    let t = gen_tripod(4).unwrap();
    let leg: Vec<Vertex> = t.named_path("leg0").unwrap();
    let y = t.hull(&t.vertex_set(leg)).unwrap();
    let p = t.contraction_profile(&y, &SublinearFunction::One, SampleSpec::Exhaustive).unwrap();
    assert_eq!(p.max_ratio, 0.0);
}
