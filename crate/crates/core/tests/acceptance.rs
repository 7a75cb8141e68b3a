//! End-to-end acceptance checks. Runs as a plain binary (`harness = false`) so every
//! criterion prints exactly one PASS/FAIL line even when it succeeds.

use std::collections::HashSet;
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cubex_core::complex::{random_pocset, realize_pocset};
use cubex_core::gallery::{gen_grid, gen_staircase, standard_gallery, TreeOfFlats};
use cubex_core::morse::{sublinear_constants, validate_kappa, DiscretePath, SampleSpec, SublinearFunction};
use cubex_core::report::Exactness;
use cubex_core::{CubeComplex, Vertex, VertexSet, Wall, WallSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:.2?}, limit {limit:?}"))
}

fn apsp(c: &CubeComplex) -> Vec<Vec<u32>> {
    c.vertices().map(|v| c.bfs_distances(v)).collect()
}

fn gallery_up_to(max_vertices: usize) -> Vec<(String, CubeComplex)> {
    standard_gallery().into_iter().filter(|(_, c)| c.vertex_count() <= max_vertices).collect()
}

fn vx(i: usize) -> Vertex {
    Vertex::from_index(i)
}

fn c1_metric_duality() -> Outcome {
    let start = Instant::now();
    let mut complexes = gallery_up_to(500);
    for seed in 0..50u64 {
        let system = random_pocset(seed, 10, 6);
        let c = realize_pocset(&system, 1 << 20).map_err(|e| format!("pocset seed {seed}: {e}"))?;
        complexes.push((format!("pocset-{seed}"), c));
    }
    let mut pairs = 0usize;
    for (name, c) in &complexes {
        for x in c.vertices() {
            let bfs = c.bfs_distances(x);
            for y in c.vertices() {
                let walls = c.separating_walls(x, y).len();
                ensure(bfs[y.index()] as usize == walls, || {
                    format!("{name}: d({}, {}) = {} but {walls} walls separate", c.vertex_name(x), c.vertex_name(y), bfs[y.index()])
                })?;
                pairs += 1;
            }
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("{} complexes, {pairs} ordered pairs", complexes.len()))
}

fn c2_median_oracle() -> Outcome {
    let start = Instant::now();
    let mut triples = 0usize;
    let complexes = gallery_up_to(150);
    for (name, c) in &complexes {
        let d = apsp(c);
        let n = c.vertex_count();
        let on = |a: usize, m: usize, b: usize| d[a][m] + d[m][b] == d[a][b];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let common: Vec<usize> = (0..n).filter(|&m| on(x, m, y) && on(y, m, z) && on(x, m, z)).collect();
                    ensure(common.len() == 1, || format!("{name}: {} points in the triple intersection", common.len()))?;
                    let m = c.median(vx(x), vx(y), vx(z));
                    ensure(m.index() == common[0], || {
                        format!("{name}: majority median {} differs from interval point {}", c.vertex_name(m), c.vertex_name(vx(common[0])))
                    })?;
                    triples += 1;
                }
            }
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{} complexes, {triples} ordered triples", complexes.len()))
}

fn iterate_joins(c: &CubeComplex, a: &VertexSet, times: usize) -> VertexSet {
    let mut set = a.clone();
    for _ in 0..times {
        set = c.join(&set).expect("nonempty");
    }
    set
}

fn c3_hull_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut subsets = 0usize;
    let complexes = standard_gallery();
    for (name, c) in &complexes {
        let v = c.dimension();
        for _ in 0..200 {
            let size = rng.random_range(1..=5.min(c.vertex_count()));
            let a = c.vertex_set((0..size).map(|_| vx(rng.random_range(0..c.vertex_count()))));
            let by_joins = c.hull_by_joins(&a).map_err(|e| e.to_string())?;
            let by_halfspaces = c.halfspace_hull(&a).map_err(|e| e.to_string())?;
            ensure(by_joins == by_halfspaces, || format!("{name}: hulls of {:?} differ", c.names_of(&a)))?;
            let jv = iterate_joins(c, &a, v);
            let jv1 = c.join(&jv).map_err(|e| e.to_string())?;
            ensure(jv == jv1, || format!("{name}: J^{} != J^{} for {:?}", v + 1, v, c.names_of(&a)))?;
            ensure(jv == by_halfspaces, || format!("{name}: J^{v} is not the hull of {:?}", c.names_of(&a)))?;
            subsets += 1;
        }
    }
    Ok(format!("{} complexes, {subsets} random subsets", complexes.len()))
}

fn c4_gate_characterization() -> Outcome {
    let mut complexes = gallery_up_to(300);
    complexes.push(("grid-15x15".into(), gen_grid(15, 15).unwrap()));
    complexes.push(("tree-of-flats-6".into(), TreeOfFlats::generate(6, 2, 2).unwrap().into_complex()));
    let mut checked = 0usize;
    for (name, c) in &complexes {
        let d = apsp(c);
        let n = c.vertex_count();
        for w in c.walls() {
            let y = c.carrier_subset(w);
            let members: Vec<usize> = y.vertices().map(Vertex::index).collect();
            let gates: Vec<Vertex> = (0..n).map(|x| c.gate(vx(x), &y).unwrap()).collect();
            for x in (0..n).filter(|&x| !y.contains(vx(x))) {
                let nearest = *members.iter().min_by_key(|&&m| (d[x][m], m)).unwrap();
                let best = d[x][nearest];
                ensure(members.iter().filter(|&&m| d[x][m] == best).count() == 1, || format!("{name}: nearest point not unique"))?;
                ensure(gates[x].index() == nearest, || format!("{name}: gate of {} is not the nearest point", c.vertex_name(vx(x))))?;
                for h in c.walls() {
                    let sx = c.side(h, vx(x));
                    let separates_set = members.iter().all(|&m| c.side(h, vx(m)) != sx);
                    let separates_gate = c.side(h, gates[x]) != sx;
                    ensure(separates_set == separates_gate, || {
                        format!("{name}: wall {} breaks the separation criterion at {}", c.wall_name(h), c.vertex_name(vx(x)))
                    })?;
                }
                checked += 1;
            }
            for x in 0..n {
                for z in 0..n {
                    ensure(d[gates[x].index()][gates[z].index()] <= d[x][z], || format!("{name}: gate is not 1-Lipschitz"))?;
                }
            }
        }
    }
    Ok(format!("{} complexes, {checked} (carrier, exterior vertex) pairs", complexes.len()))
}

fn c5_counterexample() -> Outcome {
    let start = Instant::now();
    let sqrt = SublinearFunction::sqrt();
    let mut worst_sqrt_c: f64 = 0.0;
    let mut one_c_at_30 = 0.0;
    for n in 2..=30 {
        let model = TreeOfFlats::generate(n, 2, 2).map_err(|e| e.to_string())?;
        let c = model.complex();
        let t_n = n + n * (n + 1) / 2;
        ensure(model.ray().len() - 1 == t_n, || format!("n={n}: ray length {} != {t_n}", model.ray().len() - 1))?;
        ensure(TreeOfFlats::milestone(n) == t_n, || format!("n={n}: milestone mismatch"))?;
        let end = model.ray()[t_n];
        ensure(model.contact_distance(c.basepoint(), end) == n, || format!("n={n}: contact distance"))?;
        let diam = model.flat_projection_diam(model.ray(), n).map_err(|e| e.to_string())?;
        ensure(diam == n, || format!("n={n}: flat projection diameter {diam}"))?;
        let path = model.ray_path();
        ensure(path.is_geodesic(), || format!("n={n}: ray is not a geodesic"))?;
        let chain = c.chain_along_path(&path, model.c_walls(), &sqrt).map_err(|e| e.to_string())?;
        worst_sqrt_c = worst_sqrt_c.max(chain.c);
        ensure(chain.c <= 3.0, || format!("n={n}: sqrt chain needs c = {}", chain.c))?;
        let ones = c.chain_along_path(&path, model.c_walls(), &SublinearFunction::One).map_err(|e| e.to_string())?;
        ensure(ones.c >= n as f64 / 2.0, || format!("n={n}: constant chain needs only c = {}", ones.c))?;
        if n == 30 {
            one_c_at_30 = ones.c;
            ensure(t_n == 495, || "t_30 != 495".into())?;
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("n = 2..30 exact; max c under sqrt(1+t) = {worst_sqrt_c:.3}; c under 1 at n=30 = {one_c_at_30}"))
}

fn admissible_pairs(c: &CubeComplex, walls: &[Wall], i: usize) -> (Vec<Vertex>, Vec<Vertex>) {
    let left = c.between_walls(walls[i - 2], walls[i - 1]).unwrap();
    let right = c.between_walls(walls[i + 1], walls[i + 2]).unwrap();
    (left.ones().map(vx).collect(), right.ones().map(vx).collect())
}

fn c6_crossing_locality() -> Outcome {
    let mut cases: Vec<(String, CubeComplex, DiscretePath, Vec<Wall>, SublinearFunction)> = Vec::new();
    for (n, am, bm) in [(4, 2, 2), (6, 2, 2), (8, 1, 1)] {
        let model = TreeOfFlats::generate(n, am, bm).unwrap();
        let path = model.ray_path();
        let walls = model.c_walls().to_vec();
        cases.push((format!("tree-of-flats-{n}/{am},{bm}"), model.complex().clone(), path, walls, SublinearFunction::sqrt()));
    }
    for k in [6, 10, 20, 40] {
        let c = gen_staircase(k).unwrap();
        let path = DiscretePath::new(&c, c.named_path("stairs").unwrap()).unwrap();
        let walls = c.named_chain("v-even").unwrap();
        for kappa in [SublinearFunction::One, SublinearFunction::sqrt()] {
            cases.push((format!("staircase-{k}/{kappa}"), c.clone(), path.clone(), walls.clone(), kappa));
        }
    }
    let mut pairs = 0usize;
    let mut geodesics = 0usize;
    for (name, c, path, walls, kappa) in &cases {
        ensure(c.vertex_count() <= 300, || format!("{name}: too large"))?;
        let chain = c.chain_along_path(path, walls, kappa).map_err(|e| format!("{name}: {e}"))?;
        for i in 2..walls.len().saturating_sub(2) {
            let (xs, ys) = admissible_pairs(c, walls, i);
            for &x in &xs {
                for &y in &ys {
                    let report = c.crossing_locality_check(&chain, x, y, 0, 0).map_err(|e| format!("{name}: {e}"))?;
                    ensure(report.index == i, || format!("{name}: wrong interior index"))?;
                    ensure(report.exactness == Exactness::Exact, || format!("{name}: enumeration was not exhaustive"))?;
                    ensure(report.holds, || {
                        format!(
                            "{name}: geodesic {}->{} crosses wall {i} at distance {} > {:.3}",
                            c.vertex_name(x),
                            c.vertex_name(y),
                            report.max_distance,
                            report.bound
                        )
                    })?;
                    pairs += 1;
                    geodesics += report.geodesics_checked;
                }
            }
        }
    }
    Ok(format!("{} chains, {pairs} admissible pairs, {geodesics} geodesics, 0 violations", cases.len()))
}

fn c7_contraction_contrast() -> Outcome {
    let start = Instant::now();
    let sqrt = SublinearFunction::sqrt();
    let mut ray_ratios = Vec::new();
    for n in [10, 15, 20, 25] {
        let model = TreeOfFlats::generate(n, 2, 2).unwrap();
        let c = model.complex();
        let hull = c.hull(&c.vertex_set(model.ray().iter().copied())).unwrap();
        let profile = c.contraction_profile(&hull, &sqrt, SampleSpec::Exhaustive).map_err(|e| e.to_string())?;
        ray_ratios.push(profile.max_ratio);
    }
    let lo = ray_ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ray_ratios.iter().copied().fold(0.0, f64::max);
    ensure(lo > 0.0 && hi <= 2.0 * lo, || format!("ray hull ratios {ray_ratios:?} vary by more than 2x"))?;

    let mut grid_ratios = Vec::new();
    for size in [5, 7, 9, 11, 13, 15] {
        let c = gen_grid(size, size).unwrap();
        let block = c.certify(c.named_set("diag-hull").unwrap()).unwrap();
        let profile = c.contraction_profile(&block, &SublinearFunction::One, SampleSpec::Exhaustive).map_err(|e| e.to_string())?;
        ensure(profile.max_ratio >= size as f64 / 3.0, || format!("grid {size}: ratio {} below size/3", profile.max_ratio))?;
        grid_ratios.push(profile.max_ratio);
    }
    ensure(grid_ratios.windows(2).all(|w| w[1] > w[0]), || format!("grid ratios {grid_ratios:?} do not increase"))?;
    within(Duration::from_secs(60), start)?;
    Ok(format!("ray hull (n=10..25) {ray_ratios:?}; grid block (N=5..15) {grid_ratios:?}"))
}

fn c8_genevois() -> Outcome {
    let mut complexes: Vec<(String, CubeComplex)> =
        gallery_up_to(300).into_iter().filter(|(_, c)| c.dimension() == 2).collect();
    for n in 3..=5 {
        complexes.push((format!("grid-{n}x{n}-cells"), gen_grid(n + 1, n + 1).unwrap()));
    }
    let mut pairs = 0usize;
    let mut literal_failures = Vec::new();
    for (name, c) in &complexes {
        let carriers: Vec<_> = c.walls().map(|w| c.carrier_subset(w)).collect();
        for a in 0..carriers.len() {
            for b in a + 1..carriers.len() {
                if carriers[a].set().intersection(carriers[b].set()).next().is_some() {
                    continue;
                }
                let r = c.genevois_pair_report(&carriers[a], &carriers[b]).map_err(|e| e.to_string())?;
                ensure(r.degree_exactness == Exactness::Exact, || format!("{name}: degree not exact"))?;
                ensure(r.zero_iff_single_vertex, || format!("{name}: sharp duality fails"))?;
                if !r.zero_iff_diam_at_most_one {
                    literal_failures.push(format!(
                        "{name}: {} / {} degree {} diameters ({}, {})",
                        c.wall_name(Wall::from_index(a)),
                        c.wall_name(Wall::from_index(b)),
                        r.degree,
                        r.diam_onto_first,
                        r.diam_onto_second
                    ));
                }
                pairs += 1;
            }
        }
    }
    ensure(literal_failures.is_empty(), || format!("degree 0 <=> diameters <= 1 fails: {}", literal_failures.join("; ")))?;
    for n in 3..=5 {
        let c = gen_grid(n + 1, n + 1).unwrap();
        let y1 = c.carrier_subset(c.wall("wH0").unwrap());
        let y2 = c.carrier_subset(c.wall("wH2").unwrap());
        let r = c.genevois_pair_report(&y1, &y2).unwrap();
        let triple = (r.degree, r.diam_onto_first, r.diam_onto_second);
        ensure(triple == (n, n, n), || format!("{n}x{n} grid: horizontal pair gives {triple:?}"))?;
    }
    Ok(format!("{} complexes, {pairs} disjoint carrier pairs; horizontal pairs (n,n,n) for n=3,4,5", complexes.len()))
}

fn c9_facing_triples() -> Outcome {
    let mut complexes = gallery_up_to(150);
    complexes.push(("tree-of-flats-3".into(), TreeOfFlats::generate(3, 2, 2).unwrap().into_complex()));
    let mut triples_total = 0usize;
    let mut geodesics = 0usize;
    for (name, c) in &complexes {
        let walls: Vec<Wall> = c.walls().collect();
        let m = walls.len();
        let mut facing = HashSet::new();
        for a in 0..m {
            for b in a + 1..m {
                for d in b + 1..m {
                    if c.is_facing_triple(walls[a], walls[b], walls[d]) {
                        facing.insert((a, b, d));
                    }
                }
            }
        }
        triples_total += facing.len();
        for x in c.vertices() {
            for y in c.vertices() {
                let mut crossed_sets: HashSet<WallSet> = HashSet::new();
                let visit = c.visit_geodesics(x, y, u128::MAX, 0, 0, |path| {
                    let mut crossed = WallSet::with_capacity(m);
                    for step in path.windows(2) {
                        crossed.insert(c.separating_walls(step[0], step[1])[0].index());
                    }
                    crossed_sets.insert(crossed);
                });
                geodesics += visit.visited;
                for crossed in &crossed_sets {
                    let ids: Vec<usize> = crossed.ones().collect();
                    for (i, &a) in ids.iter().enumerate() {
                        for (j, &b) in ids.iter().enumerate().skip(i + 1) {
                            for &d in &ids[j + 1..] {
                                ensure(!facing.contains(&(a, b, d)), || {
                                    format!("{name}: a geodesic {}->{} crosses a facing triple", c.vertex_name(x), c.vertex_name(y))
                                })?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{} complexes, {triples_total} facing triples, {geodesics} geodesics", complexes.len()))
}

fn c10_sublinear_calculus() -> Outcome {
    let horizon = 1e6;
    let accepted = [SublinearFunction::One, SublinearFunction::log_power(1.0).unwrap(), SublinearFunction::sqrt()];
    for kappa in &accepted {
        let report = validate_kappa(kappa, horizon, 0.01);
        ensure(report.valid, || format!("{kappa} rejected: {:?}", report.violations))?;
    }
    let linear = SublinearFunction::table(vec![(0.0, 1.0), (1.0, 2.0)]).unwrap();
    let report = validate_kappa(&linear, horizon, 0.01);
    ensure(!report.valid, || "1 + t accepted".into())?;
    let (d1, d2) = sublinear_constants(&SublinearFunction::sqrt(), 2.0, horizon);
    ensure(d1.is_finite() && d2.is_finite() && d1 > 0.0 && d2 > 0.0, || format!("constants ({d1}, {d2})"))?;
    Ok(format!("accepted 1, log2(2+t), sqrt(1+t); rejected 1+t; D1 = {d1:.4}, D2 = {d2:.4}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("metric duality", c1_metric_duality),
        ("median oracle", c2_median_oracle),
        ("hull equivalence and termination", c3_hull_equivalence),
        ("gate characterization", c4_gate_characterization),
        ("Z*Z^2 counterexample", c5_counterexample),
        ("crossing locality", c6_crossing_locality),
        ("contraction contrast", c7_contraction_contrast),
        ("carrier-pair duality", c8_genevois),
        ("facing-triple geodesic exclusion", c9_facing_triples),
        ("sublinear calculus", c10_sublinear_calculus),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let spent = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{spent:.2?}]: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} [{spent:.2?}]: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
