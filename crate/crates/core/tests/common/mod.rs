#![allow(dead_code)]

use plumbing::graph::{PlumbingGraph, Vertex};
use plumbing::Plumbing;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn load(name: &str) -> Plumbing {
    let path = format!("{}/data/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    Plumbing::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn load_graph(name: &str) -> PlumbingGraph {
    let path = format!("{}/data/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    PlumbingGraph::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// A negative definite tree with 2 or 3 nodes, at most `max_vertices`
/// vertices and |H| <= `max_det`; draws are retried until all hold.
pub fn random_tree(seed: u64, max_vertices: usize, max_det: i64) -> Plumbing {
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        if let Some(p) = attempt(&mut rng, max_vertices) {
            if p.lattice.det <= max_det {
                return p;
            }
        }
    }
}

fn attempt(rng: &mut StdRng, max_vertices: usize) -> Option<Plumbing> {
    let nodes = rng.gen_range(2..=3);
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let add = |vertices: &mut Vec<Vertex>, id: String, b: i64| {
        vertices.push(Vertex { id: id.clone(), b });
        id
    };
    let node_ids: Vec<String> =
        (0..nodes).map(|i| add(&mut vertices, format!("n{}", i + 1), rng.gen_range(-3..=-1))).collect();
    // nodes on a path n1 - n2 (- n3)
    let mut degree = vec![0usize; nodes];
    for i in 0..nodes - 1 {
        let len = rng.gen_range(0..=2);
        let mut prev = node_ids[i].clone();
        for j in 0..len {
            let id = add(&mut vertices, format!("c{}{}", i + 1, j + 1), rng.gen_range(-5..=-2));
            edges.push((prev, id.clone()));
            prev = id;
        }
        edges.push((prev, node_ids[i + 1].clone()));
        degree[i] += 1;
        degree[i + 1] += 1;
    }
    for (i, n) in node_ids.iter().enumerate() {
        let legs = 3usize.saturating_sub(degree[i]) + rng.gen_range(0..=1);
        for j in 0..legs {
            let len = rng.gen_range(1..=2);
            let mut prev = n.clone();
            for t in 0..len {
                let id = add(&mut vertices, format!("e{}{}{}", i + 1, j + 1, t + 1), rng.gen_range(-4..=-2));
                edges.push((prev, id.clone()));
                prev = id;
            }
        }
    }
    if vertices.len() > max_vertices {
        return None;
    }
    let g = PlumbingGraph::from_parts(vertices, edges, vec![]).ok()?;
    let p = Plumbing::new(g).ok()?;
    (p.num_nodes() == nodes).then_some(p)
}

use plumbing::lifts::{canonical_lift, lift_from_dual, ReducedLift};
use plumbing::monoid::{
    choose_generators, enumerate_box, enumerate_box_scan, scan_region, GeneratorSet, Membership, Quasilinear,
    Strategy,
};
use plumbing::oracle::sw_norm_oracle;
use plumbing::polyparts::sw_for_lift;
use plumbing::rational::{floor_q, mat_vec, q, Q};
use plumbing::series::{
    expand_alternative, expand_direct, graded_kappa, graded_lifts, module_levels, rational_form,
    rational_form_modules,
};

pub fn fixtures() -> Vec<(String, Plumbing)> {
    let mut out: Vec<(String, Plumbing)> =
        ["gamma_ex", "gamma_h9"].iter().map(|n| (n.to_string(), load(n))).collect();
    for seed in 0..3 {
        out.push((format!("random tree {seed}"), random_tree(seed, 12, 12)));
    }
    out
}

/// The determinant identities and Seifert relations.
pub fn identity_failures(p: &Plumbing) -> Vec<String> {
    let g = &p.graph;
    let n = g.len();
    let d = &p.lattice;
    let mut bad = Vec::new();
    for v in 0..n {
        for w in 0..n {
            let path = g.path(v, w);
            let s = path.len();
            let det = |i: usize, j: usize, open_i: bool, open_j: bool| g.path_det(path[i], path[j], open_i, open_j);
            for i in 0..s {
                for j in i..s {
                    for k in j..s {
                        for l in k..s {
                            // [v,w') (w,v'] = [v,v'] (w,w') + [v,w) (w',v']
                            let lhs = det(i, k, false, true) * det(j, l, true, false);
                            let rhs =
                                det(i, l, false, false) * det(j, k, true, true) + det(i, j, false, true) * det(k, l, true, false);
                            if lhs != rhs {
                                bad.push(format!("chain identity on {:?} at {i},{j},{k},{l}", path));
                            }
                        }
                    }
                }
            }
            let expected = Q::new(g.det_complement_of_path(v, w), d.det);
            if -d.inverse[v][w] != expected {
                bad.push(format!("-(E*_{v}, E*_{w}) != det complement / det"));
            }
        }
    }
    for l in &p.seifert.legs {
        if l.omega * l.omega_tilde != l.alpha * l.tau + 1 {
            bad.push(format!("leg at end {}: omega omega~ != alpha tau + 1", l.end));
        }
    }
    for c in &p.seifert.chains {
        if c.omega_lo * c.omega_hi != c.alpha * c.tau + 1 {
            bad.push(format!("chain {}-{}: omega omega~ != alpha tau + 1", c.lo, c.hi));
        }
    }
    let k = p.num_nodes();
    for i in 0..k {
        for j in 0..k {
            if p.seifert.iorb_inverse[i][j] != d.inverse[p.cls.nodes[i]][p.cls.nodes[j]] {
                bad.push(format!("(I^orb)^-1 entry ({i},{j})"));
            }
        }
    }
    let neg: Vec<Vec<Q>> = p.seifert.iorb.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let det_orb = plumbing::rational::inverse_det(&neg).unwrap().1;
    let rest: Vec<usize> = (0..n).filter(|&v| p.cls.node_of_vertex[v].is_none()).collect();
    if det_orb * q(g.subgraph_det(&rest)) != q(d.det) {
        bad.push("det != det(-I^orb) det(G - N)".into());
    }
    bad
}

fn lambda(gens: &GeneratorSet, ql: &Quasilinear, l: &[i64]) -> Vec<i64> {
    let k = l.len();
    let cols: Vec<Vec<Q>> = (0..k).map(|i| (0..k).map(|j| q(gens.vectors[j][i])).collect()).collect();
    let inv = plumbing::rational::inverse_det(&cols).unwrap().0;
    let x: Vec<Q> = (0..k).map(|i| q(l[i]) + ql.c()[i]).collect();
    mat_vec(&inv, &x).iter().map(floor_q).collect()
}

/// The decomposition of the normalization and of the holes checked point by
/// point in the region 0 <= c + l <= 2 max v, and M_a(k) = M_{a-k}.
pub fn structure_failures(p: &Plumbing, a: &ReducedLift, gens: &GeneratorSet) -> Vec<String> {
    let mut bad = Vec::new();
    let k = p.num_nodes();
    let ql = Quasilinear::new(p, a);
    let bx = enumerate_box(&ql, gens);
    if bx != enumerate_box_scan(&ql, gens) {
        bad.push("box enumeration disagrees with the scan".into());
    }
    let bound = 2 * gens.vectors.iter().flatten().copied().max().unwrap();
    let c = ql.c().to_vec();
    let lo: Vec<i64> = c.iter().map(|x| (-x).ceil().to_integer()).collect();
    let hi: Vec<i64> = c.iter().map(|x| floor_q(&(q(bound) - x)) + 1).collect();
    let levels = module_levels(p);
    let mut holes = 0;
    scan_region(&lo, &hi, &mut |l| {
        if !ql.in_lattice(l) {
            return;
        }
        if ql.membership(l).unwrap() == Membership::Hole {
            holes += 1;
        }
        let lam = lambda(gens, &ql, l);
        let base: Vec<i64> = (0..k)
            .map(|i| l[i] - (0..k).map(|n| lam[n] * gens.vectors[n][i]).sum::<i64>())
            .collect();
        if bx.binary_search(&base).is_err() {
            bad.push(format!("{l:?} does not reduce into the box"));
            return;
        }
        let member = ql.membership(l).unwrap();
        let in_normalization = lam.iter().all(|&x| x >= 0);
        if (member != Membership::Outside) != in_normalization {
            bad.push(format!("{l:?}: normalization decomposition"));
        }
        if in_normalization {
            for n in 0..k {
                let negative = ql.value(l, n) < 0;
                let from_face = lam[n] == 0 && ql.value(&base, n) < 0;
                if negative != from_face {
                    bad.push(format!("{l:?}: hole decomposition at node {n}"));
                }
            }
        }
        for (kk, _) in &levels {
            let shifted = Quasilinear::new(p, &a.minus_nodes(p, kk));
            if shifted.in_lattice(l) != ql.in_lattice(l) {
                bad.push(format!("Z^N(a) != Z^N(a - k) at {l:?}"));
            }
            let filtered = member == Membership::InModule && (0..k).all(|n| ql.value(l, n) >= kk[n]);
            let shifted_member = (0..k).all(|n| shifted.value(l, n) >= 0) && shifted.membership(l).unwrap() != Membership::Outside;
            if filtered != shifted_member {
                bad.push(format!("M_a(k) != M_(a-k) at {l:?}, k = {kk:?}"));
            }
        }
    });
    if holes == 0 && !bx.iter().all(|l| (0..k).all(|n| ql.value(l, n) >= 0)) {
        bad.push("the region contains no holes although the box does".into());
    }
    bad.truncate(10);
    bad
}

/// Direct, alternative and both rational expansions agree up to `bound`.
pub fn series_failures(p: &Plumbing, bound: i64) -> Vec<String> {
    let mut bad = Vec::new();
    for h in p.group.elements() {
        let a = canonical_lift(p, &h).unwrap();
        let direct = expand_direct(p, &a, bound).unwrap();
        if expand_alternative(p, &a, bound).unwrap() != direct {
            bad.push(format!("class {h:?}: alternative expansion"));
        }
        let gens = choose_generators(p, &graded_lifts(p, &a), &graded_kappa(p), &Strategy::Small).unwrap();
        if rational_form(p, &a, &gens).unwrap().expand(bound) != direct {
            bad.push(format!("class {h:?}: graded rational form"));
        }
        let lifts = plumbing::series::module_lifts(p, &a);
        let mgens = choose_generators(p, &lifts, &vec![0; p.num_nodes()], &Strategy::Small).unwrap();
        if rational_form_modules(p, &a, &mgens).unwrap().expand(bound) != direct {
            bad.push(format!("class {h:?}: module rational form"));
        }
    }
    bad
}

/// sw^norm from P_h(1) against the counting-function oracle at two points.
pub fn sw_failures(p: &Plumbing) -> Vec<String> {
    let mut bad = Vec::new();
    for h in p.group.elements() {
        let a = canonical_lift(p, &h).unwrap();
        let sw = sw_for_lift(p, &a, &Strategy::Small).unwrap().sw_norm;
        let oracle = sw_norm_oracle(p, &h).unwrap();
        if oracle.len() != 2 || oracle.iter().any(|x| *x != sw) {
            bad.push(format!("class {h:?}: P_h(1) = {sw}, oracle {oracle:?}"));
        }
    }
    bad
}

/// sw^norm under the proof and pinned strategies and under a second lift
/// of every class.
pub fn independence_failures(p: &Plumbing) -> Vec<String> {
    let mut bad = Vec::new();
    for h in p.group.elements() {
        let a = canonical_lift(p, &h).unwrap();
        let reference = sw_for_lift(p, &a, &Strategy::Proof).unwrap();
        let small = sw_for_lift(p, &a, &Strategy::Small).unwrap();
        let pinned = sw_for_lift(p, &a, &Strategy::Pinned(small.generators.vectors.clone())).unwrap();
        let other = lift_from_dual(p, &p.group.small_lift(&h)).unwrap();
        let shifted = sw_for_lift(p, &other, &Strategy::Proof).unwrap();
        for (name, r) in [("pinned", &pinned), ("second lift", &shifted)] {
            if r.sw_norm != reference.sw_norm {
                bad.push(format!("class {h:?}: {name} gives {} instead of {}", r.sw_norm, reference.sw_norm));
            }
        }
        for (name, r) in [("generators", &pinned), ("lift", &shifted)] {
            if r.p_h != reference.p_h {
                bad.push(format!("class {h:?}: P_h depends on the {name}"));
            }
        }
    }
    bad
}
