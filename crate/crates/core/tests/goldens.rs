use plumbing::laurent::Laurent;
use plumbing::lifts::{canonical_lift, lift_from_dual};
use plumbing::monoid::{choose_generators, enumerate_box, graded_holes, hole_sets, Quasilinear, Strategy};
use plumbing::polyparts::assemble;
use plumbing::rational::q;
use plumbing::series::{graded_kappa, graded_lifts, rational_form};
use plumbing::Plumbing;

fn gamma_ex() -> Plumbing {
    Plumbing::parse(include_str!("../data/gamma_ex.txt")).unwrap()
}

fn gamma_h9() -> Plumbing {
    Plumbing::parse(include_str!("../data/gamma_h9.txt")).unwrap()
}

fn pinned_ex() -> Strategy {
    Strategy::Pinned(vec![vec![62, 28, 24], vec![84, 42, 36], vec![24, 12, 14]])
}

fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    v.sort();
    v
}

fn laurent(terms: &[(&[i64], i64)]) -> Laurent {
    terms.iter().map(|(e, c)| (e.iter().map(|&x| q(x)).collect(), *c)).collect()
}

#[test]
fn box_and_holes_of_the_trivial_class() {
    let p = gamma_ex();
    let a = canonical_lift(&p, &p.group.zero()).unwrap();
    let gens = choose_generators(&p, std::slice::from_ref(&a), &[0, 0, 0], &pinned_ex()).unwrap();
    let ql = Quasilinear::new(&p, &a);
    let bx = enumerate_box(&ql, &gens);
    assert_eq!(
        bx,
        sorted(vec![
            vec![0, 0, 0],
            vec![12, 6, 7],
            vec![31, 14, 12],
            vec![42, 21, 18],
            vec![43, 20, 19],
            vec![54, 27, 25],
            vec![73, 35, 30],
            vec![85, 41, 37],
        ])
    );
    assert_eq!(
        hole_sets(&ql, &bx, &[0]),
        sorted(vec![vec![31, 14, 12], vec![43, 20, 19], vec![73, 35, 30], vec![85, 41, 37]])
    );
    assert!(hole_sets(&ql, &bx, &[1]).is_empty());
    assert_eq!(
        hole_sets(&ql, &bx, &[2]),
        sorted(vec![vec![12, 6, 7], vec![43, 20, 19], vec![54, 27, 25], vec![85, 41, 37]])
    );
}

#[test]
fn graded_hole_sets_of_the_trivial_class() {
    let p = gamma_ex();
    assert_eq!(p.cls.n_hat, vec![1]);
    let a = canonical_lift(&p, &p.group.zero()).unwrap();
    let gens = choose_generators(&p, &graded_lifts(&p, &a), &graded_kappa(&p), &pinned_ex()).unwrap();
    let k = [0, 0, 0];
    assert_eq!(graded_holes(&p, &a, &gens, &k, &[1]).len(), 8);
    assert_eq!(
        graded_holes(&p, &a, &gens, &k, &[0, 1]),
        sorted(vec![vec![31, 14, 12], vec![43, 20, 19], vec![73, 35, 30], vec![85, 41, 37]])
    );
    assert_eq!(
        graded_holes(&p, &a, &gens, &k, &[1, 2]),
        sorted(vec![vec![12, 6, 7], vec![43, 20, 19], vec![54, 27, 25], vec![85, 41, 37]])
    );
    assert_eq!(graded_holes(&p, &a, &gens, &k, &[0, 1, 2]), vec![vec![43, 20, 19], vec![85, 41, 37]]);
}

#[test]
fn polynomial_part_of_the_integral_homology_sphere() {
    let p = gamma_ex();
    let a = canonical_lift(&p, &p.group.zero()).unwrap();
    let gens = choose_generators(&p, &graded_lifts(&p, &a), &graded_kappa(&p), &pinned_ex()).unwrap();
    let form = rational_form(&p, &a, &gens).unwrap();
    let res = assemble(&p, &a, &gens, &form).unwrap();
    let expected: Vec<[i64; 3]> = vec![
        [-1, 1, -1],
        [61, 29, 23],
        [37, 17, 9],
        [13, 5, -5],
        [7, 2, -2],
        [49, 23, 16],
        [25, 11, 2],
        [1, -1, -12],
        [19, 8, 5],
        [-8, -1, 1],
        [23, 13, 13],
        [43, 20, 19],
        [85, 41, 37],
    ];
    let terms: Vec<(&[i64], i64)> = expected.iter().map(|e| (&e[..], 1)).collect();
    assert_eq!(res.p_h, laurent(&terms), "got {}", res.p_h);
    assert_eq!(res.sw_norm, q(13));
}

#[test]
fn nontrivial_class_of_the_order_nine_example() {
    let p = gamma_h9();
    assert_eq!(p.group.order(), 9);
    assert_eq!(p.group.factors, vec![3, 3]);
    let idx = |s: &str| p.graph.index_of(s).unwrap();
    let mut y = vec![0; p.graph.len()];
    y[idx("v12")] = 1;
    y[idx("v32")] = 1;
    let a = lift_from_dual(&p, &y).unwrap();
    let ql = Quasilinear::new(&p, &a);
    assert_eq!(ql.c(), &[q(18), q(6), q(10)]);
    let gens = choose_generators(
        &p,
        &graded_lifts(&p, &a),
        &graded_kappa(&p),
        &Strategy::Pinned(vec![vec![21, 6, 6], vec![12, 6, 6], vec![6, 3, 9]]),
    )
    .unwrap();
    assert_eq!(
        enumerate_box(&ql, &gens),
        sorted(vec![vec![-14, -4, -8], vec![0, 0, 0], vec![-1, 1, -1]])
    );
    let form = rational_form(&p, &a, &gens).unwrap();
    let shown = form
        .terms
        .iter()
        .map(|t| (t.set.clone(), t.denominators.iter().map(|(n, _)| *n).collect::<Vec<_>>(), t.numerator.to_string()))
        .collect::<Vec<_>>();
    assert_eq!(
        shown,
        vec![
            (vec![1], vec![0, 2], "t^(4,2,2)+t^(17,7,9)+t^(18,6,10)".to_string()),
            (vec![0, 1], vec![2], "-t^(17,7,9)".to_string()),
            (vec![1, 2], vec![0], "-t^(17,7,9)".to_string()),
            (vec![0, 1, 2], vec![], "t^(17,7,9)".to_string()),
        ]
    );
    let res = assemble(&p, &a, &gens, &form).unwrap();
    let expected = laurent(&[(&[17, 7, 9], 1), (&[11, 4, 0], 1), (&[5, 1, -9], 1), (&[-4, 1, 3], 1)]);
    assert_eq!(res.p_h, expected, "got {}", res.p_h);
    assert_eq!(res.sw_norm, q(4));
}

#[test]
fn polynomial_parts_of_single_terms() {
    use plumbing::polyparts::pol_for_set;
    let p = gamma_ex();
    let a = canonical_lift(&p, &p.group.zero()).unwrap();
    let gens = choose_generators(&p, &graded_lifts(&p, &a), &graded_kappa(&p), &pinned_ex()).unwrap();
    let e = |x: &[i64]| x.iter().map(|&t| q(t)).collect::<Vec<_>>();
    assert_eq!(pol_for_set(&p, &e(&[85, 41, 37]), &[0, 2], &gens).unwrap(), laurent(&[(&[-1, 1, -1], 1)]));
    assert_eq!(
        pol_for_set(&p, &e(&[85, 41, 37]), &[2], &gens).unwrap(),
        laurent(&[(&[61, 29, 23], -1), (&[37, 17, 9], -1), (&[13, 5, -5], -1)])
    );
    assert_eq!(pol_for_set(&p, &e(&[43, 20, 19]), &[], &gens).unwrap(), laurent(&[(&[43, 20, 19], 1)]));
}
