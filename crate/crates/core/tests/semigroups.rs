mod common;

use num_integer::Integer;
use plumbing::semigroups::{
    curve_from_pair, curve_semigroup, pair_semigroup, poly_mul, seifert_semigroup, torus_knot_alexander,
    NumericalSemigroup,
};
use proptest::prelude::*;

fn brute_membership(gens: &[i64], x: i64) -> bool {
    let mut member = vec![false; x as usize + 1];
    member[0] = true;
    for y in 1..=x as usize {
        member[y] = gens.iter().any(|&g| g as usize <= y && member[y - g as usize]);
    }
    member[x as usize]
}

#[test]
fn poincare_sphere_semigroup() {
    let s = seifert_semigroup(&[2, 3, 5]).unwrap();
    assert_eq!(s.minimal_generators(), vec![6, 10, 15]);
    for x in 0..=100 {
        assert_eq!(s.contains(x), brute_membership(&[6, 10, 15], x), "x = {x}");
    }
}

#[test]
fn seifert_semigroups_are_generated_by_the_complementary_products() {
    for alphas in [[2, 3, 7], [2, 5, 7], [3, 4, 5]] {
        let s = seifert_semigroup(&alphas).unwrap();
        let prod: i64 = alphas.iter().product();
        let gens: Vec<i64> = alphas.iter().map(|a| prod / a).collect();
        assert_eq!(s, NumericalSemigroup::from_generators(&gens).unwrap(), "{alphas:?}");
        assert!(s.is_closed_below(100));
    }
}

#[test]
fn torus_knots() {
    for (p, a) in [(2, 3), (2, 5), (3, 4)] {
        let c = curve_from_pair(p, a).unwrap();
        assert_eq!(c.alexander, torus_knot_alexander(p, a).unwrap());
        assert_eq!(c.delta, (p - 1) * (a - 1) / 2);
        assert_eq!(c.delta, c.semigroup.gaps().len() as i64);
        assert_eq!(-c.polynomial_part.iter().sum::<i64>(), c.delta);
    }
}

#[test]
fn resolution_graphs_with_two_pairs() {
    for (name, gens, delta) in [("curve_4_6_13", [4, 6, 13], 8), ("curve_4_6_15", [4, 6, 15], 9)] {
        let c = curve_semigroup(&common::load_graph(name)).unwrap();
        assert_eq!(c.semigroup.minimal_generators(), gens.to_vec(), "{name}");
        assert_eq!(c.delta, delta, "{name}");
        assert_eq!(-c.polynomial_part.iter().sum::<i64>(), delta);
        assert!(c.semigroup.is_closed_below(80));
    }
}

#[test]
fn arrow_must_sit_on_a_node() {
    let err = plumbing::PlumbingGraph::parse("vertex a -1\nvertex b -2\nedge a b\narrow b\n").unwrap_err();
    assert!(matches!(err, plumbing::Error::ArrowMisplaced(_)));
}

proptest! {
    #[test]
    fn coprime_pairs(p in 2i64..6, a in 2i64..12) {
        prop_assume!(p.gcd(&a) == 1);
        let s = pair_semigroup(p, a).unwrap();
        prop_assert_eq!(&s, &NumericalSemigroup::from_generators(&[p, a]).unwrap());
        let c = curve_from_pair(p, a).unwrap();
        prop_assert_eq!(c.delta, (p - 1) * (a - 1) / 2);
        prop_assert_eq!(&c.alexander, &torus_knot_alexander(p, a).unwrap());
        // symmetric semigroup: x is a member iff conductor - 1 - x is not
        let f = s.frobenius();
        for x in 0..=f {
            prop_assert!(s.contains(x) != s.contains(f - x));
        }
    }

    #[test]
    fn alexander_times_denominators(p in 2i64..6, a in 2i64..12) {
        prop_assume!(p.gcd(&a) == 1);
        // Delta (t^p - 1)(t^a - 1) = (t^{pa} - 1)(t - 1)
        let binom = |d: i64| { let mut v = vec![0; d as usize + 1]; v[0] = -1; v[d as usize] = 1; v };
        let lhs = poly_mul(&poly_mul(&torus_knot_alexander(p, a).unwrap(), &binom(p)), &binom(a));
        prop_assert_eq!(lhs, poly_mul(&binom(p * a), &binom(1)));
    }
}
