use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::engine::Engine;
use crate::exactla::{kernel, ModSubquotient};
use crate::groups::{all_subgroups, catalog, Family, FiniteGroup, GroupHom, Subgroup};

fn grp(s: &str) -> Arc<FiniteGroup> {
    Arc::new(catalog(&s.parse::<Family>().unwrap()).unwrap())
}

/// `Z^n / B^n` straight from the full normalized bar complex.
fn full_route(g: &FiniteGroup, n: usize, m: u64) -> Vec<u64> {
    let dn = coboundary_matrix(g, n, m, u64::MAX).unwrap();
    let z = kernel(&dn);
    let b = if n == 0 {
        crate::exactla::SparseModMatrix::zero(0, 1, m).unwrap()
    } else {
        coboundary_matrix(g, n - 1, m, u64::MAX).unwrap()
    };
    ModSubquotient::new(&z, &b).unwrap().invariant_factors().to_vec()
}

fn chart_route(e: &Engine, g: &Arc<FiniteGroup>, n: usize, m: u64) -> Vec<u64> {
    e.cohomology(g, n, m).unwrap().invariant_factors().to_vec()
}

#[test]
fn chart_agrees_with_full_complex() {
    let e = Engine::new();
    let cases = [
        ("cyclic:1", 3),
        ("cyclic:2", 4),
        ("cyclic:3", 3),
        ("cyclic:4", 3),
        ("cyclic:6", 2),
        ("elementary:2,2", 3),
        ("symmetric:3", 3),
        ("dihedral:8", 2),
        ("quaternion:8", 2),
        ("abelian:2,4", 2),
        ("alternating:4", 2),
    ];
    for (name, top) in cases {
        let g = grp(name);
        for n in 0..=top {
            for m in [2, 3, 4, 6, 12] {
                assert_eq!(chart_route(&e, &g, n, m), full_route(&g, n, m), "{name} n={n} m={m}");
            }
        }
    }
}

#[test]
fn coboundary_squares_to_zero() {
    for name in ["symmetric:3", "quaternion:8", "abelian:2,3"] {
        let g = grp(name);
        for n in 0..3 {
            let a = coboundary_matrix(&g, n, 12, u64::MAX).unwrap();
            let b = coboundary_matrix(&g, n + 1, 12, u64::MAX).unwrap();
            assert!(a.mul(&b).unwrap().is_zero(), "{name} n={n}");
        }
    }
}

#[test]
fn coboundary_budget() {
    let g = grp("dihedral:16");
    assert!(matches!(coboundary_matrix(&g, 5, 2, 1_000_000), Err(crate::Error::BudgetExceeded { .. })));
    let e = Engine::new().with_budget(100);
    assert!(matches!(e.cohomology(&g, 3, 2), Err(crate::Error::BudgetExceeded { .. })));
}

#[test]
fn cyclic_groups() {
    let e = Engine::new();
    for q in 1..=7u64 {
        let g = grp(&format!("cyclic:{q}"));
        for m in [2u64, 3, 4, 6, 8, 9] {
            let d = num_integer::gcd(q, m);
            let want: Vec<u64> = if d > 1 { vec![d] } else { vec![] };
            for n in 1..=4 {
                assert_eq!(chart_route(&e, &g, n, m), want, "q={q} n={n} m={m}");
            }
            assert_eq!(chart_route(&e, &g, 0, m), vec![m]);
        }
    }
}

#[test]
fn small_examples() {
    let e = Engine::new();
    assert_eq!(chart_route(&e, &grp("symmetric:3"), 1, 6), vec![2]);
    assert_eq!(chart_route(&e, &grp("elementary:2,2"), 2, 2), vec![2, 2, 2]);
    assert_eq!(chart_route(&e, &grp("cyclic:1"), 2, 5), Vec::<u64>::new());
}

fn class(e: &Engine, g: &Arc<FiniteGroup>, n: usize, m: u64, j: usize) -> CohClass {
    CohClass::generator(e.cohomology(g, n, m).unwrap(), j)
}

#[test]
fn restriction_from_z4_to_z2() {
    let e = Engine::new();
    let z4 = grp("cyclic:4");
    let h = Subgroup::generated(z4.clone(), &[2]);
    let (hg, inc) = h.to_group();
    let chi = class(&e, &z4, 1, 4, 0);
    let target = e.cohomology(&hg, 1, 4).unwrap();
    assert_eq!(target.invariant_factors(), &[2]);
    let r = pullback(&inc, &chi, &target).unwrap();
    assert!(!r.is_zero());
    assert!(pullback(&inc, &chi.scale(2), &target).unwrap().is_zero());
}

#[test]
fn cup_and_bockstein_on_z2() {
    let e = Engine::new();
    let z2 = grp("cyclic:2");
    let chi = class(&e, &z2, 1, 2, 0);
    let h2 = e.cohomology(&z2, 2, 2).unwrap();
    let sq = cup(&chi, &chi, &h2).unwrap();
    assert!(!sq.is_zero());
    assert_eq!(bockstein(&chi, &h2).unwrap(), sq);
    let h3 = e.cohomology(&z2, 3, 2).unwrap();
    assert!(bockstein(&sq, &h3).unwrap().is_zero());
}

#[test]
fn bockstein_squares_to_zero() {
    let e = Engine::new();
    for (name, m) in [("elementary:2,2", 2), ("abelian:2,4", 4), ("dihedral:8", 2), ("symmetric:3", 6)] {
        let g = grp(name);
        let h1 = e.cohomology(&g, 1, m).unwrap();
        let h2 = e.cohomology(&g, 2, m).unwrap();
        let h3 = e.cohomology(&g, 3, m).unwrap();
        for x in CohClass::generators(&h1) {
            let b = bockstein(&x, &h2).unwrap();
            assert!(bockstein(&b, &h3).unwrap().is_zero(), "{name}");
        }
    }
}

#[test]
fn graded_commutativity() {
    let e = Engine::new();
    for (name, m) in [("elementary:2,2", 2), ("abelian:2,4", 4), ("dihedral:8", 4), ("abelian:3,3", 3)] {
        let g = grp(name);
        for (p, q) in [(1, 1), (1, 2)] {
            let hp = e.cohomology(&g, p, m).unwrap();
            let hq = e.cohomology(&g, q, m).unwrap();
            let hpq = e.cohomology(&g, p + q, m).unwrap();
            let sign = if (p * q) % 2 == 0 { 1 } else { m - 1 };
            for x in CohClass::generators(&hp) {
                for y in CohClass::generators(&hq) {
                    let xy = cup(&x, &y, &hpq).unwrap();
                    let yx = cup(&y, &x, &hpq).unwrap();
                    assert_eq!(xy, yx.scale(sign), "{name} p={p} q={q}");
                }
            }
        }
    }
}

#[test]
fn transfer_after_restriction_is_index() {
    let e = Engine::new();
    for (name, n, m) in [("symmetric:3", 1, 6), ("symmetric:3", 2, 6), ("dihedral:8", 2, 4), ("alternating:4", 1, 6)] {
        let g = grp(name);
        let hn = e.cohomology(&g, n, m).unwrap();
        for h in all_subgroups(&g) {
            let (hg, inc) = h.to_group();
            let hh = e.cohomology(&hg, n, m).unwrap();
            for x in CohClass::generators(&hn) {
                let r = pullback(&inc, &x, &hh).unwrap();
                let c = transfer(&inc, &r, &hn).unwrap();
                assert_eq!(c, x.scale(h.index() as u64), "{name} order {}", h.order());
            }
        }
    }
}

#[test]
fn transfer_ignores_choice_of_representatives() {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let e = Engine::new();
    let g = grp("dihedral:8");
    for h in all_subgroups(&g) {
        let (hg, inc) = h.to_group();
        let hh = e.cohomology(&hg, 2, 2).unwrap();
        let target = e.cohomology(&g, 2, 2).unwrap();
        let base = right_coset_reps(&inc);
        let hs: Vec<usize> = inc.map().to_vec();
        for x in CohClass::generators(&hh) {
            let want = transfer(&inc, &x, &target).unwrap();
            for _ in 0..3 {
                let mut reps: Vec<usize> = base.iter().map(|&t| g.mul(hs[rng.gen_range(0..hs.len())], t)).collect();
                reps.shuffle(&mut rng);
                assert_eq!(transfer_with_reps(&inc, &x, &target, &reps).unwrap(), want);
            }
        }
    }
}

#[test]
fn pullback_along_identity_and_projection() {
    let e = Engine::new();
    let g = grp("abelian:2,4");
    let h2 = e.cohomology(&g, 2, 4).unwrap();
    let id = GroupHom::identity(g.clone());
    for x in CohClass::generators(&h2) {
        assert_eq!(pullback(&id, &x, &h2).unwrap(), x);
    }
    // the trivial map kills positive-degree classes
    let z3 = grp("cyclic:3");
    let triv = GroupHom::trivial(z3.clone(), g.clone());
    let t = e.cohomology(&z3, 2, 4).unwrap();
    for x in CohClass::generators(&h2) {
        assert!(pullback(&triv, &x, &t).unwrap().is_zero());
    }
}

#[test]
fn expanded_generators_are_cocycles() {
    let e = Engine::new();
    for (name, n, m) in [("symmetric:3", 2, 6), ("quaternion:8", 2, 8), ("elementary:2,2", 3, 2)] {
        let g = grp(name);
        let h = e.cohomology(&g, n, m).unwrap();
        let d = coboundary_matrix(&g, n, m, u64::MAX).unwrap();
        for j in 0..h.abelian().rank() {
            let c = h.cochain(&h.generator_params(j));
            assert!(d.apply_row(&c.values).iter().all(|&v| v == 0), "{name}");
            let mut want = vec![0; h.abelian().rank()];
            want[j] = 1;
            assert_eq!(h.class_of_cochain(&c).unwrap(), want);
        }
        // a coboundary is the zero class, a non-cocycle is rejected
        let chart = h.chart();
        let db = Cochain::from_fn(chart, m, |t| {
            let f = |x: usize| if x == g.identity() { 0 } else { (x * 7 + 1) as i64 };
            match t {
                [a, b] => f(*b) - f(g.mul(*a, *b)) + f(*a),
                [a, b, c] => f2(&g, *b, *c) - f2(&g, g.mul(*a, *b), *c) + f2(&g, *a, g.mul(*b, *c)) - f2(&g, *a, *b),
                _ => unreachable!(),
            }
        });
        assert!(h.class_of_cochain(&db).unwrap().iter().all(|&x| x == 0), "{name}");
        let mut bad = db.clone();
        bad.values[0] = (bad.values[0] + 1) % m;
        assert!(h.class_of_cochain(&bad).is_err());
    }
}

/// A normalized 2-cochain for building coboundaries.
fn f2(g: &FiniteGroup, a: usize, b: usize) -> i64 {
    if a == g.identity() || b == g.identity() {
        0
    } else {
        (a * 3 + b * 5) as i64
    }
}

fn order_of(factors: &[u64]) -> u64 {
    factors.iter().product()
}

#[test]
fn stabilized_matches_integral() {
    // H^n(G, Q/Z) = H^{n+1}(G, Z) for n >= 1
    let e = Engine::new();
    for name in
        ["cyclic:4", "elementary:2,2", "symmetric:3", "dihedral:8", "quaternion:8", "abelian:2,4", "abelian:3,3"]
    {
        let g = grp(name);
        for n in 1..=2 {
            let s = e.stable_default(&g, n).unwrap();
            let (_, tors) = integral_cohomology(&g, n + 1, 4_000_000).unwrap();
            let want: BigInt = tors.iter().product();
            assert_eq!(BigInt::from(order_of(s.invariant_factors())), want, "{name} n={n}");
        }
    }
}

#[test]
fn stabilized_examples() {
    let e = Engine::new();
    let f = |name: &str, n| e.stable_default(&grp(name), n).unwrap().invariant_factors().to_vec();
    assert_eq!(f("cyclic:6", 2), Vec::<u64>::new());
    assert_eq!(f("cyclic:6", 3), vec![6]);
    assert_eq!(f("elementary:2,2", 2), vec![2]);
    assert_eq!(f("quaternion:8", 2), Vec::<u64>::new());
    assert_eq!(f("dihedral:8", 2), vec![2]);
    assert_eq!(f("symmetric:3", 1), vec![2]);
    assert_eq!(f("abelian:3,3", 2), vec![3]);
}

#[test]
fn integral_examples() {
    let g = grp("dihedral:8");
    let (_, h3) = integral_cohomology(&g, 3, 4_000_000).unwrap();
    assert_eq!(h3, vec![BigInt::from(2)]);
    let (_, h2) = integral_cohomology(&g, 2, 4_000_000).unwrap();
    assert_eq!(h2, vec![BigInt::from(2), BigInt::from(2)]);
    assert_eq!(integral_cohomology(&g, 0, 10).unwrap(), (1, vec![]));
    assert_eq!(integral_cohomology(&g, 1, 10).unwrap(), (0, vec![]));
}

fn small_group() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["cyclic:4", "elementary:2,2", "symmetric:3", "abelian:2,4", "dihedral:8", "cyclic:6"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cup_is_bilinear(name in small_group(), a in 0u64..12, b in 0u64..12, m in prop::sample::select(vec![2u64, 4, 6])) {
        let e = Engine::new();
        let g = grp(name);
        let h1 = e.cohomology(&g, 1, m).unwrap();
        let h2 = e.cohomology(&g, 2, m).unwrap();
        let gens = CohClass::generators(&h1);
        prop_assume!(!gens.is_empty());
        let x = gens[0].scale(a).add(&gens[gens.len() - 1].scale(b)).unwrap();
        let y = gens[gens.len() - 1].clone();
        let lhs = cup(&x, &y, &h2).unwrap();
        let rhs = cup(&gens[0], &y, &h2).unwrap().scale(a)
            .add(&cup(&gens[gens.len() - 1], &y, &h2).unwrap().scale(b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn classes_round_trip(name in small_group(), n in 1usize..=2, m in prop::sample::select(vec![2u64, 3, 4, 12]), seed in any::<u64>()) {
        let e = Engine::new();
        let g = grp(name);
        let h = e.cohomology(&g, n, m).unwrap();
        let coords: Vec<u64> = h.abelian().factors().iter().enumerate()
            .map(|(i, &d)| (seed >> (8 * i)) % d).collect();
        let x = CohClass::new(h.clone(), coords.clone()).unwrap();
        prop_assert_eq!(h.coordinates(&x.params()).unwrap(), coords.clone());
        prop_assert_eq!(h.class_of_cochain(&h.cochain(&x.params())).unwrap(), coords);
    }
}
