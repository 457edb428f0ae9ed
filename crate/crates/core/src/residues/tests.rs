use std::sync::Arc;

use rand::{Rng, SeedableRng};

use super::*;
use crate::cochain::{Chart, Cochain};
use crate::groups::{catalog, centralizer, Family, Subgroup};

fn grp(s: &str) -> Arc<FiniteGroup> {
    Arc::new(catalog(&s.parse::<Family>().unwrap()).unwrap())
}

fn pair(g: &Arc<FiniteGroup>, s: usize) -> ResiduePair {
    ResiduePair::new(centralizer(g, s), s).unwrap()
}

#[test]
fn inertia_residue_of_a_character() {
    // Z/4 with generator 1, character k -> 4k in Z/16
    let e = Engine::new();
    let g = grp("cyclic:4");
    let h1 = e.cohomology(&g, 1, 16).unwrap();
    let chi = Cochain::from_fn(h1.chart(), 16, |t| 4 * t[0] as i64);
    let x = CohClass::new(h1.clone(), h1.class_of_cochain(&chi).unwrap()).unwrap();
    let r = residue(&e, &x, &pair(&g, 1)).unwrap();
    assert_eq!(r.space().eval(&r.params(), &[]), 4);
    // q = 4 kills the residue; the identity pair gives zero
    assert!(r.scale(4).is_zero());
    assert!(residue(&e, &x, &pair(&g, 0)).unwrap().is_zero());
}

#[test]
fn degree_one_residue_is_evaluation() {
    let e = Engine::new();
    let g = grp("symmetric:3");
    let h1 = e.cohomology(&g, 1, 6).unwrap();
    let x = CohClass::generator(h1.clone(), 0);
    let p = x.params();
    for s in g.elements() {
        let r = residue(&e, &x, &pair(&g, s)).unwrap();
        assert_eq!(r.space().eval(&r.params(), &[]), h1.eval(&p, &[s]));
    }
}

#[test]
fn residue_errors() {
    let e = Engine::new();
    let g = grp("symmetric:3");
    let h2 = e.cohomology(&g, 2, 6).unwrap();
    let x = CohClass::zero(h2);
    // a transposition does not centralize the whole group
    let t = (1..6).find(|&s| g.element_order(s) == 2).unwrap();
    let bad2 = ResiduePair::new(Subgroup::whole(g.clone()), t).unwrap();
    assert!(matches!(residue(&e, &x, &bad2), Err(Error::NotCentralizing { .. })));
    let h0 = e.cohomology(&g, 0, 6).unwrap();
    assert!(matches!(residue(&e, &CohClass::zero(h0), &pair(&g, t)), Err(Error::DegreeZero)));
    let h2m = e.cohomology(&g, 2, 2).unwrap();
    let c3 = (1..6).find(|&s| g.element_order(s) == 3).unwrap();
    assert!(matches!(residue(&e, &CohClass::zero(h2m), &pair(&g, c3)), Err(Error::PreconditionViolated(_))));
}

/// Cochain-level residue on an arbitrary representative, for checking
/// independence of the representative.
fn residue_cochain(c: &Cochain, chart: &Chart, dchart: &Chart, inc: &[usize], s: usize) -> Cochain {
    let n = c.degree;
    let m = c.modulus;
    Cochain::from_fn(dchart, m, |t| {
        let mut acc = 0i64;
        for j in 0..n {
            let mut full: Vec<usize> = t[..j].iter().map(|&d| inc[d]).collect();
            full.push(s);
            full.extend(t[j..].iter().map(|&d| inc[d]));
            let v = c.get(chart, &full) as i64;
            acc += if j % 2 == 0 { v } else { -v };
        }
        acc
    })
}

#[test]
fn residue_ignores_coboundary_shifts() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let e = Engine::new();
    for (name, m) in [("dihedral:8", 8u64), ("quaternion:8", 8), ("abelian:2,4", 4)] {
        let g = grp(name);
        let h2 = e.cohomology(&g, 2, m).unwrap();
        let chart = h2.chart().clone();
        for s in g.elements() {
            let p = pair(&g, s);
            let (dg, inc) = p.subgroup.to_group();
            let dh = e.cohomology(&dg, 1, m).unwrap();
            for x in CohClass::generators(&h2) {
                let c = h2.cochain(&x.params());
                let b: Vec<i64> =
                    g.elements().map(|y| if y == g.identity() { 0 } else { rng.gen_range(0..m as i64) }).collect();
                let shifted = Cochain::from_fn(&chart, m, |t| {
                    let (a, bb) = (t[0], t[1]);
                    c.get(&chart, t) as i64 + b[bb] - b[g.mul(a, bb)] + b[a]
                });
                let r0 = residue_cochain(&c, &chart, dh.chart(), inc.map(), s);
                let r1 = residue_cochain(&shifted, &chart, dh.chart(), inc.map(), s);
                let k0 = dh.class_of_cochain(&r0).unwrap();
                assert_eq!(k0, dh.class_of_cochain(&r1).unwrap(), "{name} s={s}");
                assert_eq!(residue(&e, &x, &p).unwrap().coords(), &k0[..]);
            }
        }
    }
}

#[test]
fn residue_is_linear_and_torsion() {
    let e = Engine::new();
    let g = grp("dihedral:8");
    let m = 8;
    let h2 = e.cohomology(&g, 2, m).unwrap();
    let gens = CohClass::generators(&h2);
    for s in g.elements() {
        let p = pair(&g, s);
        let q = g.element_order(s);
        for x in &gens {
            for y in &gens {
                let lhs = residue(&e, &x.scale(3).add(y).unwrap(), &p).unwrap();
                let rhs = residue(&e, x, &p).unwrap().scale(3).add(&residue(&e, y, &p).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
            assert!(residue(&e, x, &p).unwrap().scale(q).is_zero());
        }
    }
}

fn order_of(k: &KernelResult) -> u64 {
    k.structure().factors().iter().product()
}

#[test]
fn nr_kernel_examples() {
    let e = Engine::new();
    for name in ["cyclic:5", "symmetric:3", "dihedral:8", "quaternion:8", "alternating:4"] {
        let g = grp(name);
        let m = g.order() as u64;
        assert_eq!(order_of(&nr_kernel(&e, &g, 1, m, true).unwrap()), 1, "{name}");
    }
    for f in crate::groups::catalog::abelian_types(16) {
        let g = Arc::new(catalog(&Family::Abelian(f.clone())).unwrap());
        let m = g.order() as u64;
        assert_eq!(order_of(&nr_kernel(&e, &g, 2, m, true).unwrap()), 1, "{f:?}");
    }
    assert_eq!(order_of(&nr_kernel(&e, &grp("quaternion:8"), 2, 8, true).unwrap()), 1);
    assert!(matches!(nr_kernel(&e, &grp("cyclic:4"), 0, 4, false), Err(Error::DegreeZero)));
    assert!(matches!(nr_kernel(&e, &grp("cyclic:4"), 2, 6, true), Err(Error::PreconditionViolated(_))));
}

#[test]
fn nab_kernel_examples() {
    let e = Engine::new();
    for name in ["cyclic:6", "abelian:2,4", "elementary:2,3"] {
        let g = grp(name);
        let m = g.order() as u64;
        for n in 1..=3 {
            for fam in [SubgroupFamily::Abelian, SubgroupFamily::Bicyclic] {
                if fam == SubgroupFamily::Bicyclic && name == "elementary:2,3" {
                    continue;
                }
                assert_eq!(order_of(&nab_kernel(&e, &g, n, m, fam, true).unwrap()), 1, "{name} n={n}");
            }
        }
    }
    assert_eq!(order_of(&nab_kernel(&e, &grp("symmetric:3"), 2, 6, SubgroupFamily::Bicyclic, true).unwrap()), 1);
    assert_eq!(order_of(&nab_kernel(&e, &grp("elementary:2,3"), 2, 8, SubgroupFamily::Bicyclic, true).unwrap()), 1);
}

#[test]
fn abelian_family_is_finer_than_bicyclic() {
    let e = Engine::new();
    for name in ["dihedral:8", "quaternion:8", "symmetric:4", "heisenberg:3", "dihedral:16"] {
        let g = grp(name);
        let m = g.order() as u64;
        for n in 2..=3 {
            if n == 3 && g.order() > 16 {
                continue;
            }
            let a = nab_kernel(&e, &g, n, m, SubgroupFamily::Abelian, true).unwrap();
            let b = nab_kernel(&e, &g, n, m, SubgroupFamily::Bicyclic, true).unwrap();
            assert!(a.kernel.is_subgroup_of(&b.kernel), "{name} n={n}");
        }
    }
}

#[test]
fn wider_pair_sets_cut_the_same_kernel() {
    // every D inside Z_G(s), not just the centralizer itself
    let e = Engine::new();
    for name in ["dihedral:8", "symmetric:3", "abelian:2,4"] {
        let g = grp(name);
        let m = g.order() as u64;
        let mut wide = Vec::new();
        for s in g.elements() {
            let z = centralizer(&g, s);
            for d in crate::groups::all_subgroups(&g) {
                if d.is_subgroup_of(&z) {
                    wide.push(ResiduePair::new(d, s).unwrap());
                }
            }
        }
        for n in 2..=3 {
            let narrow = nr_kernel(&e, &g, n, m, true).unwrap();
            let full = nr_kernel_over(&e, &g, n, m, true, &wide).unwrap();
            assert_eq!(narrow.kernel.order(), full.kernel.order(), "{name} n={n}");
            assert!(full.kernel.is_subgroup_of(&narrow.kernel));
        }
    }
}

#[test]
fn bogomolov_examples() {
    let e = Engine::new();
    for name in [
        "cyclic:6",
        "abelian:2,4",
        "elementary:2,3",
        "dihedral:8",
        "quaternion:8",
        "symmetric:4",
        "alternating:4",
        "heisenberg:3",
    ] {
        let g = grp(name);
        let b = bogomolov_multiplier(&e, &g).unwrap();
        assert!(b.multiplier.is_trivial(), "{name}");
    }
}

#[test]
fn negligible_examples() {
    let e = Engine::new();
    let triv = grp("cyclic:1");
    assert!(permutation_negligible(&e, &triv, 1).unwrap().kernel.is_trivial());
    let z2 = grp("cyclic:2");
    let pn = permutation_negligible(&e, &z2, 2).unwrap();
    assert_eq!(pn.kernel.ambient().factors(), &[2]);
    assert_eq!(pn.structure().factors(), &[2]);
    for name in ["cyclic:1", "cyclic:2", "cyclic:3", "elementary:3,2", "cyclic:9"] {
        let h = h3_nr_quotient(&e, &grp(name)).unwrap();
        assert!(h.quotient.is_trivial(), "{name}");
    }
}

#[test]
fn refined_sequence_examples() {
    let e = Engine::new();
    for (name, n) in [
        ("cyclic:4", 2),
        ("abelian:2,2", 3),
        ("symmetric:3", 2),
        ("dihedral:8", 2),
        ("dihedral:8", 3),
        ("quaternion:8", 3),
    ] {
        let g = grp(name);
        let c = refined_sequence_check(&e, &g, n, g.order() as u64).unwrap();
        assert!(c.passed(), "{name} n={n}: {c:?}");
    }
    assert!(refined_sequence_check(&e, &grp("cyclic:2"), 4, 2).is_err());
}

#[test]
fn leibniz_on_z4() {
    let e = Engine::new();
    let g = grp("cyclic:4");
    let h1 = e.cohomology(&g, 1, 4).unwrap();
    let chi = CohClass::generator(h1, 0);
    assert!(residue_cup_check(&e, &pair(&g, 1), &chi, &chi).unwrap());
}

#[test]
fn leibniz_on_random_pairs() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let e = Engine::new();
    for name in ["symmetric:3", "dihedral:8"] {
        let g = grp(name);
        let m = g.order() as u64;
        let spaces: Vec<_> = (1..=2).map(|n| e.cohomology(&g, n, m).unwrap()).collect();
        let random = |rng: &mut rand_chacha::ChaCha8Rng, n: usize| {
            let h = &spaces[n - 1];
            let coords = h.abelian().factors().iter().map(|&d| rng.gen_range(0..d)).collect();
            CohClass::new(h.clone(), coords).unwrap()
        };
        for _ in 0..50 {
            let p = rng.gen_range(1..=2);
            let q = rng.gen_range(1..=3 - p);
            let x = random(&mut rng, p);
            let y = random(&mut rng, q);
            let s = rng.gen_range(0..g.order());
            assert!(residue_cup_check(&e, &pair(&g, s), &x, &y).unwrap(), "{name} p={p} q={q} s={s}");
        }
    }
    let g = grp("cyclic:4");
    let h1 = e.cohomology(&g, 1, 4).unwrap();
    let x = CohClass::generator(h1, 0);
    let h3 = e.cohomology(&g, 3, 4).unwrap();
    assert!(residue_cup_check(&e, &pair(&g, 1), &x, &CohClass::zero(h3)).is_err());
}

#[test]
fn report_is_consistent() {
    let e = Engine::new();
    let g = grp("dihedral:8");
    let r = invariant_report(&e, &g, &ReportOptions::affordable(8)).unwrap();
    assert_eq!(r.b0, Some(vec![]));
    assert_eq!(r.degrees.len(), 3);
    assert_eq!(r.degrees[1].stable, vec![2]);
    assert!(r.validate().is_ok());
}
