mod common;

use cdgl_core::cosimplicial::{BuildOptions, Tower};
use cdgl_core::lie::{FreeCdglPresentation, Generator, LieElement, TensorPoly};
use cdgl_core::quillen::Simplicial;
use cdgl_core::realization::{check_phi, Comparison, HomologyClass, Realization, RealizationSimplex};
use cdgl_core::scalar::int;
use common::{br, leaf};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn tower() -> Tower {
    static T: OnceLock<Tower> = OnceLock::new();
    T.get_or_init(|| Tower::build(4, BuildOptions::new(3)).unwrap()).clone()
}

/// `(L(v, u), du = [v,v])` with `|v| = 1`, `|u| = 3`.
fn with_differential(n: usize) -> FreeCdglPresentation {
    let gens = vec![Generator::new("v", 1), Generator::new("u", 3)];
    let du = LieElement::from_tree(br(leaf(0), leaf(0)), int(1));
    FreeCdglPresentation::new(gens, n, vec![LieElement::zero(), du]).unwrap()
}

fn free_vw(n: usize) -> FreeCdglPresentation {
    FreeCdglPresentation::free(vec![Generator::new("v", 1), Generator::new("w", 1)], n).unwrap()
}

fn random_element(rng: &mut ChaCha8Rng, p: &FreeCdglPresentation, degree: i32) -> TensorPoly {
    let mut basis = p.lie_basis();
    let letters = p.all_letters();
    let mut x = TensorPoly::zero();
    for k in 1..=p.truncation() {
        for (_, e) in basis.basis_with_expansions(&letters, k, degree) {
            x.add_scaled(&e, &int(rng.gen_range(-2..=2)));
        }
    }
    x
}

fn check_identities(r: &Realization, s: &RealizationSimplex) {
    let n = r.dim(s);
    for j in 0..=n {
        for i in 0..j {
            assert_eq!(r.face(i, &r.face(j, s)), r.face(j - 1, &r.face(i, s)), "d{i} d{j}");
        }
    }
    for j in 0..=n {
        let sj = r.degeneracy(j, s);
        assert_eq!(r.face(j, &sj), *s);
        assert_eq!(r.face(j + 1, &sj), *s);
        for i in 0..j {
            assert_eq!(r.face(i, &sj), r.degeneracy(j - 1, &r.face(i, s)));
        }
        for i in j + 2..=n + 1 {
            assert_eq!(r.face(i, &sj), r.degeneracy(j, &r.face(i - 1, s)));
        }
        for i in 0..=j {
            assert_eq!(r.degeneracy(i, &sj), r.degeneracy(j + 1, &r.degeneracy(i, s)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn witnesses_satisfy_the_simplicial_identities_and_stay_valid(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for target in [with_differential(4), free_vw(4)] {
            let r = Realization::new(target.clone(), Some(tower()));
            let x = random_element(&mut rng, &target, n as i32);
            let w = r.surjectivity_witness(n, &x).unwrap();
            check_identities(&r, &w);
            for i in 0..=n + 1 {
                r.make_simplex(r.face(i, &w)).unwrap();
            }
            if n + 2 <= 4 {
                for j in 0..=n + 1 {
                    r.make_simplex(r.degeneracy(j, &w)).unwrap();
                }
            }
        }
    }

    #[test]
    fn rho_is_additive_on_witnesses(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = free_vw(4);
        let r = Realization::new(target.clone(), Some(tower()));
        let x = random_element(&mut rng, &target, n as i32);
        let y = random_element(&mut rng, &target, n as i32);
        let coords = |z: &TensorPoly| {
            let c = r.rho(&r.surjectivity_witness(n, z).unwrap()).unwrap();
            r.class_coordinates(&c).unwrap()
        };
        let sum: Vec<_> = coords(&x).iter().zip(coords(&y)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(coords(&x.plus(&y)), sum);
    }
}

#[test]
fn rho_of_the_basepoint_and_of_witnesses() {
    let target = with_differential(4);
    let r = Realization::new(target.clone(), Some(tower()));
    for n in 1..=3 {
        assert!(r.rho(&r.basepoint(n)).unwrap().representative.is_zero());
    }
    let v = TensorPoly::letter(0);
    let c = r.rho(&r.surjectivity_witness(1, &v).unwrap()).unwrap();
    assert!(r.same_class(&c, &HomologyClass { degree: 1, representative: v.clone() }).unwrap());
    // [v,v] is a boundary here, so its witness lands in the zero class
    let vv = target.bracket(&v, &v);
    let c = r.rho(&r.surjectivity_witness(2, &vv).unwrap()).unwrap();
    assert!(r.class_coordinates(&c).unwrap().iter().all(|x| *x == int(0)));
}

#[test]
fn phi_passes_on_a_dgl_with_nonzero_differential() {
    let report = check_phi(&with_differential(4), tower(), 21, 3).unwrap();
    assert!(report.cases.len() >= 40);
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
}

#[test]
fn phi_vanishes_on_degenerate_leaves_and_level_one_brackets() {
    let target = free_vw(4);
    let c = Comparison::new(Realization::new(target, None));
    let r = c.realization();
    let wv = r.surjectivity_witness(1, &TensorPoly::letter(0)).unwrap();
    let ww = r.surjectivity_witness(1, &TensorPoly::letter(1)).unwrap();
    assert!(c.leaf(&r.degeneracy(0, &wv)).is_zero());
    let x = c.leaf(&wv).bracket(&c.leaf(&ww), 4);
    assert!(c.phi(1, &x).unwrap().is_zero());
    assert_eq!(c.phi(1, &c.leaf(&wv)).unwrap(), TensorPoly::letter(0));
}

#[test]
fn invalid_assignments_are_reported_per_generator() {
    let target = with_differential(4);
    let r = Realization::new(target, Some(tower()));
    // a01234 -> u without a1234 -> du
    let s = r.assignment(4, &[("a01234", TensorPoly::letter(1))]).unwrap();
    let res = r.residues(&s).unwrap();
    assert_eq!(res.len(), 1);
    assert_eq!(res[0].generator, "a01234");
    assert!(r.make_simplex(s).is_err());
}
