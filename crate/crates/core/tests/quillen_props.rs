use std::collections::BTreeMap;

use cdgl_core::lie::TensorPoly;
use cdgl_core::quillen::chains::{aw_delta, drop_degenerate, ez_nabla, TensorChain};
use cdgl_core::quillen::{FiniteSimplicialSet, Lambda, Simplex, Simplicial};
use cdgl_core::scalar::{int, sign};
use cdgl_core::verify::random_complex;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn combination(rng: &mut ChaCha8Rng, basis: &[TensorPoly]) -> TensorPoly {
    let mut x = TensorPoly::zero();
    for b in basis {
        let c: i64 = rng.gen_range(-2..=2);
        x.add_scaled(b, &int(c));
    }
    x
}

fn wedge() -> Lambda {
    Lambda::new(FiniteSimplicialSet::wedge_of_spheres(&[2, 2]), 4, 2).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn lambda_bracket_is_graded_antisymmetric_and_d0_is_a_derivation(seed in any::<u64>(), n in 1usize..=2, m in 1usize..=2) {
        let l = wedge();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = combination(&mut rng, &l.chains[n]);
        let y = combination(&mut rng, &l.chains[m]);
        let xy = l.bracket(n, &x, m, &y);
        let yx = l.bracket(m, &y, n, &x);
        prop_assert_eq!(xy.clone(), yx.scaled(&sign((n * m + 1) as i64)));
        prop_assert!(l.loop_lie.is_normalized(n + m, &xy));
        // d[x,y] = [dx,y] + (-1)^n [x,dy]
        let mut rhs = TensorPoly::zero();
        if n > 1 {
            rhs.add_assign(&l.bracket(n - 1, &l.d(&x), m, &y));
        }
        if m > 1 {
            rhs.add_scaled(&l.bracket(n, &x, m - 1, &l.d(&y)), &sign(n as i64));
        }
        prop_assert_eq!(l.d(&xy), rhs);
    }
}

#[test]
fn lambda_bracket_satisfies_jacobi() {
    let l = wedge();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..4 {
        let xs: Vec<TensorPoly> = (0..3).map(|_| combination(&mut rng, &l.chains[1])).collect();
        let b = |a: &TensorPoly, na, c: &TensorPoly, nc| l.bracket(na, a, nc, c);
        // all degree 1: sign (-1)^{1*1} on each cyclic term
        let mut s = b(&xs[0], 1, &b(&xs[1], 1, &xs[2], 1), 2);
        s.add_assign(&b(&xs[1], 1, &b(&xs[2], 1, &xs[0], 1), 2));
        s.add_assign(&b(&xs[2], 1, &b(&xs[0], 1, &xs[1], 1), 2));
        assert!(s.is_zero());
    }
}

#[test]
fn lambda_differential_squares_to_zero() {
    Lambda::new(FiniteSimplicialSet::sphere(2), 4, 3).unwrap().check_differential().unwrap();
    wedge().check_differential().unwrap();
}

#[test]
fn lambda_of_three_sphere() {
    let s3 = FiniteSimplicialSet::from_json(include_str!("../data/s3.json")).unwrap();
    assert_eq!(Lambda::new(s3, 4, 3).unwrap().homology_dims(), vec![0, 1, 0]);
}

#[test]
fn lambda_rejects_unreduced_input() {
    let interval = FiniteSimplicialSet::from_complex(&[vec![0], vec![1], vec![0, 1]]).unwrap();
    assert!(Lambda::new(interval, 3, 2).err().unwrap().is_input());
}

// Simplices of complexes built from vertex lists are determined by their
// (weakly increasing) vertex sequence.

fn vertices(x: &FiniteSimplicialSet, s: &Simplex) -> Vec<u8> {
    let core: Vec<u8> = x.name(s.core).bytes().map(|b| b - b'0').collect();
    s.eta.iter().map(|&e| core[e as usize]).collect()
}

fn from_vertices(x: &FiniteSimplicialSet, vs: &[u8]) -> Simplex {
    let mut core = vs.to_vec();
    core.dedup();
    let name: String = core.iter().map(|v| v.to_string()).collect();
    let base = x.by_name(&name).expect("image face exists");
    Simplex {
        core: base.core,
        eta: vs.iter().map(|v| core.iter().position(|c| c == v).unwrap() as u8).collect(),
    }
}

/// A weakly increasing vertex map and its image complex.
fn random_map(rng: &mut ChaCha8Rng, x: &FiniteSimplicialSet) -> (FiniteSimplicialSet, Vec<u8>) {
    // vertex labels are below 4 but need not be contiguous
    let mut f: Vec<u8> = (0..4).map(|_| rng.gen_range(0..3u8)).collect();
    f.sort();
    let mut faces = Vec::new();
    for d in 0..=x.max_dim() {
        for s in x.nondegenerate_of_dim(d) {
            let mut img: Vec<u8> = vertices(x, &s).iter().map(|&v| f[v as usize]).collect();
            img.dedup();
            faces.push(img);
        }
    }
    (FiniteSimplicialSet::from_complex(&faces).unwrap(), f)
}

fn push<F: Fn(&Simplex) -> Simplex, G: Fn(&Simplex) -> Simplex>(
    t: &TensorChain<Simplex, Simplex>,
    f: F,
    g: G,
) -> TensorChain<Simplex, Simplex> {
    let mut out: TensorChain<Simplex, Simplex> = BTreeMap::new();
    for ((a, b), c) in t {
        *out.entry((f(a), g(b))).or_insert_with(|| int(0)) += c;
    }
    out.retain(|_, c| *c != int(0));
    out
}

fn random_simplex(rng: &mut ChaCha8Rng, x: &FiniteSimplicialSet, dim: usize) -> Simplex {
    let all = x.simplices(dim);
    all[rng.gen_range(0..all.len())].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nabla_and_delta_are_natural(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (y, z) = (random_complex(&mut rng), random_complex(&mut rng));
        let (y2, f) = random_map(&mut rng, &y);
        let (z2, g) = random_map(&mut rng, &z);
        let fy = |s: &Simplex| from_vertices(&y2, &vertices(&y, s).iter().map(|&v| f[v as usize]).collect::<Vec<_>>());
        let gz = |s: &Simplex| from_vertices(&z2, &vertices(&z, s).iter().map(|&v| g[v as usize]).collect::<Vec<_>>());
        let p = rng.gen_range(0..=2);
        let q = rng.gen_range(0..=2);
        let a = random_simplex(&mut rng, &y, p);
        let b = random_simplex(&mut rng, &z, q);
        let t: TensorChain<Simplex, Simplex> = [((a, b), int(1))].into();
        prop_assert_eq!(push(&ez_nabla(&y, &z, &t), &fy, &gz), ez_nabla(&y2, &z2, &push(&t, &fy, &gz)));
        let n = p.max(q);
        let a = random_simplex(&mut rng, &y, n);
        let b = random_simplex(&mut rng, &z, n);
        let t: TensorChain<Simplex, Simplex> = [((a, b), int(1))].into();
        prop_assert_eq!(push(&aw_delta(&y, &z, &t), &fy, &gz), aw_delta(&y2, &z2, &push(&t, &fy, &gz)));
    }

    #[test]
    fn delta_nabla_is_the_identity_on_reduced_sets(p in 0usize..=2, q in 0usize..=2) {
        let y = FiniteSimplicialSet::wedge_of_spheres(&[1, 2]);
        let z = FiniteSimplicialSet::sphere(2);
        for a in y.simplices(p).into_iter().filter(|s| s.is_nondegenerate()) {
            for b in z.simplices(q).into_iter().filter(|s| s.is_nondegenerate()) {
                let t: TensorChain<Simplex, Simplex> = [((a.clone(), b.clone()), int(1))].into();
                let back = aw_delta(&y, &z, &ez_nabla(&y, &z, &t));
                prop_assert_eq!(drop_degenerate(&y, &z, &back), t);
            }
        }
    }
}

#[test]
fn faces_of_degeneracies_on_spheres() {
    let x = FiniteSimplicialSet::wedge_of_spheres(&[2, 3]);
    for d in 0..=3 {
        for s in x.simplices(d) {
            for j in 0..=d {
                let sj = x.degeneracy(j, &s);
                assert_eq!(x.face(j, &sj), s);
                assert_eq!(x.face(j + 1, &sj), s);
            }
        }
    }
}

#[test]
fn nabla_commutes_with_boundaries_on_a_square() {
    use cdgl_core::quillen::chains::{diagonal_boundary, drop_degenerate_product, single, tensor_boundary};
    let x = FiniteSimplicialSet::from_complex(&[vec![0], vec![1], vec![0, 1]]).unwrap();
    let e = x.by_name("01").unwrap();
    let t = single(&e, &e);
    let lhs = drop_degenerate_product(&x, &x, &diagonal_boundary(&x, &x, &ez_nabla(&x, &x, &t)));
    let rhs = drop_degenerate_product(&x, &x, &ez_nabla(&x, &x, &tensor_boundary(&x, &x, &t)));
    // the boundary of the square: four edges
    assert_eq!(lhs.len(), 4);
    assert_eq!(lhs, rhs);
}
