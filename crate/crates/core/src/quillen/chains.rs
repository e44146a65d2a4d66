//! Shuffles and the Eilenberg-Zilber / Alexander-Whitney maps on `Q[Y] (x) Q[Z]`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::sset::Simplicial;
use crate::scalar::Scalar;

/// An `(n,m)`-shuffle: `mu` and `nu` split `{0..n+m-1}` into increasing parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
    /// Sign of the permutation `(mu_1..mu_n, nu_1..nu_m)`.
    pub sign: i8,
}

/// All `C(n+m, n)` shuffles in lexicographic order of `mu`.
pub fn shuffles(n: usize, m: usize) -> Vec<Shuffle> {
    let total = n + m;
    let mut out = Vec::new();
    let mut mu = Vec::with_capacity(n);
    fn rec(start: usize, n: usize, total: usize, mu: &mut Vec<usize>, out: &mut Vec<Shuffle>) {
        if mu.len() == n {
            let nu: Vec<usize> = (0..total).filter(|i| !mu.contains(i)).collect();
            // inversions: each mu_i sits after mu_i - i entries of nu
            let inv: usize = mu.iter().enumerate().map(|(i, &x)| x - i).sum();
            out.push(Shuffle {
                mu: mu.clone(),
                nu,
                sign: if inv % 2 == 0 { 1 } else { -1 },
            });
            return;
        }
        for x in start..total {
            mu.push(x);
            rec(x + 1, n, total, mu, out);
            mu.pop();
        }
    }
    rec(0, n, total, &mut mu, &mut out);
    out
}

/// `s_{w_k} ... s_{w_1} x` for an increasing word `w`.
pub fn degenerate<X: Simplicial>(space: &X, word: &[usize], x: &X::Simplex) -> X::Simplex {
    word.iter().fold(x.clone(), |acc, &i| space.degeneracy(i, &acc))
}

/// `d_{k+1} ... d_n x`: the front `k`-face.
pub fn front_face<X: Simplicial>(space: &X, k: usize, x: &X::Simplex) -> X::Simplex {
    let n = space.dim(x);
    (k + 1..=n).rev().fold(x.clone(), |acc, i| space.face(i, &acc))
}

/// `d_0^k x`: the back face.
pub fn back_face<X: Simplicial>(space: &X, k: usize, x: &X::Simplex) -> X::Simplex {
    (0..k).fold(x.clone(), |acc, _| space.face(0, &acc))
}

pub type Chain<S> = BTreeMap<S, Scalar>;
pub type TensorChain<A, B> = BTreeMap<(A, B), Scalar>;

fn add<K: Ord>(m: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    *m.entry(k).or_insert_with(Scalar::zero) += c;
}

fn prune<K: Ord>(mut m: BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
    m.retain(|_, c| !c.is_zero());
    m
}

/// `sum (-1)^i d_i` on unnormalized chains.
pub fn boundary<X: Simplicial>(space: &X, c: &Chain<X::Simplex>) -> Chain<X::Simplex> {
    let mut out = BTreeMap::new();
    for (x, a) in c {
        let n = space.dim(x);
        if n == 0 {
            continue;
        }
        for i in 0..=n {
            let s = if i % 2 == 0 { a.clone() } else { -a.clone() };
            add(&mut out, space.face(i, x), s);
        }
    }
    prune(out)
}

/// Boundary of the diagonal simplicial vector space `(V (x) W)_n`.
pub fn diagonal_boundary<Y: Simplicial, Z: Simplicial>(
    y: &Y,
    z: &Z,
    t: &TensorChain<Y::Simplex, Z::Simplex>,
) -> TensorChain<Y::Simplex, Z::Simplex> {
    let mut out = BTreeMap::new();
    for ((a, b), c) in t {
        let n = y.dim(a);
        if n == 0 {
            continue;
        }
        for i in 0..=n {
            let s = if i % 2 == 0 { c.clone() } else { -c.clone() };
            add(&mut out, (y.face(i, a), z.face(i, b)), s);
        }
    }
    prune(out)
}

/// `(d (x) 1 + (-1)^{|a|} 1 (x) d)` on the graded tensor product of chain complexes.
pub fn tensor_boundary<Y: Simplicial, Z: Simplicial>(
    y: &Y,
    z: &Z,
    t: &TensorChain<Y::Simplex, Z::Simplex>,
) -> TensorChain<Y::Simplex, Z::Simplex> {
    let mut out = BTreeMap::new();
    for ((a, b), c) in t {
        let one: Chain<Y::Simplex> = [(a.clone(), c.clone())].into();
        for (da, e) in boundary(y, &one) {
            add(&mut out, (da, b.clone()), e);
        }
        let sign = if y.dim(a) % 2 == 0 { c.clone() } else { -c.clone() };
        let other: Chain<Z::Simplex> = [(b.clone(), sign)].into();
        for (db, e) in boundary(z, &other) {
            add(&mut out, (a.clone(), db), e);
        }
    }
    prune(out)
}

/// `nabla(a (x) b) = sum eps s_nu a (x) s_mu b`, bilinearly on chains.
pub fn ez_nabla<Y: Simplicial, Z: Simplicial>(
    y: &Y,
    z: &Z,
    t: &TensorChain<Y::Simplex, Z::Simplex>,
) -> TensorChain<Y::Simplex, Z::Simplex> {
    let mut out = BTreeMap::new();
    for ((a, b), c) in t {
        let (n, m) = (y.dim(a), z.dim(b));
        for sh in shuffles(n, m) {
            let s = if sh.sign > 0 { c.clone() } else { -c.clone() };
            add(&mut out, (degenerate(y, &sh.nu, a), degenerate(z, &sh.mu, b)), s);
        }
    }
    prune(out)
}

/// `Delta(a (x) b) = sum_k d_{k+1}..d_n a (x) d_0^k b`.
pub fn aw_delta<Y: Simplicial, Z: Simplicial>(
    y: &Y,
    z: &Z,
    t: &TensorChain<Y::Simplex, Z::Simplex>,
) -> TensorChain<Y::Simplex, Z::Simplex> {
    let mut out = BTreeMap::new();
    for ((a, b), c) in t {
        let n = y.dim(a);
        for k in 0..=n {
            add(&mut out, (front_face(y, k, a), back_face(z, k, b)), c.clone());
        }
    }
    prune(out)
}

/// Image in `N(Q[Y]) (x) N(Q[Z])` with `N` the quotient by degenerate simplices.
pub fn drop_degenerate<Y: Simplicial, Z: Simplicial>(
    y: &Y,
    z: &Z,
    t: &TensorChain<Y::Simplex, Z::Simplex>,
) -> TensorChain<Y::Simplex, Z::Simplex> {
    t.iter()
        .filter(|((a, b), _)| !y.is_degenerate(a) && !z.is_degenerate(b))
        .map(|(k, c)| (k.clone(), c.clone()))
        .collect()
}

/// Image in `N(Q[Y x Z])`: drops pairs that are degenerate in the product,
/// i.e. both lie in the image of the same `s_i`.
pub fn drop_degenerate_product<Y: Simplicial, Z: Simplicial>(
    y: &Y,
    z: &Z,
    t: &TensorChain<Y::Simplex, Z::Simplex>,
) -> TensorChain<Y::Simplex, Z::Simplex> {
    t.iter()
        .filter(|((a, b), _)| {
            let n = y.dim(a);
            !(0..n).any(|i| y.degeneracy(i, &y.face(i, a)) == *a && z.degeneracy(i, &z.face(i, b)) == *b)
        })
        .map(|(k, c)| (k.clone(), c.clone()))
        .collect()
}

pub fn single<A: Ord + Clone, B: Ord + Clone>(a: &A, b: &B) -> TensorChain<A, B> {
    [((a.clone(), b.clone()), Scalar::one())].into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quillen::sset::FiniteSimplicialSet;

    #[test]
    fn shuffle_counts_and_signs() {
        let s = shuffles(1, 1);
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().map(|x| x.sign).collect::<Vec<_>>(), [1, -1]);
        let s = shuffles(0, 3);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].sign, 1);
        assert_eq!(shuffles(2, 2).len(), 6);
        assert_eq!(shuffles(3, 1).len(), 4);
    }

    #[test]
    fn shuffle_signs_match_permutation_parity() {
        fn parity(p: &[usize]) -> i8 {
            let mut inv = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            if inv % 2 == 0 {
                1
            } else {
                -1
            }
        }
        for (n, m) in [(2, 1), (1, 2), (2, 2), (3, 2)] {
            for sh in shuffles(n, m) {
                let p: Vec<usize> = sh.mu.iter().chain(sh.nu.iter()).copied().collect();
                assert_eq!(sh.sign, parity(&p));
            }
        }
    }

    #[test]
    fn nabla_in_degree_one_one() {
        let x = FiniteSimplicialSet::from_complex(&[vec![0], vec![1], vec![0, 1]]).unwrap();
        let e = x.by_name("01").unwrap();
        let t = ez_nabla(&x, &x, &single(&e, &e));
        let want: TensorChain<_, _> = [
            ((x.degeneracy(1, &e), x.degeneracy(0, &e)), Scalar::one()),
            ((x.degeneracy(0, &e), x.degeneracy(1, &e)), -Scalar::one()),
        ]
        .into();
        assert_eq!(t, want);
    }
}
