//! The simplicial complete Lie algebra `LL_n = L^(X_{n+1} / s_0 X_n)`.
//!
//! Every level is ungraded. Generators are interned simplices of `X`; an
//! `s_0`-degenerate simplex is the zero element. Elements are handled either as
//! formal trees (`LieElement`) or in canonical tensor form (`TensorPoly`).

use std::cell::RefCell;

use super::chains::shuffles;
use super::sset::{FiniteSimplicialSet, Simplicial};
use crate::error::{Error, Result};
use crate::lie::basis::LieBasis;
use crate::lie::bch::{bch_formal, bch_tensor};
use crate::lie::linalg::{intern_vec, Echelon, Interner, PushOutcome};
use crate::lie::tensor::{Letter, TensorPoly, Word};
use crate::lie::tree::{BracketTree, LieElement};
use crate::scalar::{int, Scalar};

pub struct LoopLie<X: Simplicial> {
    space: X,
    truncation: usize,
    letters: RefCell<Interner<X::Simplex>>,
    basis: RefCell<LieBasis>,
}

/// Ungraded commutator `xy - yx`.
pub fn commutator(x: &TensorPoly, y: &TensorPoly, trunc: usize) -> TensorPoly {
    x.mul(y, trunc).minus(&y.mul(x, trunc))
}

impl<X: Simplicial> LoopLie<X> {
    pub fn new(space: X, truncation: usize) -> Self {
        Self {
            space,
            truncation,
            letters: RefCell::new(Interner::new()),
            basis: RefCell::new(LieBasis::new(vec![0; 64])),
        }
    }

    pub fn space(&self) -> &X {
        &self.space
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Letter of a simplex, or `None` when it is `s_0`-degenerate (zero in `LL`).
    pub fn letter(&self, x: &X::Simplex) -> Option<Letter> {
        if self.space.dim(x) == 0 || self.space.is_s0_degenerate(x) {
            return None;
        }
        Some(self.letters.borrow_mut().id(x))
    }

    pub fn simplex(&self, l: Letter) -> X::Simplex {
        self.letters.borrow().key(l).clone()
    }

    /// Level of a letter: its simplex has dimension `level + 1`.
    pub fn level_of(&self, l: Letter) -> usize {
        self.space.dim(&self.simplex(l)) - 1
    }

    pub fn leaf(&self, x: &X::Simplex) -> LieElement {
        self.letter(x).map_or_else(LieElement::zero, LieElement::leaf)
    }

    pub fn leaf_tensor(&self, x: &X::Simplex) -> TensorPoly {
        self.letter(x).map_or_else(TensorPoly::zero, TensorPoly::letter)
    }

    fn relabel_by<'a>(&'a self, f: impl Fn(&X::Simplex) -> X::Simplex + 'a) -> impl Fn(Letter) -> Option<Letter> + 'a {
        move |l| {
            let x = self.simplex(l);
            self.letter(&f(&x))
        }
    }

    /// `d_i` on generators: `d_{i+1}` for `i >= 1` and `(-d_0 x) * (d_1 x)` for `i = 0`.
    pub fn face_tensor(&self, i: usize, p: &TensorPoly) -> TensorPoly {
        if i == 0 {
            let trunc = self.truncation;
            p.apply_morphism(
                |l| {
                    let x = self.simplex(l);
                    let a = self.leaf_tensor(&self.space.face(0, &x)).neg();
                    let b = self.leaf_tensor(&self.space.face(1, &x));
                    bch_tensor(&a, &b, trunc)
                },
                trunc,
            )
        } else {
            p.relabel(self.relabel_by(|x| self.space.face(i + 1, x)))
        }
    }

    pub fn degeneracy_tensor(&self, i: usize, p: &TensorPoly) -> TensorPoly {
        p.relabel(self.relabel_by(|x| self.space.degeneracy(i + 1, x)))
    }

    /// `d_i` on formal trees; `d_0` substitutes the BCH series.
    pub fn face(&self, i: usize, e: &LieElement) -> LieElement {
        if i == 0 {
            e.substitute(
                &|l: Letter| {
                    let x = self.simplex(l);
                    let a = self.leaf(&self.space.face(0, &x)).scaled(&int(-1));
                    let b = self.leaf(&self.space.face(1, &x));
                    bch_formal(&a, &b, self.truncation)
                },
                self.truncation,
            )
        } else {
            e.relabel(&self.relabel_by(|x| self.space.face(i + 1, x)))
        }
    }

    pub fn degeneracy(&self, i: usize, e: &LieElement) -> LieElement {
        e.relabel(&self.relabel_by(|x| self.space.degeneracy(i + 1, x)))
    }

    /// `s_{w_k} .. s_{w_1}` for an increasing word.
    pub fn degenerate(&self, word: &[usize], e: &LieElement) -> LieElement {
        word.iter().fold(e.clone(), |acc, &i| self.degeneracy(i, &acc))
    }

    pub fn degenerate_tensor(&self, word: &[usize], p: &TensorPoly) -> TensorPoly {
        word.iter().fold(p.clone(), |acc, &i| self.degeneracy_tensor(i, &acc))
    }

    /// All levels are ungraded.
    pub fn degrees(&self) -> Vec<i32> {
        vec![0; self.letters.borrow().len()]
    }

    pub fn normalize(&self, e: &LieElement) -> TensorPoly {
        e.normalize(&self.degrees()).truncated(self.truncation)
    }

    pub fn bracket(&self, x: &TensorPoly, y: &TensorPoly) -> TensorPoly {
        commutator(x, y, self.truncation)
    }

    fn with_basis<T>(&self, f: impl FnOnce(&mut LieBasis) -> T) -> T {
        let n = self.letters.borrow().len();
        let mut b = self.basis.borrow_mut();
        if b.degrees().len() < n {
            *b = LieBasis::new(vec![0; 2 * n]);
        }
        f(&mut b)
    }

    /// Express a Lie polynomial over the right-normed basis trees.
    pub fn to_lie(&self, p: &TensorPoly) -> Result<LieElement> {
        self.with_basis(|b| b.to_lie(p))
    }

    /// Lie basis over `letters` through the truncation.
    pub fn span(&self, letters: &[Letter]) -> Vec<(BracketTree, TensorPoly)> {
        let mut out = Vec::new();
        for k in 1..=self.truncation {
            out.extend(self.with_basis(|b| b.basis_with_expansions(letters, k, 0)));
        }
        out
    }

    /// `[w, w'] = sum eps [s_nu w, s_mu w']` for `w` at level `n` and `w'` at level `m`.
    pub fn shuffle_bracket(&self, n: usize, x: &TensorPoly, m: usize, y: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for sh in shuffles(n, m) {
            let a = self.degenerate_tensor(&sh.nu, x);
            let b = self.degenerate_tensor(&sh.mu, y);
            out.add_scaled(&self.bracket(&a, &b), &int(sh.sign as i64));
        }
        out
    }

    /// The same bracket on formal trees, one node per shuffle.
    pub fn shuffle_bracket_tree(&self, n: usize, x: &LieElement, m: usize, y: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for sh in shuffles(n, m) {
            let a = self.degenerate(&sh.nu, x);
            let b = self.degenerate(&sh.mu, y);
            out.add_scaled(&a.bracket(&b, usize::MAX), &int(sh.sign as i64));
        }
        out
    }

    /// `d_i p = 0` for `i = 1..n`.
    pub fn is_normalized(&self, n: usize, p: &TensorPoly) -> bool {
        (1..=n).all(|i| self.face_tensor(i, p).is_zero())
    }
}

/// Tag the rows of the `i`-th map so several maps can share one echelon form.
fn tagged(i: usize, p: TensorPoly) -> impl Iterator<Item = (Word, Scalar)> {
    p.into_terms().into_iter().map(move |(mut w, c)| {
        w.insert(0, Letter::MAX - i as Letter);
        (w, c)
    })
}

/// Kernel of the joint map `p -> (f_1 p, ..., f_r p)` on the span of `elems`.
fn joint_kernel(elems: &[TensorPoly], maps: &[&dyn Fn(&TensorPoly) -> TensorPoly]) -> Vec<TensorPoly> {
    let mut rows: Interner<Word> = Interner::new();
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for e in elems {
        let mut all: Vec<(Word, Scalar)> = Vec::new();
        for (i, f) in maps.iter().enumerate() {
            all.extend(tagged(i, f(e)));
        }
        if let PushOutcome::Dependent(k) = ech.push(intern_vec(&mut rows, all)) {
            let mut z = TensorPoly::zero();
            for (j, c) in k {
                z.add_scaled(&elems[j as usize], &c);
            }
            if !z.is_zero() {
                out.push(z);
            }
        }
    }
    out
}

/// Rank of a family of tensor polynomials.
fn rank(elems: impl IntoIterator<Item = TensorPoly>) -> usize {
    let mut rows: Interner<Word> = Interner::new();
    let mut ech = Echelon::new();
    for e in elems {
        ech.push(intern_vec(&mut rows, e.into_terms()));
    }
    ech.rank()
}

impl LoopLie<FiniteSimplicialSet> {
    /// `LL` of a reduced finite simplicial set.
    pub fn of(space: FiniteSimplicialSet, truncation: usize) -> Result<Self> {
        space.check_reduced()?;
        if truncation == 0 {
            return Err(Error::input("truncation must be positive"));
        }
        Ok(Self::new(space, truncation))
    }

    /// Generators of level `n`: simplices of dimension `n+1` that are not `s_0`-degenerate.
    pub fn generators(&self, n: usize) -> Vec<Letter> {
        self.space()
            .simplices(n + 1)
            .iter()
            .filter_map(|x| self.letter(x))
            .collect()
    }

    /// Basis of `(N LL)_n = cap_{i>=1} ker d_i` on the truncated level.
    pub fn normalized_basis(&self, n: usize) -> Vec<TensorPoly> {
        let gens = self.generators(n);
        let elems: Vec<TensorPoly> = self.span(&gens).into_iter().map(|(_, e)| e).collect();
        if n == 0 {
            return elems;
        }
        let maps: Vec<Box<dyn Fn(&TensorPoly) -> TensorPoly + '_>> =
            (1..=n).map(|i| Box::new(move |p: &TensorPoly| self.face_tensor(i, p)) as Box<dyn Fn(&TensorPoly) -> TensorPoly>).collect();
        let refs: Vec<&dyn Fn(&TensorPoly) -> TensorPoly> = maps.iter().map(|b| b.as_ref()).collect();
        joint_kernel(&elems, &refs)
    }
}

#[derive(Clone, Debug)]
pub struct LambdaDegree {
    pub degree: usize,
    pub chains: usize,
    pub cycles: usize,
    pub boundaries: usize,
}

impl LambdaDegree {
    pub fn homology(&self) -> usize {
        self.cycles - self.boundaries
    }
}

/// `lambda(X) = N LL` with differential `d_0`, computed through a simplicial degree cap.
pub struct Lambda {
    pub loop_lie: LoopLie<FiniteSimplicialSet>,
    pub cap: usize,
    /// `chains[n]` is a basis of `(N LL)_n`, for `n = 0 ..= cap + 1`.
    pub chains: Vec<Vec<TensorPoly>>,
}

impl Lambda {
    pub fn new(space: FiniteSimplicialSet, truncation: usize, cap: usize) -> Result<Self> {
        let loop_lie = LoopLie::of(space, truncation)?;
        let chains = (0..=cap + 1).map(|n| loop_lie.normalized_basis(n)).collect();
        Ok(Self { loop_lie, cap, chains })
    }

    pub fn d(&self, p: &TensorPoly) -> TensorPoly {
        self.loop_lie.face_tensor(0, p)
    }

    pub fn bracket(&self, n: usize, x: &TensorPoly, m: usize, y: &TensorPoly) -> TensorPoly {
        self.loop_lie.shuffle_bracket(n, x, m, y)
    }

    /// Homology of `(N LL, d_0)` in degrees `1 ..= cap`.
    pub fn homology(&self) -> Vec<LambdaDegree> {
        (1..=self.cap)
            .map(|n| {
                let here = &self.chains[n];
                let d = |p: &TensorPoly| self.d(p);
                let cycles = joint_kernel(here, &[&d]).len();
                let boundaries = rank(self.chains[n + 1].iter().map(|p| self.d(p)));
                LambdaDegree {
                    degree: n,
                    chains: here.len(),
                    cycles,
                    boundaries,
                }
            })
            .collect()
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        self.homology().iter().map(LambdaDegree::homology).collect()
    }

    /// `d_0` keeps normalized chains normalized and squares to zero, on the computed bases.
    pub fn check_differential(&self) -> Result<()> {
        for n in 1..=self.cap + 1 {
            for p in &self.chains[n] {
                let dp = self.d(p);
                if n >= 2 && !self.loop_lie.is_normalized(n - 1, &dp) {
                    return Err(Error::consistency(format!("d_0 leaves the normalized chains in degree {n}")));
                }
                if !self.d(&dp).is_zero() {
                    return Err(Error::consistency(format!("d_0^2 is not zero in degree {n}")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2(n: usize) -> LoopLie<FiniteSimplicialSet> {
        LoopLie::of(FiniteSimplicialSet::sphere(2), n).unwrap()
    }

    #[test]
    fn point_has_trivial_levels() {
        let l = LoopLie::of(FiniteSimplicialSet::point(), 3).unwrap();
        for n in 0..4 {
            assert!(l.generators(n).is_empty());
        }
    }

    #[test]
    fn non_reduced_input_is_rejected() {
        let x = FiniteSimplicialSet::from_complex(&[vec![0], vec![1], vec![0, 1]]).unwrap();
        assert!(LoopLie::of(x, 3).err().unwrap().is_input());
    }

    #[test]
    fn sphere_levels() {
        let l = s2(3);
        assert_eq!(l.generators(1).len(), 1);
        assert_eq!(l.generators(2).len(), 2);
        assert_eq!(l.normalized_basis(1).len(), 1);
        // d_1 and d_2 agree on s2 s, and d_2 kills s1 s: the kernel is spanned by
        // the brackets [s1 s, s2 s], [s1 s, [s1 s, s2 s]], [s2 s, [s1 s, s2 s]]
        let n2 = l.normalized_basis(2);
        assert_eq!(n2.len(), 3);
        assert!(n2.iter().all(|p| p.min_length() >= Some(2)));
    }

    #[test]
    fn face_zero_of_s1_sigma() {
        let l = s2(4);
        let x = l.space().by_name("s").unwrap();
        let s1 = l.space().degeneracy(1, &x);
        let d = l.face_tensor(0, &l.leaf_tensor(&s1));
        // (-d_0 s_1 s) * (d_1 s_1 s) = 0 * s
        assert_eq!(d, l.leaf_tensor(&x));
    }

    #[test]
    fn face_zero_after_degeneracy_zero_is_identity() {
        let l = s2(4);
        for n in 1..=2 {
            for g in l.generators(n) {
                let p = TensorPoly::letter(g);
                let q = l.face_tensor(0, &l.degeneracy_tensor(0, &p));
                assert_eq!(q, p);
                let q = l.face_tensor(1, &l.degeneracy_tensor(0, &p));
                assert_eq!(q, p);
            }
        }
    }

    #[test]
    fn sphere_homology() {
        let lam = Lambda::new(FiniteSimplicialSet::sphere(2), 4, 3).unwrap();
        lam.check_differential().unwrap();
        assert_eq!(lam.homology_dims(), [1, 1, 0]);
    }
}
