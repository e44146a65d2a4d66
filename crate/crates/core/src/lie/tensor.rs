//! Tensor-algebra polynomials: the canonical form for free graded Lie algebras.
//!
//! A free graded Lie algebra over the rationals embeds in the tensor algebra on
//! the same generators, so two Lie expressions are equal exactly when their
//! tensor expansions coincide. Every heavy computation in the crate (brackets,
//! derivations, morphisms, BCH) runs on this representation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::scalar::{odd_product, Scalar};

pub type Letter = u32;
pub type Word = SmallVec<[Letter; 6]>;

pub fn word_degree(w: &[Letter], degrees: &[i32]) -> i32 {
    w.iter().map(|&l| degrees[l as usize]).sum()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit of the tensor algebra (empty word).
    pub fn unit() -> Self {
        let mut p = Self::zero();
        p.add_term(Word::new(), Scalar::one());
        p
    }

    pub fn letter(l: Letter) -> Self {
        let mut p = Self::zero();
        p.add_term(SmallVec::from_slice(&[l]), Scalar::one());
        p
    }

    pub fn word(w: &[Letter], c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(SmallVec::from_slice(w), c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[Letter]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &TensorPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn add_assign(&mut self, other: &TensorPoly) {
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &TensorPoly) {
        for (w, a) in &other.terms {
            self.add_term(w.clone(), -a.clone());
        }
    }

    pub fn scaled(&self, c: &Scalar) -> TensorPoly {
        if c.is_zero() {
            return TensorPoly::zero();
        }
        TensorPoly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn neg(&self) -> TensorPoly {
        TensorPoly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), -a.clone())).collect(),
        }
    }

    pub fn plus(&self, other: &TensorPoly) -> TensorPoly {
        let mut p = self.clone();
        p.add_assign(other);
        p
    }

    pub fn minus(&self, other: &TensorPoly) -> TensorPoly {
        let mut p = self.clone();
        p.sub_assign(other);
        p
    }

    /// Drop every word longer than `n`.
    pub fn truncate(&mut self, n: usize) {
        self.terms.retain(|w, _| w.len() <= n);
    }

    pub fn truncated(&self, n: usize) -> TensorPoly {
        let mut p = self.clone();
        p.truncate(n);
        p
    }

    /// Part made of words of length exactly `k`.
    pub fn length_part(&self, k: usize) -> TensorPoly {
        TensorPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == k)
                .map(|(w, a)| (w.clone(), a.clone()))
                .collect(),
        }
    }

    pub fn min_length(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).min()
    }

    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    /// Set of degrees occurring in the polynomial.
    pub fn degrees(&self, degrees: &[i32]) -> Vec<i32> {
        let mut ds: Vec<i32> = self.terms.keys().map(|w| word_degree(w, degrees)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The common degree, if all words share one. `None` for the zero polynomial
    /// or an inhomogeneous one; use [`TensorPoly::degrees`] to tell them apart.
    pub fn degree(&self, degrees: &[i32]) -> Option<i32> {
        let ds = self.degrees(degrees);
        (ds.len() == 1).then(|| ds[0])
    }

    /// Concatenation product, dropping words longer than `trunc`.
    pub fn mul(&self, other: &TensorPoly, trunc: usize) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.len() + v.len() > trunc {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a * b);
            }
        }
        out
    }

    /// Graded commutator `[x,y] = xy - (-1)^{|x||y|} yx`, extended bilinearly
    /// over words so that inhomogeneous inputs are handled term by term.
    pub fn bracket(&self, other: &TensorPoly, degrees: &[i32], trunc: usize) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (u, a) in &self.terms {
            let du = word_degree(u, degrees);
            for (v, b) in &other.terms {
                if u.len() + v.len() > trunc {
                    continue;
                }
                let dv = word_degree(v, degrees);
                let c = a * b;
                let mut uv = u.clone();
                uv.extend_from_slice(v);
                let mut vu = v.clone();
                vu.extend_from_slice(u);
                if odd_product(du, dv) {
                    out.add_term(vu, c.clone());
                } else {
                    out.add_term(vu, -c.clone());
                }
                out.add_term(uv, c);
            }
        }
        out
    }

    /// Apply the derivation of degree `der_degree` determined by `images`
    /// (indexed by letter): `D(w1..wk) = sum_i (-1)^{der_degree * |w1..w_{i-1}|} w1..D(wi)..wk`.
    pub fn apply_derivation(
        &self,
        images: &[TensorPoly],
        degrees: &[i32],
        der_degree: i32,
        trunc: usize,
    ) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (w, a) in &self.terms {
            let mut prefix_degree = 0;
            for (i, &l) in w.iter().enumerate() {
                let img = &images[l as usize];
                if !img.is_zero() {
                    let coeff = if odd_product(der_degree, prefix_degree) { -a.clone() } else { a.clone() };
                    let rest = w.len() - 1;
                    for (t, b) in &img.terms {
                        if rest + t.len() > trunc {
                            continue;
                        }
                        let mut nw: Word = SmallVec::with_capacity(rest + t.len());
                        nw.extend_from_slice(&w[..i]);
                        nw.extend_from_slice(t);
                        nw.extend_from_slice(&w[i + 1..]);
                        out.add_term(nw, &coeff * b);
                    }
                }
                prefix_degree += degrees[l as usize];
            }
        }
        out
    }

    /// Apply the algebra morphism sending each letter to `images[letter]`.
    /// Degree-preserving morphisms of graded Lie algebras extend without signs.
    pub fn apply_morphism<F>(&self, image: F, trunc: usize) -> TensorPoly
    where
        F: Fn(Letter) -> TensorPoly,
    {
        let mut cache: BTreeMap<Letter, TensorPoly> = BTreeMap::new();
        let mut out = TensorPoly::zero();
        for (w, a) in &self.terms {
            let mut acc = TensorPoly::unit();
            for &l in w.iter() {
                let img = cache.entry(l).or_insert_with(|| image(l));
                acc = acc.mul(img, trunc);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, a);
        }
        out
    }

    /// Morphism sending letters to letters (or to zero).
    pub fn relabel(&self, map: impl Fn(Letter) -> Option<Letter>) -> TensorPoly {
        let mut out = TensorPoly::zero();
        'words: for (w, a) in &self.terms {
            let mut nw: Word = SmallVec::with_capacity(w.len());
            for &l in w.iter() {
                match map(l) {
                    Some(m) => nw.push(m),
                    None => continue 'words,
                }
            }
            out.add_term(nw, a.clone());
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> TensorPoly {
        let mut p = TensorPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }
}
