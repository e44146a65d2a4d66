//! Bracket trees and formal Lie expressions over them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::tensor::{Letter, TensorPoly};
use crate::scalar::{odd_product, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BracketTree {
    Leaf(Letter),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn node(left: BracketTree, right: BracketTree) -> Self {
        BracketTree::Node(Box::new(left), Box::new(right))
    }

    /// Right-normed bracket `[w1,[w2,[...,wk]]]`.
    pub fn right_normed(word: &[Letter]) -> Self {
        let (last, init) = word.split_last().expect("right_normed needs a non-empty word");
        let mut t = BracketTree::Leaf(*last);
        for &l in init.iter().rev() {
            t = BracketTree::node(BracketTree::Leaf(l), t);
        }
        t
    }

    pub fn word_length(&self) -> usize {
        match self {
            BracketTree::Leaf(_) => 1,
            BracketTree::Node(a, b) => a.word_length() + b.word_length(),
        }
    }

    pub fn degree(&self, degrees: &[i32]) -> i32 {
        match self {
            BracketTree::Leaf(l) => degrees[*l as usize],
            BracketTree::Node(a, b) => a.degree(degrees) + b.degree(degrees),
        }
    }

    pub fn leaves(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Letter>) {
        match self {
            BracketTree::Leaf(l) => out.push(*l),
            BracketTree::Node(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// Expansion in the tensor algebra as iterated graded commutators.
    pub fn expand(&self, degrees: &[i32]) -> TensorPoly {
        match self {
            BracketTree::Leaf(l) => TensorPoly::letter(*l),
            BracketTree::Node(a, b) => {
                let ea = a.expand(degrees);
                let eb = b.expand(degrees);
                ea.bracket(&eb, degrees, usize::MAX)
            }
        }
    }

    pub fn display(&self, names: &dyn Fn(Letter) -> String) -> String {
        match self {
            BracketTree::Leaf(l) => names(*l),
            BracketTree::Node(a, b) => format!("[{},{}]", a.display(names), b.display(names)),
        }
    }
}

/// A formal linear combination of bracket trees.
///
/// Equality of the underlying Lie elements is decided through
/// [`LieElement::normalize`], never tree by tree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement {
    terms: BTreeMap<BracketTree, Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn leaf(l: Letter) -> Self {
        Self::from_tree(BracketTree::Leaf(l), Scalar::one())
    }

    pub fn from_tree(t: BracketTree, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(t, c);
        e
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

    pub fn terms(&self) -> impl Iterator<Item = (&BracketTree, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &BracketTree) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, t: BracketTree, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
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

    pub fn add_scaled(&mut self, other: &LieElement, c: &Scalar) {
        for (t, a) in &other.terms {
            self.add_term(t.clone(), a * c);
        }
    }

    pub fn plus(&self, other: &LieElement) -> LieElement {
        let mut e = self.clone();
        e.add_scaled(other, &Scalar::one());
        e
    }

    pub fn minus(&self, other: &LieElement) -> LieElement {
        let mut e = self.clone();
        e.add_scaled(other, &-Scalar::one());
        e
    }

    pub fn scaled(&self, c: &Scalar) -> LieElement {
        let mut e = LieElement::zero();
        e.add_scaled(self, c);
        e
    }

    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().map(|t| t.word_length()).max()
    }

    pub fn truncated(&self, n: usize) -> LieElement {
        LieElement {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.word_length() <= n)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    /// Formal bracket: pair every tree of `self` with every tree of `other`,
    /// dropping pairs whose word length exceeds `trunc`.
    pub fn bracket(&self, other: &LieElement, trunc: usize) -> LieElement {
        let mut out = LieElement::zero();
        for (s, a) in &self.terms {
            let ls = s.word_length();
            for (t, b) in &other.terms {
                if ls + t.word_length() > trunc {
                    continue;
                }
                out.add_term(BracketTree::node(s.clone(), t.clone()), a * b);
            }
        }
        out
    }

    /// Canonical form: the tensor expansion.
    pub fn normalize(&self, degrees: &[i32]) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (t, c) in &self.terms {
            out.add_scaled(&t.expand(degrees), c);
        }
        out
    }

    /// Substitute every leaf by a Lie element (a Lie morphism on trees).
    pub fn substitute<F>(&self, image: &F, trunc: usize) -> LieElement
    where
        F: Fn(Letter) -> LieElement,
    {
        let mut out = LieElement::zero();
        for (t, c) in &self.terms {
            out.add_scaled(&substitute_tree(t, image, trunc), c);
        }
        out
    }

    /// Rename leaves; a term disappears when any of its leaves maps to `None`.
    pub fn relabel(&self, map: &dyn Fn(Letter) -> Option<Letter>) -> LieElement {
        fn go(t: &BracketTree, map: &dyn Fn(Letter) -> Option<Letter>) -> Option<BracketTree> {
            match t {
                BracketTree::Leaf(l) => map(*l).map(BracketTree::Leaf),
                BracketTree::Node(a, b) => Some(BracketTree::node(go(a, map)?, go(b, map)?)),
            }
        }
        self.terms
            .iter()
            .filter_map(|(t, c)| go(t, map).map(|t| (t, c.clone())))
            .collect()
    }

    /// Graded antisymmetry partner of a tree sum: `[y,x] = -(-1)^{|x||y|}[x,y]`.
    pub fn swap_sign(dx: i32, dy: i32) -> Scalar {
        if odd_product(dx, dy) {
            Scalar::one()
        } else {
            -Scalar::one()
        }
    }

    pub fn display(&self, names: &dyn Fn(Letter) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| format!("{}*{}", crate::scalar::fmt_scalar(c), t.display(names)))
            .collect();
        parts.join(" + ")
    }
}

fn substitute_tree<F>(t: &BracketTree, image: &F, trunc: usize) -> LieElement
where
    F: Fn(Letter) -> LieElement,
{
    match t {
        BracketTree::Leaf(l) => image(*l).truncated(trunc),
        BracketTree::Node(a, b) => {
            let ia = substitute_tree(a, image, trunc);
            if ia.is_zero() {
                return ia;
            }
            let ib = substitute_tree(b, image, trunc);
            ia.bracket(&ib, trunc)
        }
    }
}

impl FromIterator<(BracketTree, Scalar)> for LieElement {
    fn from_iter<I: IntoIterator<Item = (BracketTree, Scalar)>>(iter: I) -> Self {
        let mut e = LieElement::zero();
        for (t, c) in iter {
            e.add_term(t, c);
        }
        e
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&|l| format!("x{l}")))
    }
}
