//! Deterministic bases of free graded Lie algebras.
//!
//! Brackets preserve the multiset of letters (the *content*) of every word, so
//! the free Lie algebra splits into finite blocks, one per content. Inside a
//! block the right-normed brackets of the distinct arrangements of the content
//! are taken in lexicographic order and the first linearly independent ones
//! (judged on their tensor expansions) form the basis.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::Zero;
use smallvec::SmallVec;

use super::linalg::{Echelon, PushOutcome, SparseVec};
use super::tensor::{word_degree, Letter, TensorPoly, Word};
use super::tree::{BracketTree, LieElement};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Content = SmallVec<[Letter; 6]>;

#[derive(Debug)]
pub struct ContentBlock {
    /// Arrangements of the content, lexicographically ordered; row ids are positions.
    arrangements: Vec<Word>,
    row_of: HashMap<Word, u32>,
    /// Words whose right-normed brackets form the basis of the block.
    basis_words: Vec<Word>,
    expansions: Vec<TensorPoly>,
    echelon: Echelon,
}

impl ContentBlock {
    fn build(content: &[Letter], degrees: &[i32]) -> Self {
        let arrangements = arrangements(content);
        let row_of: HashMap<Word, u32> = arrangements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        let to_sparse = |p: &TensorPoly| -> SparseVec {
            let mut v: Vec<(u32, Scalar)> = p.terms().map(|(w, c)| (row_of[w], c.clone())).collect();
            v.sort_by_key(|(k, _)| *k);
            v
        };
        let mut probe = Echelon::new();
        let mut basis_words = Vec::new();
        let mut expansions = Vec::new();
        let mut echelon = Echelon::new();
        for w in &arrangements {
            let e = BracketTree::right_normed(w).expand(degrees);
            if e.is_zero() {
                continue;
            }
            let col = to_sparse(&e);
            if let PushOutcome::Independent = probe.push(col.clone()) {
                echelon.push(col);
                basis_words.push(w.clone());
                expansions.push(e);
            }
        }
        ContentBlock {
            arrangements,
            row_of,
            basis_words,
            expansions,
            echelon,
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis_words.len()
    }

    pub fn basis_words(&self) -> &[Word] {
        &self.basis_words
    }

    pub fn expansions(&self) -> &[TensorPoly] {
        &self.expansions
    }

    pub fn arrangement_count(&self) -> usize {
        self.arrangements.len()
    }

    fn coordinates(&self, part: &[(Word, Scalar)]) -> Option<SparseVec> {
        let mut v: Vec<(u32, Scalar)> = part.iter().map(|(w, c)| (self.row_of[w], c.clone())).collect();
        v.sort_by_key(|(k, _)| *k);
        self.echelon.solve(v).ok()
    }
}

/// Distinct arrangements of a multiset in lexicographic order.
pub fn arrangements(content: &[Letter]) -> Vec<Word> {
    let mut cur: Vec<Letter> = content.to_vec();
    cur.sort_unstable();
    let mut out = vec![Word::from_slice(&cur)];
    loop {
        // next permutation
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Word::from_slice(&cur));
    }
    out
}

pub fn content_of(w: &[Letter]) -> Content {
    let mut c = Content::from_slice(w);
    c.sort_unstable();
    c
}

/// Lazily built Lie basis over a fixed alphabet (letters are graded by `degrees`).
#[derive(Debug)]
pub struct LieBasis {
    degrees: Vec<i32>,
    blocks: HashMap<Content, Rc<ContentBlock>>,
}

impl LieBasis {
    pub fn new(degrees: Vec<i32>) -> Self {
        Self {
            degrees,
            blocks: HashMap::new(),
        }
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn block(&mut self, content: &[Letter]) -> Rc<ContentBlock> {
        let key = content_of(content);
        if let Some(b) = self.blocks.get(&key) {
            return b.clone();
        }
        let b = Rc::new(ContentBlock::build(&key, &self.degrees));
        self.blocks.insert(key, b.clone());
        b
    }

    /// All contents of `length` letters drawn from `letters` with total `degree`.
    pub fn contents(&self, letters: &[Letter], length: usize, degree: i32) -> Vec<Content> {
        let mut sorted = letters.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let degs: Vec<i32> = sorted.iter().map(|&l| self.degrees[l as usize]).collect();
        let (Some(&lo), Some(&hi)) = (degs.iter().min(), degs.iter().max()) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut cur: Content = Content::new();
        fn rec(
            start: usize,
            remaining: usize,
            target: i32,
            sorted: &[Letter],
            degs: &[i32],
            lo: i32,
            hi: i32,
            cur: &mut Content,
            out: &mut Vec<Content>,
        ) {
            if remaining == 0 {
                if target == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let r = remaining as i32;
            if target < lo * r || target > hi * r {
                return;
            }
            for i in start..sorted.len() {
                cur.push(sorted[i]);
                rec(i, remaining - 1, target - degs[i], sorted, degs, lo, hi, cur, out);
                cur.pop();
            }
        }
        rec(0, length, degree, &sorted, &degs, lo, hi, &mut cur, &mut out);
        out
    }

    /// Basis of the Lie elements of the given word length and degree over `letters`,
    /// as right-normed trees ordered lexicographically by leaf sequence.
    pub fn basis(&mut self, letters: &[Letter], length: usize, degree: i32) -> Vec<BracketTree> {
        self.basis_with_expansions(letters, length, degree)
            .into_iter()
            .map(|(t, _)| t)
            .collect()
    }

    pub fn basis_with_expansions(
        &mut self,
        letters: &[Letter],
        length: usize,
        degree: i32,
    ) -> Vec<(BracketTree, TensorPoly)> {
        let mut out: Vec<(Word, TensorPoly)> = Vec::new();
        for c in self.contents(letters, length, degree) {
            let b = self.block(&c);
            for (w, e) in b.basis_words.iter().zip(&b.expansions) {
                out.push((w.clone(), e.clone()));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out.into_iter()
            .map(|(w, e)| (BracketTree::right_normed(&w), e))
            .collect()
    }

    /// Coordinates of a Lie polynomial in the basis; fails if `p` is not a Lie element.
    pub fn coordinates(&mut self, p: &TensorPoly) -> Result<Vec<(BracketTree, Scalar)>> {
        let mut by_content: BTreeMap<Content, Vec<(Word, Scalar)>> = BTreeMap::new();
        for (w, c) in p.terms() {
            if w.is_empty() {
                return Err(Error::consistency("constant term is not a Lie element"));
            }
            by_content.entry(content_of(w)).or_default().push((w.clone(), c.clone()));
        }
        let mut out = Vec::new();
        for (content, part) in by_content {
            let block = self.block(&content);
            let coords = block.coordinates(&part).ok_or_else(|| {
                Error::consistency(format!(
                    "polynomial is not a Lie element (content {:?}, degree {})",
                    content,
                    word_degree(&content, &self.degrees)
                ))
            })?;
            for (j, c) in coords {
                if !c.is_zero() {
                    out.push((BracketTree::right_normed(&block.basis_words[j as usize]), c));
                }
            }
        }
        out.sort_by(|a, b| {
            let la = a.0.leaves();
            let lb = b.0.leaves();
            (la.len(), la).cmp(&(lb.len(), lb))
        });
        Ok(out)
    }

    /// Re-express a Lie polynomial over the basis trees.
    pub fn to_lie(&mut self, p: &TensorPoly) -> Result<LieElement> {
        Ok(self.coordinates(p)?.into_iter().collect())
    }
}
