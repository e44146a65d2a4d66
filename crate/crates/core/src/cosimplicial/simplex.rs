//! Generators of the desuspended simplex and the cosimplicial relabelings.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lie::presentation::Generator;
use crate::lie::tensor::{Letter, TensorPoly};
use crate::lie::tree::LieElement;
use crate::scalar::{sign, Scalar};

/// Largest level whose generator names stay unambiguous (one digit per vertex).
pub const MAX_LEVEL: usize = 9;

/// The generators `a_I`, `I` a non-empty subset of `{0..n}`, ordered by size then lexicographically.
#[derive(Clone, Debug)]
pub struct SimplexAlphabet {
    n: usize,
    subsets: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, Letter>,
}

impl SimplexAlphabet {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_LEVEL {
            return Err(Error::input(format!("simplicial level {n} exceeds {MAX_LEVEL}")));
        }
        let mut subsets: Vec<Vec<u8>> = (1u32..(1 << (n + 1)))
            .map(|mask| (0..=n as u8).filter(|&i| mask & (1 << i) != 0).collect())
            .collect();
        subsets.sort_by(|a: &Vec<u8>, b: &Vec<u8>| (a.len(), a).cmp(&(b.len(), b)));
        let index = subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as Letter))
            .collect();
        Ok(Self { n, subsets, index })
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subset(&self, l: Letter) -> &[u8] {
        &self.subsets[l as usize]
    }

    pub fn letter(&self, subset: &[u8]) -> Option<Letter> {
        self.index.get(subset).copied()
    }

    pub fn vertex(&self, i: u8) -> Letter {
        self.index[&vec![i]]
    }

    pub fn top(&self) -> Letter {
        (self.subsets.len() - 1) as Letter
    }

    /// `a_{0..n-1}`, the facet opposite the last vertex.
    pub fn last_facet(&self) -> Option<Letter> {
        (self.n >= 1).then(|| self.letter(&(0..self.n as u8).collect::<Vec<_>>()).expect("facet exists"))
    }

    pub fn degree(&self, l: Letter) -> i32 {
        self.subsets[l as usize].len() as i32 - 2
    }

    pub fn degrees(&self) -> Vec<i32> {
        (0..self.len() as Letter).map(|l| self.degree(l)).collect()
    }

    pub fn name_of(subset: &[u8]) -> String {
        let mut s = String::from("a");
        for &i in subset {
            s.push(char::from(b'0' + i));
        }
        s
    }

    pub fn name(&self, l: Letter) -> String {
        Self::name_of(&self.subsets[l as usize])
    }

    pub fn generators(&self) -> Vec<Generator> {
        (0..self.len() as Letter)
            .map(|l| Generator::new(self.name(l), self.degree(l)))
            .collect()
    }

    /// Desuspended simplicial boundary `sum_j (-1)^j a_{I minus i_j}`; zero on vertices.
    pub fn boundary(&self, l: Letter) -> TensorPoly {
        let s = &self.subsets[l as usize];
        let mut out = TensorPoly::zero();
        if s.len() < 2 {
            return out;
        }
        for j in 0..s.len() {
            let mut face = s.clone();
            face.remove(j);
            out.add_scaled(&TensorPoly::letter(self.index[&face]), &sign(j as i64));
        }
        out
    }

    /// Map from the letters of the `k`-simplex into this alphabet along the
    /// face with vertex set `subset` (`|subset| = k + 1`).
    pub fn face_inclusion(&self, subset: &[u8]) -> impl Fn(&[u8]) -> Letter + '_ {
        let subset = subset.to_vec();
        move |j: &[u8]| {
            let image: Vec<u8> = j.iter().map(|&x| subset[x as usize]).collect();
            self.index[&image]
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Coface(usize),
    Codegeneracy(usize),
}

/// A relabeling morphism between simplex alphabets, extended as a Lie morphism.
#[derive(Clone, Debug)]
pub struct CosimplicialMap {
    pub kind: MapKind,
    pub source: usize,
    pub target: usize,
    letters: Vec<Option<Letter>>,
}

impl CosimplicialMap {
    /// `delta_i` from level `n - 1` to level `n`.
    pub fn coface(i: usize, n: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::input(format!("coface delta_{i} needs 1 <= n and i <= n (n = {n})")));
        }
        let src = SimplexAlphabet::new(n - 1)?;
        let dst = SimplexAlphabet::new(n)?;
        let letters = (0..src.len() as Letter)
            .map(|l| {
                let img: Vec<u8> = src
                    .subset(l)
                    .iter()
                    .map(|&j| if (j as usize) < i { j } else { j + 1 })
                    .collect();
                dst.letter(&img)
            })
            .collect();
        Ok(Self {
            kind: MapKind::Coface(i),
            source: n - 1,
            target: n,
            letters,
        })
    }

    /// `sigma_i` from level `n + 1` to level `n`; generators with repeated images go to zero.
    pub fn codegeneracy(i: usize, n: usize) -> Result<Self> {
        if i > n {
            return Err(Error::input(format!("codegeneracy sigma_{i} needs i <= n (n = {n})")));
        }
        let src = SimplexAlphabet::new(n + 1)?;
        let dst = SimplexAlphabet::new(n)?;
        let letters = (0..src.len() as Letter)
            .map(|l| {
                let mut img: Vec<u8> = src
                    .subset(l)
                    .iter()
                    .map(|&j| if (j as usize) <= i { j } else { j - 1 })
                    .collect();
                let len = img.len();
                img.dedup();
                if img.len() < len {
                    None
                } else {
                    dst.letter(&img)
                }
            })
            .collect();
        Ok(Self {
            kind: MapKind::Codegeneracy(i),
            source: n + 1,
            target: n,
            letters,
        })
    }

    pub fn on_letter(&self, l: Letter) -> Option<Letter> {
        self.letters[l as usize]
    }

    pub fn apply(&self, p: &TensorPoly) -> TensorPoly {
        p.relabel(|l| self.letters[l as usize])
    }

    pub fn apply_lie(&self, x: &LieElement) -> LieElement {
        x.relabel(&|l| self.letters[l as usize])
    }

    /// `other` after `self`.
    pub fn then(&self, other: &CosimplicialMap) -> Result<CosimplicialMap> {
        if self.target != other.source {
            return Err(Error::input("maps are not composable"));
        }
        Ok(CosimplicialMap {
            kind: other.kind,
            source: self.source,
            target: other.target,
            letters: self
                .letters
                .iter()
                .map(|l| l.and_then(|l| other.letters[l as usize]))
                .collect(),
        })
    }

    pub fn letter_table(&self) -> &[Option<Letter>] {
        &self.letters
    }
}

/// Scalar sign used throughout: `(-1)^n`.
pub fn level_sign(n: usize) -> Scalar {
    sign(n as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name_map(m: &CosimplicialMap, name: &str) -> Option<String> {
        let src = SimplexAlphabet::new(m.source).unwrap();
        let dst = SimplexAlphabet::new(m.target).unwrap();
        let subset: Vec<u8> = name[1..].bytes().map(|b| b - b'0').collect();
        m.on_letter(src.letter(&subset).unwrap()).map(|l| dst.name(l))
    }

    #[test]
    fn alphabet_order_and_degrees() {
        let a = SimplexAlphabet::new(2).unwrap();
        let names: Vec<String> = (0..a.len() as Letter).map(|l| a.name(l)).collect();
        assert_eq!(names, ["a0", "a1", "a2", "a01", "a02", "a12", "a012"]);
        assert_eq!(a.degrees(), vec![-1, -1, -1, 0, 0, 0, 1]);
        assert_eq!(SimplexAlphabet::new(4).unwrap().len(), 31);
    }

    #[test]
    fn coface_examples() {
        assert_eq!(name_map(&CosimplicialMap::coface(1, 3).unwrap(), "a012").as_deref(), Some("a023"));
        assert_eq!(name_map(&CosimplicialMap::coface(0, 2).unwrap(), "a01").as_deref(), Some("a12"));
        for n in 1..=4 {
            assert_eq!(name_map(&CosimplicialMap::coface(n, n).unwrap(), "a0").as_deref(), Some("a0"));
        }
    }

    #[test]
    fn codegeneracy_examples() {
        assert_eq!(name_map(&CosimplicialMap::codegeneracy(0, 0).unwrap(), "a01"), None);
        assert_eq!(name_map(&CosimplicialMap::codegeneracy(1, 1).unwrap(), "a02").as_deref(), Some("a01"));
        assert_eq!(name_map(&CosimplicialMap::codegeneracy(0, 1).unwrap(), "a012"), None);
    }

    #[test]
    fn boundary_of_triangle() {
        let a = SimplexAlphabet::new(2).unwrap();
        let b = a.boundary(a.top());
        let expected = TensorPoly::letter(a.letter(&[1, 2]).unwrap())
            .minus(&TensorPoly::letter(a.letter(&[0, 2]).unwrap()))
            .plus(&TensorPoly::letter(a.letter(&[0, 1]).unwrap()));
        assert_eq!(b, expected);
    }

    fn same(a: &CosimplicialMap, b: &CosimplicialMap) -> bool {
        a.source == b.source && a.target == b.target && a.letter_table() == b.letter_table()
    }

    #[test]
    fn cosimplicial_identities() {
        let d = |i, n| CosimplicialMap::coface(i, n).unwrap();
        let s = |i, n| CosimplicialMap::codegeneracy(i, n).unwrap();
        for n in 2..=4usize {
            // delta_j delta_i = delta_i delta_{j-1}, i < j, level n-2 -> n
            for j in 0..=n {
                for i in 0..j {
                    let lhs = d(i, n - 1).then(&d(j, n)).unwrap();
                    let rhs = d(j - 1, n - 1).then(&d(i, n)).unwrap();
                    assert!(same(&lhs, &rhs), "coface identity i={i} j={j} n={n}");
                }
            }
        }
        for n in 0..=3usize {
            // sigma_j sigma_i = sigma_i sigma_{j+1}, i <= j, level n+2 -> n
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = s(i, n + 1).then(&s(j, n)).unwrap();
                    let rhs = s(j + 1, n + 1).then(&s(i, n)).unwrap();
                    assert!(same(&lhs, &rhs), "codegeneracy identity i={i} j={j} n={n}");
                }
            }
        }
        for n in 1..=4usize {
            // sigma_j delta_i on level n -> n+1 -> n
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = d(i, n + 1).then(&s(j, n)).unwrap();
                    if i == j || i == j + 1 {
                        let id: Vec<Option<Letter>> = (0..SimplexAlphabet::new(n).unwrap().len() as Letter).map(Some).collect();
                        assert_eq!(lhs.letter_table(), &id[..], "identity case i={i} j={j} n={n}");
                    } else if i < j {
                        let rhs = s(j - 1, n - 1).then(&d(i, n)).unwrap();
                        assert!(same(&lhs, &rhs), "i<j case i={i} j={j} n={n}");
                    } else {
                        let rhs = s(j, n - 1).then(&d(i - 1, n)).unwrap();
                        assert!(same(&lhs, &rhs), "i>j+1 case i={i} j={j} n={n}");
                    }
                }
            }
        }
    }
}
