//! Simplices of the realization `<L>`: cdgl morphisms from the simplex `L_n` to `L`.
//!
//! A simplex is stored as the table of images of the generators `a_I`. Faces and
//! degeneracies precompose with cofaces and codegeneracies; validation needs the
//! differential of `L_n` and therefore a built tower.

mod phi;

pub use phi::{check_phi, Comparison, PhiCase, PhiReport};

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_traits::Zero;

use crate::cosimplicial::{CosimplicialMap, SimplexAlphabet, Tower};
use crate::error::{Error, Result};
use crate::lie::presentation::{FreeCdglPresentation, HomologyBasis};
use crate::lie::tensor::{Letter, TensorPoly};
use crate::quillen::Simplicial;
use crate::scalar::{sign, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealizationSimplex {
    pub level: usize,
    /// Image of each generator of `L_level`, indexed by its letter.
    pub images: Vec<TensorPoly>,
}

impl RealizationSimplex {
    pub fn is_basepoint(&self) -> bool {
        self.images.iter().all(TensorPoly::is_zero)
    }
}

/// A generator where `phi(dg) != d phi(g)`, with the difference.
#[derive(Clone, Debug)]
pub struct Residue {
    pub generator: String,
    pub residue: TensorPoly,
}

#[derive(Clone, Debug)]
pub struct HomologyClass {
    pub degree: i32,
    pub representative: TensorPoly,
}

type MapKey = (bool, usize, usize);

/// The simplicial set `<L>`, evaluated pointwise.
#[derive(Clone)]
pub struct Realization {
    target: Rc<FreeCdglPresentation>,
    tower: Option<Rc<Tower>>,
    alphabets: Rc<RefCell<HashMap<usize, Rc<SimplexAlphabet>>>>,
    maps: Rc<RefCell<HashMap<MapKey, Rc<CosimplicialMap>>>>,
}

impl Realization {
    /// `tower` supplies the differentials used for validation; without it only
    /// faces, degeneracies and evaluation are available.
    pub fn new(target: FreeCdglPresentation, tower: Option<Tower>) -> Self {
        Self {
            target: Rc::new(target),
            tower: tower.map(Rc::new),
            alphabets: Rc::default(),
            maps: Rc::default(),
        }
    }

    pub fn target(&self) -> &FreeCdglPresentation {
        &self.target
    }

    pub fn tower(&self) -> Option<&Tower> {
        self.tower.as_deref()
    }

    /// Identities are checked modulo words longer than this.
    pub fn validation_truncation(&self) -> usize {
        let n = self.target.truncation();
        self.tower.as_ref().map_or(n, |t| t.truncation().min(n))
    }

    pub fn alphabet(&self, n: usize) -> Rc<SimplexAlphabet> {
        self.alphabets
            .borrow_mut()
            .entry(n)
            .or_insert_with(|| Rc::new(SimplexAlphabet::new(n).expect("simplex level in range")))
            .clone()
    }

    fn map(&self, coface: bool, i: usize, n: usize) -> Rc<CosimplicialMap> {
        self.maps
            .borrow_mut()
            .entry((coface, i, n))
            .or_insert_with(|| {
                let m = if coface {
                    CosimplicialMap::coface(i, n)
                } else {
                    CosimplicialMap::codegeneracy(i, n)
                };
                Rc::new(m.expect("map indices in range"))
            })
            .clone()
    }

    pub fn basepoint(&self, n: usize) -> RealizationSimplex {
        RealizationSimplex {
            level: n,
            images: vec![TensorPoly::zero(); self.alphabet(n).len()],
        }
    }

    /// Assignment by generator name (`"a012"` or `"012"`); unnamed generators go to zero.
    pub fn assignment(&self, n: usize, named: &[(&str, TensorPoly)]) -> Result<RealizationSimplex> {
        let alpha = self.alphabet(n);
        let mut s = self.basepoint(n);
        for (name, x) in named {
            let digits = name.strip_prefix('a').unwrap_or(name);
            let subset: Vec<u8> = digits
                .bytes()
                .map(|b| b.checked_sub(b'0').filter(|d| *d <= 9))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::input(format!("bad generator name {name:?}")))?;
            let l = alpha
                .letter(&subset)
                .ok_or_else(|| Error::input(format!("{name:?} is not a generator of level {n}")))?;
            s.images[l as usize] = x.clone();
        }
        Ok(s)
    }

    fn check_degrees(&self, s: &RealizationSimplex) -> Result<()> {
        let alpha = self.alphabet(s.level);
        if s.images.len() != alpha.len() {
            return Err(Error::input(format!(
                "level {} has {} generators, got {} images",
                s.level,
                alpha.len(),
                s.images.len()
            )));
        }
        for (l, x) in s.images.iter().enumerate() {
            for d in x.degrees(self.target.degrees()) {
                if d != alpha.degree(l as Letter) {
                    return Err(Error::input(format!(
                        "image of {} has degree {d}, expected {}",
                        alpha.name(l as Letter),
                        alpha.degree(l as Letter)
                    )));
                }
            }
            if !x.coefficient(&[]).is_zero() {
                return Err(Error::input(format!("image of {} has a constant term", alpha.name(l as Letter))));
            }
        }
        Ok(())
    }

    /// Generators on which `phi d = d phi` fails, mod the validation truncation.
    pub fn residues(&self, s: &RealizationSimplex) -> Result<Vec<Residue>> {
        self.check_degrees(s)?;
        let tower = self
            .tower
            .as_ref()
            .ok_or_else(|| Error::precondition("validation needs a built tower"))?;
        if s.level > tower.max_level() {
            return Err(Error::precondition(format!(
                "tower stops at level {}, simplex has level {}",
                tower.max_level(),
                s.level
            )));
        }
        let t = self.validation_truncation();
        let ln = tower.level(s.level)?.presentation;
        let alpha = self.alphabet(s.level);
        let mut out = Vec::new();
        for (g, dg) in ln.images().iter().enumerate() {
            let lhs = self.evaluate(s, dg, t);
            let rhs = self.target.d(&s.images[g]).truncated(t);
            let r = lhs.minus(&rhs);
            if !r.is_zero() {
                out.push(Residue {
                    generator: alpha.name(g as Letter),
                    residue: r,
                });
            }
        }
        Ok(out)
    }

    /// A validated simplex.
    pub fn make_simplex(&self, s: RealizationSimplex) -> Result<RealizationSimplex> {
        let bad = self.residues(&s)?;
        if let Some(r) = bad.first() {
            return Err(Error::verification(format!(
                "not a cdgl morphism on {} generator(s), first {}",
                bad.len(),
                r.generator
            )));
        }
        Ok(s)
    }

    /// `phi(p)` for `p` in the simplex's Lie algebra.
    pub fn evaluate(&self, s: &RealizationSimplex, p: &TensorPoly, trunc: usize) -> TensorPoly {
        p.apply_morphism(|l| s.images[l as usize].clone(), trunc)
    }

    /// `rho` of an `n`-simplex: the class of `(-1)^{n-1} phi(a_{0..n})` in `H_{n-1}(L)`.
    /// The sign makes `rho` of the witness for `x` equal to `[x]`.
    pub fn rho(&self, s: &RealizationSimplex) -> Result<HomologyClass> {
        if s.level == 0 {
            return Err(Error::input("rho needs a simplex of positive dimension"));
        }
        self.check_degrees(s)?;
        let top = self.alphabet(s.level).top();
        let rep = s.images[top as usize].scaled(&sign(s.level as i64 - 1));
        let t = self.validation_truncation();
        if !self.target.d(&rep).truncated(t).is_zero() {
            return Err(Error::consistency("image of the top generator is not a cycle"));
        }
        Ok(HomologyClass {
            degree: s.level as i32 - 1,
            representative: rep,
        })
    }

    /// Coordinates of a class in the homology basis of its degree.
    pub fn class_coordinates(&self, c: &HomologyClass) -> Result<Vec<Scalar>> {
        HomologyBasis::new(&self.target, c.degree).class_of(&c.representative)
    }

    pub fn same_class(&self, a: &HomologyClass, b: &HomologyClass) -> Result<bool> {
        if a.degree != b.degree {
            return Ok(false);
        }
        Ok(self.class_coordinates(a)? == self.class_coordinates(b)?)
    }

    /// The simplex of level `n+1` sending `a_{01..n+1}` to `(-1)^n x` and
    /// `a_{12..n+1}` to `(-1)^n dx`, everything else to zero. Validated when the
    /// tower reaches level `n+1`.
    pub fn surjectivity_witness(&self, n: usize, x: &TensorPoly) -> Result<RealizationSimplex> {
        if n == 0 {
            return Err(Error::input("witnesses exist for degrees n >= 1"));
        }
        if self.target.degrees().iter().any(|&d| d < 1) {
            return Err(Error::precondition("witnesses need a simply connected target"));
        }
        for d in x.degrees(self.target.degrees()) {
            if d != n as i32 {
                return Err(Error::input(format!("element has degree {d}, expected {n}")));
            }
        }
        let alpha = self.alphabet(n + 1);
        let mut s = self.basepoint(n + 1);
        let sg = sign(n as i64);
        let tail: Vec<u8> = (1..=n as u8 + 1).collect();
        s.images[alpha.top() as usize] = x.scaled(&sg);
        s.images[alpha.letter(&tail).expect("facet") as usize] = self.target.d(x).scaled(&sg);
        match self.tower.as_ref() {
            Some(t) if t.max_level() > n => self.make_simplex(s),
            _ => {
                self.check_degrees(&s)?;
                Ok(s)
            }
        }
    }
}

impl Simplicial for Realization {
    type Simplex = RealizationSimplex;

    fn dim(&self, x: &RealizationSimplex) -> usize {
        x.level
    }

    fn face(&self, i: usize, x: &RealizationSimplex) -> RealizationSimplex {
        let m = self.map(true, i, x.level);
        RealizationSimplex {
            level: x.level - 1,
            images: m
                .letter_table()
                .iter()
                .map(|l| x.images[l.expect("cofaces are injective") as usize].clone())
                .collect(),
        }
    }

    fn degeneracy(&self, i: usize, x: &RealizationSimplex) -> RealizationSimplex {
        let m = self.map(false, i, x.level);
        RealizationSimplex {
            level: x.level + 1,
            images: m
                .letter_table()
                .iter()
                .map(|l| l.map_or_else(TensorPoly::zero, |l| x.images[l as usize].clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyEntry {
    /// `pi_n <L>`
    pub n: usize,
    /// `dim H_{n-1}(L)`
    pub dimension: usize,
    /// `pi_1` carries the BCH product on `H_0(L)` rather than addition.
    pub bch_group_law: bool,
    pub truncation_warning: bool,
}

/// `pi_n <L> = H_{n-1}(L)` for `n` in `lo..=hi`.
pub fn homotopy_table(target: &FreeCdglPresentation, lo: usize, hi: usize) -> Result<Vec<HomotopyEntry>> {
    if lo == 0 || lo > hi {
        return Err(Error::input("homotopy degrees must satisfy 1 <= lo <= hi"));
    }
    let report = target.homology(lo as i32 - 1, hi as i32 - 1);
    Ok(report
        .degrees
        .iter()
        .map(|d| HomotopyEntry {
            n: d.degree as usize + 1,
            dimension: d.dimension(),
            bch_group_law: d.degree == 0,
            truncation_warning: d.truncation_warning,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosimplicial::BuildOptions;
    use crate::lie::presentation::Generator;
    use crate::lie::tree::{BracketTree, LieElement};
    use crate::scalar::int;

    fn free_v(n: usize) -> FreeCdglPresentation {
        FreeCdglPresentation::free(vec![Generator::new("v", 1)], n).unwrap()
    }

    fn vv() -> TensorPoly {
        LieElement::from_tree(BracketTree::node(BracketTree::Leaf(0), BracketTree::Leaf(0)), int(1)).normalize(&[1])
    }

    #[test]
    fn basepoint_is_valid_and_rho_zero() {
        let r = Realization::new(free_v(3), Some(Tower::build(2, BuildOptions::new(3)).unwrap()));
        let b = r.make_simplex(r.basepoint(2)).unwrap();
        assert!(r.rho(&b).unwrap().representative.is_zero());
        assert_eq!(r.face(1, &b), r.basepoint(1));
    }

    #[test]
    fn witnesses_validate() {
        let r = Realization::new(free_v(3), Some(Tower::build(3, BuildOptions::new(3)).unwrap()));
        let w1 = r.surjectivity_witness(1, &TensorPoly::letter(0)).unwrap();
        assert_eq!(w1.level, 2);
        let w2 = r.surjectivity_witness(2, &vv()).unwrap();
        let c = r.rho(&w2).unwrap();
        assert_eq!(c.representative, vv());
    }

    #[test]
    fn broken_assignment_reports_residues() {
        // du = v, and a0123 -> u with every face sent to zero
        let gens = vec![Generator::new("v", 1), Generator::new("u", 2)];
        let l = FreeCdglPresentation::new(gens, 3, vec![LieElement::zero(), LieElement::leaf(0)]).unwrap();
        let r = Realization::new(l, Some(Tower::build(3, BuildOptions::new(3)).unwrap()));
        let s = r.assignment(3, &[("a0123", TensorPoly::letter(1))]).unwrap();
        let res = r.residues(&s).unwrap();
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].generator, "a0123");
        assert!(r.make_simplex(s).is_err());
        let bad = r.assignment(1, &[("a01", TensorPoly::letter(0))]).unwrap();
        assert!(r.residues(&bad).unwrap_err().is_input());
    }

    #[test]
    fn degeneracy_then_face_is_identity() {
        let r = Realization::new(free_v(3), None);
        let w = r.surjectivity_witness(2, &vv()).unwrap();
        for i in 0..=w.level {
            let s = r.degeneracy(i, &w);
            assert_eq!(r.face(i, &s), w);
            assert_eq!(r.face(i + 1, &s), w);
        }
    }

    #[test]
    fn homotopy_of_free_on_odd_generator() {
        let t = homotopy_table(&free_v(4), 2, 4).unwrap();
        assert_eq!(t.iter().map(|e| e.dimension).collect::<Vec<_>>(), [1, 1, 0]);
        let two = FreeCdglPresentation::free(vec![Generator::new("v", 1), Generator::new("w", 1)], 4).unwrap();
        let t = homotopy_table(&two, 2, 3).unwrap();
        assert_eq!(t.iter().map(|e| e.dimension).collect::<Vec<_>>(), [2, 3]);
        let ab = FreeCdglPresentation::free(vec![Generator::new("u", 2)], 1).unwrap();
        let t = homotopy_table(&ab, 1, 4).unwrap();
        assert_eq!(t.iter().map(|e| e.dimension).collect::<Vec<_>>(), [0, 0, 1, 0]);
        assert!(t[0].bch_group_law);
    }
}
