//! Free complete dgl's, presented by generators and a differential, modulo
//! words longer than the truncation order.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::basis::LieBasis;
use super::linalg::{intern_vec, Echelon, Interner, PushOutcome};
use super::tensor::{Letter, TensorPoly, Word};
use super::tree::{BracketTree, LieElement};
use crate::error::{Error, Result};
use crate::scalar::{ratio, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Self {
            name: name.into(),
            degree,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FreeCdglPresentation {
    generators: Vec<Generator>,
    index: HashMap<String, Letter>,
    degrees: Vec<i32>,
    truncation: usize,
    differential: Vec<LieElement>,
    images: Vec<TensorPoly>,
}

/// One generator whose `d²` does not vanish, with the residue.
#[derive(Clone, Debug)]
pub struct DSquaredFailure {
    pub generator: String,
    pub residue: TensorPoly,
}

#[derive(Clone, Debug, Default)]
pub struct DSquaredReport {
    pub failures: Vec<DSquaredFailure>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl FreeCdglPresentation {
    /// Build from generators and tree-valued differential images (one per generator,
    /// same order). Validates names, degree shift and word lengths.
    pub fn new(generators: Vec<Generator>, truncation: usize, differential: Vec<LieElement>) -> Result<Self> {
        if truncation < 1 {
            return Err(Error::input("truncation must be at least 1"));
        }
        if differential.len() != generators.len() {
            return Err(Error::input("differential table must list one image per generator"));
        }
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.name.clone(), i as Letter).is_some() {
                return Err(Error::input(format!("duplicate generator name {:?}", g.name)));
            }
        }
        let degrees: Vec<i32> = generators.iter().map(|g| g.degree).collect();
        let mut images = Vec::with_capacity(generators.len());
        for (g, img) in generators.iter().zip(&differential) {
            for (t, _) in img.terms() {
                if t.word_length() > truncation {
                    return Err(Error::input(format!(
                        "d{} has a monomial of word length {} > truncation {}",
                        g.name,
                        t.word_length(),
                        truncation
                    )));
                }
                if t.degree(&degrees) != g.degree - 1 {
                    return Err(Error::input(format!(
                        "d{} has a monomial of degree {} (expected {})",
                        g.name,
                        t.degree(&degrees),
                        g.degree - 1
                    )));
                }
            }
            images.push(img.normalize(&degrees));
        }
        Ok(Self {
            generators,
            index,
            degrees,
            truncation,
            differential,
            images,
        })
    }

    /// Build from tensor-form images, rewriting them over the Lie basis.
    pub fn from_tensor_images(generators: Vec<Generator>, truncation: usize, images: Vec<TensorPoly>) -> Result<Self> {
        let degrees: Vec<i32> = generators.iter().map(|g| g.degree).collect();
        let mut basis = LieBasis::new(degrees);
        let differential = images.iter().map(|p| basis.to_lie(p)).collect::<Result<Vec<_>>>()?;
        Self::new(generators, truncation, differential)
    }

    /// Presentation with zero differential.
    pub fn free(generators: Vec<Generator>, truncation: usize) -> Result<Self> {
        let n = generators.len();
        Self::new(generators, truncation, vec![LieElement::zero(); n])
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn differential(&self) -> &[LieElement] {
        &self.differential
    }

    /// Tensor form of `d g` for every generator.
    pub fn images(&self) -> &[TensorPoly] {
        &self.images
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown generator {name:?}")))
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.generators[l as usize].name
    }

    pub fn names(&self) -> impl Fn(Letter) -> String + '_ {
        move |l| self.generators[l as usize].name.clone()
    }

    pub fn lie_basis(&self) -> LieBasis {
        LieBasis::new(self.degrees.clone())
    }

    pub fn all_letters(&self) -> Vec<Letter> {
        (0..self.generators.len() as Letter).collect()
    }

    pub fn normalize(&self, x: &LieElement) -> TensorPoly {
        x.normalize(&self.degrees).truncated(self.truncation)
    }

    pub fn bracket(&self, x: &TensorPoly, y: &TensorPoly) -> TensorPoly {
        x.bracket(y, &self.degrees, self.truncation)
    }

    /// The differential, extended as a derivation of degree -1.
    pub fn d(&self, x: &TensorPoly) -> TensorPoly {
        x.apply_derivation(&self.images, &self.degrees, -1, self.truncation)
    }

    /// Extend an arbitrary image table as a derivation of degree -1.
    pub fn extend_derivation(&self, images: &[LieElement], x: &LieElement) -> Result<LieElement> {
        if images.len() != self.generators.len() {
            return Err(Error::input("image table must list one image per generator"));
        }
        let mut tensor_images = Vec::with_capacity(images.len());
        for (g, img) in self.generators.iter().zip(images) {
            let p = img.normalize(&self.degrees);
            for d in p.degrees(&self.degrees) {
                if d != g.degree - 1 {
                    return Err(Error::input(format!(
                        "image of {} has degree {d}, expected {}",
                        g.name,
                        g.degree - 1
                    )));
                }
            }
            tensor_images.push(p.truncated(self.truncation));
        }
        let p = self
            .normalize(x)
            .apply_derivation(&tensor_images, &self.degrees, -1, self.truncation);
        self.lie_basis().to_lie(&p)
    }

    pub fn check_d_squared(&self) -> DSquaredReport {
        let mut report = DSquaredReport::default();
        for (i, g) in self.generators.iter().enumerate() {
            let dd = self.d(&self.images[i]);
            if !dd.is_zero() {
                report.failures.push(DSquaredFailure {
                    generator: g.name.clone(),
                    residue: dd,
                });
            }
        }
        report
    }

    /// `da + ½[a,a]` mod the truncation.
    pub fn mc_defect(&self, a: &TensorPoly) -> TensorPoly {
        let mut r = self.d(a);
        r.add_scaled(&self.bracket(a, a), &ratio(1, 2));
        r
    }

    pub fn is_mc(&self, a: &TensorPoly) -> Result<bool> {
        for d in a.degrees(&self.degrees) {
            if d != -1 {
                return Err(Error::precondition(format!("MC candidate has degree {d}, expected -1")));
            }
        }
        Ok(self.mc_defect(a).is_zero())
    }

    /// The twisted differential `d_a = d + ad_a` applied to `x`.
    pub fn d_twisted(&self, a: &TensorPoly, x: &TensorPoly) -> TensorPoly {
        let mut r = self.d(x);
        r.add_assign(&self.bracket(a, x));
        r
    }

    /// Same presentation with differential `g -> dg + [a,g]`.
    pub fn twist(&self, a: &LieElement) -> Result<FreeCdglPresentation> {
        let ap = self.normalize(a);
        if !self.is_mc(&ap)? {
            return Err(Error::precondition("twisting element is not Maurer-Cartan"));
        }
        let differential = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let g = LieElement::leaf(i as Letter);
                self.differential[i].plus(&a.bracket(&g, self.truncation))
            })
            .collect();
        FreeCdglPresentation::new(self.generators.clone(), self.truncation, differential)
    }

    /// Largest degree reachable by a word of length at most the truncation.
    fn degree_bounds(&self) -> Option<(i32, i32)> {
        let lo = *self.degrees.iter().min()?;
        let hi = *self.degrees.iter().max()?;
        let n = self.truncation as i32;
        Some((lo.min(lo * n), hi.max(hi * n)))
    }

    /// Connected component at an MC element: `ker d_a` in degree 0, everything
    /// in positive degrees, nothing below.
    pub fn component(&self, a: &LieElement) -> Result<Component> {
        let ap = self.normalize(a);
        if !self.is_mc(&ap)? {
            return Err(Error::precondition("component requires a Maurer-Cartan element"));
        }
        let mut basis = self.lie_basis();
        let letters = self.all_letters();
        let top = self.degree_bounds().map(|(_, hi)| hi).unwrap_or(0);
        let mut degrees = Vec::new();
        for deg in 0..=top.max(0) {
            let mut elems: Vec<(BracketTree, TensorPoly)> = Vec::new();
            for k in 1..=self.truncation {
                elems.extend(basis.basis_with_expansions(&letters, k, deg));
            }
            let polys: Vec<TensorPoly> = if deg == 0 {
                kernel(&elems, |p| self.d_twisted(&ap, p))
            } else {
                elems.into_iter().map(|(_, e)| e).collect()
            };
            if !polys.is_empty() {
                degrees.push((deg, polys));
            }
        }
        Ok(Component {
            twisting: ap,
            degrees,
        })
    }

    /// Per-degree homology over the rationals, computed on the Lie basis of
    /// word length at most the truncation.
    pub fn homology(&self, lo: i32, hi: i32) -> HomologyReport {
        let mut basis = self.lie_basis();
        let letters = self.all_letters();
        let chains = |basis: &mut LieBasis, deg: i32| -> Vec<(BracketTree, TensorPoly)> {
            let mut v = Vec::new();
            for k in 1..=self.truncation {
                v.extend(basis.basis_with_expansions(&letters, k, deg));
            }
            v
        };
        let nonlinear = self.images.iter().any(|p| p.max_length().is_some_and(|m| m >= 2));
        let mut out = HomologyReport::default();
        for deg in lo..=hi {
            let here = chains(&mut basis, deg);
            let above = chains(&mut basis, deg + 1);
            let mut rows: Interner<Word> = Interner::new();
            // boundaries d(C_{deg+1})
            let mut boundaries = Echelon::new();
            for (_, e) in &above {
                let img = self.d(e);
                boundaries.push(intern_vec(&mut rows, img.into_terms()));
            }
            let bdry_rank = boundaries.rank();
            let cycles = kernel(&here, |p| self.d(p));
            let mut reps = Vec::new();
            for z in &cycles {
                let v = intern_vec(&mut rows, z.clone().into_terms());
                if let PushOutcome::Independent = boundaries.push(v) {
                    reps.push(z.clone());
                }
            }
            let warn = nonlinear
                && here
                    .iter()
                    .chain(above.iter())
                    .any(|(t, _)| t.word_length() == self.truncation);
            out.degrees.push(DegreeHomology {
                degree: deg,
                chains: here.len(),
                cycles: cycles.len(),
                boundaries: bdry_rank,
                representatives: reps,
                truncation_warning: warn,
            });
        }
        out
    }
}

/// Kernel of a linear map on the span of `elems`, as tensor polynomials.
pub(crate) fn kernel<F>(elems: &[(BracketTree, TensorPoly)], f: F) -> Vec<TensorPoly>
where
    F: Fn(&TensorPoly) -> TensorPoly,
{
    let mut rows: Interner<Word> = Interner::new();
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (_, e) in elems {
        let img = f(e);
        if let PushOutcome::Dependent(k) = ech.push(intern_vec(&mut rows, img.into_terms())) {
            let mut z = TensorPoly::zero();
            for (j, c) in k {
                z.add_scaled(&elems[j as usize].1, &c);
            }
            if !z.is_zero() {
                out.push(z);
            }
        }
    }
    out
}

/// The connected sub-dgl `L^a` of `(L, d_a)`.
#[derive(Clone, Debug)]
pub struct Component {
    pub twisting: TensorPoly,
    /// `(degree, basis)` for every non-empty degree `>= 0`.
    pub degrees: Vec<(i32, Vec<TensorPoly>)>,
}

impl Component {
    pub fn dimension(&self, degree: i32) -> usize {
        self.degrees
            .iter()
            .find(|(d, _)| *d == degree)
            .map_or(0, |(_, b)| b.len())
    }
}

#[derive(Clone, Debug)]
pub struct DegreeHomology {
    pub degree: i32,
    pub chains: usize,
    pub cycles: usize,
    pub boundaries: usize,
    pub representatives: Vec<TensorPoly>,
    /// Set when basis elements at the truncation length take part in the
    /// computation and the differential is not linear, so dropped terms may matter.
    pub truncation_warning: bool,
}

impl DegreeHomology {
    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }
}

#[derive(Clone, Debug, Default)]
pub struct HomologyReport {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dimension()).collect()
    }

    pub fn get(&self, degree: i32) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|d| d.degree == degree)
    }
}

/// Homology class bookkeeping: decides which class a cycle represents.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: i32,
    rows: Interner<Word>,
    echelon: Echelon,
    boundary_rank: usize,
    representatives: Vec<TensorPoly>,
}

impl HomologyBasis {
    pub fn new(p: &FreeCdglPresentation, degree: i32) -> Self {
        let report = p.homology(degree, degree);
        let dh = report.degrees.into_iter().next().expect("one degree requested");
        let mut basis = p.lie_basis();
        let letters = p.all_letters();
        let mut rows: Interner<Word> = Interner::new();
        let mut echelon = Echelon::new();
        for k in 1..=p.truncation() {
            for (_, e) in basis.basis_with_expansions(&letters, k, degree + 1) {
                echelon.push(intern_vec(&mut rows, p.d(&e).into_terms()));
            }
        }
        let boundary_rank = echelon.rank();
        for z in &dh.representatives {
            echelon.push(intern_vec(&mut rows, z.clone().into_terms()));
        }
        Self {
            degree,
            rows,
            echelon,
            boundary_rank,
            representatives: dh.representatives,
        }
    }

    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[TensorPoly] {
        &self.representatives
    }

    /// Coordinates of the class of a cycle in the representative basis.
    pub fn class_of(&mut self, z: &TensorPoly) -> Result<Vec<Scalar>> {
        let v = intern_vec(&mut self.rows, z.clone().into_terms());
        let x = self
            .echelon
            .solve(v)
            .map_err(|_| Error::consistency("element is not a cycle in the span of the chains"))?;
        // boundary columns come first, representatives after
        let offset = self.echelon.ncols() - self.representatives.len();
        let mut coords = vec![Scalar::zero(); self.representatives.len()];
        for (j, c) in x {
            if let Some(i) = (j as usize).checked_sub(offset) {
                coords[i] = c;
            }
        }
        Ok(coords)
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundary_rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn single_mc(n: usize) -> FreeCdglPresentation {
        let gens = vec![Generator::new("a", -1)];
        let aa = LieElement::from_tree(
            BracketTree::node(BracketTree::Leaf(0), BracketTree::Leaf(0)),
            ratio(-1, 2),
        );
        FreeCdglPresentation::new(gens, n, vec![aa]).unwrap()
    }

    #[test]
    fn abelian_presentation_squares_to_zero() {
        let p = FreeCdglPresentation::free(vec![Generator::new("x", 1), Generator::new("y", 2)], 4).unwrap();
        assert!(p.check_d_squared().passed());
    }

    #[test]
    fn mc_generator_squares_to_zero() {
        for n in 2..=6 {
            assert!(single_mc(n).check_d_squared().passed());
        }
    }

    #[test]
    fn mutated_differential_is_caught() {
        // dx = [a,a] with a, b closed; then perturb to da = b.
        let gens = vec![Generator::new("a", 1), Generator::new("b", 0), Generator::new("x", 3)];
        let aa = LieElement::from_tree(BracketTree::node(BracketTree::Leaf(0), BracketTree::Leaf(0)), int(1));
        let good = FreeCdglPresentation::new(
            gens.clone(),
            3,
            vec![LieElement::zero(), LieElement::zero(), aa.clone()],
        )
        .unwrap();
        assert!(good.check_d_squared().passed());
        let bad = FreeCdglPresentation::new(gens, 3, vec![LieElement::leaf(1), LieElement::zero(), aa]).unwrap();
        let r = bad.check_d_squared();
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].generator, "x");
    }

    #[test]
    fn degree_inconsistent_differential_rejected() {
        let gens = vec![Generator::new("a", 1), Generator::new("b", 1)];
        assert!(FreeCdglPresentation::new(gens, 3, vec![LieElement::leaf(1), LieElement::zero()]).is_err());
    }

    #[test]
    fn mc_checks() {
        let p = single_mc(4);
        assert!(p.is_mc(&TensorPoly::zero()).unwrap());
        assert!(p.is_mc(&TensorPoly::letter(0)).unwrap());
        let q = FreeCdglPresentation::free(vec![Generator::new("a", -1)], 4).unwrap();
        assert!(!q.is_mc(&TensorPoly::letter(0)).unwrap());
        assert!(q.is_mc(&TensorPoly::word(&[0, 0], int(1))).is_err());
    }

    #[test]
    fn twist_by_zero_is_identity() {
        let p = single_mc(4);
        let t = p.twist(&LieElement::zero()).unwrap();
        assert_eq!(t.images(), p.images());
    }

    #[test]
    fn twist_by_non_mc_fails() {
        let q = FreeCdglPresentation::free(vec![Generator::new("a", -1)], 4).unwrap();
        assert!(matches!(q.twist(&LieElement::leaf(0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn twisted_value_on_mc_element() {
        // d_a(a) = da + [a,a] = ½[a,a]
        let p = single_mc(4);
        let a = TensorPoly::letter(0);
        let lhs = p.d_twisted(&a, &a);
        assert_eq!(lhs, p.bracket(&a, &a).scaled(&ratio(1, 2)));
        let t = p.twist(&LieElement::leaf(0)).unwrap();
        assert!(t.check_d_squared().passed());
    }

    #[test]
    fn free_odd_generator_homology() {
        let p = FreeCdglPresentation::free(vec![Generator::new("v", 1)], 5).unwrap();
        assert_eq!(p.homology(1, 4).dims(), vec![1, 1, 0, 0]);
    }

    #[test]
    fn abelian_homology() {
        let gens = vec![Generator::new("x1", 1), Generator::new("x2", 2), Generator::new("x3", 3)];
        let p = FreeCdglPresentation::free(gens, 1).unwrap();
        assert_eq!(p.homology(1, 3).dims(), vec![1, 1, 1]);
    }

    #[test]
    fn mc_point_is_acyclic() {
        let p = single_mc(6);
        let h = p.homology(-8, 2);
        assert!(h.dims().iter().all(|&d| d == 0));
    }

    #[test]
    fn component_drops_nonclosed_degree_zero() {
        let gens = vec![Generator::new("x", 0), Generator::new("y", -1)];
        let p = FreeCdglPresentation::new(gens, 1, vec![LieElement::leaf(1), LieElement::zero()]).unwrap();
        let c = p.component(&LieElement::zero()).unwrap();
        assert_eq!(c.dimension(0), 0);
    }

    #[test]
    fn component_of_positive_presentation_is_unchanged() {
        let p = FreeCdglPresentation::free(vec![Generator::new("v", 1)], 3).unwrap();
        let c = p.component(&LieElement::zero()).unwrap();
        assert_eq!(c.dimension(0), 0);
        assert_eq!(c.dimension(1), 1);
        assert_eq!(c.dimension(2), 1);
        assert_eq!(c.dimension(3), 0);
    }

    #[test]
    fn extend_derivation_zero_map() {
        let p = FreeCdglPresentation::free(vec![Generator::new("v", 1)], 3).unwrap();
        let x = LieElement::from_tree(BracketTree::node(BracketTree::Leaf(0), BracketTree::Leaf(0)), int(1));
        let r = p.extend_derivation(&[LieElement::zero()], &x).unwrap();
        assert!(r.is_zero());
    }
}
