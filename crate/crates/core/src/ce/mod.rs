//! Chevalley-Eilenberg cochains of a truncated dgl.
//!
//! Generators are dual to the Lie basis of each `L_k`, shifted up by one. The
//! differential on a generator `x^b` is
//! `-sum_c <b*, dc> x^c + 1/2 sum_{c,c'} (-1)^{|c|} <b*, [c,c']> x^c x^{c'}`,
//! extended as a derivation of the free graded-commutative algebra.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lie::linalg::{intern_vec, Echelon, Interner, PushOutcome};
use crate::lie::presentation::FreeCdglPresentation;
use crate::lie::tensor::TensorPoly;
use crate::lie::tree::BracketTree;
use crate::scalar::{fmt_scalar, int, ratio, Scalar};

/// Sorted generator indices; odd generators appear at most once.
pub type Monomial = SmallVec<[u16; 8]>;
pub type CommPoly = BTreeMap<Monomial, Scalar>;

#[derive(Clone, Debug)]
pub struct CeGenerator {
    pub name: String,
    pub degree: i32,
    /// The basis element of `L_{degree-1}` this generator is dual to.
    pub dual_of: TensorPoly,
}

#[derive(Clone, Debug)]
pub struct CdgaPresentation {
    pub generators: Vec<CeGenerator>,
    pub differential: Vec<CommPoly>,
    pub cap: i32,
}

fn add(p: &mut CommPoly, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(m.clone()).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&m);
    }
}

impl CdgaPresentation {
    pub fn degree(&self, g: u16) -> i32 {
        self.generators[g as usize].degree
    }

    pub fn monomial_degree(&self, m: &[u16]) -> i32 {
        m.iter().map(|&g| self.degree(g)).sum()
    }

    /// Product of monomials with the Koszul sign of sorting; `None` when an odd
    /// generator repeats.
    pub fn mul_monomials(&self, a: &[u16], b: &[u16]) -> Option<(Monomial, Scalar)> {
        let mut out: Monomial = a.iter().copied().collect();
        let mut negative = false;
        for &g in b {
            // insert g after every element <= g, passing the larger ones
            let pos = out.iter().position(|&h| h > g).unwrap_or(out.len());
            if self.degree(g) % 2 != 0 {
                if out.contains(&g) {
                    return None;
                }
                let passed = out[pos..].iter().filter(|&&h| self.degree(h) % 2 != 0).count();
                negative ^= passed % 2 == 1;
            }
            out.insert(pos, g);
        }
        Some((out, if negative { -Scalar::one() } else { Scalar::one() }))
    }

    pub fn mul(&self, x: &CommPoly, y: &CommPoly) -> CommPoly {
        let mut out = CommPoly::new();
        for (a, c) in x {
            for (b, e) in y {
                if let Some((m, s)) = self.mul_monomials(a, b) {
                    add(&mut out, m, c * e * s);
                }
            }
        }
        out
    }

    /// `d` as a derivation of degree `+1`.
    pub fn d(&self, x: &CommPoly) -> CommPoly {
        let mut out = CommPoly::new();
        for (m, c) in x {
            let mut prefix = 0;
            for i in 0..m.len() {
                let g = m[i];
                let dg = &self.differential[g as usize];
                if !dg.is_empty() {
                    let sign = if prefix % 2 == 0 { c.clone() } else { -c.clone() };
                    let left: CommPoly = [(m[..i].iter().copied().collect(), Scalar::one())].into();
                    let right: CommPoly = [(m[i + 1..].iter().copied().collect(), sign)].into();
                    let term = self.mul(&self.mul(&left, dg), &right);
                    for (k, v) in term {
                        add(&mut out, k, v);
                    }
                }
                prefix += self.degree(g);
            }
        }
        out
    }

    /// Monomials of total degree `k`.
    pub fn monomials(&self, k: i32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = Monomial::new();
        fn rec(p: &CdgaPresentation, start: usize, left: i32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for g in start..p.generators.len() {
                let d = p.generators[g].degree;
                if d > left || d <= 0 {
                    continue;
                }
                // an odd generator at most once
                let next = if d % 2 != 0 { g + 1 } else { g };
                cur.push(g as u16);
                rec(p, next, left - d, cur, out);
                cur.pop();
            }
        }
        rec(self, 0, k, &mut cur, &mut out);
        out
    }

    /// Generators of degree `< cap` (where `d^2` is fully determined) with `d^2 != 0`.
    pub fn d_squared_failures(&self) -> Vec<String> {
        (0..self.generators.len())
            .filter(|&g| self.generators[g].degree < self.cap && !self.d(&self.differential[g]).is_empty())
            .map(|g| self.generators[g].name.clone())
            .collect()
    }

    pub fn display_poly(&self, p: &CommPoly) -> String {
        if p.is_empty() {
            return "0".into();
        }
        p.iter()
            .map(|(m, c)| {
                let mon = if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter().map(|&g| self.generators[g as usize].name.as_str()).collect::<Vec<_>>().join("*")
                };
                format!("{} {}", fmt_scalar(c), mon)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = self
            .generators
            .iter()
            .map(|g| json!({"name": g.name, "degree": g.degree}))
            .collect();
        let diff: Vec<Value> = self
            .differential
            .iter()
            .map(|p| {
                Value::Array(
                    p.iter()
                        .map(|(m, c)| {
                            let names: Vec<&str> =
                                m.iter().map(|&g| self.generators[g as usize].name.as_str()).collect();
                            json!([fmt_scalar(c), names])
                        })
                        .collect(),
                )
            })
            .collect();
        json!({"generators": gens, "differential": diff, "cap": self.cap})
    }
}

/// Lie basis of `L_k` through the truncation, in the deterministic basis order.
fn degree_basis(l: &FreeCdglPresentation, k: i32) -> Vec<(BracketTree, TensorPoly)> {
    let mut basis = l.lie_basis();
    let letters = l.all_letters();
    let mut out = Vec::new();
    for len in 1..=l.truncation() {
        out.extend(basis.basis_with_expansions(&letters, len, k));
    }
    out
}

/// Cochains on `L`, exact in degrees `<= cap`. Generators go up to degree
/// `cap + 1` so that `d` is complete on every cochain of degree `<= cap`.
pub fn ce(l: &FreeCdglPresentation, cap: i32) -> Result<CdgaPresentation> {
    if l.degrees().iter().any(|&d| d < 0) {
        return Err(Error::input("cochains need a non-negatively graded dgl"));
    }
    let mut generators = Vec::new();
    let mut index: HashMap<(i32, BracketTree), u16> = HashMap::new();
    let mut by_degree: BTreeMap<i32, Vec<u16>> = BTreeMap::new();
    for k in 0..=cap {
        for (i, (tree, e)) in degree_basis(l, k).into_iter().enumerate() {
            let g = generators.len() as u16;
            generators.push(CeGenerator {
                name: format!("x{}_{}", k + 1, i),
                degree: k + 1,
                dual_of: e,
            });
            index.insert((k, tree), g);
            by_degree.entry(k).or_default().push(g);
        }
    }
    let mut p = CdgaPresentation {
        differential: vec![CommPoly::new(); generators.len()],
        generators,
        cap,
    };
    let mut basis = l.lie_basis();
    let coords = |basis: &mut crate::lie::basis::LieBasis, x: &TensorPoly, k: i32| -> Result<Vec<(u16, Scalar)>> {
        basis
            .coordinates(x)?
            .into_iter()
            .map(|(t, c)| {
                index
                    .get(&(k, t))
                    .map(|&g| (g, c))
                    .ok_or_else(|| Error::consistency("coordinate outside the dual basis"))
            })
            .collect()
    };
    let gens = p.generators.clone();
    for (c, gc) in gens.iter().enumerate() {
        let kc = gc.degree - 1;
        // linear part: x^b gets -x^c for every b with <b*, dc> != 0
        if kc >= 1 {
            for (b, coef) in coords(&mut basis, &l.d(&gc.dual_of), kc - 1)? {
                add(&mut p.differential[b as usize], [c as u16].into_iter().collect(), -coef);
            }
        }
        for (c2, gc2) in gens.iter().enumerate() {
            let k2 = gc2.degree - 1;
            if kc + k2 > cap {
                continue;
            }
            let br = l.bracket(&gc.dual_of, &gc2.dual_of);
            if br.is_zero() {
                continue;
            }
            let sign = if kc % 2 == 0 { ratio(1, 2) } else { ratio(-1, 2) };
            let Some((m, s)) = p.mul_monomials(&[c as u16], &[c2 as u16]) else {
                continue;
            };
            for (b, coef) in coords(&mut basis, &br, kc + k2)? {
                add(&mut p.differential[b as usize], m.clone(), &coef * &sign * &s);
            }
        }
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyDegree {
    pub degree: i32,
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
}

impl CohomologyDegree {
    pub fn dimension(&self) -> usize {
        self.cocycles - self.coboundaries
    }
}

fn kernel_and_rank(p: &CdgaPresentation, mons: &[Monomial]) -> (usize, usize) {
    let mut rows: Interner<Monomial> = Interner::new();
    let mut ech = Echelon::new();
    let mut kernel = 0;
    for m in mons {
        let dm = p.d(&[(m.clone(), Scalar::one())].into());
        if let PushOutcome::Dependent(_) = ech.push(intern_vec(&mut rows, dm)) {
            kernel += 1;
        }
    }
    (kernel, ech.rank())
}

/// Cohomology in degrees `0..=cap` (at most the presentation's cap) by
/// elimination on monomial bases.
pub fn cdga_cohomology(p: &CdgaPresentation, cap: i32) -> Vec<CohomologyDegree> {
    let cap = cap.min(p.cap);
    let mut out = Vec::new();
    let mut prev_rank = 0;
    for k in 0..=cap {
        let mons = p.monomials(k);
        let (ker, rank) = kernel_and_rank(p, &mons);
        out.push(CohomologyDegree {
            degree: k,
            cochains: mons.len(),
            cocycles: ker,
            coboundaries: prev_rank,
        });
        prev_rank = rank;
    }
    out
}

pub fn cohomology_dims(p: &CdgaPresentation, cap: i32) -> Vec<usize> {
    cdga_cohomology(p, cap).iter().map(CohomologyDegree::dimension).collect()
}

/// `sum (-1)^k dim` of cochains and of cohomology through `cap`; these agree
/// whenever the top-degree differential vanishes, and otherwise differ by its rank.
pub fn euler_characteristics(p: &CdgaPresentation, cap: i32) -> (i64, i64, usize) {
    let rows = cdga_cohomology(p, cap);
    let top_rank = {
        let mons = p.monomials(cap);
        kernel_and_rank(p, &mons).1
    };
    let sgn = |k: i32| if k % 2 == 0 { 1 } else { -1 };
    let chains = rows.iter().map(|r| sgn(r.degree) * r.cochains as i64).sum();
    let homology = rows.iter().map(|r| sgn(r.degree) * r.dimension() as i64).sum();
    (chains, homology, top_rank)
}

/// Coefficient of `x^2` in `d y` for the cochains on one odd generator.
pub fn square_coefficient(p: &CdgaPresentation, y: u16, x: u16) -> Scalar {
    p.differential[y as usize]
        .get(&Monomial::from_slice(&[x, x]))
        .cloned()
        .unwrap_or_else(|| int(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::presentation::Generator;
    use crate::lie::tree::LieElement;

    fn free(gens: &[(&str, i32)], n: usize) -> FreeCdglPresentation {
        FreeCdglPresentation::free(gens.iter().map(|(s, d)| Generator::new(*s, *d)).collect(), n).unwrap()
    }

    #[test]
    fn abelian_degree_one() {
        let p = ce(&free(&[("u", 1)], 1), 6).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.generators[0].degree, 2);
        assert!(p.differential[0].is_empty());
        assert_eq!(cohomology_dims(&p, 6), [1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn sphere_model() {
        let p = ce(&free(&[("v", 1)], 4), 5).unwrap();
        assert_eq!(p.generators.iter().map(|g| g.degree).collect::<Vec<_>>(), [2, 3]);
        assert!(p.differential[0].is_empty());
        assert!(!square_coefficient(&p, 1, 0).is_zero());
        assert_eq!(cohomology_dims(&p, 5), [1, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn zero_dgl_is_the_ground_field() {
        let l = FreeCdglPresentation::free(Vec::new(), 3).unwrap();
        let p = ce(&l, 4).unwrap();
        assert_eq!(cohomology_dims(&p, 4), [1, 0, 0, 0, 0]);
    }

    #[test]
    fn d_squared_with_bracket_and_differential() {
        // |a| = 1, |b| = 3, |c| = 5 with db = [a,a], dc = [a,b]: d^2 c = -[a,[a,a]] = 0
        let gens = vec![Generator::new("a", 1), Generator::new("b", 3), Generator::new("c", 5)];
        let aa = LieElement::from_tree(BracketTree::node(BracketTree::Leaf(0), BracketTree::Leaf(0)), int(1));
        let ab = LieElement::from_tree(BracketTree::node(BracketTree::Leaf(0), BracketTree::Leaf(1)), int(1));
        let l = FreeCdglPresentation::new(gens, 4, vec![LieElement::zero(), aa, ab]).unwrap();
        assert!(l.check_d_squared().passed());
        let p = ce(&l, 8).unwrap();
        assert!(p.d_squared_failures().is_empty(), "{:?}", p.d_squared_failures());
        // |v| = |w| = 1, |u| = 3, du = [v,w]
        let gens = vec![Generator::new("v", 1), Generator::new("w", 1), Generator::new("u", 3)];
        let vw = LieElement::from_tree(BracketTree::node(BracketTree::Leaf(0), BracketTree::Leaf(1)), int(1));
        let l = FreeCdglPresentation::new(gens, 4, vec![LieElement::zero(), LieElement::zero(), vw]).unwrap();
        let p = ce(&l, 7).unwrap();
        assert!(p.d_squared_failures().is_empty(), "{:?}", p.d_squared_failures());
        let two = ce(&free(&[("v", 1), ("w", 1), ("u", 2)], 4), 7).unwrap();
        assert!(two.d_squared_failures().is_empty());
    }

    #[test]
    fn graded_commutative_product() {
        let p = ce(&free(&[("v", 1), ("w", 2)], 2), 4).unwrap();
        // generators: x2_0 (even), x3_0 (odd), ...
        let odd = p.generators.iter().position(|g| g.degree == 3).unwrap() as u16;
        assert!(p.mul_monomials(&[odd], &[odd]).is_none());
    }
}
