//! The comparison map `Phi : LL<L> -> L` on finitely presented inputs.
//!
//! Elements of `LL_n` are formal trees whose leaves are realization simplices of
//! dimension `n+1`. A leaf goes to `(-1)^n phi(a_{0..n+1})`; a bracket goes to
//! the bracket of the values on its Alexander-Whitney pieces.

use std::cell::RefCell;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Realization, RealizationSimplex};
use crate::cosimplicial::Tower;
use crate::error::{Error, Result};
use crate::lie::presentation::FreeCdglPresentation;
use crate::lie::tensor::TensorPoly;
use crate::lie::tree::{BracketTree, LieElement};
use crate::quillen::LoopLie;
use crate::scalar::{int, sign};

pub struct Comparison {
    ll: LoopLie<Realization>,
    cache: RefCell<HashMap<(usize, BracketTree), TensorPoly>>,
}

impl Comparison {
    /// Trees are cut at the target's truncation: `Phi` never lowers word length.
    pub fn new(realization: Realization) -> Self {
        let n = realization.target().truncation();
        Self {
            ll: LoopLie::new(realization, n),
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn realization(&self) -> &Realization {
        self.ll.space()
    }

    pub fn loop_lie(&self) -> &LoopLie<Realization> {
        &self.ll
    }

    fn target(&self) -> &FreeCdglPresentation {
        self.realization().target()
    }

    /// A simplex of dimension `n+1` as an element of `LL_n`; zero when `s_0`-degenerate.
    pub fn leaf(&self, s: &RealizationSimplex) -> LieElement {
        self.ll.leaf(s)
    }

    /// `d = d_0` on `LL`.
    pub fn d(&self, e: &LieElement) -> LieElement {
        self.ll.face(0, e)
    }

    /// The bracket of `lambda`: shuffle products of degeneracies.
    pub fn bracket(&self, n: usize, x: &LieElement, m: usize, y: &LieElement) -> LieElement {
        self.ll.shuffle_bracket_tree(n, x, m, y)
    }

    /// `Phi` on an element of `LL_n`.
    pub fn phi(&self, n: usize, e: &LieElement) -> Result<TensorPoly> {
        for (t, _) in e.terms() {
            for l in t.leaves() {
                let k = self.ll.level_of(l);
                if k != n {
                    return Err(Error::input(format!("leaf of level {k} in an element of level {n}")));
                }
            }
        }
        Ok(self.phi_unchecked(n, e))
    }

    fn phi_unchecked(&self, n: usize, e: &LieElement) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (t, c) in e.terms() {
            out.add_scaled(&self.phi_tree(n, t), c);
        }
        out
    }

    fn phi_tree(&self, n: usize, t: &BracketTree) -> TensorPoly {
        let key = (n, t.clone());
        if let Some(v) = self.cache.borrow().get(&key) {
            return v.clone();
        }
        let v = match t {
            BracketTree::Leaf(l) => {
                let s = self.ll.simplex(*l);
                let top = self.realization().alphabet(s.level).top();
                s.images[top as usize].scaled(&sign(n as i64))
            }
            BracketTree::Node(a, b) => {
                let a = LieElement::from_tree((**a).clone(), int(1));
                let b = LieElement::from_tree((**b).clone(), int(1));
                let mut out = TensorPoly::zero();
                // the k = 0 and k = n pieces live in LL_0 = 0
                for k in 1..n {
                    let front = (k + 1..=n).rev().fold(a.clone(), |acc, i| self.ll.face(i, &acc));
                    let back = (0..k).fold(b.clone(), |acc, _| self.ll.face(0, &acc));
                    let x = self.phi_unchecked(k, &front);
                    let y = self.phi_unchecked(n - k, &back);
                    out.add_assign(&self.target().bracket(&x, &y));
                }
                out
            }
        };
        self.cache.borrow_mut().insert(key, v.clone());
        v
    }
}

#[derive(Clone, Debug)]
pub struct PhiCase {
    pub identity: &'static str,
    pub inputs: String,
    pub truncation: usize,
    pub residue: TensorPoly,
}

impl PhiCase {
    pub fn passed(&self) -> bool {
        self.residue.is_zero()
    }
}

#[derive(Clone, Debug, Default)]
pub struct PhiReport {
    pub cases: Vec<PhiCase>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(PhiCase::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PhiCase> {
        self.cases.iter().filter(|c| !c.passed())
    }
}

fn show(target: &FreeCdglPresentation, p: &TensorPoly) -> String {
    match target.lie_basis().to_lie(p) {
        Ok(e) if e.is_zero() => "0".to_string(),
        Ok(e) => e.display(&target.names()),
        Err(_) => format!("{p:?}"),
    }
}

struct Sample {
    level: usize,
    element: LieElement,
    label: String,
}

/// Witness-generated samples: `Phi(witness x) = x` on a basis of each `L_n`,
/// `Phi d = d Phi` on random combinations of witnesses and on their brackets,
/// and `Phi [w,w'] = [Phi w, Phi w']` on random pairs with `n + m <= 4`.
pub fn check_phi(target: &FreeCdglPresentation, tower: Tower, seed: u64, per_kind: usize) -> Result<PhiReport> {
    let max_level = tower.max_level().saturating_sub(1).min(3);
    if max_level == 0 {
        return Err(Error::input("check_phi needs a tower through level 2 at least"));
    }
    let real = Realization::new(target.clone(), Some(tower));
    // witnesses are validated at the tower's truncation, but Phi itself never
    // reads the tower, so its identities are compared at the target's
    let trunc = target.truncation();
    let cmp = Comparison::new(real);
    let real = cmp.realization();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PhiReport::default();
    let mut push = |identity, inputs: String, residue: TensorPoly| {
        report.cases.push(PhiCase {
            identity,
            inputs,
            truncation: trunc,
            residue: residue.truncated(trunc),
        })
    };

    let mut basis = target.lie_basis();
    let letters = target.all_letters();
    let mut witnesses: Vec<Vec<(TensorPoly, RealizationSimplex)>> = vec![Vec::new(); max_level + 1];
    for n in 1..=max_level {
        for k in 1..=target.truncation() {
            for (_, x) in basis.basis_with_expansions(&letters, k, n as i32) {
                let w = real.surjectivity_witness(n, &x)?;
                let got = cmp.phi(n, &cmp.leaf(&w))?;
                push("Phi(witness(x)) = x", show(target, &x), got.minus(&x));
                witnesses[n].push((x, w));
            }
        }
    }

    let sample = |rng: &mut ChaCha8Rng, n: usize| -> Sample {
        let mut element = LieElement::zero();
        let mut x = TensorPoly::zero();
        for (xi, w) in &witnesses[n] {
            let c: i64 = rng.gen_range(-2..=2);
            if c != 0 {
                element.add_scaled(&cmp.leaf(w), &int(c));
                x.add_scaled(xi, &int(c));
            }
        }
        Sample {
            level: n,
            element,
            label: format!("witness({})", show(target, &x)),
        }
    };

    for n in 1..=max_level {
        for _ in 0..per_kind {
            let s = sample(&mut rng, n);
            let lhs = if n == 1 { TensorPoly::zero() } else { cmp.phi(n - 1, &cmp.d(&s.element))? };
            let rhs = target.d(&cmp.phi(n, &s.element)?);
            push("Phi(d w) = d Phi(w)", format!("level {n}: {}", s.label), lhs.minus(&rhs));
        }
    }

    let pairs: Vec<(usize, usize)> = (1..=max_level)
        .flat_map(|n| (1..=max_level).map(move |m| (n, m)))
        .filter(|(n, m)| n + m <= 4)
        .collect();
    for &(n, m) in &pairs {
        for _ in 0..per_kind {
            let a = sample(&mut rng, n);
            let b = sample(&mut rng, m);
            let br = cmp.bracket(a.level, &a.element, b.level, &b.element);
            let lhs = cmp.phi(n + m, &br)?;
            let rhs = target.bracket(&cmp.phi(n, &a.element)?, &cmp.phi(m, &b.element)?);
            let inputs = format!("levels ({n},{m}): {}, {}", a.label, b.label);
            push("Phi[w,w'] = [Phi w, Phi w']", inputs.clone(), lhs.minus(&rhs));
            let dl = cmp.phi(n + m - 1, &cmp.d(&br))?;
            let dr = target.d(&lhs);
            push("Phi(d[w,w']) = d Phi[w,w']", inputs, dl.minus(&dr));
        }
    }
    Ok(report)
}
