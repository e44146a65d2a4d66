//! Inductive construction of the simplices `L_n`.
//!
//! Every generator `a_I` gets the differential of the top generator of
//! `L_{|I|-1}`, relabeled along the face `I`. So only one top differential per
//! level is stored, and cofaces commute with `d` by construction.
//!
//! At level `k >= 2` the top differential is
//! `d a_{0..k} = (-1)^k a_{0..k-1} - Gamma - [a_0, a_{0..k}]`, where `Gamma` lives on
//! the horn generators (all but `a_{0..k}` and `a_{0..k-1}`) and solves
//! `d_{a_0} Gamma = (-1)^k d_{a_0} a_{0..k-1}`. Codegeneracies send the top generator
//! to zero, so compatibility with `sigma_j` asks `sigma_j Gamma = (-1)^k sigma_j a_{0..k-1}`;
//! these equations are added to the system when requested.

use num_traits::Zero;

use super::simplex::{level_sign, CosimplicialMap, SimplexAlphabet};
use crate::error::{Error, Result};
use crate::lie::basis::LieBasis;
use crate::lie::format::{element_to_json, write_presentation};
use crate::lie::linalg::{intern_vec, Echelon, Interner, SparseVec};
use crate::lie::presentation::FreeCdglPresentation;
use crate::lie::tensor::{Letter, TensorPoly, Word};
use crate::lie::tree::LieElement;
use crate::scalar::{bernoulli, factorial, int, ratio};

/// Truncation used when none is given: 4 up to level 3, 3 at level 4 and above.
pub fn default_truncation(n: usize) -> usize {
    if n <= 3 {
        4
    } else {
        3
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    /// Closed formula (levels 0 and 1).
    Fixed,
    /// Length by length with the length-preserving part of `d_{a_0}`.
    Triangular,
    /// One system over all lengths.
    Joint,
}

impl SolveMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::Fixed => "fixed",
            SolveMethod::Triangular => "triangular",
            SolveMethod::Joint => "joint",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LevelTrace {
    pub level: usize,
    pub method: SolveMethod,
    /// `Gamma` split by word length, over the generators of that level.
    pub gamma: Vec<(usize, LieElement)>,
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub truncation: usize,
    /// Impose compatibility with codegeneracies while solving for `Gamma`.
    pub codegeneracy_constraints: bool,
}

impl BuildOptions {
    pub fn new(truncation: usize) -> Self {
        Self {
            truncation,
            codegeneracy_constraints: true,
        }
    }
}

/// Called after each length of the triangular scheme with the freshly chosen `Gamma_m`.
pub type GammaHook<'a> = dyn FnMut(&HornSolver, usize, &mut TensorPoly) -> Result<()> + 'a;

/// Top differentials of `L_0 .. L_n` at one truncation.
#[derive(Clone, Debug)]
pub struct Tower {
    options: BuildOptions,
    alphabets: Vec<SimplexAlphabet>,
    tops: Vec<TensorPoly>,
    top_trees: Vec<LieElement>,
    traces: Vec<LevelTrace>,
}

#[derive(Clone, Debug)]
pub struct LnPresentation {
    pub n: usize,
    pub alphabet: SimplexAlphabet,
    pub presentation: FreeCdglPresentation,
    pub trace: Vec<LevelTrace>,
}

impl Tower {
    pub fn build(n: usize, options: BuildOptions) -> Result<Tower> {
        Self::build_with_hook(n, options, &mut |_, _, _| Ok(()))
    }

    pub fn build_with_hook(n: usize, options: BuildOptions, hook: &mut GammaHook) -> Result<Tower> {
        if options.truncation < 2 {
            return Err(Error::input("the simplices need truncation at least 2"));
        }
        let mut tower = Tower {
            options,
            alphabets: Vec::new(),
            tops: Vec::new(),
            top_trees: Vec::new(),
            traces: Vec::new(),
        };
        for k in 0..=n {
            tower.push_level(k, hook)?;
        }
        Ok(tower)
    }

    pub fn truncation(&self) -> usize {
        self.options.truncation
    }

    pub fn options(&self) -> BuildOptions {
        self.options
    }

    pub fn max_level(&self) -> usize {
        self.tops.len() - 1
    }

    pub fn alphabet(&self, k: usize) -> &SimplexAlphabet {
        &self.alphabets[k]
    }

    /// `d a_{0..k}` over the generators of `L_k`.
    pub fn top(&self, k: usize) -> &TensorPoly {
        &self.tops[k]
    }

    pub fn top_tree(&self, k: usize) -> &LieElement {
        &self.top_trees[k]
    }

    pub fn traces(&self) -> &[LevelTrace] {
        &self.traces
    }

    /// Tensor images of `d` on every generator of level `k` that only involve
    /// lower tops (the top generator gets zero).
    fn lower_images(&self, k: usize) -> Vec<TensorPoly> {
        let alpha = &self.alphabets[k];
        (0..alpha.len() as Letter)
            .map(|l| {
                let s = alpha.subset(l);
                let j = s.len() - 1;
                if j >= self.tops.len() {
                    return TensorPoly::zero();
                }
                let src = &self.alphabets[j];
                let inc = alpha.face_inclusion(s);
                self.tops[j].relabel(|x| Some(inc(src.subset(x))))
            })
            .collect()
    }

    fn push_level(&mut self, k: usize, hook: &mut GammaHook) -> Result<()> {
        let n = self.options.truncation;
        let alpha = SimplexAlphabet::new(k)?;
        let degrees = alpha.degrees();
        let mut basis = LieBasis::new(degrees.clone());
        let (top, method, gamma) = match k {
            0 => {
                let a = TensorPoly::letter(0);
                (a.bracket(&a, &degrees, n).scaled(&ratio(-1, 2)), SolveMethod::Fixed, Vec::new())
            }
            1 => (interval_top(&alpha, n), SolveMethod::Fixed, Vec::new()),
            _ => {
                self.alphabets.push(alpha.clone());
                let solver = HornSolver::new(self, k)?;
                self.alphabets.pop();
                let omega = solver.top_rhs();
                let targets = self
                    .options
                    .codegeneracy_constraints
                    .then(|| solver.top_codegeneracy_targets());
                let linear = solver.top_linear_gamma();
                let (g, method) = solver.solve_with_hook(&omega, targets.as_deref(), Some(&linear), hook)?;
                let a0 = TensorPoly::letter(alpha.vertex(0));
                let at = TensorPoly::letter(alpha.top());
                let facet = TensorPoly::letter(alpha.last_facet().expect("k >= 1"));
                let mut t = facet.scaled(&level_sign(k));
                t.sub_assign(&g);
                t.sub_assign(&a0.bracket(&at, &degrees, n));
                let mut gamma = Vec::new();
                for m in 1..=n {
                    let part = g.length_part(m);
                    if !part.is_zero() {
                        gamma.push((m, basis.to_lie(&part)?));
                    }
                }
                (t, method, gamma)
            }
        };
        if top.length_part(1) != alpha.boundary(alpha.top()) {
            return Err(Error::consistency(format!(
                "linear part of the top differential at level {k} is not the simplicial boundary"
            )));
        }
        let tree = basis.to_lie(&top)?;
        self.alphabets.push(alpha);
        self.tops.push(top);
        self.top_trees.push(tree);
        self.traces.push(LevelTrace { level: k, method, gamma });
        Ok(())
    }

    /// The presentation of `L_k`.
    pub fn level(&self, k: usize) -> Result<LnPresentation> {
        if k > self.max_level() {
            return Err(Error::input(format!("level {k} was not built")));
        }
        let alpha = self.alphabets[k].clone();
        let differential = (0..alpha.len() as Letter)
            .map(|l| {
                let s = alpha.subset(l);
                let j = s.len() - 1;
                let src = &self.alphabets[j];
                let inc = alpha.face_inclusion(s);
                self.top_trees[j].relabel(&|x| Some(inc(src.subset(x))))
            })
            .collect();
        let presentation = FreeCdglPresentation::new(alpha.generators(), self.options.truncation, differential)?;
        Ok(LnPresentation {
            n: k,
            alphabet: alpha,
            presentation,
            trace: self.traces[..=k].to_vec(),
        })
    }
}

impl LnPresentation {
    /// The presentation followed by the per-level solver trace.
    pub fn to_text(&self) -> String {
        let trace: Vec<serde_json::Value> = self
            .trace
            .iter()
            .map(|t| {
                let alpha = SimplexAlphabet::new(t.level).expect("traced levels are valid");
                let gamma: serde_json::Map<String, serde_json::Value> = t
                    .gamma
                    .iter()
                    .map(|(m, e)| (m.to_string(), element_to_json(e, &|l| alpha.name(l))))
                    .collect();
                serde_json::json!({"level": t.level, "method": t.method.as_str(), "gamma": gamma})
            })
            .collect();
        write_presentation(&self.presentation, &[("n", self.n.into()), ("trace", trace.into())])
    }
}

/// `[a01,a1] + sum_k B_k/k! ad_{a01}^k (a1 - a0)`, truncated.
fn interval_top(alpha: &SimplexAlphabet, n: usize) -> TensorPoly {
    let degrees = alpha.degrees();
    let a0 = TensorPoly::letter(alpha.vertex(0));
    let a1 = TensorPoly::letter(alpha.vertex(1));
    let a01 = TensorPoly::letter(alpha.top());
    let b = bernoulli(n);
    let mut out = a01.bracket(&a1, &degrees, n);
    let mut term = a1.minus(&a0);
    for (k, bk) in b.iter().enumerate().take(n) {
        if term.is_zero() {
            break;
        }
        out.add_scaled(&term, &(bk / factorial(k as u32)));
        term = a01.bracket(&term, &degrees, n);
    }
    out
}

/// Horn linear systems at one level.
pub struct HornSolver {
    level: usize,
    truncation: usize,
    alphabet: SimplexAlphabet,
    degrees: Vec<i32>,
    images: Vec<TensorPoly>,
    linear: Vec<TensorPoly>,
    horn: Vec<Letter>,
    sigmas: Vec<CosimplicialMap>,
}

type RowKey = (u8, Word);

impl HornSolver {
    /// Uses the tops of levels `< k` from `tower` (which must already know the level-`k` alphabet).
    fn new(tower: &Tower, k: usize) -> Result<Self> {
        let alphabet = tower.alphabets[k].clone();
        let images = tower.lower_images(k);
        let linear = images.iter().map(|p| p.length_part(1)).collect();
        let facet = alphabet.last_facet();
        let horn = (0..alphabet.len() as Letter)
            .filter(|&l| l != alphabet.top() && Some(l) != facet)
            .collect();
        let sigmas = (0..k)
            .map(|j| CosimplicialMap::codegeneracy(j, k - 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            level: k,
            truncation: tower.options.truncation,
            degrees: alphabet.degrees(),
            alphabet,
            images,
            linear,
            horn,
            sigmas,
        })
    }

    /// Solver for level `k` of an already built tower (levels `< k` are used).
    pub fn for_level(tower: &Tower, k: usize) -> Result<Self> {
        if k < 2 || k > tower.max_level() {
            return Err(Error::input(format!("horn solver needs 2 <= k <= {}", tower.max_level())));
        }
        Self::new(tower, k)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn alphabet(&self) -> &SimplexAlphabet {
        &self.alphabet
    }

    pub fn horn_letters(&self) -> &[Letter] {
        &self.horn
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `d_{a_0} = d + [a_0, -]` on elements of the horn algebra.
    pub fn d_a0(&self, x: &TensorPoly) -> TensorPoly {
        let a0 = TensorPoly::letter(self.alphabet.vertex(0));
        let mut r = x.apply_derivation(&self.images, &self.degrees, -1, self.truncation);
        r.add_assign(&a0.bracket(x, &self.degrees, self.truncation));
        r
    }

    /// Length-preserving part of `d_{a_0}`.
    pub fn d1(&self, x: &TensorPoly) -> TensorPoly {
        x.apply_derivation(&self.linear, &self.degrees, -1, usize::MAX)
    }

    /// `(-1)^k d_{a_0} a_{0..k-1}`.
    pub fn top_rhs(&self) -> TensorPoly {
        let facet = TensorPoly::letter(self.alphabet.last_facet().expect("k >= 1"));
        self.d_a0(&facet).scaled(&level_sign(self.level))
    }

    /// The length-1 part of `Gamma` forced by the linear part of `d`:
    /// `(-1)^k a_{0..k-1} - boundary(a_{0..k})`.
    pub fn top_linear_gamma(&self) -> TensorPoly {
        let facet = TensorPoly::letter(self.alphabet.last_facet().expect("k >= 1"));
        facet
            .scaled(&level_sign(self.level))
            .minus(&self.alphabet.boundary(self.alphabet.top()))
    }

    /// `(-1)^k sigma_j a_{0..k-1}` for `j = 0..k-1`.
    pub fn top_codegeneracy_targets(&self) -> Vec<TensorPoly> {
        let facet = TensorPoly::letter(self.alphabet.last_facet().expect("k >= 1"));
        self.sigmas
            .iter()
            .map(|s| s.apply(&facet).scaled(&level_sign(self.level)))
            .collect()
    }

    fn is_horn(&self, p: &TensorPoly) -> bool {
        let top = self.alphabet.top();
        let facet = self.alphabet.last_facet();
        p.terms().all(|(w, _)| w.iter().all(|&l| l != top && Some(l) != facet))
    }

    /// Solve `d_{a_0} Gamma = omega` on the horn algebra, optionally with `sigma_j Gamma = targets[j]`.
    pub fn solve(&self, omega: &TensorPoly, targets: Option<&[TensorPoly]>) -> Result<(TensorPoly, SolveMethod)> {
        self.solve_with_hook(omega, targets, None, &mut |_, _, _| Ok(()))
    }

    /// Letters the unknown may use: the horn, plus the facet `a_{0..k-1}` when `omega` involves it.
    fn unknown_letters(&self, omega: &TensorPoly) -> Vec<Letter> {
        if self.is_horn(omega) {
            return self.horn.clone();
        }
        let top = self.alphabet.top();
        (0..self.alphabet.len() as Letter).filter(|&l| l != top).collect()
    }

    pub fn solve_with_hook(
        &self,
        omega: &TensorPoly,
        targets: Option<&[TensorPoly]>,
        linear: Option<&TensorPoly>,
        hook: &mut GammaHook,
    ) -> Result<(TensorPoly, SolveMethod)> {
        let top = self.alphabet.top();
        if omega.terms().any(|(w, _)| w.contains(&top)) {
            return Err(Error::precondition("right-hand side involves the top generator"));
        }
        if !omega.coefficient(&[]).is_zero() {
            return Err(Error::precondition("right-hand side has a constant term"));
        }
        if !self.d_a0(omega).is_zero() {
            return Err(Error::precondition("right-hand side is not a d_a0-cycle"));
        }
        if omega.is_zero() && linear.is_none() && targets.is_none_or(|t| t.iter().all(TensorPoly::is_zero)) {
            return Ok((TensorPoly::zero(), SolveMethod::Triangular));
        }
        // the unknown sits one degree above omega
        let degree = match omega.degree(&self.degrees) {
            Some(d) => d + 1,
            None => {
                let t = targets.and_then(|t| t.iter().find(|p| !p.is_zero())).expect("non-zero data");
                // targets live one level down
                t.degree(&SimplexAlphabet::new(self.level - 1)?.degrees())
                    .ok_or_else(|| Error::precondition("inhomogeneous right-hand side"))?
            }
        };
        let letters = self.unknown_letters(omega);
        if let Some(l) = linear {
            if self.d1(l) != omega.length_part(1) {
                return Err(Error::consistency("prescribed linear part does not solve the length-1 equation"));
            }
        }
        if let Some(g) = self.triangular(omega, targets, linear, &letters, degree, hook)? {
            return Ok((g, SolveMethod::Triangular));
        }
        let g = self.joint(omega, targets, linear, &letters, degree)?;
        Ok((g, SolveMethod::Joint))
    }

    fn sigma_rows(&self, p: &TensorPoly, targets: Option<&[TensorPoly]>) -> Vec<(RowKey, crate::scalar::Scalar)> {
        let mut rows = Vec::new();
        if targets.is_some() {
            for (j, s) in self.sigmas.iter().enumerate() {
                for (w, c) in s.apply(p).into_terms() {
                    rows.push(((j as u8 + 1, w), c));
                }
            }
        }
        rows
    }

    fn target_rows(targets: Option<&[TensorPoly]>, length: Option<usize>) -> Vec<(RowKey, crate::scalar::Scalar)> {
        let mut rows = Vec::new();
        for (j, t) in targets.unwrap_or(&[]).iter().enumerate() {
            let part = match length {
                Some(m) => t.length_part(m),
                None => t.clone(),
            };
            for (w, c) in part.into_terms() {
                rows.push(((j as u8 + 1, w), c));
            }
        }
        rows
    }

    fn triangular(
        &self,
        omega: &TensorPoly,
        targets: Option<&[TensorPoly]>,
        linear: Option<&TensorPoly>,
        letters: &[Letter],
        degree: i32,
        hook: &mut GammaHook,
    ) -> Result<Option<TensorPoly>> {
        let mut basis = LieBasis::new(self.degrees.clone());
        let mut gamma = TensorPoly::zero();
        let mut residual = omega.clone();
        for m in 1..=self.truncation {
            if residual.min_length().is_some_and(|l| l < m) {
                return Ok(None);
            }
            if let (1, Some(l)) = (m, linear) {
                let mut gm = l.clone();
                hook(self, m, &mut gm)?;
                gamma.add_assign(&gm);
                residual = omega.minus(&self.d_a0(&gamma));
                continue;
            }
            let elems = basis.basis_with_expansions(letters, m, degree);
            let mut rows: Interner<RowKey> = Interner::new();
            let mut ech = Echelon::new();
            for (_, e) in &elems {
                let mut items: Vec<(RowKey, _)> = self.d1(e).into_terms().into_iter().map(|(w, c)| ((0, w), c)).collect();
                items.extend(self.sigma_rows(e, targets));
                ech.push(intern_vec(&mut rows, items));
            }
            let mut rhs: Vec<(RowKey, _)> = residual.length_part(m).into_terms().into_iter().map(|(w, c)| ((0, w), c)).collect();
            rhs.extend(Self::target_rows(targets, Some(m)));
            let rhs_vec = intern_vec(&mut rows, rhs);
            let Ok(x) = ech.solve(rhs_vec) else {
                return Ok(None);
            };
            let mut gm = combine(&elems, &x);
            hook(self, m, &mut gm)?;
            gamma.add_assign(&gm);
            residual = omega.minus(&self.d_a0(&gamma));
        }
        if !residual.is_zero() {
            return Ok(None);
        }
        if let Some(t) = targets {
            for (s, target) in self.sigmas.iter().zip(t) {
                if s.apply(&gamma) != *target {
                    return Ok(None);
                }
            }
        }
        Ok(Some(gamma))
    }

    fn joint(
        &self,
        omega: &TensorPoly,
        targets: Option<&[TensorPoly]>,
        linear: Option<&TensorPoly>,
        letters: &[Letter],
        degree: i32,
    ) -> Result<TensorPoly> {
        let mut basis = LieBasis::new(self.degrees.clone());
        let mut elems = Vec::new();
        let first = if linear.is_some() { 2 } else { 1 };
        for m in first..=self.truncation {
            elems.extend(basis.basis_with_expansions(letters, m, degree));
        }
        let fixed = linear.cloned().unwrap_or_default();
        let omega = &omega.minus(&self.d_a0(&fixed));
        let targets: Option<Vec<TensorPoly>> =
            targets.map(|t| t.iter().zip(&self.sigmas).map(|(t, s)| t.minus(&s.apply(&fixed))).collect());
        let targets = targets.as_deref();
        let mut rows: Interner<RowKey> = Interner::new();
        let mut ech = Echelon::new();
        for (_, e) in &elems {
            let mut items: Vec<(RowKey, _)> = self.d_a0(e).into_terms().into_iter().map(|(w, c)| ((0, w), c)).collect();
            items.extend(self.sigma_rows(e, targets));
            ech.push(intern_vec(&mut rows, items));
        }
        let mut rhs: Vec<(RowKey, _)> = omega.clone().into_terms().into_iter().map(|(w, c)| ((0, w), c)).collect();
        rhs.extend(Self::target_rows(targets, None));
        let rhs_vec = intern_vec(&mut rows, rhs);
        let x = ech.solve(rhs_vec).map_err(|_| {
            Error::consistency(format!(
                "horn equation at level {} has no solution modulo word length > {}",
                self.level, self.truncation
            ))
        })?;
        Ok(fixed.plus(&combine(&elems, &x)))
    }
}

fn combine(elems: &[(crate::lie::tree::BracketTree, TensorPoly)], x: &SparseVec) -> TensorPoly {
    let mut g = TensorPoly::zero();
    for (j, c) in x {
        g.add_scaled(&elems[*j as usize].1, c);
    }
    g
}

/// `L_n` at truncation `n_trunc`, with codegeneracy compatibility imposed.
pub fn build_ln(n: usize, n_trunc: usize) -> Result<LnPresentation> {
    Tower::build(n, BuildOptions::new(n_trunc))?.level(n)
}

/// Coefficient of `[x, x]` in an element read off in the Lie basis.
pub fn square_coefficient(basis: &mut LieBasis, x: &TensorPoly, l: Letter) -> Result<crate::scalar::Scalar> {
    let t = crate::lie::tree::BracketTree::right_normed(&[l, l]);
    let part = x.length_part(2);
    Ok(basis
        .coordinates(&part)?
        .into_iter()
        .find(|(s, _)| *s == t)
        .map(|(_, c)| c)
        .unwrap_or_else(|| int(0)))
}
