//! Verification suites and their reports, shared by the `cdgl` binary and the C interface.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ce::{ce, cohomology_dims, euler_characteristics};
use crate::cosimplicial::{check_conditions, check_gamma, default_truncation, verify_lemma, BuildOptions, Tower};
use crate::error::{Error, Result};
use crate::lie::bch::{bch_formal, bch_tensor, exp, log1p};
use crate::lie::format::parse_presentation;
use crate::lie::presentation::{FreeCdglPresentation, Generator};
use crate::lie::tensor::TensorPoly;
use crate::lie::tree::{BracketTree, LieElement};
use crate::quillen::chains::{
    aw_delta, degenerate, diagonal_boundary, drop_degenerate, drop_degenerate_product, ez_nabla, tensor_boundary, TensorChain,
};
use crate::quillen::{FiniteSimplicialSet, Lambda, Simplex};
use crate::realization::{check_phi, homotopy_table, HomologyClass, Realization};
use crate::scalar::{fmt_scalar, int, ratio};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    /// Empty on success; otherwise the first offending input or the nonzero residue.
    pub residue: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub micros: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
    pub overall: Status,
}

impl VerificationReport {
    fn new(suite: Suite) -> Self {
        Self {
            suite: suite.as_str().to_string(),
            checks: Vec::new(),
            notes: Vec::new(),
            overall: Status::Pass,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    fn record(&mut self, id: impl Into<String>, failure: Option<String>, started: Instant) {
        let status = if failure.is_some() { Status::Fail } else { Status::Pass };
        if status == Status::Fail {
            self.overall = Status::Fail;
        }
        self.checks.push(CheckResult {
            id: id.into(),
            status,
            residue: failure.unwrap_or_default(),
            micros: Some(started.elapsed().as_micros() as u64),
        });
    }

    /// Runs `f`; `Ok(None)` passes, `Ok(Some(residue))` fails. Consistency
    /// errors become failures, everything else propagates.
    fn check(&mut self, id: impl Into<String>, f: impl FnOnce() -> Result<Option<String>>) -> Result<()> {
        let t = Instant::now();
        let failure = match f() {
            Ok(x) => x,
            Err(Error::Consistency(m)) | Err(Error::Verification(m)) => Some(m),
            Err(e) => return Err(e),
        };
        self.record(id, failure, t);
        Ok(())
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Drops timings, which are the only nondeterministic field.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.micros = None;
        }
        r
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite: {}\n", self.suite);
        for c in &self.checks {
            let _ = write!(s, "{}  {}", c.status.as_str(), c.id);
            if let Some(us) = c.micros {
                let _ = write!(s, "  [{:.3} ms]", us as f64 / 1000.0);
            }
            if !c.residue.is_empty() {
                let _ = write!(s, "\n      residue: {}", c.residue);
            }
            s.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        let _ = writeln!(s, "overall: {} ({passed}/{} checks)", self.overall.as_str(), self.checks.len());
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Lemma,
    LnConditions,
    EzAw,
    Bch,
    Phi,
    Homotopy,
    Ce,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Lemma,
        Suite::LnConditions,
        Suite::EzAw,
        Suite::Bch,
        Suite::Phi,
        Suite::Homotopy,
        Suite::Ce,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Lemma => "lemma",
            Suite::LnConditions => "ln-conditions",
            Suite::EzAw => "ez-aw",
            Suite::Bch => "bch",
            Suite::Phi => "phi",
            Suite::Homotopy => "homotopy",
            Suite::Ce => "ce",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::input(format!("unknown suite {s:?}")))
    }
}

/// Spaces with a known Quillen model `(L(V), 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// One vertex and one nondegenerate 2-simplex; model `L(v)`, `|v| = 1`.
    S2,
    /// Two 2-spheres on one vertex; model `L(v, w)`.
    S2WedgeS2,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::S2 => "s2",
            Model::S2WedgeS2 => "s2vs2",
        }
    }

    pub fn space(self) -> FiniteSimplicialSet {
        match self {
            Model::S2 => FiniteSimplicialSet::sphere(2),
            Model::S2WedgeS2 => FiniteSimplicialSet::wedge_of_spheres(&[2, 2]),
        }
    }

    pub fn quillen_model(self, truncation: usize) -> Result<FreeCdglPresentation> {
        let gens = match self {
            Model::S2 => vec![Generator::new("v", 1)],
            Model::S2WedgeS2 => vec![Generator::new("v", 1), Generator::new("w", 1)],
        };
        FreeCdglPresentation::free(gens, truncation)
    }

    /// Rational cohomology of the space, degrees `0..=k`.
    pub fn cohomology(self, k: usize) -> Vec<usize> {
        let top = match self {
            Model::S2 => 1,
            Model::S2WedgeS2 => 2,
        };
        (0..=k).map(|d| [1, 0, top].get(d).copied().unwrap_or(0)).collect()
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s2" => Ok(Model::S2),
            "s2vs2" | "wedge" => Ok(Model::S2WedgeS2),
            _ => Err(Error::input(format!("unknown model {s:?} (expected s2 or s2vs2)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub truncation: Option<usize>,
    pub cap: Option<usize>,
    pub seed: u64,
    pub model: Model,
    /// Text of a dgl presentation replacing the model's Quillen model.
    pub input: Option<String>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            truncation: None,
            cap: None,
            seed: 0,
            model: Model::S2,
            input: None,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(suite);
    match suite {
        Suite::Lemma => lemma(&mut r, opts)?,
        Suite::LnConditions => ln_conditions(&mut r, opts)?,
        Suite::EzAw => ez_aw(&mut r, opts.seed, 100)?,
        Suite::Bch => bch_suite(&mut r, opts.seed)?,
        Suite::Phi => phi(&mut r, opts)?,
        Suite::Homotopy => homotopy(&mut r, opts)?,
        Suite::Ce => ce_suite(&mut r, opts)?,
    }
    Ok(r)
}

fn nonzero(p: &TensorPoly, show: impl FnOnce(&TensorPoly) -> String) -> Option<String> {
    (!p.is_zero()).then(|| show(p))
}

fn show_in(target: &FreeCdglPresentation, p: &TensorPoly) -> String {
    match target.lie_basis().to_lie(p) {
        Ok(e) => e.display(&target.names()),
        Err(_) => format!("{} tensor terms", p.len()),
    }
}

fn lemma(r: &mut VerificationReport, opts: &SuiteOptions) -> Result<()> {
    let t = opts.truncation.unwrap_or(default_truncation(4));
    let (c, homogeneous, d1_zero) = check_gamma()?;
    r.check("d₁γ = 0", || Ok((!d1_zero).then(|| "d₁γ has nonzero terms".to_string())))?;
    r.check("coefficient of [a234,a234] in γ is 1", || {
        Ok((c != int(1)).then(|| format!("coefficient {}", fmt_scalar(&c))))
    })?;
    r.check("γ has degree 2 and word length 2", || {
        Ok((!homogeneous).then(|| "inhomogeneous term".to_string()))
    })?;
    let report = verify_lemma(t)?;
    for (i, v) in report.variants.iter().enumerate() {
        let name = v.name;
        r.note(format!(
            "{name}: solver {}, coefficient before {}, λ = {}",
            v.method.as_str(),
            v.coefficient_before.as_ref().map_or("-".into(), fmt_scalar),
            v.lambda.as_ref().map_or("-".into(), fmt_scalar),
        ));
        r.check(format!("{name}: coefficient of [a234,a234] in d a01234 is 0"), || {
            Ok((v.coefficient_after != int(0)).then(|| fmt_scalar(&v.coefficient_after)))
        })?;
        r.check(format!("{name}: d₁(Γ₂+λγ) = d₁Γ₂"), || {
            Ok((v.d1_preserved != Some(true)).then(|| "d₁ changed".to_string()))
        })?;
        r.check(format!("{name}: d² = 0 on 𝔏₄ (N={t})"), || {
            Ok((!v.d_squared).then(|| "nonzero d²".to_string()))
        })?;
        // only the codegeneracy-compatible build is expected to satisfy every condition
        if i == 0 {
            for c in &v.conditions.checks {
                r.check(format!("{name}: 𝔏₄ N={} {}", c.truncation, c.name), || {
                    Ok((!c.passed).then(|| c.detail.clone()))
                })?;
            }
        } else {
            for c in v.conditions.checks.iter().filter(|c| !c.passed) {
                r.note(format!("{name}: {} fails at N={} ({})", c.name, c.truncation, c.detail));
            }
        }
    }
    Ok(())
}

fn conditions_on(r: &mut VerificationReport, tower: &Tower, levels: impl Iterator<Item = usize>) -> Result<()> {
    for n in levels {
        let report = check_conditions(tower, n)?;
        r.note(format!(
            "𝔏{n}: solver {}",
            tower.traces()[n].method.as_str()
        ));
        for c in &report.checks {
            r.check(format!("𝔏{n} N={} {}", c.truncation, c.name), || {
                Ok((!c.passed).then(|| c.detail.clone()))
            })?;
        }
    }
    Ok(())
}

fn ln_conditions(r: &mut VerificationReport, opts: &SuiteOptions) -> Result<()> {
    let cap = opts.cap.unwrap_or(3);
    match opts.truncation {
        Some(t) => {
            let tower = Tower::build(cap, BuildOptions::new(t))?;
            conditions_on(r, &tower, 0..=cap)?;
        }
        None => {
            let low = cap.min(3);
            let tower = Tower::build(low, BuildOptions::new(default_truncation(low)))?;
            conditions_on(r, &tower, 0..=low)?;
            if cap > 3 {
                let tower = Tower::build(cap, BuildOptions::new(default_truncation(cap)))?;
                conditions_on(r, &tower, 4..=cap)?;
            }
        }
    }
    Ok(())
}

/// A simplicial complex on at most four vertices with faces of dimension at most 3.
pub fn random_complex(rng: &mut ChaCha8Rng) -> FiniteSimplicialSet {
    let v: u8 = rng.gen_range(1..=4);
    let mut faces: Vec<Vec<u8>> = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let mut f: Vec<u8> = (0..v).filter(|_| rng.gen_bool(0.7)).collect();
        if f.is_empty() {
            f.push(rng.gen_range(0..v));
        }
        faces.push(f);
    }
    let mut closed = Vec::new();
    for f in faces {
        for mask in 1u32..(1 << f.len()) {
            closed.push(
                f.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, x)| *x)
                    .collect::<Vec<u8>>(),
            );
        }
    }
    FiniteSimplicialSet::from_complex(&closed).expect("closed under faces")
}

pub struct EzAwInstance {
    pub y: FiniteSimplicialSet,
    pub z: FiniteSimplicialSet,
    /// A combination of nondegenerate `a (x) b` of one total degree `<= 4`.
    pub chain: TensorChain<Simplex, Simplex>,
}

fn nondegenerate_upto(x: &FiniteSimplicialSet, k: usize) -> Vec<Simplex> {
    (0..=k.min(x.max_dim())).flat_map(|d| x.nondegenerate_of_dim(d)).collect()
}

pub fn random_ez_aw_instance(rng: &mut ChaCha8Rng) -> EzAwInstance {
    let y = random_complex(rng);
    let z = random_complex(rng);
    let ys = nondegenerate_upto(&y, 3);
    let zs = nondegenerate_upto(&z, 3);
    let first = ys.choose(rng).expect("nonempty");
    let n_total = {
        let room: Vec<&Simplex> = zs.iter().filter(|b| first.dim() + b.dim() <= 4).collect();
        first.dim() + room.choose(rng).map_or(0, |b| b.dim())
    };
    let mut chain = TensorChain::new();
    for _ in 0..rng.gen_range(1..=3) {
        let pairs: Vec<(&Simplex, &Simplex)> = ys
            .iter()
            .flat_map(|a| zs.iter().map(move |b| (a, b)))
            .filter(|(a, b)| a.dim() + b.dim() == n_total)
            .collect();
        let (a, b) = *pairs.choose(rng).expect("the first pair has this degree");
        let c: i64 = *[-2, -1, 1, 2].choose(rng).expect("nonempty");
        *chain.entry((a.clone(), b.clone())).or_insert_with(|| int(0)) += int(c);
    }
    chain.retain(|_, c| !num_traits::Zero::is_zero(c));
    EzAwInstance { y, z, chain }
}

fn ez_aw(r: &mut VerificationReport, seed: u64, count: usize) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<EzAwInstance> = (0..count).map(|_| random_ez_aw_instance(&mut rng)).collect();
    let first_bad = |f: &dyn Fn(&EzAwInstance) -> bool| -> Option<String> {
        instances
            .iter()
            .position(|i| !f(i))
            .map(|k| format!("instance {k} of {count}, seed {seed}"))
    };
    r.check(format!("Δ∇ = id modulo degenerate simplices ({count} instances)"), || {
        Ok(first_bad(&|i| {
            let back = aw_delta(&i.y, &i.z, &ez_nabla(&i.y, &i.z, &i.chain));
            drop_degenerate(&i.y, &i.z, &back) == i.chain
        }))
    })?;
    r.check("∇ is a chain map", || {
        Ok(first_bad(&|i| {
            let lhs = diagonal_boundary(&i.y, &i.z, &ez_nabla(&i.y, &i.z, &i.chain));
            let rhs = ez_nabla(&i.y, &i.z, &tensor_boundary(&i.y, &i.z, &i.chain));
            drop_degenerate_product(&i.y, &i.z, &lhs) == drop_degenerate_product(&i.y, &i.z, &rhs)
        }))
    })?;
    r.check("Δ is a chain map", || {
        Ok(first_bad(&|i| {
            let x = ez_nabla(&i.y, &i.z, &i.chain);
            let lhs = aw_delta(&i.y, &i.z, &diagonal_boundary(&i.y, &i.z, &x));
            let rhs = tensor_boundary(&i.y, &i.z, &aw_delta(&i.y, &i.z, &x));
            drop_degenerate(&i.y, &i.z, &lhs) == drop_degenerate(&i.y, &i.z, &rhs)
        }))
    })?;
    r.check("Δ is a chain map on products of simplices", || {
        Ok(first_bad(&|i| {
            let x: TensorChain<Simplex, Simplex> = i
                .chain
                .keys()
                .filter_map(|(a, b)| {
                    let n = a.dim().max(b.dim());
                    let up = |s: &Simplex, x: &FiniteSimplicialSet| {
                        let word: Vec<usize> = (s.dim()..n).collect();
                        degenerate(x, &word, s)
                    };
                    Some(((up(a, &i.y), up(b, &i.z)), int(1)))
                })
                .collect();
            let lhs = aw_delta(&i.y, &i.z, &diagonal_boundary(&i.y, &i.z, &x));
            let rhs = tensor_boundary(&i.y, &i.z, &aw_delta(&i.y, &i.z, &x));
            drop_degenerate(&i.y, &i.z, &lhs) == drop_degenerate(&i.y, &i.z, &rhs)
        }))
    })?;
    r.note(format!("{count} seeded instances, seed {seed}"));
    Ok(())
}

const BCH_TRUNC: usize = 5;

fn random_lie(rng: &mut ChaCha8Rng, k: usize) -> LieElement {
    let mut x = LieElement::zero();
    for i in 0..k as u32 {
        x.add_term(BracketTree::Leaf(i), int(rng.gen_range(-2..=2)));
        for j in 0..k as u32 {
            if i < j {
                let c = rng.gen_range(-1..=1);
                x.add_term(BracketTree::node(BracketTree::Leaf(i), BracketTree::Leaf(j)), int(c));
            }
        }
    }
    x
}

fn bch_suite(r: &mut VerificationReport, seed: u64) -> Result<()> {
    let n = BCH_TRUNC;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    r.check("BCH(x,y) = x + y + ½[x,y] + 1/12[x,[x,y]] − 1/12[y,[x,y]] + …", || {
        let d = [0, 0];
        let (x, y) = (TensorPoly::letter(0), TensorPoly::letter(1));
        let xy = x.bracket(&y, &d, n);
        let mut want = x.plus(&y);
        want.add_scaled(&xy, &ratio(1, 2));
        want.add_scaled(&x.bracket(&xy, &d, n), &ratio(1, 12));
        want.add_scaled(&y.bracket(&xy, &d, n), &ratio(-1, 12));
        want.add_scaled(&y.bracket(&x.bracket(&xy, &d, n), &d, n), &ratio(-1, 24));
        Ok(nonzero(&bch_tensor(&x, &y, 4).minus(&want), |p| format!("{} terms", p.len())))
    })?;
    for k in [2usize, 3] {
        let degrees = vec![0; k];
        let samples: Vec<(LieElement, LieElement, LieElement)> = (0..8)
            .map(|_| (random_lie(&mut rng, k), random_lie(&mut rng, k), random_lie(&mut rng, k)))
            .collect();
        r.check(format!("{k} generators: BCH(BCH(x,y),z) = BCH(x,BCH(y,z)) mod F⁶"), || {
            for (x, y, z) in &samples {
                let (x, y, z) = (x.normalize(&degrees), y.normalize(&degrees), z.normalize(&degrees));
                let l = bch_tensor(&bch_tensor(&x, &y, n), &z, n);
                let rr = bch_tensor(&x, &bch_tensor(&y, &z, n), n);
                if l != rr {
                    return Ok(Some(format!("{} differing terms", l.minus(&rr).len())));
                }
            }
            Ok(None)
        })?;
        r.check(format!("{k} generators: BCH(x,−x) = 0 and BCH(x,0) = x"), || {
            for (x, _, _) in &samples {
                let x = x.normalize(&degrees);
                if !bch_tensor(&x, &x.neg(), n).is_zero() || bch_tensor(&x, &TensorPoly::zero(), n) != x {
                    return Ok(Some("identity or inverse law fails".into()));
                }
            }
            Ok(None)
        })?;
        r.check(format!("{k} generators: formal BCH on trees = BCH in the tensor algebra"), || {
            for (x, y, _) in &samples {
                let f = bch_formal(x, y, n).normalize(&degrees).truncated(n);
                let t = bch_tensor(&x.normalize(&degrees), &y.normalize(&degrees), n);
                if f != t {
                    return Ok(Some(format!("{} differing terms", f.minus(&t).len())));
                }
            }
            Ok(None)
        })?;
        r.check(format!("{k} generators: BCH(x,y) is a Lie element"), || {
            let mut basis = crate::lie::basis::LieBasis::new(degrees.clone());
            for (x, y, _) in &samples {
                let b = bch_tensor(&x.normalize(&degrees), &y.normalize(&degrees), n);
                basis.to_lie(&b)?;
            }
            Ok(None)
        })?;
        r.check(format!("{k} generators: log(exp x) = x"), || {
            for (x, _, _) in &samples {
                let x = x.normalize(&degrees);
                let z = exp(&x, n).minus(&TensorPoly::unit());
                if log1p(&z, n) != x {
                    return Ok(Some("log∘exp differs".into()));
                }
            }
            Ok(None)
        })?;
    }
    r.note(format!("truncation {n}, seed {seed}"));
    Ok(())
}

fn phi(r: &mut VerificationReport, opts: &SuiteOptions) -> Result<()> {
    let nl = opts.truncation.unwrap_or(4);
    let tower = Tower::build(4, BuildOptions::new(nl.min(default_truncation(4))))?;
    for model in [Model::S2, Model::S2WedgeS2] {
        let target = model.quillen_model(nl)?;
        let label = match model {
            Model::S2 => "𝕃(v)",
            Model::S2WedgeS2 => "𝕃(v,w)",
        };
        let report = check_phi(&target, tower.clone(), opts.seed, 4)?;
        let mut identities: Vec<&str> = Vec::new();
        for c in &report.cases {
            if !identities.contains(&c.identity) {
                identities.push(c.identity);
            }
        }
        for id in identities {
            let cases: Vec<_> = report.cases.iter().filter(|c| c.identity == id).collect();
            let t = cases.first().map_or(0, |c| c.truncation);
            r.check(format!("{label}: {id} ({} cases, mod F^{})", cases.len(), t + 1), || {
                Ok(cases.iter().find(|c| !c.passed()).map(|c| {
                    format!("{}: {}", c.inputs, show_in(&target, &c.residue))
                }))
            })?;
        }
        r.note(format!("{label}: {} cases, seed {}", report.cases.len(), opts.seed));
    }
    Ok(())
}

fn target_for(opts: &SuiteOptions, truncation: usize) -> Result<FreeCdglPresentation> {
    match &opts.input {
        Some(text) => Ok(parse_presentation(text)?.0),
        None => opts.model.quillen_model(truncation),
    }
}

/// `rho(witness(x)) = [x]` on the Lie basis of `L_n` for `1 <= n <= top`.
fn rho_checks(r: &mut VerificationReport, target: &FreeCdglPresentation, top: usize) -> Result<()> {
    if top == 0 {
        return Ok(());
    }
    let tower = Tower::build(top + 1, BuildOptions::new(default_truncation(top + 1)))?;
    let real = Realization::new(target.clone(), Some(tower));
    let letters = target.all_letters();
    let mut basis = target.lie_basis();
    for n in 1..=top {
        let xs: Vec<TensorPoly> = (1..=target.truncation())
            .flat_map(|k| basis.basis_with_expansions(&letters, k, n as i32))
            .map(|(_, x)| x)
            .filter(|x| target.d(x).is_zero())
            .collect();
        r.check(format!("witnesses validate and rho(witness(x)) = [x], degree {n} ({} cycles)", xs.len()), || {
            for x in &xs {
                let w = real.surjectivity_witness(n, x)?;
                let class = HomologyClass {
                    degree: n as i32,
                    representative: x.clone(),
                };
                if !real.same_class(&real.rho(&w)?, &class)? {
                    return Ok(Some(show_in(target, x)));
                }
            }
            Ok(None)
        })?;
    }
    Ok(())
}

fn homotopy(r: &mut VerificationReport, opts: &SuiteOptions) -> Result<()> {
    let t = opts.truncation.unwrap_or(4);
    let cap = opts.cap.unwrap_or(3);
    let target = target_for(opts, t)?;
    if target.degrees().iter().any(|&d| d < 1) {
        return Err(Error::input("the homotopy suite needs a simply connected dgl (generators of degree >= 1)"));
    }
    r.check("d² = 0 on the dgl", || {
        let sq = target.check_d_squared();
        Ok(sq.failures.first().map(|f| f.generator.clone()))
    })?;
    let table = homotopy_table(&target, 2, cap + 1)?;
    let dims: Vec<usize> = table.iter().map(|e| e.dimension).collect();
    for e in &table {
        r.note(format!(
            "π{} = {}{}",
            e.n,
            e.dimension,
            if e.truncation_warning { " (truncation may hide classes)" } else { "" }
        ));
    }
    if opts.input.is_none() {
        let lambda = Lambda::new(opts.model.space(), t, cap)?;
        let ld = lambda.homology_dims();
        r.note(format!("H(λX), degrees 1..={cap}: {ld:?}"));
        for (k, (p, h)) in dims.iter().zip(&ld).enumerate() {
            r.check(format!("π{}⟨L⟩ = H{}(λX) for X = {}", k + 2, k + 1, opts.model.as_str()), || {
                Ok((p != h).then(|| format!("π = {p}, H = {h}")))
            })?;
        }
    }
    rho_checks(r, &target, cap.min(3))?;
    Ok(())
}

fn ce_suite(r: &mut VerificationReport, opts: &SuiteOptions) -> Result<()> {
    let cap = opts.cap.unwrap_or(5);
    let t = opts.truncation.unwrap_or(cap.max(2));
    let target = target_for(opts, t)?;
    let p = ce(&target, cap as i32)?;
    let dims = cohomology_dims(&p, cap as i32);
    r.note(format!("H*(𝒞*(L)), degrees 0..={cap}: {dims:?}"));
    r.check(format!("d² = 0 on cochains below degree {cap}"), || {
        Ok(p.d_squared_failures().first().cloned())
    })?;
    r.check("Euler characteristics of cochains and cohomology agree", || {
        let (chains, homology, top_rank) = euler_characteristics(&p, cap as i32);
        let expected = if cap % 2 == 0 { top_rank as i64 } else { -(top_rank as i64) };
        Ok((chains - homology != expected).then(|| format!("χ(C) = {chains}, χ(H) = {homology}, top rank {top_rank}")))
    })?;
    if opts.input.is_none() {
        let want = opts.model.cohomology(cap);
        r.check(format!("H*(𝒞*(L)) = H*({};ℚ) through degree {cap}", opts.model.as_str()), || {
            Ok((dims != want).then(|| format!("got {dims:?}, expected {want:?}")))
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().unwrap_err().is_input());
    }

    #[test]
    fn overall_tracks_failures() {
        let mut r = VerificationReport::new(Suite::Bch);
        r.check("ok", || Ok(None)).unwrap();
        assert!(r.passed());
        r.check("bad", || Err(Error::consistency("x"))).unwrap();
        assert!(!r.passed());
        assert!(r.check("input", || Err(Error::input("y"))).is_err());
    }

    #[test]
    fn ez_aw_small_run() {
        let mut r = VerificationReport::new(Suite::EzAw);
        ez_aw(&mut r, 3, 20).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn bch_suite_passes() {
        let r = run_suite(Suite::Bch, &SuiteOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn text_without_timings_is_deterministic() {
        let a = run_suite(Suite::EzAw, &SuiteOptions { seed: 7, ..Default::default() }).unwrap();
        let b = run_suite(Suite::EzAw, &SuiteOptions { seed: 7, ..Default::default() }).unwrap();
        assert_eq!(a.without_timings().to_text(), b.without_timings().to_text());
        assert_eq!(a.without_timings().to_json(), b.without_timings().to_json());
    }
}
