//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cdgl_core::ce::{ce, cohomology_dims};
use cdgl_core::cosimplicial::{build_ln, check_conditions, check_gamma, verify_lemma, BuildOptions, Tower};
use cdgl_core::lie::bch::bch_tensor;
use cdgl_core::lie::format::{parse_presentation, write_presentation};
use cdgl_core::lie::{FreeCdglPresentation, Generator, TensorPoly};
use cdgl_core::quillen::chains::{
    aw_delta, diagonal_boundary, drop_degenerate, drop_degenerate_product, ez_nabla, tensor_boundary,
};
use cdgl_core::quillen::{FiniteSimplicialSet, Lambda};
use cdgl_core::realization::{check_phi, homotopy_table, HomologyClass, Realization};
use cdgl_core::scalar::{int, Scalar};
use cdgl_core::verify::random_ez_aw_instance;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn v_model(n: usize) -> FreeCdglPresentation {
    FreeCdglPresentation::free(vec![Generator::new("v", 1)], n).unwrap()
}

fn vw_model(n: usize) -> FreeCdglPresentation {
    FreeCdglPresentation::free(vec![Generator::new("v", 1), Generator::new("w", 1)], n).unwrap()
}

fn c1_gamma() -> Outcome {
    let start = Instant::now();
    let (c, homogeneous, d1_zero) = check_gamma().map_err(err)?;
    let t = start.elapsed();
    ensure(d1_zero, || "d₁γ ≠ 0".into())?;
    ensure(c == int(1), || format!("coefficient of [a234,a234] is {c}"))?;
    ensure(homogeneous, || "γ is not homogeneous".into())?;
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))
}

fn conditions(tower: &Tower, levels: impl Iterator<Item = usize>) -> Outcome {
    for n in levels {
        let r = check_conditions(tower, n).map_err(err)?;
        if let Some(c) = r.checks.iter().find(|c| !c.passed) {
            return Err(format!("L{n} N={}: {} ({})", c.truncation, c.name, c.detail));
        }
    }
    Ok(())
}

fn c2_construction(t4: &Tower) -> Outcome {
    let t3 = Tower::build(3, BuildOptions::new(4)).map_err(err)?;
    conditions(&t3, 0..=3)?;
    conditions(t4, 4..=4)
}

fn c3_lemma() -> Outcome {
    let r = verify_lemma(3).map_err(err)?;
    let v = &r.variants[0];
    ensure(v.coefficient_after.is_zero(), || format!("coefficient after {}", v.coefficient_after))?;
    ensure(v.d1_preserved == Some(true), || "d₁ changed".into())?;
    ensure(v.d_squared, || "d² ≠ 0".into())?;
    if let Some(c) = v.conditions.checks.iter().find(|c| !c.passed) {
        return Err(format!("modified L4 N={}: {}", c.truncation, c.name));
    }
    ensure(r.passed(), || "lemma report failed".into())
}

fn c4_ez_aw() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..120 {
        let i = random_ez_aw_instance(&mut rng);
        let (y, z) = (&i.y, &i.z);
        let nabla = ez_nabla(y, z, &i.chain);
        ensure(drop_degenerate(y, z, &aw_delta(y, z, &nabla)) == i.chain, || format!("Δ∇ ≠ id on instance {k}"))?;
        let lhs = drop_degenerate_product(y, z, &diagonal_boundary(y, z, &nabla));
        let rhs = drop_degenerate_product(y, z, &ez_nabla(y, z, &tensor_boundary(y, z, &i.chain)));
        ensure(lhs == rhs, || format!("∇ not a chain map on instance {k}"))?;
        let lhs = drop_degenerate(y, z, &aw_delta(y, z, &diagonal_boundary(y, z, &nabla)));
        let rhs = drop_degenerate(y, z, &tensor_boundary(y, z, &aw_delta(y, z, &nabla)));
        ensure(lhs == rhs, || format!("Δ not a chain map on instance {k}"))?;
    }
    Ok(())
}

// Dynkin's formula, evaluated in a separate noncommutative polynomial ring.

type Poly = BTreeMap<Vec<u32>, Scalar>;

fn p_add(a: &mut Poly, b: &Poly, c: &Scalar) {
    for (w, x) in b {
        let e = a.entry(w.clone()).or_insert_with(Scalar::zero);
        *e += x * c;
    }
    a.retain(|_, x| !x.is_zero());
}

fn p_mul(a: &Poly, b: &Poly, n: usize) -> Poly {
    let mut out = Poly::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() <= n {
                let w: Vec<u32> = u.iter().chain(v).copied().collect();
                *out.entry(w).or_insert_with(Scalar::zero) += x * y;
            }
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

fn p_commutator(a: &Poly, b: &Poly, n: usize) -> Poly {
    let mut out = p_mul(a, b, n);
    p_add(&mut out, &p_mul(b, a, n), &-Scalar::one());
    out
}

fn fact(k: usize) -> Scalar {
    (1..=k as i64).fold(Scalar::one(), |a, i| a * int(i))
}

/// All `(r_1, s_1, ..., r_m, s_m)` with `r_i + s_i >= 1` and total at most `n`.
fn dynkin_indices(n: usize, prefix: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    let used: usize = prefix.iter().map(|(r, s)| r + s).sum();
    if !prefix.is_empty() {
        out.push(prefix.clone());
    }
    for r in 0..=n - used {
        for s in 0..=n - used - r {
            if r + s >= 1 {
                prefix.push((r, s));
                dynkin_indices(n, prefix, out);
                prefix.pop();
            }
        }
    }
}

fn dynkin(x: &Poly, y: &Poly, n: usize) -> Poly {
    let mut idx = Vec::new();
    dynkin_indices(n, &mut Vec::new(), &mut idx);
    let mut out = Poly::new();
    for seq in idx {
        let m = seq.len() as i64;
        let total: usize = seq.iter().map(|(r, s)| r + s).sum();
        let mut den = int(m) * int(total as i64);
        for (r, s) in &seq {
            den *= fact(*r) * fact(*s);
        }
        let c = int(if m % 2 == 1 { 1 } else { -1 }) / den;
        let letters: Vec<&Poly> = seq
            .iter()
            .flat_map(|(r, s)| std::iter::repeat(x).take(*r).chain(std::iter::repeat(y).take(*s)))
            .collect();
        // right-nested [z1,[z2,[...,z_k]]]
        let mut acc = letters[letters.len() - 1].clone();
        for z in letters[..letters.len() - 1].iter().rev() {
            acc = p_commutator(z, &acc, n);
        }
        p_add(&mut out, &acc, &c);
    }
    out
}

fn to_tensor(p: &Poly) -> TensorPoly {
    TensorPoly::from_terms(p.iter().map(|(w, c)| (w.iter().copied().collect(), c.clone())))
}

fn random_lie_poly(rng: &mut ChaCha8Rng, k: u32) -> Poly {
    let mut x = Poly::new();
    for i in 0..k {
        let l: Poly = [(vec![i], Scalar::one())].into();
        p_add(&mut x, &l, &int(rng.gen_range(-2..=2)));
        for j in i + 1..k {
            let m: Poly = [(vec![j], Scalar::one())].into();
            p_add(&mut x, &p_commutator(&l, &m, 2), &int(rng.gen_range(-1..=1)));
        }
    }
    x
}

fn c5_bch() -> Outcome {
    let n = 5;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in [2u32, 3] {
        let mut pairs: Vec<(Poly, Poly)> = Vec::new();
        if k == 2 {
            pairs.push(([(vec![0], Scalar::one())].into(), [(vec![1], Scalar::one())].into()));
        }
        for _ in 0..6 {
            pairs.push((random_lie_poly(&mut rng, k), random_lie_poly(&mut rng, k)));
        }
        for (x, y) in &pairs {
            let engine = bch_tensor(&to_tensor(x), &to_tensor(y), n);
            ensure(engine == to_tensor(&dynkin(x, y, n)), || format!("{k} generators: engine ≠ Dynkin"))?;
        }
        for _ in 0..6 {
            let (x, y, z) = (
                to_tensor(&random_lie_poly(&mut rng, k)),
                to_tensor(&random_lie_poly(&mut rng, k)),
                to_tensor(&random_lie_poly(&mut rng, k)),
            );
            let l = bch_tensor(&bch_tensor(&x, &y, n), &z, n);
            let r = bch_tensor(&x, &bch_tensor(&y, &z, n), n);
            ensure(l == r, || format!("{k} generators: associativity fails mod F⁶"))?;
        }
    }
    Ok(())
}

fn c6_lambda() -> Outcome {
    let lambda = Lambda::new(FiniteSimplicialSet::sphere(2), 4, 3).map_err(err)?;
    let got = lambda.homology_dims();
    let oracle = v_model(4).homology(1, 3).dims();
    ensure(got == vec![1, 1, 0] && got == oracle, || format!("H(λS²) = {got:?}, H(𝕃(v)) = {oracle:?}"))
}

fn c7_realization(t4: &Tower) -> Outcome {
    let dims = |p: &FreeCdglPresentation, hi| -> Result<Vec<usize>, String> {
        Ok(homotopy_table(p, 2, hi).map_err(err)?.iter().map(|e| e.dimension).collect())
    };
    let a = dims(&v_model(4), 4)?;
    ensure(a == [1, 1, 0], || format!("π₂..π₄ of 𝕃(v): {a:?}"))?;
    let b = dims(&vw_model(4), 3)?;
    ensure(b == [2, 3], || format!("π₂, π₃ of 𝕃(v,w): {b:?}"))?;
    for target in [v_model(4), vw_model(4)] {
        let real = Realization::new(target.clone(), Some(t4.clone()));
        let letters = target.all_letters();
        let mut basis = target.lie_basis();
        for n in 1..=3 {
            for k in 1..=target.truncation() {
                for (_, x) in basis.basis_with_expansions(&letters, k, n as i32) {
                    let w = real.surjectivity_witness(n, &x).map_err(err)?;
                    real.make_simplex(w.clone()).map_err(err)?;
                    if !target.d(&x).is_zero() {
                        continue;
                    }
                    let class = HomologyClass { degree: n as i32, representative: x.clone() };
                    ensure(real.same_class(&real.rho(&w).map_err(err)?, &class).map_err(err)?, || {
                        format!("rho(witness(x)) ≠ [x] in degree {n}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn c8_phi(t4: &Tower) -> Outcome {
    for (label, target) in [("𝕃(v)", v_model(4)), ("𝕃(v,w)", vw_model(4))] {
        let r = check_phi(&target, t4.clone(), 8, 4).map_err(err)?;
        ensure(r.cases.len() >= 50, || format!("{label}: only {} cases", r.cases.len()))?;
        ensure(r.cases.iter().all(|c| c.truncation == 4), || format!("{label}: not compared mod F⁵"))?;
        if let Some(c) = r.cases.iter().find(|c| !c.passed()) {
            return Err(format!("{label}: {} on {}", c.identity, c.inputs));
        }
    }
    Ok(())
}

fn c9_ce() -> Outcome {
    let dims = cohomology_dims(&ce(&v_model(5), 5).map_err(err)?, 5);
    ensure(dims == [1, 0, 1, 0, 0, 0], || format!("H*(𝒞*(𝕃(v))) = {dims:?}"))
}

fn c10_reproducible() -> Outcome {
    let golden = include_str!("../golden/L4.json");
    let a = build_ln(4, 3).map_err(err)?.to_text();
    let b = build_ln(4, 3).map_err(err)?.to_text();
    ensure(a == b, || "two builds differ".into())?;
    ensure(a == golden, || "build differs from golden/L4.json".into())?;
    let (p, extra) = parse_presentation(&a).map_err(err)?;
    let extras: Vec<(&str, serde_json::Value)> = extra.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    ensure(write_presentation(&p, &extras) == a, || "presentation round trip differs".into())?;
    let s2 = include_str!("../data/s2vs2.json");
    let x = FiniteSimplicialSet::from_json(s2).map_err(err)?;
    let back = FiniteSimplicialSet::from_json(&x.to_json().to_string()).map_err(err)?;
    ensure(back.to_json() == x.to_json(), || "simplicial set round trip differs".into())
}

fn main() -> ExitCode {
    let t4 = Tower::build(4, BuildOptions::new(3)).expect("L4 at N=3");
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 γ verification", Box::new(c1_gamma)),
        ("2 L_n construction", Box::new(|| c2_construction(&t4))),
        ("3 lemma end-to-end", Box::new(c3_lemma)),
        ("4 Eilenberg-Zilber / Alexander-Whitney", Box::new(c4_ez_aw)),
        ("5 BCH against Dynkin", Box::new(c5_bch)),
        ("6 λ pipeline", Box::new(c6_lambda)),
        ("7 realization and ρ", Box::new(|| c7_realization(&t4))),
        ("8 Φ identities", Box::new(|| c8_phi(&t4))),
        ("9 cochain cohomology", Box::new(c9_ce)),
        ("10 reproducibility", Box::new(c10_reproducible)),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        let start = Instant::now();
        match f() {
            Ok(()) => println!("PASS  criterion {name} ({:.1?})", start.elapsed()),
            Err(e) => {
                failed += 1;
                println!("FAIL  criterion {name}: {e}");
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
