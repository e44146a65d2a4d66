#![allow(dead_code)]

use cdgl_core::lie::{BracketTree, FreeCdglPresentation, Generator, LieElement};
use cdgl_core::scalar::int;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn br(a: BracketTree, b: BracketTree) -> BracketTree {
    BracketTree::node(a, b)
}

pub fn leaf(l: u32) -> BracketTree {
    BracketTree::Leaf(l)
}

/// A simply connected dgl with `d = 0` on degree 1, `d` into brackets of degree-1
/// generators on degrees 2 and 3. `d^2 = 0` holds by construction.
pub fn random_quillen_model(seed: u64, truncation: usize) -> FreeCdglPresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n1 = rng.gen_range(1..=2u32);
    let n2 = rng.gen_range(0..=1u32);
    let n3 = rng.gen_range(0..=1u32);
    let mut gens = Vec::new();
    let mut diff = Vec::new();
    for i in 0..n1 {
        gens.push(Generator::new(format!("v{i}"), 1));
        diff.push(LieElement::zero());
    }
    for i in 0..n2 {
        gens.push(Generator::new(format!("u{i}"), 3));
        let mut d = LieElement::zero();
        for a in 0..n1 {
            for b in a..n1 {
                d.add_term(br(leaf(a), leaf(b)), int(rng.gen_range(-2..=2)));
            }
        }
        diff.push(d);
    }
    for i in 0..n3 {
        gens.push(Generator::new(format!("w{i}"), 4));
        let mut d = LieElement::zero();
        for a in 0..n1 {
            for b in 0..n1 {
                for c in 0..n1 {
                    d.add_term(br(leaf(a), br(leaf(b), leaf(c))), int(rng.gen_range(-1..=1)));
                }
            }
        }
        diff.push(d);
    }
    FreeCdglPresentation::new(gens, truncation, diff).expect("degrees are consistent")
}

/// The same presentation with generators listed in reverse order.
pub fn reversed(p: &FreeCdglPresentation) -> FreeCdglPresentation {
    let k = p.generators().len() as u32;
    let gens: Vec<Generator> = p.generators().iter().rev().cloned().collect();
    let diff: Vec<LieElement> = p
        .differential()
        .iter()
        .rev()
        .map(|e| e.relabel(&|l| Some(k - 1 - l)))
        .collect();
    FreeCdglPresentation::new(gens, p.truncation(), diff).expect("relabelled presentation")
}
