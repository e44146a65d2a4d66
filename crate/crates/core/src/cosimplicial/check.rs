//! Structural checks on a built simplex `L_n`.

use super::build::Tower;
use super::simplex::CosimplicialMap;
use crate::error::Result;
use crate::lie::presentation::{FreeCdglPresentation, Generator};
use crate::lie::tensor::{Letter, TensorPoly};
use crate::lie::tree::LieElement;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub truncation: usize,
    pub passed: bool,
    /// First offending generator, if any.
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct ConditionsReport {
    pub level: usize,
    pub checks: Vec<Check>,
}

impl ConditionsReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Copy of a presentation with every differential image cut at `n`.
fn truncate_presentation(p: &FreeCdglPresentation, n: usize) -> Result<FreeCdglPresentation> {
    let gens: Vec<Generator> = p.generators().to_vec();
    let diff: Vec<LieElement> = p.differential().iter().map(|e| e.truncated(n)).collect();
    FreeCdglPresentation::new(gens, n, diff)
}

fn record(checks: &mut Vec<Check>, name: &str, truncation: usize, failure: Option<String>) {
    checks.push(Check {
        name: name.to_string(),
        truncation,
        passed: failure.is_none(),
        detail: failure.unwrap_or_default(),
    });
}

/// Vertices are MC, linear part is the boundary, cofaces into and codegeneracies
/// out of level `n` commute with `d`, and `d^2 = 0`; at every truncation from 2
/// up to the tower's.
pub fn check_conditions(tower: &Tower, n: usize) -> Result<ConditionsReport> {
    let top = tower.truncation();
    let ln = tower.level(n)?.presentation;
    let below = if n >= 1 { Some(tower.level(n - 1)?.presentation) } else { None };
    let alpha = tower.alphabet(n);
    let mut checks = Vec::new();
    for t in 2..=top {
        let p = truncate_presentation(&ln, t)?;
        let q = below.as_ref().map(|b| truncate_presentation(b, t)).transpose()?;

        let bad_vertex = (0..=n as u8)
            .map(|i| alpha.vertex(i))
            .find(|&v| !p.mc_defect(&TensorPoly::letter(v)).is_zero());
        record(&mut checks, "vertices are Maurer-Cartan", t, bad_vertex.map(|v| p.name(v).to_string()));

        let bad_linear = (0..alpha.len() as Letter).find(|&l| p.images()[l as usize].length_part(1) != alpha.boundary(l));
        record(&mut checks, "linear part is the boundary", t, bad_linear.map(|l| p.name(l).to_string()));

        if let Some(q) = &q {
            let mut failure = None;
            'cofaces: for i in 0..=n {
                let delta = CosimplicialMap::coface(i, n)?;
                for g in 0..q.generators().len() as Letter {
                    let lhs = p.d(&delta.apply(&TensorPoly::letter(g)));
                    let rhs = delta.apply(&q.images()[g as usize]);
                    if lhs != rhs {
                        failure = Some(format!("delta_{i} on {}", q.name(g)));
                        break 'cofaces;
                    }
                }
            }
            record(&mut checks, "cofaces commute with d", t, failure);

            let mut failure = None;
            'codegeneracies: for j in 0..n {
                let sigma = CosimplicialMap::codegeneracy(j, n - 1)?;
                for g in 0..p.generators().len() as Letter {
                    let lhs = q.d(&sigma.apply(&TensorPoly::letter(g)));
                    let rhs = sigma.apply(&p.images()[g as usize]);
                    if lhs != rhs {
                        failure = Some(format!("sigma_{j} on {}", p.name(g)));
                        break 'codegeneracies;
                    }
                }
            }
            record(&mut checks, "codegeneracies commute with d", t, failure);
        }

        let sq = p.check_d_squared();
        record(&mut checks, "d^2 = 0", t, sq.failures.first().map(|f| f.generator.clone()));
    }
    Ok(ConditionsReport { level: n, checks })
}
