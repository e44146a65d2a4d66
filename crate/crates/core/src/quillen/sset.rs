//! Finite simplicial sets with symbolic degeneracies.
//!
//! A simplex is a non-degenerate core together with a monotone surjection
//! `eta: [m] -> [dim core]`; the simplex is `eta^*(core)`. Faces of cores are
//! tabulated, everything else is computed.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use serde_json::Value;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Operations a simplicial set must provide for the Lie-side constructions.
pub trait Simplicial {
    type Simplex: Clone + Eq + Hash + Ord + Debug;

    fn dim(&self, x: &Self::Simplex) -> usize;
    fn face(&self, i: usize, x: &Self::Simplex) -> Self::Simplex;
    fn degeneracy(&self, i: usize, x: &Self::Simplex) -> Self::Simplex;

    /// `x = s_0 y` for some `y`.
    fn is_s0_degenerate(&self, x: &Self::Simplex) -> bool {
        self.dim(x) >= 1 && self.degeneracy(0, &self.face(0, x)) == *x
    }

    /// Degenerate in any direction.
    fn is_degenerate(&self, x: &Self::Simplex) -> bool {
        let n = self.dim(x);
        (0..n).any(|i| self.degeneracy(i, &self.face(i, x)) == *x)
    }
}

pub type Eta = SmallVec<[u8; 8]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub core: u32,
    pub eta: Eta,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.eta.len() - 1
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.eta.windows(2).all(|w| w[0] != w[1])
    }
}

#[derive(Clone, Debug)]
struct Core {
    name: String,
    dim: usize,
    faces: Vec<Simplex>,
}

#[derive(Clone, Debug)]
pub struct FiniteSimplicialSet {
    cores: Vec<Core>,
    index: HashMap<String, u32>,
}

fn identity_eta(d: usize) -> Eta {
    (0..=d as u8).collect()
}

impl FiniteSimplicialSet {
    fn empty() -> Self {
        Self {
            cores: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Add a non-degenerate simplex; `faces` are given in order `d_0 .. d_dim`.
    pub fn add(&mut self, name: &str, dim: usize, faces: Vec<Simplex>) -> Result<Simplex> {
        if self.index.contains_key(name) {
            return Err(Error::input(format!("duplicate simplex id {name:?}")));
        }
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::input(format!(
                "simplex {name:?} of dimension {dim} needs {expected} faces, got {}",
                faces.len()
            )));
        }
        if let Some(f) = faces.iter().find(|f| f.dim() + 1 != dim) {
            return Err(Error::input(format!(
                "face of {name:?} has dimension {} (expected {})",
                f.dim(),
                dim - 1
            )));
        }
        let id = self.cores.len() as u32;
        self.cores.push(Core {
            name: name.to_string(),
            dim,
            faces,
        });
        self.index.insert(name.to_string(), id);
        Ok(self.nondegenerate(id))
    }

    pub fn nondegenerate(&self, id: u32) -> Simplex {
        Simplex {
            core: id,
            eta: identity_eta(self.cores[id as usize].dim),
        }
    }

    pub fn by_name(&self, name: &str) -> Option<Simplex> {
        self.index.get(name).map(|&id| self.nondegenerate(id))
    }

    pub fn name(&self, core: u32) -> &str {
        &self.cores[core as usize].name
    }

    pub fn core_count(&self) -> usize {
        self.cores.len()
    }

    /// Non-degenerate simplices of dimension `d`.
    pub fn nondegenerate_of_dim(&self, d: usize) -> Vec<Simplex> {
        (0..self.cores.len() as u32)
            .filter(|&c| self.cores[c as usize].dim == d)
            .map(|c| self.nondegenerate(c))
            .collect()
    }

    pub fn max_dim(&self) -> usize {
        self.cores.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    /// All simplices of dimension `m` (degenerate ones included), in a fixed order.
    pub fn simplices(&self, m: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (id, c) in self.cores.iter().enumerate() {
            if c.dim > m {
                continue;
            }
            for eta in surjections(m, c.dim) {
                out.push(Simplex { core: id as u32, eta });
            }
        }
        out
    }

    /// Apply a word of degeneracy operators `[s_a, s_b, ...]`, rightmost first.
    pub fn apply_degeneracies(&self, word: &[usize], x: &Simplex) -> Simplex {
        word.iter().rev().fold(x.clone(), |acc, &i| self.degeneracy(i, &acc))
    }

    fn check_identities(&self) -> Result<()> {
        for c in 0..self.cores.len() as u32 {
            let x = self.nondegenerate(c);
            let n = x.dim();
            for j in 0..=n {
                for i in 0..j {
                    if n < 2 {
                        continue;
                    }
                    let lhs = self.face(i, &self.face(j, &x));
                    let rhs = self.face(j - 1, &self.face(i, &x));
                    if lhs != rhs {
                        return Err(Error::input(format!(
                            "simplicial identity d_{i} d_{j} = d_{} d_{i} fails on {:?}",
                            j - 1,
                            self.name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// One vertex and no non-degenerate edges.
    pub fn check_reduced(&self) -> Result<()> {
        let v = self.nondegenerate_of_dim(0).len();
        let e = self.nondegenerate_of_dim(1).len();
        if v != 1 || e != 0 {
            return Err(Error::input(format!(
                "simplicial set is not reduced: {v} vertices and {e} non-degenerate edges"
            )));
        }
        Ok(())
    }

    /// Parse `{"simplices": [{"id", "dim", "faces": ["s1 s0 *", ...]}, ...]}`.
    /// A face entry is an id preceded by degeneracy operators applied right to left.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::input(format!("invalid JSON: {e}")))?;
        let list = v
            .get("simplices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::input("missing \"simplices\" list"))?;
        let mut entries: Vec<(String, usize, Vec<String>)> = Vec::new();
        for s in list {
            let id = s
                .get("id")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::input(format!("simplex without string id: {s}")))?;
            let dim = s
                .get("dim")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::input(format!("simplex {id:?} without dimension")))? as usize;
            let faces = match s.get("faces") {
                None => Vec::new(),
                Some(f) => f
                    .as_array()
                    .ok_or_else(|| Error::input(format!("faces of {id:?} must be a list")))?
                    .iter()
                    .map(|t| {
                        t.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| Error::input(format!("face token of {id:?} must be a string")))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            entries.push((id.to_string(), dim, faces));
        }
        if let Some(d) = v.get("dims") {
            let max = entries.iter().map(|e| e.1).max().unwrap_or(0);
            if d.as_u64() != Some(max as u64) {
                return Err(Error::input(format!("\"dims\" is {d} but the top dimension is {max}")));
            }
        }
        entries.sort_by_key(|e| e.1);
        let mut x = Self::empty();
        for (id, dim, tokens) in entries {
            let faces = tokens
                .iter()
                .map(|t| x.parse_token(t))
                .collect::<Result<Vec<_>>>()?;
            x.add(&id, dim, faces)?;
        }
        x.check_identities()?;
        Ok(x)
    }

    fn parse_token(&self, token: &str) -> Result<Simplex> {
        let parts: Vec<&str> = token.split_whitespace().collect();
        let (name, ops) = parts
            .split_last()
            .ok_or_else(|| Error::input("empty face token"))?;
        let base = self
            .by_name(name)
            .ok_or_else(|| Error::input(format!("face refers to unknown or higher simplex {name:?}")))?;
        let mut word = Vec::new();
        for op in ops {
            let i = op
                .strip_prefix('s')
                .and_then(|k| k.parse::<usize>().ok())
                .ok_or_else(|| Error::input(format!("bad degeneracy operator {op:?}")))?;
            word.push(i);
        }
        let mut x = base;
        for &i in word.iter().rev() {
            if i > x.dim() {
                return Err(Error::input(format!("degeneracy s{i} out of range in {token:?}")));
            }
            x = self.degeneracy(i, &x);
        }
        Ok(x)
    }

    pub fn to_json(&self) -> Value {
        let simplices: Vec<Value> = self
            .cores
            .iter()
            .map(|c| {
                let faces: Vec<Value> = c.faces.iter().map(|f| Value::String(self.token(f))).collect();
                serde_json::json!({"id": c.name, "dim": c.dim, "faces": faces})
            })
            .collect();
        serde_json::json!({ "simplices": simplices })
    }

    /// Text token `s.. s.. id` naming a simplex.
    pub fn token(&self, x: &Simplex) -> String {
        let mut ops = Vec::new();
        // peel degeneracies from the top: eta = s_{i_1} ... s_{i_k} with i_1 > ... > i_k
        let mut eta: Vec<u8> = x.eta.to_vec();
        loop {
            let Some(i) = (0..eta.len().saturating_sub(1)).rev().find(|&i| eta[i] == eta[i + 1]) else {
                break;
            };
            ops.push(format!("s{i}"));
            eta.remove(i + 1);
        }
        ops.push(self.name(x.core).to_string());
        ops.join(" ")
    }

    /// A point: a single vertex.
    pub fn point() -> Self {
        let mut x = Self::empty();
        x.add("*", 0, Vec::new()).expect("valid model");
        x
    }

    /// The sphere `S^n`, `n >= 1`: a vertex and one `n`-simplex with degenerate faces.
    pub fn sphere(n: usize) -> Self {
        Self::wedge_of_spheres(&[n])
    }

    /// Wedge of spheres sharing the vertex.
    pub fn wedge_of_spheres(dims: &[usize]) -> Self {
        let mut x = Self::point();
        let star = x.by_name("*").expect("vertex");
        for (k, &n) in dims.iter().enumerate() {
            assert!(n >= 1, "spheres have dimension at least 1");
            let word: Vec<usize> = (0..n - 1).rev().collect();
            let f = x.apply_degeneracies(&word, &star);
            let name = if dims.len() == 1 { "s".to_string() } else { format!("s{k}") };
            x.add(&name, n, vec![f; n + 1]).expect("valid model");
        }
        x
    }

    /// The ordered simplicial set of a simplicial complex on vertices `0..v`, given
    /// by its faces as sorted vertex lists.
    pub fn from_complex(faces: &[Vec<u8>]) -> Result<Self> {
        let mut sorted: Vec<Vec<u8>> = faces.to_vec();
        sorted.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        sorted.dedup();
        let mut x = Self::empty();
        for f in &sorted {
            let name = f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("");
            let dim = f.len() - 1;
            let mut fs = Vec::new();
            if dim > 0 {
                for j in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(j);
                    let gname = g.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("");
                    fs.push(
                        x.by_name(&gname)
                            .ok_or_else(|| Error::input(format!("complex is missing face {gname}")))?,
                    );
                }
            }
            x.add(&name, dim, fs)?;
        }
        Ok(x)
    }
}

/// Monotone surjections `[m] -> [d]` in lexicographic order.
pub fn surjections(m: usize, d: usize) -> Vec<Eta> {
    let mut out = Vec::new();
    let mut cur: Eta = SmallVec::new();
    fn rec(pos: usize, m: usize, d: usize, cur: &mut Eta, out: &mut Vec<Eta>) {
        if pos > m {
            if cur.last().copied() == Some(d as u8) {
                out.push(cur.clone());
            }
            return;
        }
        let choices: Vec<u8> = match cur.last() {
            None => vec![0],
            Some(&p) => {
                if (p as usize) < d {
                    vec![p, p + 1]
                } else {
                    vec![p]
                }
            }
        };
        for c in choices {
            // enough room left to reach d
            if (d - c as usize) > m - pos {
                continue;
            }
            cur.push(c);
            rec(pos + 1, m, d, cur, out);
            cur.pop();
        }
    }
    rec(0, m, d, &mut cur, &mut out);
    out
}

impl Simplicial for FiniteSimplicialSet {
    type Simplex = Simplex;

    fn dim(&self, x: &Simplex) -> usize {
        x.dim()
    }

    fn face(&self, i: usize, x: &Simplex) -> Simplex {
        let mut eta: Eta = x.eta.clone();
        eta.remove(i);
        let dc = self.cores[x.core as usize].dim;
        // value missing from the image, if any
        let missing = (0..=dc as u8).find(|v| !eta.contains(v));
        match missing {
            None => Simplex { core: x.core, eta },
            Some(v) => {
                let inner: Eta = eta.iter().map(|&e| if e > v { e - 1 } else { e }).collect();
                let f = &self.cores[x.core as usize].faces[v as usize];
                Simplex {
                    core: f.core,
                    eta: inner.iter().map(|&e| f.eta[e as usize]).collect(),
                }
            }
        }
    }

    fn degeneracy(&self, i: usize, x: &Simplex) -> Simplex {
        let mut eta = x.eta.clone();
        eta.insert(i, x.eta[i]);
        Simplex { core: x.core, eta }
    }

    fn is_s0_degenerate(&self, x: &Simplex) -> bool {
        x.eta.len() >= 2 && x.eta[0] == x.eta[1]
    }

    fn is_degenerate(&self, x: &Simplex) -> bool {
        !x.is_nondegenerate()
    }
}
