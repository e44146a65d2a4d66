//! Exact sparse linear algebra over the rationals.
//!
//! Columns are pushed one at a time into a column echelon form keyed by the
//! smallest row index of each reduced vector. Every pivot remembers how it was
//! combined from the original columns, which gives kernels and particular
//! solutions directly. Pivoting is deterministic: the first independent column
//! wins, and particular solutions put zero on every non-pivot column.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Sorted `(index, value)` pairs with non-zero values.
pub type SparseVec = Vec<(u32, Scalar)>;

pub fn sparse_from_map(m: BTreeMap<u32, Scalar>) -> SparseVec {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `a - f * b` for sorted sparse vectors.
pub fn axpy_neg(a: &[(u32, Scalar)], f: &Scalar, b: &[(u32, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(v: &[(u32, Scalar)], f: &Scalar) -> SparseVec {
    v.iter().map(|(k, x)| (*k, x * f)).collect()
}

#[derive(Clone, Debug)]
struct Pivot {
    vec: SparseVec,
    /// Expression of `vec` as a combination of original columns.
    combo: SparseVec,
}

#[derive(Clone, Debug)]
pub enum PushOutcome {
    Independent,
    /// The column is dependent; the vector is a kernel element
    /// (coefficients over original column indices, including the new column).
    Dependent(SparseVec),
}

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: HashMap<u32, Pivot>,
    ncols: u32,
    pivot_cols: Vec<u32>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols as usize
    }

    /// Original column indices that became pivots, in push order.
    pub fn pivot_columns(&self) -> &[u32] {
        &self.pivot_cols
    }

    /// Reduce `v`; returns the residual and the combination subtracted so far.
    /// Reduction stops at the first leading row without a pivot.
    fn reduce(&self, mut v: SparseVec) -> (SparseVec, SparseVec) {
        let mut combo: SparseVec = Vec::new();
        while let Some((row, coef)) = v.first().cloned() {
            let Some(p) = self.pivots.get(&row) else { break };
            // pivot vectors are normalised to a leading 1
            v = axpy_neg(&v, &coef, &p.vec);
            combo = axpy_neg(&combo, &-coef, &p.combo);
        }
        (v, combo)
    }

    pub fn push(&mut self, col: SparseVec) -> PushOutcome {
        let j = self.ncols;
        self.ncols += 1;
        let (residual, combo) = self.reduce(col);
        if residual.is_empty() {
            // col_j - combo = 0
            let mut kernel = scale(&combo, &-Scalar::one());
            kernel.push((j, Scalar::one()));
            kernel.sort_by_key(|(k, _)| *k);
            return PushOutcome::Dependent(kernel);
        }
        let lead = residual[0].1.clone();
        let inv = Scalar::one() / lead;
        let mut own = scale(&combo, &-Scalar::one());
        own.push((j, Scalar::one()));
        own.sort_by_key(|(k, _)| *k);
        let row = residual[0].0;
        self.pivots.insert(
            row,
            Pivot {
                vec: scale(&residual, &inv),
                combo: scale(&own, &inv),
            },
        );
        self.pivot_cols.push(j);
        PushOutcome::Independent
    }

    /// A solution `x` of `sum_j x_j col_j = rhs`, supported on pivot columns.
    pub fn solve(&self, rhs: SparseVec) -> Result<SparseVec, SparseVec> {
        let (residual, combo) = self.reduce(rhs);
        if residual.is_empty() {
            Ok(combo)
        } else {
            Err(residual)
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// Assigns dense `u32` ids to arbitrary keys in first-seen order.
#[derive(Clone, Debug)]
pub struct Interner<K: Hash + Eq + Clone> {
    ids: HashMap<K, u32>,
    keys: Vec<K>,
}

impl<K: Hash + Eq + Clone> Default for Interner<K> {
    fn default() -> Self {
        Self {
            ids: HashMap::new(),
            keys: Vec::new(),
        }
    }
}

impl<K: Hash + Eq + Clone> Interner<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn id(&mut self, k: &K) -> u32 {
        if let Some(&i) = self.ids.get(k) {
            return i;
        }
        let i = self.keys.len() as u32;
        self.ids.insert(k.clone(), i);
        self.keys.push(k.clone());
        i
    }

    pub fn get(&self, k: &K) -> Option<u32> {
        self.ids.get(k).copied()
    }

    pub fn key(&self, i: u32) -> &K {
        &self.keys[i as usize]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// Collect `(key, value)` pairs into a sorted sparse vector through an interner.
pub fn intern_vec<K, I>(interner: &mut Interner<K>, items: I) -> SparseVec
where
    K: Hash + Eq + Clone,
    I: IntoIterator<Item = (K, Scalar)>,
{
    let mut m: BTreeMap<u32, Scalar> = BTreeMap::new();
    for (k, v) in items {
        let id = interner.id(&k);
        *m.entry(id).or_insert_with(Scalar::zero) += v;
    }
    sparse_from_map(m)
}
