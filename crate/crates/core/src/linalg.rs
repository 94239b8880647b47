//! Exact sparse elimination over ℚ(ε).
//!
//! Vectors are inserted one at a time and reduced against the pivots found
//! so far, in insertion order. Each stored row remembers which combination
//! of the original inputs produced it, so a later target can be written in
//! terms of the inputs.

use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::scalars::GaussianRational;

pub type SparseVec<K> = FxHashMap<K, GaussianRational>;

struct Row<K> {
    pivot: K,
    vec: SparseVec<K>,
    comb: FxHashMap<usize, GaussianRational>,
}

/// Incremental column echelon form with combination tracking.
pub struct Eliminator<K> {
    rows: Vec<Row<K>>,
    inputs: usize,
}

/// Reduction left a nonzero remainder; the target is outside the span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual(pub usize);

fn axpy<K: Hash + Eq + Clone>(y: &mut FxHashMap<K, GaussianRational>, a: &GaussianRational, x: &FxHashMap<K, GaussianRational>) {
    use std::collections::hash_map::Entry;
    for (k, v) in x {
        let d = a * v;
        match y.entry(k.clone()) {
            Entry::Occupied(mut e) => {
                let s = e.get() + &d;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            Entry::Vacant(e) => {
                if !d.is_zero() {
                    e.insert(d);
                }
            }
        }
    }
}

impl<K: Hash + Eq + Ord + Clone> Default for Eliminator<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Hash + Eq + Ord + Clone> Eliminator<K> {
    pub fn new() -> Self {
        Eliminator { rows: Vec::new(), inputs: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    fn reduce(&self, v: &mut SparseVec<K>, comb: &mut FxHashMap<usize, GaussianRational>) {
        for row in &self.rows {
            if let Some(c) = v.get(&row.pivot) {
                let f = -c;
                axpy(v, &f, &row.vec);
                axpy(comb, &f, &row.comb);
            }
        }
    }

    /// Add input number `self.inputs()`. Returns false if it was dependent.
    pub fn insert(&mut self, mut v: SparseVec<K>) -> bool {
        v.retain(|_, c| !c.is_zero());
        let idx = self.inputs;
        self.inputs += 1;
        let mut comb = FxHashMap::default();
        comb.insert(idx, GaussianRational::one());
        self.reduce(&mut v, &mut comb);
        let Some(pivot) = v.keys().min().cloned() else {
            return false;
        };
        let inv = v[&pivot].inv().expect("pivot is nonzero");
        for c in v.values_mut() {
            *c = &*c * &inv;
        }
        for c in comb.values_mut() {
            *c = &*c * &inv;
        }
        self.rows.push(Row { pivot, vec: v, comb });
        true
    }

    /// Coefficients x with Σ x_i input_i = target, or the residual size.
    pub fn solve(&self, target: &SparseVec<K>) -> Result<FxHashMap<usize, GaussianRational>, Residual> {
        let mut v = target.clone();
        v.retain(|_, c| !c.is_zero());
        let mut comb = FxHashMap::default();
        self.reduce(&mut v, &mut comb);
        if !v.is_empty() {
            return Err(Residual(v.len()));
        }
        // reduce() subtracted; flip to get the expression of the target
        for c in comb.values_mut() {
            *c = -&*c;
        }
        comb.retain(|_, c| !c.is_zero());
        Ok(comb)
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Hash + Eq + Ord + Clone>(vectors: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut e = Eliminator::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
