use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalars::GaussianRational;
use crate::superindex::{MatrixError, SuperMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("elements live in Q({0},{1}) and Q({2},{3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("generator {shape} with h = {h} is not defined on row sums {lambda:?}")]
    InvalidGenerator { shape: &'static str, h: usize, lambda: Vec<usize> },
    #[error("decomposition left a residual of {0} coordinates")]
    Residual(usize),
    #[error("candidate basis for row sums {0:?}, column sums {1:?} is linearly dependent")]
    DependentBasis(Vec<usize>, Vec<usize>),
    #[error("{0} is not one of the generator shapes")]
    NotAGenerator(String),
}

/// A finite combination Σ f_M φ_M in Q(n, r).
#[derive(Clone, PartialEq, Eq)]
pub struct QElement {
    n: usize,
    r: usize,
    terms: BTreeMap<SuperMatrix, GaussianRational>,
}

impl fmt::Debug for QElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})φ{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl QElement {
    pub fn zero(n: usize, r: usize) -> Self {
        QElement { n, r, terms: BTreeMap::new() }
    }

    /// The basis element φ_M; M must lie in M(n, r).
    pub fn phi(m: &SuperMatrix) -> Self {
        let mut e = Self::zero(m.n(), m.size());
        e.terms.insert(m.clone(), GaussianRational::one());
        e
    }

    /// φ_M checked against (n, r).
    pub fn phi_in(n: usize, r: usize, m: &SuperMatrix) -> Result<Self, QError> {
        m.check_in(n, r)?;
        Ok(Self::phi(m))
    }

    /// φ of a shifted key; ⊥ gives zero.
    pub fn phi_or_zero(n: usize, r: usize, m: Option<SuperMatrix>) -> Self {
        match m {
            Some(m) => Self::phi(&m),
            None => Self::zero(n, r),
        }
    }

    /// The identity Σ_λ 1_{λ,r}.
    pub fn identity(n: usize, r: usize) -> Self {
        let mut e = Self::zero(n, r);
        for lam in crate::symgroup::Composition::all(n, r) {
            e.terms.insert(SuperMatrix::diagonal(&lam), GaussianRational::one());
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &SuperMatrix) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&SuperMatrix, &GaussianRational)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, m: SuperMatrix, c: GaussianRational) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub(crate) fn from_terms(n: usize, r: usize, terms: impl IntoIterator<Item = (SuperMatrix, GaussianRational)>) -> Self {
        let mut e = Self::zero(n, r);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    fn check(&self, o: &Self) -> Result<(), QError> {
        if self.n != o.n || self.r != o.r {
            return Err(QError::DimensionMismatch(self.n, self.r, o.n, o.r));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, QError> {
        self.check(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, QError> {
        self.add(&o.scale(&GaussianRational::from_int(-1)))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.r);
        }
        QElement { n: self.n, r: self.r, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub(crate) fn add_scaled(&mut self, o: &Self, c: &GaussianRational) {
        for (m, v) in &o.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    /// Z₂-degree when homogeneous.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    matrix: SuperMatrix,
    coeff: GaussianRational,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    n: usize,
    r: usize,
    terms: Vec<WireTerm>,
}

impl Serialize for QElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            n: self.n,
            r: self.r,
            terms: self.terms.iter().map(|(m, c)| WireTerm { matrix: m.clone(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let mut e = QElement::zero(w.n, w.r);
        for t in w.terms {
            t.matrix.check_in(w.n, w.r).map_err(D::Error::custom)?;
            e.add_term(t.matrix, t.coeff);
        }
        Ok(e)
    }
}
