//! Degreewise realization of U(q_n) inside Π_r Q(n,r).
//!
//! A family is stored up to a truncation degree R. The spanning elements
//! A(j,r) = Σ_λ λ^j φ_{A+diag λ} are polynomial in λ, which is what lets a
//! family be re-expressed in them by interpolation over the points λ.

mod closed;
mod relations;
mod triangular;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, Eliminator, SparseVec};
use crate::qschur::{Oracle, QElement, QError};
use crate::scalars::GaussianRational;
use crate::superindex::{count_matrices, SuperMatrix};
use crate::symgroup::Composition;

pub use closed::{gen_mul, gen_mul_spec, GenTag};
pub use relations::{check_relations, generator_family, relations_at, Gen, Poly, Relation, RelationFailure, RelationReport, Suite};
pub use triangular::{
    divided_power_check, filtration_degree, pbw_check, pbw_word, pi_images_check, triangular_factors, triangular_product,
    weight_shape_check, CheckTally, PbwReport, PiReport, Triangular,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlmError {
    #[error("matrix has a nonzero even diagonal")]
    NotStrict,
    #[error("exponent vector has length {0}, expected {1}")]
    WrongLength(usize, usize),
    #[error("index {0} out of range for n = {1}")]
    IndexOutOfRange(usize, usize),
    #[error("truncation {got} is below the degree {needed} needed for a unique expansion")]
    TruncationTooLow { needed: usize, got: usize },
    #[error("family is not in the span of A(B,j) with |B|+|j| ≤ {0}")]
    NotInSpan(usize),
    #[error(transparent)]
    Q(#[from] QError),
}

/// A pair (A, j) naming the family A(A, j).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ASpec {
    pub matrix: SuperMatrix,
    pub j: Vec<usize>,
}

impl ASpec {
    pub fn new(matrix: SuperMatrix, j: Vec<usize>) -> Result<Self, BlmError> {
        if !matrix.is_strict() {
            return Err(BlmError::NotStrict);
        }
        if j.len() != matrix.n() {
            return Err(BlmError::WrongLength(j.len(), matrix.n()));
        }
        Ok(ASpec { matrix, j })
    }

    /// A(A, 0).
    pub fn plain(matrix: SuperMatrix) -> Result<Self, BlmError> {
        let n = matrix.n();
        Self::new(matrix, vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// |A| + |j|, the filtration degree.
    pub fn degree(&self) -> usize {
        self.matrix.size() + self.j.iter().sum::<usize>()
    }

    pub fn at(&self, r: usize) -> QElement {
        a_jr(&self.matrix, &self.j, r)
    }
}

/// λ^j with 0⁰ = 1.
pub fn monomial(lambda: &[usize], j: &[usize]) -> GaussianRational {
    let mut acc = 1i64;
    for (&l, &e) in lambda.iter().zip(j) {
        acc *= (l as i64).pow(e as u32);
    }
    GaussianRational::from_int(acc)
}

/// A(A, j, r) = Σ_{λ ∈ Λ(n, r−|A|)} λ^j φ_{A+λ}; zero when |A| > r.
pub fn a_jr(a: &SuperMatrix, j: &[usize], r: usize) -> QElement {
    let n = a.n();
    if a.size() > r {
        return QElement::zero(n, r);
    }
    let terms = Composition::all(n, r - a.size()).into_iter().map(|lam| (a.plus_diagonal(lam.parts()), monomial(lam.parts(), j)));
    QElement::from_terms(n, r, terms)
}

/// Components r = 0..=R of an element of Π_r Q(n,r).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedFamily {
    n: usize,
    rmax: usize,
    levels: Vec<QElement>,
}

impl TruncatedFamily {
    pub fn zero(n: usize, rmax: usize) -> Self {
        TruncatedFamily { n, rmax, levels: (0..=rmax).map(|r| QElement::zero(n, r)).collect() }
    }

    pub fn identity(n: usize, rmax: usize) -> Self {
        TruncatedFamily { n, rmax, levels: (0..=rmax).map(|r| QElement::identity(n, r)).collect() }
    }

    pub fn from_levels(n: usize, levels: Vec<QElement>) -> Self {
        assert!(!levels.is_empty());
        for (r, e) in levels.iter().enumerate() {
            assert!(e.n() == n && e.r() == r, "level {r} lives in Q({},{})", e.n(), e.r());
        }
        TruncatedFamily { n, rmax: levels.len() - 1, levels }
    }

    /// {A(A, j, r)}_{r ≤ R}.
    pub fn truncated(a: &SuperMatrix, j: &[usize], rmax: usize) -> Self {
        TruncatedFamily { n: a.n(), rmax, levels: (0..=rmax).map(|r| a_jr(a, j, r)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rmax(&self) -> usize {
        self.rmax
    }

    pub fn level(&self, r: usize) -> &QElement {
        &self.levels[r]
    }

    pub fn levels(&self) -> &[QElement] {
        &self.levels
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(QElement::is_zero)
    }

    fn zip(&self, o: &Self, f: impl Fn(&QElement, &QElement) -> Result<QElement, QError>) -> Result<Self, QError> {
        if self.n != o.n || self.rmax != o.rmax {
            return Err(QError::DimensionMismatch(self.n, self.rmax, o.n, o.rmax));
        }
        let levels = self.levels.iter().zip(&o.levels).map(|(a, b)| f(a, b)).collect::<Result<_, _>>()?;
        Ok(TruncatedFamily { n: self.n, rmax: self.rmax, levels })
    }

    pub fn add(&self, o: &Self) -> Result<Self, QError> {
        self.zip(o, QElement::add)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, QError> {
        self.zip(o, QElement::sub)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        TruncatedFamily { n: self.n, rmax: self.rmax, levels: self.levels.iter().map(|e| e.scale(c)).collect() }
    }

    /// Componentwise product; different degrees multiply to zero.
    pub fn mul(&self, o: &Self, oracle: &Oracle) -> Result<Self, QError> {
        self.zip(o, |a, b| oracle.general_product(a, b))
    }

    /// Stacked φ-coordinates over all levels.
    pub fn coordinates(&self) -> SparseVec<SuperMatrix> {
        let mut v = SparseVec::default();
        for e in &self.levels {
            for (m, c) in e.terms() {
                v.insert(m.clone(), c.clone());
            }
        }
        v
    }
}

/// Σ over a spanning set, with coefficients.
pub type Expansion = BTreeMap<ASpec, GaussianRational>;

fn exponents(n: usize, max: usize) -> Vec<Vec<usize>> {
    (0..=max).flat_map(|s| Composition::all(n, s)).map(|c| c.parts().to_vec()).collect()
}

/// Write a family as Σ g_{B,j} A(B,j) with |B|+|j| ≤ max_degree.
///
/// Each level term φ_{B+λ} is a sample of the polynomial Σ_j g_{B,j} λ^j at
/// λ, and the sample points |λ| ≤ R−|B| determine polynomials of degree
/// R−|B|, so the answer is unique once R ≥ max_degree.
pub fn express(f: &TruncatedFamily, max_degree: usize) -> Result<Expansion, BlmError> {
    if f.rmax() < max_degree {
        return Err(BlmError::TruncationTooLow { needed: max_degree, got: f.rmax() });
    }
    let n = f.n();
    let mut samples: BTreeMap<SuperMatrix, SparseVec<Vec<usize>>> = BTreeMap::new();
    for e in f.levels() {
        for (m, c) in e.terms() {
            let (lam, b) = m.split_diagonal();
            samples.entry(b).or_default().insert(lam, c.clone());
        }
    }
    let mut out = Expansion::new();
    for (b, target) in samples {
        if b.size() > max_degree {
            return Err(BlmError::NotInSpan(max_degree));
        }
        let js = exponents(n, max_degree - b.size());
        let mut elim = Eliminator::new();
        for j in &js {
            let col: SparseVec<Vec<usize>> = exponents(n, f.rmax() - b.size())
                .into_iter()
                .map(|lam| {
                    let v = monomial(&lam, j);
                    (lam, v)
                })
                .filter(|(_, v)| !v.is_zero())
                .collect();
            elim.insert(col);
        }
        debug_assert_eq!(elim.rank(), js.len());
        let sol = elim.solve(&target).map_err(|_| BlmError::NotInSpan(max_degree))?;
        for (i, c) in sol {
            if !c.is_zero() {
                out.insert(ASpec { matrix: b.clone(), j: js[i].clone() }, c);
            }
        }
    }
    Ok(out)
}

/// Rebuild a family from an expansion.
pub fn realize(e: &Expansion, n: usize, rmax: usize) -> TruncatedFamily {
    let mut f = TruncatedFamily::zero(n, rmax);
    for (spec, c) in e {
        for r in 0..=rmax {
            f.levels[r].add_scaled(&spec.at(r), c);
        }
    }
    f
}

/// The spanning set 𝓛_r: A ∈ M±(n), j_n = 0, |A|+|j| ≤ r.
pub fn blm_basis(n: usize, r: usize) -> Vec<ASpec> {
    let mut out = Vec::new();
    for a in SuperMatrix::all_strict(n, r) {
        for j in exponents(n, r - a.size()) {
            if n == 0 || j[n - 1] == 0 {
                out.push(ASpec { matrix: a.clone(), j });
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BasisRank {
    pub size: usize,
    pub rank: usize,
    pub dim: u128,
}

impl BasisRank {
    pub fn is_basis(&self) -> bool {
        self.size == self.rank && self.size as u128 == self.dim
    }
}

/// Size of 𝓛_r and the rank of its φ-coordinates in Q(n,r).
pub fn blm_basis_rank(n: usize, r: usize) -> BasisRank {
    let basis = blm_basis(n, r);
    let size = basis.len();
    let rank = linalg::rank(basis.iter().map(|s| s.at(r).terms().map(|(m, c)| (m.clone(), c.clone())).collect::<SparseVec<_>>()));
    BasisRank { size, rank, dim: count_matrices(n, r) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superindex::Part;

    fn g(v: i64) -> GaussianRational {
        GaussianRational::from_int(v)
    }

    #[test]
    fn unit_family_is_identity() {
        for n in 1..=3 {
            for r in 0..=3 {
                assert_eq!(a_jr(&SuperMatrix::zero(n), &vec![0; n], r), QElement::identity(n, r));
            }
        }
    }

    #[test]
    fn too_large_matrix_vanishes() {
        let a = SuperMatrix::unit(2, Part::Even, 1, 2, 3);
        assert!(a_jr(&a, &[0, 0], 2).is_zero());
        assert!(!a_jr(&a, &[0, 0], 3).is_zero());
    }

    #[test]
    fn weight_family_unrolled() {
        let f = a_jr(&SuperMatrix::zero(2), &[1, 0], 2);
        for lam in Composition::all(2, 2) {
            assert_eq!(f.coeff(&SuperMatrix::diagonal(&lam)), g(lam.parts()[0] as i64));
        }
    }

    #[test]
    fn basis_small_cases() {
        assert_eq!(blm_basis_rank(1, 1), BasisRank { size: 2, rank: 2, dim: 2 });
        for (n, r) in [(2, 1), (2, 2), (2, 3), (3, 2)] {
            assert!(blm_basis_rank(n, r).is_basis(), "n={n} r={r}");
        }
    }

    #[test]
    fn express_round_trips() {
        let a = SuperMatrix::from_rows(&[vec![0, 1], vec![0, 0]], &[vec![1, 0], vec![0, 0]]).unwrap();
        let mut e = Expansion::new();
        e.insert(ASpec::new(a.clone(), vec![1, 1]).unwrap(), g(3));
        e.insert(ASpec::new(a, vec![0, 0]).unwrap(), g(-2));
        e.insert(ASpec::new(SuperMatrix::zero(2), vec![2, 0]).unwrap(), g(5));
        let f = realize(&e, 2, 4);
        assert_eq!(express(&f, 4).unwrap(), e);
        assert!(matches!(express(&f, 5), Err(BlmError::TruncationTooLow { .. })));
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(ASpec::new(SuperMatrix::unit(2, Part::Even, 1, 1, 1), vec![0, 0]), Err(BlmError::NotStrict));
        assert_eq!(ASpec::new(SuperMatrix::zero(2), vec![0]), Err(BlmError::WrongLength(1, 2)));
    }

    #[test]
    fn family_product_is_levelwise() {
        let oracle = Oracle::new();
        let x = TruncatedFamily::truncated(&SuperMatrix::unit(2, Part::Even, 1, 2, 1), &[0, 0], 3);
        let y = TruncatedFamily::truncated(&SuperMatrix::unit(2, Part::Odd, 2, 1, 1), &[1, 0], 3);
        let p = x.mul(&y, &oracle).unwrap();
        for r in 0..=3 {
            assert_eq!(p.level(r), &oracle.general_product(x.level(r), y.level(r)).unwrap());
        }
        assert_eq!(TruncatedFamily::identity(2, 3).mul(&y, &oracle).unwrap(), y);
    }
}
