//! Super matrices (A⁰|A¹) indexing the basis of Q(n,r), the order ⪯ and
//! the position order on [1,n]×[1,n].

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::symgroup::{Composition, NatMatrix, SymError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("even and odd parts have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("odd entry at ({0},{1}) is {2}, expected 0 or 1")]
    OddEntry(usize, usize, u32),
    #[error("matrix has size {0}, expected {1}")]
    WrongSize(usize, usize),
    #[error("matrix has total {0}, expected {1}")]
    WrongTotal(usize, usize),
    #[error("even diagonal must vanish at ({0},{0})")]
    NotStrict(usize),
    #[error(transparent)]
    Shape(#[from] SymError),
}

/// Which half of a super matrix a shift touches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    Even,
    Odd,
}

/// (A⁰|A¹) with A⁰ natural and A¹ ∈ {0,1}. Ordered row-major on (even, odd).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperMatrix {
    even: NatMatrix,
    odd: NatMatrix,
}

impl fmt::Debug for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}|{:?})", self.even, self.odd)
    }
}

impl SuperMatrix {
    pub fn new(even: NatMatrix, odd: NatMatrix) -> Result<Self, MatrixError> {
        if even.n() != odd.n() {
            return Err(MatrixError::SizeMismatch(even.n(), odd.n()));
        }
        for i in 1..=odd.n() {
            for j in 1..=odd.n() {
                if odd.get(i, j) > 1 {
                    return Err(MatrixError::OddEntry(i, j, odd.get(i, j)));
                }
            }
        }
        Ok(SuperMatrix { even, odd })
    }

    pub fn from_rows(even: &[Vec<u32>], odd: &[Vec<u32>]) -> Result<Self, MatrixError> {
        Self::new(NatMatrix::from_rows(even)?, NatMatrix::from_rows(odd)?)
    }

    pub fn zero(n: usize) -> Self {
        SuperMatrix { even: NatMatrix::zeros(n), odd: NatMatrix::zeros(n) }
    }

    /// (diag(λ)|O).
    pub fn diagonal(lambda: &Composition) -> Self {
        SuperMatrix { even: NatMatrix::diag(lambda.parts()), odd: NatMatrix::zeros(lambda.n()) }
    }

    /// (E_{i,j}|O) or (O|E_{i,j}) scaled by k (k ≤ 1 for odd).
    pub fn unit(n: usize, part: Part, i: usize, j: usize, k: u32) -> Self {
        let mut m = Self::zero(n);
        match part {
            Part::Even => m.even.set(i, j, k),
            Part::Odd => {
                assert!(k <= 1);
                m.odd.set(i, j, k)
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.even.n()
    }

    pub fn even(&self) -> &NatMatrix {
        &self.even
    }

    pub fn odd(&self) -> &NatMatrix {
        &self.odd
    }

    /// |M| = M⁰ + M¹.
    pub fn abs(&self) -> NatMatrix {
        let n = self.n();
        let mut m = NatMatrix::zeros(n);
        for i in 1..=n {
            for j in 1..=n {
                m.set(i, j, self.even.get(i, j) + self.odd.get(i, j));
            }
        }
        m
    }

    /// Total entry sum of |M|.
    pub fn size(&self) -> usize {
        self.even.total() + self.odd.total()
    }

    pub fn ro(&self) -> Composition {
        self.abs().row_sums()
    }

    pub fn co(&self) -> Composition {
        self.abs().col_sums()
    }

    pub fn nu(&self) -> Composition {
        self.abs().column_major()
    }

    /// m̃_{h,k} of |M|.
    pub fn mtilde(&self, h: usize, k: usize) -> usize {
        self.abs().mtilde(h, k)
    }

    /// m̃_{h,k} of the odd part alone.
    pub fn odd_mtilde(&self, h: usize, k: usize) -> usize {
        self.odd.mtilde(h, k)
    }

    pub fn parity(&self) -> u8 {
        (self.odd.total() % 2) as u8
    }

    pub fn is_strict(&self) -> bool {
        (1..=self.n()).all(|i| self.even.get(i, i) == 0)
    }

    /// 𝒟(A) = {i : a¹_{i,i} = 1}.
    pub fn diag_support(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.odd.get(i, i) == 1).collect()
    }

    /// Add `delta` to a single entry; None when the result leaves the index set.
    pub fn shifted(&self, part: Part, i: usize, j: usize, delta: i64) -> Option<Self> {
        self.shifted_many(&[(part, i, j, delta)])
    }

    /// Apply several entry shifts at once; ⊥ is returned as None.
    pub fn shifted_many(&self, shifts: &[(Part, usize, usize, i64)]) -> Option<Self> {
        let mut out = self.clone();
        for &(part, i, j, delta) in shifts {
            let m = match part {
                Part::Even => &mut out.even,
                Part::Odd => &mut out.odd,
            };
            let v = m.get(i, j) as i64 + delta;
            if v < 0 || (part == Part::Odd && v > 1) {
                return None;
            }
            m.set(i, j, v as u32);
        }
        Some(out)
    }

    /// A⁺_{h,k} = A + E_{h,k} − E_{h+1,k} on one part.
    pub fn shift_plus(&self, h: usize, k: usize, part: Part) -> Option<Self> {
        self.shifted_many(&[(part, h, k, 1), (part, h + 1, k, -1)])
    }

    /// A⁻_{h,k} = A − E_{h,k} + E_{h+1,k} on one part.
    pub fn shift_minus(&self, h: usize, k: usize, part: Part) -> Option<Self> {
        self.shifted_many(&[(part, h, k, -1), (part, h + 1, k, 1)])
    }

    /// A + diag(λ) on the even part.
    pub fn plus_diagonal(&self, lambda: &[usize]) -> Self {
        let mut out = self.clone();
        for (i, &l) in lambda.iter().enumerate() {
            let v = out.even.get(i + 1, i + 1);
            out.even.set(i + 1, i + 1, v + l as u32);
        }
        out
    }

    /// The even diagonal as a vector, and the matrix with it removed.
    pub fn split_diagonal(&self) -> (Vec<usize>, Self) {
        let mut out = self.clone();
        let mut lam = Vec::with_capacity(self.n());
        for i in 1..=self.n() {
            lam.push(self.even.get(i, i) as usize);
            out.even.set(i, i, 0);
        }
        (lam, out)
    }

    /// M(n, r), sorted.
    pub fn all(n: usize, r: usize) -> Vec<Self> {
        let cells = n * n;
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << cells) {
            let k = mask.count_ones() as usize;
            if k > r {
                continue;
            }
            let mut odd = NatMatrix::zeros(n);
            for c in 0..cells {
                if mask >> c & 1 == 1 {
                    odd.set(c / n + 1, c % n + 1, 1);
                }
            }
            for even in NatMatrix::all_with_total(n, r - k) {
                out.push(SuperMatrix { even, odd: odd.clone() });
            }
        }
        out.sort();
        out
    }

    /// Elements of M(n, r) with prescribed row and column sums.
    pub fn with_margins(lambda: &Composition, mu: &Composition) -> Vec<Self> {
        let n = lambda.n();
        let mut out = Vec::new();
        for abs in NatMatrix::with_margins(lambda, mu) {
            let support: Vec<(usize, usize)> = (1..=n)
                .flat_map(|i| (1..=n).map(move |j| (i, j)))
                .filter(|&(i, j)| abs.get(i, j) > 0)
                .collect();
            for mask in 0u64..(1u64 << support.len()) {
                let mut even = abs.clone();
                let mut odd = NatMatrix::zeros(n);
                for (b, &(i, j)) in support.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        odd.set(i, j, 1);
                        even.set(i, j, abs.get(i, j) - 1);
                    }
                }
                out.push(SuperMatrix { even, odd });
            }
        }
        out.sort();
        out
    }

    /// M±(n) with |A| ≤ max, sorted.
    pub fn all_strict(n: usize, max: usize) -> Vec<Self> {
        let mut out: Vec<Self> = (0..=max)
            .flat_map(|r| Self::all(n, r))
            .filter(|m| m.is_strict())
            .collect();
        out.sort();
        out
    }

    /// Check that this key lies in M(n, r).
    pub fn check_in(&self, n: usize, r: usize) -> Result<(), MatrixError> {
        if self.n() != n {
            return Err(MatrixError::WrongSize(self.n(), n));
        }
        if self.size() != r {
            return Err(MatrixError::WrongTotal(self.size(), r));
        }
        Ok(())
    }
}

/// |M(n, r)|, the coefficient of x^r in ((1+x)/(1−x))^{n²}.
pub fn count_matrices(n: usize, r: usize) -> u128 {
    let cells = (n * n) as u128;
    // Σ_k C(n², k) C(r−k+n²−1, n²−1)
    let mut total = 0u128;
    for k in 0..=r.min(n * n) as u128 {
        let even = r as u128 - k;
        total += binom(cells, k) * if cells == 0 { u128::from(even == 0) } else { binom(even + cells - 1, cells - 1) };
    }
    total
}

pub(crate) fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[derive(Serialize, Deserialize)]
struct Wire {
    even: NatMatrix,
    odd: NatMatrix,
}

impl Serialize for SuperMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire { even: self.even.clone(), odd: self.odd.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SuperMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        SuperMatrix::new(w.even, w.odd).map_err(D::Error::custom)
    }
}

/// Outcome of comparing two matrices under ⪯.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Less,
    EqualClass,
    Greater,
    Incomparable,
}

fn corner_sums(m: &NatMatrix) -> Vec<u32> {
    let n = m.n();
    let mut out = Vec::new();
    for s in 1..=n {
        for t in 1..=n {
            let mut acc = 0;
            if s < t {
                for i in 1..=s {
                    for j in t..=n {
                        acc += m.get(i, j);
                    }
                }
            } else if s > t {
                for i in s..=n {
                    for j in 1..=t {
                        acc += m.get(i, j);
                    }
                }
            } else {
                continue;
            }
            out.push(acc);
        }
    }
    out
}

/// B ⪯ A on natural matrices.
pub fn nat_preceq(b: &NatMatrix, a: &NatMatrix) -> bool {
    corner_sums(b).iter().zip(corner_sums(a).iter()).all(|(x, y)| x <= y)
}

fn off_diagonal(m: &NatMatrix) -> NatMatrix {
    let mut out = m.clone();
    for i in 1..=m.n() {
        out.set(i, i, 0);
    }
    out
}

/// Compare B against A under ⪯, read on |B| and |A|.
pub fn preceq(b: &SuperMatrix, a: &SuperMatrix) -> Comparison {
    let (bb, aa) = (b.abs(), a.abs());
    match (nat_preceq(&bb, &aa), nat_preceq(&aa, &bb)) {
        (true, true) => Comparison::EqualClass,
        (true, false) => Comparison::Less,
        (false, true) => Comparison::Greater,
        (false, false) => Comparison::Incomparable,
    }
}

/// B ≺ A: either |B| ≺ |A|, or |B|^± = |A|^± and 𝒟(B) ⊊ 𝒟(A).
pub fn strict_prec(b: &SuperMatrix, a: &SuperMatrix) -> bool {
    let (bb, aa) = (b.abs(), a.abs());
    let (bpm, apm) = (off_diagonal(&bb), off_diagonal(&aa));
    if nat_preceq(&bb, &aa) && bpm != apm {
        return true;
    }
    if bpm == apm {
        let (db, da) = (b.diag_support(), a.diag_support());
        return db.len() < da.len() && db.iter().all(|i| da.contains(i));
    }
    false
}

/// An index pair (i, j) ∈ [1,n]×[1,n].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PositionClass {
    Lower,
    Diagonal,
    Upper,
}

impl Position {
    pub fn new(i: usize, j: usize) -> Self {
        Position { i, j }
    }

    pub fn class(&self) -> PositionClass {
        match self.i.cmp(&self.j) {
            Ordering::Greater => PositionClass::Lower,
            Ordering::Equal => PositionClass::Diagonal,
            Ordering::Less => PositionClass::Upper,
        }
    }

    fn key(&self) -> (PositionClass, i64, i64) {
        let (i, j) = (self.i as i64, self.j as i64);
        match self.class() {
            PositionClass::Lower => (PositionClass::Lower, j, i),
            PositionClass::Diagonal => (PositionClass::Diagonal, i, 0),
            PositionClass::Upper => (PositionClass::Upper, -j, -i),
        }
    }
}

impl PartialOrd for Position {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Position {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// p ≤ q in the position order.
pub fn position_order(p: Position, q: Position) -> bool {
    p <= q
}

/// All positions of [1,n]×[1,n] in increasing position order.
pub fn positions_in_order(n: usize) -> Vec<Position> {
    let mut v: Vec<Position> = (1..=n).flat_map(|i| (1..=n).map(move |j| Position::new(i, j))).collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(even: &[Vec<u32>], odd: &[Vec<u32>]) -> SuperMatrix {
        SuperMatrix::from_rows(even, odd).unwrap()
    }

    #[test]
    fn margins_and_nu() {
        let m = SuperMatrix::diagonal(&Composition::new(vec![2, 1]));
        assert_eq!(m.ro().parts(), &[2, 1]);
        assert_eq!(m.co().parts(), &[2, 1]);
        let e12 = SuperMatrix::unit(2, Part::Even, 1, 2, 1);
        assert_eq!(e12.ro().parts(), &[1, 0]);
        assert_eq!(e12.co().parts(), &[0, 1]);
        assert_eq!(e12.nu().parts(), &[0, 0, 1, 0]);
        let ones = sm(&[vec![1, 0], vec![1, 1]], &[vec![0, 1], vec![0, 0]]);
        assert_eq!(ones.mtilde(1, 2), 3);
    }

    #[test]
    fn shifts() {
        let a = SuperMatrix::unit(2, Part::Odd, 2, 1, 1);
        let b = a.shifted_many(&[(Part::Odd, 2, 1, -1), (Part::Odd, 1, 1, 1)]).unwrap();
        assert_eq!(b, SuperMatrix::unit(2, Part::Odd, 1, 1, 1));
        assert!(SuperMatrix::zero(2).shifted(Part::Even, 1, 1, -1).is_none());
        assert!(SuperMatrix::unit(2, Part::Odd, 1, 1, 1).shifted(Part::Odd, 1, 1, 1).is_none());
    }

    #[test]
    fn shift_moves_row_mass() {
        for r in 1..=3 {
            for a in SuperMatrix::all(3, r) {
                for h in 1..3 {
                    for k in 1..=3 {
                        for part in [Part::Even, Part::Odd] {
                            if let Some(b) = a.shift_plus(h, k, part) {
                                let mut expect = a.ro().parts().to_vec();
                                expect[h - 1] += 1;
                                expect[h] -= 1;
                                assert_eq!(b.ro().parts(), &expect[..]);
                                assert_eq!(b.co(), a.co());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn counts_match_generating_function() {
        // power-series coefficients of ((1+x)/(1−x))^{n²} by repeated multiplication
        fn series(n: usize, terms: usize) -> Vec<u128> {
            let base: Vec<u128> = (0..terms).map(|k| if k == 0 { 1 } else { 2 }).collect();
            let mut acc = vec![0u128; terms];
            acc[0] = 1;
            for _ in 0..n * n {
                let mut next = vec![0u128; terms];
                for (i, a) in acc.iter().enumerate() {
                    for (j, b) in base.iter().enumerate().take(terms - i) {
                        next[i + j] += a * b;
                    }
                }
                acc = next;
            }
            acc
        }
        for n in 1..=3 {
            let s = series(n, 6);
            for (r, want) in s.iter().enumerate() {
                assert_eq!(count_matrices(n, r), *want);
            }
        }
        assert_eq!(series(3, 5), vec![1, 18, 162, 978, 4482]);
        for n in 1..=3 {
            for r in 0..=4 {
                assert_eq!(SuperMatrix::all(n, r).len() as u128, count_matrices(n, r));
            }
        }
        assert_eq!(SuperMatrix::all(1, 1).len(), 2);
    }

    #[test]
    fn margins_partition_all() {
        for r in 0..=3 {
            let mut collected = Vec::new();
            for l in Composition::all(2, r) {
                for m in Composition::all(2, r) {
                    collected.extend(SuperMatrix::with_margins(&l, &m));
                }
            }
            collected.sort();
            assert_eq!(collected, SuperMatrix::all(2, r));
        }
    }

    #[test]
    fn order_examples() {
        let a = sm(&[vec![0, 2], vec![1, 0]], &[vec![1, 0], vec![0, 0]]);
        assert_eq!(preceq(&a, &a), Comparison::EqualClass);
        assert!(matches!(preceq(&SuperMatrix::zero(2), &a), Comparison::Less | Comparison::EqualClass));
        let b = SuperMatrix::unit(2, Part::Odd, 1, 1, 1);
        let c = sm(&[vec![0, 0], vec![0, 0]], &[vec![1, 0], vec![0, 1]]);
        assert!(strict_prec(&b, &c));
        assert!(!strict_prec(&c, &b));
    }

    #[test]
    fn strict_order_is_a_strict_partial_order() {
        for n in 1..=3 {
            let all = SuperMatrix::all_strict(n, if n == 3 { 3 } else { 4 });
            for a in &all {
                assert!(!strict_prec(a, a));
                assert_eq!(preceq(a, a), Comparison::EqualClass);
            }
            // acyclic: Kahn's algorithm must consume every element
            let m = all.len();
            let mut indeg = vec![0usize; m];
            let mut succ = vec![Vec::new(); m];
            for (x, a) in all.iter().enumerate() {
                for (y, b) in all.iter().enumerate() {
                    if strict_prec(b, a) {
                        succ[y].push(x);
                        indeg[x] += 1;
                    }
                }
            }
            let mut ready: Vec<usize> = (0..m).filter(|&x| indeg[x] == 0).collect();
            let mut seen = 0;
            while let Some(y) = ready.pop() {
                seen += 1;
                for &x in &succ[y] {
                    indeg[x] -= 1;
                    if indeg[x] == 0 {
                        ready.push(x);
                    }
                }
            }
            assert_eq!(seen, m);
        }
    }

    #[test]
    fn preceq_is_a_preorder() {
        let all = SuperMatrix::all_strict(2, 4);
        for a in &all {
            for b in &all {
                if nat_preceq(&a.abs(), &b.abs()) {
                    for c in &all {
                        if nat_preceq(&b.abs(), &c.abs()) {
                            assert!(nat_preceq(&a.abs(), &c.abs()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn position_chain_for_three() {
        let got: Vec<(usize, usize)> = positions_in_order(3).iter().map(|p| (p.i, p.j)).collect();
        assert_eq!(got, vec![(2, 1), (3, 1), (3, 2), (1, 1), (2, 2), (3, 3), (2, 3), (1, 3), (1, 2)]);
        assert!(position_order(Position::new(1, 3), Position::new(1, 2)));
        assert!(position_order(Position::new(3, 1), Position::new(1, 2)));
    }

    #[test]
    fn position_order_is_total() {
        for n in 1..=4 {
            let ps = positions_in_order(n);
            for &p in &ps {
                for &q in &ps {
                    assert!(position_order(p, q) || position_order(q, p));
                    if position_order(p, q) && position_order(q, p) {
                        assert_eq!(p, q);
                    }
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let m = SuperMatrix::unit(2, Part::Odd, 1, 2, 1);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"even":[[0,0],[0,0]],"odd":[[0,1],[0,0]]}"#);
        let back: SuperMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<SuperMatrix>(r#"{"even":[[0]],"odd":[[2]]}"#).is_err());
    }
}
