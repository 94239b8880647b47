//! Symmetric groups, Young subgroups and coset representatives.
//!
//! Permutations are one-line, 1-based at the API, and compose as
//! `(u∘v)(i) = u(v(i))`.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest supported degree. Anything bigger is far outside exact-enumeration range.
pub const MAX_DEGREE: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation of 1..{0}: {1:?}")]
    NotAPermutation(usize, Vec<usize>),
    #[error("degree {0} exceeds the supported maximum {MAX_DEGREE}")]
    TooLarge(usize),
    #[error("simple reflection s_{0} does not exist in degree {1}")]
    BadReflection(usize, usize),
    #[error("composition sums differ: {0} vs {1}")]
    SumMismatch(usize, usize),
    #[error("matrix rows have inconsistent length")]
    Ragged,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    len: u8,
    img: [u8; MAX_DEGREE],
}

impl Permutation {
    pub fn identity(r: usize) -> Self {
        assert!(r <= MAX_DEGREE, "degree {r} too large");
        let mut img = [0u8; MAX_DEGREE];
        for (i, x) in img.iter_mut().enumerate().take(r) {
            *x = i as u8;
        }
        Permutation { len: r as u8, img }
    }

    /// Build from 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self, SymError> {
        let r = images.len();
        if r > MAX_DEGREE {
            return Err(SymError::TooLarge(r));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut img = [0u8; MAX_DEGREE];
        for (i, &v) in images.iter().enumerate() {
            if v == 0 || v > r || seen[v - 1] {
                return Err(SymError::NotAPermutation(r, images.to_vec()));
            }
            seen[v - 1] = true;
            img[i] = (v - 1) as u8;
        }
        Ok(Permutation { len: r as u8, img })
    }

    /// 0-based images, for internal builders that already hold a bijection.
    pub(crate) fn from_zero_based(images: &[u8]) -> Self {
        let mut img = [0u8; MAX_DEGREE];
        img[..images.len()].copy_from_slice(images);
        Permutation { len: images.len() as u8, img }
    }

    /// The simple reflection s_i = (i, i+1), 1 ≤ i < r.
    pub fn simple(i: usize, r: usize) -> Result<Self, SymError> {
        if i == 0 || i >= r {
            return Err(SymError::BadReflection(i, r));
        }
        let mut p = Self::identity(r);
        p.img.swap(i - 1, i);
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.len as usize
    }

    /// w(i), 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.img[i - 1] as usize + 1
    }

    pub(crate) fn zero_based(&self) -> &[u8] {
        &self.img[..self.len as usize]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.zero_based().iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.zero_based().iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn compose(&self, other: &Self) -> Result<Self, SymError> {
        if self.len != other.len {
            return Err(SymError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let mut img = [0u8; MAX_DEGREE];
        for (slot, &o) in img.iter_mut().zip(&other.img[..self.len as usize]) {
            *slot = self.img[o as usize];
        }
        Permutation { len: self.len, img }
    }

    pub fn inverse(&self) -> Self {
        let mut img = [0u8; MAX_DEGREE];
        for i in 0..self.len as usize {
            img[self.img[i] as usize] = i as u8;
        }
        Permutation { len: self.len, img }
    }

    /// Inversion count, which is the Coxeter length.
    pub fn length(&self) -> usize {
        let w = self.zero_based();
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// s_i · w, i.e. swap the values i and i+1.
    pub fn left_simple(&self, i: usize) -> Self {
        let mut p = *self;
        for v in p.img[..p.len as usize].iter_mut() {
            if *v as usize == i - 1 {
                *v = i as u8;
            } else if *v as usize == i {
                *v = (i - 1) as u8;
            }
        }
        p
    }

    /// w · s_i, i.e. swap the positions i and i+1.
    pub fn right_simple(&self, i: usize) -> Self {
        let mut p = *self;
        p.img.swap(i - 1, i);
        p
    }

    /// Product s_{i_1} s_{i_2} ⋯ of simple reflections, read left to right.
    pub fn from_word(word: &[usize], r: usize) -> Result<Self, SymError> {
        let mut p = Self::identity(r);
        for &i in word {
            if i == 0 || i >= r {
                return Err(SymError::BadReflection(i, r));
            }
            p = p.right_simple(i);
        }
        Ok(p)
    }

    /// All of S_r in lexicographic order of one-line notation.
    pub fn all(r: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..r as u8).collect();
        loop {
            out.push(Self::from_zero_based(&cur));
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_line(&v).map_err(D::Error::custom)
    }
}

/// Lexicographic successor; false once the sequence is non-increasing.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A composition λ = (λ_1, …, λ_n) of r, zero parts allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<usize>,
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn r(&self) -> usize {
        self.parts.iter().sum()
    }

    /// λ̃_i = λ_1 + ⋯ + λ_i, with λ̃_0 = 0.
    pub fn prefix(&self, i: usize) -> usize {
        self.parts[..i].iter().sum()
    }

    /// 1-based positions of block i (1-based), possibly empty.
    pub fn block(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        let lo = self.prefix(i - 1) + 1;
        lo..=lo + self.parts[i - 1] - 1
    }

    /// 0-based block label of every position.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.r());
        for (b, &p) in self.parts.iter().enumerate() {
            out.extend(std::iter::repeat_n(b, p));
        }
        out
    }

    /// Whether s_k lies in S_λ (positions k and k+1 share a block).
    pub fn contains_simple(&self, k: usize) -> bool {
        let labels = self.labels();
        k >= 1 && k < labels.len() && labels[k - 1] == labels[k]
    }

    /// Λ(n, r) in lexicographic order.
    pub fn all(n: usize, r: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = vec![0; n];
        fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            let n = cur.len();
            if n == 0 {
                if left == 0 {
                    out.push(Composition::new(vec![]));
                }
                return;
            }
            if i == n - 1 {
                cur[i] = left;
                out.push(Composition::new(cur.clone()));
                return;
            }
            for v in 0..=left {
                cur[i] = v;
                rec(i + 1, left - v, cur, out);
            }
        }
        rec(0, r, &mut cur, &mut out);
        out
    }
}

/// Does w stabilise every block of λ?
pub fn in_young_subgroup(w: &Permutation, lambda: &Composition) -> bool {
    let labels = lambda.labels();
    w.zero_based().iter().enumerate().all(|(i, &v)| labels[i] == labels[v as usize])
}

/// S_λ, in lexicographic order.
pub fn young_subgroup_members(lambda: &Composition) -> Vec<Permutation> {
    let r = lambda.r();
    let mut out = vec![Permutation::identity(r)];
    for b in 1..=lambda.n() {
        let lo = lambda.prefix(b - 1);
        let len = lambda.parts()[b - 1];
        if len < 2 {
            continue;
        }
        let mut local: Vec<u8> = (0..len as u8).collect();
        let mut blocks = Vec::new();
        loop {
            blocks.push(local.clone());
            if !next_permutation(&mut local) {
                break;
            }
        }
        let mut next = Vec::with_capacity(out.len() * blocks.len());
        for w in &out {
            for bp in &blocks {
                let mut img: Vec<u8> = w.zero_based().to_vec();
                for (k, &x) in bp.iter().enumerate() {
                    img[lo + k] = lo as u8 + x;
                }
                next.push(Permutation::from_zero_based(&img));
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// d is the shortest element of S_ν d iff d⁻¹ increases on every block of ν.
pub fn is_min_right_coset_rep(d: &Permutation, nu: &Composition) -> bool {
    let inv = d.inverse();
    let labels = nu.labels();
    (1..labels.len()).all(|k| labels[k - 1] != labels[k] || inv.zero_based()[k - 1] < inv.zero_based()[k])
}

/// d is the shortest element of d S_μ iff d increases on every block of μ.
pub fn is_min_left_coset_rep(d: &Permutation, mu: &Composition) -> bool {
    let labels = mu.labels();
    let w = d.zero_based();
    (1..labels.len()).all(|k| labels[k - 1] != labels[k] || w[k - 1] < w[k])
}

/// Build the element of D_ν that places the ν-block `word[p]` at position p.
fn shuffle_to_perm(word: &[usize], nu: &Composition) -> Permutation {
    let mut next: Vec<usize> = (1..=nu.n()).map(|b| nu.prefix(b - 1)).collect();
    let mut img = Vec::with_capacity(word.len());
    for &b in word {
        img.push(next[b] as u8);
        next[b] += 1;
    }
    Permutation::from_zero_based(&img)
}

/// D_ν: shortest representatives of the right cosets S_ν d, sorted.
pub fn min_right_coset_reps(nu: &Composition) -> Vec<Permutation> {
    let mut word = nu.labels();
    let mut out = Vec::new();
    loop {
        out.push(shuffle_to_perm(&word, nu));
        if !next_permutation(&mut word) {
            break;
        }
    }
    out.sort();
    out
}

/// D_ν ∩ S_μ for ν refining μ blockwise (ν's blocks nest inside μ's, in order).
pub fn min_right_coset_reps_within(nu: &Composition, mu: &Composition) -> Vec<Permutation> {
    let labels = nu.labels();
    let mu_labels = mu.labels();
    // word per μ-block, then the Cartesian product of their shuffles
    let mut per_block: Vec<Vec<Vec<usize>>> = Vec::new();
    for b in 1..=mu.n() {
        let range = mu.block(b);
        let mut w: Vec<usize> = range.clone().map(|p| labels[p - 1]).collect();
        w.sort();
        let mut all = Vec::new();
        loop {
            all.push(w.clone());
            if !next_permutation(&mut w) {
                break;
            }
        }
        per_block.push(all);
    }
    debug_assert!(labels.len() == mu_labels.len());
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    for choices in &per_block {
        let mut next = Vec::with_capacity(words.len() * choices.len());
        for w in &words {
            for c in choices {
                let mut x = w.clone();
                x.extend_from_slice(c);
                next.push(x);
            }
        }
        words = next;
    }
    let mut out: Vec<Permutation> = words.iter().map(|w| shuffle_to_perm(w, nu)).collect();
    out.sort();
    out
}

/// D_{λ,μ}: shortest representatives of the double cosets S_λ d S_μ, sorted.
pub fn min_double_coset_reps(lambda: &Composition, mu: &Composition) -> Result<Vec<Permutation>, SymError> {
    if lambda.r() != mu.r() {
        return Err(SymError::SumMismatch(lambda.r(), mu.r()));
    }
    let mut out: Vec<Permutation> = NatMatrix::with_margins(lambda, mu)
        .into_iter()
        .map(|m| matrix_to_triple(&m).1)
        .collect();
    out.sort();
    Ok(out)
}

/// Square matrix of naturals, row-major; indices are 1-based at the API.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatMatrix {
    n: usize,
    a: Vec<u32>,
}

impl fmt::Debug for NatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl NatMatrix {
    pub fn zeros(n: usize) -> Self {
        NatMatrix { n, a: vec![0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, SymError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SymError::Ragged);
        }
        Ok(NatMatrix { n, a: rows.concat() })
    }

    pub fn diag(parts: &[usize]) -> Self {
        let mut m = Self::zeros(parts.len());
        for (i, &p) in parts.iter().enumerate() {
            m.set(i + 1, i + 1, p as u32);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.a[(i - 1) * self.n + (j - 1)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.a[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn entries(&self) -> &[u32] {
        &self.a
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.a.chunks(self.n.max(1)).take(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn total(&self) -> usize {
        self.a.iter().map(|&x| x as usize).sum()
    }

    pub fn row_sums(&self) -> Composition {
        Composition::new((1..=self.n).map(|i| (1..=self.n).map(|j| self.get(i, j) as usize).sum()).collect())
    }

    pub fn col_sums(&self) -> Composition {
        Composition::new((1..=self.n).map(|j| (1..=self.n).map(|i| self.get(i, j) as usize).sum()).collect())
    }

    /// ν_M = (m_{1,1}, …, m_{n,1}, m_{1,2}, …, m_{n,n}).
    pub fn column_major(&self) -> Composition {
        let mut v = Vec::with_capacity(self.n * self.n);
        for j in 1..=self.n {
            for i in 1..=self.n {
                v.push(self.get(i, j) as usize);
            }
        }
        Composition::new(v)
    }

    /// m̃_{h,k} = Σ_{j<k} Σ_i m_{i,j} + Σ_{i≤h} m_{i,k}; h may be 0.
    pub fn mtilde(&self, h: usize, k: usize) -> usize {
        let mut s = 0usize;
        for j in 1..k {
            for i in 1..=self.n {
                s += self.get(i, j) as usize;
            }
        }
        for i in 1..=h {
            s += self.get(i, k) as usize;
        }
        s
    }

    /// All n×n natural matrices with the given total.
    pub fn all_with_total(n: usize, r: usize) -> Vec<Self> {
        Composition::all(n * n, r)
            .into_iter()
            .map(|c| NatMatrix { n, a: c.parts().iter().map(|&x| x as u32).collect() })
            .collect()
    }

    /// All matrices with row sums λ and column sums μ.
    pub fn with_margins(lambda: &Composition, mu: &Composition) -> Vec<Self> {
        let n = lambda.n();
        assert_eq!(n, mu.n());
        let mut out = Vec::new();
        let mut m = Self::zeros(n);
        let mut row_left: Vec<usize> = lambda.parts().to_vec();
        let mut col_left: Vec<usize> = mu.parts().to_vec();
        fn rec(
            cell: usize,
            n: usize,
            m: &mut NatMatrix,
            row_left: &mut [usize],
            col_left: &mut [usize],
            out: &mut Vec<NatMatrix>,
        ) {
            if cell == n * n {
                if row_left.iter().all(|&x| x == 0) && col_left.iter().all(|&x| x == 0) {
                    out.push(m.clone());
                }
                return;
            }
            let (i, j) = (cell / n, cell % n);
            let lo = if j == n - 1 { row_left[i] } else { 0 };
            let hi = row_left[i].min(col_left[j]);
            if lo > hi {
                return;
            }
            for v in lo..=hi {
                if i == n - 1 && v != col_left[j] {
                    continue;
                }
                m.a[cell] = v as u32;
                row_left[i] -= v;
                col_left[j] -= v;
                rec(cell + 1, n, m, row_left, col_left, out);
                row_left[i] += v;
                col_left[j] += v;
            }
            m.a[cell] = 0;
        }
        if n == 0 {
            return vec![m];
        }
        rec(0, n, &mut m, &mut row_left, &mut col_left, &mut out);
        out
    }
}

impl Serialize for NatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for NatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<u32>>::deserialize(d)?;
        NatMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

/// m_{ij} = |d(block_j(μ)) ∩ block_i(λ)|.
pub fn triple_to_matrix(lambda: &Composition, d: &Permutation, mu: &Composition) -> Result<NatMatrix, SymError> {
    if lambda.r() != d.degree() || mu.r() != d.degree() {
        return Err(SymError::SumMismatch(lambda.r(), mu.r()));
    }
    if lambda.n() != mu.n() {
        return Err(SymError::DegreeMismatch(lambda.n(), mu.n()));
    }
    let lab_l = lambda.labels();
    let lab_m = mu.labels();
    let mut m = NatMatrix::zeros(lambda.n());
    for p in 0..d.degree() {
        let i = lab_l[d.zero_based()[p] as usize];
        let j = lab_m[p];
        let v = m.get(i + 1, j + 1);
        m.set(i + 1, j + 1, v + 1);
    }
    Ok(m)
}

/// (ro(M), d_M, co(M)) with d_M the shortest element of its double coset.
pub fn matrix_to_triple(m: &NatMatrix) -> (Composition, Permutation, Composition) {
    let lambda = m.row_sums();
    let mu = m.col_sums();
    let n = m.n();
    let mut next: Vec<usize> = (1..=n).map(|i| lambda.prefix(i - 1)).collect();
    let mut img = Vec::with_capacity(m.total());
    for j in 1..=n {
        for (i, slot) in next.iter_mut().enumerate() {
            for _ in 0..m.get(i + 1, j) {
                img.push(*slot as u8);
                *slot += 1;
            }
        }
    }
    (lambda, Permutation::from_zero_based(&img), mu)
}

/// σ_{i,j} and ã_{i,j} for a matrix A, 0 ≤ i ≤ n, 1 ≤ j ≤ n.
#[derive(Clone, Debug)]
pub struct SigmaTable {
    n: usize,
    sigma: Vec<usize>,
    atilde: Vec<usize>,
}

impl SigmaTable {
    pub fn new(a: &NatMatrix) -> Self {
        let n = a.n();
        let mut sigma = vec![0; (n + 1) * n];
        let mut atilde = vec![0; (n + 1) * n];
        let col: Vec<usize> = (1..=n).map(|j| (1..=n).map(|h| a.get(h, j) as usize).sum()).collect();
        for i in 0..=n {
            for j in 1..=n {
                let before: usize = col[..j - 1].iter().sum();
                let mut corner = 0;
                for h in 1..=i {
                    for k in j..=n {
                        corner += a.get(h, k) as usize;
                    }
                }
                sigma[i * n + j - 1] = before + corner;
                atilde[i * n + j - 1] = a.mtilde(i, j);
            }
        }
        SigmaTable { n, sigma, atilde }
    }

    pub fn sigma(&self, i: usize, j: usize) -> usize {
        self.sigma[i * self.n + j - 1]
    }

    pub fn atilde(&self, i: usize, j: usize) -> usize {
        self.atilde[i * self.n + j - 1]
    }
}

/// The printed factor w_{i,j} as a word in simple reflections.
pub fn w_word(a: &NatMatrix, table: &SigmaTable, i: usize, j: usize) -> Vec<usize> {
    let aij = a.get(i, j) as usize;
    let s = table.sigma(i - 1, j);
    let t0 = table.atilde(i - 1, j);
    if aij == 0 || s == t0 {
        return Vec::new();
    }
    let mut word = Vec::new();
    for t in 1..=aij {
        // s_{σ+t−1} s_{σ+t−2} ⋯ s_{ã+t}
        let hi = s + t - 1;
        let lo = t0 + t;
        let mut k = hi;
        while k >= lo {
            word.push(k);
            k -= 1;
        }
    }
    word
}

/// d_A = (w_{2,1}⋯w_{n,1})(w_{2,2}⋯w_{n,2})⋯(w_{2,n−1}⋯w_{n,n−1}).
pub fn d_of_matrix(a: &NatMatrix) -> Permutation {
    let n = a.n();
    let r = a.total();
    let table = SigmaTable::new(a);
    let mut word = Vec::new();
    for j in 1..n {
        for i in 2..=n {
            word.extend(w_word(a, &table, i, j));
        }
    }
    Permutation::from_word(&word, r).expect("w-chains stay inside S_r")
}
