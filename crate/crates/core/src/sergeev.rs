//! The Sergeev superalgebra H^c_r = S_r ⋉ C_r.
//!
//! Elements are sparse sums of normal-form monomials w·c^α with the
//! permutation on the left and the Clifford monomial c_1^{α_1}⋯c_r^{α_r}
//! on the right. Conjugation follows w c_i w⁻¹ = c_{w(i)}.

use std::fmt;

use rustc_hash::FxHashMap;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalars::GaussianRational;
use crate::superindex::SuperMatrix;
use crate::symgroup::{
    matrix_to_triple, min_right_coset_reps_within, young_subgroup_members, Composition, Permutation, SymError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SergeevError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("interval c_{{{0},{1}}} is not inside 1..{2}")]
    BadInterval(usize, usize, usize),
    #[error("block {0} of the composition is empty, so its Clifford factor is undefined")]
    EmptyBlock(usize),
    #[error("mask has length {0}, expected {1}")]
    MaskLength(usize, usize),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Bit i−1 set means c_i is present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CliffordMask(pub u32);

impl CliffordMask {
    pub fn empty() -> Self {
        CliffordMask(0)
    }

    pub fn from_indices(idx: &[usize]) -> Self {
        CliffordMask(idx.iter().fold(0, |m, &i| m | 1 << (i - 1)))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn parity(&self) -> u8 {
        (self.0.count_ones() % 2) as u8
    }

    pub fn bits(&self, r: usize) -> Vec<u8> {
        (0..r).map(|b| (self.0 >> b & 1) as u8).collect()
    }
}

/// Right-multiply c^γ by c_j. Returns the sign flip (true = negate).
#[inline]
fn push_generator(mask: &mut u32, j: usize) -> bool {
    let b = j - 1;
    let above = (*mask >> (b + 1)).count_ones();
    let mut neg = above % 2 == 1;
    if *mask >> b & 1 == 1 {
        neg = !neg;
        *mask &= !(1 << b);
    } else {
        *mask |= 1 << b;
    }
    neg
}

/// Reduce c_{i_1} c_{i_2} ⋯ to ±c^α.
pub fn clifford_normalize(factors: &[usize]) -> (GaussianRational, CliffordMask) {
    let mut mask = 0u32;
    let mut neg = false;
    for &j in factors {
        neg ^= push_generator(&mut mask, j);
    }
    let sign = if neg { GaussianRational::from_int(-1) } else { GaussianRational::one() };
    (sign, CliffordMask(mask))
}

/// c^γ c^β = ± c^{γ⊕β} for normal-form masks.
#[inline]
fn mask_product(gamma: u32, beta: u32) -> (bool, u32) {
    let mut neg = (gamma & beta).count_ones() % 2 == 1;
    let mut rest = beta;
    while rest != 0 {
        let b = rest.trailing_zeros();
        neg ^= (gamma >> (b + 1)).count_ones() % 2 == 1;
        rest &= rest - 1;
    }
    (neg, gamma ^ beta)
}

/// v⁻¹ c^α v = ± c^{α'} where α' = v⁻¹(α).
#[inline]
fn conjugate_mask(alpha: u32, v_inv: &[u8]) -> (bool, u32) {
    let mut seq = [0u8; 32];
    let mut len = 0;
    let mut rest = alpha;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        seq[len] = v_inv[b];
        len += 1;
        rest &= rest - 1;
    }
    let mut inversions = 0;
    let mut out = 0u32;
    for x in 0..len {
        out |= 1 << seq[x];
        for y in x + 1..len {
            if seq[x] > seq[y] {
                inversions += 1;
            }
        }
    }
    (inversions % 2 == 1, out)
}

/// Product of two normal-form monomials: (u,α)(v,β) = ±(u∘v, α').
#[inline]
pub(crate) fn monomial_product(u: &Permutation, alpha: u32, v: &Permutation, beta: u32) -> (bool, Permutation, u32) {
    let w = u.compose_unchecked(v);
    if alpha == 0 {
        return (false, w, beta);
    }
    let vinv = v.inverse();
    let (n1, gamma) = conjugate_mask(alpha, vinv.zero_based());
    let (n2, mask) = mask_product(gamma, beta);
    (n1 ^ n2, w, mask)
}

pub type Monomial = (Permutation, CliffordMask);

#[derive(Clone, PartialEq, Eq)]
pub struct SergeevElement {
    r: usize,
    terms: FxHashMap<(Permutation, u32), GaussianRational>,
}

impl fmt::Debug for SergeevElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .iter()
            .map(|((w, m), c)| format!("({c})·{w:?}·c{:?}", m.indices()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl SergeevElement {
    pub fn zero(r: usize) -> Self {
        SergeevElement { r, terms: FxHashMap::default() }
    }

    pub fn one(r: usize) -> Self {
        Self::from_perm(Permutation::identity(r))
    }

    pub fn from_perm(w: Permutation) -> Self {
        Self::monomial(w, CliffordMask::empty(), GaussianRational::one())
    }

    pub fn monomial(w: Permutation, mask: CliffordMask, coeff: GaussianRational) -> Self {
        let mut e = Self::zero(w.degree());
        if !coeff.is_zero() {
            e.terms.insert((w, mask.0), coeff);
        }
        e
    }

    /// The simple reflection s_i.
    pub fn s(i: usize, r: usize) -> Result<Self, SergeevError> {
        Ok(Self::from_perm(Permutation::simple(i, r)?))
    }

    /// The Clifford generator c_i.
    pub fn c(i: usize, r: usize) -> Result<Self, SergeevError> {
        if i == 0 || i > r {
            return Err(SergeevError::BadInterval(i, i, r));
        }
        Ok(Self::monomial(Permutation::identity(r), CliffordMask::from_indices(&[i]), GaussianRational::one()))
    }

    pub fn scalar(r: usize, c: GaussianRational) -> Self {
        Self::monomial(Permutation::identity(r), CliffordMask::empty(), c)
    }

    pub fn degree(&self) -> usize {
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

    pub fn coeff(&self, w: &Permutation, mask: CliffordMask) -> GaussianRational {
        self.terms.get(&(*w, mask.0)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, CliffordMask, &GaussianRational)> {
        self.terms.iter().map(|((w, m), c)| (w, CliffordMask(*m), c))
    }

    /// Terms in canonical order (permutation, then mask).
    pub fn sorted_terms(&self) -> Vec<(Monomial, GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|((w, m), c)| ((*w, CliffordMask(*m)), c.clone())).collect();
        v.sort_by_key(|t| t.0);
        v
    }

    /// Z₂-degree when the element is homogeneous.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|(_, m)| (m.count_ones() % 2) as u8);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    fn add_term(&mut self, key: (Permutation, u32), c: GaussianRational) {
        use std::collections::hash_map::Entry;
        match self.terms.entry(key) {
            Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
        }
    }

    fn check(&self, o: &Self) -> Result<(), SergeevError> {
        if self.r != o.r {
            return Err(SergeevError::DegreeMismatch(self.r, o.r));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, SergeevError> {
        self.check(o)?;
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, SergeevError> {
        self.add(&o.scale(&GaussianRational::from_int(-1)))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.r);
        }
        SergeevElement { r: self.r, terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn multiply(&self, o: &Self) -> Result<Self, SergeevError> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub(crate) fn mul_unchecked(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.r);
        out.terms.reserve(self.terms.len() * o.terms.len());
        for ((v, beta), cb) in &o.terms {
            for ((u, alpha), ca) in &self.terms {
                let (neg, w, mask) = monomial_product(u, *alpha, v, *beta);
                let mut c = ca * cb;
                if neg {
                    c = -c;
                }
                out.add_term((w, mask), c);
            }
        }
        out
    }

    /// Sum of a sequence of elements, all of degree r.
    pub fn sum<'a>(r: usize, items: impl IntoIterator<Item = &'a SergeevElement>) -> Self {
        let mut out = Self::zero(r);
        for e in items {
            for (k, c) in &e.terms {
                out.add_term(*k, c.clone());
            }
        }
        out
    }

    /// Product of a sequence of elements, all of degree r.
    pub fn product<'a>(r: usize, items: impl IntoIterator<Item = &'a SergeevElement>) -> Self {
        items.into_iter().fold(Self::one(r), |acc, e| acc.mul_unchecked(e))
    }
}

impl std::ops::Mul for &SergeevElement {
    type Output = SergeevElement;
    fn mul(self, o: &SergeevElement) -> SergeevElement {
        self.multiply(o).expect("degree mismatch in Sergeev product")
    }
}

impl std::ops::Add for &SergeevElement {
    type Output = SergeevElement;
    fn add(self, o: &SergeevElement) -> SergeevElement {
        SergeevElement::add(self, o).expect("degree mismatch in Sergeev sum")
    }
}

impl std::ops::Sub for &SergeevElement {
    type Output = SergeevElement;
    fn sub(self, o: &SergeevElement) -> SergeevElement {
        SergeevElement::sub(self, o).expect("degree mismatch in Sergeev difference")
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    perm: Vec<usize>,
    mask: Vec<u8>,
    coeff: GaussianRational,
}

impl Serialize for SergeevElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<WireTerm> = self
            .sorted_terms()
            .into_iter()
            .map(|((w, m), c)| WireTerm { perm: w.one_line(), mask: m.bits(self.r), coeff: c })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SergeevElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<WireTerm>::deserialize(d)?;
        let r = v.first().map(|t| t.perm.len()).unwrap_or(0);
        let mut out = SergeevElement::zero(r);
        for t in v {
            let w = Permutation::from_one_line(&t.perm).map_err(D::Error::custom)?;
            if w.degree() != r || t.mask.len() != r || t.mask.iter().any(|&b| b > 1) {
                return Err(D::Error::custom("inconsistent term degree or mask"));
            }
            let mask = t.mask.iter().enumerate().fold(0u32, |m, (i, &b)| m | (b as u32) << i);
            out.add_term((w, mask), t.coeff);
        }
        Ok(out)
    }
}

/// x_λ = Σ_{w∈S_λ} w.
pub fn x_sum(lambda: &Composition) -> SergeevElement {
    let mut out = SergeevElement::zero(lambda.r());
    for w in young_subgroup_members(lambda) {
        out.terms.insert((w, 0), GaussianRational::one());
    }
    out
}

/// y_λ = Σ_{w∈S_λ} (−1)^{l(w)} w.
pub fn y_sum(lambda: &Composition) -> SergeevElement {
    let mut out = SergeevElement::zero(lambda.r());
    for w in young_subgroup_members(lambda) {
        let c = if w.length() % 2 == 0 { 1 } else { -1 };
        out.terms.insert((w, 0), GaussianRational::from_int(c));
    }
    out
}

/// c_{i,j} = c_i + c_{i+1} + ⋯ + c_j.
pub fn c_interval(i: usize, j: usize, r: usize) -> Result<SergeevElement, SergeevError> {
    if i == 0 || i > j || j > r {
        return Err(SergeevError::BadInterval(i, j, r));
    }
    let mut out = SergeevElement::zero(r);
    let id = Permutation::identity(r);
    for k in i..=j {
        out.terms.insert((id, 1 << (k - 1)), GaussianRational::one());
    }
    Ok(out)
}

/// c^α_λ = (c_{1,λ̃_1})^{α_1} (c_{λ̃_1+1,λ̃_2})^{α_2} ⋯.
pub fn c_alpha_lambda(lambda: &Composition, alpha: &[u8]) -> Result<SergeevElement, SergeevError> {
    if alpha.len() != lambda.n() {
        return Err(SergeevError::MaskLength(alpha.len(), lambda.n()));
    }
    let r = lambda.r();
    let mut out = SergeevElement::one(r);
    for (b, &a) in alpha.iter().enumerate() {
        if a == 0 {
            continue;
        }
        if lambda.parts()[b] == 0 {
            return Err(SergeevError::EmptyBlock(b + 1));
        }
        let lo = lambda.prefix(b) + 1;
        let hi = lambda.prefix(b + 1);
        out = out.mul_unchecked(&c_interval(lo, hi, r)?);
    }
    Ok(out)
}

/// Direction of a chain 1 + s_u + s_u s_{u∓1} + ⋯.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainDirection {
    /// 1 + s_u + s_u s_{u−1} + ⋯ + s_u ⋯ s_{u−t+1}
    Down,
    /// 1 + s_u + s_u s_{u+1} + ⋯ + s_u ⋯ s_{u+t−1}
    Up,
}

/// The chain sum with `steps` nontrivial terms starting at s_u.
pub fn chain(u: usize, steps: usize, dir: ChainDirection, r: usize) -> Result<SergeevElement, SergeevError> {
    let mut out = SergeevElement::one(r);
    let mut w = Permutation::identity(r);
    for t in 0..steps {
        let k = match dir {
            ChainDirection::Down => u.checked_sub(t).filter(|&k| k >= 1),
            ChainDirection::Up => Some(u + t),
        };
        let k = k.ok_or(SergeevError::Sym(SymError::BadReflection(0, r)))?;
        if k >= r {
            return Err(SergeevError::Sym(SymError::BadReflection(k, r)));
        }
        w = w.right_simple(k);
        out.add_term((w, 0), GaussianRational::one());
    }
    Ok(out)
}

/// A single product of simple reflections s_{i_1} s_{i_2} ⋯ as an element.
pub fn word(word: &[usize], r: usize) -> Result<SergeevElement, SergeevError> {
    Ok(SergeevElement::from_perm(Permutation::from_word(word, r)?))
}

/// s_a s_{a±1} ⋯ s_b, stepping towards b; empty when `len` is 0.
pub fn run(start: usize, len: usize, dir: ChainDirection, r: usize) -> Result<SergeevElement, SergeevError> {
    let w: Vec<usize> = (0..len)
        .map(|t| match dir {
            ChainDirection::Down => start.wrapping_sub(t),
            ChainDirection::Up => start + t,
        })
        .collect();
    word(&w, r)
}

/// Σ_{σ ∈ D_ν ∩ S_μ} σ.
pub fn coset_sum(nu: &Composition, mu: &Composition) -> SergeevElement {
    let mut out = SergeevElement::zero(mu.r());
    for w in min_right_coset_reps_within(nu, mu) {
        out.terms.insert((w, 0), GaussianRational::one());
    }
    out
}

/// c_M = c^{ν_{M¹}}_{ν_M}.
pub fn c_of_matrix(m: &SuperMatrix) -> SergeevElement {
    let nu = m.nu();
    let alpha: Vec<u8> = m.odd().column_major().parts().iter().map(|&x| x as u8).collect();
    c_alpha_lambda(&nu, &alpha).expect("odd entries sit on nonempty blocks")
}

/// d_M c_M Σ_{σ ∈ D_{ν_M} ∩ S_{co(M)}} σ, i.e. T_M without the leading x_λ.
pub fn t_tail(m: &SuperMatrix) -> SergeevElement {
    let (_, d, mu) = matrix_to_triple(&m.abs());
    let head = SergeevElement::from_perm(d).mul_unchecked(&c_of_matrix(m));
    head.mul_unchecked(&coset_sum(&m.nu(), &mu))
}

/// T_M = x_{ro(M)} d_M c_M Σ_{σ ∈ D_{ν_M} ∩ S_{co(M)}} σ.
pub fn t_matrix(m: &SuperMatrix) -> SergeevElement {
    x_sum(&m.ro()).mul_unchecked(&t_tail(m))
}
