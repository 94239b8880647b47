//! Rewriting identities in H^c_r, kept as data.
//!
//! Each entry knows how to enumerate its parameter grid, how to test its
//! hypotheses, and how to build both sides. A case passes when the two normal
//! forms agree exactly.

use serde::Serialize;

use crate::scalars::GaussianRational;
use crate::sergeev::{c_interval, chain, coset_sum, run, x_sum, ChainDirection, SergeevElement, SergeevError};
use crate::symgroup::{matrix_to_triple, Composition, NatMatrix};

use ChainDirection::{Down, Up};

/// Parameters of one instance. Unused fields stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<NatMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Composition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    /// Descending runs s_j s_{j−1} ⋯ s_i as (j, i) pairs.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub runs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCase {
    pub name: &'static str,
    pub params: Params,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails { lhs: SergeevElement, rhs: SergeevElement },
    Inadmissible(String),
}

impl Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }
}

type Sides = Result<(SergeevElement, SergeevElement), SergeevError>;

/// One registry entry.
pub struct Identity {
    pub name: &'static str,
    pub statement: &'static str,
    grid: fn(usize, usize) -> Vec<Params>,
    admissible: fn(&Params) -> Result<(), String>,
    sides: fn(&Params) -> Sides,
}

impl Identity {
    pub fn cases(&self, nmax: usize, rmax: usize) -> Vec<IdentityCase> {
        (self.grid)(nmax, rmax).into_iter().map(|params| IdentityCase { name: self.name, params }).collect()
    }

    pub fn check(&self, p: &Params) -> Outcome {
        if let Err(why) = (self.admissible)(p) {
            return Outcome::Inadmissible(why);
        }
        match (self.sides)(p) {
            Ok((lhs, rhs)) if lhs == rhs => Outcome::Holds,
            Ok((lhs, rhs)) => Outcome::Fails { lhs, rhs },
            Err(e) => Outcome::Inadmissible(e.to_string()),
        }
    }
}

// ---- shared pieces ----

fn need(p: Option<usize>, what: &str) -> Result<usize, String> {
    p.ok_or_else(|| format!("missing parameter {what}"))
}

fn mat(p: &Params) -> Result<&NatMatrix, String> {
    p.matrix.as_ref().ok_or_else(|| "missing matrix".to_string())
}

fn mu_of(p: &Params) -> Result<&Composition, String> {
    p.mu.as_ref().ok_or_else(|| "missing composition".to_string())
}

fn nat_shift(a: &NatMatrix, shifts: &[(usize, usize, i64)]) -> Option<NatMatrix> {
    let mut out = a.clone();
    for &(i, j, d) in shifts {
        if i == 0 || j == 0 || i > a.n() || j > a.n() {
            return None;
        }
        let v = out.get(i, j) as i64 + d;
        if v < 0 {
            return None;
        }
        out.set(i, j, v as u32);
    }
    Some(out)
}

/// A + E_{h,k} − E_{h+1,k}.
pub fn a_plus(a: &NatMatrix, h: usize, k: usize) -> Option<NatMatrix> {
    nat_shift(a, &[(h, k, 1), (h + 1, k, -1)])
}

/// A − E_{h,k} + E_{h+1,k}.
pub fn a_minus(a: &NatMatrix, h: usize, k: usize) -> Option<NatMatrix> {
    nat_shift(a, &[(h, k, -1), (h + 1, k, 1)])
}

/// Σ_{u<k} a_{h+1,u}.
fn a_k(a: &NatMatrix, h: usize, k: usize) -> usize {
    (1..k).map(|u| a.get(h + 1, u) as usize).sum()
}

/// Σ_{u>k} a_{h,u}.
fn b_k(a: &NatMatrix, h: usize, k: usize) -> usize {
    (k + 1..=a.n()).map(|u| a.get(h, u) as usize).sum()
}

fn d_elem(a: &NatMatrix) -> SergeevElement {
    SergeevElement::from_perm(matrix_to_triple(a).1)
}

fn cosets(a: &NatMatrix) -> SergeevElement {
    coset_sum(&a.column_major(), &a.col_sums())
}

fn gen_c(i: usize, r: usize) -> Result<SergeevElement, SergeevError> {
    SergeevElement::c(i, r)
}

fn prod(items: &[&SergeevElement]) -> SergeevElement {
    let r = items.first().map_or(0, |e| e.degree());
    SergeevElement::product(r, items.iter().copied())
}

fn matrices(nmax: usize, rmax: usize, nmin: usize) -> impl Iterator<Item = (usize, usize, NatMatrix)> {
    (nmin.max(1)..=nmax).flat_map(move |n| (0..=rmax).flat_map(move |r| NatMatrix::all_with_total(n, r).into_iter().map(move |a| (n, r, a))))
}

fn compositions(nmax: usize, rmax: usize) -> impl Iterator<Item = Composition> {
    (1..=nmax).flat_map(move |n| (1..=rmax).flat_map(move |r| Composition::all(n, r)))
}

// ---- grids ----

/// (A, h, k, p) with h < n and p < a_{h+1,k}.
fn grid_lower_row(nmax: usize, rmax: usize) -> Vec<Params> {
    let mut out = Vec::new();
    for (n, r, a) in matrices(nmax, rmax, 2) {
        for h in 1..n {
            for k in 1..=n {
                for p in 0..a.get(h + 1, k) as usize {
                    out.push(Params { r, matrix: Some(a.clone()), h: Some(h), k: Some(k), p: Some(p), ..Default::default() });
                }
            }
        }
    }
    out
}

/// (A, h, k, q) with q < a_{h,k}; `hmax_offset` = 1 keeps h < n.
fn grid_upper_row(nmax: usize, rmax: usize, hmax_offset: usize) -> Vec<Params> {
    let mut out = Vec::new();
    for (n, r, a) in matrices(nmax, rmax, 1 + hmax_offset) {
        for h in 1..=n - hmax_offset {
            for k in 1..=n {
                for q in 0..a.get(h, k) as usize {
                    out.push(Params { r, matrix: Some(a.clone()), h: Some(h), k: Some(k), q: Some(q), ..Default::default() });
                }
            }
        }
    }
    out
}

fn grid_shift_down(nmax: usize, rmax: usize) -> Vec<Params> {
    grid_upper_row(nmax, rmax, 1)
}

fn grid_clifford_down(nmax: usize, rmax: usize) -> Vec<Params> {
    grid_upper_row(nmax, rmax, 0)
}

/// (A, h, k) with h < n and a_{h+1,k} ≥ 1.
fn grid_coset_up(nmax: usize, rmax: usize) -> Vec<Params> {
    let mut out = Vec::new();
    for (n, r, a) in matrices(nmax, rmax, 2) {
        for h in 1..n {
            for k in (1..=n).filter(|&k| a.get(h + 1, k) >= 1) {
                out.push(Params { r, matrix: Some(a.clone()), h: Some(h), k: Some(k), ..Default::default() });
            }
        }
    }
    out
}

/// (A, h, k) with h < n and a_{h,k} ≥ 1.
fn grid_coset_down(nmax: usize, rmax: usize) -> Vec<Params> {
    let mut out = Vec::new();
    for (n, r, a) in matrices(nmax, rmax, 2) {
        for h in 1..n {
            for k in (1..=n).filter(|&k| a.get(h, k) >= 1) {
                out.push(Params { r, matrix: Some(a.clone()), h: Some(h), k: Some(k), ..Default::default() });
            }
        }
    }
    out
}

/// (k; (j_1,i_1), …, (j_l,i_l)) with i_t < k+t−1 ≤ j_t < r.
fn grid_runs(_nmax: usize, rmax: usize) -> Vec<Params> {
    fn rec(r: usize, k: usize, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Params>) {
        if !acc.is_empty() {
            out.push(Params { r, k: Some(k), runs: acc.clone(), ..Default::default() });
        }
        let t = acc.len() + 1;
        let pivot = k + t - 1;
        if pivot > r - 1 {
            return;
        }
        for j in pivot..r {
            for i in 1..pivot {
                acc.push((j, i));
                rec(r, k, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    for r in 2..=rmax {
        for k in 2..r {
            rec(r, k, &mut Vec::new(), &mut out);
        }
    }
    out
}

fn grid_commute_down(_nmax: usize, rmax: usize) -> Vec<Params> {
    let mut out = Vec::new();
    for r in 1..=rmax {
        for u in 1..r {
            for t in 1..u {
                out.push(Params { r, u: Some(u), t: Some(t), ..Default::default() });
            }
        }
    }
    out
}

fn grid_commute_up(_nmax: usize, rmax: usize) -> Vec<Params> {
    let mut out = Vec::new();
    for r in 1..=rmax {
        for u in 1..r {
            for v in 1..=r - u {
                out.push(Params { r, u: Some(u), v: Some(v), ..Default::default() });
            }
        }
    }
    out
}

/// (μ, u, t[, v]) with s_{u−t+1}, …, s_u ∈ S_μ and u+v ≤ r.
fn grid_block_down(nmax: usize, rmax: usize, with_v: bool) -> Vec<Params> {
    let mut out = Vec::new();
    for mu in compositions(nmax, rmax) {
        let r = mu.r();
        for u in 1..r {
            for t in (1..=u).filter(|&t| (u + 1 - t..=u).all(|i| mu.contains_simple(i))) {
                let vs: Vec<Option<usize>> = if with_v { (1..=r - u).map(Some).collect() } else { vec![None] };
                for v in vs {
                    out.push(Params { r, mu: Some(mu.clone()), u: Some(u), t: Some(t), v, ..Default::default() });
                }
            }
        }
    }
    out
}

fn grid_block_down_plain(nmax: usize, rmax: usize) -> Vec<Params> {
    grid_block_down(nmax, rmax, false)
}

fn grid_block_down_v(nmax: usize, rmax: usize) -> Vec<Params> {
    grid_block_down(nmax, rmax, true)
}

/// (μ, u, v[, t]) with s_u, …, s_{u+v−1} ∈ S_μ and t ≤ u.
fn grid_block_up(nmax: usize, rmax: usize, with_t: bool) -> Vec<Params> {
    let mut out = Vec::new();
    for mu in compositions(nmax, rmax) {
        let r = mu.r();
        for u in 1..r {
            for v in (1..=r - u).filter(|&v| (u..u + v).all(|i| mu.contains_simple(i))) {
                let ts: Vec<Option<usize>> = if with_t { (1..=u).map(Some).collect() } else { vec![None] };
                for t in ts {
                    out.push(Params { r, mu: Some(mu.clone()), u: Some(u), v: Some(v), t, ..Default::default() });
                }
            }
        }
    }
    out
}

fn grid_block_up_plain(nmax: usize, rmax: usize) -> Vec<Params> {
    grid_block_up(nmax, rmax, false)
}

fn grid_block_up_t(nmax: usize, rmax: usize) -> Vec<Params> {
    grid_block_up(nmax, rmax, true)
}

// ---- hypotheses ----

fn adm_shift_up(p: &Params) -> Result<(), String> {
    let a = mat(p)?;
    let (h, k, pp) = (need(p.h, "h")?, need(p.k, "k")?, need(p.p, "p")?);
    if h == 0 || h >= a.n() || k == 0 || k > a.n() {
        return Err("need 1 ≤ h < n, 1 ≤ k ≤ n".into());
    }
    if pp >= a.get(h + 1, k) as usize {
        return Err("need p < a_{h+1,k}".into());
    }
    Ok(())
}

fn adm_shift_down(p: &Params) -> Result<(), String> {
    let a = mat(p)?;
    let (h, k, q) = (need(p.h, "h")?, need(p.k, "k")?, need(p.q, "q")?);
    if h == 0 || h >= a.n() || k == 0 || k > a.n() {
        return Err("need 1 ≤ h < n, 1 ≤ k ≤ n".into());
    }
    if q >= a.get(h, k) as usize {
        return Err("need q < a_{h,k}".into());
    }
    Ok(())
}

fn adm_clifford_down(p: &Params) -> Result<(), String> {
    let a = mat(p)?;
    let (h, k, q) = (need(p.h, "h")?, need(p.k, "k")?, need(p.q, "q")?);
    if h == 0 || h > a.n() || k == 0 || k > a.n() {
        return Err("need 1 ≤ h, k ≤ n".into());
    }
    if q >= a.get(h, k) as usize {
        return Err("need q < a_{h,k}".into());
    }
    Ok(())
}

fn adm_coset_up(p: &Params) -> Result<(), String> {
    let a = mat(p)?;
    let (h, k) = (need(p.h, "h")?, need(p.k, "k")?);
    if h == 0 || h >= a.n() || k == 0 || k > a.n() || a.get(h + 1, k) == 0 {
        return Err("need 1 ≤ h < n and a_{h+1,k} ≥ 1".into());
    }
    Ok(())
}

fn adm_coset_down(p: &Params) -> Result<(), String> {
    let a = mat(p)?;
    let (h, k) = (need(p.h, "h")?, need(p.k, "k")?);
    if h == 0 || h >= a.n() || k == 0 || k > a.n() || a.get(h, k) == 0 {
        return Err("need 1 ≤ h < n and a_{h,k} ≥ 1".into());
    }
    Ok(())
}

fn adm_runs(p: &Params) -> Result<(), String> {
    let k = need(p.k, "k")?;
    if p.runs.is_empty() || k == 0 || k + p.runs.len() > p.r {
        return Err("need at least one run and k + l ≤ r".into());
    }
    for (t, &(j, i)) in p.runs.iter().enumerate() {
        let pivot = k + t;
        if !(i >= 1 && i < pivot && pivot <= j && j < p.r) {
            return Err(format!("run {} violates i_t < k+t−1 ≤ j_t < r", t + 1));
        }
    }
    Ok(())
}

fn adm_commute_down(p: &Params) -> Result<(), String> {
    let (u, t) = (need(p.u, "u")?, need(p.t, "t")?);
    if t == 0 || t >= u || u + 1 > p.r {
        return Err("need 1 ≤ t < u < r".into());
    }
    Ok(())
}

fn adm_commute_up(p: &Params) -> Result<(), String> {
    let (u, v) = (need(p.u, "u")?, need(p.v, "v")?);
    if u == 0 || v == 0 || u + v > p.r {
        return Err("need u, v ≥ 1 and u + v ≤ r".into());
    }
    Ok(())
}

fn adm_block_down(p: &Params) -> Result<(), String> {
    let mu = mu_of(p)?;
    let (u, t) = (need(p.u, "u")?, need(p.t, "t")?);
    if mu.r() != p.r || t == 0 || t > u || u + 1 > p.r {
        return Err("need 1 ≤ t ≤ u < r".into());
    }
    if let Some(v) = p.v {
        if v == 0 || u + v > p.r {
            return Err("need 1 ≤ v, u + v ≤ r".into());
        }
    }
    if !(u + 1 - t..=u).all(|i| mu.contains_simple(i)) {
        return Err("s_{u−t+1}, …, s_u must lie in S_μ".into());
    }
    Ok(())
}

fn adm_block_down_v(p: &Params) -> Result<(), String> {
    need(p.v, "v")?;
    adm_block_down(p)
}

fn adm_block_up(p: &Params) -> Result<(), String> {
    let mu = mu_of(p)?;
    let (u, v) = (need(p.u, "u")?, need(p.v, "v")?);
    if mu.r() != p.r || u == 0 || v == 0 || u + v > p.r {
        return Err("need u, v ≥ 1 and u + v ≤ r".into());
    }
    if let Some(t) = p.t {
        if t == 0 || t > u {
            return Err("need 1 ≤ t ≤ u".into());
        }
    }
    if !(u..u + v).all(|i| mu.contains_simple(i)) {
        return Err("s_u, …, s_{u+v−1} must lie in S_μ".into());
    }
    Ok(())
}

fn adm_block_up_t(p: &Params) -> Result<(), String> {
    need(p.t, "t")?;
    adm_block_up(p)
}

// ---- sides ----

fn sides_shift_up(p: &Params) -> Sides {
    let a = p.matrix.as_ref().unwrap();
    let (h, k, pp, r) = (p.h.unwrap(), p.k.unwrap(), p.p.unwrap(), p.r);
    let lt = a.row_sums().prefix(h);
    let (ak, bk) = (a_k(a, h, k), b_k(a, h, k));
    let plus = a_plus(a, h, k).expect("a_{h+1,k} ≥ 1");
    let at = a.mtilde(h, k);
    let lhs = run(lt + 1, ak + pp, Up, r)?.mul_unchecked(&d_elem(a));
    let rhs = prod(&[&run(lt, bk, Down, r)?, &d_elem(&plus), &run(at + 1, pp, Up, r)?]);
    Ok((lhs, rhs))
}

fn sides_shift_down(p: &Params) -> Sides {
    let a = p.matrix.as_ref().unwrap();
    let (h, k, q, r) = (p.h.unwrap(), p.k.unwrap(), p.q.unwrap(), p.r);
    let lt = a.row_sums().prefix(h);
    let (ak, bk) = (a_k(a, h, k), b_k(a, h, k));
    let minus = a_minus(a, h, k).expect("a_{h,k} ≥ 1");
    let at = a.mtilde(h, k);
    let lhs = run(lt.wrapping_sub(1), bk + q, Down, r)?.mul_unchecked(&d_elem(a));
    let rhs = prod(&[&run(lt, ak, Up, r)?, &d_elem(&minus), &run(at.wrapping_sub(1), q, Down, r)?]);
    Ok((lhs, rhs))
}

fn sides_runs(p: &Params) -> Sides {
    let (k, r, l) = (p.k.unwrap(), p.r, p.runs.len());
    let mut word = SergeevElement::one(r);
    for &(j, i) in &p.runs {
        word = word.mul_unchecked(&run(j, j + 1 - i, Down, r)?);
    }
    Ok((gen_c(k, r)?.mul_unchecked(&word), word.mul_unchecked(&gen_c(k + l, r)?)))
}

fn sides_clifford_up(p: &Params) -> Sides {
    let a = p.matrix.as_ref().unwrap();
    let (h, k, pp, r) = (p.h.unwrap(), p.k.unwrap(), p.p.unwrap(), p.r);
    let lt = a.row_sums().prefix(h);
    let d = d_elem(a);
    let lhs = gen_c(lt + a_k(a, h, k) + pp + 1, r)?.mul_unchecked(&d);
    let rhs = d.mul_unchecked(&gen_c(a.mtilde(h, k) + pp + 1, r)?);
    Ok((lhs, rhs))
}

fn sides_clifford_down(p: &Params) -> Sides {
    let a = p.matrix.as_ref().unwrap();
    let (h, k, q, r) = (p.h.unwrap(), p.k.unwrap(), p.q.unwrap(), p.r);
    let lt = a.row_sums().prefix(h);
    let d = d_elem(a);
    let lhs = gen_c(lt - b_k(a, h, k) - q, r)?.mul_unchecked(&d);
    let rhs = d.mul_unchecked(&gen_c(a.mtilde(h, k) - q, r)?);
    Ok((lhs, rhs))
}

fn sides_coset_up(p: &Params) -> Sides {
    let a = p.matrix.as_ref().unwrap();
    let (h, k, r) = (p.h.unwrap(), p.k.unwrap(), p.r);
    let plus = a_plus(a, h, k).expect("a_{h+1,k} ≥ 1");
    let at = a.mtilde(h, k);
    let lhs = chain(at + 1, a.get(h + 1, k) as usize - 1, Up, r)?.mul_unchecked(&cosets(a));
    let rhs = chain(at, a.get(h, k) as usize, Down, r)?.mul_unchecked(&cosets(&plus));
    Ok((lhs, rhs))
}

fn sides_coset_down(p: &Params) -> Sides {
    let a = p.matrix.as_ref().unwrap();
    let (h, k, r) = (p.h.unwrap(), p.k.unwrap(), p.r);
    let minus = a_minus(a, h, k).expect("a_{h,k} ≥ 1");
    let at = a.mtilde(h, k);
    let lhs = chain(at - 1, a.get(h, k) as usize - 1, Down, r)?.mul_unchecked(&cosets(a));
    let rhs = chain(at, a.get(h + 1, k) as usize, Up, r)?.mul_unchecked(&cosets(&minus));
    Ok((lhs, rhs))
}

fn sides_commute_down(p: &Params) -> Sides {
    let (u, t, r) = (p.u.unwrap(), p.t.unwrap(), p.r);
    let c = c_interval(u + 1 - t, u + 1, r)?;
    let ch = chain(u, t, Down, r)?;
    Ok((c.mul_unchecked(&ch), ch.mul_unchecked(&c)))
}

fn sides_commute_up(p: &Params) -> Sides {
    let (u, v, r) = (p.u.unwrap(), p.v.unwrap(), p.r);
    let c = c_interval(u, u + v, r)?;
    let ch = chain(u, v, Up, r)?;
    Ok((c.mul_unchecked(&ch), ch.mul_unchecked(&c)))
}

struct Block {
    r: usize,
    u: usize,
    v: usize,
    t: usize,
    x: SergeevElement,
}

impl Block {
    fn of(p: &Params) -> Self {
        let mu = p.mu.as_ref().unwrap();
        Block { r: p.r, u: p.u.unwrap(), v: p.v.unwrap_or(0), t: p.t.unwrap_or(0), x: x_sum(mu) }
    }

    fn c(&self, i: usize, j: usize) -> Result<SergeevElement, SergeevError> {
        c_interval(i, j, self.r)
    }

    /// x_μ · middle · chain.
    fn lhs(&self, middle: &[SergeevElement], dir: ChainDirection) -> Result<SergeevElement, SergeevError> {
        let steps = if dir == Down { self.t } else { self.v };
        let mut out = self.x.clone();
        for m in middle {
            out = out.mul_unchecked(m);
        }
        Ok(out.mul_unchecked(&chain(self.u, steps, dir, self.r)?))
    }

    /// c · x_μ · factors.
    fn term(&self, c: i64, factors: &[SergeevElement]) -> SergeevElement {
        let mut out = self.x.scale(&GaussianRational::from_int(c));
        for f in factors {
            out = out.mul_unchecked(f);
        }
        out
    }
}

// Chains running down from s_u; the block holds u−t+1, …, u+1.

fn down_plain(p: &Params) -> Sides {
    let b = Block::of(p);
    Ok((b.lhs(&[], Down)?, b.term(b.t as i64 + 1, &[])))
}

fn down_single(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, t) = (b.u, b.t);
    Ok((b.lhs(&[b.c(u + 1, u + 1)?], Down)?, b.term(1, &[b.c(u + 1 - t, u + 1)?])))
}

fn down_single_tail(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, v, t) = (b.u, b.v, b.t);
    let lhs = b.lhs(&[b.c(u + 1, u + 1)?, b.c(u + 1, u + v)?], Down)?;
    let mut rhs = b.term(-(t as i64 + 1), &[]);
    if v > 1 {
        rhs = &rhs + &b.term(1, &[b.c(u + 1 - t, u + 1)?, b.c(u + 2, u + v)?]);
    }
    Ok((lhs, rhs))
}

fn down_single_head(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, t) = (b.u, b.t);
    Ok((b.lhs(&[b.c(u + 1, u + 1)?, b.c(u + 1 - t, u)?], Down)?, SergeevElement::zero(b.r)))
}

fn down_single_both(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, v, t) = (b.u, b.v, b.t);
    let lhs = b.lhs(&[b.c(u + 1, u + 1)?, b.c(u + 1 - t, u)?, b.c(u + 1, u + v)?], Down)?;
    Ok((lhs, b.term(t as i64, &[b.c(u + 1 - t, u + 1)?])))
}

fn down_tail(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, v, t) = (b.u, b.v, b.t);
    let lhs = b.lhs(&[b.c(u + 1, u + v)?], Down)?;
    let mut rhs = b.term(1, &[b.c(u + 1 - t, u + 1)?]);
    if v > 1 {
        rhs = &rhs + &b.term(t as i64 + 1, &[b.c(u + 2, u + v)?]);
    }
    Ok((lhs, rhs))
}

fn down_head(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, t) = (b.u, b.t);
    Ok((b.lhs(&[b.c(u + 1 - t, u)?], Down)?, b.term(t as i64, &[b.c(u + 1 - t, u + 1)?])))
}

fn down_both(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, v, t) = (b.u, b.v, b.t);
    let lhs = b.lhs(&[b.c(u + 1 - t, u)?, b.c(u + 1, u + v)?], Down)?;
    let rhs = if v == 1 {
        SergeevElement::zero(b.r)
    } else {
        b.term(t as i64, &[b.c(u + 1 - t, u + 1)?, b.c(u + 2, u + v)?])
    };
    Ok((lhs, rhs))
}

// Chains running up from s_u; the block holds u, …, u+v.

fn up_plain(p: &Params) -> Sides {
    let b = Block::of(p);
    Ok((b.lhs(&[], Up)?, b.term(b.v as i64 + 1, &[])))
}

fn up_single(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, v) = (b.u, b.v);
    Ok((b.lhs(&[b.c(u, u)?], Up)?, b.term(1, &[b.c(u, u + v)?])))
}

fn up_single_tail(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, v) = (b.u, b.v);
    Ok((b.lhs(&[b.c(u, u)?, b.c(u + 1, u + v)?], Up)?, SergeevElement::zero(b.r)))
}

fn up_single_head(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, v, t) = (b.u, b.v, b.t);
    let lhs = b.lhs(&[b.c(u, u)?, b.c(u + 1 - t, u)?], Up)?;
    let mut rhs = b.term(-(v as i64 + 1), &[]);
    if t > 1 {
        rhs = &rhs - &b.term(1, &[b.c(u + 1 - t, u - 1)?, b.c(u, u + v)?]);
    }
    Ok((lhs, rhs))
}

fn up_single_both(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, v, t) = (b.u, b.v, b.t);
    let lhs = b.lhs(&[b.c(u, u)?, b.c(u + 1 - t, u)?, b.c(u + 1, u + v)?], Up)?;
    Ok((lhs, b.term(-(v as i64), &[b.c(u, u + v)?])))
}

fn up_tail(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, v) = (b.u, b.v);
    Ok((b.lhs(&[b.c(u + 1, u + v)?], Up)?, b.term(v as i64, &[b.c(u, u + v)?])))
}

fn up_head(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, v, t) = (b.u, b.v, b.t);
    let lhs = b.lhs(&[b.c(u + 1 - t, u)?], Up)?;
    let mut rhs = b.term(1, &[b.c(u, u + v)?]);
    if t > 1 {
        rhs = &rhs + &b.term(v as i64 + 1, &[b.c(u + 1 - t, u - 1)?]);
    }
    Ok((lhs, rhs))
}

fn up_both(p: &Params) -> Sides {
    let b = Block::of(p);
    let (u, v, t) = (b.u, b.v, b.t);
    let lhs = b.lhs(&[b.c(u + 1 - t, u)?, b.c(u + 1, u + v)?], Up)?;
    let rhs = if t == 1 {
        SergeevElement::zero(b.r)
    } else {
        b.term(v as i64, &[b.c(u + 1 - t, u - 1)?, b.c(u, u + v)?])
    };
    Ok((lhs, rhs))
}

macro_rules! entry {
    ($name:literal, $stmt:literal, $grid:ident, $adm:ident, $sides:ident) => {
        Identity { name: $name, statement: $stmt, grid: $grid, admissible: $adm, sides: $sides }
    };
}

/// The registry, in a fixed order.
pub static REGISTRY: &[Identity] = &[
    entry!("shift-up", "s_{λ̃_h+1}⋯s_{λ̃_h+a_k+p} d_A = s_{λ̃_h}⋯s_{λ̃_h−b_k+1} d_{A⁺} s_{ã+1}⋯s_{ã+p}", grid_lower_row, adm_shift_up, sides_shift_up),
    entry!("shift-down", "s_{λ̃_h−1}⋯s_{λ̃_h−b_k−q} d_A = s_{λ̃_h}⋯s_{λ̃_h+a_k−1} d_{A⁻} s_{ã−1}⋯s_{ã−q}", grid_shift_down, adm_shift_down, sides_shift_down),
    entry!("clifford-through-runs", "c_k Π_t (s_{j_t}⋯s_{i_t}) = Π_t (s_{j_t}⋯s_{i_t}) c_{k+l}", grid_runs, adm_runs, sides_runs),
    entry!("clifford-through-d-up", "c_{λ̃_h+a_k+p+1} d_A = d_A c_{ã+p+1}", grid_lower_row, adm_shift_up, sides_clifford_up),
    entry!("clifford-through-d-down", "c_{λ̃_h−b_k−q} d_A = d_A c_{ã−q}", grid_clifford_down, adm_clifford_down, sides_clifford_down),
    entry!("coset-chain-up", "(1 + s_{ã+1} + ⋯) Σ_{D_{ν_A} ∩ S_μ} = (1 + s_ã + ⋯ + s_ã⋯s_{ã−a_{h,k}+1}) Σ_{D_{ν_{A⁺}} ∩ S_μ}", grid_coset_up, adm_coset_up, sides_coset_up),
    entry!("coset-chain-down", "(1 + s_{ã−1} + ⋯) Σ_{D_{ν_A} ∩ S_μ} = (1 + s_ã + ⋯ + s_ã⋯s_{ã+a_{h+1,k}−1}) Σ_{D_{ν_{A⁻}} ∩ S_μ}", grid_coset_down, adm_coset_down, sides_coset_down),
    entry!("interval-commutes-down", "c_{u−t+1,u+1} commutes with 1 + s_u + ⋯ + s_u⋯s_{u−t+1}", grid_commute_down, adm_commute_down, sides_commute_down),
    entry!("interval-commutes-up", "c_{u,u+v} commutes with 1 + s_u + ⋯ + s_u⋯s_{u+v−1}", grid_commute_up, adm_commute_up, sides_commute_up),
    entry!("xmu-down-plain", "x_μ (1 + s_u + ⋯) = (t+1) x_μ", grid_block_down_plain, adm_block_down, down_plain),
    entry!("xmu-down-single", "x_μ c_{u+1} (1 + s_u + ⋯) = x_μ c_{u−t+1,u+1}", grid_block_down_plain, adm_block_down, down_single),
    entry!("xmu-down-single-tail", "x_μ c_{u+1} c_{u+1,u+v} (1 + s_u + ⋯) = −(t+1) x_μ [+ x_μ c_{u−t+1,u+1} c_{u+2,u+v}]", grid_block_down_v, adm_block_down_v, down_single_tail),
    entry!("xmu-down-single-head", "x_μ c_{u+1} c_{u−t+1,u} (1 + s_u + ⋯) = 0", grid_block_down_plain, adm_block_down, down_single_head),
    entry!("xmu-down-single-both", "x_μ c_{u+1} c_{u−t+1,u} c_{u+1,u+v} (1 + s_u + ⋯) = t x_μ c_{u−t+1,u+1}", grid_block_down_v, adm_block_down_v, down_single_both),
    entry!("xmu-down-tail", "x_μ c_{u+1,u+v} (1 + s_u + ⋯) = x_μ c_{u−t+1,u+1} [+ (t+1) x_μ c_{u+2,u+v}]", grid_block_down_v, adm_block_down_v, down_tail),
    entry!("xmu-down-head", "x_μ c_{u−t+1,u} (1 + s_u + ⋯) = t x_μ c_{u−t+1,u+1}", grid_block_down_plain, adm_block_down, down_head),
    entry!("xmu-down-both", "x_μ c_{u−t+1,u} c_{u+1,u+v} (1 + s_u + ⋯) = [v > 1] t x_μ c_{u−t+1,u+1} c_{u+2,u+v}", grid_block_down_v, adm_block_down_v, down_both),
    entry!("xmu-up-plain", "x_μ (1 + s_u + ⋯ + s_u⋯s_{u+v−1}) = (v+1) x_μ", grid_block_up_plain, adm_block_up, up_plain),
    entry!("xmu-up-single", "x_μ c_u (1 + s_u + ⋯) = x_μ c_{u,u+v}", grid_block_up_plain, adm_block_up, up_single),
    entry!("xmu-up-single-tail", "x_μ c_u c_{u+1,u+v} (1 + s_u + ⋯) = 0", grid_block_up_plain, adm_block_up, up_single_tail),
    entry!("xmu-up-single-head", "x_μ c_u c_{u−t+1,u} (1 + s_u + ⋯) = −(v+1) x_μ [− x_μ c_{u−t+1,u−1} c_{u,u+v}]", grid_block_up_t, adm_block_up_t, up_single_head),
    entry!("xmu-up-single-both", "x_μ c_u c_{u−t+1,u} c_{u+1,u+v} (1 + s_u + ⋯) = −v x_μ c_{u,u+v}", grid_block_up_t, adm_block_up_t, up_single_both),
    entry!("xmu-up-tail", "x_μ c_{u+1,u+v} (1 + s_u + ⋯) = v x_μ c_{u,u+v}", grid_block_up_plain, adm_block_up, up_tail),
    entry!("xmu-up-head", "x_μ c_{u−t+1,u} (1 + s_u + ⋯) = x_μ c_{u,u+v} [+ (v+1) x_μ c_{u−t+1,u−1}]", grid_block_up_t, adm_block_up_t, up_head),
    entry!("xmu-up-both", "x_μ c_{u−t+1,u} c_{u+1,u+v} (1 + s_u + ⋯) = [t > 1] v x_μ c_{u−t+1,u−1} c_{u,u+v}", grid_block_up_t, adm_block_up_t, up_both),
];

pub fn lookup(name: &str) -> Option<&'static Identity> {
    REGISTRY.iter().find(|i| i.name == name)
}

/// The full admissible grid of one entry within the bounds.
pub fn enumerate_cases(name: &str, nmax: usize, rmax: usize) -> Option<Vec<IdentityCase>> {
    lookup(name).map(|i| i.cases(nmax, rmax))
}

pub fn check_identity(case: &IdentityCase) -> Outcome {
    match lookup(case.name) {
        Some(i) => i.check(&case.params),
        None => Outcome::Inadmissible(format!("unknown identity {}", case.name)),
    }
}

/// Tally for one entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub inadmissible: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failed: Vec<Params>,
}

/// Run one entry over its grid; at most `keep` failing cases are retained.
pub fn run_identity(id: &Identity, nmax: usize, rmax: usize, keep: usize) -> Tally {
    use rayon::prelude::*;
    let cases = (id.grid)(nmax, rmax);
    let outcomes: Vec<Outcome> = cases.par_iter().map(|p| id.check(p)).collect();
    let mut tally = Tally { name: id.name, cases: cases.len(), ..Default::default() };
    for (p, o) in cases.into_iter().zip(outcomes) {
        match o {
            Outcome::Holds => {}
            Outcome::Fails { .. } => {
                tally.failures += 1;
                if tally.failed.len() < keep {
                    tally.failed.push(p);
                }
            }
            Outcome::Inadmissible(_) => tally.inadmissible += 1,
        }
    }
    tally
}
