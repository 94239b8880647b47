//! Generator families and the two relation suites they satisfy.
//!
//! The `Level` suite is stated at a fixed degree r with the idempotents
//! 1_λ; the `Family` suite is the presentation of U(q_n) with the Cartan
//! families h_i. Both are checked degreewise. Generators act on the left
//! through the qschur closed forms, so a word is evaluated right to left
//! starting from the identity.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{BlmError, TruncatedFamily};
use crate::qschur::{left_mul, GeneratorShape, QElement};
use crate::scalars::GaussianRational;
use crate::superindex::SuperMatrix;
use crate::symgroup::Composition;

/// A generator of the realization. Odd generators carry the factor ε.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Gen {
    /// 1_λ at the degree of λ.
    Idem(Vec<usize>),
    H(usize),
    HBar(usize),
    E(usize),
    EBar(usize),
    F(usize),
    FBar(usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Idem(l) => write!(f, "1{l:?}"),
            Gen::H(i) => write!(f, "h{i}"),
            Gen::HBar(i) => write!(f, "h̄{i}"),
            Gen::E(i) => write!(f, "e{i}"),
            Gen::EBar(i) => write!(f, "ē{i}"),
            Gen::F(i) => write!(f, "f{i}"),
            Gen::FBar(i) => write!(f, "f̄{i}"),
        }
    }
}

impl Gen {
    pub fn parity(&self) -> u8 {
        matches!(self, Gen::HBar(_) | Gen::EBar(_) | Gen::FBar(_)) as u8
    }

    fn odd_shape(&self) -> Option<(GeneratorShape, usize, bool)> {
        match *self {
            Gen::HBar(i) => Some((GeneratorShape::DiagOdd, i, true)),
            Gen::E(i) => Some((GeneratorShape::Upper0, i, false)),
            Gen::EBar(i) => Some((GeneratorShape::Upper1, i, true)),
            Gen::F(i) => Some((GeneratorShape::Lower0, i, false)),
            Gen::FBar(i) => Some((GeneratorShape::Lower1, i, true)),
            _ => None,
        }
    }

    fn check(&self, n: usize) -> Result<(), BlmError> {
        let (i, top) = match self {
            Gen::Idem(l) => return if l.len() == n { Ok(()) } else { Err(BlmError::WrongLength(l.len(), n)) },
            Gen::H(i) | Gen::HBar(i) => (*i, n),
            Gen::E(i) | Gen::EBar(i) | Gen::F(i) | Gen::FBar(i) => (*i, n.saturating_sub(1)),
        };
        if i == 0 || i > top {
            return Err(BlmError::IndexOutOfRange(i, n));
        }
        Ok(())
    }

    /// g · x at the degree of x.
    pub fn act(&self, x: &QElement) -> QElement {
        let mut out = QElement::zero(x.n(), x.r());
        match self {
            Gen::Idem(l) => {
                for (m, c) in x.terms() {
                    if m.ro().parts() == l.as_slice() {
                        out.add_term(m.clone(), c.clone());
                    }
                }
            }
            Gen::H(i) => {
                for (m, c) in x.terms() {
                    let w = GaussianRational::from_int(m.ro().parts()[i - 1] as i64);
                    out.add_term(m.clone(), c * &w);
                }
            }
            _ => {
                let (shape, h, odd) = self.odd_shape().expect("shape generator");
                let unit = if odd { GaussianRational::eps() } else { GaussianRational::one() };
                for (m, c) in x.terms() {
                    // keys with no matching generator component are killed
                    if let Ok(p) = left_mul(shape, h, m) {
                        out.add_scaled(&p, &(c * &unit));
                    }
                }
            }
        }
        out
    }
}

/// The truncated family of a generator, built from its definition.
pub fn generator_family(g: &Gen, n: usize, rmax: usize) -> Result<TruncatedFamily, BlmError> {
    use crate::superindex::Part::{Even, Odd};
    g.check(n)?;
    let eps = GaussianRational::eps();
    let zero = vec![0; n];
    Ok(match *g {
        Gen::Idem(ref l) => {
            let levels = (0..=rmax)
                .map(|r| {
                    let lam = Composition::new(l.clone());
                    if lam.r() == r {
                        QElement::phi(&SuperMatrix::diagonal(&lam))
                    } else {
                        QElement::zero(n, r)
                    }
                })
                .collect();
            TruncatedFamily::from_levels(n, levels)
        }
        Gen::H(i) => {
            let mut j = zero;
            j[i - 1] = 1;
            TruncatedFamily::truncated(&SuperMatrix::zero(n), &j, rmax)
        }
        Gen::HBar(i) => TruncatedFamily::truncated(&SuperMatrix::unit(n, Odd, i, i, 1), &zero, rmax).scale(&eps),
        Gen::E(i) => TruncatedFamily::truncated(&SuperMatrix::unit(n, Even, i, i + 1, 1), &zero, rmax),
        Gen::EBar(i) => TruncatedFamily::truncated(&SuperMatrix::unit(n, Odd, i, i + 1, 1), &zero, rmax).scale(&eps),
        Gen::F(i) => TruncatedFamily::truncated(&SuperMatrix::unit(n, Even, i + 1, i, 1), &zero, rmax),
        Gen::FBar(i) => TruncatedFamily::truncated(&SuperMatrix::unit(n, Odd, i + 1, i, 1), &zero, rmax).scale(&eps),
    })
}

/// A linear combination of generator words; the empty word is 1.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Poly(pub Vec<(GaussianRational, Vec<Gen>)>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![(GaussianRational::one(), Vec::new())])
    }

    pub fn gen(g: Gen) -> Self {
        Poly(vec![(GaussianRational::one(), vec![g])])
    }

    pub fn word(w: Vec<Gen>) -> Self {
        Poly(vec![(GaussianRational::one(), w)])
    }

    pub fn scale(mut self, c: i64) -> Self {
        let c = GaussianRational::from_int(c);
        for t in &mut self.0 {
            t.0 = &t.0 * &c;
        }
        self
    }

    pub fn plus(mut self, o: Poly) -> Self {
        self.0.extend(o.0);
        self
    }

    pub fn minus(self, o: Poly) -> Self {
        self.plus(o.scale(-1))
    }

    pub fn times(&self, o: &Poly) -> Self {
        let mut out = Vec::new();
        for (a, u) in &self.0 {
            for (b, v) in &o.0 {
                out.push((a * b, u.iter().chain(v).cloned().collect()));
            }
        }
        Poly(out)
    }

    /// Parity of the first word; relations only bracket homogeneous terms.
    pub fn parity(&self) -> u8 {
        self.0.first().map_or(0, |(_, w)| w.iter().map(Gen::parity).sum::<u8>() % 2)
    }

    /// [x, y] = xy − (−1)^{p(x)p(y)} yx.
    pub fn bracket(&self, o: &Poly) -> Self {
        let s = if self.parity() * o.parity() == 1 { -1 } else { 1 };
        self.times(o).minus(o.times(self).scale(s))
    }

    pub fn eval(&self, n: usize, r: usize) -> QElement {
        let mut out = QElement::zero(n, r);
        for (c, w) in &self.0 {
            let mut x = QElement::identity(n, r);
            for g in w.iter().rev() {
                x = g.act(&x);
            }
            out.add_scaled(&x, c);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(c, w)| {
                let w: Vec<String> = w.iter().map(Gen::to_string).collect();
                format!("({c}){}", if w.is_empty() { "1".into() } else { w.join("·") })
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Degree-r relations with idempotents.
    Level,
    /// The enveloping-algebra presentation with Cartan families.
    Family,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "level" => Ok(Suite::Level),
            "family" => Ok(Suite::Family),
            _ => Err(format!("unknown relation suite {s}")),
        }
    }
}

/// lhs = rhs, tagged by the group it belongs to.
#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub group: &'static str,
    pub lhs: Poly,
    pub rhs: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationFailure {
    pub group: &'static str,
    pub relation: String,
    pub r: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub suite: Suite,
    pub n: usize,
    pub rmax: usize,
    pub instances: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn g(x: Gen) -> Poly {
    Poly::gen(x)
}

/// (ε_i, α_j) = δ_{i,j} − δ_{i,j+1}.
fn pairing(i: usize, j: usize) -> i64 {
    (i == j) as i64 - (i == j + 1) as i64
}

fn rel(out: &mut Vec<Relation>, group: &'static str, lhs: Poly, rhs: Poly) {
    out.push(Relation { group, lhs, rhs });
}

/// Σ_λ c(λ) 1_λ over Λ(n, r).
fn weighted_idem(n: usize, r: usize, c: impl Fn(&[usize]) -> i64) -> Poly {
    let mut p = Poly::zero();
    for lam in Composition::all(n, r) {
        let v = c(lam.parts());
        if v != 0 {
            p = p.plus(g(Gen::Idem(lam.parts().to_vec())).scale(v));
        }
    }
    p
}

fn shifted(l: &[usize], j: usize, up: bool) -> Option<Vec<usize>> {
    // λ ± α_j with α_j = e_j − e_{j+1}
    let mut v = l.to_vec();
    let (inc, dec) = if up { (j - 1, j) } else { (j, j - 1) };
    v[dec] = v[dec].checked_sub(1)?;
    v[inc] += 1;
    Some(v)
}

/// Relations shared by both suites: Cartan-odd brackets, Serre-type.
fn shared(n: usize, out: &mut Vec<Relation>) {
    use Gen::*;
    for i in 1..=n {
        for j in 1..n {
            let p = pairing(i, j);
            let touch = (i == j || i == j + 1) as i64;
            rel(out, "hbar-e", g(HBar(i)).bracket(&g(E(j))), g(EBar(j)).scale(p));
            rel(out, "hbar-f", g(HBar(i)).bracket(&g(F(j))), g(FBar(j)).scale(-p));
            rel(out, "hbar-ebar", g(HBar(i)).bracket(&g(EBar(j))), g(E(j)).scale(touch));
            rel(out, "hbar-fbar", g(HBar(i)).bracket(&g(FBar(j))), g(F(j)).scale(touch));
        }
    }
    for i in 1..n {
        for j in 1..n {
            let d = i.abs_diff(j);
            if d != 1 {
                rel(out, "e-ebar", g(E(i)).bracket(&g(EBar(j))), Poly::zero());
                rel(out, "ebar-ebar", g(EBar(i)).bracket(&g(EBar(j))), Poly::zero());
                rel(out, "f-fbar", g(F(i)).bracket(&g(FBar(j))), Poly::zero());
                rel(out, "fbar-fbar", g(FBar(i)).bracket(&g(FBar(j))), Poly::zero());
            }
            if d > 1 {
                rel(out, "e-e", g(E(i)).bracket(&g(E(j))), Poly::zero());
                rel(out, "f-f", g(F(i)).bracket(&g(F(j))), Poly::zero());
            }
            if d == 1 {
                let ee = g(E(i)).bracket(&g(E(j)));
                let ff = g(F(i)).bracket(&g(F(j)));
                rel(out, "serre-e", g(E(i)).bracket(&ee), Poly::zero());
                rel(out, "serre-ebar", g(EBar(i)).bracket(&ee), Poly::zero());
                rel(out, "serre-f", g(F(i)).bracket(&ff), Poly::zero());
                rel(out, "serre-fbar", g(FBar(i)).bracket(&ff), Poly::zero());
            }
        }
        if i + 1 < n {
            let k = i + 1;
            rel(out, "e-adjacent", g(E(i)).bracket(&g(E(k))), g(EBar(i)).bracket(&g(EBar(k))));
            rel(out, "e-adjacent-mixed", g(E(i)).bracket(&g(EBar(k))), g(EBar(i)).bracket(&g(E(k))));
            rel(out, "f-adjacent", g(F(k)).bracket(&g(F(i))), g(FBar(k)).bracket(&g(FBar(i))));
            rel(out, "f-adjacent-mixed", g(F(k)).bracket(&g(FBar(i))), g(FBar(k)).bracket(&g(F(i))));
        }
    }
}

/// Every relation instance of a suite at degree r.
pub fn relations_at(suite: Suite, n: usize, r: usize) -> Vec<Relation> {
    use Gen::*;
    let mut out = Vec::new();
    let lams: Vec<Vec<usize>> = Composition::all(n, r).into_iter().map(|c| c.parts().to_vec()).collect();
    let hbar_diff = |i: usize| g(HBar(i)).minus(g(HBar(i + 1)));
    match suite {
        Suite::Level => {
            for l in &lams {
                for m in &lams {
                    let rhs = if l == m { g(Idem(l.clone())) } else { Poly::zero() };
                    rel(&mut out, "idempotents", Poly::word(vec![Idem(l.clone()), Idem(m.clone())]), rhs);
                }
            }
            rel(&mut out, "unit", weighted_idem(n, r, |_| 1), Poly::one());
            for i in 1..=n {
                for l in &lams {
                    rel(&mut out, "hbar-idem", Poly::word(vec![HBar(i), Idem(l.clone())]), Poly::word(vec![Idem(l.clone()), HBar(i)]));
                    if l[i - 1] == 0 {
                        rel(&mut out, "hbar-kills", Poly::word(vec![HBar(i), Idem(l.clone())]), Poly::zero());
                    }
                }
                for j in 1..=n {
                    let rhs = if i == j { weighted_idem(n, r, |l| 2 * l[i - 1] as i64) } else { Poly::zero() };
                    rel(&mut out, "hbar-hbar", g(HBar(i)).bracket(&g(HBar(j))), rhs);
                }
            }
            for j in 1..n {
                for l in &lams {
                    for (x, up) in [(E(j), true), (EBar(j), true), (F(j), false), (FBar(j), false)] {
                        let rhs = match shifted(l, j, up) {
                            Some(m) => Poly::word(vec![Idem(m), x.clone()]),
                            None => Poly::zero(),
                        };
                        rel(&mut out, "weight-shift", Poly::word(vec![x, Idem(l.clone())]), rhs);
                    }
                }
            }
            for i in 1..n {
                for j in 1..n {
                    let d = (i == j) as i64;
                    let even = weighted_idem(n, r, |l| d * (l[i - 1] as i64 - l[i] as i64));
                    let odd = weighted_idem(n, r, |l| d * (l[i - 1] + l[i]) as i64);
                    rel(&mut out, "e-f", g(E(i)).bracket(&g(F(j))), even);
                    rel(&mut out, "ebar-fbar", g(EBar(i)).bracket(&g(FBar(j))), odd);
                    rel(&mut out, "e-fbar", g(E(i)).bracket(&g(FBar(j))), hbar_diff(i).scale(d));
                    rel(&mut out, "ebar-f", g(EBar(i)).bracket(&g(F(j))), hbar_diff(i).scale(d));
                }
            }
        }
        Suite::Family => {
            for i in 1..=n {
                for j in 1..=n {
                    rel(&mut out, "h-h", g(H(i)).bracket(&g(H(j))), Poly::zero());
                    rel(&mut out, "h-hbar", g(H(i)).bracket(&g(HBar(j))), Poly::zero());
                    let rhs = if i == j { g(H(i)).scale(2) } else { Poly::zero() };
                    rel(&mut out, "hbar-hbar", g(HBar(i)).bracket(&g(HBar(j))), rhs);
                }
                for j in 1..n {
                    let p = pairing(i, j);
                    rel(&mut out, "h-e", g(H(i)).bracket(&g(E(j))), g(E(j)).scale(p));
                    rel(&mut out, "h-ebar", g(H(i)).bracket(&g(EBar(j))), g(EBar(j)).scale(p));
                    rel(&mut out, "h-f", g(H(i)).bracket(&g(F(j))), g(F(j)).scale(-p));
                    rel(&mut out, "h-fbar", g(H(i)).bracket(&g(FBar(j))), g(FBar(j)).scale(-p));
                }
            }
            for i in 1..n {
                for j in 1..n {
                    let d = (i == j) as i64;
                    rel(&mut out, "e-f", g(E(i)).bracket(&g(F(j))), g(H(i)).minus(g(H(i + 1))).scale(d));
                    rel(&mut out, "ebar-fbar", g(EBar(i)).bracket(&g(FBar(j))), g(H(i)).plus(g(H(i + 1))).scale(d));
                    rel(&mut out, "ebar-f", g(EBar(i)).bracket(&g(F(j))), hbar_diff(i).scale(d));
                    rel(&mut out, "e-fbar", g(E(i)).bracket(&g(FBar(j))), hbar_diff(i).scale(d));
                }
            }
        }
    }
    shared(n, &mut out);
    out
}

/// Evaluate every instance of a suite at each degree r ≤ R.
pub fn check_relations(suite: Suite, n: usize, rmax: usize) -> RelationReport {
    let cases: Vec<(usize, Relation)> = (0..=rmax).flat_map(|r| relations_at(suite, n, r).into_iter().map(move |x| (r, x))).collect();
    let failures: Vec<RelationFailure> = cases
        .par_iter()
        .filter(|(r, x)| x.lhs.eval(n, *r) != x.rhs.eval(n, *r))
        .map(|(r, x)| RelationFailure { group: x.group, relation: format!("{} = {}", x.lhs, x.rhs), r: *r })
        .collect();
    RelationReport { suite, n, rmax, instances: cases.len(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qschur::Oracle;

    fn all_gens(n: usize, r: usize) -> Vec<Gen> {
        let mut out: Vec<Gen> = Composition::all(n, r).into_iter().map(|l| Gen::Idem(l.parts().to_vec())).collect();
        for i in 1..=n {
            out.extend([Gen::H(i), Gen::HBar(i)]);
        }
        for i in 1..n {
            out.extend([Gen::E(i), Gen::EBar(i), Gen::F(i), Gen::FBar(i)]);
        }
        out
    }

    #[test]
    fn action_matches_family_product() {
        let oracle = Oracle::new();
        for n in 1..=3 {
            let rmax = 3;
            let probes: Vec<TruncatedFamily> =
                crate::blm::blm_basis(n, 2).iter().step_by(5).map(|x| TruncatedFamily::truncated(&x.matrix, &x.j, rmax)).collect();
            for g in all_gens(n, 2) {
                let fam = generator_family(&g, n, rmax).unwrap();
                for p in &probes {
                    let want = fam.mul(p, &oracle).unwrap();
                    for r in 0..=rmax {
                        assert_eq!(&g.act(p.level(r)), want.level(r), "{g} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_signs() {
        let x = g(Gen::EBar(1)).bracket(&g(Gen::FBar(1)));
        assert_eq!(x.0.len(), 2);
        assert_eq!(x.0[1].0, GaussianRational::one());
        let y = g(Gen::E(1)).bracket(&g(Gen::FBar(1)));
        assert_eq!(y.0[1].0, GaussianRational::from_int(-1));
    }

    #[test]
    fn both_suites_hold_small() {
        for suite in [Suite::Level, Suite::Family] {
            for n in 1..=2 {
                let rep = check_relations(suite, n, 3);
                assert!(rep.instances > 0);
                assert!(rep.passed(), "{suite:?} n={n}: {:?}", rep.failures);
            }
        }
    }

    #[test]
    fn generator_index_range() {
        assert!(generator_family(&Gen::E(2), 2, 2).is_err());
        assert!(generator_family(&Gen::HBar(2), 2, 2).is_ok());
        assert!(generator_family(&Gen::Idem(vec![1]), 2, 2).is_err());
        assert!(generator_family(&Gen::E(1), 2, 0).unwrap().is_zero());
    }
}
