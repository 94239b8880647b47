//! Left multiplication of A(A, j) by the degree-one families, in closed
//! form. The coefficients do not depend on r, so the result is again a
//! combination of spanning families.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ASpec, BlmError, Expansion};
use crate::qschur::QElement;
use crate::scalars::GaussianRational;
use crate::superindex::{Part, SuperMatrix};

/// The left factors of the closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenTag {
    /// O(0), the unit.
    Unit,
    /// O(e_h).
    Weight(usize),
    /// (O|E_{h,h})(0).
    OddDiag(usize),
    /// (E_{h,h+1}|O)(0).
    Upper0(usize),
    /// (O|E_{h,h+1})(0).
    Upper1(usize),
    /// (E_{h+1,h}|O)(0).
    Lower0(usize),
    /// (O|E_{h+1,h})(0).
    Lower1(usize),
}

impl fmt::Display for GenTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenTag::Unit => write!(f, "unit"),
            GenTag::Weight(h) => write!(f, "weight{h}"),
            GenTag::OddDiag(h) => write!(f, "diag1-{h}"),
            GenTag::Upper0(h) => write!(f, "upper0-{h}"),
            GenTag::Upper1(h) => write!(f, "upper1-{h}"),
            GenTag::Lower0(h) => write!(f, "lower0-{h}"),
            GenTag::Lower1(h) => write!(f, "lower1-{h}"),
        }
    }
}

impl GenTag {
    /// Every tag admissible for n.
    pub fn all(n: usize) -> Vec<GenTag> {
        let mut out = vec![GenTag::Unit];
        for h in 1..=n {
            out.push(GenTag::Weight(h));
            out.push(GenTag::OddDiag(h));
        }
        for h in 1..n {
            out.extend([GenTag::Upper0(h), GenTag::Upper1(h), GenTag::Lower0(h), GenTag::Lower1(h)]);
        }
        out
    }

    fn row(&self) -> Option<usize> {
        match *self {
            GenTag::Unit => None,
            GenTag::Weight(h) | GenTag::OddDiag(h) | GenTag::Upper0(h) | GenTag::Upper1(h) | GenTag::Lower0(h) | GenTag::Lower1(h) => Some(h),
        }
    }

    fn check(&self, n: usize) -> Result<(), BlmError> {
        let Some(h) = self.row() else { return Ok(()) };
        let top = match self {
            GenTag::Weight(_) | GenTag::OddDiag(_) => n,
            _ => n.saturating_sub(1),
        };
        if h == 0 || h > top {
            return Err(BlmError::IndexOutOfRange(h, n));
        }
        Ok(())
    }

    /// The family this tag names.
    pub fn spec(&self, n: usize) -> Result<ASpec, BlmError> {
        self.check(n)?;
        let mut j = vec![0; n];
        let m = match *self {
            GenTag::Unit => SuperMatrix::zero(n),
            GenTag::Weight(h) => {
                j[h - 1] = 1;
                SuperMatrix::zero(n)
            }
            GenTag::OddDiag(h) => SuperMatrix::unit(n, Part::Odd, h, h, 1),
            GenTag::Upper0(h) => SuperMatrix::unit(n, Part::Even, h, h + 1, 1),
            GenTag::Upper1(h) => SuperMatrix::unit(n, Part::Odd, h, h + 1, 1),
            GenTag::Lower0(h) => SuperMatrix::unit(n, Part::Even, h + 1, h, 1),
            GenTag::Lower1(h) => SuperMatrix::unit(n, Part::Odd, h + 1, h, 1),
        };
        ASpec::new(m, j)
    }
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

struct Acc<'a> {
    x: &'a ASpec,
    out: Expansion,
}

impl Acc<'_> {
    /// c · A(x.matrix shifted, j'); shifts leaving M± contribute nothing.
    fn push(&mut self, c: i64, shifts: &[(Part, usize, usize, i64)], j: Vec<usize>) {
        if c == 0 {
            return;
        }
        let Some(m) = self.x.matrix.shifted_many(shifts) else { return };
        if !m.is_strict() {
            return;
        }
        let key = ASpec { matrix: m, j };
        let v = self.out.remove(&key).unwrap_or_else(GaussianRational::zero) + GaussianRational::from_int(c);
        if !v.is_zero() {
            self.out.insert(key, v);
        }
    }

    fn j(&self) -> &[usize] {
        &self.x.j
    }

    /// Σ_{k ≤ j_h} C(j_h,k) c · A(shifted, j − k e_h).
    fn lowered(&mut self, c: i64, h: usize, shifts: &[(Part, usize, usize, i64)]) {
        let jh = self.j()[h - 1];
        for k in 0..=jh {
            let mut j = self.j().to_vec();
            j[h - 1] -= k;
            self.push(c * binom(jh, k), shifts, j);
        }
    }

    /// Σ_{k ≤ j_h} C(j_h,k) (−1)^k c · A(shifted, j + (1−k) e_h).
    fn raised(&mut self, c: i64, h: usize, shifts: &[(Part, usize, usize, i64)]) {
        let jh = self.j()[h - 1];
        for k in 0..=jh {
            let mut j = self.j().to_vec();
            j[h - 1] = jh + 1 - k;
            self.push(c * binom(jh, k) * sign(k), shifts, j);
        }
    }
}

/// g · A(A, j) as a combination of spanning families.
pub fn gen_mul_spec(tag: GenTag, x: &ASpec) -> Result<Expansion, BlmError> {
    let n = x.n();
    tag.check(n)?;
    let a = &x.matrix;
    let (e0, e1) = (a.even(), a.odd());
    let st = |p: usize, q: usize| sign(a.odd_mtilde(p, q));
    let ev = |p: usize, q: usize| e0.get(p, q) as i64;
    let mut acc = Acc { x, out: Expansion::new() };
    use Part::{Even, Odd};
    match tag {
        GenTag::Unit => acc.push(1, &[], x.j.clone()),
        GenTag::Weight(h) => {
            let mut j = x.j.clone();
            j[h - 1] += 1;
            acc.push(1, &[], j);
            let row: i64 = (1..=n).map(|k| ev(h, k) + e1.get(h, k) as i64).sum();
            acc.push(row, &[], x.j.clone());
        }
        GenTag::OddDiag(h) => {
            for k in (1..=n).filter(|&k| k != h) {
                if e1.get(h, k) == 0 {
                    acc.push(st(h, k), &[(Even, h, k, -1), (Odd, h, k, 1)], x.j.clone());
                } else {
                    acc.push(st(h, k) * (ev(h, k) + 1), &[(Even, h, k, 1), (Odd, h, k, -1)], x.j.clone());
                }
            }
            acc.lowered(st(h, h), h, &[(Odd, h, h, 1)]);
            acc.raised(st(h, h), h, &[(Odd, h, h, -1)]);
        }
        GenTag::Upper0(h) => {
            for k in (1..=n).filter(|&k| k != h && k != h + 1) {
                acc.push(ev(h, k) + 1, &[(Even, h, k, 1), (Even, h + 1, k, -1)], x.j.clone());
            }
            acc.raised(1, h, &[(Even, h + 1, h, -1)]);
            acc.lowered(ev(h, h + 1) + 1, h + 1, &[(Even, h, h + 1, 1)]);
            for k in 1..=n {
                acc.push(1, &[(Odd, h, k, 1), (Odd, h + 1, k, -1)], x.j.clone());
            }
        }
        GenTag::Upper1(h) => {
            for k in (1..=n).filter(|&k| k != h) {
                acc.push(st(h + 1, k) * (ev(h, k) + 1), &[(Even, h, k, 1), (Odd, h + 1, k, -1)], x.j.clone());
            }
            acc.raised(st(h + 1, h), h, &[(Odd, h + 1, h, -1)]);
            for k in (1..=n).filter(|&k| k != h + 1) {
                acc.push(st(h, k), &[(Even, h + 1, k, -1), (Odd, h, k, 1)], x.j.clone());
            }
            acc.lowered(st(h, h + 1), h + 1, &[(Odd, h, h + 1, 1)]);
        }
        GenTag::Lower0(h) => {
            for k in (1..=n).filter(|&k| k != h && k != h + 1) {
                acc.push(ev(h + 1, k) + 1, &[(Even, h, k, -1), (Even, h + 1, k, 1)], x.j.clone());
            }
            acc.lowered(ev(h + 1, h) + 1, h, &[(Even, h + 1, h, 1)]);
            acc.raised(1, h + 1, &[(Even, h, h + 1, -1)]);
            for k in 1..=n {
                acc.push(1, &[(Odd, h, k, -1), (Odd, h + 1, k, 1)], x.j.clone());
            }
        }
        GenTag::Lower1(h) => {
            for k in (1..=n).filter(|&k| k != h + 1) {
                acc.push(st(h, k) * (ev(h + 1, k) + 1), &[(Even, h + 1, k, 1), (Odd, h, k, -1)], x.j.clone());
            }
            acc.raised(st(h, h + 1), h + 1, &[(Odd, h, h + 1, -1)]);
            for k in (1..=n).filter(|&k| k != h) {
                acc.push(st(h, k), &[(Even, h, k, -1), (Odd, h + 1, k, 1)], x.j.clone());
            }
            acc.lowered(st(h, h), h, &[(Odd, h + 1, h, 1)]);
        }
    }
    Ok(acc.out)
}

/// The degree-r component of g · A(A, j).
pub fn gen_mul(tag: GenTag, x: &ASpec, r: usize) -> Result<QElement, BlmError> {
    let mut out = QElement::zero(x.n(), r);
    for (spec, c) in gen_mul_spec(tag, x)? {
        out.add_scaled(&spec.at(r), &c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blm::{blm_basis, exponents};
    use crate::qschur::Oracle;

    fn check_against_oracle(n: usize, rmax: usize, jmax: usize) -> usize {
        let oracle = Oracle::new();
        let mut checked = 0;
        for a in SuperMatrix::all_strict(n, rmax) {
            for j in exponents(n, jmax) {
                let x = ASpec::new(a.clone(), j).unwrap();
                for tag in GenTag::all(n) {
                    let g = tag.spec(n).unwrap();
                    for r in a.size()..=rmax {
                        let want = oracle.general_product(&g.at(r), &x.at(r)).unwrap();
                        assert_eq!(gen_mul(tag, &x, r).unwrap(), want, "{tag} x={x:?} r={r}");
                        checked += 1;
                    }
                }
            }
        }
        checked
    }

    #[test]
    fn matches_composition_n2() {
        assert!(check_against_oracle(2, 3, 2) > 1000);
    }

    #[test]
    fn weight_example() {
        let a = SuperMatrix::from_rows(&[vec![0, 2], vec![1, 0]], &[vec![1, 0], vec![0, 0]]).unwrap();
        let x = ASpec::new(a, vec![1, 0]).unwrap();
        let out = gen_mul_spec(GenTag::Weight(1), &x).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[&ASpec { j: vec![2, 0], ..x.clone() }], GaussianRational::one());
        assert_eq!(out[&x], GaussianRational::from_int(3));
    }

    #[test]
    fn unit_acts_trivially() {
        for x in blm_basis(2, 3) {
            let out = gen_mul_spec(GenTag::Unit, &x).unwrap();
            assert_eq!(out.into_iter().collect::<Vec<_>>(), vec![(x, GaussianRational::one())]);
        }
    }

    #[test]
    fn tag_range() {
        assert!(GenTag::Upper0(2).spec(2).is_err());
        assert!(GenTag::OddDiag(2).spec(2).is_ok());
        assert!(gen_mul_spec(GenTag::Lower1(0), &ASpec::plain(SuperMatrix::zero(2)).unwrap()).is_err());
    }
}
