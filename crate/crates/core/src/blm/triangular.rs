//! Ordered generator products: the triangular multiplication formula, the
//! weight-shape and divided-power checks, and the PBW-type monomials.

use serde::Serialize;

use super::relations::{check_relations, Gen, Poly, RelationReport, Suite};
use super::{a_jr, express, ASpec, BlmError, TruncatedFamily};
use crate::linalg;
use crate::qschur::Oracle;
use crate::scalars::GaussianRational;
use crate::superindex::{positions_in_order, strict_prec, Part, PositionClass, SuperMatrix};

/// Σ_{i≠j} a_{ij}|i−j| + Σ_i a¹_{ii}, the number of generators in the product.
pub fn filtration_degree(a: &SuperMatrix) -> usize {
    let n = a.n();
    let abs = a.abs();
    let mut d = 0;
    for i in 1..=n {
        d += a.odd().get(i, i) as usize;
        for j in 1..=n {
            if i != j {
                d += abs.get(i, j) as usize * i.abs_diff(j);
            }
        }
    }
    d
}

/// The factors A(B, 0) of the ordered product for A, left to right.
///
/// Lower positions come first in position order, then the odd diagonal,
/// then upper positions. An off-diagonal entry at (i,j) is reached by a
/// chain of adjacent moves that starts next to the diagonal.
pub fn triangular_factors(a: &SuperMatrix) -> Result<Vec<SuperMatrix>, BlmError> {
    if !a.is_strict() {
        return Err(BlmError::NotStrict);
    }
    let n = a.n();
    let mut out = Vec::new();
    let mut push = |m: SuperMatrix| {
        if m.size() > 0 {
            out.push(m);
        }
    };
    for p in positions_in_order(n) {
        let (i, j) = (p.i, p.j);
        let (a0, a1) = (a.even().get(i, j), a.odd().get(i, j));
        let t = a0 + a1;
        match p.class() {
            PositionClass::Diagonal => push(SuperMatrix::unit(n, Part::Odd, i, i, a1)),
            PositionClass::Upper => {
                push(SuperMatrix::unit(n, Part::Odd, i, i + 1, a1));
                push(SuperMatrix::unit(n, Part::Even, i, i + 1, a0));
                for h in i + 1..j {
                    push(SuperMatrix::unit(n, Part::Even, h, h + 1, t));
                }
            }
            PositionClass::Lower => {
                push(SuperMatrix::unit(n, Part::Odd, i, i - 1, a1));
                push(SuperMatrix::unit(n, Part::Even, i, i - 1, a0));
                for h in (j + 1..i).rev() {
                    push(SuperMatrix::unit(n, Part::Even, h, h - 1, t));
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of expanding the ordered product for one A.
#[derive(Clone, Debug, Serialize)]
pub struct Triangular {
    pub matrix: SuperMatrix,
    pub degree: usize,
    /// Coefficient of A(A, 0).
    pub leading: GaussianRational,
    /// Every other term of the expansion.
    pub lower: Vec<(ASpec, GaussianRational)>,
    /// Leading coefficient ±1 and every other B strictly below A.
    pub triangular: bool,
}

impl Triangular {
    pub fn sign(&self) -> Option<i64> {
        self.leading.as_integer().filter(|v| v.abs() == 1)
    }
}

/// Multiply the factors degreewise and re-express the result in the A(B, j).
pub fn triangular_product(a: &SuperMatrix, rmax: usize, oracle: &Oracle) -> Result<Triangular, BlmError> {
    let n = a.n();
    let degree = filtration_degree(a);
    if rmax < degree {
        return Err(BlmError::TruncationTooLow { needed: degree, got: rmax });
    }
    let zero = vec![0; n];
    let mut prod = TruncatedFamily::identity(n, rmax);
    for f in triangular_factors(a)? {
        prod = prod.mul(&TruncatedFamily::truncated(&f, &zero, rmax), oracle)?;
    }
    let mut expansion = express(&prod, degree)?;
    let head = ASpec::plain(a.clone())?;
    let leading = expansion.remove(&head).unwrap_or_else(GaussianRational::zero);
    let lower: Vec<_> = expansion.into_iter().collect();
    let unit = leading.as_integer().is_some_and(|v| v.abs() == 1);
    let triangular = unit && lower.iter().all(|(b, _)| strict_prec(&b.matrix, a));
    Ok(Triangular { matrix: a.clone(), degree, leading, lower, triangular })
}

/// Tally of a family of checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckTally {
    pub cases: usize,
    pub failures: usize,
}

/// O(j)·A(A,0) = A(A,j) + Σ_{k<j} f_k A(A,k), for |A|+|j| ≤ R.
pub fn weight_shape_check(n: usize, rmax: usize, oracle: &Oracle) -> Result<CheckTally, BlmError> {
    let mut tally = CheckTally::default();
    for a in SuperMatrix::all_strict(n, rmax) {
        for s in 0..=rmax - a.size() {
            for j in crate::symgroup::Composition::all(n, s) {
                let j = j.parts().to_vec();
                let left = TruncatedFamily::truncated(&SuperMatrix::zero(n), &j, rmax);
                let right = TruncatedFamily::truncated(&a, &vec![0; n], rmax);
                let e = express(&left.mul(&right, oracle)?, a.size() + s)?;
                let top = ASpec { matrix: a.clone(), j: j.clone() };
                let ok = e.get(&top).is_some_and(GaussianRational::is_one)
                    && e.keys().all(|b| b == &top || (b.matrix == a && b.j.iter().zip(&j).all(|(x, y)| x <= y)));
                tally.cases += 1;
                tally.failures += usize::from(!ok);
            }
        }
    }
    Ok(tally)
}

/// The k-th power of E_h (or F_h) equals k!·A(kE, 0) at every degree ≤ R.
pub fn divided_power_check(n: usize, rmax: usize) -> CheckTally {
    let mut tally = CheckTally::default();
    for h in 1..n {
        for k in 1..=rmax {
            let fact = GaussianRational::from_int((1..=k as i64).product());
            for (g, m) in [
                (Gen::E(h), SuperMatrix::unit(n, Part::Even, h, h + 1, k as u32)),
                (Gen::F(h), SuperMatrix::unit(n, Part::Even, h + 1, h, k as u32)),
            ] {
                let word = Poly::word(vec![g; k]);
                for r in 0..=rmax {
                    tally.cases += 1;
                    if word.eval(n, r) != a_jr(&m, &vec![0; n], r).scale(&fact) {
                        tally.failures += 1;
                    }
                }
            }
        }
    }
    tally
}

/// The PBW-type monomial u^A as a word, for A ∈ M(n) with any diagonal.
///
/// Lower positions contribute f̄^{a¹} f^{a⁰} followed by a descending chain
/// of f's, the diagonal h̄^{a¹} h^{a⁰}, and upper positions ē^{a¹} e^{a⁰}
/// followed by an ascending chain of e's. Powers are ordinary powers.
pub fn pbw_word(a: &SuperMatrix) -> Vec<Gen> {
    let n = a.n();
    let mut w = Vec::new();
    let rep = |w: &mut Vec<Gen>, g: Gen, k: u32| w.extend(std::iter::repeat_n(g, k as usize));
    for p in positions_in_order(n) {
        let (i, j) = (p.i, p.j);
        let (a0, a1) = (a.even().get(i, j), a.odd().get(i, j));
        let t = a0 + a1;
        if p.class() == PositionClass::Lower {
            rep(&mut w, Gen::FBar(i - 1), a1);
            rep(&mut w, Gen::F(i - 1), a0);
            for k in (j..i - 1).rev() {
                rep(&mut w, Gen::F(k), t);
            }
        }
    }
    for i in 1..=n {
        rep(&mut w, Gen::HBar(i), a.odd().get(i, i));
        rep(&mut w, Gen::H(i), a.even().get(i, i));
    }
    for p in positions_in_order(n) {
        let (i, j) = (p.i, p.j);
        if p.class() != PositionClass::Upper {
            continue;
        }
        let (a0, a1) = (a.even().get(i, j), a.odd().get(i, j));
        rep(&mut w, Gen::EBar(i), a1);
        rep(&mut w, Gen::E(i), a0);
        for k in i + 1..j {
            rep(&mut w, Gen::E(k), a0 + a1);
        }
    }
    w
}

#[derive(Clone, Debug, Serialize)]
pub struct PbwReport {
    pub n: usize,
    pub rmax: usize,
    pub max_size: usize,
    pub count: usize,
    pub rank: usize,
}

impl PbwReport {
    pub fn independent(&self) -> bool {
        self.count == self.rank
    }
}

/// Rank of the truncated images of u^A over all A with |A| ≤ max_size.
pub fn pbw_check(n: usize, rmax: usize, max_size: usize) -> PbwReport {
    let mut images = Vec::new();
    for s in 0..=max_size {
        for a in SuperMatrix::all(n, s) {
            let word = Poly::word(pbw_word(&a));
            let levels = (0..=rmax).map(|r| word.eval(n, r)).collect();
            images.push(TruncatedFamily::from_levels(n, levels).coordinates());
        }
    }
    let count = images.len();
    PbwReport { n, rmax, max_size, count, rank: linalg::rank(images) }
}

#[derive(Clone, Debug, Serialize)]
pub struct PiReport {
    pub relations: RelationReport,
    pub pbw: PbwReport,
}

impl PiReport {
    pub fn passed(&self) -> bool {
        self.relations.passed() && self.pbw.independent()
    }
}

/// Generator images satisfy the presentation, and PBW images are independent.
pub fn pi_images_check(n: usize, rmax: usize, max_size: usize) -> PiReport {
    PiReport { relations: check_relations(Suite::Family, n, rmax), pbw: pbw_check(n, rmax, max_size) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(even: &[Vec<u32>], odd: &[Vec<u32>]) -> SuperMatrix {
        SuperMatrix::from_rows(even, odd).unwrap()
    }

    #[test]
    fn degree_counts_generators() {
        let a = sm(&[vec![0, 0, 1], vec![0, 0, 0], vec![0, 2, 0]], &[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        assert_eq!(filtration_degree(&a), 2 + 2 + 1);
        let fs = triangular_factors(&a).unwrap();
        let total: usize = fs.iter().map(SuperMatrix::size).sum();
        assert_eq!(total, filtration_degree(&a));
    }

    #[test]
    fn factor_order_n3() {
        let a = sm(&[vec![0, 0, 1], vec![0, 0, 0], vec![1, 0, 0]], &vec![vec![0; 3]; 3]);
        let fs = triangular_factors(&a).unwrap();
        let want = [
            SuperMatrix::unit(3, Part::Even, 3, 2, 1),
            SuperMatrix::unit(3, Part::Even, 2, 1, 1),
            SuperMatrix::unit(3, Part::Even, 1, 2, 1),
            SuperMatrix::unit(3, Part::Even, 2, 3, 1),
        ];
        assert_eq!(fs, want);
    }

    #[test]
    fn zero_matrix_gives_identity() {
        let oracle = Oracle::new();
        let t = triangular_product(&SuperMatrix::zero(2), 2, &oracle).unwrap();
        assert_eq!(t.sign(), Some(1));
        assert!(t.lower.is_empty() && t.triangular);
    }

    #[test]
    fn single_factor() {
        let oracle = Oracle::new();
        let t = triangular_product(&SuperMatrix::unit(2, Part::Even, 1, 2, 1), 3, &oracle).unwrap();
        assert!(t.triangular, "{t:?}");
    }

    #[test]
    fn small_triangular_n2() {
        let oracle = Oracle::new();
        for a in SuperMatrix::all_strict(2, 2) {
            let t = triangular_product(&a, filtration_degree(&a), &oracle).unwrap();
            assert!(t.triangular, "{t:?}");
        }
    }

    #[test]
    fn weight_shape_small() {
        let oracle = Oracle::new();
        let t = weight_shape_check(2, 3, &oracle).unwrap();
        assert!(t.cases > 0);
        assert_eq!(t.failures, 0);
    }

    #[test]
    fn divided_powers_small() {
        let t = divided_power_check(3, 3);
        assert!(t.cases > 0);
        assert_eq!(t.failures, 0);
    }

    #[test]
    fn pbw_unit_and_small_rank() {
        assert!(pbw_word(&SuperMatrix::zero(2)).is_empty());
        let rep = pbw_check(2, 2, 1);
        assert!(rep.independent(), "{rep:?}");
    }

    #[test]
    fn pbw_words_n3() {
        let a = sm(&[vec![0, 0, 0], vec![0, 0, 0], vec![1, 0, 0]], &[vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]]);
        assert_eq!(pbw_word(&a), vec![Gen::F(2), Gen::F(1), Gen::EBar(1), Gen::E(2)]);
    }
}
