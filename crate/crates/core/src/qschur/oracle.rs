//! Products in Q(n,r) by literal composition inside H^c_r.
//!
//! φ_X φ_A sends x_μ to z = x_ξ (d_X c_X Σσ')(d_A c_A Σσ), which is then
//! written in the coordinates {x_ξ d c^α : d ∈ D_ξ} of x_ξ H^c_r and solved
//! against the T_M with ro(M) = ξ, co(M) = μ.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

use super::element::{QElement, QError};
use crate::linalg::{Eliminator, SparseVec};
use crate::sergeev::{t_tail, SergeevElement};
use crate::superindex::SuperMatrix;
use crate::symgroup::{Composition, Permutation};

type Coord = (Permutation, u32);

/// Coordinates of x_ξ·h in the basis {x_ξ d c^α : d ∈ D_ξ}.
///
/// A monomial w c^α with w = σ d, σ ∈ S_ξ, lands on (d, α) because x_ξ σ = x_ξ.
pub fn coset_coordinates(xi: &Composition, h: &SergeevElement) -> SparseVec<Coord> {
    let labels = xi.labels();
    let starts: Vec<u8> = (1..=xi.n()).map(|b| xi.prefix(b - 1) as u8).collect();
    let mut out: SparseVec<Coord> = FxHashMap::default();
    let mut img = [0u8; crate::symgroup::MAX_DEGREE];
    for (w, mask, c) in h.iter() {
        let mut next = starts.clone();
        let wz = w.zero_based();
        for (p, &v) in wz.iter().enumerate() {
            let b = labels[v as usize];
            img[p] = next[b];
            next[b] += 1;
        }
        let d = Permutation::from_zero_based(&img[..wz.len()]);
        let slot = out.entry((d, mask.0)).or_default();
        *slot = &*slot + c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

struct Decomposer {
    candidates: Vec<SuperMatrix>,
    elim: Eliminator<Coord>,
}

/// The composition oracle with its caches.
#[derive(Default)]
pub struct Oracle {
    tails: Mutex<HashMap<SuperMatrix, Arc<SergeevElement>>>,
    decomposers: Mutex<HashMap<(Composition, Composition), Arc<Decomposer>>>,
    products: Mutex<HashMap<(SuperMatrix, SuperMatrix), QElement>>,
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// d_M c_M Σ_{σ ∈ D_{ν_M} ∩ S_{co(M)}} σ.
    pub fn tail(&self, m: &SuperMatrix) -> Arc<SergeevElement> {
        if let Some(t) = self.tails.lock().unwrap().get(m) {
            return t.clone();
        }
        let t = Arc::new(t_tail(m));
        self.tails.lock().unwrap().insert(m.clone(), t.clone());
        t
    }

    fn decomposer(&self, xi: &Composition, mu: &Composition) -> Result<Arc<Decomposer>, QError> {
        let key = (xi.clone(), mu.clone());
        if let Some(d) = self.decomposers.lock().unwrap().get(&key) {
            return Ok(d.clone());
        }
        let candidates = SuperMatrix::with_margins(xi, mu);
        let mut elim = Eliminator::new();
        for m in &candidates {
            let coords = coset_coordinates(xi, &self.tail(m));
            if !elim.insert(coords) {
                return Err(QError::DependentBasis(xi.parts().to_vec(), mu.parts().to_vec()));
            }
        }
        let d = Arc::new(Decomposer { candidates, elim });
        self.decomposers.lock().unwrap().insert(key, d.clone());
        Ok(d)
    }

    /// (number of M with the given margins, rank of their T_M coordinates).
    pub fn basis_rank(&self, xi: &Composition, mu: &Composition) -> (usize, usize) {
        let candidates = SuperMatrix::with_margins(xi, mu);
        let rank = crate::linalg::rank(candidates.iter().map(|m| coset_coordinates(xi, &self.tail(m))));
        (candidates.len(), rank)
    }

    /// Write x_ξ·h as Σ f_M T_M over ro(M) = ξ, co(M) = μ.
    pub fn decompose(&self, n: usize, xi: &Composition, mu: &Composition, h: &SergeevElement) -> Result<QElement, QError> {
        let dec = self.decomposer(xi, mu)?;
        let coords = coset_coordinates(xi, h);
        let sol = dec.elim.solve(&coords).map_err(|e| QError::Residual(e.0))?;
        Ok(QElement::from_terms(n, xi.r(), sol.into_iter().map(|(i, c)| (dec.candidates[i].clone(), c))))
    }

    /// φ_X φ_A.
    pub fn product(&self, x: &SuperMatrix, a: &SuperMatrix) -> Result<QElement, QError> {
        let (n, r) = (x.n(), x.size());
        a.check_in(n, r)?;
        if x.co() != a.ro() {
            return Ok(QElement::zero(n, r));
        }
        let key = (x.clone(), a.clone());
        if let Some(p) = self.products.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let z = self.tail(x).mul_unchecked(&self.tail(a));
        let out = self.decompose(n, &x.ro(), &a.co(), &z)?;
        self.products.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Bilinear extension of `product`.
    pub fn general_product(&self, a: &QElement, b: &QElement) -> Result<QElement, QError> {
        if a.n() != b.n() || a.r() != b.r() {
            return Err(QError::DimensionMismatch(a.n(), a.r(), b.n(), b.r()));
        }
        let mut out = QElement::zero(a.n(), a.r());
        for (x, cx) in a.terms() {
            for (y, cy) in b.terms() {
                if x.co() != y.ro() {
                    continue;
                }
                let p = self.product(x, y)?;
                out.add_scaled(&p, &(cx * cy));
            }
        }
        Ok(out)
    }

    /// Reconstruct φ applied to x_{co}: Σ f_M T_M as an element of H^c_r.
    pub fn realize_image(&self, e: &QElement) -> SergeevElement {
        let mut out = SergeevElement::zero(e.r());
        for (m, c) in e.terms() {
            let t = crate::sergeev::x_sum(&m.ro()).mul_unchecked(&self.tail(m));
            out = &out + &t.scale(c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GaussianRational;
    use crate::sergeev::{t_matrix, x_sum};
    use crate::superindex::Part;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn hand_computed_odd_products() {
        let o = Oracle::new();
        let x = SuperMatrix::unit(2, Part::Odd, 1, 2, 1);
        let a = SuperMatrix::unit(2, Part::Odd, 2, 1, 1);
        let p = o.product(&x, &a).unwrap();
        assert_eq!(p, QElement::phi(&SuperMatrix::unit(2, Part::Even, 1, 1, 1)).scale(&g(-1)));
        let x = SuperMatrix::unit(2, Part::Odd, 1, 1, 1);
        let a = SuperMatrix::unit(2, Part::Even, 1, 1, 1);
        assert_eq!(o.product(&x, &a).unwrap(), QElement::phi(&x));
        // mismatched margins multiply to zero
        assert!(o.product(&a, &SuperMatrix::unit(2, Part::Even, 2, 2, 1)).unwrap().is_zero());
    }

    #[test]
    fn coordinates_are_a_basis_of_each_margin_block() {
        let o = Oracle::new();
        for n in 1..=3 {
            for r in 0..=3 {
                for xi in Composition::all(n, r) {
                    for mu in Composition::all(n, r) {
                        let (count, rank) = o.basis_rank(&xi, &mu);
                        assert_eq!(count, rank, "{xi:?} {mu:?}");
                    }
                }
            }
        }
    }

    /// Full z computed literally (with x_ξ in front) must equal Σ f_M T_M.
    #[test]
    fn decomposition_reassembles_z() {
        let o = Oracle::new();
        for n in 1..=2 {
            for r in 0..=3 {
                let all = SuperMatrix::all(n, r);
                for x in &all {
                    for a in all.iter().filter(|a| a.ro() == x.co()) {
                        let f = o.product(x, a).unwrap();
                        let z = &t_matrix(x) * &o.tail(a);
                        let mut back = SergeevElement::zero(r);
                        for (m, c) in f.terms() {
                            back = &back + &t_matrix(m).scale(c);
                        }
                        assert_eq!(back, z, "{x:?} · {a:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_idempotents_act_as_identity() {
        let o = Oracle::new();
        for r in 0..=3 {
            for a in SuperMatrix::all(2, r) {
                let x = SuperMatrix::diagonal(&a.ro());
                assert_eq!(o.product(&x, &a).unwrap(), QElement::phi(&a));
                let y = SuperMatrix::diagonal(&a.co());
                assert_eq!(o.product(&a, &y).unwrap(), QElement::phi(&a));
            }
            let id = QElement::identity(2, r);
            for a in SuperMatrix::all(2, r).into_iter().take(12) {
                let e = QElement::phi(&a);
                assert_eq!(o.general_product(&id, &e).unwrap(), e);
            }
        }
    }

    #[test]
    fn associativity_on_basis_triples() {
        let o = Oracle::new();
        for r in 0..=3 {
            let all = SuperMatrix::all(2, r);
            for x in &all {
                for y in all.iter().filter(|y| y.ro() == x.co()) {
                    for z in all.iter().filter(|z| z.ro() == y.co()).step_by(3) {
                        let (ex, ey, ez) = (QElement::phi(x), QElement::phi(y), QElement::phi(z));
                        let left = o.general_product(&o.general_product(&ex, &ey).unwrap(), &ez).unwrap();
                        let right = o.general_product(&ex, &o.general_product(&ey, &ez).unwrap()).unwrap();
                        assert_eq!(left, right, "{x:?} {y:?} {z:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn images_are_right_module_maps() {
        // φ_A(x_μ) = T_A, and T_A lies in x_λ H
        let o = Oracle::new();
        for a in SuperMatrix::all(2, 2) {
            let img = o.realize_image(&QElement::phi(&a));
            assert_eq!(img, t_matrix(&a));
            assert_eq!(&x_sum(&a.ro()) * &img, img.scale(&g(crate::symgroup::young_subgroup_members(&a.ro()).len() as i64)));
        }
    }
}
