//! Closed-form left multiplication by the six generator shapes.
//!
//! Each rule sums over a column index k and drops shifted keys that leave
//! the index set. Signs use m̃ computed on the odd part A¹.

use std::fmt;
use std::str::FromStr;

use super::element::{QElement, QError};
use crate::scalars::GaussianRational;
use crate::superindex::{Part, SuperMatrix};
use crate::symgroup::Composition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorShape {
    /// (λ + E_{h,h+1} − E_{h+1,h+1} | O)
    Upper0,
    /// (λ − E_{h+1,h+1} | E_{h,h+1})
    Upper1,
    /// (λ − E_{h,h} | E_{h,h})
    DiagOdd,
    /// (λ | O)
    DiagEven,
    /// (λ − E_{h,h} + E_{h+1,h} | O)
    Lower0,
    /// (λ − E_{h,h} | E_{h+1,h})
    Lower1,
}

impl GeneratorShape {
    pub const ALL: [GeneratorShape; 6] = [
        GeneratorShape::Upper0,
        GeneratorShape::Upper1,
        GeneratorShape::DiagOdd,
        GeneratorShape::DiagEven,
        GeneratorShape::Lower0,
        GeneratorShape::Lower1,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorShape::Upper0 => "upper0",
            GeneratorShape::Upper1 => "upper1",
            GeneratorShape::DiagOdd => "diag1",
            GeneratorShape::DiagEven => "diag0",
            GeneratorShape::Lower0 => "lower0",
            GeneratorShape::Lower1 => "lower1",
        }
    }

    /// Admissible values of h for n×n matrices.
    pub fn rows(&self, n: usize) -> Vec<usize> {
        match self {
            GeneratorShape::DiagEven => vec![0],
            GeneratorShape::DiagOdd => (1..=n).collect(),
            _ => (1..n).collect(),
        }
    }
}

impl fmt::Display for GeneratorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorShape {
    type Err = QError;
    fn from_str(s: &str) -> Result<Self, QError> {
        GeneratorShape::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| QError::NotAGenerator(s.to_string()))
    }
}

/// The generator key X of the given shape with co(X) = λ.
pub fn generator_key(shape: GeneratorShape, h: usize, lambda: &Composition) -> Result<SuperMatrix, QError> {
    let n = lambda.n();
    let base = SuperMatrix::diagonal(lambda);
    let bad = || QError::InvalidGenerator { shape: shape.name(), h, lambda: lambda.parts().to_vec() };
    let in_rows = match shape {
        GeneratorShape::DiagEven => true,
        GeneratorShape::DiagOdd => (1..=n).contains(&h),
        _ => h >= 1 && h < n,
    };
    if !in_rows {
        return Err(bad());
    }
    let key = match shape {
        GeneratorShape::Upper0 => base.shifted_many(&[(Part::Even, h, h + 1, 1), (Part::Even, h + 1, h + 1, -1)]),
        GeneratorShape::Upper1 => base.shifted_many(&[(Part::Even, h + 1, h + 1, -1), (Part::Odd, h, h + 1, 1)]),
        GeneratorShape::DiagOdd => base.shifted_many(&[(Part::Even, h, h, -1), (Part::Odd, h, h, 1)]),
        GeneratorShape::DiagEven => Some(base),
        GeneratorShape::Lower0 => base.shifted_many(&[(Part::Even, h, h, -1), (Part::Even, h + 1, h, 1)]),
        GeneratorShape::Lower1 => base.shifted_many(&[(Part::Even, h, h, -1), (Part::Odd, h + 1, h, 1)]),
    };
    key.ok_or_else(bad)
}

/// Recognise X as one of the generator shapes.
pub fn detect_shape(x: &SuperMatrix) -> Option<(GeneratorShape, usize)> {
    let lambda = x.co();
    for shape in GeneratorShape::ALL {
        for h in shape.rows(x.n()) {
            if generator_key(shape, h, &lambda).ok().as_ref() == Some(x) {
                return Some((shape, h));
            }
        }
    }
    None
}

fn sign(exp: usize) -> GaussianRational {
    GaussianRational::from_int(if exp.is_multiple_of(2) { 1 } else { -1 })
}

fn int(v: u32) -> GaussianRational {
    GaussianRational::from_int(v as i64)
}

/// φ_X φ_A for X = generator_key(shape, h, ro(A)).
pub fn left_mul(shape: GeneratorShape, h: usize, a: &SuperMatrix) -> Result<QElement, QError> {
    let (n, r) = (a.n(), a.size());
    generator_key(shape, h, &a.ro())?;
    let mut out = QElement::zero(n, r);
    let mut push = |m: Option<SuperMatrix>, c: GaussianRational| {
        if let Some(m) = m {
            out.add_term(m, c);
        }
    };
    let e0 = a.even();
    let abs = a.abs();
    use Part::{Even, Odd};
    match shape {
        GeneratorShape::DiagEven => push(Some(a.clone()), GaussianRational::one()),
        GeneratorShape::Upper0 => {
            for k in 1..=n {
                if abs.get(h + 1, k) == 0 {
                    continue;
                }
                push(a.shifted_many(&[(Even, h, k, 1), (Even, h + 1, k, -1)]), int(e0.get(h, k) + 1));
                push(a.shifted_many(&[(Odd, h, k, 1), (Odd, h + 1, k, -1)]), GaussianRational::one());
            }
        }
        GeneratorShape::Upper1 => {
            for k in 1..=n {
                if abs.get(h + 1, k) == 0 {
                    continue;
                }
                let s1 = sign(a.odd_mtilde(h + 1, k));
                let s0 = sign(a.odd_mtilde(h, k));
                push(a.shifted_many(&[(Even, h, k, 1), (Odd, h + 1, k, -1)]), &s1 * &int(e0.get(h, k) + 1));
                push(a.shifted_many(&[(Even, h + 1, k, -1), (Odd, h, k, 1)]), s0);
            }
        }
        GeneratorShape::DiagOdd => {
            for k in 1..=n {
                if abs.get(h, k) == 0 {
                    continue;
                }
                let s = sign(a.odd_mtilde(h, k));
                push(a.shifted_many(&[(Even, h, k, -1), (Odd, h, k, 1)]), s.clone());
                push(a.shifted_many(&[(Even, h, k, 1), (Odd, h, k, -1)]), &s * &int(e0.get(h, k) + 1));
            }
        }
        GeneratorShape::Lower0 => {
            for k in 1..=n {
                if abs.get(h, k) == 0 {
                    continue;
                }
                push(a.shifted_many(&[(Even, h, k, -1), (Even, h + 1, k, 1)]), int(e0.get(h + 1, k) + 1));
                push(a.shifted_many(&[(Odd, h, k, -1), (Odd, h + 1, k, 1)]), GaussianRational::one());
            }
        }
        GeneratorShape::Lower1 => {
            for k in 1..=n {
                if abs.get(h, k) == 0 {
                    continue;
                }
                let s = sign(a.odd_mtilde(h, k));
                push(a.shifted_many(&[(Even, h + 1, k, 1), (Odd, h, k, -1)]), &s * &int(e0.get(h + 1, k) + 1));
                push(a.shifted_many(&[(Even, h, k, -1), (Odd, h + 1, k, 1)]), s);
            }
        }
    }
    Ok(out)
}

/// φ_X φ_A via the closed forms; X must be a generator shape.
pub fn formula_product(x: &SuperMatrix, a: &SuperMatrix) -> Result<QElement, QError> {
    a.check_in(x.n(), x.size())?;
    if x.co() != a.ro() {
        return Ok(QElement::zero(a.n(), a.size()));
    }
    let (shape, h) = detect_shape(x).ok_or_else(|| QError::NotAGenerator(format!("{x:?}")))?;
    left_mul(shape, h, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qschur::Oracle;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn e(n: usize, i: usize, j: usize) -> SuperMatrix {
        SuperMatrix::unit(n, Part::Even, i, j, 1)
    }

    fn o(n: usize, i: usize, j: usize) -> SuperMatrix {
        SuperMatrix::unit(n, Part::Odd, i, j, 1)
    }

    #[test]
    fn shapes_round_trip() {
        let lam = Composition::new(vec![1, 2, 1]);
        for shape in GeneratorShape::ALL {
            assert_eq!(shape.name().parse::<GeneratorShape>().unwrap(), shape);
            for h in shape.rows(3) {
                if let Ok(x) = generator_key(shape, h, &lam) {
                    assert_eq!(x.co(), lam);
                    assert_eq!(detect_shape(&x), Some((shape, h)));
                }
            }
        }
        let empty = Composition::new(vec![1, 0]);
        assert!(generator_key(GeneratorShape::Upper0, 1, &empty).is_err());
    }

    #[test]
    fn small_examples() {
        let id2 = SuperMatrix::diagonal(&Composition::new(vec![1, 1]));
        let want = id2.shifted_many(&[(Part::Even, 1, 2, 1), (Part::Even, 2, 2, -1)]).unwrap();
        assert_eq!(left_mul(GeneratorShape::Upper0, 1, &id2).unwrap(), QElement::phi(&want));
        assert_eq!(left_mul(GeneratorShape::Upper0, 1, &e(2, 2, 1)).unwrap(), QElement::phi(&e(2, 1, 1)));
        assert_eq!(left_mul(GeneratorShape::Upper1, 1, &o(2, 2, 1)).unwrap(), QElement::phi(&e(2, 1, 1)).scale(&g(-1)));
        assert_eq!(left_mul(GeneratorShape::DiagOdd, 1, &e(2, 1, 1)).unwrap(), QElement::phi(&o(2, 1, 1)));
        let l0 = left_mul(GeneratorShape::Lower0, 1, &e(2, 1, 1)).unwrap();
        assert_eq!(l0, QElement::phi(&e(2, 2, 1)));
        assert_eq!(left_mul(GeneratorShape::Lower1, 1, &e(2, 1, 1)).unwrap(), QElement::phi(&o(2, 2, 1)));
        assert!(left_mul(GeneratorShape::DiagOdd, 2, &e(2, 1, 1)).is_err());
    }

    #[test]
    fn agrees_with_oracle_small() {
        let oracle = Oracle::new();
        for n in 1..=2 {
            for r in 0..=3 {
                for a in SuperMatrix::all(n, r) {
                    for shape in GeneratorShape::ALL {
                        for h in shape.rows(n) {
                            let Ok(x) = generator_key(shape, h, &a.ro()) else { continue };
                            let f = left_mul(shape, h, &a).unwrap();
                            let z = oracle.product(&x, &a).unwrap();
                            assert_eq!(f, z, "{shape} h={h} A={a:?}");
                        }
                    }
                }
            }
        }
    }
}
