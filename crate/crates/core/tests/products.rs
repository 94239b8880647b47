use qschur::qschur::{generator_key, left_mul, GeneratorShape, Oracle};
use qschur::scalars::GaussianRational;
use qschur::superindex::{count_matrices, Part, SuperMatrix};
use qschur::symgroup::Composition;

#[test]
fn closed_forms_match_composition() {
    let oracle = Oracle::new();
    let mut checked = 0;
    for n in 1..=3 {
        for r in 0..=4 {
            for a in SuperMatrix::all(n, r) {
                for shape in GeneratorShape::ALL {
                    for h in shape.rows(n) {
                        let Ok(x) = generator_key(shape, h, &a.ro()) else { continue };
                        let f = left_mul(shape, h, &a).unwrap();
                        let z = oracle.product(&x, &a).unwrap();
                        assert_eq!(f, z, "{shape} h={h} A={a:?}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 10_000, "{checked}");
}

#[test]
fn t_coordinates_have_full_rank() {
    let oracle = Oracle::new();
    for n in 1..=3 {
        for r in 0..=4 {
            let mut total = 0;
            for xi in Composition::all(n, r) {
                for mu in Composition::all(n, r) {
                    let (count, rank) = oracle.basis_rank(&xi, &mu);
                    assert_eq!(count, rank, "{xi:?} {mu:?}");
                    total += rank;
                }
            }
            assert_eq!(total as u128, count_matrices(n, r));
        }
    }
}

#[test]
fn odd_spot_product() {
    let oracle = Oracle::new();
    let x = SuperMatrix::unit(2, Part::Odd, 1, 2, 1);
    let a = SuperMatrix::unit(2, Part::Odd, 2, 1, 1);
    let want = qschur::qschur::QElement::phi(&SuperMatrix::unit(2, Part::Even, 1, 1, 1)).scale(&GaussianRational::from_int(-1));
    assert_eq!(oracle.product(&x, &a).unwrap(), want);
    assert_eq!(qschur::qschur::formula_product(&x, &a).unwrap(), want);
}
