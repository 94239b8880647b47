use qschur::blm::{
    blm_basis_rank, check_relations, divided_power_check, filtration_degree, gen_mul, pbw_check, pi_images_check, triangular_product,
    weight_shape_check, ASpec, GenTag, Suite,
};
use qschur::qschur::Oracle;
use qschur::superindex::SuperMatrix;
use qschur::symgroup::Composition;

#[test]
fn closed_forms_match_composition() {
    let oracle = Oracle::new();
    let mut checked = 0;
    for n in 1..=3 {
        let rmax = 4;
        for a in SuperMatrix::all_strict(n, rmax) {
            for s in 0..=2 {
                for j in Composition::all(n, s) {
                    let x = ASpec::new(a.clone(), j.parts().to_vec()).unwrap();
                    for tag in GenTag::all(n) {
                        let g = tag.spec(n).unwrap();
                        for r in a.size()..=rmax {
                            let want = oracle.general_product(&g.at(r), &x.at(r)).unwrap();
                            assert_eq!(gen_mul(tag, &x, r).unwrap(), want, "{tag} {x:?} r={r}");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 10_000, "{checked}");
}

#[test]
fn spanning_set_is_a_basis() {
    for n in 1..=3 {
        for r in 0..=4 {
            let b = blm_basis_rank(n, r);
            assert!(b.is_basis(), "n={n} r={r}: {b:?}");
        }
    }
}

#[test]
fn relation_suites_hold() {
    for suite in [Suite::Level, Suite::Family] {
        for n in 1..=3 {
            let rep = check_relations(suite, n, 4);
            assert!(rep.instances > 0);
            assert!(rep.passed(), "{suite:?} n={n}: {:#?}", rep.failures);
        }
    }
}

#[test]
fn triangular_products() {
    let oracle = Oracle::new();
    let mut signs = [0usize; 2];
    for n in 1..=2 {
        for a in SuperMatrix::all_strict(n, 3) {
            let t = triangular_product(&a, filtration_degree(&a), &oracle).unwrap();
            assert!(t.triangular, "{t:#?}");
            signs[usize::from(t.sign() == Some(-1))] += 1;
        }
    }
    println!("signs +1: {}, -1: {}", signs[0], signs[1]);
}

#[test]
fn triangular_products_n3() {
    let oracle = Oracle::new();
    for a in SuperMatrix::all_strict(3, 2) {
        let d = filtration_degree(&a);
        if d > 3 {
            continue;
        }
        let t = triangular_product(&a, d, &oracle).unwrap();
        assert!(t.triangular, "{t:#?}");
    }
}

#[test]
fn weight_shape_and_divided_powers() {
    let oracle = Oracle::new();
    for n in 1..=3 {
        let t = weight_shape_check(n, 3, &oracle).unwrap();
        assert!(t.cases > 0 && t.failures == 0, "n={n}: {t:?}");
        let d = divided_power_check(n, 4);
        assert_eq!(d.failures, 0, "n={n}");
    }
}

#[test]
fn pbw_images_independent() {
    let rep = pi_images_check(2, 3, 2);
    assert!(rep.passed(), "{rep:#?}");
    let wide = pbw_check(2, 3, 3);
    assert!(wide.independent(), "{wide:?}");
}
