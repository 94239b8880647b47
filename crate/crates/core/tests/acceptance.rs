//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use qschur::blm::{self, filtration_degree, Suite};
use qschur::identities::{run_identity, REGISTRY};
use qschur::qschur::{formula_product, generator_key, left_mul, GeneratorShape, Oracle, QElement};
use qschur::scalars::GaussianRational;
use qschur::sergeev::SergeevElement;
use qschur::superindex::{count_matrices, SuperMatrix};
use qschur::symgroup::{d_of_matrix, triple_to_matrix, Composition, NatMatrix, Permutation};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn g(v: i64) -> GaussianRational {
    GaussianRational::from_int(v)
}

fn sergeev_relations() -> Verdict {
    let mut checks = 0;
    let mut bad = Vec::new();
    for r in 1..=5 {
        let s = |i| SergeevElement::s(i, r).unwrap();
        let c = |i| SergeevElement::c(i, r).unwrap();
        let one = SergeevElement::one(r);
        let mut eq = |a: SergeevElement, b: SergeevElement, what: &str| {
            checks += 1;
            if a != b {
                bad.push(format!("{what} r={r}"));
            }
        };
        for i in 1..r {
            eq(&s(i) * &s(i), one.clone(), "s_i^2");
            eq(&s(i) * &c(i), &c(i + 1) * &s(i), "s_i c_i");
            eq(&s(i) * &c(i + 1), &c(i) * &s(i), "s_i c_i+1");
            for j in 1..r {
                if i.abs_diff(j) == 1 {
                    eq(&(&s(i) * &s(j)) * &s(i), &(&s(j) * &s(i)) * &s(j), "braid");
                } else if i != j {
                    eq(&s(i) * &s(j), &s(j) * &s(i), "commuting s");
                }
            }
            for j in (1..=r).filter(|&j| j != i && j != i + 1) {
                eq(&s(i) * &c(j), &c(j) * &s(i), "s_i c_j");
            }
        }
        for i in 1..=r {
            eq(&c(i) * &c(i), SergeevElement::scalar(r, g(-1)), "c_i^2");
            for j in (1..=r).filter(|&j| j != i) {
                eq(&c(i) * &c(j), (&c(j) * &c(i)).scale(&g(-1)), "anticommuting c");
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{checks} relation instances"))
    } else {
        Err(format!("{} of {checks} failed: {:?}", bad.len(), &bad[..bad.len().min(5)]))
    }
}

fn identity_registry() -> Verdict {
    let (mut cases, mut bad) = (0, Vec::new());
    for id in REGISTRY {
        let rmax = if id.name.starts_with("xmu-") || id.name.starts_with("interval-") { 6 } else { 5 };
        let t = run_identity(id, 3, rmax, 1);
        cases += t.cases;
        if t.cases == 0 || t.failures > 0 || t.inadmissible > 0 {
            bad.push(format!("{} ({} failures of {})", t.name, t.failures + t.inadmissible, t.cases));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} identities, {cases} cases", REGISTRY.len()))
    } else {
        Err(bad.join(", "))
    }
}

fn d_matrix_brute_force() -> Verdict {
    let mut checked = 0;
    for n in 1..=3 {
        for r in 0..=6 {
            let perms = Permutation::all(r);
            for lam in Composition::all(n, r) {
                for mu in Composition::all(n, r) {
                    let mut shortest: BTreeMap<NatMatrix, Permutation> = BTreeMap::new();
                    for w in &perms {
                        let m = triple_to_matrix(&lam, w, &mu).map_err(|e| e.to_string())?;
                        let slot = shortest.entry(m).or_insert(*w);
                        if (w.length(), *w) < (slot.length(), *slot) {
                            *slot = *w;
                        }
                    }
                    for (m, best) in shortest {
                        checked += 1;
                        if d_of_matrix(&m) != best {
                            return Err(format!("{m:?}: got {:?}, shortest {best:?}", d_of_matrix(&m)));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checked} matrices"))
}

fn closed_forms() -> Verdict {
    let oracle = Oracle::new();
    let mut checked = 0;
    for n in 1..=3 {
        for r in 0..=4 {
            for a in SuperMatrix::all(n, r) {
                for shape in GeneratorShape::ALL {
                    for h in shape.rows(n) {
                        let Ok(x) = generator_key(shape, h, &a.ro()) else { continue };
                        let z = oracle.product(&x, &a).map_err(|e| format!("{shape} h={h} {a:?}: {e}"))?;
                        if left_mul(shape, h, &a).map_err(|e| e.to_string())? != z {
                            return Err(format!("{shape} h={h} A={a:?}"));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} products"))
}

fn basis_ranks() -> Verdict {
    let oracle = Oracle::new();
    for n in 1..=3 {
        for r in 0..=4 {
            let dim = count_matrices(n, r);
            let mut total = 0u128;
            for xi in Composition::all(n, r) {
                for mu in Composition::all(n, r) {
                    let (count, rank) = oracle.basis_rank(&xi, &mu);
                    if count != rank {
                        return Err(format!("T_M rank {rank} < {count} for {xi:?}, {mu:?}"));
                    }
                    total += rank as u128;
                }
            }
            if total != dim {
                return Err(format!("T_M rank {total} != {dim} at n={n} r={r}"));
            }
            let b = blm::blm_basis_rank(n, r);
            if !b.is_basis() {
                return Err(format!("spanning set at n={n} r={r}: {b:?}"));
            }
        }
    }
    Ok("T_M and spanning-set ranks equal |M(n,r)| for n <= 3, r <= 4".into())
}

fn relation_suites() -> Verdict {
    let mut instances = 0;
    for suite in [Suite::Level, Suite::Family] {
        for n in 1..=3 {
            let rep = blm::check_relations(suite, n, 4);
            instances += rep.instances;
            if let Some(f) = rep.failures.first() {
                return Err(format!("{suite:?} n={n}: {} failures, first {} at r={}", rep.failures.len(), f.relation, f.r));
            }
        }
    }
    Ok(format!("{instances} relation instances"))
}

fn triangular() -> Verdict {
    let oracle = Oracle::new();
    let (mut count, mut neg) = (0, 0);
    for n in 1..=2 {
        for a in SuperMatrix::all_strict(n, 3) {
            let t = blm::triangular_product(&a, filtration_degree(&a), &oracle).map_err(|e| format!("{a:?}: {e}"))?;
            if !t.triangular {
                return Err(format!("{a:?}: leading {} with {} other terms", t.leading, t.lower.len()));
            }
            count += 1;
            neg += usize::from(t.sign() == Some(-1));
        }
    }
    Ok(format!("{count} matrices, {neg} with leading sign -1"))
}

fn pbw() -> Verdict {
    let rep = blm::pbw_check(2, 3, 2);
    if rep.independent() {
        Ok(format!("{} images, rank {}", rep.count, rep.rank))
    } else {
        Err(format!("{} images, rank {}", rep.count, rep.rank))
    }
}

fn spot_identity() -> Verdict {
    let x = SuperMatrix::from_rows(&[vec![0, 0], vec![0, 0]], &[vec![0, 1], vec![0, 0]]).unwrap();
    let a = SuperMatrix::from_rows(&[vec![0, 0], vec![0, 0]], &[vec![0, 0], vec![1, 0]]).unwrap();
    let want = QElement::phi(&SuperMatrix::from_rows(&[vec![1, 0], vec![0, 0]], &[vec![0, 0], vec![0, 0]]).unwrap()).scale(&g(-1));
    let o = Oracle::new().product(&x, &a).map_err(|e| e.to_string())?;
    let f = formula_product(&x, &a).map_err(|e| e.to_string())?;
    if o == want && f == want {
        Ok("both engines give -φ(E11|O)".into())
    } else {
        Err(format!("oracle {o:?}, formula {f:?}"))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Sergeev defining relations, r <= 5", sergeev_relations),
        ("identity registry on full grids", identity_registry),
        ("d_A is the shortest double coset element, |A| <= 6, n <= 3", d_matrix_brute_force),
        ("closed-form products equal composition, n <= 3, r <= 4", closed_forms),
        ("basis ranks, n <= 3, r <= 4", basis_ranks),
        ("level and family relation suites, n <= 3, r <= 4", relation_suites),
        ("triangular products, |A| <= 3, n <= 2", triangular),
        ("PBW images independent, |A| <= 2, n = 2, R = 3", pbw),
        ("spot product in Q(2,1)", spot_identity),
    ];
    let mut failed = 0;
    for (k, (what, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = check();
        let secs = t.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {}: PASS {what}: {detail} ({secs:.1}s)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {what}: {detail} ({secs:.1}s)", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
