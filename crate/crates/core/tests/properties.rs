use graver_core::exact::{IntMatrix, IntVector};
use graver_core::graver::{graver_basis, graver_basis_using, kernel_vectors_in_box, Algorithm, GraverBudget};
use graver_core::io::relation_from_json;
use graver_core::lift::{base_relation_a34, base_relation_cor2, check_conditions, lift, lift_chain_steps};
use graver_core::nfold::{assemble_mfold, BrickVector};
use graver_core::relation::{
    canonicalize_for_lift, lemma2_bound, verify_membership, verify_relation, PrimitiveRelation,
};
use graver_core::reproduce::{embedded_golden, GOLDEN_NAMES};
use graver_core::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, cols), rows).prop_map(|r| IntMatrix::from_rows(&r))
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=2, 2usize..=4).prop_flat_map(|(r, c)| matrix(r, c.max(r + 1)))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn golden(i: usize) -> PrimitiveRelation {
    relation_from_json(embedded_golden(GOLDEN_NAMES[i]).unwrap()).unwrap()
}

fn a3(m: usize) -> IntMatrix {
    assemble_mfold(&IntMatrix::from_rows(&[[1, 1, 1]]), m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engines_agree_and_basis_saturates_kernel(m in small_matrix()) {
        let budget = GraverBudget::default();
        let a = graver_basis_using(&m, &budget, Algorithm::ProjectAndLift).unwrap();
        let b = graver_basis_using(&m, &budget, Algorithm::Completion).unwrap();
        prop_assert_eq!(a.elements(), b.elements());
        prop_assert!(a.is_sign_symmetric());
        prop_assert!(a.is_minimal());
        for v in a.elements() {
            prop_assert!(m.annihilates(v));
        }
        for v in kernel_vectors_in_box(&m, 2, 1_000_000).unwrap() {
            let parts = a.decompose(&v);
            prop_assert!(parts.is_some(), "{} has no conformal decomposition", v);
        }
    }

    #[test]
    fn column_permutation_permutes_basis((m, perm) in small_matrix().prop_flat_map(|m| {
        let n = m.cols();
        (Just(m), permutation(n))
    })) {
        // column j of the permuted matrix is column perm[j] of m
        let rows: Vec<Vec<BigInt>> = m.to_rows().into_iter().map(|r| perm.iter().map(|&p| r[p].clone()).collect()).collect();
        let pm = IntMatrix::from_big_rows(rows, m.cols()).unwrap();
        let mut expected: Vec<IntVector> = graver_basis(&m)
            .unwrap()
            .elements()
            .iter()
            .map(|v| IntVector(perm.iter().map(|&p| v.0[p].clone()).collect()))
            .collect();
        expected.sort();
        let actual = graver_basis(&pm).unwrap();
        prop_assert_eq!(actual.elements(), &expected[..]);
    }

    #[test]
    fn brick_operations_stay_in_kernel(m in 2usize..=4, pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let basis = graver_basis(&a3(m)).unwrap();
        let x = BrickVector::from_flat(basis.elements()[pick.index(basis.len())].clone(), 3).unwrap();
        prop_assert!(a3(m + 1).annihilates(&x.append_zero_brick().to_flat()));
        prop_assert!(a3(m + 1).annihilates(&x.move_last_brick().to_flat()));
        prop_assert!(a3(m - 1).annihilates(&x.merge_last_two_bricks().unwrap().to_flat()));
        let mut perm: Vec<usize> = (0..m).collect();
        perm.rotate_left((seed % m as u64) as usize);
        let p = x.permute_bricks(&perm).unwrap();
        prop_assert!(a3(m).annihilates(&p.to_flat()));
        prop_assert_eq!(p.type_of(), x.type_of());
    }

    #[test]
    fn relation_checks_ignore_signs_and_brick_order(
        (i, flips, perm) in (0usize..5).prop_flat_map(|i| {
            let rel = golden(i);
            (Just(i), prop::collection::vec(any::<bool>(), rel.len()), permutation(rel.copies()))
        })
    ) {
        let rel = golden(i);
        let sign = |f: bool| BigInt::from(if f { -1 } else { 1 });
        let elements = rel.elements().iter().zip(&flips).map(|(x, &f)| x.scale(&sign(f)).permute_bricks(&perm).unwrap()).collect();
        let coefficients = rel.coefficients().iter().zip(&flips).map(|(h, &f)| h * sign(f)).collect();
        let variant = PrimitiveRelation::new(rel.base_matrix().clone(), elements, coefficients).unwrap();
        prop_assert!(verify_relation(&variant).is_valid());
        prop_assert_eq!(lemma2_bound(&variant), lemma2_bound(&rel));
        let normalized = variant.normalize_signs();
        prop_assert!(normalized.coefficients().iter().all(|h| h > &BigInt::from(0)));
        prop_assert!(verify_relation(&normalized).is_valid());
        prop_assert_eq!(lemma2_bound(&normalized), lemma2_bound(&rel));
    }

    #[test]
    fn lift_is_sound_closed_and_merges_back(
        (step, l, brick_perm, shuffle) in (0usize..3, prop::sample::select(vec![0usize, 2])).prop_flat_map(|(step, l)| {
            let m = 4 + step;
            (Just(step), Just(l), permutation(m), permutation(6 + 2 * step))
        })
    ) {
        let rel = lift_chain_steps(&base_relation_a34(), 2, 4 + step, None).unwrap().pop().unwrap();
        // scramble, then ask canonicalization to recover a lifting form for x^0
        let scrambled = rel.permute_bricks(&brick_perm).unwrap();
        let order: Vec<usize> = std::iter::once(0).chain(shuffle.iter().map(|&i| i + 1)).collect();
        let scrambled = scrambled.reorder(&order).unwrap();
        let canon = match canonicalize_for_lift(&scrambled, 0, l) {
            Ok((c, _)) => c,
            Err(Error::NotCanonicalizable(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(lemma2_bound(&canon), lemma2_bound(&rel));
        let cert = check_conditions(&canon, l);
        if !cert.passes() {
            return Ok(());
        }
        let lifted = lift(&canon, &cert).unwrap();
        prop_assert!(verify_relation(&lifted).is_valid());

        let again = check_conditions(&lifted, l);
        prop_assert!(again.passes(), "{}", again);
        prop_assert_eq!(&again.s, &cert.s);

        let k = canon.len() - 1;
        for i in 0..=k {
            prop_assert_eq!(&lifted.elements()[i].merge_last_two_bricks().unwrap(), &canon.elements()[i]);
        }
        let mut merged = BrickVector::zeros(canon.copies(), 3);
        for y in &lifted.elements()[k + 1..] {
            merged = merged.add(&y.merge_last_two_bricks().unwrap()).unwrap();
        }
        let factor = BigInt::from(cert.g as i64 - 2) * if cert.s < BigInt::from(0) { 1 } else { -1 };
        prop_assert_eq!(merged, canon.elements()[0].scale(&factor));

        if lifted.copies() <= 7 {
            let membership = verify_membership(&lifted).unwrap();
            prop_assert!(membership.is_valid() && !membership.has_inconclusive());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cyclic_base_relations_lift_soundly(row in prop::collection::vec(1i64..=3, 3..=4)) {
        let a = IntMatrix::from_rows(&[row]);
        let base = match base_relation_cor2(&a) {
            Ok(b) => b,
            Err(Error::NoCircuitOfSupport3 { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(verify_relation(&base).is_valid());
        let g = base.copies();
        let chain = lift_chain_steps(&base, 0, g + 2, None).unwrap();
        for rel in &chain {
            prop_assert!(verify_relation(rel).is_valid());
            prop_assert_eq!(check_conditions(rel, 0).s, BigInt::from(-1));
        }
    }
}

#[test]
fn dependency_space_of_goldens_is_one_dimensional() {
    for i in 0..GOLDEN_NAMES.len() {
        let rel = golden(i);
        let deps = rel.dependencies();
        assert_eq!(deps.len(), 1);
        let h = rel.coefficients();
        let d = &deps[0].0;
        assert!((0..h.len()).all(|j| &d[j] * &h[0] == &d[0] * &h[j]));
    }
}
