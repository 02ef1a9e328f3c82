use std::collections::BTreeMap;

use kpsh_core::lincomb::LinComb;
use kpsh_core::symfunc::{
    antipode, comul, coproduct, coproduct_basis, counit, factorial, hopf_power, inner, lr_coeff, mul, mul_basis, one,
    s, schur_dimension, Partition, SchurVector,
};
use kpsh_core::tensor_hopf::tensor_mul;
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn partition_up_to(n: usize) -> impl Strategy<Value = Partition> {
    let all = Partition::all_up_to(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn basis(p: &Partition) -> SchurVector {
    SchurVector::basis(p.clone())
}

/// Small random element of `R` with degrees up to `n`.
fn vector_up_to(n: usize) -> impl Strategy<Value = SchurVector> {
    prop::collection::vec((partition_up_to(n), -3i64..=3), 1..4)
        .prop_map(|terms| LinComb::from_terms(terms.into_iter().map(|(p, c)| (p, BigInt::from(c)))))
}

/// Standard Young tableaux counted by removing outer corners.
fn count_standard_tableaux(parts: &[usize], memo: &mut BTreeMap<Vec<usize>, BigUint>) -> BigUint {
    if parts.iter().all(|&x| x == 0) {
        return BigUint::from(1u8);
    }
    if let Some(v) = memo.get(parts) {
        return v.clone();
    }
    let mut total = BigUint::from(0u8);
    for i in 0..parts.len() {
        let below = parts.get(i + 1).copied().unwrap_or(0);
        if parts[i] > below {
            let mut smaller = parts.to_vec();
            smaller[i] -= 1;
            total += count_standard_tableaux(&smaller, memo);
        }
    }
    memo.insert(parts.to_vec(), total.clone());
    total
}

/// `λ/μ` is a horizontal strip of size `r`.
fn horizontal_strip(lam: &Partition, mu: &Partition, r: usize) -> bool {
    lam.contains(mu)
        && lam.size() == mu.size() + r
        && (0..lam.len()).all(|i| lam.part(i + 1) <= mu.part(i))
}

#[test]
fn dimensions_square_sum_to_factorial() {
    let mut memo = BTreeMap::new();
    for n in 0..=8 {
        let mut sum = BigUint::from(0u8);
        for lam in Partition::all_of_size(n) {
            let d = schur_dimension(&lam);
            assert_eq!(d, count_standard_tableaux(lam.parts(), &mut memo), "{lam}");
            sum += &d * &d;
        }
        assert_eq!(sum, factorial(n), "n = {n}");
    }
}

#[test]
fn antipode_identity() {
    for lam in Partition::all_up_to(6) {
        let mut total = SchurVector::zero();
        for ((a, b), c) in coproduct_basis(&lam).iter() {
            total.add_scaled(&mul(&basis(a), &antipode(&basis(b))), c);
        }
        let expected = if lam.is_empty() { one() } else { SchurVector::zero() };
        assert_eq!(total, expected, "{lam}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pieri_rule(mu in partition_up_to(5), r in 0usize..4) {
        let product = mul_basis(&mu, &Partition::row(r));
        for lam in Partition::all_of_size(mu.size() + r) {
            let expected = i64::from(horizontal_strip(&lam, &mu, r));
            prop_assert_eq!(product.coeff(&lam), BigInt::from(expected), "{} in s_{} s_({})", lam, mu, r);
        }
    }

    #[test]
    fn product_commutes_and_associates(a in partition_up_to(3), b in partition_up_to(3), c in partition_up_to(3)) {
        let (a, b, c) = (basis(&a), basis(&b), basis(&c));
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
    }

    #[test]
    fn coproduct_cocommutes_and_coassociates(lam in partition_up_to(6)) {
        let cop = coproduct_basis(&lam);
        for ((a, b), c) in cop.iter() {
            prop_assert_eq!(&cop.coeff(&(b.clone(), a.clone())), c);
        }
        let mut left: LinComb<(Partition, Partition, Partition)> = LinComb::zero();
        let mut right = LinComb::zero();
        for ((a, b), c) in cop.iter() {
            for ((x, y), d) in coproduct_basis(a).iter() {
                left.add_term((x.clone(), y.clone(), b.clone()), c * d);
            }
            for ((x, y), d) in coproduct_basis(b).iter() {
                right.add_term((a.clone(), x.clone(), y.clone()), c * d);
            }
        }
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_and_coproduct_are_adjoint(mu in partition_up_to(3), nu in partition_up_to(2), lam in partition_up_to(5)) {
        let product = mul_basis(&mu, &nu);
        let cop = coproduct_basis(&lam);
        prop_assert_eq!(product.coeff(&lam), cop.coeff(&(mu.clone(), nu.clone())));
        prop_assert_eq!(product.coeff(&lam), BigInt::from(lr_coeff(&lam, &mu, &nu)));
    }

    #[test]
    fn structure_constants_are_positive(mu in partition_up_to(3), nu in partition_up_to(3), lam in partition_up_to(6)) {
        prop_assert!(mul_basis(&mu, &nu).is_positive());
        prop_assert!(coproduct_basis(&lam).is_positive());
    }

    #[test]
    fn hopf_axiom(a in partition_up_to(3), b in partition_up_to(2)) {
        let (a, b) = (basis(&a), basis(&b));
        let lhs = comul(&mul(&a, &b));
        let rhs = tensor_mul(&comul(&a), &comul(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn counit_and_coproduct(a in vector_up_to(4)) {
        let mut left = SchurVector::zero();
        let mut right = SchurVector::zero();
        for ((x, y), c) in coproduct(&a).iter() {
            left.add_scaled(&basis(y), &(c * counit(&basis(x))));
            right.add_scaled(&basis(x), &(c * counit(&basis(y))));
        }
        prop_assert_eq!(&left, &a);
        prop_assert_eq!(&right, &a);
    }

    #[test]
    fn hopf_power_is_an_algebra_morphism(k in 0u64..=4, a in vector_up_to(2), b in vector_up_to(2)) {
        let lhs = hopf_power(k, &mul(&a, &b));
        let rhs = mul(&hopf_power(k, &a), &hopf_power(k, &b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hopf_power_is_self_adjoint(k in 0u64..=4, a in vector_up_to(4), b in vector_up_to(4)) {
        prop_assert_eq!(inner(&hopf_power(k, &a), &b), inner(&a, &hopf_power(k, &b)));
    }

    #[test]
    fn hopf_power_two_from_coproduct(a in vector_up_to(4)) {
        let mut direct = SchurVector::zero();
        for ((x, y), c) in coproduct(&a).iter() {
            direct.add_scaled(&mul(&basis(x), &basis(y)), c);
        }
        prop_assert_eq!(hopf_power(2, &a), direct);
    }
}

#[test]
fn hopf_square_of_two_row() {
    assert_eq!(hopf_power(2, &s(&[2])), &s(&[2]).scaled(&3.into()) + &s(&[1, 1]));
}
