//! Whole-basis checks of identities of `R` that are not structure-table axioms.

use num_bigint::BigUint;

use super::{antipode, coproduct_basis, factorial, mul, one, schur_dimension, Partition, SchurVector};
use crate::report::CheckReport;

/// `μ ∘ (1 ⊗ T) ∘ Δ = e ∘ e*` on every `s_λ` with `|λ| ≤ max_degree`.
pub fn verify_antipode(max_degree: usize) -> CheckReport {
    let check = format!("antipode identity up to degree {max_degree}");
    for lam in Partition::all_up_to(max_degree) {
        let mut total = SchurVector::zero();
        for ((a, b), c) in coproduct_basis(&lam).iter() {
            total.add_scaled(&mul(&SchurVector::basis(a.clone()), &antipode(&SchurVector::basis(b.clone()))), c);
        }
        let expected = if lam.is_empty() { one() } else { SchurVector::zero() };
        if total != expected {
            return CheckReport::fail(check, format!("s_{lam} gives {total}"));
        }
    }
    CheckReport::pass(check)
}

/// `Σ_{λ ⊢ n} (f^λ)² = n!` for `n ≤ max_n`.
pub fn verify_dimension_sums(max_n: usize) -> CheckReport {
    let check = format!("squared dimensions sum to n! up to n = {max_n}");
    for n in 0..=max_n {
        let sum: BigUint = Partition::all_of_size(n).iter().map(|l| schur_dimension(l).pow(2)).sum();
        if sum != factorial(n) {
            return CheckReport::fail(check, format!("n = {n}: {sum}"));
        }
    }
    CheckReport::pass(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_pass() {
        assert!(verify_antipode(4).passed());
        assert!(verify_dimension_sums(6).passed());
    }
}
