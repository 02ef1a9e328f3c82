//! The PSH-algebra `R` of symmetric functions in the Schur basis.
//!
//! Basis elements `s_λ` are indexed by [`Partition`]s and correspond to the
//! irreducible representations of `S_n`. Multiplication is the
//! Littlewood–Richardson product, comultiplication its adjoint, and the
//! Hopf power maps `Ψ^k` are iterated comultiplication followed by iterated
//! multiplication.

mod characters;
mod lr;
mod partition;
mod text;
mod verify;

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

pub use characters::sn_character;
pub use lr::lr_coeff;
pub use partition::{Partition, PartitionError};
pub use text::{schur_from_json, schur_to_json, ParseVectorError};
pub use verify::{verify_antipode, verify_dimension_sums};
pub(crate) use text::{parse_tensor_terms, write_terms};

use crate::lincomb::LinComb;
use crate::memo::Memo;
use crate::tensor_hopf::GradedVector;

/// An element of `R`: a finite integer combination of Schur functions.
pub type SchurVector = LinComb<Partition>;

/// `s_λ` for the given parts.
///
/// # Panics
/// If `parts` is not a partition.
pub fn s(parts: &[usize]) -> SchurVector {
    SchurVector::basis(Partition::new(parts.to_vec()).expect("invalid partition"))
}

/// The unit `1 = s_∅`.
pub fn one() -> SchurVector {
    SchurVector::basis(Partition::empty())
}

/// The class `x_n = s_(n)` of the trivial representation of `S_n`.
pub fn trivial_class(n: usize) -> SchurVector {
    SchurVector::basis(Partition::row(n))
}

/// Degree-`n` component.
pub fn homogeneous(a: &SchurVector, n: usize) -> SchurVector {
    a.filter(|p| p.size() == n)
}

static PRODUCT: Memo<(Partition, Partition), SchurVector> = Memo::new();
static COPRODUCT: Memo<Partition, LinComb<(Partition, Partition)>> = Memo::new();
static ITERATED_COPRODUCT: Memo<(usize, Partition), LinComb<Vec<Partition>>> = Memo::new();
static HOPF_POWER: Memo<(u64, Partition), SchurVector> = Memo::new();

/// `s_mu · s_nu`, enumerating every `λ ⊇ μ, ν` of the right size.
pub fn mul_basis(mu: &Partition, nu: &Partition) -> Arc<SchurVector> {
    PRODUCT.get_or_compute(&(mu.clone(), nu.clone()), || {
        let n = mu.size() + nu.size();
        let mut out = SchurVector::zero();
        for lam in Partition::all_of_size(n) {
            if !lam.contains(mu) || !lam.contains(nu) {
                continue;
            }
            let c = lr_coeff(&lam, mu, nu);
            if c > 0 {
                out.add_term(lam, c);
            }
        }
        out
    })
}

pub fn mul(a: &SchurVector, b: &SchurVector) -> SchurVector {
    a.bilinear(b, |mu, nu| (*mul_basis(mu, nu)).clone())
}

/// `Δ(s_λ) = Σ c^λ_{μν} s_μ ⊗ s_ν` as pairs.
pub fn coproduct_basis(lam: &Partition) -> Arc<LinComb<(Partition, Partition)>> {
    COPRODUCT.get_or_compute(lam, || {
        let n = lam.size();
        let mut out = LinComb::zero();
        for m in 0..=n {
            for mu in Partition::all_of_size(m) {
                if !lam.contains(&mu) {
                    continue;
                }
                for nu in Partition::all_of_size(n - m) {
                    let c = lr_coeff(lam, &mu, &nu);
                    if c > 0 {
                        out.add_term((mu.clone(), nu), c);
                    }
                }
            }
        }
        out
    })
}

pub fn coproduct(a: &SchurVector) -> LinComb<(Partition, Partition)> {
    a.apply(|lam| (*coproduct_basis(lam)).clone())
}

/// Comultiplication as an arity-2 graded vector.
pub fn comul(a: &SchurVector) -> GradedVector {
    GradedVector::from_lincomb(2, coproduct(a).map_basis(|(x, y)| vec![x.clone(), y.clone()]))
}

/// Inner product declaring the Schur basis orthonormal.
pub fn inner(a: &SchurVector, b: &SchurVector) -> BigInt {
    a.inner(b)
}

/// Counit: the coefficient of the unit.
pub fn counit(a: &SchurVector) -> BigInt {
    a.coeff(&Partition::empty())
}

/// Antipode `T(s_λ) = (-1)^{|λ|} s_{λ'}`.
pub fn antipode(a: &SchurVector) -> SchurVector {
    let mut out = SchurVector::zero();
    for (lam, c) in a {
        let sign = if lam.size() % 2 == 0 { c.clone() } else { -c };
        out.add_term(lam.conjugate(), sign);
    }
    out
}

/// `Δ^{(k)}(s_λ)` as `k`-tuples, with `Δ^{(0)} = e*`, `Δ^{(1)} = id` and
/// `Δ^{(k)} = (Δ^{(k-1)} ⊗ 1) ∘ Δ`.
pub fn iterated_coproduct_basis(k: usize, lam: &Partition) -> Arc<LinComb<Vec<Partition>>> {
    ITERATED_COPRODUCT.get_or_compute(&(k, lam.clone()), || match k {
        0 => {
            if lam.is_empty() {
                LinComb::basis(Vec::new())
            } else {
                LinComb::zero()
            }
        }
        1 => LinComb::basis(vec![lam.clone()]),
        _ => {
            let mut out = LinComb::zero();
            for ((left, right), c) in coproduct_basis(lam).iter() {
                for (tuple, d) in iterated_coproduct_basis(k - 1, left).iter() {
                    let mut t = tuple.clone();
                    t.push(right.clone());
                    out.add_term(t, c * d);
                }
            }
            out
        }
    })
}

pub fn iterated_coproduct(k: usize, a: &SchurVector) -> LinComb<Vec<Partition>> {
    a.apply(|lam| (*iterated_coproduct_basis(k, lam)).clone())
}

/// `μ^{(k)}` on a combination of `k`-tuples; `μ^{(0)}` is the unit map.
pub fn iterated_product(tuples: &LinComb<Vec<Partition>>) -> SchurVector {
    tuples.apply(|t| {
        t.iter().fold(one(), |acc, lam| mul(&acc, &SchurVector::basis(lam.clone())))
    })
}

/// `Ψ^k(s_λ)`, using `μ^{(k)} ∘ Δ^{(k)} = μ ∘ (μ^{(k-1)} Δ^{(k-1)} ⊗ 1) ∘ Δ`.
pub fn hopf_power_basis(k: u64, lam: &Partition) -> Arc<SchurVector> {
    HOPF_POWER.get_or_compute(&(k, lam.clone()), || match k {
        0 => {
            if lam.is_empty() {
                one()
            } else {
                SchurVector::zero()
            }
        }
        1 => SchurVector::basis(lam.clone()),
        _ => {
            let mut out = SchurVector::zero();
            for ((left, right), c) in coproduct_basis(lam).iter() {
                let head = hopf_power_basis(k - 1, left);
                for (mu, d) in head.iter() {
                    out.add_scaled(&mul_basis(mu, right), &(c * d));
                }
            }
            out
        }
    })
}

/// The Hopf `k`-th power map `Ψ^k`; `Ψ^0 = e ∘ e*`, `Ψ^1 = id`.
pub fn hopf_power(k: u64, a: &SchurVector) -> SchurVector {
    a.apply(|lam| (*hopf_power_basis(k, lam)).clone())
}

/// `f^λ`, the dimension of the irreducible `S_n`-representation, by the hook-length formula.
pub fn schur_dimension(lam: &Partition) -> BigUint {
    let num: BigUint = (1..=lam.size()).map(BigUint::from).product();
    let den: BigUint = lam.hook_lengths().into_iter().map(BigUint::from).product();
    num / den
}

/// The Schur basis of `R` in degrees `0..=max_degree`.
pub fn basis_up_to(max_degree: usize) -> Vec<Partition> {
    Partition::all_up_to(max_degree)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}
