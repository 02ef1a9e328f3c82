//! The algebraic identities satisfied by matrix Hopf maps, checked on whole
//! truncated bases of `R^⊗k`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{psi_matrix, tensor_basis, tensor_coproduct, tensor_mul, GradedVector, HopfMatrix, TensorError};
use crate::report::{combine, CheckReport};
use crate::symfunc::{self, Partition, SchurVector};

fn basis(tuple: &[Partition]) -> GradedVector {
    GradedVector::basis(tuple.to_vec())
}

/// `μ^{(n)} ∘ μ^{*(n)}` on a basis tensor, from the componentwise coproduct
/// and product of `R^⊗k`.
fn iterated_hopf_power(n: u64, tuple: &[Partition]) -> Result<GradedVector, TensorError> {
    let v = basis(tuple);
    match n {
        0 => Ok(if tuple.iter().all(Partition::is_empty) { v } else { GradedVector::zero(tuple.len()) }),
        1 => Ok(v),
        _ => {
            let mut out = GradedVector::zero(tuple.len());
            for ((x, y), c) in tensor_coproduct(&v).iter() {
                let term = tensor_mul(&iterated_hopf_power(n - 1, x)?, &basis(y))?;
                out = out.add(&GradedVector::from_lincomb(tuple.len(), term.terms().scaled(c)))?;
            }
            Ok(out)
        }
    }
}

/// For `M, M'` of shape `l × k` and `N` of shape `k × j`, on all basis
/// tensors of degree at most `degree`:
/// `(Ψ^M)* = Ψ^{Mᵀ}`, `Ψ^M Ψ^N = Ψ^{MN}`,
/// `μ (Ψ^M ⊗ Ψ^{M'}) μ* = Ψ^{M + M'}` and `Ψ^{sI} = μ^{(s)} μ^{*(s)}`.
pub fn verify_matrix_identities(
    m: &HopfMatrix,
    m2: &HopfMatrix,
    n: &HopfMatrix,
    scalar: u64,
    degree: usize,
) -> Result<Vec<CheckReport>, TensorError> {
    let (l, k) = (m.rows(), m.cols());
    let shape = format!("{l}×{k}");
    let source = tensor_basis(k, degree);
    let images = source.iter().map(|a| psi_matrix(m, &basis(a))).collect::<Result<Vec<_>, _>>()?;

    let mt = m.transpose();
    let mut adjoint = None;
    'outer: for b in tensor_basis(l, degree) {
        let back = psi_matrix(&mt, &basis(&b))?;
        for (a, image) in source.iter().zip(&images) {
            if image.coeff(&b) != back.coeff(a) {
                adjoint = Some(format!("<Ψ^M {a:?}, {b:?}> = {} but <{a:?}, Ψ^Mᵀ {b:?}> = {}", image.coeff(&b), back.coeff(a)));
                break 'outer;
            }
        }
    }

    let mn = m.matmul(n)?;
    let mut composition = None;
    for v in tensor_basis(n.cols(), degree) {
        if psi_matrix(m, &psi_matrix(n, &basis(&v))?)? != psi_matrix(&mn, &basis(&v))? {
            composition = Some(format!("{v:?}"));
            break;
        }
    }

    let sum = m.add(m2)?;
    let mut convolution = None;
    for v in &source {
        let mut convolved = GradedVector::zero(l);
        for ((x, y), c) in tensor_coproduct(&basis(v)).iter() {
            let term = tensor_mul(&psi_matrix(m, &basis(x))?, &psi_matrix(m2, &basis(y))?)?;
            convolved = convolved.add(&GradedVector::from_lincomb(l, term.terms().scaled(c)))?;
        }
        if convolved != psi_matrix(&sum, &basis(v))? {
            convolution = Some(format!("{v:?}"));
            break;
        }
    }

    let diagonal = HopfMatrix::scalar(scalar, k);
    let mut power = None;
    for v in &source {
        if psi_matrix(&diagonal, &basis(v))? != iterated_hopf_power(scalar, v)? {
            power = Some(format!("{v:?}"));
            break;
        }
    }

    Ok(vec![
        CheckReport::from_witness(format!("transpose is adjoint for {shape}"), adjoint),
        CheckReport::from_witness(format!("composition is the matrix product for {shape} · {}×{}", n.rows(), n.cols()), composition),
        CheckReport::from_witness(format!("convolution is the matrix sum for {shape}"), convolution),
        CheckReport::from_witness(format!("Ψ^({scalar}I) is the Hopf power on R^⊗{k}"), power),
    ])
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, max_entry: u64) -> HopfMatrix {
    HopfMatrix::new((0..rows).map(|_| (0..cols).map(|_| rng.random_range(0..=max_entry)).collect()).collect())
        .expect("entries are nonnegative")
}

/// [`verify_matrix_identities`] on `instances` seeded random instances with
/// dimensions at most 3 and entries at most 3.
pub fn verify_random_matrix_identities(instances: usize, seed: u64, degree: usize) -> Result<CheckReport, TensorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::new();
    for _ in 0..instances {
        let (l, k, j) = (rng.random_range(1..=3), rng.random_range(1..=3), rng.random_range(1..=3));
        let m = random_matrix(&mut rng, l, k, 3);
        let m2 = random_matrix(&mut rng, l, k, 3);
        let n = random_matrix(&mut rng, k, j, 3);
        let scalar = rng.random_range(0..=3);
        let reports = verify_matrix_identities(&m, &m2, &n, scalar, degree)?;
        if let Some(bad) = reports.iter().find(|r| !r.passed()) {
            let witness = format!("{}: {}; M = {:?}", bad.check, bad.witness.clone().unwrap_or_default(), m.entries());
            return Ok(CheckReport::fail(format!("matrix Hopf map identities up to degree {degree}"), witness));
        }
        parts.extend(reports);
    }
    Ok(combine(format!("matrix Hopf map identities up to degree {degree}"), &parts)
        .with_note(format!("{instances} instances, seed {seed}")))
}

/// `Ψ^k Ψ^l = Ψ^{kl}` and `μ (Ψ^k ⊗ Ψ^l) Δ = Ψ^{k+l}` on `R` for
/// `k, l ≤ max_power` and degrees at most `degree`.
pub fn verify_hopf_power_identities(max_power: u64, degree: usize) -> CheckReport {
    let check = format!("Hopf powers compose and convolve for k, l ≤ {max_power} up to degree {degree}");
    for lam in Partition::all_up_to(degree) {
        let v = SchurVector::basis(lam.clone());
        for k in 0..=max_power {
            for l in 0..=max_power {
                if symfunc::hopf_power(k, &symfunc::hopf_power(l, &v)) != symfunc::hopf_power(k * l, &v) {
                    return CheckReport::fail(check, format!("Ψ^{k} Ψ^{l} on s_{lam}"));
                }
                let mut convolved = SchurVector::zero();
                for ((x, y), c) in symfunc::coproduct(&v).iter() {
                    let x = symfunc::hopf_power(k, &SchurVector::basis(x.clone()));
                    let y = symfunc::hopf_power(l, &SchurVector::basis(y.clone()));
                    convolved.add_scaled(&symfunc::mul(&x, &y), c);
                }
                if convolved != symfunc::hopf_power(k + l, &v) {
                    return CheckReport::fail(check, format!("μ(Ψ^{k} ⊗ Ψ^{l})Δ on s_{lam}"));
                }
            }
        }
    }
    CheckReport::pass(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_instance_passes() {
        let m = HopfMatrix::new(vec![vec![1, 2], vec![0, 1]]).unwrap();
        let m2 = HopfMatrix::new(vec![vec![0, 1], vec![3, 0]]).unwrap();
        let n = HopfMatrix::new(vec![vec![2], vec![1]]).unwrap();
        for rep in verify_matrix_identities(&m, &m2, &n, 2, 3).unwrap() {
            assert!(rep.passed(), "{rep}");
        }
        assert!(verify_hopf_power_identities(2, 3).passed());
    }

    #[test]
    fn random_instances_pass() {
        let rep = verify_random_matrix_identities(3, 1, 2).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}
