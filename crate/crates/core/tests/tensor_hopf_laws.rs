use std::sync::Arc;

use kpsh_core::lincomb::LinComb;
use kpsh_core::symfunc::{coproduct, hopf_power, mul, Partition, SchurVector};
use kpsh_core::tensor_hopf::{
    decompose_module, psi_matrix, tensor_basis, tensor_coproduct, tensor_hopf_power, tensor_mul, verify_skew_properties,
    GradedVector, HopfMatrix, PshAlgebra, PshModule,
};
use num_bigint::BigInt;
use proptest::prelude::*;

const DEGREE: usize = 3;

fn hopf_matrix(rows: usize, cols: usize) -> impl Strategy<Value = HopfMatrix> {
    prop::collection::vec(prop::collection::vec(0u64..=3, cols), rows).prop_map(|e| HopfMatrix::new(e).unwrap())
}

fn any_hopf_matrix() -> impl Strategy<Value = HopfMatrix> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| hopf_matrix(r, c))
}

fn basis_vector(tuple: &[Partition]) -> GradedVector {
    GradedVector::basis(tuple.to_vec())
}

/// `μ^{(n)} ∘ μ^{*(n)}` on `R^⊗k`, built from the componentwise coproduct and product.
fn hopf_power_by_definition(n: u64, v: &GradedVector) -> GradedVector {
    match n {
        0 => {
            let unit: Vec<Partition> = vec![Partition::empty(); v.arity()];
            GradedVector::from_lincomb(v.arity(), LinComb::term(unit.clone(), v.coeff(&unit)))
        }
        1 => v.clone(),
        _ => {
            let mut out = GradedVector::zero(v.arity());
            for ((x, y), c) in tensor_coproduct(v).iter() {
                let head = hopf_power_by_definition(n - 1, &basis_vector(x));
                let term = tensor_mul(&head, &basis_vector(y)).unwrap();
                let scaled = GradedVector::from_lincomb(v.arity(), term.terms().scaled(c));
                out = out.add(&scaled).unwrap();
            }
            out
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn transpose_is_adjoint(m in any_hopf_matrix()) {
        let (l, k) = (m.rows(), m.cols());
        let mt = m.transpose();
        let forward: Vec<(Vec<Partition>, GradedVector)> = tensor_basis(k, DEGREE)
            .into_iter()
            .map(|a| { let img = psi_matrix(&m, &basis_vector(&a)).unwrap(); (a, img) })
            .collect();
        let backward: Vec<(Vec<Partition>, GradedVector)> = tensor_basis(l, DEGREE)
            .into_iter()
            .map(|b| { let img = psi_matrix(&mt, &basis_vector(&b)).unwrap(); (b, img) })
            .collect();
        for (a, image_a) in &forward {
            for (b, image_b) in &backward {
                prop_assert_eq!(image_a.coeff(b), image_b.coeff(a), "a = {:?}, b = {:?}", a, b);
            }
        }
    }

    #[test]
    fn composition_is_matrix_product((m, n) in (1usize..=3, 1usize..=3, 1usize..=3)
        .prop_flat_map(|(l, k, j)| (hopf_matrix(l, k), hopf_matrix(k, j))))
    {
        let mn = m.matmul(&n).unwrap();
        for v in tensor_basis(n.cols(), DEGREE) {
            let v = basis_vector(&v);
            let composed = psi_matrix(&m, &psi_matrix(&n, &v).unwrap()).unwrap();
            prop_assert_eq!(composed, psi_matrix(&mn, &v).unwrap());
        }
    }

    #[test]
    fn convolution_is_matrix_sum((m1, m2) in (1usize..=3, 1usize..=3)
        .prop_flat_map(|(l, k)| (hopf_matrix(l, k), hopf_matrix(l, k))))
    {
        let sum = m1.add(&m2).unwrap();
        for v in tensor_basis(m1.cols(), DEGREE) {
            let v = basis_vector(&v);
            let mut convolved = GradedVector::zero(m1.rows());
            for ((x, y), c) in tensor_coproduct(&v).iter() {
                let left = psi_matrix(&m1, &basis_vector(x)).unwrap();
                let right = psi_matrix(&m2, &basis_vector(y)).unwrap();
                let term = tensor_mul(&left, &right).unwrap();
                convolved = convolved.add(&GradedVector::from_lincomb(m1.rows(), term.terms().scaled(c))).unwrap();
            }
            prop_assert_eq!(convolved, psi_matrix(&sum, &v).unwrap());
        }
    }

    #[test]
    fn scalar_matrix_is_hopf_power(n in 0u64..=3, k in 1usize..=3) {
        let scalar = HopfMatrix::scalar(n, k);
        for v in tensor_basis(k, DEGREE) {
            let v = basis_vector(&v);
            let by_matrix = psi_matrix(&scalar, &v).unwrap();
            prop_assert_eq!(&by_matrix, &hopf_power_by_definition(n, &v));
            prop_assert_eq!(&by_matrix, &tensor_hopf_power(n, &v));
        }
    }
}

#[test]
fn hopf_powers_compose_and_convolve() {
    for lam in Partition::all_up_to(4) {
        let v = SchurVector::basis(lam.clone());
        for k in 0..=3u64 {
            for l in 0..=3u64 {
                assert_eq!(hopf_power(k, &hopf_power(l, &v)), hopf_power(k * l, &v), "{lam}, k = {k}, l = {l}");
                let mut convolved = SchurVector::zero();
                for ((x, y), c) in coproduct(&v).iter() {
                    let x = hopf_power(k, &SchurVector::basis(x.clone()));
                    let y = hopf_power(l, &SchurVector::basis(y.clone()));
                    convolved.add_scaled(&mul(&x, &y), c);
                }
                assert_eq!(convolved, hopf_power(k + l, &v), "{lam}, k = {k}, l = {l}");
            }
        }
    }
}

#[test]
fn row_sum_matrix_multiplies() {
    let m = HopfMatrix::new(vec![vec![1, 1]]).unwrap();
    let v = GradedVector::tensor_of(&[SchurVector::basis(Partition::row(1)), SchurVector::basis(Partition::row(1))]);
    let image = psi_matrix(&m, &v).unwrap().to_schur().unwrap();
    assert_eq!(image, mul(&SchurVector::basis(Partition::row(1)), &SchurVector::basis(Partition::row(1))));
}

fn r_d(alg: &Arc<PshAlgebra>, d: u64) -> PshModule {
    PshModule::r_d(Arc::clone(alg), d, DEGREE).unwrap()
}

#[test]
fn tensor_modules_add_twists() {
    let alg = Arc::new(PshAlgebra::symmetric_functions(DEGREE));
    for (d, e) in [(1, 1), (1, 2), (2, 2)] {
        let product = r_d(&alg, d).tensor(&r_d(&alg, e)).unwrap();
        assert_eq!(product.twist(), d * d + e * e);
        for rep in product.verify_structure(DEGREE) {
            assert!(rep.passed(), "R^({d}) ⊗ R^({e}): {rep}");
        }
        let rep = product.verify_k_hopf(DEGREE);
        assert!(rep.passed(), "R^({d}) ⊗ R^({e}): {rep}");
    }
}

#[test]
fn tensor_construction_is_associative() {
    let alg = Arc::new(PshAlgebra::symmetric_functions(DEGREE));
    let (a, b, c) = (r_d(&alg, 1), r_d(&alg, 2), r_d(&alg, 1));
    let left = a.tensor(&b).unwrap().tensor(&c).unwrap();
    let right = a.tensor(&b.tensor(&c).unwrap()).unwrap();
    left.compare_tables(&right).unwrap();
}

#[test]
fn twisted_modules_satisfy_skew_identities() {
    let alg = Arc::new(PshAlgebra::symmetric_functions(DEGREE));
    for module in [r_d(&alg, 2), r_d(&alg, 1).tensor(&r_d(&alg, 1)).unwrap()] {
        for rep in verify_skew_properties(&module, DEGREE).unwrap() {
            assert!(rep.passed(), "twist {}: {rep}", module.twist());
        }
    }
}

#[test]
fn decomposition_separates_summands() {
    let alg = Arc::new(PshAlgebra::symmetric_functions(DEGREE));
    let sum = r_d(&alg, 2).direct_sum(&r_d(&alg, 2)).unwrap();
    let dec = decompose_module(&sum, DEGREE).unwrap();
    assert_eq!(dec.module_primitives.len(), 2);
    assert_eq!(dec.module_cells.len(), sum.len());
    for (label, cell) in &dec.module_cells {
        assert_eq!(label[..2], cell.primitive[..2], "{label} assigned to {}", cell.primitive);
    }
    assert!(dec.verify_grading(&sum).passed());

    let square = r_d(&alg, 1).tensor(&r_d(&alg, 1)).unwrap();
    let dec = decompose_module(&square, DEGREE).unwrap();
    assert_eq!(dec.module_primitives, vec!["[]⊗[]".to_string()]);
    assert!(dec.verify_grading(&square).passed());
}

#[test]
fn corrupted_action_fails_the_axiom() {
    let alg = Arc::new(PshAlgebra::symmetric_functions(DEGREE));
    let mut module = r_d(&alg, 2);
    let (h, m) = (alg.index_of("[1]").unwrap(), module.index_of("[1]").unwrap());
    let mut bad = module.action_basis(h, m).unwrap().clone();
    bad.add_term(module.index_of("[2]").unwrap(), BigInt::from(1));
    module.set_action(h, m, bad);
    assert!(!module.verify_k_hopf(DEGREE).passed());
}
