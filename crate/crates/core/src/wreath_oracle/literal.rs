//! Literal matrices of the action of `S_n[G]` on `W ⊗ V^{⊗n}`, used to
//! validate the cycle-product character formula.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_wreath, OracleError, WreathElement};
use crate::groupkit::{character_table, FiniteGroup};
use crate::report::CheckReport;

type Matrix = DMatrix<Complex64>;

/// `(σ, g)` acting by `w ⊗ v_1 ⊗ ⋯ ⊗ v_n ↦ π(σ)w ⊗ u_1 ⊗ ⋯ ⊗ u_n` where
/// slot `σ(j)` receives `ρ(g_j) v_j`.
pub fn literal_action_matrix(e: &WreathElement, w_rep: &Matrix, v_rep: impl Fn(usize) -> Matrix) -> Matrix {
    let n = e.degree();
    let dw = w_rep.nrows();
    let rho: Vec<Matrix> = e.entries().iter().map(|&g| v_rep(g)).collect();
    let dv = rho.first().map_or(1, Matrix::nrows);
    let tensor_dim = dv.pow(n as u32);
    let digits = |mut x: usize| -> Vec<usize> {
        let mut out = vec![0; n];
        for d in out.iter_mut() {
            *d = x % dv;
            x /= dv;
        }
        out
    };
    let tuples: Vec<Vec<usize>> = (0..tensor_dim).map(digits).collect();
    let mut v_part = Matrix::zeros(tensor_dim, tensor_dim);
    for (col, a) in tuples.iter().enumerate() {
        for (row, a2) in tuples.iter().enumerate() {
            v_part[(row, col)] = (0..n).map(|j| rho[j][(a2[e.perm()[j]], a[j])]).product();
        }
    }
    let mut out = Matrix::zeros(dw * tensor_dim, dw * tensor_dim);
    for b2 in 0..dw {
        for b in 0..dw {
            let w = w_rep[(b2, b)];
            if w.norm() == 0.0 {
                continue;
            }
            for r in 0..tensor_dim {
                for c in 0..tensor_dim {
                    out[(b2 * tensor_dim + r, b * tensor_dim + c)] = w * v_part[(r, c)];
                }
            }
        }
    }
    out
}

fn permutation_matrix(perm: &[usize]) -> Matrix {
    let n = perm.len();
    Matrix::from_fn(n, n, |i, j| Complex64::new(if perm[j] == i { 1.0 } else { 0.0 }, 0.0))
}

fn sign(perm: &[usize]) -> f64 {
    let mut seen = vec![false; perm.len()];
    let mut s = 1.0;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// Checks, for every element of `S_n[G]` and several explicit
/// representations `W` of `S_n` and `V` of `G`, that the literal action is a
/// homomorphism (on sampled pairs) and that its trace is
/// `χ_W(σ) · Π_{cycles c} χ_V(ordered product of g along c)`.
pub fn verify_phi_rho_literal(base: &Arc<FiniteGroup>, n: usize) -> Result<CheckReport, OracleError> {
    let wreath = build_wreath(base, n)?;
    let one = |x: f64| Matrix::from_element(1, 1, Complex64::new(x, 0.0));
    let w_reps: Vec<(&str, Box<dyn Fn(&[usize]) -> Matrix>)> = vec![
        ("trivial", Box::new(move |_| one(1.0))),
        ("sign", Box::new(move |p| one(sign(p)))),
        ("natural", Box::new(permutation_matrix)),
    ];
    let regular = |g: usize| {
        let order = base.order();
        Matrix::from_fn(order, order, |x2, x| Complex64::new(if base.mul(g, x) == x2 { 1.0 } else { 0.0 }, 0.0))
    };
    let mut v_reps: Vec<(String, Box<dyn Fn(usize) -> Matrix + '_>)> = vec![("regular".into(), Box::new(regular))];
    if base.is_abelian() {
        let table = character_table(base)?;
        for (i, chi) in table.irreducibles().iter().enumerate() {
            let chi = chi.clone();
            v_reps.push((format!("linear {i}"), Box::new(move |g| Matrix::from_element(1, 1, chi.at(g)))));
        }
    }

    let check = format!("literal action of {} matches the cycle-product trace", wreath.group().name());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (wname, w_rep) in &w_reps {
        for (vname, v_rep) in &v_reps {
            let matrices: Vec<Matrix> = wreath
                .elements()
                .iter()
                .map(|e| literal_action_matrix(e, &w_rep(e.perm()), v_rep))
                .collect();
            for (e, m) in wreath.elements().iter().zip(&matrices) {
                let chi_w = w_rep(e.perm()).trace();
                let formula: Complex64 =
                    e.cycles().iter().map(|c| v_rep(e.cycle_product(c, base)).trace()).product::<Complex64>() * chi_w;
                if (m.trace() - formula).norm() > 1e-9 {
                    return Ok(CheckReport::fail(
                        check,
                        format!("W = {wname}, V = {vname}, element {:?}: trace {} vs formula {}", e, m.trace(), formula),
                    ));
                }
            }
            for _ in 0..20 {
                let (i, j) = (rng.random_range(0..wreath.order()), rng.random_range(0..wreath.order()));
                let product = wreath.element(i).mul(wreath.element(j), base);
                let k = wreath.index_of(&product).expect("closed");
                if (&matrices[i] * &matrices[j] - &matrices[k]).norm() > 1e-9 {
                    return Ok(CheckReport::fail(check, format!("W = {wname}, V = {vname}: not a homomorphism at ({i}, {j})")));
                }
            }
        }
    }
    Ok(CheckReport::pass(check))
}
