//! Inner products of products of primitives, and the identities satisfied by
//! the skew operators `x̃` and `m̃`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{PshModule, TensorError};
use crate::lincomb::LinComb;
use crate::report::CheckReport;

type Vector = LinComb<usize>;

fn equal_or_orthogonal(items: &[&Vector], what: &str) -> Result<(), TensorError> {
    for (i, a) in items.iter().enumerate() {
        for b in &items[i + 1..] {
            if a != b && !a.inner(b).is_zero() {
                return Err(TensorError::Hypothesis(format!("two {what} are neither equal nor orthogonal")));
            }
        }
    }
    Ok(())
}

/// Predicted `⟨p_1⋯p_r m, p'_1⋯p'_s n⟩` for primitives that are pairwise equal
/// or orthogonal: zero unless `m = n` and the lists agree up to order, in which
/// case `k^r · n_1!⋯n_v! · Π⟨p_i, p_i⟩ · ⟨m, m⟩`.
pub fn inner_primitive_product(
    ps: &[Vector],
    m: &Vector,
    qs: &[Vector],
    n: &Vector,
    k: u64,
) -> Result<BigInt, TensorError> {
    let all: Vec<&Vector> = ps.iter().chain(qs).collect();
    equal_or_orthogonal(&all, "algebra primitives")?;
    equal_or_orthogonal(&[m, n], "module primitives")?;
    if m != n || ps.len() != qs.len() {
        return Ok(BigInt::zero());
    }
    let mut groups: Vec<(&Vector, usize, usize)> = Vec::new();
    for p in ps {
        match groups.iter_mut().find(|(g, _, _)| *g == p) {
            Some(g) => g.1 += 1,
            None => groups.push((p, 1, 0)),
        }
    }
    for q in qs {
        match groups.iter_mut().find(|(g, _, _)| *g == q) {
            Some(g) => g.2 += 1,
            None => return Ok(BigInt::zero()),
        }
    }
    if groups.iter().any(|&(_, a, b)| a != b) {
        return Ok(BigInt::zero());
    }
    let mut value = BigInt::from(k).pow(ps.len() as u32) * m.inner(m);
    for (p, count, _) in groups {
        let fact: BigInt = (1..=count).map(BigInt::from).product();
        value *= fact * p.inner(p).pow(count as u32);
    }
    Ok(value)
}

/// Computes `⟨π, π'⟩` from the module tables and compares it with the
/// prediction. Fails with an error if an input is not primitive or the
/// equal-or-orthogonal hypothesis does not hold.
pub fn verify_inner_primitive_product(
    module: &PshModule,
    ps: &[Vector],
    m: &Vector,
    qs: &[Vector],
    n: &Vector,
) -> Result<CheckReport, TensorError> {
    let alg = module.algebra();
    for p in ps.iter().chain(qs) {
        let expect: LinComb<(usize, usize)> = p.apply(|&i| LinComb::from_terms([((i, 0), 1), ((0, i), 1)]));
        if alg.comul(p) != expect {
            return Err(TensorError::Hypothesis(format!("{} is not primitive", alg.format(p))));
        }
    }
    for v in [m, n] {
        if module.coact(v) != v.map_basis(|&i| (0, i)) {
            return Err(TensorError::Hypothesis(format!("{} is not module primitive", module.format(v))));
        }
    }
    let predicted = inner_primitive_product(ps, m, qs, n, module.twist())?;
    let product = |list: &[Vector], tail: &Vector| -> Result<Vector, TensorError> {
        let mut h = alg.one();
        for p in list {
            h = alg.mul(&h, p)?;
        }
        module.act(&h, tail)
    };
    let direct = product(ps, m)?.inner(&product(qs, n)?);
    let name = |list: &[Vector], tail: &Vector| {
        let mut parts: Vec<String> = list.iter().map(|p| format!("({})", alg.format(p))).collect();
        parts.push(format!("({})", module.format(tail)));
        parts.join("·")
    };
    let check = format!("<{}, {}>", name(ps, m), name(qs, n));
    Ok(if predicted == direct {
        CheckReport::pass(check).with_note(format!("value {direct}"))
    } else {
        CheckReport::fail(check, format!("predicted {predicted}, tables give {direct}"))
    })
}

/// Runs [`verify_inner_primitive_product`] on every pair of products
/// `p_1⋯p_r·m` of basis primitives with total degree at most `budget`.
pub fn verify_primitive_products(module: &PshModule, budget: usize) -> Result<CheckReport, TensorError> {
    let budget = budget.min(module.cutoff());
    let alg = module.algebra();
    let prims = alg.primitives()?;
    let mut products: Vec<(Vec<usize>, usize)> = Vec::new();
    for m in module.primitives()? {
        if module.degree(m) > budget {
            continue;
        }
        let mut lists: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), module.degree(m))];
        for &p in &prims {
            let degree = alg.degree(p);
            let mut extended = Vec::new();
            for (list, used) in lists {
                let (mut list, mut used) = (list, used);
                loop {
                    extended.push((list.clone(), used));
                    if degree == 0 || used + degree > budget {
                        break;
                    }
                    list.push(p);
                    used += degree;
                }
            }
            lists = extended;
        }
        products.extend(lists.into_iter().map(|(list, _)| (list, m)));
    }
    let basis = |list: &[usize]| -> Vec<Vector> { list.iter().map(|&p| LinComb::basis(p)).collect() };
    let check = format!("inner products of primitive products up to degree {budget}");
    for (ps, m) in &products {
        for (qs, n) in &products {
            let report = verify_inner_primitive_product(module, &basis(ps), &LinComb::basis(*m), &basis(qs), &LinComb::basis(*n))?;
            if !report.passed() {
                return Ok(CheckReport::fail(check, format!("{}: {}", report.check, report.witness.unwrap_or_default())));
            }
        }
    }
    Ok(CheckReport::pass(check).with_note(format!("{} pairs", products.len() * products.len())))
}

/// The identities of the skew operators on basis elements of total degree at
/// most `cutoff`:
/// degree shifts; `x̃∘ỹ = (xy)~ = ỹ∘x̃`; `(xm)~ = x*∘m̃ = m̃∘x̃`;
/// `x̃(ym) = [Ψ^k(x_(1))]*(y) x̃_(2)(m)`;
/// `m̃(xn) = Ψ^k[m_(1)*(x)] m̃_(2)(n)`;
/// `m̃(xn) = Ψ^k(x_(1)) (x̃_(2)(m))~(n)`.
pub fn verify_skew_properties(module: &PshModule, cutoff: usize) -> Result<Vec<CheckReport>, TensorError> {
    let cutoff = cutoff.min(module.cutoff());
    let alg = module.algebra();
    let k = module.twist();
    let b = |i: usize| -> Vector { LinComb::basis(i) };
    let mut witness: [Option<String>; 5] = Default::default();
    let record = |slot: &mut Option<String>, w: String| {
        if slot.is_none() {
            *slot = Some(w);
        }
    };

    for x in alg.basis_up_to(cutoff) {
        for m in module.basis_up_to(cutoff) {
            let image = module.skew_action(&b(x), &b(m));
            if image.support().any(|&w| module.degree(w) + alg.degree(x) != module.degree(m)) {
                record(&mut witness[0], format!("x̃ with x = {} on {}", alg.label(x), module.label(m)));
            }
        }
    }
    for m in module.basis_up_to(cutoff) {
        for n in module.basis_up_to(cutoff) {
            let image = module.module_skew(&b(m), &b(n));
            if image.support().any(|&a| alg.degree(a) + module.degree(m) != module.degree(n)) {
                record(&mut witness[0], format!("m̃ with m = {} on {}", module.label(m), module.label(n)));
            }
        }
    }

    for x in alg.basis_up_to(cutoff) {
        for y in alg.basis_up_to(cutoff - alg.degree(x)) {
            let xy = alg.mul(&b(x), &b(y))?;
            for n in module.basis_up_to(cutoff) {
                let bn = b(n);
                let via_product = module.skew_action(&xy, &bn);
                let xy_then = module.skew_action(&b(x), &module.skew_action(&b(y), &bn));
                let yx_then = module.skew_action(&b(y), &module.skew_action(&b(x), &bn));
                if via_product != xy_then || via_product != yx_then {
                    record(&mut witness[1], format!("x = {}, y = {}, on {}", alg.label(x), alg.label(y), module.label(n)));
                }
            }
        }
        for m in module.basis_up_to(cutoff - alg.degree(x)) {
            let xm = module.act(&b(x), &b(m))?;
            for n in module.basis_up_to(cutoff) {
                let bn = b(n);
                let lhs = module.module_skew(&xm, &bn);
                let via_algebra = alg.skew(&b(x), &module.module_skew(&b(m), &bn));
                let via_module = module.module_skew(&b(m), &module.skew_action(&b(x), &bn));
                if lhs != via_algebra || lhs != via_module {
                    record(&mut witness[1], format!("(xm)~ with x = {}, m = {}, on {}", alg.label(x), module.label(m), module.label(n)));
                }
            }
        }
    }

    for x in alg.basis_up_to(cutoff) {
        for y in alg.basis_up_to(cutoff) {
            for m in module.basis_up_to(cutoff - alg.degree(y)) {
                let lhs = module.skew_action(&b(x), &module.act(&b(y), &b(m))?);
                let mut rhs = LinComb::zero();
                for (&(x1, x2), c) in alg.coproduct_basis(x) {
                    let left = alg.skew(&alg.psi_basis(k, x1)?, &b(y));
                    let right = module.skew_action(&b(x2), &b(m));
                    rhs.add_scaled(&module.act(&left, &right)?, c);
                }
                if lhs != rhs {
                    record(&mut witness[2], format!("x = {}, y = {}, m = {}", alg.label(x), alg.label(y), module.label(m)));
                }
            }
        }
    }

    for m in module.basis_up_to(cutoff) {
        for x in alg.basis_up_to(cutoff) {
            for n in module.basis_up_to(cutoff - alg.degree(x)) {
                let lhs = module.module_skew(&b(m), &module.act(&b(x), &b(n))?);
                let mut via_coaction = LinComb::zero();
                for (&(m1, m2), c) in module.coaction_basis(m) {
                    let left = alg.psi(k, &alg.skew(&b(m1), &b(x)))?;
                    let right = module.module_skew(&b(m2), &b(n));
                    via_coaction.add_scaled(&alg.mul(&left, &right)?, c);
                }
                if lhs != via_coaction {
                    record(&mut witness[3], format!("m = {}, x = {}, n = {}", module.label(m), alg.label(x), module.label(n)));
                }
                let mut via_coproduct = LinComb::zero();
                for (&(x1, x2), c) in alg.coproduct_basis(x) {
                    let left = alg.psi_basis(k, x1)?;
                    let inner = module.skew_action(&b(x2), &b(m));
                    let right = module.module_skew(&inner, &b(n));
                    via_coproduct.add_scaled(&alg.mul(&left, &right)?, c);
                }
                if lhs != via_coproduct {
                    record(&mut witness[4], format!("m = {}, x = {}, n = {}", module.label(m), alg.label(x), module.label(n)));
                }
            }
        }
    }

    let names = [
        "skew operators shift degree",
        "skew operators compose through products",
        "skew of a product (x̃(ym) expansion)",
        "module skew of a product via coaction",
        "module skew of a product via coproduct",
    ];
    Ok(names
        .iter()
        .zip(witness)
        .map(|(name, w)| CheckReport::from_witness(format!("{name} up to degree {cutoff}"), w))
        .collect())
}

/// `k^r` for convenience in callers building expectations.
pub fn twist_power(k: u64, r: usize) -> BigInt {
    (0..r).fold(BigInt::one(), |acc, _| acc * k)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::tensor_hopf::PshAlgebra;

    #[test]
    fn canonical_module_examples() {
        let alg = Arc::new(PshAlgebra::symmetric_functions(4));
        let m = PshModule::canonical(Arc::clone(&alg), 4).unwrap();
        let s1 = b(alg.index_of("[1]").unwrap());
        let one = alg.one();
        let two = vec![s1.clone(), s1.clone()];
        assert_eq!(inner_primitive_product(&two, &one, &two, &one, 1).unwrap(), BigInt::from(2));
        let rep = verify_inner_primitive_product(&m, &two, &one, &two, &one).unwrap();
        assert!(rep.passed(), "{rep}");
        let three = vec![s1.clone(), s1.clone(), s1.clone()];
        assert_eq!(inner_primitive_product(&three, &one, &three, &one, 1).unwrap(), BigInt::from(6));
        assert!(verify_inner_primitive_product(&m, &three, &one, &three, &one).unwrap().passed());
        let s2 = b(alg.index_of("[2]").unwrap());
        assert!(matches!(
            verify_inner_primitive_product(&m, &[s2], &one, &[], &one),
            Err(TensorError::Hypothesis(_))
        ));
    }

    fn b(i: usize) -> Vector {
        LinComb::basis(i)
    }

    #[test]
    fn orthogonal_module_primitives_give_zero() {
        let alg = Arc::new(PshAlgebra::symmetric_functions(2));
        let m = PshModule::canonical(Arc::clone(&alg), 2).unwrap();
        let s = m.direct_sum(&m).unwrap();
        let (d0, d1) = (b(0), b(m.len()));
        let s1 = b(alg.index_of("[1]").unwrap());
        assert_eq!(inner_primitive_product(std::slice::from_ref(&s1), &d0, std::slice::from_ref(&s1), &d1, 1).unwrap(), BigInt::zero());
        assert!(verify_inner_primitive_product(&s, std::slice::from_ref(&s1), &d0, std::slice::from_ref(&s1), &d1).unwrap().passed());
    }

    #[test]
    fn hypothesis_violation_is_an_error() {
        let x = LinComb::from_terms([(1usize, 1), (2, 1)]);
        let y = LinComb::from_terms([(1usize, 1)]);
        assert!(matches!(
            inner_primitive_product(&[x], &b(0), &[y], &b(0), 1),
            Err(TensorError::Hypothesis(_))
        ));
    }

    #[test]
    fn skew_identities_hold_for_canonical_and_twisted_modules() {
        let alg = Arc::new(PshAlgebra::symmetric_functions(3));
        let modules = [
            PshModule::canonical(Arc::clone(&alg), 3).unwrap(),
            PshModule::r_d(Arc::clone(&alg), 2, 3).unwrap(),
        ];
        for m in &modules {
            for rep in verify_skew_properties(m, 3).unwrap() {
                assert!(rep.passed(), "twist {}: {rep}", m.twist());
            }
        }
        assert_eq!(twist_power(2, 3), BigInt::from(8));
    }
}
