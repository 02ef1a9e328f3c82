//! Checks of the structure of `R(G)` over `R(H)` built by brute force
//! against the predictions of the twisted Hopf module theory.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;

use super::tower::{build_rg_basis, Multipartition, WreathTower};
use super::wreath::wreath_elements;
use super::{OracleError, WreathElement};
use crate::groupkit::{cyclic, restriction_matrix, FiniteGroup, SubgroupEmbedding};
use crate::lincomb::LinComb;
use crate::report::{combine, CheckReport};
use crate::symfunc::{self, sn_character};
use crate::tensor_hopf::{degree_matrix, psi_matrix, tensor_mul, GradedMap, GradedVector, PshAlgebra, PshModule};

/// `R(G)` as a module over `R(H)` together with both towers and the maps
/// `δ` (induction from `S_n[H]`) and `δ*` (restriction).
#[derive(Debug)]
pub struct RgModule {
    pub embedding: SubgroupEmbedding,
    pub sub_tower: WreathTower,
    pub tower: WreathTower,
    pub sub_algebra: Arc<PshAlgebra>,
    pub module: PshModule,
    pub delta: GradedMap,
    pub delta_star: GradedMap,
}

pub fn rg_module(emb: &SubgroupEmbedding, cutoff: usize) -> Result<RgModule, OracleError> {
    let sub_tower = build_rg_basis(emb.sub(), cutoff)?;
    let tower = build_rg_basis(emb.sup(), cutoff)?;
    let sub_algebra = Arc::new(sub_tower.algebra()?);
    let module = tower.module_over(&sub_tower, emb, Arc::clone(&sub_algebra))?;
    let (delta, delta_star) = tower.delta_maps(&sub_tower, emb)?;
    Ok(RgModule { embedding: emb.clone(), sub_tower, tower, sub_algebra, module, delta, delta_star })
}

impl RgModule {
    fn pair(&self) -> String {
        format!("{} ⊂ {}", self.embedding.sub().name(), self.embedding.sup().name())
    }

    fn cutoff(&self) -> usize {
        self.module.cutoff()
    }

    fn degree_blocks(&self) -> Vec<(usize, Vec<usize>, Vec<usize>)> {
        (0..=self.cutoff())
            .map(|n| {
                let sub = self.sub_algebra.basis_of_degree(n).collect();
                let sup = (0..self.module.len()).filter(|&i| self.module.degree(i) == n).collect();
                (n, sub, sup)
            })
            .collect()
    }
}

fn with_hypothesis(report: CheckReport, emb: &SubgroupEmbedding) -> CheckReport {
    if emb.inner_condition() {
        report
    } else {
        report.informational("inner-automorphism hypothesis does not hold")
    }
}

/// Module unit, counit, positivity, adjointness, associativity,
/// coassociativity and the `[G:H]`-Hopf axiom for `R(G)` over `R(H)`. The
/// note records whether coset representatives centralizing `H` exist.
pub fn verify_module_k_hopf(rg: &RgModule) -> CheckReport {
    let cutoff = rg.cutoff();
    let mut parts = rg.module.verify_structure(cutoff);
    parts.push(rg.module.verify_k_hopf(cutoff));
    let report = combine(format!("R({}) is a {}-PSH module over R({}) up to degree {cutoff}", rg.embedding.sup().name(), rg.module.twist(), rg.embedding.sub().name()), &parts);
    let note = match rg.embedding.centralizing_coset_representatives() {
        Some(reps) => format!("coset representatives centralizing H: {:?}", reps),
        None => "no choice of coset representatives centralizes H".to_string(),
    };
    with_hypothesis(report.with_note(note), &rg.embedding)
}

/// `δ*` in multipartition labels equals `Ψ^M` with `M` the restriction
/// multiplicity matrix of `H ⊂ G`, degree by degree.
pub fn verify_restriction_psi_matrix(rg: &RgModule) -> Result<CheckReport, OracleError> {
    let m = restriction_matrix(&rg.embedding, rg.sub_tower.base_table(), rg.tower.base_table())?;
    let sub_index: HashMap<&Multipartition, usize> =
        (0..rg.sub_algebra.len()).map(|h| (rg.sub_tower.multipartition(h), h)).collect();
    let mut predicted: GradedMap = Vec::with_capacity(rg.delta_star.len());
    for g in 0..rg.delta_star.len() {
        let lam = rg.tower.multipartition(g);
        let image = psi_matrix(&m, &GradedVector::basis(lam.0.clone()))?;
        let mut comb = LinComb::zero();
        for (tuple, c) in image.terms() {
            let h = sub_index.get(&Multipartition(tuple.clone())).ok_or_else(|| {
                OracleError::Identification(format!("Ψ^M produced {} outside the H basis", Multipartition(tuple.clone())))
            })?;
            comb.add_term(*h, c.clone());
        }
        predicted.push(comb);
    }
    let check = format!("δ* = Ψ^M for {} up to degree {}", rg.pair(), rg.cutoff());
    let witness = (0..predicted.len()).find(|&g| predicted[g] != rg.delta_star[g]).map(|g| {
        format!(
            "at {}: δ* gives {} but Ψ^M gives {}",
            rg.tower.multipartition(g),
            rg.sub_algebra.format(&rg.delta_star[g]),
            rg.sub_algebra.format(&predicted[g])
        )
    });
    let mut report = CheckReport::from_witness(check, witness);
    for (n, sub, sup) in rg.degree_blocks() {
        report = report
            .with_matrix(format!("δ* degree {n}"), degree_matrix(&rg.delta_star, &sup, &sub))
            .with_matrix(format!("Ψ^M degree {n}"), degree_matrix(&predicted, &sup, &sub));
    }
    Ok(report)
}

fn compose(outer: &GradedMap, inner: &LinComb<usize>) -> LinComb<usize> {
    inner.apply(|&i| outer[i].clone())
}

/// `δ* ∘ δ = Ψ^{[G:H]}` on `R(H)`.
pub fn verify_delta_composite(rg: &RgModule) -> Result<CheckReport, OracleError> {
    let index = rg.embedding.index() as u64;
    let psi = rg.sub_algebra.psi_map(index)?;
    let composite: GradedMap = rg.delta.iter().map(|d| compose(&rg.delta_star, d)).collect();
    let check = format!("δ*∘δ = Ψ^{index} for {} up to degree {}", rg.pair(), rg.cutoff());
    let witness = (0..composite.len()).find(|&h| composite[h] != psi[h]).map(|h| {
        format!(
            "at {}: δ*δ = {} but Ψ^{index} = {}",
            rg.sub_algebra.label(h),
            rg.sub_algebra.format(&composite[h]),
            rg.sub_algebra.format(&psi[h])
        )
    });
    let mut report = CheckReport::from_witness(check, witness);
    for (n, sub, _) in rg.degree_blocks() {
        report = report.with_matrix(format!("δ*δ degree {n}"), degree_matrix(&composite, &sub, &sub));
    }
    Ok(with_hypothesis(report, &rg.embedding))
}

/// `δ` and `δ*` are positive and mutually adjoint, `δ` is multiplicative
/// and `δ*` is comultiplicative.
pub fn verify_delta_morphisms(rg: &RgModule) -> Result<CheckReport, OracleError> {
    let alg = rg.tower.algebra()?;
    let sub = &rg.sub_algebra;
    let cutoff = rg.cutoff();
    let mut parts = Vec::new();

    let negative = rg.delta.iter().chain(&rg.delta_star).position(|v| !v.is_positive());
    parts.push(CheckReport::from_witness("δ and δ* are positive", negative.map(|i| format!("map entry {i}"))));

    let mut adjoint = None;
    'outer: for h in 0..rg.delta.len() {
        for g in 0..rg.delta_star.len() {
            if rg.delta[h].coeff(&g) != rg.delta_star[g].coeff(&h) {
                adjoint = Some(format!("⟨δ({}), {}⟩ ≠ ⟨{}, δ*({})⟩", sub.label(h), alg.label(g), sub.label(h), alg.label(g)));
                break 'outer;
            }
        }
    }
    parts.push(CheckReport::from_witness("δ and δ* are adjoint", adjoint));

    let mut multiplicative = None;
    'outer: for x in sub.basis_up_to(cutoff) {
        for y in sub.basis_up_to(cutoff - sub.degree(x)) {
            let lhs = compose(&rg.delta, sub.product_basis(x, y)?);
            let rhs = alg.mul(&rg.delta[x], &rg.delta[y])?;
            if lhs != rhs {
                multiplicative = Some(format!("δ({}·{}) = {} but δ·δ = {}", sub.label(x), sub.label(y), alg.format(&lhs), alg.format(&rhs)));
                break 'outer;
            }
        }
    }
    parts.push(CheckReport::from_witness("δ is multiplicative", multiplicative));

    let mut comultiplicative = None;
    for z in alg.basis_up_to(cutoff) {
        let lhs = sub.comul(&rg.delta_star[z]);
        let rhs = alg.coproduct_basis(z).apply(|&(a, b)| {
            rg.delta_star[a].bilinear(&rg.delta_star[b], |&x, &y| LinComb::basis((x, y)))
        });
        if lhs != rhs {
            comultiplicative = Some(format!("Δδ*({}) ≠ (δ*⊗δ*)Δ({})", alg.label(z), alg.label(z)));
            break;
        }
    }
    parts.push(CheckReport::from_witness("δ* is comultiplicative", comultiplicative));

    Ok(combine(format!("δ, δ* are adjoint PSH morphisms for {} up to degree {cutoff}", rg.pair()), &parts))
}

/// The tensor product, in `irr(G)` order, of the pullbacks `R^(dim ω)` of
/// the symmetric functions along `Ψ^{dim ω}`.
pub fn trivial_subgroup_model(rg: &RgModule) -> Result<PshModule, OracleError> {
    let cutoff = rg.cutoff();
    let alg = Arc::new(PshAlgebra::symmetric_functions(cutoff));
    let mut factors = rg.tower.base_table().degrees().iter().map(|&d| PshModule::r_d(Arc::clone(&alg), d as u64, cutoff));
    let first = factors.next().expect("every group has an irreducible")?;
    Ok(factors.try_fold(first, |acc, f| acc.tensor(&f?))?)
}

/// `R(G)` over `R` (with `H` trivial) has the same tables as the tensor
/// product of the `R^(dim ω)`, matched through multipartition labels.
pub fn verify_tensor_decomposition(rg: &RgModule) -> Result<CheckReport, OracleError> {
    if rg.embedding.sub().order() != 1 {
        return Err(OracleError::Parameters(format!("{} is not the trivial subgroup", rg.embedding.sub().name())));
    }
    let degrees = rg.tower.base_table().degrees().iter().map(|d| format!("R^({d})")).join(" ⊗ ");
    let check = format!("R({}) ≅ {degrees} up to degree {}", rg.embedding.sup().name(), rg.cutoff());
    let model = trivial_subgroup_model(rg)?;
    // R(1) labels its basis by one-component multipartitions, which print as
    // partitions, but orders each degree by its own character table
    let reference = Arc::new(PshAlgebra::symmetric_functions(rg.cutoff()));
    let to_reference: Vec<usize> = (0..rg.sub_algebra.len())
        .map(|h| reference.index_of(rg.sub_algebra.label(h)))
        .collect::<Result<_, _>>()?;
    let mut action = HashMap::new();
    for h in rg.sub_algebra.basis_up_to(rg.cutoff()) {
        for m in rg.module.basis_up_to(rg.cutoff() - rg.sub_algebra.degree(h)) {
            action.insert((to_reference[h], m), rg.module.action_basis(h, m)?.clone());
        }
    }
    let coaction = (0..rg.module.len())
        .map(|m| rg.module.coaction_basis(m).map_basis(|&(h, n)| (to_reference[h], n)))
        .collect();
    let ours = PshModule::new(
        reference,
        rg.module.twist(),
        rg.cutoff(),
        rg.module.labels().to_vec(),
        (0..rg.module.len()).map(|i| rg.module.degree(i)).collect(),
        action,
        coaction,
    )?;
    Ok(match ours.compare_tables(&model) {
        Ok(()) => CheckReport::pass(check),
        Err(e) => CheckReport::fail(check, e.0),
    })
}

/// The product of `R(G)` in multipartition labels is the componentwise
/// Littlewood–Richardson product.
pub fn verify_phi_multiplicative(tower: &WreathTower) -> Result<CheckReport, OracleError> {
    let alg = tower.algebra()?;
    let cutoff = tower.cutoff();
    let check = format!("Φ is multiplicative for {} up to degree {cutoff}", tower.base().name());
    for x in alg.basis_up_to(cutoff) {
        for y in alg.basis_up_to(cutoff - alg.degree(x)) {
            let ours = alg.product_basis(x, y)?.map_basis(|&z| tower.multipartition(z).0.clone());
            let lx = GradedVector::basis(tower.multipartition(x).0.clone());
            let ly = GradedVector::basis(tower.multipartition(y).0.clone());
            let expected = tensor_mul(&lx, &ly)?;
            if &ours != expected.terms() {
                return Ok(CheckReport::fail(
                    check,
                    format!("{} · {}: induction gives {} terms, componentwise product {}", alg.label(x), alg.label(y), ours.len(), expected.terms().len()),
                ));
            }
        }
    }
    Ok(CheckReport::pass(check))
}

/// Tuples `(a_1, …, a_t, b, c, d)` with `Σa + b = r`, `c + d = s`,
/// `Σa + c = p`, `b + d = q`.
pub fn double_coset_tuples(t: usize, p: usize, q: usize, r: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..=p.min(r) {
        let (b, c) = (r - a, p - a);
        if b > q || c > s || q - b != s - c {
            continue;
        }
        let d = q - b;
        for split in compositions(a, t) {
            let mut tuple = split;
            tuple.extend([b, c, d]);
            out.push(tuple);
        }
    }
    out
}

/// Weak compositions of `total` into `parts` parts.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Labels each element of `elements` by its double coset `L x R`. Returns
/// the label of every element; labels are `0..count`.
pub fn count_double_cosets(
    base: &FiniteGroup,
    elements: &[WreathElement],
    left: &[WreathElement],
    right: &[WreathElement],
) -> Vec<usize> {
    let index: HashMap<&WreathElement, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut label = vec![usize::MAX; elements.len()];
    let mut next = 0;
    for start in 0..elements.len() {
        if label[start] != usize::MAX {
            continue;
        }
        for l in left {
            let lx = l.mul(&elements[start], base);
            for r in right {
                label[index[&lx.mul(r, base)]] = next;
            }
        }
        next += 1;
    }
    label
}

/// `V_split × W_{n-split}`: elements preserving the first `split` positions
/// with entries there in `H`.
fn young_subgroup(elements: &[WreathElement], image: &HashSet<usize>, split: usize) -> Vec<WreathElement> {
    elements
        .iter()
        .filter(|e| e.block(0, split).is_some() && e.entries()[..split].iter().all(|g| image.contains(g)))
        .cloned()
        .collect()
}

/// The representative of the double coset of a tuple: column blocks
/// `(a_1, …, a_t, b, c, d)` go to row blocks `(a_1, …, a_t, c, b, d)`, with
/// the coset representative `g_i` on the `a_i` block and identity elsewhere.
fn double_coset_representative(tuple: &[usize], coset_reps: &[usize]) -> WreathElement {
    let t = coset_reps.len();
    let n: usize = tuple.iter().sum();
    let row_order: Vec<usize> = (0..t).chain([t + 1, t, t + 2]).collect();
    let mut row_start = vec![0; tuple.len()];
    let mut at = 0;
    for &block in &row_order {
        row_start[block] = at;
        at += tuple[block];
    }
    let (mut perm, mut entries) = (vec![0; n], vec![0; n]);
    let mut col = 0;
    for (block, &len) in tuple.iter().enumerate() {
        for i in 0..len {
            perm[col] = row_start[block] + i;
            entries[col] = if block < t { coset_reps[block] } else { 0 };
            col += 1;
        }
    }
    WreathElement::new(perm, entries)
}

/// Brute-force count of `(V_p × W_q) \ W_n / (V_r × W_s)` against the
/// number of admissible tuples, and distinctness of the tuple
/// representatives. `H` must be normal.
pub fn verify_double_cosets(emb: &SubgroupEmbedding, p: usize, q: usize, r: usize, s: usize) -> Result<CheckReport, OracleError> {
    let n = p + q;
    if r + s != n {
        return Err(OracleError::Parameters(format!("p + q = {n} but r + s = {}", r + s)));
    }
    if !emb.is_normal() {
        return Err(OracleError::Parameters(format!("{} is not normal in {}", emb.sub().name(), emb.sup().name())));
    }
    let g = emb.sup();
    super::wreath::build_wreath(g, n)?;
    let elements = wreath_elements(g, n);
    let image: HashSet<usize> = emb.image().iter().copied().collect();
    let left = young_subgroup(&elements, &image, p);
    let right = young_subgroup(&elements, &image, r);
    let label = count_double_cosets(g, &elements, &left, &right);
    let count = label.iter().max().map_or(0, |m| m + 1);

    let mut coset_reps = Vec::new();
    let mut covered = vec![false; g.order()];
    for x in g.elements() {
        if !covered[x] {
            coset_reps.push(x);
            for &h in emb.image() {
                covered[g.mul(x, h)] = true;
            }
        }
    }
    let tuples = double_coset_tuples(coset_reps.len(), p, q, r, s);
    let index: HashMap<&WreathElement, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let rep_labels: Vec<usize> = tuples
        .iter()
        .map(|t| index[&double_coset_representative(t, &coset_reps)])
        .map(|i| label[i])
        .collect();
    let distinct = rep_labels.iter().all_unique();

    let check = format!("double cosets of S_{n}[{}] for (p,q,r,s) = ({p},{q},{r},{s}) over {}", g.name(), emb.sub().name());
    let report = if count != tuples.len() {
        CheckReport::fail(check, format!("{count} double cosets but {} tuples", tuples.len()))
    } else if !distinct {
        CheckReport::fail(check, "two tuple representatives share a double coset")
    } else {
        CheckReport::pass(check)
    };
    Ok(report.with_note(format!("{count} double cosets")))
}

/// For `K = Z/m`, the number of `x ∈ S_n[K]` conjugating `(σ, 1)` into
/// `S_n`, divided by `n!`, is `m^{cycles(σ)}`, and so is the value at `σ`
/// of the character of `Ψ^m(s_(n))`.
pub fn verify_hopf_power_law(m: usize, n: usize) -> Result<CheckReport, OracleError> {
    let k = Arc::new(cyclic(m)?);
    let check = format!("Ψ^{m} character law on S_{n}");
    let elements = wreath_elements(&k, n);
    let psi = symfunc::hopf_power(m as u64, &symfunc::s(&[n]));
    let factorial: usize = (1..=n).product();
    for sigma in (0..n).permutations(n) {
        let e = WreathElement::new(sigma, vec![0; n]);
        let cycles = e.cycles().len() as u32;
        let expected = (m as i64).pow(cycles);
        let conjugating = elements.iter().filter(|x| e.conjugate_by(x, &k).entries().iter().all(|&g| g == 0)).count();
        if conjugating != factorial * expected as usize {
            return Ok(CheckReport::fail(check, format!("σ = {:?}: {conjugating} conjugating elements, expected {}", e.perm(), factorial as i64 * expected)));
        }
        let cycle_type = e.cycle_type();
        let value: BigInt = psi.iter().map(|(lam, c)| c * sn_character(lam, &cycle_type)).sum();
        if value != BigInt::from(expected) {
            return Ok(CheckReport::fail(check, format!("σ = {:?}: Ψ^{m}(s_({n})) has value {value}, expected {expected}", e.perm())));
        }
    }
    Ok(CheckReport::pass(check))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::{group_by_name, subgroup_by_name};
    use crate::report::Status;

    fn module(g: &str, h: &str, cutoff: usize) -> RgModule {
        let g = Arc::new(group_by_name(g).unwrap());
        rg_module(&subgroup_by_name(&g, h).unwrap(), cutoff).unwrap()
    }

    #[test]
    fn tuple_counts() {
        assert_eq!(double_coset_tuples(2, 1, 1, 1, 1).len(), 3);
        // t = 1 is the classical count min(p, q, r, s) + 1 for S_p × S_q
        assert_eq!(double_coset_tuples(1, 2, 2, 3, 1).len(), 2);
        assert_eq!(compositions(2, 3).len(), 6);
    }

    #[test]
    fn double_coset_examples() {
        let z2 = Arc::new(group_by_name("Z2").unwrap());
        let rep = verify_double_cosets(&SubgroupEmbedding::trivial(&z2), 1, 1, 1, 1).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.note.as_deref(), Some("3 double cosets"));
        let z4 = Arc::new(group_by_name("Z4").unwrap());
        let rep = verify_double_cosets(&subgroup_by_name(&z4, "Z2").unwrap(), 1, 1, 1, 1).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn induced_trivial_of_s2_matches_coproduct() {
        let rg = module("Z2", "1", 2);
        let h = rg.sub_algebra.index_of("[2]").unwrap();
        let image = &rg.delta[h];
        assert_eq!(image.len(), 3);
        assert!(image.iter().all(|(_, c)| *c == BigInt::from(1)));
        let labels: Vec<&str> = image.support().map(|&g| rg.module.label(g)).sorted().collect();
        assert_eq!(labels, vec!["[1]⊗[1]", "[2]⊗[]", "[]⊗[2]"]);
    }

    #[test]
    fn trivial_in_z2() {
        let rg = module("Z2", "1", 3);
        let k_hopf = verify_module_k_hopf(&rg);
        assert!(k_hopf.passed(), "{k_hopf}");
        assert_eq!(rg.module.twist(), 2);
        for rep in [
            verify_restriction_psi_matrix(&rg).unwrap(),
            verify_delta_composite(&rg).unwrap(),
            verify_delta_morphisms(&rg).unwrap(),
            verify_tensor_decomposition(&rg).unwrap(),
        ] {
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn whole_group_is_hopf() {
        let rg = module("Z3", "whole", 2);
        assert_eq!(rg.module.twist(), 1);
        assert!(verify_module_k_hopf(&rg).passed());
        assert!(verify_delta_composite(&rg).unwrap().passed());
    }

    #[test]
    fn quaternion_center_composite_is_four() {
        let rg = module("Q8", "center", 1);
        let rep = verify_delta_composite(&rg).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.matrices["δ*δ degree 1"], vec![vec![4, 0], vec![0, 4]]);
    }

    #[test]
    fn alternating_subgroup_of_s3() {
        let rg = module("S3", "A3", 2);
        let rep = verify_restriction_psi_matrix(&rg).unwrap();
        assert!(rep.passed(), "{rep}");
        // conjugation by a transposition is not inner on A3
        assert_eq!(verify_module_k_hopf(&rg).status, Status::Informational);
    }

    #[test]
    fn tensor_decompositions() {
        for (g, cutoff) in [("Z3", 2), ("S3", 2)] {
            let rg = module(g, "1", cutoff);
            let rep = verify_tensor_decomposition(&rg).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn multiplicativity() {
        let g = Arc::new(group_by_name("Z2").unwrap());
        let tower = build_rg_basis(&g, 3).unwrap();
        assert!(verify_phi_multiplicative(&tower).unwrap().passed());
    }

    #[test]
    fn hopf_power_law() {
        for (m, n) in [(2, 3), (3, 2)] {
            let rep = verify_hopf_power_law(m, n).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }
}
