use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use itertools::Itertools;
use num_complex::Complex64;

use super::{OracleError, WreathElement};
use crate::groupkit::{character_table, CharacterTable, ClassFunction, FiniteGroup, GroupError, SubgroupEmbedding, ORDER_CAP};
use crate::symfunc::{sn_character, Partition};

/// Every element of `S_n[G]`, identity first.
pub fn wreath_elements(base: &FiniteGroup, n: usize) -> Vec<WreathElement> {
    if n == 0 {
        return vec![WreathElement::identity(0)];
    }
    let tuples: Vec<Vec<usize>> = (0..n).map(|_| base.elements()).multi_cartesian_product().collect();
    (0..n)
        .permutations(n)
        .flat_map(|perm| tuples.iter().map(move |t| WreathElement::new(perm.clone(), t.clone())))
        .collect()
}

pub fn wreath_order(base_order: usize, n: usize) -> Option<usize> {
    let fact = (1..=n).try_fold(1usize, |a, k| a.checked_mul(k))?;
    fact.checked_mul(base_order.checked_pow(u32::try_from(n).ok()?)?)
}

/// An explicit group `S_n[G]`, or a subgroup of one cut out by a predicate,
/// with its Cayley table and (on demand) its character table.
#[derive(Debug)]
pub struct WreathGroup {
    base: Arc<FiniteGroup>,
    n: usize,
    elements: Vec<WreathElement>,
    index: HashMap<WreathElement, usize>,
    group: Arc<FiniteGroup>,
    table: OnceLock<Result<CharacterTable, GroupError>>,
}

impl WreathGroup {
    /// The subgroup of `S_n[G]` of elements satisfying `keep`, named `name`.
    /// `keep` must select a subgroup.
    pub fn filtered(
        base: &Arc<FiniteGroup>,
        n: usize,
        name: String,
        keep: impl Fn(&WreathElement) -> bool,
    ) -> Result<Self, OracleError> {
        match wreath_order(base.order(), n) {
            Some(order) if order <= 50 * ORDER_CAP => {}
            order => {
                return Err(GroupError::OrderCap { name, order: order.unwrap_or(usize::MAX), cap: ORDER_CAP }.into())
            }
        }
        let elements: Vec<WreathElement> = wreath_elements(base, n).into_iter().filter(|e| keep(e)).collect();
        if elements.len() > ORDER_CAP {
            return Err(GroupError::OrderCap { name, order: elements.len(), cap: ORDER_CAP }.into());
        }
        let labels = elements
            .iter()
            .map(|e| format!("({}; {})", e.perm().iter().join(" "), e.entries().iter().map(|&g| base.element_label(g)).join(",")))
            .collect();
        let group = FiniteGroup::from_elements(name, &elements, |a, b| a.mul(b, base), labels)?;
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Ok(Self { base: Arc::clone(base), n, elements, index, group: Arc::new(group), table: OnceLock::new() })
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &WreathElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[WreathElement] {
        &self.elements
    }

    pub fn index_of(&self, e: &WreathElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn class_of_element(&self, e: &WreathElement) -> Option<usize> {
        self.index_of(e).map(|i| self.group.class_of(i))
    }

    pub fn character_table(&self) -> Result<&CharacterTable, GroupError> {
        self.table.get_or_init(|| character_table(&self.group)).as_ref().map_err(Clone::clone)
    }

    pub fn class_function(&self, mut f: impl FnMut(&WreathElement) -> Complex64) -> ClassFunction {
        ClassFunction::from_element_fn(&self.group, |i| f(&self.elements[i]))
    }
}

/// `S_n[G]` as an explicit group. Requires `n!·|G|^n ≤ 500`.
pub fn build_wreath(base: &Arc<FiniteGroup>, n: usize) -> Result<WreathGroup, OracleError> {
    let name = format!("S{n}[{}]", base.name());
    match wreath_order(base.order(), n) {
        Some(order) if order <= ORDER_CAP => WreathGroup::filtered(base, n, name, |_| true),
        order => Err(GroupError::OrderCap { name, order: order.unwrap_or(usize::MAX), cap: ORDER_CAP }.into()),
    }
}

/// The character of `Φ_ρ(π)` at `(σ, g)`:
/// `χ_π(σ) · Π_{cycles c} χ_ρ(ordered product of g along c)`.
pub fn phi_rho_value(pi: &Partition, rho: &ClassFunction, e: &WreathElement) -> Complex64 {
    let base = rho.group();
    let product: Complex64 = e.cycles().iter().map(|c| rho.at(e.cycle_product(c, base))).product();
    product * sn_character(pi, &e.cycle_type()) as f64
}

/// `Φ_ρ(π)` as a class function on `S_n[G]`.
pub fn phi_rho(pi: &Partition, rho: &ClassFunction, wreath: &WreathGroup) -> ClassFunction {
    assert_eq!(pi.size(), wreath.degree(), "|π| = n");
    wreath.class_function(|e| phi_rho_value(pi, rho, e))
}

/// One block of a Young-type subgroup `S_{n_1}[K_1] × ⋯ × S_{n_t}[K_t]` of
/// `S_n[G]`: the factor group and, when `K ≠ G`, the embedding `K → G`.
/// The factor group may itself be any subgroup of `S_{n_b}[K_b]` built with
/// [`WreathGroup::filtered`].
pub struct Factor<'a> {
    pub wreath: &'a WreathGroup,
    pub embedding: Option<&'a SubgroupEmbedding>,
}

impl<'a> Factor<'a> {
    pub fn full(wreath: &'a WreathGroup) -> Self {
        Self { wreath, embedding: None }
    }

    pub fn restricted(wreath: &'a WreathGroup, embedding: &'a SubgroupEmbedding) -> Self {
        Self { wreath, embedding: Some(embedding) }
    }
}

/// For a Young-type subgroup `K ⊂ W = S_n[G]`, the number of elements of `K`
/// in each `W`-class, split by the classes of their block components.
/// Induction and restriction between `K` and `W` are both read off it.
#[derive(Debug, Clone)]
pub struct Census {
    sub_order: usize,
    sup_order: usize,
    sup_class_sizes: Vec<usize>,
    counts: Vec<(Vec<usize>, Vec<u64>)>,
}

impl Census {
    pub fn new(sup: &WreathGroup, factors: &[Factor<'_>]) -> Result<Self, OracleError> {
        let total: usize = factors.iter().map(|f| f.wreath.degree()).sum();
        if total != sup.degree() {
            return Err(OracleError::Parameters(format!(
                "blocks of total size {total} in {}",
                sup.group().name()
            )));
        }
        let preimages: Vec<Option<Vec<Option<usize>>>> = factors
            .iter()
            .map(|f| {
                f.embedding.map(|emb| {
                    let mut pre = vec![None; sup.base().order()];
                    for h in emb.sub().elements() {
                        pre[emb.embed(h)] = Some(h);
                    }
                    pre
                })
            })
            .collect();
        let g = sup.group();
        let mut buckets: HashMap<Vec<usize>, Vec<u64>> = HashMap::new();
        let mut sub_order = 0;
        'elements: for (i, e) in sup.elements().iter().enumerate() {
            let mut key = Vec::with_capacity(factors.len());
            let mut start = 0;
            for (f, pre) in factors.iter().zip(&preimages) {
                let len = f.wreath.degree();
                let Some(mut part) = e.block(start, len) else { continue 'elements };
                if let Some(pre) = pre {
                    let Some(entries) = part.entries().iter().map(|&x| pre[x]).collect::<Option<Vec<_>>>() else {
                        continue 'elements;
                    };
                    part = WreathElement::new(part.perm().to_vec(), entries);
                }
                // factor groups may be proper subgroups of S_len[G]
                let Some(class) = f.wreath.class_of_element(&part) else { continue 'elements };
                key.push(class);
                start += len;
            }
            sub_order += 1;
            buckets.entry(key).or_insert_with(|| vec![0; g.class_count()])[g.class_of(i)] += 1;
        }
        let mut counts: Vec<_> = buckets.into_iter().collect();
        counts.sort();
        Ok(Self {
            sub_order,
            sup_order: g.order(),
            sup_class_sizes: (0..g.class_count()).map(|c| g.class_size(c)).collect(),
            counts,
        })
    }

    pub fn sub_order(&self) -> usize {
        self.sub_order
    }

    /// Values on the classes of `W` of the character induced from
    /// `f_1 ⊗ ⋯ ⊗ f_t` (each `f_b` given by class values of its factor).
    pub fn induce(&self, factors: &[&ClassFunction]) -> Vec<Complex64> {
        let mut sums = vec![Complex64::new(0.0, 0.0); self.sup_class_sizes.len()];
        for (key, per_class) in &self.counts {
            let value: Complex64 = key.iter().zip(factors).map(|(&c, f)| f.at_class(c)).product();
            for (s, &n) in sums.iter_mut().zip(per_class) {
                *s += value * n as f64;
            }
        }
        let ratio = self.sup_order as f64 / self.sub_order as f64;
        sums.iter().zip(&self.sup_class_sizes).map(|(s, &size)| s * ratio / size as f64).collect()
    }

    /// `⟨res_K z, f_1 ⊗ ⋯ ⊗ f_t⟩_K`.
    pub fn restrict_inner(&self, z: &ClassFunction, factors: &[&ClassFunction]) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (key, per_class) in &self.counts {
            let value: Complex64 = key.iter().zip(factors).map(|(&c, f)| f.at_class(c)).product();
            let zsum: Complex64 = per_class.iter().enumerate().map(|(c, &n)| z.at_class(c) * n as f64).sum();
            total += zsum * value.conj();
        }
        total / self.sub_order as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::group_by_name;

    fn base(name: &str) -> Arc<FiniteGroup> {
        Arc::new(group_by_name(name).unwrap())
    }

    #[test]
    fn orders_and_classes() {
        let z2 = base("Z2");
        assert_eq!(build_wreath(&z2, 2).unwrap().order(), 8);
        assert_eq!(build_wreath(&z2, 3).unwrap().order(), 48);
        let w = build_wreath(&z2, 2).unwrap();
        assert_eq!(w.group().class_count(), 5);
        assert_eq!(build_wreath(&z2, 4).unwrap().order(), 384);
        assert!(matches!(build_wreath(&z2, 5), Err(OracleError::Group(GroupError::OrderCap { .. }))));
        assert_eq!(build_wreath(&base("S3"), 2).unwrap().order(), 72);
        assert_eq!(build_wreath(&z2, 0).unwrap().order(), 1);
    }

    #[test]
    fn phi_rho_is_irreducible_with_expected_degree() {
        for (name, n) in [("Z2", 3), ("Z3", 2), ("S3", 2), ("Q8", 1)] {
            let g = base(name);
            let w = build_wreath(&g, n).unwrap();
            let t = character_table(&g).unwrap();
            for (r, rho) in t.irreducibles().iter().enumerate() {
                for pi in Partition::all_of_size(n) {
                    let chi = phi_rho(&pi, rho, &w);
                    assert!((chi.norm_squared() - 1.0).abs() < 1e-9, "{name} {pi} {r}");
                    let dim = crate::symfunc::schur_dimension(&pi).to_string().parse::<f64>().unwrap();
                    assert!((chi.degree() - dim * (t.degrees()[r] as f64).powi(n as i32)).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn sign_character_example() {
        let g = base("Z2");
        let w = build_wreath(&g, 2).unwrap();
        let sign = character_table(&g).unwrap().irreducible(1).clone();
        let chi = phi_rho(&Partition::row(2), &sign, &w);
        for e in w.elements() {
            let expect: f64 = e.entries().iter().map(|&x| if x == 0 { 1.0 } else { -1.0 }).product();
            assert!((chi.at(w.index_of(e).unwrap()).re - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn census_induction_matches_generic_induction() {
        let g = base("Z2");
        let w3 = build_wreath(&g, 3).unwrap();
        let (w1, w2) = (build_wreath(&g, 1).unwrap(), build_wreath(&g, 2).unwrap());
        let census = Census::new(&w3, &[Factor::full(&w1), Factor::full(&w2)]).unwrap();
        assert_eq!(census.sub_order(), 16);
        let sub = WreathGroup::filtered(&g, 3, "K".into(), |e| e.block(0, 1).is_some()).unwrap();
        let emb = SubgroupEmbedding::new(
            Arc::clone(sub.group()),
            Arc::clone(w3.group()),
            sub.elements().iter().map(|e| w3.index_of(e).unwrap()).collect(),
        )
        .unwrap();
        let (t1, t2) = (w1.character_table().unwrap(), w2.character_table().unwrap());
        for a in t1.irreducibles() {
            for b in t2.irreducibles() {
                let f = sub.class_function(|e| {
                    let x = w1.class_of_element(&e.block(0, 1).unwrap()).unwrap();
                    let y = w2.class_of_element(&e.block(1, 2).unwrap()).unwrap();
                    a.at_class(x) * b.at_class(y)
                });
                let generic = emb.induce(&f);
                let fast = ClassFunction::new(Arc::clone(w3.group()), census.induce(&[a, b]));
                assert!(generic.max_distance(&fast) < 1e-9);
                for z in w3.character_table().unwrap().irreducibles() {
                    let direct = emb.restrict(z).inner(&f);
                    assert!((direct - census.restrict_inner(z, &[a, b])).norm() < 1e-9);
                }
            }
        }
    }
}
