use std::collections::HashSet;
use std::sync::Arc;

use num_complex::Complex64;

use super::{CharacterTable, ClassFunction, FiniteGroup, GroupError};
use crate::report::CheckReport;
use crate::tensor_hopf::HopfMatrix;

/// An injective homomorphism `H → G`, stored as the image of every element
/// of `H`.
#[derive(Debug, Clone)]
pub struct SubgroupEmbedding {
    sub: Arc<FiniteGroup>,
    sup: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl SubgroupEmbedding {
    pub fn new(sub: Arc<FiniteGroup>, sup: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self, GroupError> {
        let bad = |m: &str| Err(GroupError::NotASubgroup(format!("{} → {}: {m}", sub.name(), sup.name())));
        if map.len() != sub.order() || map.iter().any(|&g| g >= sup.order()) {
            return bad("map has the wrong shape");
        }
        if map.iter().collect::<HashSet<_>>().len() != map.len() {
            return bad("map is not injective");
        }
        if map[0] != 0 {
            return bad("identity not preserved");
        }
        for a in sub.elements() {
            for b in sub.elements() {
                if map[sub.mul(a, b)] != sup.mul(map[a], map[b]) {
                    return bad("map is not a homomorphism");
                }
            }
        }
        Ok(Self { sub, sup, map })
    }

    /// The subgroup formed by `elements` of `sup` (identity first), as a group
    /// in its own right.
    pub fn from_elements(sup: &Arc<FiniteGroup>, name: &str, elements: Vec<usize>) -> Result<Self, GroupError> {
        if elements.first() != Some(&0) {
            return Err(GroupError::NotASubgroup(format!("{name}: identity must come first")));
        }
        let labels = elements.iter().map(|&g| sup.element_label(g).to_string()).collect();
        let sub = FiniteGroup::from_elements(name, &elements, |&a, &b| sup.mul(a, b), labels)
            .map_err(|e| GroupError::NotASubgroup(format!("{name} in {}: {e}", sup.name())))?;
        Self::new(Arc::new(sub), Arc::clone(sup), elements)
    }

    pub fn whole(group: &Arc<FiniteGroup>) -> Self {
        Self { sub: Arc::clone(group), sup: Arc::clone(group), map: group.elements().collect() }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Self::from_elements(group, "1", vec![0]).expect("trivial subgroup")
    }

    pub fn sub(&self) -> &Arc<FiniteGroup> {
        &self.sub
    }

    pub fn sup(&self) -> &Arc<FiniteGroup> {
        &self.sup
    }

    pub fn image(&self) -> &[usize] {
        &self.map
    }

    pub fn embed(&self, h: usize) -> usize {
        self.map[h]
    }

    pub fn index(&self) -> usize {
        self.sup.order() / self.sub.order()
    }

    pub fn is_normal(&self) -> bool {
        let image: HashSet<usize> = self.map.iter().copied().collect();
        self.sup.elements().all(|g| self.map.iter().all(|&x| image.contains(&self.sup.conjugate(g, x))))
    }

    pub fn restrict(&self, f: &ClassFunction) -> ClassFunction {
        ClassFunction::from_element_fn(&self.sub, |h| f.at(self.map[h]))
    }

    /// `ind f (c) = |G| / (|H| |c|) · Σ_{h ∈ H ∩ c} f(h)`.
    pub fn induce(&self, f: &ClassFunction) -> ClassFunction {
        let g = &self.sup;
        let mut sums = vec![Complex64::new(0.0, 0.0); g.class_count()];
        for h in self.sub.elements() {
            sums[g.class_of(self.map[h])] += f.at(h);
        }
        let ratio = g.order() as f64 / self.sub.order() as f64;
        let values = sums.iter().enumerate().map(|(c, s)| s * ratio / g.class_size(c) as f64).collect();
        ClassFunction::new(Arc::clone(g), values)
    }

    /// The textbook formula `ind f (g) = (1/|H|) Σ_{x ∈ G} f°(x g x⁻¹)`,
    /// kept separate from [`Self::induce`] as an independent check.
    pub fn induce_by_conjugation(&self, f: &ClassFunction) -> ClassFunction {
        let mut preimage = vec![None; self.sup.order()];
        for h in self.sub.elements() {
            preimage[self.map[h]] = Some(h);
        }
        ClassFunction::from_element_fn(&self.sup, |g| {
            let total: Complex64 = self
                .sup
                .elements()
                .filter_map(|x| preimage[self.sup.conjugate(x, g)].map(|h| f.at(h)))
                .sum();
            total / self.sub.order() as f64
        })
    }

    /// Whether every inner automorphism of `G` restricts to an inner
    /// automorphism of `H` (in particular `H` is normal).
    pub fn inner_condition(&self) -> bool {
        if !self.is_normal() {
            return false;
        }
        let mut preimage = vec![usize::MAX; self.sup.order()];
        for h in self.sub.elements() {
            preimage[self.map[h]] = h;
        }
        let action = |g: usize| -> Vec<usize> {
            self.map.iter().map(|&x| preimage[self.sup.conjugate(g, x)]).collect()
        };
        let inner: HashSet<Vec<usize>> = self.map.iter().map(|&h| action(h)).collect();
        self.sup.elements().all(|g| inner.contains(&action(g)))
    }

    /// One representative per left coset `gH`, each centralizing `H`, when
    /// such a choice exists.
    pub fn centralizing_coset_representatives(&self) -> Option<Vec<usize>> {
        let g = &self.sup;
        let mut covered = vec![false; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if covered[x] {
                continue;
            }
            let coset: Vec<usize> = self.map.iter().map(|&h| g.mul(x, h)).collect();
            for &y in &coset {
                covered[y] = true;
            }
            let rep = coset.into_iter().find(|&y| self.map.iter().all(|&h| g.mul(y, h) == g.mul(h, y)))?;
            reps.push(rep);
        }
        Some(reps)
    }
}

fn multiplicity_matrix(
    rows: usize,
    cols: usize,
    mut entry: impl FnMut(usize, usize) -> Result<i64, GroupError>,
) -> Result<HopfMatrix, GroupError> {
    let mut m = vec![vec![0u64; cols]; rows];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let v = entry(i, j)?;
            *slot = u64::try_from(v).map_err(|_| GroupError::Numerical(format!("negative multiplicity {v}")))?;
        }
    }
    HopfMatrix::new(m).map_err(|e| GroupError::Numerical(e.to_string()))
}

/// `M_{H,G}`: rows `irr(H)`, columns `irr(G)`, entry `⟨π, res ρ⟩`.
pub fn restriction_matrix(
    emb: &SubgroupEmbedding,
    sub_table: &CharacterTable,
    sup_table: &CharacterTable,
) -> Result<HopfMatrix, GroupError> {
    let restricted: Vec<ClassFunction> = sup_table.irreducibles().iter().map(|rho| emb.restrict(rho)).collect();
    multiplicity_matrix(sub_table.len(), sup_table.len(), |i, j| {
        Ok(restricted[j].inner_int(sub_table.irreducible(i))?)
    })
}

/// Rows `irr(G)`, columns `irr(H)`, entry `⟨ind π, ρ⟩`, with induction by
/// the conjugation formula.
pub fn induction_matrix(
    emb: &SubgroupEmbedding,
    sub_table: &CharacterTable,
    sup_table: &CharacterTable,
) -> Result<HopfMatrix, GroupError> {
    let induced: Vec<ClassFunction> =
        sub_table.irreducibles().iter().map(|pi| emb.induce_by_conjugation(pi)).collect();
    multiplicity_matrix(sup_table.len(), sub_table.len(), |i, j| {
        Ok(induced[j].inner_int(sup_table.irreducible(i))?)
    })
}

pub fn to_rows(m: &HopfMatrix) -> Vec<Vec<i64>> {
    m.entries().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
}

/// `M_{H,G} M_{H,G}ᵀ = [G : H] I`. Informational when the inner-automorphism
/// hypothesis fails.
pub fn verify_restriction_gram(
    emb: &SubgroupEmbedding,
    sub_table: &CharacterTable,
    sup_table: &CharacterTable,
) -> Result<CheckReport, GroupError> {
    let m = restriction_matrix(emb, sub_table, sup_table)?;
    let product = m.matmul(&m.transpose()).map_err(|e| GroupError::Numerical(e.to_string()))?;
    let expected = HopfMatrix::scalar(emb.index() as u64, m.rows());
    let check = format!("M·Mᵀ = [G:H]·I for {} ⊂ {}", emb.sub().name(), emb.sup().name());
    let report = if product == expected {
        CheckReport::pass(check)
    } else {
        let (i, j) = (0..m.rows())
            .flat_map(|i| (0..m.rows()).map(move |j| (i, j)))
            .find(|&(i, j)| product.entry(i, j) != expected.entry(i, j))
            .expect("matrices differ somewhere");
        CheckReport::fail(check, format!("entry ({i}, {j}) is {}, expected {}", product.entry(i, j), expected.entry(i, j)))
    }
    .with_matrix("M", to_rows(&m))
    .with_matrix("M·Mᵀ", to_rows(&product));
    Ok(if emb.inner_condition() {
        report
    } else {
        report.informational("inner-automorphism hypothesis does not hold")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::{character_table, group_by_name, subgroup_by_name};
    use crate::report::Status;

    fn setup(g: &str, h: &str) -> (SubgroupEmbedding, CharacterTable, CharacterTable) {
        let g = Arc::new(group_by_name(g).unwrap());
        let emb = subgroup_by_name(&g, h).unwrap();
        let th = character_table(emb.sub()).unwrap();
        let tg = character_table(&g).unwrap();
        (emb, th, tg)
    }

    #[test]
    fn restriction_examples() {
        let (emb, th, tg) = setup("S3", "A3");
        assert_eq!(to_rows(&restriction_matrix(&emb, &th, &tg).unwrap()), vec![vec![1, 1, 0], vec![0, 0, 1], vec![0, 0, 1]]);
        let (emb, th, tg) = setup("Q8", "center");
        assert_eq!(to_rows(&restriction_matrix(&emb, &th, &tg).unwrap()), vec![vec![1, 1, 1, 1, 0], vec![0, 0, 0, 0, 2]]);
        let (emb, th, tg) = setup("S4", "1");
        assert_eq!(to_rows(&restriction_matrix(&emb, &th, &tg).unwrap()), vec![vec![1, 1, 2, 3, 3]]);
    }

    #[test]
    fn frobenius_reciprocity_at_matrix_level() {
        for (g, h) in [("S3", "A3"), ("S3", "Z2"), ("Q8", "center"), ("S4", "A4"), ("D4", "Z4"), ("Z6", "Z3"), ("A4", "Z3")] {
            let (emb, th, tg) = setup(g, h);
            let res = restriction_matrix(&emb, &th, &tg).unwrap();
            assert_eq!(res, induction_matrix(&emb, &th, &tg).unwrap().transpose(), "{h} ⊂ {g}");
            for pi in th.irreducibles() {
                assert!(emb.induce(pi).max_distance(&emb.induce_by_conjugation(pi)) < 1e-9);
            }
        }
    }

    #[test]
    fn res_ind_of_trivial_is_regular() {
        let g = Arc::new(group_by_name("Z2").unwrap());
        let emb = SubgroupEmbedding::trivial(&g);
        let ind = emb.induce(&ClassFunction::trivial(emb.sub()));
        assert!(ind.max_distance(&ClassFunction::regular(&g)) < 1e-12);
    }

    #[test]
    fn inner_condition_examples() {
        let cond = |g: &str, h: &str| setup(g, h).0.inner_condition();
        assert!(cond("Z4", "Z2"));
        assert!(cond("Q8", "center"));
        assert!(!cond("S3", "A3"));
        assert!(!cond("S3", "Z2"));
        for name in crate::groupkit::catalog_names() {
            assert!(cond(&name, "1") && cond(&name, "whole"), "{name}");
        }
        let (emb, _, _) = setup("Q8", "center");
        assert_eq!(emb.centralizing_coset_representatives().unwrap().len(), 4);
    }

    #[test]
    fn restriction_gram_examples() {
        let (emb, th, tg) = setup("S3", "1");
        let rep = verify_restriction_gram(&emb, &th, &tg).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.matrices["M·Mᵀ"], vec![vec![6]]);
        let (emb, th, tg) = setup("Q8", "center");
        assert!(verify_restriction_gram(&emb, &th, &tg).unwrap().passed());
        let (emb, th, tg) = setup("S3", "A3");
        let rep = verify_restriction_gram(&emb, &th, &tg).unwrap();
        assert_eq!(rep.status, Status::Informational);
        assert_eq!(rep.matrices["M·Mᵀ"], vec![vec![2, 0, 0], vec![0, 1, 1], vec![0, 1, 1]]);
    }
}
