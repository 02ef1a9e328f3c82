use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_complex::Complex64;

use super::wreath::{build_wreath, phi_rho, Census, Factor, WreathGroup};
use super::OracleError;
use crate::groupkit::{character_table, CharacterTable, ClassFunction, FiniteGroup, SubgroupEmbedding};
use crate::lincomb::LinComb;
use crate::numeric::round_to_integer;
use crate::symfunc::Partition;
use crate::tensor_hopf::{GradedMap, PshAlgebra, PshModule};

/// A tuple of partitions indexed by the irreducibles of `G`. Displayed with
/// components joined by `⊗`, matching tensor-product labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition(pub Vec<Partition>);

impl Multipartition {
    pub fn size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    /// All multipartitions with `components` entries and total size `n`.
    pub fn all_of_size(n: usize, components: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for sizes in (0..components).map(|_| 0..=n).multi_cartesian_product() {
            if sizes.iter().sum::<usize>() != n {
                continue;
            }
            let choices: Vec<Vec<Partition>> = sizes.iter().map(|&k| Partition::all_of_size(k)).collect();
            out.extend(choices.into_iter().multi_cartesian_product().map(Multipartition));
        }
        if components == 0 && n == 0 {
            out.push(Multipartition(Vec::new()));
        }
        out
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join("⊗"))
    }
}

/// `S_n[G]` for one `n`, its irreducibles, and their multipartition labels.
#[derive(Debug)]
pub struct Level {
    pub wreath: WreathGroup,
    pub labels: Vec<Multipartition>,
}

impl Level {
    pub fn table(&self) -> &CharacterTable {
        self.wreath.character_table().expect("table computed when the level was built")
    }
}

/// The groups `S_n[G]` for `n ≤ cutoff` with the identification `Φ_G` of
/// their irreducibles with multipartitions over `irr(G)`.
#[derive(Debug)]
pub struct WreathTower {
    base: Arc<FiniteGroup>,
    base_table: CharacterTable,
    levels: Vec<Level>,
}

fn decompose_single(table: &CharacterTable, values: Vec<Complex64>, what: &str) -> Result<usize, OracleError> {
    let f = ClassFunction::new(Arc::clone(table.group()), values);
    let mult = table.decompose(&f)?;
    match mult.iter().positions(|&m| m != 0).collect::<Vec<_>>().as_slice() {
        [i] if mult[*i] == 1 => Ok(*i),
        _ => Err(OracleError::Identification(format!("{what} decomposes as {mult:?}, not a single irreducible"))),
    }
}

/// Builds `S_n[G]` for `n ≤ cutoff`, computes each character table on the
/// explicit Cayley table, and labels every irreducible by the multipartition
/// `λ` whose image `Φ_G(λ) = ind(⊗_ρ Φ_ρ(λ_ρ))` it is. Fails if some image is
/// not a single irreducible or the labeling is not a bijection.
pub fn build_rg_basis(base: &Arc<FiniteGroup>, cutoff: usize) -> Result<WreathTower, OracleError> {
    let base_table = character_table(base)?;
    let r = base_table.len();
    let mut levels: Vec<Level> = Vec::with_capacity(cutoff + 1);
    for n in 0..=cutoff {
        let wreath = build_wreath(base, n)?;
        let table = wreath.character_table()?;
        let mut labels: Vec<Option<Multipartition>> = vec![None; table.len()];
        let partitions = Multipartition::all_of_size(n, r);
        if partitions.len() != table.len() {
            return Err(OracleError::Identification(format!(
                "{} has {} irreducibles but there are {} multipartitions",
                wreath.group().name(),
                table.len(),
                partitions.len()
            )));
        }
        for lam in partitions {
            let blocks: Vec<(usize, &Partition)> = lam.0.iter().enumerate().filter(|(_, p)| p.size() > 0).collect();
            let image = if blocks.len() == 1 {
                let (rho, pi) = blocks[0];
                phi_rho(pi, base_table.irreducible(rho), &wreath).values().to_vec()
            } else {
                let factor_groups: Vec<&WreathGroup> = blocks.iter().map(|(_, p)| &levels[p.size()].wreath).collect();
                let pieces: Vec<ClassFunction> = blocks
                    .iter()
                    .zip(&factor_groups)
                    .map(|(&(rho, pi), w)| phi_rho(pi, base_table.irreducible(rho), w))
                    .collect();
                let census = Census::new(&wreath, &factor_groups.iter().map(|w| Factor::full(w)).collect::<Vec<_>>())?;
                census.induce(&pieces.iter().collect::<Vec<_>>())
            };
            let i = decompose_single(table, image, &format!("Φ({lam})"))?;
            if labels[i].replace(lam.clone()).is_some() {
                return Err(OracleError::Identification(format!("two multipartitions map to irreducible {i} of degree {n}")));
            }
        }
        let labels = labels.into_iter().collect::<Option<Vec<_>>>().expect("counts agree, so every irreducible is hit");
        levels.push(Level { wreath, labels });
    }
    Ok(WreathTower { base: Arc::clone(base), base_table, levels })
}

impl WreathTower {
    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn base_table(&self) -> &CharacterTable {
        &self.base_table
    }

    pub fn cutoff(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Level {
        &self.levels[n]
    }

    /// Global basis order: degree by degree, irreducibles in table order.
    /// Returns `(degree, index in level)` for each basis element.
    pub fn basis(&self) -> Vec<(usize, usize)> {
        self.levels.iter().enumerate().flat_map(|(n, l)| (0..l.labels.len()).map(move |i| (n, i))).collect()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut offsets = vec![0];
        for l in &self.levels {
            offsets.push(offsets.last().unwrap() + l.labels.len());
        }
        offsets
    }

    pub fn multipartition(&self, global: usize) -> &Multipartition {
        let (n, i) = self.basis()[global];
        &self.levels[n].labels[i]
    }

    pub fn labels(&self) -> Vec<String> {
        self.levels.iter().flat_map(|l| l.labels.iter().map(ToString::to_string)).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.levels.iter().enumerate().flat_map(|(n, l)| std::iter::repeat_n(n, l.labels.len())).collect()
    }

    /// `R(G)` truncated at the cutoff, with product by induction from
    /// `S_p[G] × S_q[G]` and coproduct by restriction to it.
    pub fn algebra(&self) -> Result<PshAlgebra, OracleError> {
        let name = format!("R({})", self.base.name());
        let (action, coaction) = self.module_tables(self, None)?;
        Ok(PshAlgebra::from_tables(name, self.cutoff(), self.labels(), self.degrees(), action, coaction)?)
    }

    /// Induction and restriction tables between `S_k[H] × S_l[G]` and
    /// `S_{k+l}[G]`, where `H` is this tower's base embedded by `emb`
    /// (`None` for `H = G`) and `G` is `outer`'s base.
    fn module_tables(
        &self,
        outer: &WreathTower,
        emb: Option<&SubgroupEmbedding>,
    ) -> Result<(HashMap<(usize, usize), LinComb<usize>>, Vec<LinComb<(usize, usize)>>), OracleError> {
        let cutoff = outer.cutoff().min(self.cutoff());
        let (inner_off, outer_off) = (self.offsets(), outer.offsets());
        let mut action = HashMap::new();
        let mut coaction = vec![LinComb::zero(); outer_off[outer.levels.len()]];
        for n in 0..=cutoff {
            let target = &outer.levels[n];
            let target_table = target.table();
            for k in 0..=n {
                let l = n - k;
                let (hk, gl) = (&self.levels[k], &outer.levels[l]);
                let first = match emb {
                    Some(e) => Factor::restricted(&hk.wreath, e),
                    None => Factor::full(&hk.wreath),
                };
                let census = Census::new(&target.wreath, &[first, Factor::full(&gl.wreath)])?;
                for (a, x) in hk.table().irreducibles().iter().enumerate() {
                    for (b, y) in gl.table().irreducibles().iter().enumerate() {
                        let induced = ClassFunction::new(Arc::clone(target_table.group()), census.induce(&[x, y]));
                        let mult = target_table.decompose(&induced)?;
                        let image = positive_comb(&mult, outer_off[n], "induction")?;
                        action.insert((inner_off[k] + a, outer_off[l] + b), image);
                        for (c, z) in target_table.irreducibles().iter().enumerate() {
                            let m = round_to_integer(census.restrict_inner(z, &[x, y]), || {
                                format!("restriction multiplicity in {}", target_table.group().name())
                            })?;
                            if m < 0 {
                                return Err(OracleError::Identification(format!("negative restriction multiplicity {m}")));
                            }
                            if m > 0 {
                                coaction[outer_off[n] + c].add_term((inner_off[k] + a, outer_off[l] + b), m);
                            }
                        }
                    }
                }
            }
        }
        Ok((action, coaction))
    }

    /// `R(G)` as a module over `R(H)` (this tower is `G`'s, `sub` is `H`'s),
    /// with action by induction from `S_k[H] × S_l[G]` and coaction by
    /// restriction to it. The twist is `[G : H]`.
    pub fn module_over(
        &self,
        sub: &WreathTower,
        emb: &SubgroupEmbedding,
        sub_algebra: Arc<PshAlgebra>,
    ) -> Result<PshModule, OracleError> {
        check_embedding(sub, self, emb)?;
        let (action, coaction) = sub.module_tables(self, Some(emb))?;
        Ok(PshModule::new(
            sub_algebra,
            emb.index() as u64,
            self.cutoff().min(sub.cutoff()),
            self.labels(),
            self.degrees(),
            action,
            coaction,
        )?)
    }

    /// `δ: R(H) → R(G)` by induction from `S_n[H]` to `S_n[G]`, and
    /// `δ*: R(G) → R(H)` by restriction, computed independently.
    pub fn delta_maps(&self, sub: &WreathTower, emb: &SubgroupEmbedding) -> Result<(GradedMap, GradedMap), OracleError> {
        check_embedding(sub, self, emb)?;
        let cutoff = self.cutoff().min(sub.cutoff());
        let (sub_off, off) = (sub.offsets(), self.offsets());
        let mut delta = vec![LinComb::zero(); sub_off[sub.levels.len()]];
        let mut delta_star = vec![LinComb::zero(); off[self.levels.len()]];
        for n in 0..=cutoff {
            let (hn, gn) = (&sub.levels[n], &self.levels[n]);
            let census = Census::new(&gn.wreath, &[Factor::restricted(&hn.wreath, emb)])?;
            let gt = gn.table();
            for (a, x) in hn.table().irreducibles().iter().enumerate() {
                let induced = ClassFunction::new(Arc::clone(gt.group()), census.induce(&[x]));
                delta[sub_off[n] + a] = positive_comb(&gt.decompose(&induced)?, off[n], "induction")?;
            }
            for (c, z) in gt.irreducibles().iter().enumerate() {
                let mut image = LinComb::zero();
                for (a, x) in hn.table().irreducibles().iter().enumerate() {
                    let m = round_to_integer(census.restrict_inner(z, &[x]), || "restriction multiplicity".into())?;
                    if m < 0 {
                        return Err(OracleError::Identification(format!("negative restriction multiplicity {m}")));
                    }
                    image.add_term(sub_off[n] + a, m);
                }
                delta_star[off[n] + c] = image;
            }
        }
        Ok((delta, delta_star))
    }
}

fn check_embedding(sub: &WreathTower, sup: &WreathTower, emb: &SubgroupEmbedding) -> Result<(), OracleError> {
    if emb.sub().name() != sub.base.name() || emb.sup().name() != sup.base.name() || emb.sub().order() != sub.base.order() {
        return Err(OracleError::Parameters(format!(
            "embedding {} → {} does not match towers over {} and {}",
            emb.sub().name(),
            emb.sup().name(),
            sub.base.name(),
            sup.base.name()
        )));
    }
    Ok(())
}

fn positive_comb(mult: &[i64], offset: usize, what: &str) -> Result<LinComb<usize>, OracleError> {
    if let Some(m) = mult.iter().find(|&&m| m < 0) {
        return Err(OracleError::Identification(format!("negative {what} multiplicity {m}")));
    }
    let mut out = LinComb::zero();
    for (i, &m) in mult.iter().enumerate().filter(|(_, &m)| m != 0) {
        out.add_term(offset + i, m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::group_by_name;

    #[test]
    fn multipartition_counts() {
        assert_eq!(Multipartition::all_of_size(2, 2).len(), 5);
        assert_eq!(Multipartition::all_of_size(3, 2).len(), 10);
        assert_eq!(Multipartition::all_of_size(0, 3).len(), 1);
        assert_eq!(Multipartition::all_of_size(2, 1).len(), 2);
        let lam = Multipartition(vec![Partition::row(2), Partition::empty()]);
        assert_eq!(lam.to_string(), "[2]⊗[]");
    }

    #[test]
    fn labeling_is_a_bijection() {
        for (name, cutoff) in [("Z2", 3), ("Z3", 2), ("S3", 2), ("1", 4)] {
            let g = Arc::new(group_by_name(name).unwrap());
            let tower = build_rg_basis(&g, cutoff).unwrap();
            let r = tower.base_table().len();
            for n in 0..=cutoff {
                assert_eq!(tower.level(n).labels.len(), Multipartition::all_of_size(n, r).len());
            }
        }
    }

    #[test]
    fn trivial_group_tower_is_symmetric_functions() {
        let g = Arc::new(group_by_name("1").unwrap());
        let tower = build_rg_basis(&g, 4).unwrap();
        let ours = Arc::new(tower.algebra().unwrap());
        let reference = Arc::new(PshAlgebra::symmetric_functions(4));
        let a = PshModule::canonical(Arc::clone(&ours), 4).unwrap();
        let b = PshModule::canonical(reference, 4).unwrap();
        assert_eq!(a.compare_tables(&b), Ok(()));
    }
}
