use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_complex::Complex64;

use super::RestrictedError;
use crate::groupkit::{character_table, CharacterTable, ClassFunction, FiniteGroup, SubgroupEmbedding, TABLE_TOLERANCE};
use crate::numeric::round_to_integer;
use crate::wreath_oracle::{Census, Factor, WreathElement, WreathGroup};

/// `G/H` built from coset representatives (smallest element of each coset),
/// with the reduction map `G → G/H`.
pub fn quotient_group(emb: &SubgroupEmbedding) -> Result<(FiniteGroup, Vec<usize>), RestrictedError> {
    if !emb.is_normal() {
        return Err(RestrictedError::Parameters(format!("{} is not normal in {}", emb.sub().name(), emb.sup().name())));
    }
    let g = emb.sup();
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] == usize::MAX {
            for &h in emb.image() {
                coset_of[g.mul(x, h)] = reps.len();
            }
            reps.push(x);
        }
    }
    let table = reps.iter().map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect()).collect();
    let quotient = FiniteGroup::from_table(format!("{}/{}", g.name(), emb.sub().name()), table)?;
    Ok((quotient, coset_of))
}

fn require_abelian(g: &FiniteGroup) -> Result<(), RestrictedError> {
    if g.is_abelian() {
        Ok(())
    } else {
        Err(RestrictedError::NonAbelian(g.name().to_string()))
    }
}

/// `G_n(G, H)`: monomial matrices over the abelian group `G` whose entries
/// sum into `H`.
pub fn build_restricted(emb: &SubgroupEmbedding, n: usize) -> Result<WreathGroup, RestrictedError> {
    let g = emb.sup();
    require_abelian(g)?;
    let image: HashSet<usize> = emb.image().iter().copied().collect();
    let name = format!("G_{n}({},{})", g.name(), emb.sub().name());
    Ok(WreathGroup::filtered(g, n, name, |e| image.contains(&e.entry_sum(g)))?)
}

/// `G(m, p, n) = G_n(Z/m, pZ/m)`, returned as the embedding `pZ/m ⊂ Z/m`.
pub fn reflection_subgroup(m: usize, p: usize) -> Result<SubgroupEmbedding, RestrictedError> {
    if p == 0 || !m.is_multiple_of(p) {
        return Err(RestrictedError::Parameters(format!("p = {p} does not divide m = {m}")));
    }
    let g = Arc::new(crate::groupkit::cyclic(m)?);
    let elements = g.generated(&[p % m]);
    Ok(SubgroupEmbedding::from_elements(&g, &format!("{p}Z{m}"), elements)?)
}

/// One degree: `G_n(G, H)`, `G_n(G/H, 1)` and the reduction between them.
#[derive(Debug)]
pub struct RestrictedLevel {
    pub group: WreathGroup,
    pub quotient: WreathGroup,
    reduce: Vec<usize>,
    fibers: Vec<Vec<usize>>,
}

impl RestrictedLevel {
    pub fn table(&self) -> Result<&CharacterTable, RestrictedError> {
        Ok(self.group.character_table()?)
    }

    pub fn quotient_table(&self) -> Result<&CharacterTable, RestrictedError> {
        Ok(self.quotient.character_table()?)
    }

    /// `H^n` as elements of `G_n(G, H)`.
    pub fn kernel(&self) -> &[usize] {
        &self.fibers[0]
    }

    pub fn reduce(&self, element: usize) -> usize {
        self.reduce[element]
    }
}

/// An element of `⊗_{l ∈ H*} R(G/H, 1)` from the basis: for each linear
/// character `l` of `H`, a degree and an irreducible of `G_degree(G/H, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockIndex(pub Vec<(usize, usize)>);

impl BlockIndex {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(k, _)| k).sum()
    }

    /// Number of nonzero blocks.
    pub fn length(&self) -> usize {
        self.0.iter().filter(|&&(k, _)| k > 0).count()
    }
}

impl fmt::Display for BlockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().map(|(k, i)| format!("{k}.{i}")).join("⊗"))
    }
}

/// The groups `G_n(G, H)` and `G_n(G/H, 1)` for `n ≤ cutoff` with the maps
/// between their character rings.
#[derive(Debug)]
pub struct RestrictedTower {
    embedding: SubgroupEmbedding,
    quotient: Arc<FiniteGroup>,
    h_table: CharacterTable,
    to_h: Vec<Option<usize>>,
    levels: Vec<RestrictedLevel>,
}

/// Builds both towers and checks elementwise that reducing entries mod `H`
/// maps `G_n(G, H)` homomorphically onto `G_n(G/H, 1)` with fibers of size
/// `|H|^n` lying over diagonal elements.
pub fn build_restricted_tower(emb: &SubgroupEmbedding, cutoff: usize) -> Result<RestrictedTower, RestrictedError> {
    let g = emb.sup();
    require_abelian(g)?;
    let (quotient, coset_of) = quotient_group(emb)?;
    let quotient = Arc::new(quotient);
    let trivial = SubgroupEmbedding::trivial(&quotient);
    let h_table = character_table(emb.sub())?;
    let mut to_h = vec![None; g.order()];
    for h in emb.sub().elements() {
        to_h[emb.embed(h)] = Some(h);
    }
    let mut levels = Vec::with_capacity(cutoff + 1);
    for n in 0..=cutoff {
        let group = build_restricted(emb, n)?;
        let quotient_level = build_restricted(&trivial, n)?;
        let mut reduce = Vec::with_capacity(group.order());
        for e in group.elements() {
            let image = WreathElement::new(e.perm().to_vec(), e.entries().iter().map(|&x| coset_of[x]).collect());
            let index = quotient_level.index_of(&image).ok_or_else(|| {
                RestrictedError::Reduction(format!("{image:?} is not in {}", quotient_level.group().name()))
            })?;
            reduce.push(index);
        }
        let mut fibers = vec![Vec::new(); quotient_level.order()];
        for (i, &r) in reduce.iter().enumerate() {
            fibers[r].push(i);
        }
        let fiber_size = emb.sub().order().pow(n as u32);
        if let Some(q) = fibers.iter().position(|f| f.len() != fiber_size) {
            return Err(RestrictedError::Reduction(format!("fiber over element {q} has {} elements", fibers[q].len())));
        }
        if fibers[0].iter().any(|&k| group.element(k).perm().iter().enumerate().any(|(i, &j)| i != j)) {
            return Err(RestrictedError::Reduction("kernel contains a non-diagonal element".into()));
        }
        let (big, small) = (group.group(), quotient_level.group());
        for a in big.elements() {
            for b in big.elements() {
                if reduce[big.mul(a, b)] != small.mul(reduce[a], reduce[b]) {
                    return Err(RestrictedError::Reduction(format!("not multiplicative at ({a}, {b})")));
                }
            }
        }
        levels.push(RestrictedLevel { group, quotient: quotient_level, reduce, fibers });
    }
    Ok(RestrictedTower { embedding: emb.clone(), quotient, h_table, to_h, levels })
}

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

impl RestrictedTower {
    pub fn embedding(&self) -> &SubgroupEmbedding {
        &self.embedding
    }

    pub fn quotient(&self) -> &Arc<FiniteGroup> {
        &self.quotient
    }

    /// The linear characters `H*` of the abelian group `H`.
    pub fn linear_characters(&self) -> &CharacterTable {
        &self.h_table
    }

    pub fn index(&self) -> usize {
        self.embedding.index()
    }

    pub fn cutoff(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &RestrictedLevel {
        &self.levels[n]
    }

    /// `l_n`: the character `l` of `H` pulled back along the entry sum.
    pub fn l_n(&self, n: usize, l: usize) -> ClassFunction {
        let level = &self.levels[n];
        let g = self.embedding.sup();
        let chi = self.h_table.irreducible(l);
        level.group.class_function(|e| chi.at(self.to_h[e.entry_sum(g)].expect("entry sum lies in H")))
    }

    /// Inflation of a class function of `G_n(G/H, 1)` along the reduction.
    pub fn phi_star(&self, n: usize, f: &ClassFunction) -> ClassFunction {
        let level = &self.levels[n];
        ClassFunction::from_element_fn(level.group.group(), |i| f.at(level.reduce[i]))
    }

    /// `τ_l`: tensoring with `l_n`.
    pub fn tau(&self, n: usize, l: usize, f: &ClassFunction) -> ClassFunction {
        f.pointwise(&self.l_n(n, l))
    }

    /// `Φ_l = τ_l ∘ φ*`.
    pub fn phi_l(&self, n: usize, l: usize, f: &ClassFunction) -> ClassFunction {
        self.tau(n, l, &self.phi_star(n, f))
    }

    /// `Ψ_l(π) = Hom_{H^n}(l_n, π)`, whose character at `ḡ` is
    /// `(1/|H|^n) Σ_{h ∈ H^n} conj(l_n(h g̃)) χ_π(h g̃)` for a lift `g̃`. Every
    /// lift is compared in debug builds, two in release builds.
    pub fn psi_l(&self, n: usize, l: usize, chi: &ClassFunction) -> Result<ClassFunction, RestrictedError> {
        let level = &self.levels[n];
        let ln = self.l_n(n, l);
        let big = level.group.group();
        let kernel = level.kernel();
        let at_lift = |lift: usize| -> Complex64 {
            let total: Complex64 = kernel
                .iter()
                .map(|&h| {
                    let x = big.mul(h, lift);
                    ln.at(x).conj() * chi.at(x)
                })
                .sum();
            total / kernel.len() as f64
        };
        let small = level.quotient.group();
        let mut values = Vec::with_capacity(small.class_count());
        for c in 0..small.class_count() {
            let fiber = &level.fibers[small.class_rep(c)];
            let checked = if cfg!(debug_assertions) { fiber.len() } else { fiber.len().min(2) };
            let value = at_lift(fiber[0]);
            for &lift in &fiber[1..checked] {
                let other = at_lift(lift);
                if (other - value).norm() > TABLE_TOLERANCE {
                    return Err(RestrictedError::LiftDependence(format!(
                        "class {c} of {}: {value} at lift {} but {other} at lift {lift}",
                        small.name(),
                        fiber[0]
                    )));
                }
            }
            values.push(value);
        }
        Ok(ClassFunction::new(Arc::clone(small), values))
    }

    /// Induction to `G_n(G, H)` from the block subgroup `Π_b G_{k_b}(G, H)`
    /// (or the same for `G/H` when `quotient`) of the product of `pieces`.
    pub fn induce_blocks(&self, pieces: &[(usize, &ClassFunction)], quotient: bool) -> Result<ClassFunction, RestrictedError> {
        let n: usize = pieces.iter().map(|&(k, _)| k).sum();
        let pieces: Vec<_> = pieces.iter().filter(|&&(k, _)| k > 0).collect();
        let pick = |k: usize| if quotient { &self.levels[k].quotient } else { &self.levels[k].group };
        let sup = pick(n);
        if pieces.len() == 1 {
            return Ok(pieces[0].1.clone());
        }
        let factors: Vec<Factor<'_>> = pieces.iter().map(|&&(k, _)| Factor::full(pick(k))).collect();
        let census = Census::new(sup, &factors)?;
        let values = census.induce(&pieces.iter().map(|&&(_, f)| f).collect::<Vec<_>>());
        Ok(ClassFunction::new(Arc::clone(sup.group()), values))
    }

    /// `⟨res z, ⊗ pieces⟩` over the block subgroup, with `z` on degree `Σ k_b`.
    pub fn restrict_blocks(
        &self,
        z: &ClassFunction,
        pieces: &[(usize, &ClassFunction)],
        quotient: bool,
    ) -> Result<i64, RestrictedError> {
        let n: usize = pieces.iter().map(|&(k, _)| k).sum();
        let pieces: Vec<_> = pieces.iter().filter(|&&(k, _)| k > 0).collect();
        let pick = |k: usize| if quotient { &self.levels[k].quotient } else { &self.levels[k].group };
        let value = if pieces.is_empty() {
            z.at_class(0)
        } else {
            let factors: Vec<Factor<'_>> = pieces.iter().map(|&&(k, _)| Factor::full(pick(k))).collect();
            Census::new(pick(n), &factors)?.restrict_inner(z, &pieces.iter().map(|&&(_, f)| f).collect::<Vec<_>>())
        };
        Ok(round_to_integer(value, || format!("restriction multiplicity in {}", pick(n).group().name()))?)
    }

    /// Basis of `⊗_{l ∈ H*} R(G/H, 1)` in degree `n`.
    pub fn block_indices(&self, n: usize) -> Result<Vec<BlockIndex>, RestrictedError> {
        let mut out = Vec::new();
        for split in compositions(n, self.h_table.len()) {
            let choices: Vec<Vec<(usize, usize)>> = split
                .iter()
                .map(|&k| Ok((0..self.levels[k].quotient_table()?.len()).map(|i| (k, i)).collect()))
                .collect::<Result<_, RestrictedError>>()?;
            out.extend(choices.into_iter().multi_cartesian_product().map(BlockIndex));
        }
        Ok(out)
    }

    /// `Φ(π_λ) = ind(⊗_l Φ_l(π_l))`.
    pub fn big_phi(&self, lam: &BlockIndex) -> Result<ClassFunction, RestrictedError> {
        let mut pieces = Vec::new();
        for (l, &(k, i)) in lam.0.iter().enumerate() {
            if k > 0 {
                let pi = self.levels[k].quotient_table()?.irreducible(i);
                pieces.push((k, self.phi_l(k, l, pi)));
            }
        }
        if pieces.is_empty() {
            return Ok(ClassFunction::trivial(self.levels[0].group.group()));
        }
        self.induce_blocks(&pieces.iter().map(|(k, f)| (*k, f)).collect::<Vec<_>>(), false)
    }

    /// `Ψ = (⊗_l Ψ_l) ∘ m*`: restrict to each block subgroup, decompose, and
    /// apply `Ψ_l` blockwise by the lift formula.
    pub fn big_psi(&self, n: usize, chi: &ClassFunction) -> Result<BTreeMap<BlockIndex, i64>, RestrictedError> {
        let mut out = BTreeMap::new();
        for split in compositions(n, self.h_table.len()) {
            let blocks: Vec<(usize, usize)> = split.iter().copied().enumerate().filter(|&(_, k)| k > 0).collect();
            if blocks.is_empty() {
                out.insert(BlockIndex(split.iter().map(|&k| (k, 0)).collect()), round_to_integer(chi.at_class(0), || "degree 0".into())?);
                continue;
            }
            // Ψ_l of every irreducible of each block group, decomposed
            let mut psi_tables = Vec::new();
            for &(l, k) in &blocks {
                let table = self.levels[k].table()?;
                let qtable = self.levels[k].quotient_table()?;
                let rows = table
                    .irreducibles()
                    .iter()
                    .map(|rho| Ok(qtable.decompose(&self.psi_l(k, l, rho)?)?))
                    .collect::<Result<Vec<Vec<i64>>, RestrictedError>>()?;
                psi_tables.push(rows);
            }
            let tables = blocks.iter().map(|&(_, k)| self.levels[k].table()).collect::<Result<Vec<_>, _>>()?;
            for rhos in tables.iter().map(|t| 0..t.len()).multi_cartesian_product() {
                let pieces: Vec<(usize, &ClassFunction)> =
                    blocks.iter().zip(&rhos).zip(&tables).map(|((&(_, k), &r), t)| (k, t.irreducible(r))).collect();
                let c = self.restrict_blocks(chi, &pieces, false)?;
                if c == 0 {
                    continue;
                }
                let images: Vec<Vec<(usize, i64)>> = rhos
                    .iter()
                    .zip(&psi_tables)
                    .map(|(&r, rows)| rows[r].iter().copied().enumerate().filter(|&(_, m)| m != 0).collect())
                    .collect();
                for combo in images.into_iter().multi_cartesian_product() {
                    let mut index: Vec<(usize, usize)> = split.iter().map(|&k| (k, 0)).collect();
                    let mut coeff = c;
                    for (&(l, _), &(i, m)) in blocks.iter().zip(&combo) {
                        index[l].1 = i;
                        coeff *= m;
                    }
                    *out.entry(BlockIndex(index)).or_insert(0) += coeff;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::{group_by_name, subgroup_by_name};

    fn tower(g: &str, h: &str, cutoff: usize) -> RestrictedTower {
        let g = Arc::new(group_by_name(g).unwrap());
        build_restricted_tower(&subgroup_by_name(&g, h).unwrap(), cutoff).unwrap()
    }

    #[test]
    fn orders() {
        let emb = reflection_subgroup(4, 2).unwrap();
        assert_eq!(build_restricted(&emb, 2).unwrap().order(), 16);
        let emb = reflection_subgroup(2, 2).unwrap();
        assert_eq!(build_restricted(&emb, 3).unwrap().order(), 24);
        let z3 = Arc::new(group_by_name("Z3").unwrap());
        assert_eq!(build_restricted(&SubgroupEmbedding::whole(&z3), 2).unwrap().order(), 18);
    }

    #[test]
    fn non_abelian_is_rejected() {
        let s3 = Arc::new(group_by_name("S3").unwrap());
        let err = build_restricted(&SubgroupEmbedding::whole(&s3), 2).unwrap_err();
        assert!(matches!(err, RestrictedError::NonAbelian(_)));
    }

    #[test]
    fn quotient_of_z6() {
        let g = Arc::new(group_by_name("Z6").unwrap());
        let (q, coset_of) = quotient_group(&subgroup_by_name(&g, "Z2").unwrap()).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(coset_of[3], 0);
    }

    #[test]
    fn inflation_and_twist_basics() {
        let t = tower("Z4", "Z2", 2);
        let level = t.level(2);
        let trivial = ClassFunction::trivial(level.quotient.group());
        let pulled = t.phi_star(2, &trivial);
        assert!(pulled.max_distance(&ClassFunction::trivial(level.group.group())) < 1e-12);
        assert!(t.tau(2, 0, &pulled).max_distance(&pulled) < 1e-12);
        for l in 0..2 {
            for pi in level.quotient_table().unwrap().irreducibles() {
                let image = t.phi_l(2, l, pi);
                assert!((image.norm_squared() - 1.0).abs() < 1e-9);
                let back = t.psi_l(2, l, &image).unwrap();
                assert!(back.max_distance(pi) < 1e-9);
            }
        }
    }

    #[test]
    fn mixed_block_has_norm_two() {
        let t = tower("Z4", "Z2", 2);
        let lam = BlockIndex(vec![(1, 0), (1, 0)]);
        let f = t.big_phi(&lam).unwrap();
        assert!((f.norm_squared() - 2.0).abs() < 1e-9);
        assert_eq!(lam.length(), 2);
        assert_eq!(lam.to_string(), "1.0⊗1.0");
    }

    #[test]
    fn block_index_counts() {
        let t = tower("Z2", "1", 2);
        // one linear character: the basis is irr(G_n(Z2/1, 1))
        assert_eq!(t.block_indices(2).unwrap().len(), t.level(2).quotient_table().unwrap().len());
    }
}
