use crate::groupkit::FiniteGroup;
use crate::symfunc::Partition;

/// An element `(σ, g)` of `S_n[G]`, modelled as the monomial matrix with
/// entry `g_j` at position `(σ(j), j)`. Permutations act on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    perm: Vec<usize>,
    entries: Vec<usize>,
}

impl WreathElement {
    pub fn new(perm: Vec<usize>, entries: Vec<usize>) -> Self {
        assert_eq!(perm.len(), entries.len(), "one entry per position");
        Self { perm, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect(), entries: vec![0; n] }
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// `(σ, g)(τ, h) = (στ, (g_{τ(i)} h_i)_i)`, the product of monomial matrices.
    pub fn mul(&self, other: &Self, base: &FiniteGroup) -> Self {
        let perm = other.perm.iter().map(|&t| self.perm[t]).collect();
        let entries = other
            .perm
            .iter()
            .zip(&other.entries)
            .map(|(&t, &h)| base.mul(self.entries[t], h))
            .collect();
        Self { perm, entries }
    }

    pub fn inverse(&self, base: &FiniteGroup) -> Self {
        let n = self.degree();
        let mut perm = vec![0; n];
        for (j, &s) in self.perm.iter().enumerate() {
            perm[s] = j;
        }
        let entries = perm.iter().map(|&j| base.inverse(self.entries[j])).collect();
        Self { perm, entries }
    }

    pub fn conjugate_by(&self, x: &Self, base: &FiniteGroup) -> Self {
        x.mul(self, base).mul(&x.inverse(base), base)
    }

    /// Monomial matrix entry at `(row, col)`.
    pub fn matrix_entry(&self, row: usize, col: usize) -> Option<usize> {
        (self.perm[col] == row).then(|| self.entries[col])
    }

    /// Cycles of `σ`, each listed `j, σ(j), σ²(j), …` from its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.perm[j];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_parts_unsorted(self.cycles().iter().map(Vec::len).collect())
    }

    /// `g_{σ^{L-1}(j)} ⋯ g_{σ(j)} g_j` along a cycle `[j, σ(j), …]`: the
    /// diagonal entry at `j` of the `L`-th power of the monomial matrix.
    pub fn cycle_product(&self, cycle: &[usize], base: &FiniteGroup) -> usize {
        cycle.iter().fold(0, |acc, &j| base.mul(self.entries[j], acc))
    }

    /// Sum of all entries, for abelian `G`.
    pub fn entry_sum(&self, base: &FiniteGroup) -> usize {
        self.entries.iter().fold(0, |acc, &g| base.mul(acc, g))
    }

    /// The restriction to positions `start..start + len`, if `σ` maps that
    /// block to itself.
    pub fn block(&self, start: usize, len: usize) -> Option<Self> {
        let range = start..start + len;
        let perm: Option<Vec<usize>> = self.perm[range.clone()]
            .iter()
            .map(|&s| range.contains(&s).then(|| s - start))
            .collect();
        Some(Self { perm: perm?, entries: self.entries[range].to_vec() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::group_by_name;

    /// The product rule agrees with multiplying monomial matrices over the
    /// group ring.
    #[test]
    fn product_matches_monomial_matrices() {
        let g = group_by_name("S3").unwrap();
        let a = WreathElement::new(vec![1, 2, 0], vec![1, 3, 4]);
        let b = WreathElement::new(vec![0, 2, 1], vec![2, 5, 1]);
        let ab = a.mul(&b, &g);
        for i in 0..3 {
            for j in 0..3 {
                let mut entry = None;
                for k in 0..3 {
                    if let (Some(x), Some(y)) = (a.matrix_entry(i, k), b.matrix_entry(k, j)) {
                        assert!(entry.is_none());
                        entry = Some(g.mul(x, y));
                    }
                }
                assert_eq!(ab.matrix_entry(i, j), entry, "({i},{j})");
            }
        }
        assert_eq!(a.mul(&a.inverse(&g), &g), WreathElement::identity(3));
        assert_eq!(a.inverse(&g).mul(&a, &g), WreathElement::identity(3));
    }

    #[test]
    fn cycles_and_blocks() {
        let g = group_by_name("S3").unwrap();
        let a = WreathElement::new(vec![1, 0, 2], vec![1, 2, 3]);
        assert_eq!(a.cycles(), vec![vec![0, 1], vec![2]]);
        assert_eq!(a.cycle_type().parts(), &[2, 1]);
        assert_eq!(a.cycle_product(&[0, 1], &g), g.mul(2, 1));
        let square = a.mul(&a, &g);
        assert_eq!(square.matrix_entry(0, 0), Some(a.cycle_product(&[0, 1], &g)));
        assert_eq!(a.block(0, 2), Some(WreathElement::new(vec![1, 0], vec![1, 2])));
        assert_eq!(a.block(2, 1), Some(WreathElement::new(vec![0], vec![3])));
        assert_eq!(a.block(1, 2), None);
    }
}
