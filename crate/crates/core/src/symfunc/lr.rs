//! Littlewood–Richardson coefficients by direct enumeration of LR tableaux.

use super::Partition;
use crate::memo::Memo;

static LR_MEMO: Memo<(Partition, Partition, Partition), u64> = Memo::new();

/// Multiplicity of `s_lam` in `s_mu · s_nu`.
///
/// Counts semistandard fillings of the skew shape `lam / mu` with content `nu`
/// whose reverse reading word (right to left, top to bottom) is a lattice word.
pub fn lr_coeff(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lam.size() != mu.size() + nu.size() || !lam.contains(mu) || !lam.contains(nu) {
        return 0;
    }
    if nu.is_empty() {
        return u64::from(lam == mu);
    }
    if mu.is_empty() {
        return u64::from(lam == nu);
    }
    let key = (lam.clone(), mu.clone(), nu.clone());
    *LR_MEMO.get_or_compute(&key, || count_lr_tableaux(lam, mu, nu))
}

fn count_lr_tableaux(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    // cells in reverse reading order
    let mut cells = Vec::with_capacity(lam.size() - mu.size());
    for r in 0..lam.len() {
        for c in (mu.part(r)..lam.part(r)).rev() {
            cells.push((r, c));
        }
    }
    let mut grid: Vec<Vec<usize>> = (0..lam.len()).map(|r| vec![0; lam.part(r)]).collect();
    let mut counts = vec![0usize; nu.len() + 1];
    let mut search = Search { lam, mu, nu, cells: &cells, grid: &mut grid, counts: &mut counts };
    search.fill(0)
}

struct Search<'a> {
    lam: &'a Partition,
    mu: &'a Partition,
    nu: &'a Partition,
    cells: &'a [(usize, usize)],
    grid: &'a mut Vec<Vec<usize>>,
    // counts[v] = occurrences of entry v so far (1-based values)
    counts: &'a mut Vec<usize>,
}

impl Search<'_> {
    fn fill(&mut self, idx: usize) -> u64 {
        if idx == self.cells.len() {
            return 1;
        }
        let (r, c) = self.cells[idx];
        // row weakly increases left to right; we fill right to left
        let row_max = if c + 1 < self.lam.part(r) { self.grid[r][c + 1] } else { usize::MAX };
        // column strictly increases downward when the cell above is in the skew shape
        let col_min = if r > 0 && c >= self.mu.part(r - 1) { self.grid[r - 1][c] + 1 } else { 1 };
        let top = self.nu.len().min(row_max);
        let mut total = 0;
        for v in col_min..=top {
            if self.counts[v] >= self.nu.part(v - 1) {
                continue;
            }
            if v > 1 && self.counts[v] + 1 > self.counts[v - 1] {
                continue;
            }
            self.counts[v] += 1;
            self.grid[r][c] = v;
            total += self.fill(idx + 1);
            self.counts[v] -= 1;
        }
        self.grid[r][c] = 0;
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(lr_coeff(&p(&[1, 1]), &p(&[1]), &p(&[1])), 1);
        assert_eq!(lr_coeff(&p(&[3]), &p(&[2]), &p(&[2])), 0);
        assert_eq!(lr_coeff(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
    }

    /// Pieri oracle: `s_mu · s_(k)` adds a horizontal strip of `k` boxes.
    fn horizontal_strip(lam: &Partition, mu: &Partition) -> bool {
        lam.contains(mu) && (0..lam.len()).all(|i| i == 0 || lam.part(i) <= mu.part(i - 1))
    }

    #[test]
    fn pieri_rule_agrees() {
        for n in 0..=7 {
            for lam in Partition::all_of_size(n) {
                for m in 0..=n {
                    for mu in Partition::all_of_size(m) {
                        let expect = u64::from(horizontal_strip(&lam, &mu));
                        assert_eq!(lr_coeff(&lam, &mu, &Partition::row(n - m)), expect, "{lam} {mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_in_factors_and_conjugation() {
        for n in 0..=6 {
            for lam in Partition::all_of_size(n) {
                for m in 0..=n {
                    for mu in Partition::all_of_size(m) {
                        for nu in Partition::all_of_size(n - m) {
                            let c = lr_coeff(&lam, &mu, &nu);
                            assert_eq!(c, lr_coeff(&lam, &nu, &mu));
                            assert_eq!(c, lr_coeff(&lam.conjugate(), &mu.conjugate(), &nu.conjugate()));
                        }
                    }
                }
            }
        }
    }
}
