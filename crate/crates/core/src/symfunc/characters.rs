//! Irreducible characters of symmetric groups by the Murnaghan–Nakayama rule.

use super::Partition;

/// `χ^λ` at a permutation of cycle type `cycle_type`.
pub fn sn_character(lam: &Partition, cycle_type: &Partition) -> i64 {
    assert_eq!(lam.size(), cycle_type.size(), "shape and cycle type must have the same size");
    let len = lam.len();
    // beta numbers λ_i + (len - 1 - i), strictly decreasing
    let beta: Vec<usize> = lam.parts().iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    strip(&beta, cycle_type.parts())
}

fn strip(beta: &[usize], cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.to_vec();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        total += sign * strip(&next, rest);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::schur_dimension;
    use num_bigint::BigUint;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(sn_character(&p(&[2, 1]), &p(&[1, 1, 1])), 2);
        assert_eq!(sn_character(&p(&[2, 1]), &p(&[2, 1])), 0);
        assert_eq!(sn_character(&p(&[2, 1]), &p(&[3])), -1);
        assert_eq!(sn_character(&p(&[1, 1, 1]), &p(&[2, 1])), -1);
        assert_eq!(sn_character(&p(&[2, 2]), &p(&[2, 2])), 2);
        assert_eq!(sn_character(&p(&[3, 1]), &p(&[4])), -1);
        assert_eq!(sn_character(&p(&[]), &p(&[])), 1);
    }

    /// Column orthogonality: `Σ_λ χ^λ(μ)χ^λ(ν) = δ_{μν} z_μ`, and the value at
    /// the identity is the hook-length dimension.
    #[test]
    fn orthogonality_and_degrees() {
        for n in 1..=7 {
            let shapes = Partition::all_of_size(n);
            for lam in &shapes {
                let d = sn_character(lam, &p(&vec![1; n]));
                assert_eq!(BigUint::from(d as u64), schur_dimension(lam));
            }
            for mu in &shapes {
                for nu in &shapes {
                    let s: i64 = shapes.iter().map(|l| sn_character(l, mu) * sn_character(l, nu)).sum();
                    let z: i64 = if mu == nu { centralizer(mu) } else { 0 };
                    assert_eq!(s, z, "{mu} {nu}");
                }
            }
        }
    }

    fn centralizer(mu: &Partition) -> i64 {
        let mut z = 1i64;
        for k in 1..=mu.size() {
            let m = mu.parts().iter().filter(|&&x| x == k).count() as i64;
            z *= (k as i64).pow(m as u32) * (1..=m).product::<i64>();
        }
        z
    }
}
