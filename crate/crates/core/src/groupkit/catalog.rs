//! Built-in groups and named subgroups.

use std::sync::Arc;

use super::{FiniteGroup, GroupError, SubgroupEmbedding};

pub fn cyclic(m: usize) -> Result<FiniteGroup, GroupError> {
    if m == 0 {
        return Err(GroupError::UnknownGroup("Z0".into()));
    }
    let elements: Vec<usize> = (0..m).collect();
    let labels = elements.iter().map(ToString::to_string).collect();
    FiniteGroup::from_elements(format!("Z{m}"), &elements, |a, b| (a + b) % m, labels)
}

pub fn trivial() -> FiniteGroup {
    FiniteGroup::from_elements("1", &[()], |_, _| (), vec!["e".into()]).expect("trivial group")
}

/// Quaternion group, elements ordered `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion() -> FiniteGroup {
    // unit index 0..4 for 1, i, j, k; products u_a u_b = sign · u_c
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let elements: Vec<(usize, bool)> = (0..4).flat_map(|u| [(u, false), (u, true)]).collect();
    let names = ["1", "i", "j", "k"];
    let labels = elements
        .iter()
        .map(|&(u, neg)| format!("{}{}", if neg { "-" } else { "" }, names[u]))
        .collect();
    FiniteGroup::from_elements(
        "Q8",
        &elements,
        |&(a, sa), &(b, sb)| {
            let (s, c) = UNIT[a][b];
            (c, sa ^ sb ^ s)
        },
        labels,
    )
    .expect("quaternion table")
}

fn dihedral(name: &str, n: usize) -> Result<FiniteGroup, GroupError> {
    let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    FiniteGroup::from_permutations(name, &[rotation, reflection])
}

/// Looks up a catalog group: `1`, `Z<m>` (also `Z/m`, `ℤ/m`, `C<m>`) for
/// `m ≤ 12`, `S3`, `S4`, `A4`, `D4` (order 8), `D6` (order 12), `Q8`, and
/// direct products written `AxB`.
pub fn group_by_name(name: &str) -> Result<FiniteGroup, GroupError> {
    let name = name.trim();
    if let Some((a, b)) = name.split_once(['x', '×']) {
        return group_by_name(a)?.direct_product(&group_by_name(b)?);
    }
    let cyclic_order = ["Z/", "ℤ/", "Z", "C"]
        .iter()
        .find_map(|p| name.strip_prefix(p))
        .and_then(|m| m.parse::<usize>().ok());
    if let Some(m) = cyclic_order {
        return match m {
            1..=12 => cyclic(m),
            _ => Err(GroupError::UnknownGroup(name.into())),
        };
    }
    match name {
        "1" | "trivial" => Ok(trivial()),
        "S3" => FiniteGroup::from_permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]]),
        "S4" => FiniteGroup::from_permutations("S4", &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]),
        "A4" => FiniteGroup::from_permutations("A4", &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]]),
        "D4" => dihedral("D4", 4),
        "D6" => dihedral("D6", 6),
        "Q8" => Ok(quaternion()),
        _ => Err(GroupError::UnknownGroup(name.into())),
    }
}

/// Every catalog group without products, for exhaustive checks.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = vec!["1".into()];
    names.extend((2..=12).map(|m| format!("Z{m}")));
    names.extend(["S3", "S4", "A4", "D4", "D6", "Q8"].map(String::from));
    names
}

/// Resolves a subgroup name relative to `group`:
/// `1`/`trivial`, `whole` (or the group's own name), `center`,
/// `Zd` (generated by the first element of order `d`),
/// `A3`/`A4` (generated by the elements of order 3),
/// and `gen:a,b,...` (generated by the listed element indices).
pub fn subgroup_by_name(group: &Arc<FiniteGroup>, name: &str) -> Result<SubgroupEmbedding, GroupError> {
    let name = name.trim();
    let unknown = || GroupError::UnknownSubgroup { group: group.name().into(), name: name.into() };
    let elements: Vec<usize> = match name {
        "1" | "trivial" => vec![0],
        "whole" => group.elements().collect(),
        _ if name == group.name() => group.elements().collect(),
        "center" => group
            .elements()
            .filter(|&z| group.elements().all(|g| group.mul(g, z) == group.mul(z, g)))
            .collect(),
        "A3" | "A4" => {
            let gens: Vec<usize> = group.elements().filter(|&g| group.element_order(g) == 3).collect();
            group.generated(&gens)
        }
        _ => {
            if let Some(list) = name.strip_prefix("gen:") {
                let gens = list
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().ok().filter(|&g| g < group.order()))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(unknown)?;
                group.generated(&gens)
            } else {
                let d = ["Z/", "ℤ/", "Z", "C"]
                    .iter()
                    .find_map(|p| name.strip_prefix(p))
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(unknown)?;
                let g = group.elements().find(|&g| group.element_order(g) == d).ok_or_else(unknown)?;
                group.generated(&[g])
            }
        }
    };
    SubgroupEmbedding::from_elements(group, name, elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_classes() {
        let sizes = |n: &str| -> Vec<usize> {
            let g = group_by_name(n).unwrap();
            g.conjugacy_classes().iter().map(Vec::len).collect()
        };
        assert_eq!(sizes("Z3"), vec![1, 1, 1]);
        assert_eq!(sizes("S3"), vec![1, 3, 2]);
        assert_eq!(sizes("Q8"), vec![1, 1, 2, 2, 2]);
        for (name, order, classes) in
            [("S4", 24, 5), ("A4", 12, 4), ("D4", 8, 5), ("D6", 12, 6), ("Z2xZ2", 4, 4), ("S3xZ2", 12, 6)]
        {
            let g = group_by_name(name).unwrap();
            assert_eq!((g.order(), g.class_count()), (order, classes), "{name}");
        }
        assert!(matches!(group_by_name("Z13"), Err(GroupError::UnknownGroup(_))));
        assert!(matches!(group_by_name("M11"), Err(GroupError::UnknownGroup(_))));
    }

    #[test]
    fn named_subgroups() {
        let s3 = Arc::new(group_by_name("S3").unwrap());
        assert_eq!(subgroup_by_name(&s3, "A3").unwrap().sub().order(), 3);
        let z2 = subgroup_by_name(&s3, "Z2").unwrap();
        assert_eq!(z2.sub().order(), 2);
        assert!(!z2.is_normal());
        let q8 = Arc::new(group_by_name("Q8").unwrap());
        let center = subgroup_by_name(&q8, "center").unwrap();
        assert_eq!(center.sub().order(), 2);
        assert!(center.is_normal());
        let z4 = Arc::new(group_by_name("Z4").unwrap());
        assert_eq!(subgroup_by_name(&z4, "Z2").unwrap().image(), &[0, 2]);
        assert!(subgroup_by_name(&z4, "Z3").is_err());
        assert_eq!(subgroup_by_name(&z4, "gen:1").unwrap().index(), 1);
    }
}
