//! Group descriptions in TOML: a `name` and either a row-major `cayley`
//! table or permutation `generators` in one-line notation.
//!
//! ```toml
//! name = "S3"
//! generators = [[1, 0, 2], [1, 2, 0]]
//! ```
//!
//! Subgroups of a given group are described by a `name` and the element
//! indices of `generators` (or all of its `elements`).

use std::sync::Arc;

use serde::Deserialize;

use super::{FiniteGroup, GroupError, SubgroupEmbedding};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupDescription {
    name: String,
    cayley: Option<Vec<Vec<usize>>>,
    generators: Option<Vec<Vec<usize>>>,
}

pub fn parse_group(text: &str) -> Result<FiniteGroup, GroupError> {
    let desc: GroupDescription = toml::from_str(text).map_err(|e| GroupError::Parse(e.to_string()))?;
    match (desc.cayley, desc.generators) {
        (Some(table), None) => FiniteGroup::from_table(desc.name, table),
        (None, Some(gens)) if !gens.is_empty() => FiniteGroup::from_permutations(desc.name, &gens),
        _ => Err(GroupError::Parse("give exactly one of `cayley` or nonempty `generators`".into())),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SubgroupDescription {
    name: String,
    #[serde(alias = "elements")]
    generators: Vec<usize>,
}

pub fn parse_subgroup(group: &Arc<FiniteGroup>, text: &str) -> Result<SubgroupEmbedding, GroupError> {
    let desc: SubgroupDescription = toml::from_str(text).map_err(|e| GroupError::Parse(e.to_string()))?;
    if let Some(&g) = desc.generators.iter().find(|&&g| g >= group.order()) {
        return Err(GroupError::NotASubgroup(format!("element {g} is not in {}", group.name())));
    }
    SubgroupEmbedding::from_elements(group, &desc.name, group.generated(&desc.generators))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_description() {
        let s3 = Arc::new(parse_group("name = \"S3\"\ngenerators = [[1,0,2],[1,2,0]]").unwrap());
        let three = s3.elements().find(|&g| s3.element_order(g) == 3).unwrap();
        let a3 = parse_subgroup(&s3, &format!("name = \"A3\"\ngenerators = [{three}]")).unwrap();
        assert_eq!((a3.sub().order(), a3.index()), (3, 2));
        assert!(parse_subgroup(&s3, "name = \"bad\"\nelements = [9]").is_err());
    }

    #[test]
    fn both_formats() {
        let g = parse_group("name = \"V\"\ncayley = [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]").unwrap();
        assert_eq!((g.order(), g.class_count(), g.name()), (4, 4, "V"));
        let s3 = parse_group("name = \"S3\"\ngenerators = [[1,0,2],[1,2,0]]").unwrap();
        assert_eq!(s3.order(), 6);
        assert!(parse_group("name = \"x\"\ncayley = [[0,1],[0,1]]").is_err());
        assert!(parse_group("name = \"x\"").is_err());
        // not associative: a Latin square with identity that is not a group
        let loop5 = "name = \"L\"\ncayley = [[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]";
        assert!(matches!(parse_group(loop5), Err(GroupError::InvalidTable(_))));
    }
}
