//! Groups and subgroups given either by catalog name or by a TOML file.

use std::path::Path;
use std::sync::Arc;

use anyhow::{Context, Result};
use kpsh_core::groupkit::{group_by_name, parse_group, parse_subgroup, subgroup_by_name, FiniteGroup, SubgroupEmbedding};

/// A file path (relative to `base`) if one exists, otherwise a catalog name.
pub fn group(spec: &str, base: &Path) -> Result<Arc<FiniteGroup>> {
    let path = base.join(spec);
    let group = if path.is_file() {
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        parse_group(&text).with_context(|| format!("group file {}", path.display()))?
    } else {
        group_by_name(spec)?
    };
    Ok(Arc::new(group))
}

pub fn subgroup(group: &Arc<FiniteGroup>, spec: &str, base: &Path) -> Result<SubgroupEmbedding> {
    let path = base.join(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        Ok(parse_subgroup(group, &text).with_context(|| format!("subgroup file {}", path.display()))?)
    } else {
        Ok(subgroup_by_name(group, spec)?)
    }
}
