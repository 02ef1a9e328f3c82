//! Explicit finite groups, conjugacy classes, numerically computed character
//! tables, subgroup embeddings and restriction multiplicity matrices.

mod catalog;
mod character;
mod group;
mod ingest;
mod subgroup;

use thiserror::Error;

use crate::numeric::NonIntegralError;

pub use catalog::{catalog_names, cyclic, group_by_name, quaternion, subgroup_by_name, trivial};
pub use character::{character_table, character_table_with_cap, CharacterTable, ClassFunction, TABLE_TOLERANCE};
pub use group::FiniteGroup;
pub use ingest::{parse_group, parse_subgroup};
pub use subgroup::{induction_matrix, restriction_matrix, to_rows, verify_restriction_gram, SubgroupEmbedding};

/// Largest group order handled with an explicit table.
pub const ORDER_CAP: usize = 500;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("group {name} has order {order}, above the cap {cap}")]
    OrderCap { name: String, order: usize, cap: usize },
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("unknown subgroup {name:?} of {group}")]
    UnknownSubgroup { group: String, name: String },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("numerical breakdown: {0}")]
    Numerical(String),
    #[error(transparent)]
    NonIntegral(#[from] NonIntegralError),
    #[error("cannot parse group description: {0}")]
    Parse(String),
}
