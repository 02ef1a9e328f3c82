//! Tensor powers of `R`, matrix Hopf maps, and truncated `k`-PSH modules.
//!
//! A [`PshAlgebra`] or [`PshModule`] is stored as explicit structure tables
//! on an orthonormal basis of irreducibles, truncated at a degree cutoff.
//! Every check in this module is exact integer arithmetic on those tables.

mod algebra;
mod decompose;
mod graded;
mod identities;
mod module;
mod primitive_product;

use thiserror::Error;

pub use algebra::{degree_matrix, GradedMap, PshAlgebra};
pub use decompose::{decompose_module, Cell, Decomposition};
pub use graded::{
    psi_matrix, tensor_basis, tensor_concat, tensor_coproduct, tensor_hopf_power, tensor_mul, tuple_degree,
    GradedVector, HopfMatrix,
};
pub use identities::{verify_hopf_power_identities, verify_matrix_identities, verify_random_matrix_identities};
pub use module::{PshModule, TableMismatch};
pub use primitive_product::{
    inner_primitive_product, twist_power, verify_inner_primitive_product, verify_primitive_products, verify_skew_properties,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("invalid Hopf matrix: {0}")]
    BadMatrix(String),
    #[error("cannot parse tensor: {0}")]
    Parse(String),
    #[error("cutoff mismatch: {left} vs {right}")]
    CutoffMismatch { left: usize, right: usize },
    #[error("modules are over different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },
    #[error("twist mismatch in direct sum: {left} vs {right}")]
    TwistMismatch { left: u64, right: u64 },
    #[error("degree {degree} exceeds the table cutoff {cutoff} while computing {what}")]
    BeyondCutoff { what: String, degree: usize, cutoff: usize },
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("malformed structure table: {0}")]
    MalformedTable(String),
    #[error("pullback precondition {check} fails at degree {degree} on {witness}")]
    PullbackPrecondition { check: &'static str, degree: usize, witness: String },
    #[error("primitive product hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("decomposition failure: {0}")]
    Decomposition(String),
}
