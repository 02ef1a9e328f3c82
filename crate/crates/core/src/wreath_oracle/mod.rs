//! Explicit wreath products `S_n[G]` with characters computed from their
//! Cayley tables, the identification of their irreducibles with
//! multipartitions, and the Hopf-algebraic structure of `R(G)` obtained by
//! brute-force induction and restriction.

mod element;
mod literal;
mod tower;
mod verify;
mod wreath;

use thiserror::Error;

use crate::groupkit::GroupError;
use crate::numeric::NonIntegralError;
use crate::tensor_hopf::TensorError;

pub use element::WreathElement;
pub use literal::{literal_action_matrix, verify_phi_rho_literal};
pub use tower::{build_rg_basis, Level, Multipartition, WreathTower};
pub use verify::{
    count_double_cosets, double_coset_tuples, rg_module, trivial_subgroup_model, verify_delta_composite,
    verify_delta_morphisms, verify_double_cosets, verify_hopf_power_law, verify_module_k_hopf, verify_phi_multiplicative,
    verify_restriction_psi_matrix, verify_tensor_decomposition, RgModule,
};
pub use wreath::{build_wreath, phi_rho, phi_rho_value, wreath_elements, wreath_order, Census, Factor, WreathGroup};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    NonIntegral(#[from] NonIntegralError),
    #[error("identification of irreducibles failed: {0}")]
    Identification(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
}
