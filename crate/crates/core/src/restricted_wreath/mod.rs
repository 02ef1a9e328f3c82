//! Restricted wreath products `G_n(G, H) ⊂ S_n[G]` for abelian `G`: the
//! monomial matrices whose entries sum into `H`. Includes the reflection
//! groups `G(m, p, n) = G_n(Z/m, pZ/m)`.

mod instance;
mod verify;

use thiserror::Error;

use crate::groupkit::GroupError;
use crate::numeric::NonIntegralError;
use crate::tensor_hopf::TensorError;
use crate::wreath_oracle::OracleError;

pub use instance::{
    build_restricted, build_restricted_tower, quotient_group, reflection_subgroup, BlockIndex, RestrictedLevel,
    RestrictedTower,
};
pub use verify::{
    measure_hopf_defect, restricted_algebra, verify_big_psi, verify_gram_matrix, verify_inflation,
    verify_isotypic_images, verify_order_formula, verify_phi_l_morphism, verify_psi_l, verify_twists,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RestrictedError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    NonIntegral(#[from] NonIntegralError),
    #[error("{0} is not abelian")]
    NonAbelian(String),
    #[error("Ψ_l depends on the lift: {0}")]
    LiftDependence(String),
    #[error("reduction mod H is not a surjective homomorphism with kernel H^n: {0}")]
    Reduction(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
}
