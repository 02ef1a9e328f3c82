//! Exact computations with symmetric functions, matrix Hopf power maps on
//! tensor powers, twisted positive self-adjoint Hopf modules, and character
//! oracles for wreath products and their restricted subgroups.

pub mod lincomb;
mod memo;
pub mod numeric;
pub mod report;
pub mod symfunc;
pub mod tensor_hopf;
pub mod groupkit;
pub mod wreath_oracle;
pub mod restricted_wreath;
