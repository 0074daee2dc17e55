//! Genuine derivations, square-zero classification and Kähler differentials of Tambara functors.

mod classify;
mod derivation;
mod omega;

#[cfg(test)]
mod tests;

pub use classify::{classify_maps_into_square_zero, classify_over_itself, semidirect_map, SquareZeroClassification};
pub use derivation::{der_mackey, derivation_space, is_genuine_derivation, Algebra, DerivationMackey, DerivationSpace};
pub use omega::{
    der_hom_bijection, kahler, kernel_is_subtambara, multiplication_kernel, submodule_generated, Decomposables,
    DerHomBijection, KahlerModule, MultiplicationKernel,
};
