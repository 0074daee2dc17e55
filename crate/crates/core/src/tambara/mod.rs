//! Green and Tambara functors: constructors, evaluation of bispans and axiom checks.

mod boxring;
mod burnside;
mod change;
mod check;
mod enrich;
mod fixed_points;
mod functor;
mod hom;
mod quotient;
mod square_zero;
#[cfg(test)]
mod tests;

pub use boxring::{box_ring, BoxRing};
pub use burnside::{burnside, burnside_map, BurnsideBasis};
pub use change::{
    coinduce, coinduced_family, coinduction_comparison, f_level, f_level_hom, f_level_module, f_relative, precompose,
    precompose_mackey, product_tambara, restrict_to_subgroup, CoinducedFamily, RelativeLevel, SubgroupRestriction,
};
pub use check::{check_green, check_norm_of_sum, check_tambara, multiplicative_double_coset, norm_sum_pieces};
pub use enrich::{hom_tambara, Augmented, HomCoefficientSystem};
pub use fixed_points::{fixed_points, RingWithAction};
pub use functor::{Bilinear, TambaraFunctor};
pub use hom::TambaraHom;
pub use quotient::{ideal_closure, localize, quotient_tambara, reduce_mod, Localization, DEFAULT_DEPTH};
pub use square_zero::{kernel_ideal, off_diagonal_norm, square_zero, sub_tambara, NonUnitalTambara, SquareZero};
