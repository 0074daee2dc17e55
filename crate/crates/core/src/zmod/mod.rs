//! Exact linear algebra over the integers.

mod matrix;
mod presented;
mod snf;
mod solve;

pub use matrix::{add_vec, ints, is_zero_vec, scale_vec, sub_vec, unit_vec, zero_vec, Int, Matrix};
pub use presented::{enum_cap, tensor, tensor_coords, AbHom, PresentedAb, Simplified, DEFAULT_ENUM_CAP};
pub use snf::{column_echelon, integer_kernel, smith_normal_form, solve_integer, ColumnEchelon, Snf};
pub use solve::{LinearSystem, SolutionSpace};
