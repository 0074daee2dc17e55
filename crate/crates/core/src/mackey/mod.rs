//! Mackey functors, their morphisms, box products and modules over Green functors.

mod boxprod;
mod functor;
mod hom;
mod internal;
#[cfg(test)]
mod tests;

pub use boxprod::{box_over, box_product, burnside_module, BoxProduct, GreenModule};
pub use functor::MackeyFunctor;
pub use hom::{
    add_mackey_hom_constraints, generated_spans, hom_space, quotient, simplify, sub_functor, HomSpace, MackeyHom,
    MatrixUnknowns,
};
pub use internal::{internal_hom_module, module_hom_space, InternalHom};
