//! Finite groups, finite G-sets and constructions on them.

mod constructions;
mod group;
mod gset;

pub use constructions::{
    dependent_product, dependent_product_object, norm_sum_diagram, off_diagonal, pullback, DependentProduct,
    ExponentialDiagram, NormSumDiagram, NormSumPiece, OffDiagonal,
};
pub use group::{FiniteGroup, Subgroup, SubgroupClass, SubgroupId};
pub use gset::{GMap, GSet, Orbit, OrbitDecomposition};
