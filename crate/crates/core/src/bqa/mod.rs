//! The algebra `Λ = kQ/I` and its bimodules.

mod algebra;
mod bimodule;
mod presentation;

pub use algebra::{
    build_algebra, build_algebra_with, Algebra, BuildOptions, DEFAULT_LENGTH_CAP, DEFAULT_PATH_BUDGET,
};
pub(crate) use algebra::{ideal_span, PathSpace};
pub use presentation::{Presentation, Relation};
pub use bimodule::{
    bimodule_hom_dim, center, left_path_action, radical_power, relation_bimodule,
    relation_bimodule_with_budget, right_path_action, Bimodule, Generator, QuotientBimodule, Side,
    SubBimodule,
};
pub(crate) use bimodule::{commutator_columns, compress_columns};
