//! Exact invariants of bound quiver algebras `Λ = kQ/I` over `Q` and `F_p`.
//!
//! The crate computes the dimension of the first τ-Hochschild cohomology
//! group, the excess `e(Λ) = dim τHH¹ − dim HH¹`, the Hochschild cohomology
//! dimensions `HH⁰`, `HH¹`, `HH²`, the dimension of `Hom(I/I², Λ)` as
//! `kQ`-bimodules and τ-rigidity. Each quantity is produced by at least two
//! independent computations so that they can be cross-checked.

pub mod bqa;
pub mod closed_forms;
pub mod cohomology;
pub mod error;
pub mod linalg;
pub mod quiver;
pub mod selfcheck;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/bar_complex.md")]
    mod bar_complex {}
    #[doc = include_str!("../../../book/src/closed_forms.md")]
    mod closed_forms {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
