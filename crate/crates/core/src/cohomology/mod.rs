//! Hochschild and τ-Hochschild invariants of `Λ`.
//!
//! Dimensions are related by the exact sequence
//!
//! ```text
//! 0 → HH¹(Λ) → HH¹(kQ, Λ) → Hom(I/I², Λ) → HH²(Λ) → 0
//! ```
//!
//! together with `dim HH¹(kQ, Λ) = dim τHH¹`, so the excess
//! `e(Λ) = dim τHH¹ − dim HH¹` also equals `dim Hom(I/I², Λ) − dim HH²`.

mod bar;
mod degree_one;
mod report;

pub use bar::{bar_cohomology_dims, bar_complex, CochainComplex, DEFAULT_BAR_CAP};
pub use degree_one::{
    arrow_parallel_dim, derivation_basis, derivation_space_dim, diagonal_dim, hh1_dim, hh1_kq_dim,
    hh1_kq_dim_of, tau_hh1_dim_coker, tau_hh1_dim_formula, CommutatorMap, Derivation,
};
pub use report::{compute_report, ComputeOptions, InvariantReport, InvariantRow, Route, Value};

use crate::bqa::{bimodule_hom_dim, radical_power, relation_bimodule, Algebra, SubBimodule};
use crate::error::{Error, Result};

/// `dim Hom(I/I², Λ)` as `kQ`-bimodules.
pub fn hom_relations_dim(alg: &Algebra) -> Result<usize> {
    let m = relation_bimodule(alg)?;
    Ok(bimodule_hom_dim(&m, &SubBimodule::whole(alg)))
}

/// `dim HH²(Λ)` from the exact sequence:
/// `dim Hom(I/I², Λ) − dim HH¹(kQ, Λ) + dim HH¹(Λ)`.
pub fn hh2_dim(alg: &Algebra) -> Result<usize> {
    let v = hom_relations_dim(alg)? as i64 - hh1_kq_dim(alg) as i64 + hh1_dim(alg) as i64;
    usize::try_from(v).map_err(|_| Error::RouteMismatch {
        invariant: "HH2".into(),
        detail: format!("exact sequence gives negative dimension {v}"),
    })
}

/// `dim HH²(Λ)` from the bar complex.
pub fn hh2_dim_bar(alg: &Algebra, cap: usize) -> Result<usize> {
    Ok(bar_cohomology_dims(alg, &SubBimodule::whole(alg), 2, cap)?[2])
}

/// `e(Λ)`, computed as `dim τHH¹ − dim HH¹` and as
/// `dim Hom(I/I², Λ) − dim HH²` with `HH²` from the bar complex (from the
/// exact sequence if the bar complex exceeds the default cap).
pub fn excess(alg: &Algebra) -> Result<usize> {
    let first = tau_hh1_dim_formula(alg) as i64 - hh1_dim(alg) as i64;
    let hh2 = match hh2_dim_bar(alg, DEFAULT_BAR_CAP) {
        Ok(v) => v,
        Err(Error::ComplexTooLarge { .. }) => hh2_dim(alg)?,
        Err(e) => return Err(e),
    };
    let second = hom_relations_dim(alg)? as i64 - hh2 as i64;
    if first != second || first < 0 {
        return Err(Error::RouteMismatch {
            invariant: "excess".into(),
            detail: format!("τHH¹ − HH¹ = {first}, Hom(I/I², Λ) − HH² = {second}"),
        });
    }
    Ok(first as usize)
}

/// `HH²(Λ) = 0` and `HH²(Λ, r^i) = 0` for every `i > 0`. Only
/// `i < n` matter since `r^n = 0`.
pub fn has_hh2_cancellation(alg: &Algebra, cap: usize) -> Result<bool> {
    if hh2_dim_bar(alg, cap)? != 0 {
        return Ok(false);
    }
    for i in 1..alg.nilpotency() {
        let r = radical_power(alg, i);
        if bar_cohomology_dims(alg, &r, 2, cap)?[2] != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `Λ` is τ-rigid as a bimodule, i.e. `τHH¹ = 0`. Also checks the
/// equivalent condition `HH¹ = 0` and `dim HH² = dim Hom(I/I², Λ)`.
pub fn is_tau_rigid(alg: &Algebra) -> Result<bool> {
    let rigid = tau_hh1_dim_formula(alg) == 0;
    let other = hh1_dim(alg) == 0 && hh2_dim(alg)? == hom_relations_dim(alg)?;
    if rigid != other {
        return Err(Error::RouteMismatch {
            invariant: "tau_rigid".into(),
            detail: format!("τHH¹ = 0 is {rigid}, HH¹ = 0 and HH² = Hom is {other}"),
        });
    }
    Ok(rigid)
}
