use std::fmt;

use crate::bqa::{bimodule_hom_dim, Bimodule, center, radical_power, relation_bimodule, Algebra, SubBimodule};
use crate::error::{Error, Result};
use crate::linalg::Field;

use super::{
    bar_cohomology_dims, hh1_dim, hh1_kq_dim, tau_hh1_dim_coker, tau_hh1_dim_formula, CommutatorMap,
    DEFAULT_BAR_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComputeOptions {
    /// Run the bar-complex routes.
    pub bar: bool,
    /// Cap on `dim C³` of the bar complex.
    pub bar_cap: usize,
}

impl Default for ComputeOptions {
    fn default() -> ComputeOptions {
        ComputeOptions { bar: true, bar_cap: DEFAULT_BAR_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    Dim(i64),
    Flag(bool),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Dim(d) => write!(f, "{d}"),
            Value::Flag(b) => write!(f, "{}", if *b { "yes" } else { "no" }),
        }
    }
}

/// One independent computation of an invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Route {
    pub name: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRow {
    pub name: String,
    pub value: Value,
    pub routes: Vec<Route>,
}

impl InvariantRow {
    fn new(name: &str, routes: Vec<(&str, Value)>) -> InvariantRow {
        let routes: Vec<Route> =
            routes.into_iter().map(|(n, value)| Route { name: n.to_string(), value }).collect();
        InvariantRow { name: name.to_string(), value: routes[0].value, routes }
    }

    pub fn agree(&self) -> bool {
        self.routes.iter().all(|r| r.value == self.value)
    }
}

/// Every invariant of `Λ` with the routes that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub field: Field,
    pub nilpotency: usize,
    pub dim_algebra: usize,
    pub dim_relation_quotient: usize,
    pub rows: Vec<InvariantRow>,
    /// Diagnostics such as a skipped bar complex.
    pub notes: Vec<String>,
}

impl InvariantReport {
    pub fn row(&self, name: &str) -> Option<&InvariantRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    /// The value of a dimension row.
    pub fn dim(&self, name: &str) -> Option<i64> {
        match self.row(name)?.value {
            Value::Dim(d) => Some(d),
            Value::Flag(_) => None,
        }
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        match self.row(name)?.value {
            Value::Flag(b) => Some(b),
            Value::Dim(_) => None,
        }
    }

    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(InvariantRow::agree)
    }

    /// Rows whose routes disagree.
    pub fn mismatches(&self) -> Vec<&InvariantRow> {
        self.rows.iter().filter(|r| !r.agree()).collect()
    }
}

struct BarData {
    hh: [usize; 3],
    cancellation: bool,
}

fn bar_data(alg: &Algebra, cap: usize) -> Result<BarData> {
    let whole = SubBimodule::whole(alg);
    let dims = bar_cohomology_dims(alg, &whole, 2, cap)?;
    let mut cancellation = dims[2] == 0;
    for i in 1..alg.nilpotency() {
        if !cancellation {
            break;
        }
        let r = radical_power(alg, i);
        cancellation = bar_cohomology_dims(alg, &r, 2, cap)?[2] == 0;
    }
    Ok(BarData { hh: [dims[0], dims[1], dims[2]], cancellation })
}

/// Computes every invariant by all available routes.
pub fn compute_report(alg: &Algebra, opts: &ComputeOptions) -> Result<InvariantReport> {
    let dim = |v: usize| Value::Dim(v as i64);
    let mut notes = Vec::new();

    let z = center(alg).rank();
    let commutator = CommutatorMap::new(alg);
    let z_kernel = commutator.kernel(alg).rank();
    let tau_formula = tau_hh1_dim_formula(alg);
    let tau_coker = commutator.cokernel_dim();
    debug_assert_eq!(tau_coker, tau_hh1_dim_coker(alg));
    let hh1_kq = hh1_kq_dim(alg);
    let hh1 = hh1_dim(alg);
    let quotient = relation_bimodule(alg)?;
    let hom = bimodule_hom_dim(&quotient, &SubBimodule::whole(alg));
    let hh2_exact = hom as i64 - hh1_kq as i64 + hh1 as i64;

    let bar = if opts.bar {
        match bar_data(alg, opts.bar_cap) {
            Ok(b) => Some(b),
            Err(Error::ComplexTooLarge { size, cap }) => {
                notes.push(format!("bar complex skipped: dim C^3 = {size} exceeds cap {cap}"));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        notes.push("bar complex skipped on request".to_string());
        None
    };

    let mut center_routes = vec![("commutant", dim(z)), ("commutator kernel", dim(z_kernel))];
    let mut hh1_routes = vec![("derivations", dim(hh1))];
    let mut hh2_routes = vec![("exact sequence", Value::Dim(hh2_exact))];
    let first_excess = tau_formula as i64 - hh1 as i64;
    let mut excess_routes = vec![("tau_hh1 - hh1", Value::Dim(first_excess))];
    if let Some(b) = &bar {
        center_routes.push(("bar HH0", dim(b.hh[0])));
        hh1_routes.push(("bar HH1", dim(b.hh[1])));
        hh2_routes.push(("bar HH2", dim(b.hh[2])));
        excess_routes.push(("hom - bar HH2", Value::Dim(hom as i64 - b.hh[2] as i64)));
    } else {
        excess_routes.push(("hom - exact HH2", Value::Dim(hom as i64 - hh2_exact)));
    }

    let mut rows = vec![
        InvariantRow::new("center", center_routes),
        InvariantRow::new(
            "tau_hh1",
            vec![("formula", dim(tau_formula)), ("commutator cokernel", dim(tau_coker)), ("hh1_kq", dim(hh1_kq))],
        ),
        InvariantRow::new("hh1", hh1_routes),
        InvariantRow::new("hom_relations", vec![("bimodule maps", dim(hom))]),
        InvariantRow::new("hh2", hh2_routes),
        InvariantRow::new("excess", excess_routes),
        InvariantRow::new(
            "tau_rigid",
            vec![
                ("tau_hh1 = 0", Value::Flag(tau_formula == 0)),
                ("hh1 = 0 and hh2 = hom", Value::Flag(hh1 == 0 && hh2_exact == hom as i64)),
            ],
        ),
    ];
    if first_excess < 0 {
        notes.push(format!("negative excess {first_excess}"));
        rows.push(InvariantRow::new(
            "excess_nonnegative",
            vec![("excess >= 0", Value::Flag(false)), ("lemma", Value::Flag(true))],
        ));
    }
    if let Some(b) = &bar {
        rows.push(InvariantRow::new("hh2_cancellation", vec![("bar", Value::Flag(b.cancellation))]));
    }
    Ok(InvariantReport {
        field: alg.field(),
        nilpotency: alg.nilpotency(),
        dim_algebra: alg.dim(),
        dim_relation_quotient: quotient.dim(),
        rows,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bqa::{build_algebra, DEFAULT_LENGTH_CAP};
    use crate::quiver::parse_presentation;

    #[test]
    fn report_for_qca() {
        let p = parse_presentation("field Q\nvertices 1 2 3\narrow a 1 2\narrow b 1 2\narrow c 2 3\nrelations\nc*a\n")
            .unwrap();
        let a = build_algebra(&p, DEFAULT_LENGTH_CAP).unwrap();
        let r = compute_report(&a, &ComputeOptions::default()).unwrap();
        assert!(r.all_agree(), "{:?}", r.mismatches());
        assert_eq!(r.dim("excess"), Some(1));
        assert_eq!(r.dim("hh1"), Some(2));
        assert_eq!(r.dim("tau_hh1"), Some(3));
        assert_eq!(r.dim("hom_relations"), Some(1));
        assert_eq!(r.flag("tau_rigid"), Some(false));
        assert_eq!(r.row("tau_hh1").unwrap().routes.len(), 3);
        assert!(r.notes.is_empty());
    }

    #[test]
    fn skipping_the_bar_complex() {
        let p = parse_presentation("field F 2\nvertices v\narrow x v v\nrelations\nx*x\n").unwrap();
        let a = build_algebra(&p, DEFAULT_LENGTH_CAP).unwrap();
        let r = compute_report(&a, &ComputeOptions { bar: false, ..ComputeOptions::default() }).unwrap();
        assert!(r.all_agree());
        assert_eq!(r.dim("hh1"), Some(2));
        assert_eq!(r.dim("excess"), Some(0));
        assert!(r.row("hh2_cancellation").is_none());
        assert_eq!(r.notes.len(), 1);
    }
}
