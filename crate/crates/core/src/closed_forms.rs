//! Closed formulas for hereditary, radical square zero, crown and
//! triangular monomial algebras, computed from path combinatorics only, and
//! a validator comparing them with the general machinery.

use std::fmt;

use crate::bqa::{build_algebra, Algebra, Presentation, DEFAULT_LENGTH_CAP};
use crate::cohomology::{compute_report, hh1_dim, tau_hh1_dim_formula, ComputeOptions, InvariantReport};
use crate::error::{Error, Result};
use crate::quiver::{classify_shape, connected_components, enumerate_paths, parallel_pairs, Path, Quiver};

fn require_connected(q: &Quiver) -> Result<()> {
    if classify_shape(q).connected {
        Ok(())
    } else {
        Err(Error::NotConnected)
    }
}

/// All paths of an acyclic quiver.
fn all_paths(q: &Quiver) -> Result<Vec<Path>> {
    if !classify_shape(q).acyclic {
        return Err(Error::NotAcyclic);
    }
    Ok(enumerate_paths(q, q.num_vertices()))
}

/// `dim HH¹(kQ) = 1 − |Q0| + Σ_a |t(a)Bs(a)|` for a connected acyclic `Q`,
/// `B` the set of all paths.
pub fn hereditary_hh1(q: &Quiver) -> Result<usize> {
    let paths = all_paths(q)?;
    require_connected(q)?;
    let parallel = parallel_pairs(&q.arrow_paths(), &paths).len();
    Ok(1 + parallel - q.num_vertices())
}

/// Dimensions for `kQ/F²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RadSquareZero {
    pub tau_hh1: i64,
    pub hh1: i64,
    pub hh2: i64,
    pub excess: i64,
    /// `Q2//Q1 = ∅`, equivalent to the HH² cancellation properties.
    pub cancellation: bool,
}

/// Closed forms for `kQ/F²`, `Q` connected and not a crown:
/// `τHH¹ = 1 − |Q0| + |Q1//Q0| + |Q1//Q1|`, `HH¹ = 1 − |Q0| + |Q1//Q1|`,
/// `HH² = |Q2//Q1| − |Q1//Q0|`, `e = |Q1//Q0|`.
///
/// The `HH¹` formula includes the `+1` coming from the one-dimensional
/// kernel of the degree-zero map in the cochain complex of `kQ/F²`.
/// The values do not depend on the characteristic. The derivation `x ↦ e`
/// that appears in characteristic two for `k[x]/(x²)` does not extend once a
/// second arrow `y` meets the vertex, since `d(xy) = y + x·d(y) ≠ 0`.
pub fn rad_square_zero_dims(q: &Quiver) -> Result<RadSquareZero> {
    let shape = classify_shape(q);
    if !shape.connected {
        return Err(Error::NotConnected);
    }
    if shape.crown_order > 0 {
        return Err(Error::IsCrown);
    }
    let q0 = q.vertex_paths();
    let q1 = q.arrow_paths();
    let q2: Vec<Path> = enumerate_paths(q, 2).into_iter().filter(|p| p.len() == 2).collect();
    let (n0, n10, n11, n21) = (
        q0.len() as i64,
        parallel_pairs(&q1, &q0).len() as i64,
        parallel_pairs(&q1, &q1).len() as i64,
        parallel_pairs(&q2, &q1).len() as i64,
    );
    Ok(RadSquareZero {
        tau_hh1: 1 - n0 + n10 + n11,
        hh1: 1 - n0 + n11,
        hh2: n21 - n10,
        excess: n10,
        cancellation: n21 == 0,
    })
}

/// `(τHH¹, HH¹, e)` for the radical square zero algebra of a `c`-crown.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrownDims {
    pub tau_hh1: usize,
    pub hh1: usize,
    pub excess: usize,
}

/// Crown values: `(1, 1, 0)` for `c > 1`; for the loop `k[x]/(x²)`,
/// `(2, 1, 1)` in characteristic different from two and `(2, 2, 0)` in
/// characteristic two. `characteristic` is 0 for `Q`.
pub fn crown_dims(c: usize, characteristic: u64) -> CrownDims {
    assert!(c >= 1, "a crown has at least one vertex");
    match (c, characteristic) {
        (1, 2) => CrownDims { tau_hh1: 2, hh1: 2, excess: 0 },
        (1, _) => CrownDims { tau_hh1: 2, hh1: 1, excess: 1 },
        _ => CrownDims { tau_hh1: 1, hh1: 1, excess: 0 },
    }
}

/// A pair `(a, ε) ∈ Q1//B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowPathPair {
    pub arrow: usize,
    pub path: Path,
}

impl ArrowPathPair {
    pub fn render(&self, q: &Quiver) -> String {
        format!("({},{})", q.arrow(self.arrow).name, q.path_string(&self.path))
    }
}

/// The split of `Q1//B` for a triangular monomial algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialClassification {
    /// The relation paths `Z`.
    pub relations: Vec<Path>,
    /// Paths containing no relation path.
    pub basis: Vec<Path>,
    /// `Q1//B`.
    pub pairs: Vec<ArrowPathPair>,
    /// `(Q1//B)_u`.
    pub u: Vec<ArrowPathPair>,
    /// `(Q1//B)_nu`.
    pub nu: Vec<ArrowPathPair>,
}

fn monomial_data(p: &Presentation) -> Result<(Vec<Path>, Vec<Path>)> {
    let z = p.monomial_paths().ok_or(Error::NotMonomial)?;
    let paths = all_paths(p.quiver()).map_err(|_| Error::NotTriangular)?;
    let basis = paths.into_iter().filter(|b| !z.iter().any(|g| b.contains(g))).collect();
    Ok((z, basis))
}

/// Splits `Q1//B` into `u` and `nu`. A pair `(a, ε)` is in `u` when, for
/// every `γ ∈ Z` and every single occurrence of `a` in `γ`, replacing that
/// occurrence by `ε` gives a path that is zero in `Λ`. Pairs whose arrow
/// occurs in no relation are in `u`.
pub fn monomial_classification(p: &Presentation) -> Result<MonomialClassification> {
    let (z, basis) = monomial_data(p)?;
    let q = p.quiver();
    let mut pairs = Vec::new();
    let (mut u, mut nu) = (Vec::new(), Vec::new());
    for a in 0..q.num_arrows() {
        let arrow = Path::arrow(q, a);
        for eps in basis.iter().filter(|b| b.is_parallel(&arrow)) {
            let pair = ArrowPathPair { arrow: a, path: eps.clone() };
            let vanishes = z.iter().all(|g| {
                g.occurrences(a).into_iter().all(|pos| {
                    let replaced = g.replace_at(pos, eps);
                    z.iter().any(|w| replaced.contains(w))
                })
            });
            if vanishes {
                u.push(pair.clone());
            } else {
                nu.push(pair.clone());
            }
            pairs.push(pair);
        }
    }
    Ok(MonomialClassification { relations: z, basis, pairs, u, nu })
}

/// `(τHH¹, HH¹, e)` for a triangular monomial algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialDims {
    pub center: usize,
    pub tau_hh1: usize,
    pub hh1: usize,
    pub excess: usize,
}

/// `τHH¹ = dim ZΛ − |Q0| + |Q1//B|`, `HH¹ = dim ZΛ − |Q0| + |(Q1//B)_u|`,
/// `e = |(Q1//B)_nu|`. Without oriented cycles `xΛx = k` for every vertex,
/// so `dim ZΛ` is the number of connected components.
pub fn monomial_dims(p: &Presentation) -> Result<MonomialDims> {
    let c = monomial_classification(p)?;
    let q = p.quiver();
    let center = connected_components(q);
    Ok(MonomialDims {
        center,
        tau_hh1: center + c.pairs.len() - q.num_vertices(),
        hh1: center + c.u.len() - q.num_vertices(),
        excess: c.nu.len(),
    })
}

/// The three equivalent conditions for a connected triangular monomial
/// algebra, evaluated independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeTheorem {
    pub hh1_zero: bool,
    pub is_tree: bool,
    pub tau_hh1_zero: bool,
}

impl TreeTheorem {
    pub fn consistent(&self) -> bool {
        self.hh1_zero == self.is_tree && self.is_tree == self.tau_hh1_zero
    }
}

/// Evaluates `HH¹ = 0`, "`Q` is a tree" and `τHH¹ = 0`, the cohomological
/// ones through the general machinery.
pub fn tree_theorem_check(p: &Presentation) -> Result<TreeTheorem> {
    p.monomial_paths().ok_or(Error::NotMonomial)?;
    let shape = classify_shape(p.quiver());
    if !shape.acyclic {
        return Err(Error::NotTriangular);
    }
    if !shape.connected {
        return Err(Error::NotConnected);
    }
    let alg = build_algebra(p, DEFAULT_LENGTH_CAP)?;
    Ok(TreeTheorem {
        hh1_zero: hh1_dim(&alg) == 0,
        is_tree: shape.tree,
        tau_hh1_zero: tau_hh1_dim_formula(&alg) == 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Hereditary,
    RadicalSquareZero,
    Crown,
    TriangularMonomial,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Hereditary => "hereditary",
            Family::RadicalSquareZero => "radical square zero",
            Family::Crown => "crown",
            Family::TriangularMonomial => "triangular monomial",
        })
    }
}

/// One closed form compared with the general computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormCheck {
    pub family: Family,
    pub invariant: String,
    pub closed: String,
    pub general: String,
}

impl ClosedFormCheck {
    pub fn matches(&self) -> bool {
        self.closed == self.general
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossValidation {
    pub families: Vec<Family>,
    pub checks: Vec<ClosedFormCheck>,
}

impl CrossValidation {
    pub fn all_match(&self) -> bool {
        self.checks.iter().all(ClosedFormCheck::matches)
    }

    pub fn applies(&self) -> bool {
        !self.families.is_empty()
    }
}

/// Compares every applicable closed form with the general routes.
pub fn cross_validate(alg: &Algebra) -> Result<CrossValidation> {
    let report = compute_report(alg, &ComputeOptions::default())?;
    cross_validate_report(alg, &report)
}

/// As [`cross_validate`], reusing an already computed report.
pub fn cross_validate_report(alg: &Algebra, report: &InvariantReport) -> Result<CrossValidation> {
    let p = alg.presentation();
    let q = p.quiver();
    let shape = classify_shape(q);
    let mut out = CrossValidation::default();
    let general = |name: &str| -> String {
        report.row(name).map(|r| r.value.to_string()).unwrap_or_else(|| "n/a".into())
    };
    let check = |out: &mut CrossValidation, family, invariant: &str, closed: String| {
        let g = general(invariant);
        if g != "n/a" {
            out.checks.push(ClosedFormCheck { family, invariant: invariant.to_string(), closed, general: g });
        }
    };

    if p.is_hereditary() && shape.acyclic && shape.connected {
        out.families.push(Family::Hereditary);
        check(&mut out, Family::Hereditary, "hh1", hereditary_hh1(q)?.to_string());
        check(&mut out, Family::Hereditary, "excess", "0".into());
        check(&mut out, Family::Hereditary, "hh2", "0".into());
        check(&mut out, Family::Hereditary, "hh2_cancellation", "yes".into());
    }

    let rad2 = q.num_arrows() > 0 && alg.nilpotency() == 2;
    if rad2 && shape.connected && shape.crown_order > 0 {
        out.families.push(Family::Crown);
        let c = crown_dims(shape.crown_order, alg.field().characteristic());
        check(&mut out, Family::Crown, "tau_hh1", c.tau_hh1.to_string());
        check(&mut out, Family::Crown, "hh1", c.hh1.to_string());
        check(&mut out, Family::Crown, "excess", c.excess.to_string());
    } else if rad2 && shape.connected {
        out.families.push(Family::RadicalSquareZero);
        let r = rad_square_zero_dims(q)?;
        check(&mut out, Family::RadicalSquareZero, "tau_hh1", r.tau_hh1.to_string());
        check(&mut out, Family::RadicalSquareZero, "excess", r.excess.to_string());
        check(&mut out, Family::RadicalSquareZero, "hh1", r.hh1.to_string());
        check(&mut out, Family::RadicalSquareZero, "hh2", r.hh2.to_string());
        let flag = if r.cancellation { "yes" } else { "no" };
        check(&mut out, Family::RadicalSquareZero, "hh2_cancellation", flag.into());
    }

    if p.is_monomial() && shape.acyclic && !p.is_hereditary() {
        out.families.push(Family::TriangularMonomial);
        let d = monomial_dims(p)?;
        check(&mut out, Family::TriangularMonomial, "center", d.center.to_string());
        check(&mut out, Family::TriangularMonomial, "tau_hh1", d.tau_hh1.to_string());
        check(&mut out, Family::TriangularMonomial, "hh1", d.hh1.to_string());
        check(&mut out, Family::TriangularMonomial, "excess", d.excess.to_string());
        if shape.connected {
            let hh1_zero = general("hh1") == "0";
            let tau_zero = general("tau_hh1") == "0";
            let tree = if shape.tree { "yes" } else { "no" };
            let both = if hh1_zero == shape.tree && tau_zero == shape.tree { tree } else { "inconsistent" };
            out.checks.push(ClosedFormCheck {
                family: Family::TriangularMonomial,
                invariant: "tree theorem".into(),
                closed: tree.into(),
                general: both.into(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::quiver::parse_presentation;

    const R: &str = "field Q\nvertices 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\narrow d 2 4\nrelations\n";

    fn names(q: &Quiver, v: &[ArrowPathPair]) -> Vec<String> {
        v.iter().map(|p| p.render(q)).collect()
    }

    #[test]
    fn example_table() {
        let qca = parse_presentation("field Q\nvertices 1 2 3\narrow a 1 2\narrow b 1 2\narrow c 2 3\nrelations\nc*a\n")
            .unwrap();
        let rba = parse_presentation(&format!("{R}b*a\n")).unwrap();
        let rda = parse_presentation(&format!("{R}d*a\n")).unwrap();
        let cases = [(&qca, vec!["(a,b)"], (3, 2, 1)), (&rba, vec![], (2, 2, 0)), (&rda, vec!["(d,cb)"], (2, 1, 1))];
        for (p, nu, (tau, hh1, e)) in cases {
            let c = monomial_classification(p).unwrap();
            assert_eq!(names(p.quiver(), &c.nu), nu);
            assert_eq!(c.u.len() + c.nu.len(), c.pairs.len());
            let d = monomial_dims(p).unwrap();
            assert_eq!((d.tau_hh1, d.hh1, d.excess), (tau, hh1, e));
        }
    }

    #[test]
    fn hereditary_values() {
        let a2 = Quiver::from_names(&["x", "y"], &[("a", "x", "y")]).unwrap();
        assert_eq!(hereditary_hh1(&a2).unwrap(), 0);
        let kron = Quiver::from_names(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")]).unwrap();
        assert_eq!(hereditary_hh1(&kron).unwrap(), 3);
        let lp = Quiver::from_names(&["x"], &[("a", "x", "x")]).unwrap();
        assert_eq!(hereditary_hh1(&lp).unwrap_err(), Error::NotAcyclic);
        let split = Quiver::from_names(&["x", "y"], &[]).unwrap();
        assert_eq!(hereditary_hh1(&split).unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn radical_square_zero_values() {
        let kron = Quiver::from_names(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")]).unwrap();
        let r = rad_square_zero_dims(&kron).unwrap();
        assert_eq!((r.tau_hh1, r.hh1, r.excess, r.hh2), (3, 3, 0, 0));
        let a3 = Quiver::from_names(&["x", "y", "z"], &[("a", "x", "y"), ("b", "y", "z")]).unwrap();
        let r = rad_square_zero_dims(&a3).unwrap();
        assert_eq!((r.tau_hh1, r.hh1, r.excess, r.hh2), (0, 0, 0, 0));
        let two_loops = Quiver::from_names(&["x"], &[("a", "x", "x"), ("b", "x", "x")]).unwrap();
        assert_eq!(rad_square_zero_dims(&two_loops).unwrap().excess, 2);
        let crown = Quiver::from_names(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x")]).unwrap();
        assert_eq!(rad_square_zero_dims(&crown).unwrap_err(), Error::IsCrown);
    }

    #[test]
    fn radical_square_zero_ignores_characteristic() {
        let q = Quiver::from_names(&["v", "w"], &[("a", "v", "v"), ("b", "v", "w")]).unwrap();
        let r = rad_square_zero_dims(&q).unwrap();
        for f in [Field::Rational, Field::Prime(2), Field::Prime(3)] {
            let a = build_algebra(&Presentation::radical_square_zero(q.clone(), f), 8).unwrap();
            assert_eq!(hh1_dim(&a) as i64, r.hh1);
            assert!(cross_validate(&a).unwrap().all_match());
        }
    }

    #[test]
    fn crown_table() {
        assert_eq!(crown_dims(3, 0), CrownDims { tau_hh1: 1, hh1: 1, excess: 0 });
        assert_eq!(crown_dims(1, 0), CrownDims { tau_hh1: 2, hh1: 1, excess: 1 });
        assert_eq!(crown_dims(1, 2), CrownDims { tau_hh1: 2, hh1: 2, excess: 0 });
        assert_eq!(crown_dims(1, 3), CrownDims { tau_hh1: 2, hh1: 1, excess: 1 });
    }

    #[test]
    fn tree_theorem() {
        let a3 = parse_presentation("field Q\nvertices 1 2 3\narrow a 1 2\narrow b 2 3\nrelations\nb*a\n").unwrap();
        let t = tree_theorem_check(&a3).unwrap();
        assert!(t.hh1_zero && t.is_tree && t.tau_hh1_zero);
        let qca = parse_presentation("field Q\nvertices 1 2 3\narrow a 1 2\narrow b 1 2\narrow c 2 3\nrelations\nc*a\n")
            .unwrap();
        let t = tree_theorem_check(&qca).unwrap();
        assert!(!t.hh1_zero && !t.is_tree && !t.tau_hh1_zero);
        let kron = parse_presentation("field Q\nvertices 1 2\narrow a 1 2\narrow b 1 2\n").unwrap();
        let t = tree_theorem_check(&kron).unwrap();
        assert!(t.consistent() && !t.is_tree);
    }

    #[test]
    fn cross_validation_families() {
        let her = build_algebra(&parse_presentation("field Q\nvertices 1 2\narrow a 1 2\narrow b 1 2\n").unwrap(), 8)
            .unwrap();
        let cv = cross_validate(&her).unwrap();
        assert_eq!(cv.families, vec![Family::Hereditary, Family::RadicalSquareZero]);
        assert!(cv.all_match(), "{:?}", cv.checks);

        for f in [Field::Rational, Field::Prime(2)] {
            let q = Quiver::from_names(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x")]).unwrap();
            let crown = build_algebra(&Presentation::radical_square_zero(q, f), 8).unwrap();
            let cv = cross_validate(&crown).unwrap();
            assert_eq!(cv.families, vec![Family::Crown]);
            assert!(cv.all_match(), "{:?}", cv.checks);
        }

        let generic = parse_presentation("field Q\nvertices v\narrow x v v\narrow y v v\nrelations\nx*y - y*x\nx*x\ny*y\n")
            .unwrap();
        let cv = cross_validate(&build_algebra(&generic, 8).unwrap()).unwrap();
        assert!(!cv.applies() && cv.checks.is_empty());
    }
}
