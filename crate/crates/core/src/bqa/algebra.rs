use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar, SparseVec, Subspace};
use crate::quiver::{count_paths, enumerate_paths, Path, Quiver};

use super::Presentation;

/// Default bound on the nilpotency degree searched by [`build_algebra`].
pub const DEFAULT_LENGTH_CAP: usize = 64;
/// Default bound on the number of paths held in memory while building.
pub const DEFAULT_PATH_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub length_cap: usize,
    pub path_budget: usize,
}

impl Default for BuildOptions {
    fn default() -> BuildOptions {
        BuildOptions { length_cap: DEFAULT_LENGTH_CAP, path_budget: DEFAULT_PATH_BUDGET }
    }
}

/// All paths up to a length bound, indexed in the global path order so that
/// a larger index always means a larger path.
#[derive(Clone, Debug)]
pub(crate) struct PathSpace {
    pub paths: Vec<Path>,
    pub index: HashMap<Path, usize>,
    /// Path indices grouped by source vertex.
    pub by_source: Vec<Vec<usize>>,
    /// Path indices grouped by target vertex.
    pub by_target: Vec<Vec<usize>>,
}

impl PathSpace {
    pub fn new(q: &Quiver, bound: usize, budget: usize) -> Result<PathSpace> {
        let total = count_paths(q, bound).iter().fold(0usize, |s, &c| s.saturating_add(c));
        if total > budget {
            return Err(Error::NotAdmissible(format!(
                "{total} paths of length <= {bound} exceed the path budget {budget}"
            )));
        }
        let paths = enumerate_paths(q, bound);
        let index = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut by_source = vec![Vec::new(); q.num_vertices()];
        let mut by_target = vec![Vec::new(); q.num_vertices()];
        for (i, p) in paths.iter().enumerate() {
            by_source[p.source()].push(i);
            by_target[p.target()].push(i);
        }
        Ok(PathSpace { paths, index, by_source, by_target })
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    /// Index of the product `left ∘ mid ∘ right` if it lies in the space.
    pub fn product(&self, left: &Path, mid: &Path, right: &Path) -> Option<usize> {
        let p = left.compose(mid)?.compose(right)?;
        self.index.get(&p).copied()
    }
}

/// Span of every `p·r·q` (`r` a relation generator), truncated to the paths of
/// `space`: `(I + F^{bound+1}) / F^{bound+1}` when `space` holds all paths of
/// length at most `bound`.
pub(crate) fn ideal_span(pres: &Presentation, space: &PathSpace, bound: usize) -> Subspace {
    let field = pres.field();
    let mut span = Subspace::echelon_only(field, space.len());
    for r in pres.relations() {
        let room = match bound.checked_sub(r.min_len()) {
            Some(x) => x,
            None => continue,
        };
        for &pi in &space.by_source[r.target()] {
            let p = &space.paths[pi];
            if p.len() > room {
                break;
            }
            for &qi in &space.by_target[r.source()] {
                let q = &space.paths[qi];
                if p.len() + q.len() > room {
                    break;
                }
                let v = SparseVec::from_pairs(
                    r.terms()
                        .iter()
                        .filter_map(|(t, c)| space.product(p, t, q).map(|i| (i, c.clone()))),
                );
                span.insert(&v);
            }
        }
    }
    span
}

/// A finite dimensional bound quiver algebra with a path basis.
///
/// Elements are [`SparseVec`]s over the normal basis; basis element `i` is
/// the class of the path [`Algebra::basis_path`]`(i)`.
#[derive(Clone, Debug)]
pub struct Algebra {
    presentation: Presentation,
    nilpotency: usize,
    basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    /// Normal form of every path of length below the nilpotency degree.
    normal_forms: HashMap<Path, SparseVec>,
    table: Vec<SparseVec>,
    units: Vec<SparseVec>,
    by_endpoints: HashMap<(usize, usize), Vec<usize>>,
}

/// Builds `Λ` with the default options and the given length cap.
pub fn build_algebra(p: &Presentation, length_cap: usize) -> Result<Algebra> {
    build_algebra_with(p, BuildOptions { length_cap, ..BuildOptions::default() })
}

/// Builds `Λ = kQ/I`.
///
/// The nilpotency degree `n` is the least `L` with `F^L ⊆ I + F^{L+1}`, which
/// is decidable on truncated spans. For an admissible ideal this is the least
/// `n` with `F^n ⊆ I`. Presentations whose ideal is not admissible but whose
/// `F`-adic closure is are built as the algebra of that closure.
pub fn build_algebra_with(p: &Presentation, opts: BuildOptions) -> Result<Algebra> {
    let q = p.quiver();
    let n = if q.num_arrows() == 0 {
        1
    } else {
        let mut found = None;
        for l in 2..=opts.length_cap.max(2) {
            let space = PathSpace::new(q, l, opts.path_budget)?;
            let span = ideal_span(p, &space, l);
            let top = space.paths.iter().enumerate().filter(|(_, path)| path.len() == l);
            let killed = top.into_iter().all(|(i, _)| span.contains(&SparseVec::unit(i, p.field())));
            if killed {
                found = Some(l);
                break;
            }
        }
        found.ok_or_else(|| {
            Error::NotAdmissible(format!("no power F^L with L <= {} lies in I", opts.length_cap))
        })?
    };
    let bound = n - 1;
    let space = PathSpace::new(q, bound, opts.path_budget)?;
    let span = ideal_span(p, &space, bound);
    Ok(Algebra::from_span(p.clone(), n, &space, &span))
}

impl Algebra {
    fn from_span(presentation: Presentation, nilpotency: usize, space: &PathSpace, span: &Subspace) -> Algebra {
        let field = presentation.field();
        let mut basis = Vec::new();
        let mut basis_index = HashMap::new();
        let mut position = vec![usize::MAX; space.len()];
        for (i, path) in space.paths.iter().enumerate() {
            if !span.is_pivot(i) {
                position[i] = basis.len();
                basis_index.insert(path.clone(), basis.len());
                basis.push(path.clone());
            }
        }
        let normal_forms: HashMap<Path, SparseVec> = space
            .paths
            .iter()
            .enumerate()
            .map(|(i, path)| {
                let nf = span.reduce(&SparseVec::unit(i, field)).map_indices(|j| Some(position[j]));
                (path.clone(), nf)
            })
            .collect();
        let mut by_endpoints: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, b) in basis.iter().enumerate() {
            by_endpoints.entry(b.endpoints()).or_default().push(i);
        }
        let d = basis.len();
        let mut table = vec![SparseVec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                if let Some(prod) = basis[i].compose(&basis[j]) {
                    if let Some(nf) = normal_forms.get(&prod) {
                        table[i * d + j] = nf.clone();
                    }
                }
            }
        }
        let units = (0..d).map(|i| SparseVec::unit(i, field)).collect();
        Algebra { presentation, nilpotency, basis, basis_index, normal_forms, table, units, by_endpoints }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        self.presentation.quiver()
    }

    pub fn field(&self) -> Field {
        self.presentation.field()
    }

    /// Least `n` with `F^n ⊆ I`.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The normal basis: paths surviving reduction, in the global path order.
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.basis_index.get(p).copied()
    }

    /// Basis elements `i` with `e_y · b_i · e_x = b_i`.
    pub fn basis_between(&self, y: usize, x: usize) -> &[usize] {
        self.by_endpoints.get(&(y, x)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `dim yΛx`.
    pub fn graded_dim(&self, y: usize, x: usize) -> usize {
        self.basis_between(y, x).len()
    }

    /// Class of a path in `Λ`.
    pub fn path_element(&self, p: &Path) -> SparseVec {
        self.normal_forms.get(p).cloned().unwrap_or_default()
    }

    pub fn vertex(&self, v: usize) -> SparseVec {
        self.path_element(&Path::trivial(v))
    }

    pub fn arrow(&self, a: usize) -> SparseVec {
        self.path_element(&Path::arrow(self.quiver(), a))
    }

    /// Normal forms of every path of length below the nilpotency degree.
    pub(crate) fn path_normal_forms(&self) -> impl Iterator<Item = (&Path, &SparseVec)> {
        self.normal_forms.iter()
    }

    pub fn one(&self) -> SparseVec {
        SparseVec::from_pairs(
            (0..self.quiver().num_vertices()).map(|v| (self.basis_index[&Path::trivial(v)], self.field().one())),
        )
    }

    /// Basis element `i` as a vector.
    pub fn unit_vector(&self, i: usize) -> &SparseVec {
        &self.units[i]
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    /// Bilinear product of two elements.
    pub fn multiply(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut terms: Vec<(usize, Scalar)> = Vec::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                let ab = a * b;
                terms.extend(self.mul_basis(*i, *j).iter().map(|(k, c)| (*k, &ab * c)));
            }
        }
        SparseVec::from_pairs(terms)
    }

    /// Sum of `c · b_i` over a sparse vector, rendered with path names.
    pub fn render(&self, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = v
            .iter()
            .map(|(i, c)| {
                let p = self.quiver().path_string(&self.basis[*i]);
                if c.is_one() {
                    p
                } else {
                    format!("{c}*{p}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_presentation;

    const Q_CA: &str = "field Q\nvertices 1 2 3\narrow a 1 2\narrow b 1 2\narrow c 2 3\nrelations\nc*a\n";
    const DUAL: &str = "field Q\nvertices v\narrow x v v\nrelations\nx*x\n";

    fn alg(text: &str) -> Algebra {
        build_algebra(&parse_presentation(text).unwrap(), DEFAULT_LENGTH_CAP).unwrap()
    }

    #[test]
    fn dual_numbers() {
        let a = alg(DUAL);
        assert_eq!(a.nilpotency(), 2);
        assert_eq!(a.dim(), 2);
        let x = a.arrow(0);
        assert!(a.multiply(&x, &x).is_zero());
    }

    #[test]
    fn qca_quiver_basis() {
        let a = alg(Q_CA);
        assert_eq!(a.dim(), 7);
        assert_eq!(a.nilpotency(), 2 + 1);
        let names: Vec<String> = a.basis().iter().map(|p| a.quiver().path_string(p)).collect();
        assert_eq!(names, ["e_1", "e_2", "e_3", "a", "b", "c", "cb"]);
        let q = a.quiver();
        let (ca, cb) = (q.path(&["c", "a"]).unwrap(), q.path(&["c", "b"]).unwrap());
        let (c, av, b) = (a.arrow(2), a.arrow(0), a.arrow(1));
        assert!(a.multiply(&c, &av).is_zero());
        assert!(a.path_element(&ca).is_zero());
        assert_eq!(a.multiply(&c, &b), a.path_element(&cb));
    }

    #[test]
    fn idempotents() {
        let a = alg(Q_CA);
        for x in 0..3 {
            for y in 0..3 {
                let p = a.multiply(&a.vertex(x), &a.vertex(y));
                assert_eq!(p, if x == y { a.vertex(x) } else { SparseVec::new() });
            }
        }
        let one = a.one();
        for i in 0..a.dim() {
            let b = SparseVec::unit(i, a.field());
            assert_eq!(a.multiply(&one, &b), b);
            assert_eq!(a.multiply(&b, &one), b);
        }
    }

    #[test]
    fn hereditary_acyclic() {
        let a = alg("field Q\nvertices 1 2 3\narrow a 1 2\narrow b 2 3\n");
        assert_eq!(a.dim(), 6);
        assert_eq!(a.nilpotency(), 3);
    }

    #[test]
    fn no_arrows() {
        let a = alg("field F 5\nvertices v\n");
        assert_eq!(a.dim(), 1);
        assert_eq!(a.nilpotency(), 1);
    }

    #[test]
    fn non_homogeneous_relation() {
        // x^2 = x^3 forces x^2 = x^4 = ... = 0.
        let a = alg("field Q\nvertices v\narrow x v v\nrelations\nx*x - x*x*x\n");
        assert_eq!(a.nilpotency(), 2);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn commutative_square() {
        // k[x,y]/(x^2, y^2, xy - yx): basis 1, x, y, xy.
        let a = alg("field Q\nvertices v\narrow x v v\narrow y v v\nrelations\nx*x\ny*y\nx*y - y*x\n");
        assert_eq!(a.dim(), 4);
        assert_eq!(a.nilpotency(), 3);
        let (x, y) = (a.arrow(0), a.arrow(1));
        assert_eq!(a.multiply(&x, &y), a.multiply(&y, &x));
        assert!(!a.multiply(&x, &y).is_zero());
    }

    #[test]
    fn wild_quiver_is_rejected() {
        let p = parse_presentation("field Q\nvertices v\narrow x v v\narrow y v v\nrelations\nx*x\ny*y\n").unwrap();
        let e = build_algebra_with(&p, BuildOptions { length_cap: 10, path_budget: 5000 }).unwrap_err();
        assert!(matches!(e, Error::NotAdmissible(_)));
    }

    #[test]
    fn associativity_exhaustive() {
        let a = alg("field F 3\nvertices v\narrow x v v\narrow y v v\nrelations\nx*x - y*y\nx*y + y*x\nx*x*x\n");
        let d = a.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (bi, bj, bk) = (
                        SparseVec::unit(i, a.field()),
                        SparseVec::unit(j, a.field()),
                        SparseVec::unit(k, a.field()),
                    );
                    let l = a.multiply(&a.multiply(&bi, &bj), &bk);
                    let r = a.multiply(&bi, &a.multiply(&bj, &bk));
                    assert_eq!(l, r);
                }
            }
        }
    }
}
