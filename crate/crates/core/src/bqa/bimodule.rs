//! Bimodules over `Λ` given by the actions of the generators `Q0 ∪ Q1`.
//!
//! Every basis element `m` of a bimodule here is homogeneous: there are
//! vertices `y, x` with `e_y · m · e_x = m`. The vertex actions are therefore
//! determined by [`Bimodule::endpoints`], and only arrow actions are stored.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, SparseVec, Subspace};
use crate::quiver::{Path, Quiver};

use super::{ideal_span, Algebra, PathSpace};

/// A generator of `Λ` as an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Vertex(usize),
    Arrow(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

pub trait Bimodule {
    fn quiver(&self) -> &Quiver;

    fn field(&self) -> Field;

    fn dim(&self) -> usize;

    /// `(y, x)` with `e_y · m_i · e_x = m_i`.
    fn endpoints(&self, i: usize) -> (usize, usize);

    /// `a · m_i` in basis coordinates.
    fn left_arrow(&self, a: usize, i: usize) -> SparseVec;

    /// `m_i · a` in basis coordinates.
    fn right_arrow(&self, a: usize, i: usize) -> SparseVec;

    /// Action of one generator on basis element `i`.
    fn act(&self, side: Side, g: Generator, i: usize) -> SparseVec {
        let (y, x) = self.endpoints(i);
        match (side, g) {
            (Side::Left, Generator::Vertex(v)) if v == y => SparseVec::unit(i, self.field()),
            (Side::Right, Generator::Vertex(v)) if v == x => SparseVec::unit(i, self.field()),
            (_, Generator::Vertex(_)) => SparseVec::new(),
            (Side::Left, Generator::Arrow(a)) => self.left_arrow(a, i),
            (Side::Right, Generator::Arrow(a)) => self.right_arrow(a, i),
        }
    }

    /// Matrix of the action of `g`; column `i` is the image of `m_i`.
    fn action_matrix(&self, side: Side, g: Generator) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field(), d, d);
        for i in 0..d {
            for (r, c) in self.act(side, g, i).iter() {
                m.set(*r, i, c.clone());
            }
        }
        m
    }
}

/// Applies a map given on basis elements to a vector.
fn extend_linearly(v: &SparseVec, mut f: impl FnMut(usize) -> SparseVec) -> SparseVec {
    let mut acc = SparseVec::new();
    for (i, c) in v.iter() {
        acc = acc.add_scaled(c, &f(*i));
    }
    acc
}

/// `p · v` for a path `p` of `kQ`, computed through the arrow actions.
pub fn left_path_action<M: Bimodule + ?Sized>(m: &M, p: &Path, v: &SparseVec) -> SparseVec {
    if p.is_trivial() {
        return extend_linearly(v, |i| m.act(Side::Left, Generator::Vertex(p.source()), i));
    }
    let mut cur = v.clone();
    for &a in p.arrows().iter().rev() {
        cur = extend_linearly(&cur, |i| m.left_arrow(a, i));
    }
    cur
}

/// `v · p` for a path `p` of `kQ`.
pub fn right_path_action<M: Bimodule + ?Sized>(m: &M, v: &SparseVec, p: &Path) -> SparseVec {
    if p.is_trivial() {
        return extend_linearly(v, |i| m.act(Side::Right, Generator::Vertex(p.source()), i));
    }
    let mut cur = v.clone();
    for &a in p.arrows() {
        cur = extend_linearly(&cur, |i| m.right_arrow(a, i));
    }
    cur
}

/// A sub-bimodule of `Λ`, or `Λ` itself.
#[derive(Clone, Debug)]
pub struct SubBimodule<'a> {
    alg: &'a Algebra,
    /// `None` for the whole algebra with its normal basis.
    span: Option<Subspace>,
    endpoints: Vec<(usize, usize)>,
}

impl<'a> SubBimodule<'a> {
    /// `Λ` as a bimodule over itself.
    pub fn whole(alg: &'a Algebra) -> SubBimodule<'a> {
        let endpoints = alg.basis().iter().map(Path::endpoints).collect();
        SubBimodule { alg, span: None, endpoints }
    }

    /// The subspace spanned by `vectors`; fails with [`Error::NotClosed`] if
    /// it is not stable under the generators.
    pub fn from_span(alg: &'a Algebra, vectors: &[SparseVec]) -> Result<SubBimodule<'a>> {
        let mut span = Subspace::new(alg.field(), alg.dim());
        // Split into vertex components so every basis row is homogeneous.
        let mut blocks: HashMap<(usize, usize), Vec<SparseVec>> = HashMap::new();
        for v in vectors {
            let mut by_ends: HashMap<(usize, usize), Vec<(usize, Scalar)>> = HashMap::new();
            for (i, c) in v.iter() {
                by_ends.entry(alg.basis_path(*i).endpoints()).or_default().push((*i, c.clone()));
            }
            for (k, pairs) in by_ends {
                blocks.entry(k).or_default().push(SparseVec::from_pairs(pairs));
            }
        }
        let mut keys: Vec<_> = blocks.keys().copied().collect();
        keys.sort();
        for k in keys {
            for v in &blocks[&k] {
                span.insert(v);
            }
        }
        let endpoints = span
            .basis()
            .iter()
            .map(|r| alg.basis_path(r.leading().expect("nonzero").0).endpoints())
            .collect();
        let sub = SubBimodule { alg, span: Some(span), endpoints };
        for i in 0..sub.dim() {
            for a in 0..alg.quiver().num_arrows() {
                let av = alg.multiply(&alg.arrow(a), sub.vector(i));
                let va = alg.multiply(sub.vector(i), &alg.arrow(a));
                if !sub.contains(&av) || !sub.contains(&va) {
                    return Err(Error::NotClosed);
                }
            }
        }
        Ok(sub)
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.alg
    }

    /// Basis element `i` as an element of `Λ`.
    pub fn vector(&self, i: usize) -> &SparseVec {
        match &self.span {
            Some(s) => &s.basis()[i],
            None => self.alg.unit_vector(i),
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        match &self.span {
            Some(s) => s.contains(v),
            None => true,
        }
    }

    /// Coordinates of an element of the sub-bimodule.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        match &self.span {
            Some(s) => s.coordinates(v).map(|c| SparseVec::from_dense(&c)),
            None => Some(v.clone()),
        }
    }
}

impl Bimodule for SubBimodule<'_> {
    fn quiver(&self) -> &Quiver {
        self.alg.quiver()
    }

    fn field(&self) -> Field {
        self.alg.field()
    }

    fn dim(&self) -> usize {
        self.endpoints.len()
    }

    fn endpoints(&self, i: usize) -> (usize, usize) {
        self.endpoints[i]
    }

    fn left_arrow(&self, a: usize, i: usize) -> SparseVec {
        let w = self.alg.multiply(&self.alg.arrow(a), self.vector(i));
        self.coordinates(&w).expect("sub-bimodule is closed")
    }

    fn right_arrow(&self, a: usize, i: usize) -> SparseVec {
        let w = self.alg.multiply(self.vector(i), &self.alg.arrow(a));
        self.coordinates(&w).expect("sub-bimodule is closed")
    }
}

/// The map `⊕_x xΛx → ⊕_a t(a)Λs(a)`, `λ ↦ (λ·a − a·λ)_a`, column by column.
///
/// Returns the domain (basis indices of `Λ` with equal endpoints) and, for
/// each domain element, its image indexed by `a · dim Λ + k`.
pub(crate) fn commutator_columns(alg: &Algebra) -> (Vec<usize>, Vec<SparseVec>) {
    let d = alg.dim();
    let domain: Vec<usize> =
        (0..d).filter(|&i| alg.basis_path(i).source() == alg.basis_path(i).target()).collect();
    let arrows: Vec<SparseVec> = (0..alg.quiver().num_arrows()).map(|a| alg.arrow(a)).collect();
    let columns = domain
        .iter()
        .map(|&i| {
            let l = alg.unit_vector(i);
            let mut pairs = Vec::new();
            for (a, arrow) in arrows.iter().enumerate() {
                let diff = alg.multiply(l, arrow).sub(&alg.multiply(arrow, l));
                pairs.extend(diff.iter().map(|(k, c)| (a * d + k, c.clone())));
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    (domain, columns)
}

/// Dense matrix with the given sparse columns, keeping only the rows that
/// occur in some column.
pub(crate) fn compress_columns(field: Field, columns: &[SparseVec]) -> Matrix {
    let mut rows: Vec<usize> = columns.iter().flat_map(|c| c.iter().map(|(r, _)| *r)).collect();
    rows.sort_unstable();
    rows.dedup();
    let row_of: HashMap<usize, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
    let mut m = Matrix::zeros(field, rows.len(), columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (r, c) in col.iter() {
            m.set(row_of[r], j, c.clone());
        }
    }
    m
}

/// The center `ZΛ` as a subspace of `Λ`: the kernel of `λ ↦ (gλ − λg)_g` over
/// the generators. Commuting with the vertices already forces `λ ∈ ⊕ xΛx`,
/// so only the arrow conditions are imposed on that subspace.
pub fn center(alg: &Algebra) -> Subspace {
    let (domain, columns) = commutator_columns(alg);
    let m = compress_columns(alg.field(), &columns);
    let mut z = Subspace::new(alg.field(), alg.dim());
    for k in m.kernel_basis() {
        z.insert(&SparseVec::from_pairs(domain.iter().zip(k).map(|(&i, c)| (i, c))));
    }
    z
}

/// `r^i`, the span of the classes of all paths of length at least `i`.
///
/// For relations that are not homogeneous a long path may reduce to a
/// combination involving shorter basis paths, so the span is taken over
/// normal forms rather than over basis paths of length `≥ i`.
pub fn radical_power(alg: &Algebra, i: usize) -> SubBimodule<'_> {
    let mut vectors: Vec<(&Path, &SparseVec)> =
        alg.path_normal_forms().filter(|(p, nf)| p.len() >= i.max(1) && !nf.is_zero()).collect();
    vectors.sort_by(|a, b| a.0.cmp(b.0));
    let vectors: Vec<SparseVec> = vectors.into_iter().map(|(_, v)| v.clone()).collect();
    SubBimodule::from_span(alg, &vectors).expect("radical powers are ideals")
}

/// The bimodule `I/I²`.
///
/// Since `F^n ⊆ I` we have `F^{2n} ⊆ I²`, so both `I` and `I²` may be
/// computed in `kQ/F^{2n}`: every path of length `≥ 2n` is dropped.
#[derive(Clone, Debug)]
pub struct QuotientBimodule {
    quiver: Quiver,
    field: Field,
    /// Representatives in the span of paths of length `< 2n`.
    representatives: Vec<SparseVec>,
    paths: Vec<Path>,
    endpoints: Vec<(usize, usize)>,
    left: Vec<Vec<SparseVec>>,
    right: Vec<Vec<SparseVec>>,
    ideal_dim: usize,
    square_dim: usize,
}

impl QuotientBimodule {
    /// Representative of basis element `i` over the paths of [`Self::paths`].
    pub fn representative(&self, i: usize) -> &SparseVec {
        &self.representatives[i]
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// `dim I / F^{2n}`.
    pub fn ideal_dim(&self) -> usize {
        self.ideal_dim
    }

    /// `dim I² / F^{2n}`.
    pub fn square_dim(&self) -> usize {
        self.square_dim
    }

    /// Renders a representative with path names.
    pub fn render(&self, i: usize) -> String {
        let parts: Vec<String> = self.representatives[i]
            .iter()
            .map(|(k, c)| {
                let p = self.quiver.path_string(&self.paths[*k]);
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

impl Bimodule for QuotientBimodule {
    fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    fn field(&self) -> Field {
        self.field
    }

    fn dim(&self) -> usize {
        self.representatives.len()
    }

    fn endpoints(&self, i: usize) -> (usize, usize) {
        self.endpoints[i]
    }

    fn left_arrow(&self, a: usize, i: usize) -> SparseVec {
        self.left[a][i].clone()
    }

    fn right_arrow(&self, a: usize, i: usize) -> SparseVec {
        self.right[a][i].clone()
    }
}

/// Builds `I/I²` for the presentation of `alg`.
pub fn relation_bimodule(alg: &Algebra) -> Result<QuotientBimodule> {
    relation_bimodule_with_budget(alg, super::DEFAULT_PATH_BUDGET)
}

pub fn relation_bimodule_with_budget(alg: &Algebra, budget: usize) -> Result<QuotientBimodule> {
    let pres = alg.presentation();
    let q = pres.quiver();
    let field = pres.field();
    let bound = 2 * alg.nilpotency() - 1;
    let space = PathSpace::new(q, bound, budget)?;
    let ideal = ideal_span(pres, &space, bound);

    // I² is spanned by u·r'·q' with u running over a basis of I.
    let mut square = Subspace::echelon_only(field, space.len());
    for u in ideal.basis() {
        let (lead, _) = u.leading().expect("nonzero");
        let (_, u_src) = space.paths[lead].endpoints();
        let u_len = u.iter().map(|(k, _)| space.paths[*k].len()).min().expect("nonzero");
        for r in pres.relations() {
            if r.target() != u_src || u_len + r.min_len() > bound {
                continue;
            }
            // Paths are sorted by length, so longer tails only truncate.
            for &qi in &space.by_target[r.source()] {
                let tail = &space.paths[qi];
                if u_len + r.min_len() + tail.len() > bound {
                    break;
                }
                let mut pairs = Vec::new();
                for (k, c) in u.iter() {
                    for (t, tc) in r.terms() {
                        if let Some(idx) = space.product(&space.paths[*k], t, tail) {
                            pairs.push((idx, c * tc));
                        }
                    }
                }
                let v = SparseVec::from_pairs(pairs);
                if !v.is_zero() {
                    square.insert(&v);
                }
            }
        }
    }

    let mut quotient = Subspace::new(field, space.len());
    for u in ideal.basis() {
        quotient.insert(&square.reduce(u));
    }
    let representatives: Vec<SparseVec> = quotient.basis().to_vec();
    let endpoints: Vec<(usize, usize)> = representatives
        .iter()
        .map(|r| space.paths[r.leading().expect("nonzero").0].endpoints())
        .collect();

    let class_of = |v: &SparseVec| -> SparseVec {
        let c = quotient.coordinates(&square.reduce(v)).expect("I is a bimodule");
        SparseVec::from_dense(&c)
    };
    let shift = |v: &SparseVec, arrow: &Path, left: bool| -> SparseVec {
        SparseVec::from_pairs(v.iter().filter_map(|(k, c)| {
            let p = &space.paths[*k];
            let prod = if left { arrow.compose(p) } else { p.compose(arrow) }?;
            space.index.get(&prod).map(|&idx| (idx, c.clone()))
        }))
    };
    let mut left = Vec::new();
    let mut right = Vec::new();
    for a in 0..q.num_arrows() {
        let arrow = Path::arrow(q, a);
        left.push(representatives.iter().map(|r| class_of(&shift(r, &arrow, true))).collect());
        right.push(representatives.iter().map(|r| class_of(&shift(r, &arrow, false))).collect());
    }
    Ok(QuotientBimodule {
        quiver: q.clone(),
        field,
        representatives,
        paths: space.paths,
        endpoints,
        left,
        right,
        ideal_dim: ideal.rank(),
        square_dim: square.rank(),
    })
}

/// `dim Hom(X, Y)` as bimodules: linear maps commuting with the left and
/// right actions of every generator.
pub fn bimodule_hom_dim<X, Y>(x: &X, y: &Y) -> usize
where
    X: Bimodule + ?Sized,
    Y: Bimodule + ?Sized,
{
    // Unknowns φ(j, i) = coefficient of y_j in φ(x_i), only for equal endpoints.
    let mut unknown: HashMap<(usize, usize), usize> = HashMap::new();
    let mut y_by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for j in 0..y.dim() {
        y_by_ends.entry(y.endpoints(j)).or_default().push(j);
    }
    // by_x[i] = [(j, unknown index)]
    let mut by_x: Vec<Vec<(usize, usize)>> = vec![Vec::new(); x.dim()];
    for (i, slot) in by_x.iter_mut().enumerate() {
        for &j in y_by_ends.get(&x.endpoints(i)).map(Vec::as_slice).unwrap_or(&[]) {
            let n = unknown.len();
            unknown.insert((j, i), n);
            slot.push((j, n));
        }
    }
    if unknown.is_empty() {
        return 0;
    }
    let field = x.field();
    let mut rank = Subspace::echelon_only(field, unknown.len());
    let arrows = x.quiver().num_arrows();
    for side in [Side::Left, Side::Right] {
        for a in 0..arrows {
            let g = Generator::Arrow(a);
            let y_act: Vec<SparseVec> = (0..y.dim()).map(|j| y.act(side, g, j)).collect();
            for i in 0..x.dim() {
                // φ(g·x_i) − g·φ(x_i), coordinate l of Y.
                let mut eqs: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
                for (k, c) in x.act(side, g, i).iter() {
                    for &(j, u) in &by_x[*k] {
                        eqs.entry(j).or_default().push((u, c.clone()));
                    }
                }
                for &(j, u) in &by_x[i] {
                    for (l, c) in y_act[j].iter() {
                        eqs.entry(*l).or_default().push((u, -c));
                    }
                }
                let mut keys: Vec<usize> = eqs.keys().copied().collect();
                keys.sort_unstable();
                for l in keys {
                    let v = SparseVec::from_pairs(eqs.remove(&l).expect("key"));
                    if !v.is_zero() {
                        rank.insert(&v);
                    }
                }
            }
        }
    }
    unknown.len() - rank.rank()
}
