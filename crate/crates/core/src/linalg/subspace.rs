//! Row-sparse vectors and an incremental echelon reducer.
//!
//! A [`Subspace`] keeps a basis whose rows are led by their *largest* nonzero
//! coordinate. In reduced mode every pivot column is zero in all other rows,
//! so the coordinates of a member vector along the basis are simply its
//! entries at the pivot columns.

use std::collections::{BTreeMap, HashMap};

use super::scalar::{Field, Scalar};

/// Sparse vector stored as `(index, value)` pairs, indices strictly
/// increasing, no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: Field) -> SparseVec {
        SparseVec { entries: vec![(index, field.one())] }
    }

    /// Builds from arbitrary pairs, summing repeated indices and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in pairs {
            match acc.get_mut(&i) {
                Some(x) => *x = &*x + &v,
                None => {
                    acc.insert(i, v);
                }
            }
        }
        SparseVec { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(v: &[Scalar]) -> SparseVec {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize, field: Field) -> Vec<Scalar> {
        let mut v = vec![field.zero(); dim];
        for (i, x) in &self.entries {
            v[*i] = x.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// Largest index with a nonzero entry.
    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.last().map(|(i, v)| (*i, v))
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, c * v)).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let a = self.entries.get(i);
            let b = other.entries.get(j);
            match (a, b) {
                (Some((ia, va)), Some((ib, vb))) if ia == ib => {
                    let s = va + &(c * vb);
                    if !s.is_zero() {
                        out.push((*ia, s));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((ia, va)), Some((ib, _))) if ia < ib => {
                    out.push((*ia, va.clone()));
                    i += 1;
                }
                (Some((ia, va)), None) => {
                    out.push((*ia, va.clone()));
                    i += 1;
                }
                (_, Some((ib, vb))) => {
                    out.push((*ib, c * vb));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseVec { entries: out }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.add_scaled(&-&v.field().one(), other),
        }
    }

    /// Applies an index map; entries mapped to `None` are dropped.
    pub fn map_indices(&self, mut f: impl FnMut(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(
            self.entries.iter().filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))),
        )
    }
}

/// Incrementally maintained echelon basis of a subspace of `k^dim`.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    dim: usize,
    reduced: bool,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Subspace {
    /// A subspace whose basis is kept in fully reduced form.
    pub fn new(field: Field, dim: usize) -> Subspace {
        Subspace { field, dim, reduced: true, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    /// Cheaper variant that only keeps distinct leading terms; enough for
    /// ranks and membership but [`Subspace::coordinates`] is unavailable.
    pub fn echelon_only(field: Field, dim: usize) -> Subspace {
        Subspace { reduced: false, ..Subspace::new(field, dim) }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis rows in insertion order.
    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().expect("nonzero row").0).collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Remainder of `v` after eliminating every pivot column. In reduced
    /// mode this is the canonical normal form of `v` modulo the subspace.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if self.rows.is_empty() || v.is_zero() {
            return v.clone();
        }
        let mut acc: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        let mut cursor = usize::MAX;
        loop {
            let next = acc.range(..cursor).next_back().map(|(k, _)| *k);
            let Some(col) = next else { break };
            cursor = col;
            let Some(&r) = self.pivot_row.get(&col) else { continue };
            let c = acc.remove(&col).expect("present");
            for (i, x) in self.rows[r].iter() {
                if *i == col {
                    continue;
                }
                let delta = &c * x;
                match acc.get_mut(i) {
                    Some(y) => {
                        let s = &*y - &delta;
                        if s.is_zero() {
                            acc.remove(i);
                        } else {
                            *y = s;
                        }
                    }
                    None => {
                        acc.insert(*i, -delta);
                    }
                }
            }
        }
        SparseVec { entries: acc.into_iter().collect() }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let w = self.reduce(v);
        let Some((col, lead)) = w.leading() else { return false };
        let w = w.scale(&lead.inverse().expect("nonzero"));
        if self.reduced {
            for row in &mut self.rows {
                if let Some(x) = row.get(col) {
                    let x = x.clone();
                    *row = row.add_scaled(&-&x, &w);
                }
            }
        }
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push(w);
        true
    }

    /// Coordinates of `v` along [`Subspace::basis`], or `None` if `v` is not
    /// in the span. Requires reduced mode.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        assert!(self.reduced, "coordinates need a reduced basis");
        if !self.contains(v) {
            return None;
        }
        Some(
            self.rows
                .iter()
                .map(|r| {
                    let p = r.leading().expect("nonzero row").0;
                    v.get(p).cloned().unwrap_or_else(|| self.field.zero())
                })
                .collect(),
        )
    }
}

/// Rank of a family of sparse vectors in `k^dim`.
pub fn sparse_rank<'a>(field: Field, dim: usize, vectors: impl IntoIterator<Item = &'a SparseVec>) -> usize {
    let mut s = Subspace::echelon_only(field, dim);
    for v in vectors {
        s.insert(v);
    }
    s.rank()
}
