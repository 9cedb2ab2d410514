//! The `E`-relative reduced bar complex, `E = kQ0`.
//!
//! Since `E` is semisimple and `Λ = E ⊕ r`, Hochschild cohomology with
//! coefficients in `M` is the cohomology of `C^j = Hom_{E-E}(r^{⊗_E j}, M)`.
//! A basis of `C^j` is given by pairs (composable `j`-tuple of basis paths of
//! `r`, basis element of `M` with the same endpoints): the cochain sending
//! that tuple to that element and every other tuple to zero.

use std::collections::HashMap;

use crate::bqa::{left_path_action, right_path_action, Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar, SparseVec, Subspace};

/// Default cap on the dimension of the top cochain space.
pub const DEFAULT_BAR_CAP: usize = 200_000;

/// Cochain spaces `C^0..=C^top` and the differentials between them.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    field: Field,
    dims: Vec<usize>,
    /// `differentials[j]` holds the columns of `δ^j : C^j → C^{j+1}`.
    differentials: Vec<Vec<SparseVec>>,
    ranks: Vec<usize>,
}

impl CochainComplex {
    pub fn field(&self) -> Field {
        self.field
    }

    /// Highest degree with a cochain space.
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }

    /// Columns of `δ^j`, one per basis cochain of `C^j`.
    pub fn differential(&self, j: usize) -> &[SparseVec] {
        &self.differentials[j]
    }

    pub fn rank(&self, j: usize) -> usize {
        self.ranks[j]
    }

    /// `dim ker δ^j − dim im δ^{j−1}`, for `j < top`.
    pub fn cohomology_dim(&self, j: usize) -> usize {
        let incoming = if j == 0 { 0 } else { self.ranks[j - 1] };
        self.dims[j] - self.ranks[j] - incoming
    }

    /// Whether `δ^{j+1} ∘ δ^j = 0` for every `j + 1 < top + 1`.
    pub fn squares_to_zero(&self) -> bool {
        (0..self.differentials.len().saturating_sub(1)).all(|j| {
            let next = &self.differentials[j + 1];
            self.differentials[j].iter().all(|col| {
                let mut acc = SparseVec::new();
                for (k, c) in col.iter() {
                    acc = acc.add_scaled(c, &next[*k]);
                }
                acc.is_zero()
            })
        })
    }
}

/// Number of composable `top`-tuples times the matching `dim yMx`, without
/// enumerating them.
fn top_dim(r_ends: &[(usize, usize)], m_ends: &HashMap<(usize, usize), usize>, nv: usize, top: usize) -> usize {
    if top == 0 {
        return (0..nv).map(|v| m_ends.get(&(v, v)).copied().unwrap_or(0)).sum();
    }
    // walks[y][x] = number of composable tuples from x to y
    let mut adj = vec![vec![0u128; nv]; nv];
    for &(t, s) in r_ends {
        adj[t][s] += 1;
    }
    let mut walks = adj.clone();
    for _ in 1..top {
        let mut next = vec![vec![0u128; nv]; nv];
        for y in 0..nv {
            for z in 0..nv {
                if walks[y][z] == 0 {
                    continue;
                }
                for x in 0..nv {
                    next[y][x] = next[y][x].saturating_add(walks[y][z].saturating_mul(adj[z][x]));
                }
            }
        }
        walks = next;
    }
    let mut total = 0u128;
    for y in 0..nv {
        for x in 0..nv {
            let m = m_ends.get(&(y, x)).copied().unwrap_or(0) as u128;
            total = total.saturating_add(walks[y][x].saturating_mul(m));
        }
    }
    usize::try_from(total).unwrap_or(usize::MAX)
}

/// Builds `C^0 → ⋯ → C^top` for coefficients `m`. Fails if `dim C^top`
/// exceeds `cap`.
pub fn bar_complex<M: Bimodule + ?Sized>(alg: &Algebra, m: &M, top: usize, cap: usize) -> Result<CochainComplex> {
    let field = alg.field();
    let nv = alg.quiver().num_vertices();
    // Basis of r: the nontrivial normal basis paths.
    let r: Vec<usize> = (0..alg.dim()).filter(|&i| !alg.basis_path(i).is_trivial()).collect();
    let mut r_of = vec![usize::MAX; alg.dim()];
    for (k, &i) in r.iter().enumerate() {
        r_of[i] = k;
    }
    let r_ends: Vec<(usize, usize)> = r.iter().map(|&i| alg.basis_path(i).endpoints()).collect();
    let mut m_count: HashMap<(usize, usize), usize> = HashMap::new();
    let mut m_by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for i in 0..m.dim() {
        *m_count.entry(m.endpoints(i)).or_default() += 1;
        m_by_ends.entry(m.endpoints(i)).or_default().push(i);
    }
    let size = top_dim(&r_ends, &m_count, nv, top);
    if size > cap {
        return Err(Error::ComplexTooLarge { size, cap });
    }

    // factors[k] = [(u, v, c)] with c the coefficient of r_k in r_u · r_v.
    let mut factors: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); r.len()];
    for (u, &iu) in r.iter().enumerate() {
        for (v, &iv) in r.iter().enumerate() {
            if r_ends[u].1 != r_ends[v].0 {
                continue;
            }
            for (k, c) in alg.mul_basis(iu, iv).iter() {
                factors[r_of[*k]].push((u, v, c.clone()));
            }
        }
    }
    // Actions of the r basis on M.
    let mut left: HashMap<(usize, usize), SparseVec> = HashMap::new();
    let mut right: HashMap<(usize, usize), SparseVec> = HashMap::new();
    for (x, &ix) in r.iter().enumerate() {
        let p = alg.basis_path(ix);
        let (t, s) = r_ends[x];
        for y in 0..nv {
            for &j in m_by_ends.get(&(s, y)).map(Vec::as_slice).unwrap_or(&[]) {
                left.insert((x, j), left_path_action(m, p, &SparseVec::unit(j, field)));
            }
            for &j in m_by_ends.get(&(y, t)).map(Vec::as_slice).unwrap_or(&[]) {
                right.insert((x, j), right_path_action(m, &SparseVec::unit(j, field), p));
            }
        }
    }
    let mut r_from: Vec<Vec<usize>> = vec![Vec::new(); nv];
    let mut r_into: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (x, &(t, s)) in r_ends.iter().enumerate() {
        r_from[s].push(x);
        r_into[t].push(x);
    }

    // Basis of C^j: (tuple, m). Degree 0 uses the empty tuple.
    let mut bases: Vec<Vec<(Vec<usize>, usize)>> = Vec::with_capacity(top + 1);
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for j in 0..=top {
        let mut basis = Vec::new();
        for t in &tuples {
            let ends = if t.is_empty() { None } else { Some((r_ends[t[0]].0, r_ends[t[t.len() - 1]].1)) };
            match ends {
                None => {
                    for v in 0..nv {
                        for &mi in m_by_ends.get(&(v, v)).map(Vec::as_slice).unwrap_or(&[]) {
                            basis.push((Vec::new(), mi));
                        }
                    }
                }
                Some(e) => {
                    for &mi in m_by_ends.get(&e).map(Vec::as_slice).unwrap_or(&[]) {
                        basis.push((t.clone(), mi));
                    }
                }
            }
        }
        bases.push(basis);
        if j < top {
            tuples = if j == 0 {
                (0..r.len()).map(|x| vec![x]).collect()
            } else {
                let mut next = Vec::new();
                for t in &tuples {
                    let s = r_ends[t[t.len() - 1]].1;
                    for x in 0..r.len() {
                        if r_ends[x].0 == s {
                            let mut u = t.clone();
                            u.push(x);
                            next.push(u);
                        }
                    }
                }
                next
            };
        }
    }
    let index: Vec<HashMap<(Vec<usize>, usize), usize>> = bases
        .iter()
        .map(|b| b.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
        .collect();

    let one = field.one();
    let mut differentials = Vec::with_capacity(top);
    let mut ranks = Vec::with_capacity(top);
    for j in 0..top {
        let target = &index[j + 1];
        let sign_right = if (j + 1) % 2 == 0 { one.clone() } else { -&one };
        let mut columns = Vec::with_capacity(bases[j].len());
        for (t, mi) in &bases[j] {
            let (y, x) = if t.is_empty() {
                m.endpoints(*mi)
            } else {
                (r_ends[t[0]].0, r_ends[t[t.len() - 1]].1)
            };
            let mut pairs: Vec<(usize, Scalar)> = Vec::new();
            // x_1 · f(x_2, …)
            for &a in &r_from[y] {
                if let Some(img) = left.get(&(a, *mi)) {
                    let mut key = Vec::with_capacity(t.len() + 1);
                    key.push(a);
                    key.extend_from_slice(t);
                    for (k, c) in img.iter() {
                        pairs.push((target[&(key.clone(), *k)], c.clone()));
                    }
                }
            }
            // (−1)^i f(…, x_i x_{i+1}, …)
            for (pos, &tk) in t.iter().enumerate() {
                let sign = if (pos + 1) % 2 == 0 { one.clone() } else { -&one };
                for (u, v, c) in &factors[tk] {
                    let mut key = Vec::with_capacity(t.len() + 1);
                    key.extend_from_slice(&t[..pos]);
                    key.push(*u);
                    key.push(*v);
                    key.extend_from_slice(&t[pos + 1..]);
                    pairs.push((target[&(key, *mi)], &sign * c));
                }
            }
            // (−1)^{j+1} f(…) · x_{j+1}
            for &a in &r_into[x] {
                if let Some(img) = right.get(&(a, *mi)) {
                    let mut key = t.clone();
                    key.push(a);
                    for (k, c) in img.iter() {
                        pairs.push((target[&(key.clone(), *k)], &sign_right * c));
                    }
                }
            }
            columns.push(SparseVec::from_pairs(pairs));
        }
        let mut span = Subspace::echelon_only(field, bases[j + 1].len());
        for c in &columns {
            span.insert(c);
        }
        ranks.push(span.rank());
        differentials.push(columns);
    }
    Ok(CochainComplex { field, dims: bases.iter().map(Vec::len).collect(), differentials, ranks })
}

/// `dim HH^j(Λ, M)` for `j = 0..=max_degree`, after checking `δ∘δ = 0`.
pub fn bar_cohomology_dims<M: Bimodule + ?Sized>(
    alg: &Algebra,
    m: &M,
    max_degree: usize,
    cap: usize,
) -> Result<Vec<usize>> {
    let cx = bar_complex(alg, m, max_degree + 1, cap)?;
    if !cx.squares_to_zero() {
        return Err(Error::RouteMismatch {
            invariant: "bar complex".into(),
            detail: "the differential does not square to zero".into(),
        });
    }
    Ok((0..=max_degree).map(|j| cx.cohomology_dim(j)).collect())
}
