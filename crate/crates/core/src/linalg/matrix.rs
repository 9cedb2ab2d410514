use std::fmt;

use super::scalar::{Field, Scalar};

/// Dense row-major matrix over a single [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonForm {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl EchelonForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            debug_assert!(row.iter().all(|s| s.field() == field));
            entries.extend(row);
        }
        Matrix { field, rows: n, cols, entries }
    }

    /// Integer-entry constructor, handy in tests and examples.
    pub fn from_i64(field: Field, cols: usize, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        debug_assert_eq!(value.field(), self.field);
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Reduced row echelon form. Pivots are taken in the leftmost column
    /// holding a nonzero entry at or below the current row, from the topmost
    /// such row, so the result is fully deterministic.
    pub fn echelonize(&self) -> EchelonForm {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..a.cols {
            if prow == a.rows {
                break;
            }
            let Some(found) = (prow..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(found, prow);
            let inv = a.get(prow, col).inverse().expect("nonzero pivot");
            let support: Vec<usize> =
                (col..a.cols).filter(|&c| !a.get(prow, c).is_zero()).collect();
            for &c in &support {
                let v = a.get(prow, c) * &inv;
                a.set(prow, c, v);
            }
            for r in 0..a.rows {
                if r == prow || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for &c in &support {
                    let v = a.get(r, c) - &(&factor * a.get(prow, c));
                    a.set(r, c, v);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        EchelonForm { reduced: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelonize().rank()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column in
    /// increasing column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let ech = self.echelonize();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (r, &p) in ech.pivots.iter().enumerate() {
                    v[p] = -ech.reduced.get(r, free);
                }
                v
            })
            .collect()
    }

    /// Dimension of the cokernel of the map `k^cols -> k^rows`.
    pub fn cokernel_dim(&self) -> usize {
        self.rows - self.rank()
    }

    /// Dimension of the solution space of the homogeneous system.
    pub fn solution_space_dim(&self) -> usize {
        self.cols - self.rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn identity_is_full_rank() {
        let e = Matrix::identity(Q, 2).echelonize();
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots, vec![0, 1]);
        assert!(Matrix::identity(Q, 4).kernel_basis().is_empty());
        assert_eq!(Matrix::identity(Q, 3).cokernel_dim(), 0);
        assert_eq!(Matrix::identity(Q, 3).solution_space_dim(), 0);
    }

    #[test]
    fn zero_matrix() {
        let z = Matrix::zeros(Q, 3, 4);
        let e = z.echelonize();
        assert_eq!(e.rank(), 0);
        assert!(e.pivots.is_empty());
        let k = Matrix::zeros(Q, 2, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
            }
        }
        assert_eq!(Matrix::zeros(Q, 5, 2).cokernel_dim(), 5);
    }

    #[test]
    fn dependent_rows() {
        let m = Matrix::from_i64(Q, 2, &[&[1, 2], &[2, 4]]);
        let e = m.echelonize();
        assert_eq!(e.rank(), 1);
        assert_eq!(e.pivots, vec![0]);
        assert_eq!(m.cokernel_dim(), 1);
    }

    #[test]
    fn diagonal_kernel() {
        let m = Matrix::from_i64(Q, 2, &[&[1, -1]]);
        assert_eq!(m.solution_space_dim(), 1);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![Q.one(), Q.one()]]);
        assert_eq!(Matrix::zeros(Q, 0, 5).solution_space_dim(), 5);
    }

    #[test]
    fn kernel_over_f2_by_enumeration() {
        // [[1,1]] over F_2: of the four vectors only (0,0) and (1,1) are killed.
        let f2 = Field::Prime(2);
        let m = Matrix::from_i64(f2, 2, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![f2.one(), f2.one()]]);
    }

    #[test]
    fn rank_over_f3_differs_from_q() {
        let m = Matrix::from_i64(Q, 2, &[&[1, 1], &[1, -2]]);
        assert_eq!(m.rank(), 2);
        let m3 = Matrix::from_i64(Field::Prime(3), 2, &[&[1, 1], &[1, -2]]);
        assert_eq!(m3.rank(), 1);
    }
}
