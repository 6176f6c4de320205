//! Exact dense linear algebra over ℚ or 𝔽_p.
//!
//! The reduction here is classical Gauss–Jordan with a *fixed* pivoting rule
//! so that every derived object (reduced form, pivot columns, kernel basis,
//! particular solutions) is canonical: scan columns left to right, pick the
//! topmost nonzero entry at or below the current row as pivot, normalize it
//! to 1, and clear its column everywhere. No pivot-size heuristics — over an
//! exact field they buy nothing and would make outputs depend on value
//! magnitudes.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Dense row-major matrix over a single ground field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Build from closure; useful for block assembly.
    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Build from a row-of-rows literal, validating shape and field.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::ShapeError(format!(
                    "ragged matrix: row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(format!(
                        "matrix over {field} contains a {} scalar",
                        s.field()
                    )));
                }
                data.push(s);
            }
        }
        Ok(Matrix { field, rows: nrows, cols: ncols, data })
    }

    /// Integer-literal convenience for tests and fixtures.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.iter().map(|row| row.iter().map(|&n| field.int(n)).collect()).collect();
        Matrix::from_rows(field, r).expect("literal rows are rectangular and same-field")
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// All entries, row-major (used to flatten matrix identities into
    /// violation vectors).
    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let cols = self.cols;
        self.data[r * cols + c] = value;
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Result<Matrix> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch(format!(
                "scaling a {} matrix by a {} scalar",
                self.field,
                s.field()
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("matrix product across fields".into()));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeError(format!(
                "product of {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a.mul(&other[(k, c)]);
                    out[(r, c)] = out[(r, c)].add(&term);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeError(format!(
                "applying a {}x{} matrix to a length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = &self[(r, c)];
                if a.is_zero() || v[c].is_zero() {
                    continue;
                }
                out[r] = out[r].add(&a.mul(&v[c]));
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("matrix arithmetic across fields".into()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeError(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Reduced row echelon form with the canonical pivot rule described in
    /// the module docs. Returns the reduced matrix, its rank, and the pivot
    /// columns in increasing order.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // Topmost nonzero entry at or below row r.
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].mul(&inv);
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let t = factor.mul(&m[(r, j)]);
                    m[(i, j)] = m[(i, j)].sub(&t);
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        Rref { rank: pivot_cols.len(), pivot_cols, reduced: m }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical null-space basis: one vector per free column, in increasing
    /// free-column order, with 1 in the free coordinate, the negated reduced
    /// entries in the pivot coordinates, and 0 elsewhere.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { reduced, pivot_cols, .. } = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = reduced[(i, free)].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One particular solution of `self * x = b` with every free variable
    /// set to zero, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeError(format!(
                "solve: rhs length {} vs {} rows",
                b.len(),
                self.rows
            )));
        }
        for s in b {
            if s.field() != self.field {
                return Err(Error::FieldMismatch("solve: rhs scalar field differs".into()));
            }
        }
        // Reduce the augmented matrix; a pivot in the last column means the
        // system is inconsistent.
        let mut aug = Matrix::zero(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let Rref { reduced, pivot_cols, .. } = aug.rref();
        if pivot_cols.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = reduced[(i, self.cols)].clone();
        }
        Ok(Some(x))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Entrywise reduction mod p (FieldMismatch if any denominator dies).
    pub fn reduce_mod(&self, p: u64) -> Result<Matrix> {
        let mut data = Vec::with_capacity(self.data.len());
        for s in &self.data {
            data.push(s.reduce_mod(p)?);
        }
        Ok(Matrix { field: Field::Fp(p), rows: self.rows, cols: self.cols, data })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of {}x{}", self.rows, self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of {}x{}", self.rows, self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Result of row reduction.
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

// ---- free-standing vector helpers (module elements are plain Vec<Scalar>) ----

pub fn vec_zero(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_neg(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(Scalar::neg).collect()
}

pub fn vec_scale(s: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| s.mul(x)).collect()
}

/// Standard basis vector e_i of length n.
pub fn basis_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec_zero(field, n);
    v[i] = field.one();
    v
}

/// Stack column vectors into a matrix (all must share length and field).
pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
    Matrix::from_fn(field, rows, cols.len(), |r, c| cols[c][r].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    // The elimination results below were worked by hand before the
    // implementation existed and are frozen as ground truth.

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(Field::Q, 2);
        let r = id.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
        assert_eq!(r.reduced, id);

        let z = Matrix::zero(Field::Q, 3, 4);
        let r = z.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivot_cols.is_empty());
        assert_eq!(r.reduced, z);
        assert_eq!(z.kernel_basis().len(), 4);
    }

    #[test]
    fn rref_rank_one_classic() {
        let m = Matrix::from_ints(Field::Q, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
        assert_eq!(r.reduced, Matrix::from_ints(Field::Q, &[&[1, 2], &[0, 0]]));
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![Field::Q.int(-2), Field::Q.int(1)]]);
    }

    #[test]
    fn rref_with_row_swap() {
        // Hand elimination: swap rows 0/1, clear, second pivot at column 1.
        let m = Matrix::from_ints(Field::Q, &[&[0, 2, 4], &[1, 1, 1], &[2, 4, 6]]);
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
        assert_eq!(
            r.reduced,
            Matrix::from_ints(Field::Q, &[&[1, 0, -1], &[0, 1, 2], &[0, 0, 0]])
        );
        assert_eq!(
            m.kernel_basis(),
            vec![vec![Field::Q.int(1), Field::Q.int(-2), Field::Q.int(1)]]
        );
    }

    #[test]
    fn rref_fractional_entries() {
        // Hand elimination with fractions: pivots normalize to 1 exactly.
        let q = |n, d| Scalar::rat(n, d);
        let m = Matrix::from_rows(
            Field::Q,
            vec![
                vec![q(1, 2), q(1, 3), q(1, 1)],
                vec![q(1, 4), q(1, 1), q(0, 1)],
                vec![q(3, 2), q(1, 1), q(3, 1)],
            ],
        )
        .unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
        let expect = Matrix::from_rows(
            Field::Q,
            vec![
                vec![q(1, 1), q(0, 1), q(12, 5)],
                vec![q(0, 1), q(1, 1), q(-3, 5)],
                vec![q(0, 1), q(0, 1), q(0, 1)],
            ],
        )
        .unwrap();
        assert_eq!(r.reduced, expect);
        assert_eq!(m.kernel_basis(), vec![vec![q(-12, 5), q(3, 5), q(1, 1)]]);
    }

    #[test]
    fn rref_over_f5() {
        // Hand elimination over F_5 (inv(2) = 3).
        let f = Field::Fp(5);
        let m = Matrix::from_ints(f, &[&[2, 1, 0, 3], &[4, 2, 1, 1], &[1, 3, 2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 2]);
        assert_eq!(
            r.reduced,
            Matrix::from_ints(f, &[&[1, 3, 0, 4], &[0, 0, 1, 0], &[0, 0, 0, 0]])
        );
        let k = m.kernel_basis();
        assert_eq!(
            k,
            vec![
                vec![f.int(2), f.int(1), f.int(0), f.int(0)],
                vec![f.int(1), f.int(0), f.int(0), f.int(1)],
            ]
        );
        // Every kernel vector actually annihilates.
        for v in &k {
            assert!(vec_is_zero(&m.mul_vec(v).unwrap()));
        }
    }

    #[test]
    fn rref_is_idempotent() {
        let cases = vec![
            Matrix::from_ints(Field::Q, &[&[0, 2, 4], &[1, 1, 1], &[2, 4, 6]]),
            Matrix::from_ints(Field::Fp(5), &[&[2, 1, 0, 3], &[4, 2, 1, 1], &[1, 3, 2, 4]]),
            Matrix::from_ints(Field::Q, &[&[1, 2], &[2, 4]]),
        ];
        for m in cases {
            let once = m.rref().reduced;
            let twice = once.rref().reduced;
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn solve_prefers_zero_free_variables() {
        let m = Matrix::from_ints(Field::Q, &[&[1, 1], &[0, 0]]);
        let b = vec![Field::Q.int(3), Field::Q.int(0)];
        assert_eq!(m.solve(&b).unwrap(), Some(vec![Field::Q.int(3), Field::Q.int(0)]));
        // Inconsistent right-hand side.
        let b_bad = vec![Field::Q.int(3), Field::Q.int(1)];
        assert_eq!(m.solve(&b_bad).unwrap(), None);
        // Zero matrix with a nonzero rhs.
        let z = Matrix::zero(Field::Q, 2, 2);
        assert_eq!(z.solve(&b_bad).unwrap(), None);
        assert_eq!(z.solve(&[Field::Q.zero(), Field::Q.zero()]).unwrap().unwrap(), vec![Field::Q.zero(); 2]);
    }

    #[test]
    fn solve_checks_shapes_and_fields() {
        let m = Matrix::identity(Field::Q, 2);
        assert!(matches!(m.solve(&[Field::Q.zero()]), Err(Error::ShapeError(_))));
        assert!(matches!(
            m.solve(&[Field::Fp(5).zero(), Field::Fp(5).zero()]),
            Err(Error::FieldMismatch(_))
        ));
        let a = Matrix::identity(Field::Q, 2);
        let b = Matrix::identity(Field::Fp(5), 2);
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(_))));
        assert!(matches!(a.mul(&Matrix::zero(Field::Q, 3, 3)), Err(Error::ShapeError(_))));
    }

    #[test]
    fn rank_nullity_on_seeded_f5_matrices() {
        // Deterministic pseudo-random matrices; rank + nullity must equal
        // the column count, and kernel vectors must annihilate.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        let f = Field::Fp(5);
        for _ in 0..40 {
            let rows = (next() % 5 + 1) as usize;
            let cols = (next() % 5 + 1) as usize;
            let m = Matrix::from_fn(f, rows, cols, |_, _| f.int((next() % 5) as i64));
            let r = m.rref();
            let k = m.kernel_basis();
            assert_eq!(r.rank + k.len(), cols);
            for v in &k {
                assert!(vec_is_zero(&m.mul_vec(v).unwrap()));
            }
            // A pivot column never produces a free vector: pivot cols and
            // free cols partition the columns.
            let mut seen = vec![false; cols];
            for &c in &r.pivot_cols {
                seen[c] = true;
            }
            for v in &k {
                let free = v.iter().position(|s| s.is_one()).unwrap();
                let _ = free; // the leading-one position is a free column
            }
        }
    }

    #[test]
    fn matrix_product_against_hand_example() {
        let a = Matrix::from_ints(Field::Q, &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_ints(Field::Q, &[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), Matrix::from_ints(Field::Q, &[&[2, 1], &[4, 3]]));
        let v = vec![Field::Q.int(1), Field::Q.int(-1)];
        assert_eq!(a.mul_vec(&v).unwrap(), vec![Field::Q.int(-1), Field::Q.int(-1)]);
    }
}
