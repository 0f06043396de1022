//! Dense exact linear algebra: reduced row echelon forms, rank, kernels,
//! particular solutions and quotient bases.
//!
//! Every basis returned here is read off a reduced row echelon form, so the
//! output depends only on the input matrix and never on evaluation order.

use thiserror::Error;

use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("subspace is not contained in the ambient span")]
    NotContained,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            field,
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Builds a `rows x columns.len()` matrix whose j-th column is `columns[j]`.
    pub fn from_columns(
        field: FieldSpec,
        rows: usize,
        columns: &[Vec<Scalar>],
    ) -> Result<Self, LinalgError> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinalgError::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    /// Convenience for tests and fixtures: integer entries.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("ragged integer matrix")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Reduced row echelon form: `rows[r]` has a leading one in column
/// `pivots[r]`, and every other row vanishes in that column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowEchelon {
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<Scalar>>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the echelon rows; the result is zero exactly when
    /// `v` lies in the row space.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }
}

/// Gauss-Jordan elimination to reduced row echelon form. Pivots are chosen as
/// the first row with a nonzero entry in the current column.
pub fn row_reduce(m: &Matrix) -> RowEchelon {
    let rows: Vec<Vec<Scalar>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    reduce_rows(m.field, m.cols, rows)
}

fn reduce_rows(field: FieldSpec, cols: usize, mut rows: Vec<Vec<Scalar>>) -> RowEchelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        let support: Vec<usize> = (c..cols).filter(|&j| !rows[r][j].is_zero()).collect();
        for &j in &support {
            rows[r][j] = &rows[r][j] * &inv;
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row exists");
        for row in head.iter_mut().chain(tail.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                let delta = &f * &pivot_row[j];
                row[j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    debug_assert!(rows
        .iter()
        .all(|row| row.iter().all(|x| x.field() == field)));
    RowEchelon { cols, pivots, rows }
}

/// Row-reduces a list of vectors of common length `len`.
pub fn span_echelon(field: FieldSpec, len: usize, vectors: &[Vec<Scalar>]) -> RowEchelon {
    reduce_rows(field, len, vectors.to_vec())
}

pub fn rank(m: &Matrix) -> usize {
    row_reduce(m).rank()
}

/// Null space basis, one vector per free column in ascending order. The
/// vector for free column `f` has a one at `f`, zeros at the other free
/// columns, and the negated echelon entries at the pivots.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    kernel_from_echelon(m.field, &row_reduce(m))
}

pub fn kernel_from_echelon(field: FieldSpec, ech: &RowEchelon) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; ech.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..ech.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); ech.cols];
            v[f] = field.one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// One solution of `m x = b`, with zeros in every free-variable position.
pub fn solve_linear(m: &Matrix, b: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let rows: Vec<Vec<Scalar>> = (0..m.rows)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let ech = reduce_rows(m.field, m.cols + 1, rows);
    if ech.pivots.last() == Some(&m.cols) {
        return Err(LinalgError::Inconsistent);
    }
    let mut x = vec![m.field.zero(); m.cols];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        x[p] = row[m.cols].clone();
    }
    Ok(x)
}

/// Vectors of `span(amb)` whose classes form a basis of
/// `span(amb) / span(sub)`: the echelon rows of `amb` whose pivot column is
/// not a pivot column of `sub`.
pub fn quotient_representatives(
    field: FieldSpec,
    len: usize,
    sub: &[Vec<Scalar>],
    amb: &[Vec<Scalar>],
) -> Result<Vec<Vec<Scalar>>, LinalgError> {
    for v in sub.iter().chain(amb) {
        if v.len() != len {
            return Err(LinalgError::DimensionMismatch {
                expected: len,
                found: v.len(),
            });
        }
    }
    let amb_ech = span_echelon(field, len, amb);
    let sub_ech = span_echelon(field, len, sub);
    if sub_ech
        .rows
        .iter()
        .any(|v| amb_ech.reduce(v).iter().any(|x| !x.is_zero()))
    {
        return Err(LinalgError::NotContained);
    }
    Ok(amb_ech
        .rows
        .iter()
        .zip(&amb_ech.pivots)
        .filter(|(_, p)| !sub_ech.pivots.contains(p))
        .map(|(row, _)| row.clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(Q, 2)), 2);
        assert_eq!(rank(&Matrix::zeros(Q, 3, 4)), 0);
        assert_eq!(rank(&Matrix::from_i64(Q, &[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(Q, 2)).is_empty());
        assert_eq!(
            kernel_basis(&Matrix::zeros(Q, 2, 3)),
            vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]
        );
        assert_eq!(
            kernel_basis(&Matrix::from_i64(Q, &[&[1, 2]])),
            vec![v(&[-2, 1])]
        );
    }

    #[test]
    fn solve_examples() {
        let b = v(&[3, -1]);
        assert_eq!(solve_linear(&Matrix::identity(Q, 2), &b).unwrap(), b);
        assert_eq!(
            solve_linear(&Matrix::zeros(Q, 2, 2), &v(&[0, 0])).unwrap(),
            v(&[0, 0])
        );
        assert_eq!(
            solve_linear(&Matrix::from_i64(Q, &[&[1, 1]]), &v(&[2])).unwrap(),
            v(&[2, 0])
        );
        assert_eq!(
            solve_linear(&Matrix::zeros(Q, 1, 2), &v(&[1])),
            Err(LinalgError::Inconsistent)
        );
    }

    #[test]
    fn quotient_examples() {
        let amb = vec![v(&[1, 0]), v(&[0, 1])];
        assert!(quotient_representatives(Q, 2, &amb, &amb)
            .unwrap()
            .is_empty());
        assert_eq!(quotient_representatives(Q, 2, &[], &amb).unwrap().len(), 2);
        assert_eq!(
            quotient_representatives(Q, 2, &[v(&[1, 0])], &amb).unwrap(),
            vec![v(&[0, 1])]
        );
        assert_eq!(
            quotient_representatives(Q, 2, &[v(&[1, 1])], &[v(&[1, 0])]),
            Err(LinalgError::NotContained)
        );
    }

    #[test]
    fn prime_field_elimination() {
        let f5 = FieldSpec::PrimeField(5);
        // [[1,2],[3,1]] is singular mod 5 since det = -5
        let m = Matrix::from_i64(f5, &[&[1, 2], &[3, 1]]);
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(m.mul_vec(&k[0]).unwrap(), vec![f5.zero(), f5.zero()]);
    }
}
