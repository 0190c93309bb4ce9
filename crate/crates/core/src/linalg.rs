//! Dense rational matrices and the exact rank / kernel / solve kit.
//!
//! Elimination is plain Gauss-Jordan with the first nonzero entry as pivot.
//! Internally rows are kept sparse because the differentials assembled by the
//! cohomology code are mostly zeros.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix with explicit shape; needed for `0 x n` and `n x 0` matrices.
    pub fn from_rows_shaped(rows: usize, cols: usize, data: Vec<Vec<Scalar>>) -> Result<Self> {
        if data.len() != rows || data.iter().any(|row| row.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "expected a {rows}x{cols} matrix"
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            data: data.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let vecs = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        Matrix::from_rows(vecs).expect("rectangular integer matrix")
    }

    /// Matrix whose columns are the given vectors, each of length `dim`.
    pub fn from_columns(dim: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Matrix::zeros(dim, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {dim}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
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

    pub fn add_to(&mut self, i: usize, j: usize, value: &Scalar) {
        self.data[i * self.cols + j] += value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Row-major flattening.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

type SparseRow = Vec<(usize, Scalar)>;

fn sparse(row: &[Scalar]) -> SparseRow {
    row.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect()
}

/// `a - c * b` for sorted sparse rows.
fn axpy(a: &SparseRow, c: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally maintained reduced row echelon form of a row space.
#[derive(Clone, Debug)]
pub struct RowSpace {
    width: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl RowSpace {
    pub fn new(width: usize) -> Self {
        RowSpace {
            width,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    fn reduce_sparse(&self, row: SparseRow) -> SparseRow {
        let mut acc = row;
        // Pivot rows vanish on every other pivot column, so one pass suffices.
        let coeffs: Vec<(usize, Scalar)> = acc
            .iter()
            .filter(|(j, _)| self.pivots.contains_key(j))
            .cloned()
            .collect();
        for (j, c) in coeffs {
            acc = axpy(&acc, &c, &self.pivots[&j]);
        }
        acc
    }

    /// Remainder of `row` modulo the current row space (zero on pivot columns).
    pub fn reduce(&self, row: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(row.len(), self.width, "row width mismatch");
        let red = self.reduce_sparse(sparse(row));
        let mut out = vec![Scalar::zero(); self.width];
        for (j, x) in red {
            out[j] = x;
        }
        out
    }

    pub fn contains(&self, row: &[Scalar]) -> bool {
        assert_eq!(row.len(), self.width, "row width mismatch");
        self.reduce_sparse(sparse(row)).is_empty()
    }

    /// Adds a row; returns `true` when the rank grew.
    pub fn insert(&mut self, row: &[Scalar]) -> bool {
        assert_eq!(row.len(), self.width, "row width mismatch");
        self.insert_sparse(sparse(row))
    }

    fn insert_sparse(&mut self, row: SparseRow) -> bool {
        let red = self.reduce_sparse(row);
        let Some((p, lead)) = red.first().cloned() else {
            return false;
        };
        let inv = lead.recip().expect("nonzero lead");
        let new: SparseRow = red.into_iter().map(|(j, x)| (j, x * &inv)).collect();
        for other in self.pivots.values_mut() {
            if let Ok(pos) = other.binary_search_by_key(&p, |(j, _)| *j) {
                let c = other[pos].1.clone();
                *other = axpy(other, &c, &new);
            }
        }
        self.pivots.insert(p, new);
        true
    }

    /// The reduced basis rows, ordered by pivot column.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.pivots
            .values()
            .map(|r| {
                let mut v = vec![Scalar::zero(); self.width];
                for (j, x) in r {
                    v[*j] = x.clone();
                }
                v
            })
            .collect()
    }
}

fn row_space_of<I: IntoIterator<Item = SparseRow>>(width: usize, rows: I) -> RowSpace {
    let mut rs = RowSpace::new(width);
    for row in rows {
        if !row.is_empty() {
            rs.insert_sparse(row);
        }
        if rs.rank() == width {
            break;
        }
    }
    rs
}

fn row_space(m: &Matrix) -> RowSpace {
    row_space_of(m.cols, (0..m.rows).map(|i| sparse(m.row(i))))
}

fn kernel_from(rs: &RowSpace) -> Vec<Vec<Scalar>> {
    let width = rs.width;
    let mut basis = Vec::new();
    for free in (0..width).filter(|j| !rs.pivots.contains_key(j)) {
        let mut v = vec![Scalar::zero(); width];
        v[free] = Scalar::one();
        for (&p, row) in &rs.pivots {
            if let Ok(pos) = row.binary_search_by_key(&free, |(j, _)| *j) {
                v[p] = -&row[pos].1;
            }
        }
        basis.push(v);
    }
    basis
}

fn solve_rows<I: IntoIterator<Item = SparseRow>>(cols: usize, rows: I, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut rs = RowSpace::new(cols + 1);
    for (i, mut row) in rows.into_iter().enumerate() {
        if !b[i].is_zero() {
            row.push((cols, b[i].clone()));
        }
        if !row.is_empty() {
            rs.insert_sparse(row);
        }
    }
    if rs.pivots.contains_key(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (&p, row) in &rs.pivots {
        if let Some((j, v)) = row.last() {
            if *j == cols {
                x[p] = v.clone();
            }
        }
    }
    Some(x)
}

pub fn rank(m: &Matrix) -> usize {
    row_space(m).rank()
}

/// Basis of `{x : M x = 0}`, one vector per free column.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    kernel_from(&row_space(m))
}

/// One solution of `M x = b`, or `None` when `b` is outside the column space.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    Ok(solve_rows(m.cols, (0..m.rows).map(|i| sparse(m.row(i))), b))
}

/// Row-sparse matrix used for the large differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl SparseMatrix {
    /// Builds from per-row maps `column -> value`; zero values are dropped.
    pub fn from_row_maps(cols: usize, rows: Vec<BTreeMap<usize, Scalar>>) -> Self {
        let data = rows
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, x)| !x.is_zero()).collect())
            .collect::<Vec<SparseRow>>();
        SparseMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_dense(m: &Matrix) -> Self {
        SparseMatrix {
            rows: m.rows,
            cols: m.cols,
            data: (0..m.rows).map(|i| sparse(m.row(i))).collect(),
        }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                m.set(i, *j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                out[*j].push((i, x.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data: out,
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| row.iter().map(|(j, x)| x * &v[*j]).sum())
            .collect()
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let rows = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        *acc.entry(*j).or_insert_with(Scalar::zero) += a * b;
                    }
                }
                acc
            })
            .collect();
        SparseMatrix::from_row_maps(other.cols, rows)
    }

    pub fn rank(&self) -> usize {
        row_space_of(self.cols, self.data.iter().cloned()).rank()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        kernel_from(&row_space_of(self.cols, self.data.iter().cloned()))
    }

    /// Reduced basis of the column space.
    pub fn column_space(&self) -> RowSpace {
        row_space_of(self.rows, self.transpose().data)
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        Ok(solve_rows(self.cols, self.data.iter().cloned(), b))
    }
}

fn span_rank(vectors: &[Vec<Scalar>], width: usize) -> Result<RowSpace> {
    let mut rs = RowSpace::new(width);
    for v in vectors {
        if v.len() != width {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a family of width {width}",
                v.len()
            )));
        }
        rs.insert(v);
    }
    Ok(rs)
}

/// `dim span(Z) - dim span(B)`, after checking `span(B) ⊆ span(Z)`.
pub fn quotient_dim(z: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<usize> {
    let Some(width) = z.first().or(b.first()).map(Vec::len) else {
        return Ok(0);
    };
    let zs = span_rank(z, width)?;
    let bs = span_rank(b, width)?;
    if let Some(w) = b.iter().find(|v| !zs.contains(v)) {
        return Err(Error::InclusionViolation { witness: w.clone() });
    }
    Ok(zs.rank() - bs.rank())
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::s;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| s(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::zeros(3, 3)), 0);
        assert_eq!(rank(&Matrix::identity(4)), 4);
        assert_eq!(rank(&Matrix::from_ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&Matrix::zeros(0, 5)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(2)).is_empty());
        assert_eq!(kernel_basis(&Matrix::zeros(2, 2)), vec![v(&[1, 0]), v(&[0, 1])]);
        let k = kernel_basis(&Matrix::from_ints(&[&[1, 1]]));
        assert_eq!(k, vec![v(&[-1, 1])]);
    }

    #[test]
    fn solve_examples() {
        let b = v(&[3, -1, 7]);
        assert_eq!(solve(&Matrix::identity(3), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&Matrix::zeros(2, 2), &v(&[1, 0])).unwrap(), None);
        let x = solve(&Matrix::from_ints(&[&[2]]), &v(&[1])).unwrap().unwrap();
        assert_eq!(x, vec![Scalar::new(1, 2)]);
        assert!(matches!(
            solve(&Matrix::identity(2), &v(&[1])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn quotient_examples() {
        let e = |i: usize| {
            let mut x = v(&[0, 0, 0]);
            x[i] = s(1);
            x
        };
        assert_eq!(quotient_dim(&[e(0), e(1), e(2)], &[]).unwrap(), 3);
        let zb = vec![v(&[1, 2]), v(&[0, 1])];
        assert_eq!(quotient_dim(&zb, &zb).unwrap(), 0);
        assert_eq!(quotient_dim(&[v(&[1, 0]), v(&[0, 1])], &[v(&[1, 1])]).unwrap(), 1);
        match quotient_dim(&[v(&[1, 0])], &[v(&[0, 1])]) {
            Err(Error::InclusionViolation { witness }) => assert_eq!(witness, v(&[0, 1])),
            other => panic!("expected inclusion violation, got {other:?}"),
        }
    }

    #[test]
    fn sparse_agrees_with_dense() {
        let m = Matrix::from_ints(&[&[1, 2, 0], &[2, 4, 0], &[0, 1, 1]]);
        let sm = SparseMatrix::from_dense(&m);
        assert_eq!(sm.rank(), rank(&m));
        assert_eq!(sm.kernel_basis(), kernel_basis(&m));
        assert_eq!(sm.to_dense(), m);
        assert_eq!(sm.transpose().to_dense(), m.transpose());
        let b = v(&[1, 2, 3]);
        assert_eq!(sm.solve(&b).unwrap(), solve(&m, &b).unwrap());
        assert_eq!(sm.mul(&sm).to_dense(), m.mul(&m));
        assert_eq!(sm.column_space().rank(), 2);
    }

    #[test]
    fn row_space_reduce_is_canonical() {
        let mut rs = RowSpace::new(3);
        rs.insert(&v(&[1, 1, 0]));
        rs.insert(&v(&[0, 1, 1]));
        let a = rs.reduce(&v(&[5, 0, 0]));
        let b = rs.reduce(&v(&[4, -1, 0]));
        assert_eq!(a, b);
        assert!(rs.contains(&v(&[1, 2, 1])));
    }
}
