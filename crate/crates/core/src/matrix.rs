//! Dense matrices over `Q` and the exact elimination routines the rest of the
//! crate is built on (reduced row echelon form, rank, nullspace, solves).
//!
//! Most operators in the models are very sparse, so every inner loop skips
//! zero entries before touching big-integer arithmetic.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{LabError, Result};
use crate::scalar::{self, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
  rows: usize,
  cols: usize,
  data: Vec<Scalar>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
  pub reduced: Matrix,
  pub pivots:  Vec<usize>,
}

impl Echelon {
  pub fn rank(&self) -> usize { self.pivots.len() }

  /// Nonzero rows of the reduced form.
  pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
    (0..self.rank()).map(|i| self.reduced.row(i).to_vec()).collect()
  }
}

impl Matrix {
  pub fn zeros(rows: usize, cols: usize) -> Self {
    Self { rows, cols, data: vec![Scalar::zero(); rows * cols] }
  }

  pub fn identity(n: usize) -> Self {
    let mut m = Self::zeros(n, n);
    for i in 0..n {
      m[(i, i)] = Scalar::one();
    }
    m
  }

  pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
      for j in 0..cols {
        data.push(f(i, j));
      }
    }
    Self { rows, cols, data }
  }

  pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
      return Err(LabError::shape("from_rows", "ragged rows"));
    }
    Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
  }

  /// Builds a matrix whose columns are the given vectors, each of length `len`.
  pub fn from_columns(len: usize, columns: &[Vec<Scalar>]) -> Self {
    let mut m = Self::zeros(len, columns.len());
    for (j, col) in columns.iter().enumerate() {
      assert_eq!(col.len(), len, "column length");
      for (i, v) in col.iter().enumerate() {
        if !v.is_zero() {
          m[(i, j)] = v.clone();
        }
      }
    }
    m
  }

  pub fn from_i64(rows: &[&[i64]]) -> Self {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    Self::from_fn(r, c, |i, j| scalar::int(rows[i][j]))
  }

  pub fn rows(&self) -> usize { self.rows }

  pub fn cols(&self) -> usize { self.cols }

  pub fn is_square(&self) -> bool { self.rows == self.cols }

  pub fn row(&self, i: usize) -> &[Scalar] { &self.data[i * self.cols..(i + 1) * self.cols] }

  pub fn column(&self, j: usize) -> Vec<Scalar> { (0..self.rows).map(|i| self[(i, j)].clone()).collect() }

  pub fn columns(&self) -> Vec<Vec<Scalar>> { (0..self.cols).map(|j| self.column(j)).collect() }

  pub fn to_rows(&self) -> Vec<Vec<Scalar>> { (0..self.rows).map(|i| self.row(i).to_vec()).collect() }

  pub fn is_zero(&self) -> bool { self.data.iter().all(Zero::is_zero) }

  pub fn nonzero_count(&self) -> usize { self.data.iter().filter(|v| !v.is_zero()).count() }

  pub fn transpose(&self) -> Self { Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone()) }

  pub fn scale(&self, s: &Scalar) -> Self {
    Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
  }

  pub fn is_symmetric(&self) -> bool {
    self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
  }

  pub fn is_antisymmetric(&self) -> bool {
    self.is_square()
      && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == -self[(j, i)].clone()))
  }

  pub fn trace(&self) -> Scalar { (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum() }

  pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
    if self.cols != other.rows {
      return Err(LabError::shape(
        "matrix product",
        format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols),
      ));
    }
    let mut out = Matrix::zeros(self.rows, other.cols);
    for i in 0..self.rows {
      for k in 0..self.cols {
        let a = &self[(i, k)];
        if a.is_zero() {
          continue;
        }
        for j in 0..other.cols {
          let b = &other[(k, j)];
          if !b.is_zero() {
            out[(i, j)] += a * b;
          }
        }
      }
    }
    Ok(out)
  }

  pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(v.len(), self.cols, "vector length");
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

  pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
    let rows = parts.first().map_or(0, |m| m.rows);
    if parts.iter().any(|m| m.rows != rows) {
      return Err(LabError::shape("hstack", "row counts differ"));
    }
    let cols = parts.iter().map(|m| m.cols).sum();
    let mut out = Matrix::zeros(rows, cols);
    let mut offset = 0;
    for m in parts {
      for i in 0..rows {
        for j in 0..m.cols {
          out[(i, offset + j)] = m[(i, j)].clone();
        }
      }
      offset += m.cols;
    }
    Ok(out)
  }

  pub fn vstack(parts: &[&Matrix]) -> Result<Matrix> {
    let cols = parts.first().map_or(0, |m| m.cols);
    if parts.iter().any(|m| m.cols != cols) {
      return Err(LabError::shape("vstack", "column counts differ"));
    }
    let rows = parts.iter().map(|m| m.rows).sum();
    let data = parts.iter().flat_map(|m| m.data.iter().cloned()).collect();
    Ok(Matrix { rows, cols, data })
  }

  pub fn select_columns(&self, cols: &[usize]) -> Matrix {
    Matrix::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
  }

  pub fn select_rows(&self, rows: &[usize]) -> Matrix {
    Matrix::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
  }

  pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
    Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
  }

  /// Gauss-Jordan elimination to reduced row echelon form.
  pub fn rref(&self) -> Echelon {
    let mut rows: Vec<Vec<Scalar>> = self.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..self.cols {
      if r == self.rows {
        break;
      }
      let Some(p) = (r..self.rows).find(|&i| !rows[i][c].is_zero()) else { continue };
      rows.swap(r, p);
      let inv = rows[r][c].recip();
      if !inv.is_one() {
        for v in rows[r].iter_mut().skip(c) {
          if !v.is_zero() {
            *v *= &inv;
          }
        }
      }
      let support: Vec<usize> = (c..self.cols).filter(|&j| !rows[r][j].is_zero()).collect();
      let pivot_row = rows[r].clone();
      for (i, row) in rows.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
          continue;
        }
        let f = row[c].clone();
        for &j in &support {
          row[j] -= &f * &pivot_row[j];
        }
      }
      pivots.push(c);
      r += 1;
    }
    let reduced = Matrix { rows: self.rows, cols: self.cols, data: rows.into_iter().flatten().collect() };
    Echelon { reduced, pivots }
  }

  pub fn rank(&self) -> usize {
    // Eliminate along the shorter side.
    if self.rows > self.cols { self.transpose().rref().rank() } else { self.rref().rank() }
  }

  /// Basis of the right nullspace `{v : Mv = 0}`, one vector per free column,
  /// each with a 1 in its free column.
  pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
    let ech = self.rref();
    let pivot_set: Vec<bool> = {
      let mut s = vec![false; self.cols];
      for &p in &ech.pivots {
        s[p] = true;
      }
      s
    };
    let mut basis = Vec::new();
    for free in (0..self.cols).filter(|&j| !pivot_set[j]) {
      let mut v = vec![Scalar::zero(); self.cols];
      v[free] = Scalar::one();
      for (i, &p) in ech.pivots.iter().enumerate() {
        let e = &ech.reduced[(i, free)];
        if !e.is_zero() {
          v[p] = -e.clone();
        }
      }
      basis.push(v);
    }
    basis
  }

  pub fn det(&self) -> Result<Scalar> {
    if !self.is_square() {
      return Err(LabError::shape("det", format!("{}x{} is not square", self.rows, self.cols)));
    }
    let n = self.rows;
    let mut a = self.to_rows();
    let mut det = Scalar::one();
    for c in 0..n {
      let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Ok(Scalar::zero()) };
      if p != c {
        a.swap(p, c);
        det = -det;
      }
      let piv = a[c][c].clone();
      det *= &piv;
      let pivot_row = a[c].clone();
      for row in a.iter_mut().skip(c + 1) {
        if row[c].is_zero() {
          continue;
        }
        let f = &row[c] / &piv;
        for j in c..n {
          if !pivot_row[j].is_zero() {
            row[j] -= &f * &pivot_row[j];
          }
        }
      }
    }
    Ok(det)
  }

  /// Some exact solution `X` of `self * X = rhs`, or `None` if inconsistent.
  pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
    if rhs.rows != self.rows {
      return Err(LabError::shape("solve", "right-hand side row count"));
    }
    let aug = Matrix::hstack(&[self, rhs])?;
    let ech = aug.rref();
    if ech.pivots.iter().any(|&p| p >= self.cols) {
      return Ok(None);
    }
    let mut x = Matrix::zeros(self.cols, rhs.cols);
    for (i, &p) in ech.pivots.iter().enumerate() {
      for j in 0..rhs.cols {
        x[(p, j)] = ech.reduced[(i, self.cols + j)].clone();
      }
    }
    Ok(Some(x))
  }

  pub fn inverse(&self) -> Option<Matrix> {
    if !self.is_square() {
      return None;
    }
    let n = self.rows;
    let ech = Matrix::hstack(&[self, &Matrix::identity(n)]).ok()?.rref();
    if ech.pivots.len() < n || ech.pivots[n - 1] >= n {
      return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| ech.reduced[(i, n + j)].clone()))
  }
}

/// Reduced echelon basis (as rows) of the span of the given vectors.
pub fn echelon_basis(len: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
  if vectors.is_empty() {
    return Vec::new();
  }
  let m = Matrix::from_rows(vectors.to_vec()).expect("uniform vectors");
  debug_assert_eq!(m.cols(), len);
  m.rref().basis_rows()
}

pub fn span_rank(len: usize, vectors: &[Vec<Scalar>]) -> usize {
  if vectors.is_empty() {
    return 0;
  }
  Matrix::from_columns(len, vectors).rank()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool { v.iter().all(Zero::is_zero) }

impl Index<(usize, usize)> for Matrix {
  type Output = Scalar;

  fn index(&self, (i, j): (usize, usize)) -> &Scalar {
    debug_assert!(i < self.rows && j < self.cols);
    &self.data[i * self.cols + j]
  }
}

impl IndexMut<(usize, usize)> for Matrix {
  fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
    debug_assert!(i < self.rows && j < self.cols);
    &mut self.data[i * self.cols + j]
  }
}

impl Mul for &Matrix {
  type Output = Matrix;

  fn mul(self, rhs: &Matrix) -> Matrix {
    self.checked_mul(rhs).expect("matrix product shapes")
  }
}

impl Add for &Matrix {
  type Output = Matrix;

  fn add(self, rhs: &Matrix) -> Matrix {
    assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shapes");
    Matrix {
      rows: self.rows,
      cols: self.cols,
      data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
    }
  }
}

impl Sub for &Matrix {
  type Output = Matrix;

  fn sub(self, rhs: &Matrix) -> Matrix {
    assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shapes");
    Matrix {
      rows: self.rows,
      cols: self.cols,
      data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
    }
  }
}

impl Neg for &Matrix {
  type Output = Matrix;

  fn neg(self) -> Matrix {
    Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
  }
}

impl fmt::Debug for Matrix {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
    for i in 0..self.rows {
      let row: Vec<String> = self.row(i).iter().map(scalar::format).collect();
      writeln!(f, "  [{}]", row.join(", "))?;
    }
    write!(f, "]")
  }
}

#[derive(Serialize, Deserialize)]
struct MatrixRecord {
  rows:    usize,
  cols:    usize,
  entries: Vec<Vec<String>>,
}

impl Serialize for Matrix {
  fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
    MatrixRecord {
      rows:    self.rows,
      cols:    self.cols,
      entries: self.to_rows().iter().map(|r| r.iter().map(scalar::format).collect()).collect(),
    }
    .serialize(s)
  }
}

impl<'de> Deserialize<'de> for Matrix {
  fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
    let rec = MatrixRecord::deserialize(d)?;
    if rec.entries.len() != rec.rows || rec.entries.iter().any(|r| r.len() != rec.cols) {
      return Err(D::Error::custom("entries do not match declared rows/cols"));
    }
    let rows = rec
      .entries
      .iter()
      .map(|r| r.iter().map(|e| scalar::parse(e)).collect::<Result<Vec<_>>>())
      .collect::<Result<Vec<_>>>()
      .map_err(D::Error::custom)?;
    let mut m = Matrix::from_rows(rows).map_err(D::Error::custom)?;
    // from_rows on an empty entry list loses the declared column count
    m.cols = rec.cols;
    Ok(m)
  }
}

/// Parses either the full `{"rows","cols","entries"}` record or a bare array
/// of rows of rational strings.
pub fn parse_matrix_json(text: &str) -> Result<Matrix> {
  let value: serde_json::Value = serde_json::from_str(text).map_err(|e| LabError::Parse(e.to_string()))?;
  if value.is_object() {
    return serde_json::from_value(value).map_err(|e| LabError::Parse(e.to_string()));
  }
  let rows = value.as_array().ok_or_else(|| LabError::Parse("expected a matrix".into()))?;
  let mut parsed = Vec::with_capacity(rows.len());
  for row in rows {
    let row = row.as_array().ok_or_else(|| LabError::Parse("expected an array of rows".into()))?;
    let mut out = Vec::with_capacity(row.len());
    for e in row {
      let text = match e {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
        other => return Err(LabError::Parse(format!("bad matrix entry {other}"))),
      };
      out.push(scalar::parse(&text)?);
    }
    parsed.push(out);
  }
  Matrix::from_rows(parsed)
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::scalar::{frac, int};

  #[test]
  fn rref_and_nullspace() {
    let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    assert_eq!(m.rank(), 2);
    let ns = m.nullspace();
    assert_eq!(ns.len(), 1);
    assert!(is_zero_vec(&m.mul_vec(&ns[0])));
  }

  #[test]
  fn det_and_inverse() {
    let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
    assert_eq!(m.det().unwrap(), int(1));
    let inv = m.inverse().unwrap();
    assert_eq!(&m * &inv, Matrix::identity(2));
    let s = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
    assert!(s.inverse().is_none());
    assert_eq!(s.det().unwrap(), int(0));
  }

  #[test]
  fn solve_detects_inconsistency() {
    let a = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
    let b = Matrix::from_i64(&[&[1], &[3]]);
    assert!(a.solve(&b).unwrap().is_none());
    let b = Matrix::from_i64(&[&[1], &[2]]);
    let x = a.solve(&b).unwrap().unwrap();
    assert_eq!(&a * &x, b);
  }

  #[test]
  fn json_accepts_both_forms() {
    let m = parse_matrix_json(r#"[["1","0"],["0","-1/2"]]"#).unwrap();
    assert_eq!(m[(1, 1)], frac(-1, 2));
    let text = serde_json::to_string(&m).unwrap();
    assert_eq!(text, r#"{"rows":2,"cols":2,"entries":[["1","0"],["0","-1/2"]]}"#);
    assert_eq!(parse_matrix_json(&text).unwrap(), m);
    assert!(parse_matrix_json(r#"{"rows":2,"cols":1,"entries":[["1"]]}"#).is_err());
  }
}
