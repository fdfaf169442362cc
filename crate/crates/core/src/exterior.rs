//! Constant-coefficient exterior algebra on `R^2n` with coordinates ordered
//! `x1, y1, x2, y2, ...` and the standard form `omega_0 = sum dx_i ^ dy_i`.
//!
//! Monomials are bitmasks over the `2n` coordinate covectors; within a
//! degree they are listed in lexicographic order of their sorted indices.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::matrix::Matrix;
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug)]
pub struct ExteriorBasis {
  vars:      usize,
  by_degree: Vec<Vec<u32>>,
  position:  HashMap<u32, usize>,
}

impl ExteriorBasis {
  pub fn new(vars: usize) -> Self {
    assert!(vars < 32, "too many coordinates for bitmask monomials");
    let mut by_degree = vec![Vec::new(); vars + 1];
    let mut all: Vec<u32> = (0..(1u32 << vars)).collect();
    all.sort_by_key(|&m| indices(m));
    for m in all {
      by_degree[m.count_ones() as usize].push(m);
    }
    let mut position = HashMap::new();
    for list in &by_degree {
      for (i, &m) in list.iter().enumerate() {
        position.insert(m, i);
      }
    }
    Self { vars, by_degree, position }
  }

  pub fn vars(&self) -> usize { self.vars }

  pub fn dim(&self, degree: usize) -> usize { self.by_degree.get(degree).map_or(0, Vec::len) }

  pub fn monomials(&self, degree: usize) -> &[u32] { &self.by_degree[degree] }

  pub fn position(&self, mono: u32) -> usize { self.position[&mono] }

  pub fn label(&self, mono: u32, names: &[String]) -> String {
    if mono == 0 {
      return "1".into();
    }
    indices(mono).iter().map(|&i| format!("d{}", names[i])).collect::<Vec<_>>().join("^")
  }
}

pub fn indices(mono: u32) -> Vec<usize> { (0..32).filter(|&i| mono & (1 << i) != 0).collect() }

/// Sign of `e_a ^ e_b` relative to the sorted monomial `e_{a|b}`, or `None`
/// when they share a factor.
pub fn wedge_sign(a: u32, b: u32) -> Option<i64> {
  if a & b != 0 {
    return None;
  }
  // count pairs (i in a, j in b) with i > j
  let mut inversions = 0;
  for j in indices(b) {
    inversions += (a >> (j + 1)).count_ones();
  }
  Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Coordinate names `x1, y1, ..., xn, yn`.
pub fn symplectic_names(n: usize) -> Vec<String> {
  (1..=n).flat_map(|i| [format!("x{i}"), format!("y{i}")]).collect()
}

/// Matrix of `omega_0(e_a, e_b)` on the coordinate vectors.
pub fn omega_matrix(n: usize) -> Matrix {
  Matrix::from_fn(2 * n, 2 * n, |a, b| {
    if a % 2 == 0 && b == a + 1 {
      scalar::one()
    } else if b % 2 == 0 && a == b + 1 {
      -scalar::one()
    } else {
      scalar::zero()
    }
  })
}

/// Pairing of 1-forms induced by the inverse of `omega_0`.
pub fn covector_pairing(n: usize) -> Matrix { omega_matrix(n).inverse().expect("omega_0 is nondegenerate") }

/// `omega_0^k` (the honest wedge power) in the degree-`2k` monomial basis.
pub fn omega_power(ext: &ExteriorBasis, k: usize) -> Vec<Scalar> {
  let n = ext.vars() / 2;
  let mut coeffs: HashMap<u32, Scalar> = HashMap::from([(0u32, Scalar::one())]);
  for _ in 0..k {
    let mut next: HashMap<u32, Scalar> = HashMap::new();
    for (mono, c) in &coeffs {
      for i in 0..n {
        let pair = (1u32 << (2 * i)) | (1u32 << (2 * i + 1));
        if let Some(s) = wedge_sign(*mono, pair) {
          *next.entry(mono | pair).or_insert_with(Scalar::zero) += c * scalar::int(s);
        }
      }
    }
    coeffs = next;
  }
  let mut out = vec![Scalar::zero(); ext.dim(2 * k)];
  for (mono, c) in coeffs {
    out[ext.position(mono)] = c;
  }
  out
}

/// `sum_I omega_I` over `k`-subsets of the symplectic pairs, where `omega_I`
/// is the product of `dx_i ^ dy_i` for `i` in `I`; equal to
/// `omega_power(k) / k!`.
pub fn omega_elementary_sum(ext: &ExteriorBasis, k: usize) -> Vec<Scalar> {
  let n = ext.vars() / 2;
  let mut out = vec![Scalar::zero(); ext.dim(2 * k)];
  for subset in (0u32..(1 << n)).filter(|s| s.count_ones() as usize == k) {
    let mono: u32 = (0..n).filter(|i| subset & (1 << i) != 0).map(|i| 0b11 << (2 * i)).sum();
    out[ext.position(mono)] += Scalar::one();
  }
  out
}

/// `G(alpha, beta)` on degree-`k` monomials: the determinant of the pairwise
/// covector pairing.
pub fn form_pairing(ext: &ExteriorBasis, k: usize) -> Matrix {
  let g1 = covector_pairing(ext.vars() / 2);
  let monos = ext.monomials(k);
  Matrix::from_fn(monos.len(), monos.len(), |a, b| {
    let ia = indices(monos[a]);
    let ib = indices(monos[b]);
    g1.submatrix(&ia, &ib).det().expect("square minor")
  })
}

/// The symplectic star, one matrix per degree `k` (mapping degree `k` to
/// `2n - k`), solved from `alpha ^ star(beta) = G(alpha, beta) vol` with
/// `vol = omega_0^n / n!`.
pub fn star_matrices(ext: &ExteriorBasis) -> Vec<Matrix> {
  let top = ext.vars();
  let vol = (1u32 << top) - 1;
  (0..=top)
    .map(|k| {
      let rows = ext.monomials(k);
      let cols = ext.monomials(top - k);
      // wedge[alpha][gamma] = coefficient of vol in alpha ^ gamma
      let wedge = Matrix::from_fn(rows.len(), cols.len(), |a, g| match wedge_sign(rows[a], cols[g]) {
        Some(s) if rows[a] | cols[g] == vol => scalar::int(s),
        _ => Scalar::zero(),
      });
      let pairing = form_pairing(ext, k);
      wedge.solve(&pairing).expect("shapes").expect("wedge pairing is nondegenerate")
    })
    .collect()
}

/// Pullback by a linear map. Row `j` of `images` holds the image of the
/// coordinate covector `e_j` in the `e_i` basis. Returns one matrix per
/// degree.
pub fn pullback_matrices(ext: &ExteriorBasis, images: &Matrix) -> Vec<Matrix> {
  (0..=ext.vars())
    .map(|k| {
      let monos = ext.monomials(k);
      Matrix::from_fn(monos.len(), monos.len(), |i, j| {
        let target = indices(monos[i]);
        let source = indices(monos[j]);
        images.submatrix(&source, &target).det().expect("square minor")
      })
    })
    .collect()
}

/// Interior product with the Euler field applied to a constant monomial:
/// `i_E(e_J) = sum_t (-1)^t x_{j_t} e_{J \ j_t}` (t counted from 0).
pub fn euler_contraction(mono: u32) -> Vec<(usize, u32, i64)> {
  indices(mono)
    .into_iter()
    .enumerate()
    .map(|(t, j)| (j, mono & !(1 << j), if t % 2 == 0 { 1 } else { -1 }))
    .collect()
}

/// True when the matrix is `+-` a signed permutation, a quick shape check
/// for star blocks.
pub fn is_signed_permutation(m: &Matrix) -> bool {
  (0..m.rows()).all(|i| (0..m.cols()).filter(|&j| !m[(i, j)].is_zero()).count() == 1)
    && (0..m.rows()).all(|i| (0..m.cols()).all(|j| m[(i, j)].is_zero() || m[(i, j)].numer().magnitude().is_one()))
}
