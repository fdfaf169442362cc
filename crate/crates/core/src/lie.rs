//! The symplectic Lie algebra `sp(2n, R)` over exact rationals.
//!
//! Elements are stored as coordinate vectors in a fixed basis of the block
//! form `[[A, B], [C, -A^t]]` with `B`, `C` symmetric. Basis order is the
//! `A`-block entries (row-major), then the upper triangle of `B`, then the
//! upper triangle of `C`; for `n = 1` this is `H, E, F`.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::matrix::{self, Matrix};
use crate::poly::{characteristic_polynomial, Poly};
use crate::scalar::{self, Scalar};

/// The standard complex structure `[[0, -I], [I, 0]]`.
pub fn j_matrix(n: usize) -> Matrix {
  Matrix::from_fn(2 * n, 2 * n, |i, j| {
    if i < n && j == i + n {
      -scalar::one()
    } else if i >= n && j + n == i {
      scalar::one()
    } else {
      scalar::zero()
    }
  })
}

fn check_square(op: &'static str, x: &Matrix, n: usize) -> Result<()> {
  if x.rows() != 2 * n || x.cols() != 2 * n {
    return Err(LabError::shape(op, format!("expected {0}x{0}, got {1}x{2}", 2 * n, x.rows(), x.cols())));
  }
  Ok(())
}

/// `JX + X^t J = 0`.
pub fn is_in_algebra(x: &Matrix, n: usize) -> Result<bool> {
  check_square("is_in_algebra", x, n)?;
  let j = j_matrix(n);
  Ok((&(&j * x) + &(&x.transpose() * &j)).is_zero())
}

/// `X^t J X = J`.
pub fn is_in_group(x: &Matrix, n: usize) -> Result<bool> {
  check_square("is_in_group", x, n)?;
  let j = j_matrix(n);
  Ok(&(&x.transpose() * &j) * x == j)
}

#[derive(Debug)]
pub struct AlgebraContext {
  n:         usize,
  basis:     Vec<Matrix>,
  labels:    Vec<String>,
  /// `structure[i * dim + j]` holds the coordinates of `[e_i, e_j]`.
  structure: Vec<Vec<Scalar>>,
  killing:   Matrix,
}

impl AlgebraContext {
  pub fn standard(n: usize) -> Result<Arc<AlgebraContext>> {
    if n == 0 {
      return Err(LabError::precondition("standard_basis", "n must be at least 1"));
    }
    let size = 2 * n;
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
      for j in 0..n {
        let mut m = Matrix::zeros(size, size);
        m[(i, j)] = scalar::one();
        m[(n + j, n + i)] -= scalar::one();
        basis.push(m);
        labels.push(format!("a{}{}", i + 1, j + 1));
      }
    }
    for (block, name) in [(0usize, 'b'), (1, 'c')] {
      for i in 0..n {
        for j in i..n {
          let mut m = Matrix::zeros(size, size);
          let (r0, c0) = if block == 0 { (0, n) } else { (n, 0) };
          m[(r0 + i, c0 + j)] = scalar::one();
          m[(r0 + j, c0 + i)] = scalar::one();
          basis.push(m);
          labels.push(format!("{name}{}{}", i + 1, j + 1));
        }
      }
    }
    if n == 1 {
      labels = vec!["H".into(), "E".into(), "F".into()];
    }
    let mut ctx = AlgebraContext { n, basis, labels, structure: Vec::new(), killing: Matrix::zeros(0, 0) };
    let dim = ctx.dim();
    let mut structure = Vec::with_capacity(dim * dim);
    for i in 0..dim {
      for j in 0..dim {
        let c = &(&ctx.basis[i] * &ctx.basis[j]) - &(&ctx.basis[j] * &ctx.basis[i]);
        structure.push(ctx.coordinates(&c)?);
      }
    }
    ctx.structure = structure;
    let ads: Vec<Matrix> = (0..dim).map(|i| ctx.ad_basis(i)).collect();
    ctx.killing = Matrix::from_fn(dim, dim, |i, j| trace_of_product(&ads[i], &ads[j]));
    Ok(Arc::new(ctx))
  }

  pub fn n(&self) -> usize { self.n }

  pub fn dim(&self) -> usize { 2 * self.n * self.n + self.n }

  pub fn basis(&self) -> &[Matrix] { &self.basis }

  pub fn labels(&self) -> &[String] { &self.labels }

  pub fn killing_gram(&self) -> &Matrix { &self.killing }

  /// Coordinates of `[e_i, e_j]`.
  pub fn structure_constants(&self, i: usize, j: usize) -> &[Scalar] { &self.structure[i * self.dim() + j] }

  /// Coordinates of an algebra matrix in the fixed basis.
  pub fn coordinates(&self, x: &Matrix) -> Result<Vec<Scalar>> {
    let n = self.n;
    if !is_in_algebra(x, n)? {
      return Err(LabError::precondition("coordinates", "matrix is not in sp(2n,R)"));
    }
    let mut coords = Vec::with_capacity(self.dim());
    for i in 0..n {
      for j in 0..n {
        coords.push(x[(i, j)].clone());
      }
    }
    for i in 0..n {
      for j in i..n {
        coords.push(x[(i, n + j)].clone());
      }
    }
    for i in 0..n {
      for j in i..n {
        coords.push(x[(n + i, j)].clone());
      }
    }
    Ok(coords)
  }

  fn ad_basis(&self, i: usize) -> Matrix {
    let dim = self.dim();
    Matrix::from_fn(dim, dim, |k, l| self.structure_constants(i, l)[k].clone())
  }
}

fn trace_of_product(a: &Matrix, b: &Matrix) -> Scalar {
  let mut acc = Scalar::zero();
  for i in 0..a.rows() {
    for k in 0..a.cols() {
      let x = &a[(i, k)];
      let y = &b[(k, i)];
      if !x.is_zero() && !y.is_zero() {
        acc += x * y;
      }
    }
  }
  acc
}

/// An element of a particular algebra context.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
  ctx:    Arc<AlgebraContext>,
  coords: Vec<Scalar>,
}

impl PartialEq for AlgebraElement {
  fn eq(&self, other: &Self) -> bool { Arc::ptr_eq(&self.ctx, &other.ctx) && self.coords == other.coords }
}

impl AlgebraElement {
  pub fn new(ctx: &Arc<AlgebraContext>, coords: Vec<Scalar>) -> Result<Self> {
    if coords.len() != ctx.dim() {
      return Err(LabError::shape("element", format!("expected {} coordinates, got {}", ctx.dim(), coords.len())));
    }
    Ok(Self { ctx: Arc::clone(ctx), coords })
  }

  pub fn from_matrix(ctx: &Arc<AlgebraContext>, x: &Matrix) -> Result<Self> {
    Self::new(ctx, ctx.coordinates(x)?)
  }

  pub fn from_i64(ctx: &Arc<AlgebraContext>, coords: &[i64]) -> Result<Self> {
    Self::new(ctx, coords.iter().map(|&c| scalar::int(c)).collect())
  }

  pub fn basis_vector(ctx: &Arc<AlgebraContext>, i: usize) -> Self {
    let mut coords = vec![Scalar::zero(); ctx.dim()];
    coords[i] = Scalar::one();
    Self { ctx: Arc::clone(ctx), coords }
  }

  pub fn zero(ctx: &Arc<AlgebraContext>) -> Self { Self { ctx: Arc::clone(ctx), coords: vec![Scalar::zero(); ctx.dim()] } }

  /// The complex structure `J` itself, which lies in the algebra.
  pub fn j(ctx: &Arc<AlgebraContext>) -> Self {
    Self::from_matrix(ctx, &j_matrix(ctx.n())).expect("J is in sp(2n)")
  }

  pub fn context(&self) -> &Arc<AlgebraContext> { &self.ctx }

  pub fn coords(&self) -> &[Scalar] { &self.coords }

  pub fn is_zero(&self) -> bool { matrix::is_zero_vec(&self.coords) }

  pub fn matrix(&self) -> Matrix {
    let size = 2 * self.ctx.n;
    let mut m = Matrix::zeros(size, size);
    for (c, b) in self.coords.iter().zip(self.ctx.basis()) {
      if !c.is_zero() {
        m = &m + &b.scale(c);
      }
    }
    m
  }

  pub fn scale(&self, s: &Scalar) -> Self {
    Self { ctx: Arc::clone(&self.ctx), coords: self.coords.iter().map(|c| c * s).collect() }
  }

  pub fn add(&self, other: &Self) -> Result<Self> {
    same_context(self, other)?;
    Ok(Self { ctx: Arc::clone(&self.ctx), coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
  }

  /// Matrix of `ad(self)` acting on coordinate columns.
  pub fn ad_matrix(&self) -> Matrix {
    let dim = self.ctx.dim();
    let mut m = Matrix::zeros(dim, dim);
    for (i, xi) in self.coords.iter().enumerate() {
      if xi.is_zero() {
        continue;
      }
      for l in 0..dim {
        for (k, c) in self.ctx.structure_constants(i, l).iter().enumerate() {
          if !c.is_zero() {
            m[(k, l)] += xi * c;
          }
        }
      }
    }
    m
  }
}

fn same_context(x: &AlgebraElement, y: &AlgebraElement) -> Result<()> {
  if Arc::ptr_eq(&x.ctx, &y.ctx) { Ok(()) } else { Err(LabError::ContextMismatch) }
}

pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
  same_context(x, y)?;
  let ctx = &x.ctx;
  let dim = ctx.dim();
  let mut out = vec![Scalar::zero(); dim];
  for (i, xi) in x.coords.iter().enumerate() {
    if xi.is_zero() {
      continue;
    }
    for (j, yj) in y.coords.iter().enumerate() {
      if yj.is_zero() {
        continue;
      }
      let w = xi * yj;
      for (k, c) in ctx.structure_constants(i, j).iter().enumerate() {
        if !c.is_zero() {
          out[k] += &w * c;
        }
      }
    }
  }
  AlgebraElement::new(ctx, out)
}

/// `trace(ad x . ad y)`.
pub fn killing_form(x: &AlgebraElement, y: &AlgebraElement) -> Result<Scalar> {
  same_context(x, y)?;
  Ok(trace_of_product(&x.ad_matrix(), &y.ad_matrix()))
}

/// The constant `c` with `B(X, Y) = c * trace(XY)` on the basis, if one
/// exists.
pub fn killing_trace_ratio(ctx: &Arc<AlgebraContext>) -> Option<Scalar> {
  let dim = ctx.dim();
  let mut ratio: Option<Scalar> = None;
  for i in 0..dim {
    for j in 0..dim {
      let tr = (&ctx.basis()[i] * &ctx.basis()[j]).trace();
      let b = &ctx.killing_gram()[(i, j)];
      if tr.is_zero() {
        if !b.is_zero() {
          return None;
        }
        continue;
      }
      let r = b / &tr;
      match &ratio {
        Some(prev) if *prev != r => return None,
        Some(_) => {},
        None => ratio = Some(r),
      }
    }
  }
  ratio
}

/// Regular means `2n` distinct complex eigenvalues, i.e. a squarefree
/// characteristic polynomial.
pub fn is_regular(a: &AlgebraElement) -> bool { characteristic_polynomial(&a.matrix()).is_squarefree() }

/// A linear subspace of the algebra, stored as a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
  ctx:   Arc<AlgebraContext>,
  basis: Vec<Vec<Scalar>>,
}

impl PartialEq for Subspace {
  fn eq(&self, other: &Self) -> bool { Arc::ptr_eq(&self.ctx, &other.ctx) && self.basis == other.basis }
}

impl Subspace {
  pub fn span(ctx: &Arc<AlgebraContext>, vectors: &[Vec<Scalar>]) -> Self {
    Self { ctx: Arc::clone(ctx), basis: matrix::echelon_basis(ctx.dim(), vectors) }
  }

  pub fn span_elements(elements: &[AlgebraElement]) -> Result<Self> {
    let first = elements.first().ok_or_else(|| LabError::precondition("span", "no elements"))?;
    for e in elements {
      same_context(first, e)?;
    }
    let vectors: Vec<Vec<Scalar>> = elements.iter().map(|e| e.coords.clone()).collect();
    Ok(Self::span(&first.ctx, &vectors))
  }

  pub fn whole(ctx: &Arc<AlgebraContext>) -> Self {
    let vectors: Vec<Vec<Scalar>> = (0..ctx.dim()).map(|i| AlgebraElement::basis_vector(ctx, i).coords).collect();
    Self::span(ctx, &vectors)
  }

  pub fn context(&self) -> &Arc<AlgebraContext> { &self.ctx }

  pub fn dim(&self) -> usize { self.basis.len() }

  pub fn basis(&self) -> &[Vec<Scalar>] { &self.basis }

  pub fn elements(&self) -> Vec<AlgebraElement> {
    self.basis.iter().map(|v| AlgebraElement { ctx: Arc::clone(&self.ctx), coords: v.clone() }).collect()
  }

  /// Sum of two subspaces.
  pub fn join(&self, other: &Subspace) -> Result<Subspace> {
    if !Arc::ptr_eq(&self.ctx, &other.ctx) {
      return Err(LabError::ContextMismatch);
    }
    let all: Vec<Vec<Scalar>> = self.basis.iter().chain(&other.basis).cloned().collect();
    Ok(Subspace::span(&self.ctx, &all))
  }

  pub fn contains(&self, v: &[Scalar]) -> bool {
    let base = self.basis.len();
    let mut all = self.basis.clone();
    all.push(v.to_vec());
    matrix::span_rank(self.ctx.dim(), &all) == base
  }

  /// Echelon coordinates with entries as canonical strings.
  pub fn to_strings(&self) -> Vec<Vec<String>> {
    self.basis.iter().map(|v| v.iter().map(scalar::format).collect()).collect()
  }
}

/// `{x : [a, x] = 0}` as the exact nullspace of `ad(a)`.
pub fn centralizer(a: &AlgebraElement) -> Subspace { Subspace::span(&a.ctx, &a.ad_matrix().nullspace()) }

pub fn is_abelian(s: &Subspace) -> bool {
  let elems = s.elements();
  elems
    .iter()
    .enumerate()
    .all(|(i, x)| elems[i + 1..].iter().all(|y| bracket(x, y).map(|b| b.is_zero()).unwrap_or(false)))
}

/// Common centralizer of all spanning vectors.
pub fn joint_centralizer(s: &Subspace) -> Subspace {
  let ctx = &s.ctx;
  if s.dim() == 0 {
    return Subspace::whole(ctx);
  }
  let ads: Vec<Matrix> = s.elements().iter().map(AlgebraElement::ad_matrix).collect();
  let refs: Vec<&Matrix> = ads.iter().collect();
  let stacked = Matrix::vstack(&refs).expect("ad matrices share a shape");
  Subspace::span(ctx, &stacked.nullspace())
}

/// An abelian subspace is maximal abelian iff it equals its own centralizer.
pub fn is_maximal_abelian(s: &Subspace) -> Result<bool> {
  if !is_abelian(s) {
    return Err(LabError::precondition("is_maximal_abelian", "subspace is not abelian"));
  }
  Ok(joint_centralizer(s) == *s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralLabel {
  /// Purely imaginary spectrum; generates a compact torus.
  Elliptic,
  /// Real spectrum; a split, non-compact subgroup.
  Hyperbolic,
  /// Diagonalizable, but neither purely elliptic nor purely hyperbolic.
  Mixed,
  /// Not diagonalizable (for `n = 1`, the nilpotent elements).
  ParabolicDefective,
  /// The zero element.
  Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralType {
  pub real_pairs:         usize,
  pub imaginary_pairs:    usize,
  pub complex_quadruples: usize,
  /// Number of distinct eigenvalues equal to zero (0 or 1).
  pub zero_eigenvalue:    usize,
  /// Squarefree characteristic polynomial.
  pub regular:            bool,
  /// Not diagonalizable over the complex numbers.
  pub defective:          bool,
  pub label:              SpectralLabel,
}

/// Classifies the eigenvalue families of `a`.
///
/// The characteristic polynomial of a Hamiltonian matrix is even, `p(t) =
/// q(t^2)`. Positive roots of `q` give real pairs, negative roots imaginary
/// pairs, and non-real roots quadruples; Sturm counting on the squarefree part
/// of `q` settles all three exactly. A matrix is diagonalizable iff the
/// squarefree part of its characteristic polynomial annihilates it.
pub fn spectral_type(a: &AlgebraElement) -> SpectralType {
  let m = a.matrix();
  let p = characteristic_polynomial(&m);
  let regular = p.is_squarefree();
  let defective = !regular && !eval_at_matrix(&p.squarefree_part(), &m).is_zero();
  let q = p.even_reduction().expect("Hamiltonian characteristic polynomials are even");
  let (zero_mult, rest) = q.squarefree_part().split_zero_root();
  let (pos, neg) = if rest.degree().unwrap_or(0) == 0 { (0, 0) } else { rest.real_roots_by_sign() };
  let nonreal = rest.degree().unwrap_or(0) - pos - neg;
  let label = if defective {
    SpectralLabel::ParabolicDefective
  } else if a.is_zero() {
    SpectralLabel::Zero
  } else if neg == 0 && nonreal == 0 {
    SpectralLabel::Hyperbolic
  } else if pos == 0 && nonreal == 0 {
    SpectralLabel::Elliptic
  } else {
    SpectralLabel::Mixed
  };
  SpectralType {
    real_pairs: pos,
    imaginary_pairs: neg,
    complex_quadruples: nonreal / 2,
    zero_eigenvalue: zero_mult.min(1),
    regular,
    defective,
    label,
  }
}

fn eval_at_matrix(p: &Poly, m: &Matrix) -> Matrix {
  let mut acc = Matrix::zeros(m.rows(), m.cols());
  for c in p.coeffs().iter().rev() {
    acc = &(&acc * m) + &Matrix::identity(m.rows()).scale(c);
  }
  acc
}

/// Integer coordinates uniform in `[-9, 9]` in the block parametrization.
pub fn random_element<R: Rng + ?Sized>(ctx: &Arc<AlgebraContext>, rng: &mut R) -> AlgebraElement {
  let coords = (0..ctx.dim()).map(|_| scalar::int(rng.gen_range(-9..=9))).collect();
  AlgebraElement { ctx: Arc::clone(ctx), coords }
}

/// Draws until the element is regular; regularity is Zariski-generic, so
/// this terminates quickly.
pub fn random_regular<R: Rng + ?Sized>(ctx: &Arc<AlgebraContext>, rng: &mut R) -> AlgebraElement {
  loop {
    let a = random_element(ctx, rng);
    if is_regular(&a) {
      return a;
    }
  }
}

/// Characteristic polynomial of the element's matrix.
pub fn charpoly(a: &AlgebraElement) -> Poly { characteristic_polynomial(&a.matrix()) }

#[cfg(test)]
mod tests {
  use super::*;
  use crate::scalar::int;

  fn sl2() -> Arc<AlgebraContext> { AlgebraContext::standard(1).unwrap() }

  #[test]
  fn dims() {
    assert_eq!(sl2().dim(), 3);
    assert_eq!(AlgebraContext::standard(2).unwrap().dim(), 10);
    assert!(AlgebraContext::standard(0).is_err());
  }

  #[test]
  fn membership() {
    assert!(is_in_algebra(&j_matrix(1), 1).unwrap());
    assert!(is_in_algebra(&Matrix::from_i64(&[&[0, 1], &[0, 0]]), 1).unwrap());
    assert!(!is_in_algebra(&Matrix::identity(2), 1).unwrap());
    assert!(is_in_algebra(&Matrix::from_i64(&[&[1, 1], &[0, -1]]), 1).unwrap());
    assert!(is_in_algebra(&Matrix::identity(3), 1).is_err());
  }

  #[test]
  fn group_membership() {
    assert!(is_in_group(&Matrix::identity(2), 1).unwrap());
    assert!(is_in_group(&j_matrix(1), 1).unwrap());
    assert!(!is_in_group(&Matrix::from_i64(&[&[2, 0], &[0, 1]]), 1).unwrap());
    assert!(is_in_group(&j_matrix(2), 2).unwrap());
  }

  #[test]
  fn sl2_brackets() {
    let ctx = sl2();
    let (h, e, f) = (
      AlgebraElement::basis_vector(&ctx, 0),
      AlgebraElement::basis_vector(&ctx, 1),
      AlgebraElement::basis_vector(&ctx, 2),
    );
    assert_eq!(bracket(&h, &e).unwrap(), e.scale(&int(2)));
    assert_eq!(bracket(&e, &f).unwrap(), h);
    assert!(bracket(&f, &f).unwrap().is_zero());
    let other = sl2();
    assert_eq!(bracket(&h, &AlgebraElement::basis_vector(&other, 1)), Err(LabError::ContextMismatch));
  }

  #[test]
  fn sl2_killing() {
    let ctx = sl2();
    let h = AlgebraElement::basis_vector(&ctx, 0);
    let e = AlgebraElement::basis_vector(&ctx, 1);
    assert_eq!(killing_form(&h, &h).unwrap(), int(8));
    assert_eq!(killing_form(&h, &e).unwrap(), int(0));
    assert_eq!(killing_trace_ratio(&ctx), Some(int(4)));
  }

  #[test]
  fn regularity() {
    let ctx = sl2();
    assert!(is_regular(&AlgebraElement::basis_vector(&ctx, 0)));
    assert!(!is_regular(&AlgebraElement::basis_vector(&ctx, 1)));
    assert!(is_regular(&AlgebraElement::j(&ctx)));
    assert!(!is_regular(&AlgebraElement::zero(&ctx)));
  }

  #[test]
  fn centralizers() {
    let ctx = sl2();
    let h = AlgebraElement::basis_vector(&ctx, 0);
    let c = centralizer(&h);
    assert_eq!(c, Subspace::span_elements(&[h]).unwrap());
    let j = AlgebraElement::j(&ctx);
    assert_eq!(centralizer(&j), Subspace::span_elements(&[j]).unwrap());
    assert_eq!(centralizer(&AlgebraElement::zero(&ctx)).dim(), 3);
  }

  #[test]
  fn abelian_predicates() {
    let ctx = sl2();
    let h = AlgebraElement::basis_vector(&ctx, 0);
    let e = AlgebraElement::basis_vector(&ctx, 1);
    let f = AlgebraElement::basis_vector(&ctx, 2);
    let sh = Subspace::span_elements(std::slice::from_ref(&h)).unwrap();
    assert!(is_abelian(&sh));
    assert!(!is_abelian(&Subspace::span_elements(&[h.clone(), e.clone()]).unwrap()));
    let se = Subspace::span_elements(std::slice::from_ref(&e)).unwrap();
    let sf = Subspace::span_elements(&[f]).unwrap();
    assert!(!is_abelian(&se.join(&sf).unwrap()));
    assert!(is_maximal_abelian(&sh).unwrap());
    // ad E has a one-dimensional nullspace, so span{E} is its own centralizer
    assert_eq!(e.ad_matrix().nullspace().len(), 1);
    assert!(is_maximal_abelian(&se).unwrap());
    assert!(is_maximal_abelian(&Subspace::span_elements(&[h, e]).unwrap()).is_err());
  }

  #[test]
  fn diagonal_cartan_sp4_is_maximal() {
    let ctx = AlgebraContext::standard(2).unwrap();
    // a11 and a22 are the diagonal generators
    let s = Subspace::span_elements(&[AlgebraElement::basis_vector(&ctx, 0), AlgebraElement::basis_vector(&ctx, 3)])
      .unwrap();
    assert!(is_abelian(&s));
    assert!(is_maximal_abelian(&s).unwrap());
    // a proper subspace of it is not
    let s1 = Subspace::span_elements(&[AlgebraElement::basis_vector(&ctx, 0)]).unwrap();
    assert!(!is_maximal_abelian(&s1).unwrap());
  }

  #[test]
  fn spectral_sl2() {
    let ctx = sl2();
    assert_eq!(spectral_type(&AlgebraElement::j(&ctx)).label, SpectralLabel::Elliptic);
    assert_eq!(spectral_type(&AlgebraElement::basis_vector(&ctx, 0)).label, SpectralLabel::Hyperbolic);
    let e = spectral_type(&AlgebraElement::basis_vector(&ctx, 1));
    assert_eq!(e.label, SpectralLabel::ParabolicDefective);
    assert!(e.defective);
  }

  #[test]
  fn spectral_sp4_families() {
    let ctx = AlgebraContext::standard(2).unwrap();
    // diag(1, 2, -1, -2): two real pairs
    let d = AlgebraElement::from_i64(&ctx, &[1, 0, 0, 2, 0, 0, 0, 0, 0, 0]).unwrap();
    let t = spectral_type(&d);
    assert_eq!((t.real_pairs, t.imaginary_pairs, t.complex_quadruples), (2, 0, 0));
    // J: eigenvalues +-i twice, not regular but diagonalizable
    let j = spectral_type(&AlgebraElement::j(&ctx));
    assert!(!j.regular && !j.defective);
    assert_eq!(j.label, SpectralLabel::Elliptic);
    // E_11 + E_22 in the B block is a sum of two nilpotent blocks
    let n = AlgebraElement::from_i64(&ctx, &[0, 0, 0, 0, 1, 0, 1, 0, 0, 0]).unwrap();
    let t = spectral_type(&n);
    assert!(t.defective);
    assert_eq!(t.label, SpectralLabel::ParabolicDefective);
    assert_eq!(spectral_type(&AlgebraElement::zero(&ctx)).label, SpectralLabel::Zero);
    // A = [[1, -1], [1, 1]] block: eigenvalues 1 +- i and -1 +- i
    let q = AlgebraElement::from_i64(&ctx, &[1, -1, 1, 1, 0, 0, 0, 0, 0, 0]).unwrap();
    let t = spectral_type(&q);
    assert_eq!((t.real_pairs, t.imaginary_pairs, t.complex_quadruples), (0, 0, 1));
    assert_eq!(t.label, SpectralLabel::Mixed);
  }
}
