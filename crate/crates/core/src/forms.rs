//! Chevalley-Eilenberg 1-, 2- and 3-forms on `sp(2n, R)` with trivial
//! coefficients, and the invariant 2-forms `omega_A(x, y) = B(A, [x, y])`.
//!
//! Sign conventions are taken literally: `omega_A` as above and
//! `d theta(x, y) = -theta([x, y])`. Consequently `d(B(a, .)) = -omega_a`,
//! and the 1-form potential of `omega_a` is `-B(a, .)`; see
//! [`potential_one_form`].

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::lie::{self, AlgebraContext, AlgebraElement, Subspace};
use crate::matrix::Matrix;
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug)]
pub struct AlgebraOneForm {
  ctx:      Arc<AlgebraContext>,
  covector: Vec<Scalar>,
}

impl AlgebraOneForm {
  pub fn new(ctx: &Arc<AlgebraContext>, covector: Vec<Scalar>) -> Result<Self> {
    if covector.len() != ctx.dim() {
      return Err(LabError::shape("one_form", "covector length must equal the algebra dimension"));
    }
    Ok(Self { ctx: Arc::clone(ctx), covector })
  }

  /// `B(a, .)`.
  pub fn killing_dual(a: &AlgebraElement) -> Self {
    let ctx = a.context();
    let covector = ctx.killing_gram().mul_vec(a.coords());
    Self { ctx: Arc::clone(ctx), covector }
  }

  pub fn covector(&self) -> &[Scalar] { &self.covector }

  pub fn eval(&self, x: &AlgebraElement) -> Scalar {
    self.covector.iter().zip(x.coords()).map(|(a, b)| a * b).sum()
  }
}

#[derive(Clone, Debug)]
pub struct AlgebraTwoForm {
  ctx:  Arc<AlgebraContext>,
  gram: Matrix,
}

impl PartialEq for AlgebraTwoForm {
  fn eq(&self, other: &Self) -> bool { Arc::ptr_eq(&self.ctx, &other.ctx) && self.gram == other.gram }
}

impl AlgebraTwoForm {
  pub fn new(ctx: &Arc<AlgebraContext>, gram: Matrix) -> Result<Self> {
    if gram.rows() != ctx.dim() || gram.cols() != ctx.dim() {
      return Err(LabError::shape("two_form", "gram must be dim x dim"));
    }
    if !gram.is_antisymmetric() {
      return Err(LabError::precondition("two_form", "gram is not antisymmetric"));
    }
    Ok(Self { ctx: Arc::clone(ctx), gram })
  }

  pub fn context(&self) -> &Arc<AlgebraContext> { &self.ctx }

  pub fn gram(&self) -> &Matrix { &self.gram }

  pub fn eval(&self, x: &AlgebraElement, y: &AlgebraElement) -> Scalar {
    let gy = self.gram.mul_vec(y.coords());
    x.coords().iter().zip(&gy).map(|(a, b)| a * b).sum()
  }

  fn on_basis(&self, v: &[Scalar], k: usize) -> Scalar {
    // omega(v, e_k)
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(l, c)| c * &self.gram[(l, k)]).sum()
  }
}

/// `omega_A(e_i, e_j) = B(A, [e_i, e_j])`.
pub fn omega_from_element(a: &AlgebraElement) -> AlgebraTwoForm {
  let theta = AlgebraOneForm::killing_dual(a);
  let ctx = a.context();
  let gram = Matrix::from_fn(ctx.dim(), ctx.dim(), |i, j| dot(&theta.covector, ctx.structure_constants(i, j)));
  AlgebraTwoForm { ctx: Arc::clone(ctx), gram }
}

/// `d theta(e_i, e_j) = -theta([e_i, e_j])`.
pub fn ce_d1(theta: &AlgebraOneForm) -> AlgebraTwoForm {
  let ctx = &theta.ctx;
  let gram = Matrix::from_fn(ctx.dim(), ctx.dim(), |i, j| -dot(&theta.covector, ctx.structure_constants(i, j)));
  AlgebraTwoForm { ctx: Arc::clone(ctx), gram }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
  a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// `d omega(e_i, e_j, e_k)` for one triple.
fn d2_on_triple(w: &AlgebraTwoForm, i: usize, j: usize, k: usize) -> Scalar {
  let ctx = &w.ctx;
  -w.on_basis(ctx.structure_constants(i, j), k) + w.on_basis(ctx.structure_constants(i, k), j)
    - w.on_basis(ctx.structure_constants(j, k), i)
}

pub fn is_closed_2form(w: &AlgebraTwoForm) -> bool {
  let dim = w.ctx.dim();
  (0..dim).all(|i| (i + 1..dim).all(|j| (j + 1..dim).all(|k| d2_on_triple(w, i, j, k).is_zero())))
}

/// Index pairs `(i, j)` with `i < j`, the coordinates of a 2-form.
fn pairs(dim: usize) -> Vec<(usize, usize)> { (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect() }

/// Matrix of the differential from 2-forms (coordinates on pairs `i < j`) to
/// 3-forms (coordinates on triples `i < j < k`).
pub fn ce_d2_matrix(ctx: &Arc<AlgebraContext>) -> Matrix {
  let dim = ctx.dim();
  let ps = pairs(dim);
  let triples: Vec<(usize, usize, usize)> =
    (0..dim).flat_map(|i| (i + 1..dim).flat_map(move |j| (j + 1..dim).map(move |k| (i, j, k)))).collect();
  // a unit 2-form on pair p, evaluated through the same formula
  let mut m = Matrix::zeros(triples.len(), ps.len());
  for (col, &(a, b)) in ps.iter().enumerate() {
    let mut g = Matrix::zeros(dim, dim);
    g[(a, b)] = scalar::one();
    g[(b, a)] = -scalar::one();
    let w = AlgebraTwoForm { ctx: Arc::clone(ctx), gram: g };
    for (row, &(i, j, k)) in triples.iter().enumerate() {
      let v = d2_on_triple(&w, i, j, k);
      if !v.is_zero() {
        m[(row, col)] = v;
      }
    }
  }
  m
}

/// Dimension of the space of closed 2-forms.
pub fn closed_two_form_dimension(ctx: &Arc<AlgebraContext>) -> usize {
  let m = ce_d2_matrix(ctx);
  m.cols() - m.rank()
}

/// Linear map `a -> omega_a`, from algebra coordinates to pair coordinates.
fn omega_map(ctx: &Arc<AlgebraContext>) -> Matrix {
  let dim = ctx.dim();
  let ps = pairs(dim);
  let k = ctx.killing_gram();
  Matrix::from_fn(ps.len(), dim, |row, m| {
    let (i, j) = ps[row];
    let c = ctx.structure_constants(i, j);
    (0..dim).filter(|&l| !c[l].is_zero()).map(|l| &c[l] * &k[(l, m)]).sum()
  })
}

/// The unique `a` with `omega_from_element(a) == w`.
pub fn potential_element(w: &AlgebraTwoForm) -> Result<AlgebraElement> {
  if !is_closed_2form(w) {
    return Err(LabError::precondition("potential_element", "2-form is not closed"));
  }
  let ctx = &w.ctx;
  let rhs = Matrix::from_columns(
    pairs(ctx.dim()).len(),
    &[pairs(ctx.dim()).iter().map(|&(i, j)| w.gram[(i, j)].clone()).collect()],
  );
  let sol = omega_map(ctx)
    .solve(&rhs)?
    .ok_or_else(|| LabError::precondition("potential_element", "closed form is not of the form omega_a"))?;
  AlgebraElement::new(ctx, sol.column(0))
}

/// The 1-form `theta` with `ce_d1(theta) == w`, i.e. `-B(a, .)` for the
/// potential element `a`.
pub fn potential_one_form(w: &AlgebraTwoForm) -> Result<AlgebraOneForm> {
  let a = potential_element(w)?;
  let theta = AlgebraOneForm::killing_dual(&a);
  Ok(AlgebraOneForm { ctx: theta.ctx, covector: theta.covector.into_iter().map(|c| -c).collect() })
}

/// `{x : omega(x, .) = 0}`.
pub fn form_kernel(w: &AlgebraTwoForm) -> Subspace { Subspace::span(&w.ctx, &w.gram.nullspace()) }

pub fn form_rank(w: &AlgebraTwoForm) -> usize { w.gram.rank() }

/// `omega_A` restricted to a complement of its kernel.
#[derive(Clone, Debug)]
pub struct QuotientForm {
  pub kernel:       Subspace,
  pub complement:   Vec<AlgebraElement>,
  pub reduced_gram: Matrix,
  pub determinant:  Scalar,
}

impl QuotientForm {
  pub fn is_nondegenerate(&self) -> bool { !self.determinant.is_zero() }
}

/// Restricts `omega_A` to the coordinate complement of the kernel's pivot
/// columns.
pub fn quotient_form(a: &AlgebraElement) -> Result<QuotientForm> {
  if !lie::is_regular(a) {
    return Err(LabError::precondition("quotient_form", "element is not regular"));
  }
  let w = omega_from_element(a);
  let kernel = form_kernel(&w);
  let ctx = a.context();
  let pivots: Vec<usize> = kernel
    .basis()
    .iter()
    .map(|row| row.iter().position(|c| !c.is_zero()).expect("echelon rows are nonzero"))
    .collect();
  let free: Vec<usize> = (0..ctx.dim()).filter(|j| !pivots.contains(j)).collect();
  let complement = free.iter().map(|&j| AlgebraElement::basis_vector(ctx, j)).collect();
  restrict(&w, kernel, complement)
}

/// Same restriction on a caller-chosen complement.
pub fn quotient_form_on(a: &AlgebraElement, complement: Vec<AlgebraElement>) -> Result<QuotientForm> {
  if !lie::is_regular(a) {
    return Err(LabError::precondition("quotient_form", "element is not regular"));
  }
  let w = omega_from_element(a);
  let kernel = form_kernel(&w);
  let all: Vec<Vec<Scalar>> =
    kernel.basis().iter().cloned().chain(complement.iter().map(|e| e.coords().to_vec())).collect();
  if all.len() != a.context().dim() || crate::matrix::span_rank(a.context().dim(), &all) != all.len() {
    return Err(LabError::precondition("quotient_form", "vectors are not a complement of the kernel"));
  }
  restrict(&w, kernel, complement)
}

fn restrict(w: &AlgebraTwoForm, kernel: Subspace, complement: Vec<AlgebraElement>) -> Result<QuotientForm> {
  let cols: Vec<Vec<Scalar>> = complement.iter().map(|e| e.coords().to_vec()).collect();
  let c = Matrix::from_columns(w.ctx.dim(), &cols);
  let reduced_gram = &(&c.transpose() * &w.gram) * &c;
  let determinant = reduced_gram.det()?;
  Ok(QuotientForm { kernel, complement, reduced_gram, determinant })
}

/// JSON summary of a 2-form.
#[derive(Clone, Debug, Serialize)]
pub struct FormReport {
  pub rank:                usize,
  pub kernel_dim:          usize,
  pub kernel_basis:        Vec<Vec<String>>,
  pub closed:              bool,
  pub potential:           Option<Vec<String>>,
  pub potential_roundtrip: bool,
}

pub fn form_report(w: &AlgebraTwoForm) -> FormReport {
  let kernel = form_kernel(w);
  let closed = is_closed_2form(w);
  let potential = if closed { potential_element(w).ok() } else { None };
  let potential_roundtrip = potential.as_ref().is_some_and(|a| omega_from_element(a) == *w);
  FormReport {
    rank: form_rank(w),
    kernel_dim: kernel.dim(),
    kernel_basis: kernel.to_strings(),
    closed,
    potential: potential.map(|a| a.coords().iter().map(scalar::format).collect()),
    potential_roundtrip,
  }
}
