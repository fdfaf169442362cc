//! Exact cohomology dimensions of a [`ComplexModel`], the reduction constant
//! of even `(d + d^Lambda)`-cocycles, and the finite Hodge operator check.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::matrix::{self, Matrix};
use crate::models::{poincare_antiderivative, radial_homotopy, Antiderivative, ComplexModel, FormVector};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theory {
  DeRham,
  DPlusDLambda,
  DdLambda,
}

impl Theory {
  pub const ALL: [Theory; 3] = [Theory::DeRham, Theory::DPlusDLambda, Theory::DdLambda];

  /// Short code used on the command line and in CSV output.
  pub fn code(self) -> &'static str {
    match self {
      Theory::DeRham => "dr",
      Theory::DPlusDLambda => "dpl",
      Theory::DdLambda => "ddl",
    }
  }
}

impl fmt::Display for Theory {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { f.write_str(self.code()) }
}

impl FromStr for Theory {
  type Err = LabError;

  fn from_str(s: &str) -> Result<Self> {
    Theory::ALL.into_iter().find(|t| t.code() == s).ok_or_else(|| LabError::Parse(format!("unknown theory {s:?}")))
  }
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
  pub model:           String,
  pub theory:          Theory,
  pub dims:            Vec<usize>,
  /// Per degree, numerator vectors independent modulo the denominator.
  #[serde(serialize_with = "crate::report::ser_vector_lists")]
  pub representatives: Vec<Vec<Vec<Scalar>>>,
  pub windowed:        bool,
}

/// Block of `op` leaving degree `k`, with zero rows when the target is out
/// of range.
fn block(op: &crate::models::GradedOperator, k: usize) -> &Matrix { op.block(k) }

/// Kernel of `m` restricted to the coordinates in `support`, embedded back.
fn kernel_on(m: &Matrix, support: Option<&[usize]>) -> Vec<Vec<Scalar>> {
  match support {
    None => m.nullspace(),
    Some(cols) => m
      .select_columns(cols)
      .nullspace()
      .into_iter()
      .map(|v| {
        let mut full = vec![Scalar::zero(); m.cols()];
        for (c, x) in cols.iter().zip(v) {
          full[*c] = x;
        }
        full
      })
      .collect(),
  }
}

/// Dimension of `span(numerator) / (span(numerator) ∩ span(denominator))`,
/// with representatives picked greedily from the numerator.
fn quotient(len: usize, numerator: &[Vec<Scalar>], denominator: &[Vec<Scalar>]) -> (usize, Vec<Vec<Scalar>>) {
  let mut spanning = matrix::echelon_basis(len, denominator);
  let base = spanning.len();
  let mut reps = Vec::new();
  for v in numerator {
    let mut trial = spanning.clone();
    trial.push(v.clone());
    let basis = matrix::echelon_basis(len, &trial);
    if basis.len() > spanning.len() {
      spanning = basis;
      reps.push(v.clone());
    }
  }
  (spanning.len() - base, reps)
}

type Spaces = (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>);

/// Numerator and denominator spaces of `theory` in degree `k`.
fn pieces(model: &ComplexModel, theory: Theory, k: usize, support: Option<&[usize]>) -> Result<Spaces> {
  let top = model.top_degree();
  let d = model.d();
  let dl = model.d_lambda();
  Ok(match theory {
    Theory::DeRham => {
      let num = kernel_on(block(d, k), support);
      let den = if k > 0 { block(d, k - 1).columns() } else { Vec::new() };
      (num, den)
    },
    Theory::DPlusDLambda => {
      let stacked = Matrix::vstack(&[block(d, k), block(dl, k)])?;
      let num = kernel_on(&stacked, support);
      let den = model.dd_lambda().block(k).columns();
      (num, den)
    },
    Theory::DdLambda => {
      let num = kernel_on(model.dd_lambda().block(k), support);
      let mut den = if k > 0 { block(d, k - 1).columns() } else { Vec::new() };
      if k < top {
        den.extend(block(dl, k + 1).columns());
      }
      (num, den)
    },
  })
}

/// Cohomology of one theory. With `windowed`, numerators are restricted to
/// the model's window while denominators use the full space.
pub fn cohomology(model: &ComplexModel, theory: Theory, windowed: bool) -> Result<CohomologyReport> {
  let window = match (windowed, model.window()) {
    (false, _) => None,
    (true, Some(w)) => Some(w),
    (true, None) => return Err(LabError::precondition("cohomology", "model has no window")),
  };
  let mut dims = Vec::new();
  let mut representatives = Vec::new();
  for k in 0..=model.top_degree() {
    let (num, den) = pieces(model, theory, k, window.map(|w| w[k].as_slice()))?;
    let (dim, reps) = quotient(model.dim(k), &num, &den);
    dims.push(dim);
    representatives.push(reps);
  }
  Ok(CohomologyReport { model: model.name().to_string(), theory, dims, representatives, windowed })
}

/// The model's default reports use the window whenever the model has one.
pub fn de_rham(model: &ComplexModel) -> Result<CohomologyReport> {
  cohomology(model, Theory::DeRham, model.window().is_some())
}

pub fn d_plus_dlambda_cohomology(model: &ComplexModel) -> Result<CohomologyReport> {
  cohomology(model, Theory::DPlusDLambda, model.window().is_some())
}

pub fn dd_lambda_cohomology(model: &ComplexModel) -> Result<CohomologyReport> {
  cohomology(model, Theory::DdLambda, model.window().is_some())
}

/// `dim H_dR <= dim H_{d+d^L} + dim H_{dd^L}` per degree.
pub fn inequality_check(dr: &CohomologyReport, dpl: &CohomologyReport, ddl: &CohomologyReport) -> Result<Vec<bool>> {
  let same = dr.model == dpl.model && dr.model == ddl.model && dr.windowed == dpl.windowed && dr.windowed == ddl.windowed;
  if !same || dr.theory != Theory::DeRham || dpl.theory != Theory::DPlusDLambda || ddl.theory != Theory::DdLambda {
    return Err(LabError::precondition("inequality_check", "reports must cover the three theories of one model"));
  }
  Ok(dr.dims.iter().zip(&dpl.dims).zip(&ddl.dims).map(|((a, b), c)| *a <= b + c).collect())
}

/// Per degree: `im dd^L ⊆ ker d ∩ ker d^L` and `im d + im d^L ⊆ ker dd^L`.
pub fn subspace_sanity(model: &ComplexModel) -> Vec<(bool, bool)> {
  let top = model.top_degree();
  let p = model.dd_lambda();
  (0..=top)
    .map(|k| {
      let first = (model.d().block(k) * p.block(k)).is_zero() && (model.d_lambda().block(k) * p.block(k)).is_zero();
      let from_below = k == 0 || (p.block(k) * model.d().block(k - 1)).is_zero();
      let from_above = k == top || (p.block(k) * model.d_lambda().block(k + 1)).is_zero();
      (first, from_below && from_above)
    })
    .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct HodgeDegree {
  pub degree:         usize,
  pub total:          usize,
  pub kernel_dim:     usize,
  pub cohomology_dim: usize,
  /// Rank of `im dd^L`.
  pub exact_rank:     usize,
  /// Rank of `im d* + im (d^L)*`.
  pub coexact_rank:   usize,
  /// Rank of the three summands stacked together.
  pub stacked_rank:   usize,
  pub matches:        bool,
  pub exhaustive:     bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HodgeReport {
  pub model:   String,
  pub degrees: Vec<HodgeDegree>,
}

impl HodgeReport {
  pub fn all_hold(&self) -> bool { self.degrees.iter().all(|d| d.matches && d.exhaustive) }

  pub fn kernel_dims(&self) -> Vec<usize> { self.degrees.iter().map(|d| d.kernel_dim).collect() }
}

/// Adjoint of `a: V_s -> V_t` with respect to the Gram matrices.
fn adjoint(a: &Matrix, gram_source: &Matrix, gram_target: &Matrix) -> Matrix {
  if a.rows() == 0 || a.cols() == 0 {
    return Matrix::zeros(a.cols(), a.rows());
  }
  let inv = gram_source.inverse().expect("inner product is nondegenerate");
  &(&inv * &a.transpose()) * gram_target
}

/// Builds `D = (dd^L)(dd^L)* + (dd^L)*(dd^L) + d* d^L d^L* d + d^L* d d* d^L
/// + d* d + d^L* d^L` per degree and compares its kernel with
/// `H_{d+d^L}`, together with the rank accounting of
/// `ker D ⊕ im dd^L ⊕ (im d* + im d^L*)`.
pub fn hodge_check(model: &ComplexModel) -> Result<HodgeReport> {
  let grams = model.inner().ok_or_else(|| LabError::unsupported("hodge_check", "model has no inner product"))?;
  let top = model.top_degree();
  let d = model.d();
  let dl = model.d_lambda();
  let p = model.dd_lambda();
  let h = cohomology(model, Theory::DPlusDLambda, false)?;
  let empty = Matrix::zeros(0, 0);
  let gram = |k: i64| if (0..=top as i64).contains(&k) { &grams[k as usize] } else { &empty };

  let mut degrees = Vec::new();
  for k in 0..=top {
    let ki = k as i64;
    let n = model.dim(k);
    let pk = p.block(k);
    let pk_star = adjoint(pk, gram(ki), gram(ki));
    let dk = d.block(k);
    let dk_star = adjoint(dk, gram(ki), gram(ki + 1));
    let lk = dl.block(k);
    let lk_star = adjoint(lk, gram(ki), gram(ki - 1));

    let mut op = &(pk * &pk_star) + &(&pk_star * pk);
    op = &op + &(&dk_star * dk);
    op = &op + &(&lk_star * lk);
    if k + 2 <= top {
      let l2 = dl.block(k + 2);
      let l2_star = adjoint(l2, gram(ki + 2), gram(ki + 1));
      op = &op + &(&(&(&dk_star * l2) * &l2_star) * dk);
    }
    if k >= 2 {
      let d2 = d.block(k - 2);
      let d2_star = adjoint(d2, gram(ki - 2), gram(ki - 1));
      op = &op + &(&(&(&lk_star * d2) * &d2_star) * lk);
    }

    let kernel = op.nullspace();
    let coexact = Matrix::hstack(&[&dk_star, &lk_star])?;
    let kernel_m = Matrix::from_columns(n, &kernel);
    let stacked = Matrix::hstack(&[&kernel_m, pk, &coexact])?;
    let exact_rank = pk.rank();
    let coexact_rank = coexact.rank();
    let stacked_rank = stacked.rank();
    degrees.push(HodgeDegree {
      degree: k,
      total: n,
      kernel_dim: kernel.len(),
      cohomology_dim: h.dims[k],
      exact_rank,
      coexact_rank,
      stacked_rank,
      matches: kernel.len() == h.dims[k],
      exhaustive: kernel.len() + exact_rank + coexact_rank == n && stacked_rank == n,
    });
  }
  Ok(HodgeReport { model: model.name().to_string(), degrees })
}

/// Steps of the reduction of an even `(d + d^L)`-cocycle to a constant.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionTrace {
  /// Antiderivatives `y_{2j-1}, ..., y_1`, top first.
  pub antiderivatives: Vec<FormVector>,
  #[serde(serialize_with = "crate::report::ser_scalar")]
  pub constant:        Scalar,
  /// `z` with `x = d d^L z`, present when the constant vanishes.
  pub witness:         Option<FormVector>,
}

/// Reduces `x` by alternating radial antiderivatives and `d^L` until a
/// degree-1 form `y` is reached, and returns the constant `d^L y`.
/// `perturbation`, if given, is a form `w` of degree `deg x - 2` whose
/// differential is added to the first antiderivative.
pub fn reduction_trace(model: &ComplexModel, x: &FormVector, perturbation: Option<&FormVector>) -> Result<ReductionTrace> {
  const OP: &str = "reduction_constant";
  let layout = model
    .polynomial_layout()
    .ok_or_else(|| LabError::unsupported(OP, "requires a polynomial model"))?;
  if x.degree < 0 || x.degree as usize > model.top_degree() {
    return Err(LabError::DegreeOutOfRange { degree: x.degree, top: model.top_degree() });
  }
  if x.degree % 2 != 0 {
    return Err(LabError::precondition(OP, "input must have even degree"));
  }
  if !model.d_apply(x)?.is_zero() || !model.d_lambda_apply(x)?.is_zero() {
    return Err(LabError::precondition(OP, "input is not a (d + d^Lambda)-cocycle"));
  }
  if x.degree == 0 {
    // a closed 0-form is a constant, stored on the constant monomial
    let constant = x.coords[layout.index(0, 0, 0)].clone();
    let witness = constant.is_zero().then(|| x.clone());
    return Ok(ReductionTrace { antiderivatives: Vec::new(), constant, witness });
  }

  let mut antiderivatives = Vec::new();
  let mut current = x.clone();
  loop {
    let mut y = radial_homotopy(model, &current)?;
    if antiderivatives.is_empty() {
      if let Some(w) = perturbation {
        if w.degree != x.degree - 2 {
          return Err(LabError::precondition(OP, "perturbation must have degree deg x - 2"));
        }
        y = y.add(&model.d_apply(w)?)?;
      }
    }
    let next = model.d_lambda_apply(&y)?;
    antiderivatives.push(y);
    if next.degree == 0 {
      if !model.d_apply(&next)?.is_zero() {
        return Err(LabError::precondition(OP, "reduction did not end in a constant"));
      }
      let constant = next.coords[layout.index(0, 0, 0)].clone();
      let witness = if constant.is_zero() { Some(exactness_witness(model, &antiderivatives)?) } else { None };
      return Ok(ReductionTrace { antiderivatives, constant, witness });
    }
    current = next;
  }
}

/// Walks back up the chain: with `d d^L z = d^L y` known one level down,
/// `y + d z` is `d^L`-closed, and its `d^L`-antiderivative is the next `z`.
fn exactness_witness(model: &ComplexModel, antiderivatives: &[FormVector]) -> Result<FormVector> {
  let mut z: Option<FormVector> = None;
  for y in antiderivatives.iter().rev() {
    let corrected = match &z {
      Some(z) => y.add(&model.d_apply(z)?)?,
      None => y.clone(),
    };
    z = Some(poincare_antiderivative(model, &corrected, Antiderivative::DLambda)?);
  }
  Ok(z.expect("at least one antiderivative"))
}

pub fn reduction_constant(model: &ComplexModel, x: &FormVector) -> Result<Scalar> {
  reduction_trace(model, x, None).map(|t| t.constant)
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::models::{build_polynomial_model, build_suspension_model, build_torus_model, omega_power_form};
  use crate::scalar::int;

  #[test]
  fn torus_theories_agree() {
    let m = build_torus_model(1).unwrap();
    for t in Theory::ALL {
      assert_eq!(cohomology(&m, t, false).unwrap().dims, vec![1, 2, 1]);
    }
    assert!(cohomology(&m, Theory::DeRham, true).is_err());
  }

  #[test]
  fn suspension_n2() {
    let m = build_suspension_model(2).unwrap();
    let dr = de_rham(&m).unwrap();
    let dpl = d_plus_dlambda_cohomology(&m).unwrap();
    let ddl = dd_lambda_cohomology(&m).unwrap();
    assert_eq!(dr.dims, vec![1, 1, 5]);
    assert_eq!(dpl.dims, vec![1, 5, 1]);
    assert_eq!(ddl.dims, vec![5, 1, 5]);
    assert_eq!(inequality_check(&dr, &dpl, &ddl).unwrap(), vec![true; 3]);
    assert!(inequality_check(&dpl, &dr, &ddl).is_err());
    let hodge = hodge_check(&m).unwrap();
    assert_eq!(hodge.kernel_dims(), vec![1, 5, 1]);
    assert!(hodge.all_hold());
  }

  #[test]
  fn polynomial_windowed() {
    let m = build_polynomial_model(1, 4).unwrap();
    assert_eq!(d_plus_dlambda_cohomology(&m).unwrap().dims, vec![1, 0, 1]);
    assert_eq!(dd_lambda_cohomology(&m).unwrap().dims, vec![0, 1, 0]);
    assert!(subspace_sanity(&m).iter().all(|(a, b)| *a && *b));
    assert!(hodge_check(&m).is_err());
  }

  #[test]
  fn reduction_of_omega() {
    let m = build_polynomial_model(1, 4).unwrap();
    let omega = omega_power_form(&m, 1).unwrap();
    assert_eq!(reduction_constant(&m, &omega).unwrap(), int(-1));
    let one = omega_power_form(&m, 0).unwrap();
    assert_eq!(reduction_constant(&m, &one).unwrap(), int(1));
    let dx = FormVector::new(1, m.d().block(0).column(1));
    assert!(reduction_constant(&m, &dx).is_err());
  }
}
