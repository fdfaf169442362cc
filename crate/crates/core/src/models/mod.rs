//! Finite graded cochain models carrying `d`, the symplectic star and
//! `d^Lambda = (-1)^(k+1) star d star` on `k`-forms.
//!
//! On odd degrees this is `star d star`. The sign on even degrees makes
//! `d^Lambda` anticommute with `d`; the unsigned `star d star` commutes with it.
//!
//! Three builders are provided: constant-coefficient forms on the torus
//! ([`build_torus_model`]), polynomial forms on `R^2n` truncated at a
//! coefficient degree ([`build_polynomial_model`]), and the `L`-invariant
//! Fourier complex of the suspension of `L = [[1, 1], [0, 1]]`
//! ([`build_suspension_model`]).

mod polynomial;
mod suspension;
mod torus;

use num_traits::Zero;
use serde::{Serialize, Serializer};

pub use polynomial::{
  alpha_form, build_polynomial_model, poincare_antiderivative, printed_alpha_form, radial_homotopy, AlphaForm,
  Antiderivative, PolynomialLayout,
};
pub use suspension::{build_suspension_model, FourierFn, SuspensionData, Trig};
pub use torus::build_torus_model;

use crate::error::{LabError, Result};
use crate::matrix::Matrix;
use crate::scalar::{self, Scalar};

/// A family of matrices, one per source degree, mapping degree `k` to
/// degree `sign * k + offset`. Blocks whose target degree falls outside
/// `0..=top` have zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedOperator {
  sign:   i64,
  offset: i64,
  top:    usize,
  blocks: Vec<Matrix>,
}

impl GradedOperator {
  pub fn shift(top: usize, shift: i64, blocks: Vec<Matrix>) -> Self { Self { sign: 1, offset: shift, top, blocks } }

  /// Degree-complementing family `k -> top - k`.
  pub fn reflection(top: usize, blocks: Vec<Matrix>) -> Self { Self { sign: -1, offset: top as i64, top, blocks } }

  /// `Some(s)` when the operator shifts every degree by `s`.
  pub fn degree_shift(&self) -> Option<i64> { (self.sign == 1).then_some(self.offset) }

  pub fn target(&self, k: usize) -> Option<usize> {
    let t = self.sign * k as i64 + self.offset;
    (0..=self.top as i64).contains(&t).then_some(t as usize)
  }

  pub fn block(&self, k: usize) -> &Matrix { &self.blocks[k] }

  pub fn blocks(&self) -> &[Matrix] { &self.blocks }

  /// `self . other`.
  pub fn compose(&self, other: &GradedOperator) -> GradedOperator {
    assert_eq!(self.top, other.top);
    let sign = self.sign * other.sign;
    let offset = self.sign * other.offset + self.offset;
    let blocks = (0..=self.top)
      .map(|k| match other.target(k) {
        Some(t) => &self.blocks[t] * &other.blocks[k],
        None => {
          // the composite is zero; its target may still be in range
          let t = sign * k as i64 + offset;
          let rows = if (0..=self.top as i64).contains(&t) { other.blocks[t as usize].cols() } else { 0 };
          Matrix::zeros(rows, other.blocks[k].cols())
        },
      })
      .collect();
    GradedOperator { sign, offset, top: self.top, blocks }
  }

  /// Negates the blocks leaving the degrees where `negate(k)` holds.
  pub fn negate_where(&self, negate: impl Fn(usize) -> bool) -> GradedOperator {
    let blocks = self.blocks.iter().enumerate().map(|(k, b)| if negate(k) { -b } else { b.clone() }).collect();
    GradedOperator { blocks, ..self.clone() }
  }

  pub fn add(&self, other: &GradedOperator) -> GradedOperator {
    assert_eq!((self.sign, self.offset, self.top), (other.sign, other.offset, other.top));
    let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect();
    GradedOperator { blocks, ..self.clone() }
  }
}

/// Coordinates of a form of a given degree. Degrees outside the model are
/// allowed only as outputs, where the space is zero-dimensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormVector {
  pub degree: i64,
  pub coords: Vec<Scalar>,
}

impl FormVector {
  pub fn new(degree: usize, coords: Vec<Scalar>) -> Self { Self { degree: degree as i64, coords } }

  pub fn zero(model: &ComplexModel, degree: usize) -> Self { Self::new(degree, vec![Scalar::zero(); model.dim(degree)]) }

  pub fn is_zero(&self) -> bool { self.coords.iter().all(Zero::is_zero) }

  pub fn scale(&self, s: &Scalar) -> Self {
    Self { degree: self.degree, coords: self.coords.iter().map(|c| c * s).collect() }
  }

  pub fn add(&self, other: &FormVector) -> Result<FormVector> {
    if self.degree != other.degree || self.coords.len() != other.coords.len() {
      return Err(LabError::shape("form sum", "degrees differ"));
    }
    Ok(Self { degree: self.degree, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
  }

  pub fn sub(&self, other: &FormVector) -> Result<FormVector> { self.add(&other.scale(&-scalar::one())) }

  /// `r` with `self = r * other`, if the two are proportional and `other`
  /// is nonzero.
  pub fn ratio_to(&self, other: &FormVector) -> Option<Scalar> {
    if self.degree != other.degree || other.is_zero() {
      return None;
    }
    let pivot = other.coords.iter().position(|c| !c.is_zero())?;
    let r = &self.coords[pivot] / &other.coords[pivot];
    (*self == other.scale(&r)).then_some(r)
  }
}

impl Serialize for FormVector {
  fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Rec {
      degree: i64,
      coords: Vec<String>,
    }
    Rec { degree: self.degree, coords: self.coords.iter().map(scalar::format).collect() }.serialize(s)
  }
}

#[derive(Clone, Debug)]
pub enum ModelKind {
  Torus,
  Polynomial(PolynomialLayout),
  Suspension(Box<SuspensionData>),
  /// Assembled directly from matrices.
  Custom,
}

#[derive(Clone, Debug)]
pub struct ComplexModel {
  name:     String,
  half:     usize,
  kind:     ModelKind,
  labels:   Vec<Vec<String>>,
  d:        GradedOperator,
  star:     GradedOperator,
  d_lambda: GradedOperator,
  inner:    Option<Vec<Matrix>>,
  window:   Option<Vec<Vec<usize>>>,
}

/// One checked operator identity in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
  pub identity: &'static str,
  pub degree:   usize,
  pub holds:    bool,
}

impl ComplexModel {
  /// Assembles a model from `d` and star blocks and derives
  /// `d^Lambda = (-1)^(k+1) star d star`.
  #[allow(clippy::too_many_arguments)]
  pub fn from_parts(
    name: impl Into<String>,
    half: usize,
    kind: ModelKind,
    labels: Vec<Vec<String>>,
    d_blocks: Vec<Matrix>,
    star_blocks: Vec<Matrix>,
    inner: Option<Vec<Matrix>>,
    window: Option<Vec<Vec<usize>>>,
  ) -> Result<Self> {
    let top = 2 * half;
    if labels.len() != top + 1 || d_blocks.len() != top + 1 || star_blocks.len() != top + 1 {
      return Err(LabError::shape("model", format!("expected {} degrees", top + 1)));
    }
    let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
    let dim_at = |t: i64| if (0..=top as i64).contains(&t) { dims[t as usize] } else { 0 };
    for k in 0..=top {
      let (d, s) = (&d_blocks[k], &star_blocks[k]);
      if d.cols() != dims[k] || d.rows() != dim_at(k as i64 + 1) {
        return Err(LabError::shape("model", format!("d block {k} is {}x{}", d.rows(), d.cols())));
      }
      if s.cols() != dims[k] || s.rows() != dims[top - k] {
        return Err(LabError::shape("model", format!("star block {k} is {}x{}", s.rows(), s.cols())));
      }
      if let Some(g) = &inner {
        if g.len() != top + 1 || g[k].rows() != dims[k] || !g[k].is_symmetric() {
          return Err(LabError::shape("model", format!("inner product block {k}")));
        }
      }
      if let Some(w) = &window {
        if w.len() != top + 1 || w[k].iter().any(|&i| i >= dims[k]) {
          return Err(LabError::shape("model", format!("window for degree {k}")));
        }
      }
    }
    let d = GradedOperator::shift(top, 1, d_blocks);
    let star = GradedOperator::reflection(top, star_blocks);
    let d_lambda = star.compose(&d).compose(&star).negate_where(|k| k % 2 == 0);
    Ok(Self { name: name.into(), half, kind, labels, d, star, d_lambda, inner, window })
  }

  pub fn name(&self) -> &str { &self.name }

  /// `n`, half the top degree.
  pub fn half_dim(&self) -> usize { self.half }

  pub fn top_degree(&self) -> usize { 2 * self.half }

  pub fn kind(&self) -> &ModelKind { &self.kind }

  pub fn dims(&self) -> Vec<usize> { self.labels.iter().map(Vec::len).collect() }

  pub fn dim(&self, k: usize) -> usize { self.labels.get(k).map_or(0, Vec::len) }

  /// Dimension of a possibly out-of-range degree.
  pub fn dim_at(&self, k: i64) -> usize { if k < 0 { 0 } else { self.dim(k as usize) } }

  pub fn labels(&self, k: usize) -> &[String] { &self.labels[k] }

  pub fn d(&self) -> &GradedOperator { &self.d }

  pub fn star(&self) -> &GradedOperator { &self.star }

  pub fn d_lambda(&self) -> &GradedOperator { &self.d_lambda }

  pub fn inner(&self) -> Option<&[Matrix]> { self.inner.as_deref() }

  pub fn window(&self) -> Option<&[Vec<usize>]> { self.window.as_deref() }

  pub fn polynomial_layout(&self) -> Option<&PolynomialLayout> {
    match &self.kind {
      ModelKind::Polynomial(p) => Some(p),
      _ => None,
    }
  }

  pub fn suspension_data(&self) -> Option<&SuspensionData> {
    match &self.kind {
      ModelKind::Suspension(s) => Some(s),
      _ => None,
    }
  }

  fn check_input(&self, v: &FormVector) -> Result<usize> {
    let top = self.top_degree();
    if v.degree < 0 || v.degree as usize > top {
      return Err(LabError::DegreeOutOfRange { degree: v.degree, top });
    }
    let k = v.degree as usize;
    if v.coords.len() != self.dim(k) {
      return Err(LabError::shape("form", format!("degree {k} has dimension {}", self.dim(k))));
    }
    Ok(k)
  }

  pub fn apply(&self, op: &GradedOperator, v: &FormVector) -> Result<FormVector> {
    let k = self.check_input(v)?;
    let degree = op.sign * k as i64 + op.offset;
    Ok(FormVector { degree, coords: op.block(k).mul_vec(&v.coords) })
  }

  pub fn d_apply(&self, v: &FormVector) -> Result<FormVector> { self.apply(&self.d, v) }

  pub fn star_apply(&self, v: &FormVector) -> Result<FormVector> { self.apply(&self.star, v) }

  pub fn d_lambda_apply(&self, v: &FormVector) -> Result<FormVector> { self.apply(&self.d_lambda, v) }

  /// `d . d^Lambda`, degree-preserving.
  pub fn dd_lambda(&self) -> GradedOperator { self.d.compose(&self.d_lambda) }

  /// Checks the five matrix identities in every degree.
  pub fn verify_identities(&self) -> Vec<IdentityCheck> {
    let top = self.top_degree();
    let dd = self.d.compose(&self.d);
    let ll = self.d_lambda.compose(&self.d_lambda);
    let ss = self.star.compose(&self.star);
    let sds = self.star.compose(&self.d).compose(&self.star).negate_where(|k| k % 2 == 0);
    let anti = self.d.compose(&self.d_lambda).add(&self.d_lambda.compose(&self.d));
    let mut out = Vec::new();
    for k in 0..=top {
      out.push(IdentityCheck { identity: "d^2 = 0", degree: k, holds: dd.block(k).is_zero() });
      out.push(IdentityCheck { identity: "(d^L)^2 = 0", degree: k, holds: ll.block(k).is_zero() });
      out.push(IdentityCheck {
        identity: "star^2 = id",
        degree:   k,
        holds:    *ss.block(k) == Matrix::identity(self.dim(k)),
      });
      out.push(IdentityCheck {
        identity: "d^L = (-1)^(k+1) star d star",
        degree:   k,
        holds:    sds.block(k) == self.d_lambda.block(k),
      });
      out.push(IdentityCheck { identity: "d d^L + d^L d = 0", degree: k, holds: anti.block(k).is_zero() });
    }
    out
  }

  pub fn identities_hold(&self) -> bool { self.verify_identities().iter().all(|c| c.holds) }

  /// Serializable summary of the model's matrices.
  pub fn bundle(&self) -> ModelBundle<'_> {
    ModelBundle {
      name:        &self.name,
      dims:        self.dims(),
      d_blocks:    self.d.blocks(),
      star_blocks: self.star.blocks(),
      window:      self.window.as_deref(),
    }
  }
}

#[derive(Serialize)]
pub struct ModelBundle<'a> {
  pub name:        &'a str,
  pub dims:        Vec<usize>,
  pub d_blocks:    &'a [Matrix],
  pub star_blocks: &'a [Matrix],
  pub window:      Option<&'a [Vec<usize>]>,
}

/// `omega_0^k` as a constant-coefficient form in a torus or polynomial model,
/// in the convention `omega_0^k = sum_I omega_I` over `k`-subsets of the
/// symplectic pairs (the wedge power divided by `k!`).
pub fn omega_power_form(model: &ComplexModel, k: usize) -> Result<FormVector> {
  if 2 * k > model.top_degree() {
    return Err(LabError::DegreeOutOfRange { degree: 2 * k as i64, top: model.top_degree() });
  }
  let ext = crate::exterior::ExteriorBasis::new(model.top_degree());
  let ext_coords = crate::exterior::omega_elementary_sum(&ext, k);
  match &model.kind {
    ModelKind::Torus => Ok(FormVector::new(2 * k, ext_coords)),
    ModelKind::Polynomial(layout) => {
      // constant monomial has index 0
      let mut coords = vec![Scalar::zero(); model.dim(2 * k)];
      for (e, c) in ext_coords.into_iter().enumerate() {
        coords[layout.index(2 * k, 0, e)] = c;
      }
      Ok(FormVector::new(2 * k, coords))
    },
    _ => Err(LabError::unsupported("omega_power_form", "only torus and polynomial models")),
  }
}
