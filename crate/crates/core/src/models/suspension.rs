use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{LabError, Result};
use crate::exterior::{self, ExteriorBasis};
use crate::matrix::Matrix;
use crate::models::{ComplexModel, ModelKind};
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trig {
  Const,
  Cos,
  Sin,
}

/// A real Fourier function: the constant, or `sqrt 2 cos(2 pi m.x)` /
/// `sqrt 2 sin(2 pi m.x)` for a mode in the positive half of the box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FourierFn {
  pub mode: (i64, i64),
  pub kind: Trig,
}

impl FourierFn {
  fn label(&self) -> String {
    let (a, b) = self.mode;
    match self.kind {
      Trig::Const => "1".into(),
      Trig::Cos => format!("cos({a},{b})"),
      Trig::Sin => format!("sin({a},{b})"),
    }
  }
}

fn is_positive((a, b): (i64, i64)) -> bool { a > 0 || (a == 0 && b > 0) }

/// Image of a mode under `m -> L^t m` for `L = [[1, 1], [0, 1]]`.
fn shear((a, b): (i64, i64)) -> (i64, i64) { (a, a + b) }

/// Full truncated complex on `T^2` together with the pullback by `L` and the
/// embedding of the invariant subcomplex.
#[derive(Clone, Debug)]
pub struct SuspensionData {
  cutoff:    usize,
  functions: Vec<FourierFn>,
  full_d:    Vec<Matrix>,
  pullback:  Vec<Matrix>,
  /// Functions whose pulled-back mode stays in the box.
  domain:    Vec<bool>,
  /// Functions whose whole `L^t`-orbit stays in the box.
  stable:    Vec<bool>,
  /// Columns span the invariant forms, in full coordinates.
  embedding: Vec<Matrix>,
}

impl SuspensionData {
  pub fn cutoff(&self) -> usize { self.cutoff }

  pub fn functions(&self) -> &[FourierFn] { &self.functions }

  pub fn full_dims(&self) -> Vec<usize> { self.pullback.iter().map(Matrix::rows).collect() }

  pub fn pullback(&self) -> &[Matrix] { &self.pullback }

  pub fn embedding(&self) -> &[Matrix] { &self.embedding }

  pub fn stable_count(&self) -> usize { self.stable.iter().filter(|s| **s).count() }

  fn domain_columns(&self, k: usize) -> Vec<usize> {
    let e = self.pullback[k].cols() / self.functions.len();
    (0..self.pullback[k].cols()).filter(|c| self.domain[c / e]).collect()
  }

  /// `d P = P d` on every column whose pullback stays in the box.
  pub fn pullback_commutes_with_d(&self) -> bool {
    (0..2).all(|k| {
      let dp = &self.full_d[k] * &self.pullback[k];
      let pd = &self.pullback[k + 1] * &self.full_d[k];
      let cols = self.domain_columns(k);
      dp.select_columns(&cols) == pd.select_columns(&cols)
    })
  }

  /// The constant 2-form `dx1 ^ dx2` is fixed by the pullback.
  pub fn omega_invariant(&self) -> bool {
    let omega = self.pullback[2].column(0);
    let mut expected = vec![Scalar::zero(); self.pullback[2].rows()];
    expected[0] = Scalar::one();
    omega == expected
  }
}

/// Invariant Fourier complex of the suspension of `L = [[1, 1], [0, 1]]`
/// truncated at `|m_i| <= cutoff`, in an orthonormal basis.
pub fn build_suspension_model(cutoff: usize) -> Result<ComplexModel> {
  const OP: &str = "build_suspension_model";
  if cutoff == 0 {
    return Err(LabError::precondition(OP, "cutoff must be at least 1"));
  }
  let bound = cutoff as i64;
  let mut functions = vec![FourierFn { mode: (0, 0), kind: Trig::Const }];
  for a in 0..=bound {
    for b in -bound..=bound {
      if is_positive((a, b)) {
        functions.push(FourierFn { mode: (a, b), kind: Trig::Cos });
        functions.push(FourierFn { mode: (a, b), kind: Trig::Sin });
      }
    }
  }
  let position: HashMap<FourierFn, usize> = functions.iter().enumerate().map(|(i, f)| (*f, i)).collect();
  let in_box = |(a, b): (i64, i64)| a.abs() <= bound && b.abs() <= bound;

  let ext = ExteriorBasis::new(2);
  let fcount = functions.len();
  let full_dims: Vec<usize> = (0..=2).map(|k| fcount * ext.dim(k)).collect();
  let at = |k: usize, f: usize, e: usize| f * ext.dim(k) + e;

  // d cos_m = -m_v sin_m dx_v, d sin_m = m_v cos_m dx_v (2 pi absorbed)
  let full_d: Vec<Matrix> = (0..=2)
    .map(|k| {
      let mut m = Matrix::zeros(if k < 2 { full_dims[k + 1] } else { 0 }, full_dims[k]);
      if k == 2 {
        return m;
      }
      for (fi, f) in functions.iter().enumerate() {
        let (partner, factor) = match f.kind {
          Trig::Const => continue,
          Trig::Cos => (Trig::Sin, -1),
          Trig::Sin => (Trig::Cos, 1),
        };
        let target_fn = position[&FourierFn { mode: f.mode, kind: partner }];
        for (ej, &mono) in ext.monomials(k).iter().enumerate() {
          for (v, mv) in [f.mode.0, f.mode.1].into_iter().enumerate() {
            let Some(sign) = exterior::wedge_sign(1 << v, mono) else { continue };
            if mv == 0 {
              continue;
            }
            let row = at(k + 1, target_fn, ext.position(mono | (1 << v)));
            m[(row, at(k, fi, ej))] += scalar::int(sign * factor * mv);
          }
        }
      }
      m
    })
    .collect();

  let ext_star = exterior::star_matrices(&ext);
  let full_star: Vec<Matrix> = (0..=2)
    .map(|k| {
      let s = &ext_star[k];
      let mut m = Matrix::zeros(full_dims[2 - k], full_dims[k]);
      for f in 0..fcount {
        for i in 0..s.rows() {
          for j in 0..s.cols() {
            m[(at(2 - k, f, i), at(k, f, j))] = s[(i, j)].clone();
          }
        }
      }
      m
    })
    .collect();

  // pullback on functions: (target, sign) or None when the image leaves the box
  let fn_image: Vec<Option<(usize, i64)>> = functions
    .iter()
    .map(|f| {
      let image = shear(f.mode);
      if !in_box(image) {
        return None;
      }
      Some(match f.kind {
        Trig::Const => (0, 1),
        kind if is_positive(image) => (position[&FourierFn { mode: image, kind }], 1),
        kind => {
          let flipped = (-image.0, -image.1);
          (position[&FourierFn { mode: flipped, kind }], if kind == Trig::Sin { -1 } else { 1 })
        },
      })
    })
    .collect();
  let domain: Vec<bool> = fn_image.iter().map(Option::is_some).collect();
  let stable: Vec<bool> = functions
    .iter()
    .map(|f| {
      let mut m = f.mode;
      loop {
        m = shear(m);
        if !in_box(m) {
          return false;
        }
        if m == f.mode {
          return true;
        }
      }
    })
    .collect();

  let ext_pullback = exterior::pullback_matrices(&ext, &Matrix::from_i64(&[&[1, 1], &[0, 1]]));
  let pullback: Vec<Matrix> = (0..=2)
    .map(|k| {
      let p = &ext_pullback[k];
      let mut m = Matrix::zeros(full_dims[k], full_dims[k]);
      for (fi, image) in fn_image.iter().enumerate() {
        let Some((target, sign)) = *image else { continue };
        for i in 0..p.rows() {
          for j in 0..p.cols() {
            if !p[(i, j)].is_zero() {
              m[(at(k, target, i), at(k, fi, j))] += &p[(i, j)] * scalar::int(sign);
            }
          }
        }
      }
      m
    })
    .collect();

  let embedding: Vec<Matrix> = (0..=2)
    .map(|k| {
      let cols: Vec<usize> = (0..full_dims[k]).filter(|c| stable[c / ext.dim(k)]).collect();
      let shifted = &pullback[k] - &Matrix::identity(full_dims[k]);
      let kernel = shifted.select_columns(&cols).nullspace();
      let vectors: Vec<Vec<Scalar>> = kernel
        .into_iter()
        .map(|v| {
          let mut full = vec![Scalar::zero(); full_dims[k]];
          for (c, x) in cols.iter().zip(v) {
            full[*c] = x;
          }
          full
        })
        .collect();
      Matrix::from_columns(full_dims[k], &vectors)
    })
    .collect();

  let restrict = |op: &Matrix, source: usize, target: usize| -> Result<Matrix> {
    let image = op * &embedding[source];
    embedding[target]
      .solve(&image)?
      .ok_or_else(|| LabError::precondition(OP, "operator does not preserve the invariant subcomplex"))
  };
  let d = (0..=2)
    .map(|k| if k < 2 { restrict(&full_d[k], k, k + 1) } else { Ok(Matrix::zeros(0, embedding[2].cols())) })
    .collect::<Result<Vec<_>>>()?;
  let star = (0..=2).map(|k| restrict(&full_star[k], k, 2 - k)).collect::<Result<Vec<_>>>()?;
  let inner = embedding.iter().map(|v| &v.transpose() * v).collect();

  let full_labels: Vec<Vec<String>> = (0..=2)
    .map(|k| {
      let mut out = Vec::new();
      for f in &functions {
        for &mono in ext.monomials(k) {
          let names = vec!["x1".to_string(), "x2".to_string()];
          out.push(match (f.kind, mono) {
            (_, 0) => f.label(),
            (Trig::Const, _) => ext.label(mono, &names),
            _ => format!("{} {}", f.label(), ext.label(mono, &names)),
          });
        }
      }
      out
    })
    .collect();
  let labels = (0..=2).map(|k| embedding[k].columns().iter().map(|c| combination_label(c, &full_labels[k])).collect()).collect();

  let data = SuspensionData { cutoff, functions, full_d, pullback, domain, stable, embedding };
  ComplexModel::from_parts(
    format!("suspension(N={cutoff})"),
    1,
    ModelKind::Suspension(Box::new(data)),
    labels,
    d,
    star,
    Some(inner),
    None,
  )
}

fn combination_label(coords: &[Scalar], labels: &[String]) -> String {
  let terms: Vec<String> = coords
    .iter()
    .zip(labels)
    .filter(|(c, _)| !c.is_zero())
    .map(|(c, l)| if c.is_one() { l.clone() } else { format!("({}) {l}", scalar::format(c)) })
    .collect();
  terms.join(" + ")
}
