use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::exterior::{self, ExteriorBasis};
use crate::matrix::Matrix;
use crate::models::{omega_power_form, ComplexModel, FormVector, ModelKind};
use crate::scalar::{self, Scalar};

/// Index bookkeeping for polynomial-coefficient forms. A basis element of
/// degree `k` is `x^a e_J`, stored at `mono_index(a) * ext.dim(k) + pos(J)`.
#[derive(Clone, Debug)]
pub struct PolynomialLayout {
  n:          usize,
  cutoff:     usize,
  ext:        ExteriorBasis,
  monomials:  Vec<Vec<u32>>,
  mono_index: HashMap<Vec<u32>, usize>,
}

impl PolynomialLayout {
  fn new(n: usize, cutoff: usize) -> Self {
    let vars = 2 * n;
    let mut monomials = Vec::new();
    let mut current = vec![0u32; vars];
    collect_exponents(&mut current, 0, cutoff as u32, &mut monomials);
    // by total degree, then x1 before y1 before x2 ...
    monomials.sort_by(|a, b| total(a).cmp(&total(b)).then_with(|| b.cmp(a)));
    let mono_index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    Self { n, cutoff, ext: ExteriorBasis::new(vars), monomials, mono_index }
  }

  pub fn n(&self) -> usize { self.n }

  pub fn cutoff(&self) -> usize { self.cutoff }

  pub fn exterior(&self) -> &ExteriorBasis { &self.ext }

  pub fn monomial_count(&self) -> usize { self.monomials.len() }

  pub fn monomial(&self, i: usize) -> &[u32] { &self.monomials[i] }

  pub fn monomial_degree(&self, i: usize) -> usize { total(&self.monomials[i]) as usize }

  pub fn monomial_position(&self, exps: &[u32]) -> Option<usize> { self.mono_index.get(exps).copied() }

  pub fn index(&self, k: usize, mono: usize, ext_pos: usize) -> usize { mono * self.ext.dim(k) + ext_pos }

  /// Splits a degree-`k` basis index into monomial and exterior positions.
  pub fn split(&self, k: usize, index: usize) -> (usize, usize) {
    let e = self.ext.dim(k);
    (index / e, index % e)
  }

  /// Coefficient degree of a degree-`k` basis element.
  pub fn coefficient_degree(&self, k: usize, index: usize) -> usize { self.monomial_degree(self.split(k, index).0) }

  fn monomial_label(&self, i: usize, names: &[String]) -> String {
    let parts: Vec<String> = self.monomials[i]
      .iter()
      .zip(names)
      .filter(|(&e, _)| e > 0)
      .map(|(&e, name)| if e == 1 { name.clone() } else { format!("{name}^{e}") })
      .collect();
    if parts.is_empty() {
      "1".into()
    } else {
      parts.join("*")
    }
  }
}

fn total(exps: &[u32]) -> u32 { exps.iter().sum() }

fn collect_exponents(current: &mut Vec<u32>, var: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
  if var == current.len() {
    out.push(current.clone());
    return;
  }
  for e in 0..=budget {
    current[var] = e;
    collect_exponents(current, var + 1, budget - e, out);
  }
  current[var] = 0;
}

/// Polynomial forms on `R^2n` with coefficients of total degree at most
/// `cutoff`. The window keeps coefficient degree at most `cutoff - 2`.
pub fn build_polynomial_model(n: usize, cutoff: usize) -> Result<ComplexModel> {
  if n == 0 {
    return Err(LabError::precondition("build_polynomial_model", "n must be at least 1"));
  }
  if cutoff < 2 {
    return Err(LabError::precondition("build_polynomial_model", "cutoff must be at least 2"));
  }
  let layout = PolynomialLayout::new(n, cutoff);
  let top = 2 * n;
  let ext = &layout.ext;
  let names = exterior::symplectic_names(n);
  let mono_count = layout.monomial_count();
  let dims: Vec<usize> = (0..=top).map(|k| mono_count * ext.dim(k)).collect();

  let labels = (0..=top)
    .map(|k| {
      let mut out = Vec::with_capacity(dims[k]);
      for mi in 0..mono_count {
        let coeff = layout.monomial_label(mi, &names);
        for &mono in ext.monomials(k) {
          out.push(match (coeff.as_str(), mono) {
            (_, 0) => coeff.clone(),
            ("1", _) => ext.label(mono, &names),
            _ => format!("{coeff} {}", ext.label(mono, &names)),
          });
        }
      }
      out
    })
    .collect();

  let d = (0..=top)
    .map(|k| {
      let mut m = Matrix::zeros(if k < top { dims[k + 1] } else { 0 }, dims[k]);
      if k == top {
        return m;
      }
      for mi in 0..mono_count {
        let a = layout.monomial(mi).to_vec();
        for (ej, &mono) in ext.monomials(k).iter().enumerate() {
          for v in 0..top {
            let Some(sign) = exterior::wedge_sign(1 << v, mono) else { continue };
            if a[v] == 0 {
              continue;
            }
            let mut b = a.clone();
            b[v] -= 1;
            let row = layout.index(k + 1, layout.mono_index[&b], ext.position(mono | (1 << v)));
            m[(row, layout.index(k, mi, ej))] += scalar::int(sign * a[v] as i64);
          }
        }
      }
      m
    })
    .collect();

  let ext_star = exterior::star_matrices(ext);
  let star = (0..=top)
    .map(|k| {
      let s = &ext_star[k];
      let mut m = Matrix::zeros(dims[top - k], dims[k]);
      for mi in 0..mono_count {
        for i in 0..s.rows() {
          for j in 0..s.cols() {
            if !s[(i, j)].is_zero() {
              m[(layout.index(top - k, mi, i), layout.index(k, mi, j))] = s[(i, j)].clone();
            }
          }
        }
      }
      m
    })
    .collect();

  let window =
    (0..=top).map(|k| (0..dims[k]).filter(|&i| layout.coefficient_degree(k, i) + 2 <= cutoff).collect()).collect();

  ComplexModel::from_parts(
    format!("polynomial(n={n},D={cutoff})"),
    n,
    ModelKind::Polynomial(layout),
    labels,
    d,
    star,
    None,
    Some(window),
  )
}

fn layout_of<'a>(model: &'a ComplexModel, op: &'static str) -> Result<&'a PolynomialLayout> {
  model.polynomial_layout().ok_or_else(|| LabError::unsupported(op, "requires a polynomial model"))
}

/// Radial homotopy `h` with `d h + h d = id` on forms of positive total
/// degree: `h(x^a e_J) = i_E(x^a e_J) / (|a| + |J|)`.
pub fn radial_homotopy(model: &ComplexModel, v: &FormVector) -> Result<FormVector> {
  const OP: &str = "radial_homotopy";
  let layout = layout_of(model, OP)?;
  if v.degree < 1 || v.degree as usize > model.top_degree() {
    return Err(LabError::DegreeOutOfRange { degree: v.degree, top: model.top_degree() });
  }
  let k = v.degree as usize;
  if v.coords.len() != model.dim(k) {
    return Err(LabError::shape(OP, "coordinate length"));
  }
  let ext = &layout.ext;
  let mut out = vec![Scalar::zero(); model.dim(k - 1)];
  for (idx, c) in v.coords.iter().enumerate() {
    if c.is_zero() {
      continue;
    }
    let (mi, ej) = layout.split(k, idx);
    let a = layout.monomial(mi);
    let weight = scalar::int((total(a) as usize + k) as i64);
    for (j, rest, sign) in exterior::euler_contraction(ext.monomials(k)[ej]) {
      let mut b = a.to_vec();
      b[j] += 1;
      let target = layout
        .monomial_position(&b)
        .ok_or_else(|| LabError::precondition(OP, "antiderivative exceeds the coefficient cutoff"))?;
      out[layout.index(k - 1, target, ext.position(rest))] += c * scalar::int(sign) / &weight;
    }
  }
  Ok(FormVector::new(k - 1, out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Antiderivative {
  D,
  DLambda,
}

/// `w` with `d w = v` (or `d^Lambda w = v`), from the radial homotopy
/// (conjugated by the star for `d^Lambda`).
pub fn poincare_antiderivative(model: &ComplexModel, v: &FormVector, flag: Antiderivative) -> Result<FormVector> {
  const OP: &str = "poincare_antiderivative";
  layout_of(model, OP)?;
  match flag {
    Antiderivative::D => {
      if v.degree < 1 {
        return Err(LabError::precondition(OP, "d-antiderivatives need degree at least 1"));
      }
      if !model.d_apply(v)?.is_zero() {
        return Err(LabError::precondition(OP, "input is not d-closed"));
      }
      let w = radial_homotopy(model, v)?;
      debug_assert_eq!(model.d_apply(&w)?, *v);
      Ok(w)
    },
    Antiderivative::DLambda => {
      if v.degree as usize >= model.top_degree() {
        return Err(LabError::precondition(OP, "d^Lambda-antiderivatives need degree below the top"));
      }
      if !model.d_lambda_apply(v)?.is_zero() {
        return Err(LabError::precondition(OP, "input is not d^Lambda-closed"));
      }
      let u = model.star_apply(v)?;
      let w = model.star_apply(&radial_homotopy(model, &u)?)?;
      debug_assert_eq!(model.d_lambda_apply(&w)?, *v);
      Ok(w)
    },
  }
}

/// `i_E` of the sum of the elementary products `omega_I` over `k`-subsets
/// `I` of the symplectic pairs, with no normalization.
pub fn printed_alpha_form(model: &ComplexModel, k: usize) -> Result<FormVector> {
  const OP: &str = "alpha_form";
  let layout = layout_of(model, OP)?;
  let n = layout.n;
  if k == 0 || k > n {
    return Err(LabError::precondition(OP, format!("k must lie in 1..={n}")));
  }
  let ext = &layout.ext;
  let degree = 2 * k - 1;
  let mut coords = vec![Scalar::zero(); model.dim(degree)];
  for subset in (0u32..(1 << n)).filter(|s| s.count_ones() as usize == k) {
    let mono: u32 = (0..n).filter(|i| subset & (1 << i) != 0).map(|i| 0b11 << (2 * i)).sum();
    for (j, rest, sign) in exterior::euler_contraction(mono) {
      let mut exps = vec![0u32; 2 * n];
      exps[j] = 1;
      let mi = layout.mono_index[&exps];
      coords[layout.index(degree, mi, ext.position(rest))] += scalar::int(sign);
    }
  }
  Ok(FormVector::new(degree, coords))
}

/// The primitive `alpha_{2k-1} = lambda * i_E(...)` rescaled so that
/// `d alpha = omega_0^k`, with the ratios relating it to its partners.
#[derive(Clone, Debug, Serialize)]
pub struct AlphaForm {
  pub k:             usize,
  pub printed:       FormVector,
  #[serde(serialize_with = "crate::report::ser_scalar")]
  pub normalization: Scalar,
  pub form:          FormVector,
  /// `r` with `star(alpha_{2k-1}) = r * alpha_{2n-2k+1}`.
  #[serde(serialize_with = "crate::report::ser_opt_scalar")]
  pub star_ratio:    Option<Scalar>,
  /// `r` with `d^Lambda(alpha_{2k-1}) = r * omega_0^{k-1}`.
  #[serde(serialize_with = "crate::report::ser_opt_scalar")]
  pub dlambda_ratio: Option<Scalar>,
}

fn normalized_alpha(model: &ComplexModel, k: usize) -> Result<(FormVector, Scalar, FormVector)> {
  let printed = printed_alpha_form(model, k)?;
  let target = omega_power_form(model, k)?;
  let lambda = target
    .ratio_to(&model.d_apply(&printed)?)
    .ok_or_else(|| LabError::precondition("alpha_form", "d of the printed primitive is not a multiple of omega_0^k"))?;
  let form = printed.scale(&lambda);
  Ok((printed, lambda, form))
}

pub fn alpha_form(model: &ComplexModel, k: usize) -> Result<AlphaForm> {
  let (printed, normalization, form) = normalized_alpha(model, k)?;
  let n = model.half_dim();
  let (_, _, partner) = normalized_alpha(model, n - k + 1)?;
  let star_ratio = model.star_apply(&form)?.ratio_to(&partner);
  let dlambda_ratio = model.d_lambda_apply(&form)?.ratio_to(&omega_power_form(model, k - 1)?);
  Ok(AlphaForm { k, printed, normalization, form, star_ratio, dlambda_ratio })
}
