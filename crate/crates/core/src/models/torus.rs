use crate::error::{LabError, Result};
use crate::exterior::{self, ExteriorBasis};
use crate::matrix::Matrix;
use crate::models::{ComplexModel, ModelKind};

/// Constant-coefficient forms on the `2n`-torus: `d = 0`, star from
/// `omega_0`, orthonormal monomial basis.
pub fn build_torus_model(n: usize) -> Result<ComplexModel> {
  if n == 0 {
    return Err(LabError::precondition("build_torus_model", "n must be at least 1"));
  }
  let top = 2 * n;
  let ext = ExteriorBasis::new(top);
  let names = exterior::symplectic_names(n);
  let labels: Vec<Vec<String>> =
    (0..=top).map(|k| ext.monomials(k).iter().map(|&m| ext.label(m, &names)).collect()).collect();
  let d = (0..=top).map(|k| Matrix::zeros(ext.dim(k + 1), ext.dim(k))).collect();
  let inner = (0..=top).map(|k| Matrix::identity(ext.dim(k))).collect();
  ComplexModel::from_parts(
    format!("torus(n={n})"),
    n,
    ModelKind::Torus,
    labels,
    d,
    exterior::star_matrices(&ext),
    Some(inner),
    None,
  )
}
