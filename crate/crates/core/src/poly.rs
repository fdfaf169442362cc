//! Univariate polynomials over `Q`: just enough for characteristic
//! polynomials, squarefree tests and Sturm root counting.

use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::scalar::{self, Scalar};

/// Coefficients in ascending order; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Scalar>);

impl Poly {
  pub fn new(mut coeffs: Vec<Scalar>) -> Self {
    while coeffs.last().is_some_and(Zero::is_zero) {
      coeffs.pop();
    }
    Poly(coeffs)
  }

  pub fn zero() -> Self { Poly(Vec::new()) }

  pub fn coeffs(&self) -> &[Scalar] { &self.0 }

  pub fn is_zero(&self) -> bool { self.0.is_empty() }

  /// Degree; the zero polynomial reports `None`.
  pub fn degree(&self) -> Option<usize> { self.0.len().checked_sub(1) }

  pub fn lead(&self) -> Scalar { self.0.last().cloned().unwrap_or_else(Scalar::zero) }

  pub fn eval(&self, x: &Scalar) -> Scalar {
    self.0.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
  }

  pub fn derivative(&self) -> Poly {
    Poly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * scalar::int(i as i64)).collect())
  }

  pub fn monic(&self) -> Poly {
    if self.is_zero() {
      return self.clone();
    }
    let l = self.lead();
    Poly::new(self.0.iter().map(|c| c / &l).collect())
  }

  /// Euclidean division: `(q, r)` with `self = q * other + r`.
  pub fn div_rem(&self, other: &Poly) -> (Poly, Poly) {
    let d = other.degree().expect("division by the zero polynomial");
    let mut r = self.0.clone();
    let mut q = vec![Scalar::zero(); self.0.len().saturating_sub(d)];
    let lead = other.lead();
    while r.len() > d && !r.is_empty() {
      let top = r.len() - 1;
      let c = &r[top] / &lead;
      if !c.is_zero() {
        for (i, oc) in other.0.iter().enumerate() {
          r[top - d + i] -= &c * oc;
        }
        q[top - d] = c;
      }
      r.pop();
      while r.last().is_some_and(Zero::is_zero) {
        r.pop();
      }
    }
    (Poly::new(q), Poly::new(r))
  }

  pub fn gcd(&self, other: &Poly) -> Poly {
    let (mut a, mut b) = (self.clone(), other.clone());
    while !b.is_zero() {
      let (_, r) = a.div_rem(&b);
      a = b;
      b = r;
    }
    a.monic()
  }

  /// True iff the polynomial has no repeated complex root.
  pub fn is_squarefree(&self) -> bool {
    match self.degree() {
      None => false,
      Some(0) => true,
      Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
    }
  }

  pub fn squarefree_part(&self) -> Poly {
    if self.degree().unwrap_or(0) == 0 {
      return self.monic();
    }
    let g = self.gcd(&self.derivative());
    self.div_rem(&g).0.monic()
  }

  /// `q` with `self(x) = q(x^2)`, if `self` is even.
  pub fn even_reduction(&self) -> Option<Poly> {
    if self.0.iter().enumerate().any(|(i, c)| i % 2 == 1 && !c.is_zero()) {
      return None;
    }
    Some(Poly::new(self.0.iter().step_by(2).cloned().collect()))
  }

  /// Multiplicity of 0 as a root, and the cofactor.
  pub fn split_zero_root(&self) -> (usize, Poly) {
    let m = self.0.iter().take_while(|c| c.is_zero()).count();
    (m, Poly::new(self.0[m..].to_vec()))
  }

  /// Number of distinct real roots, counted by a Sturm chain, in
  /// `(0, +inf)` and `(-inf, 0)`. Requires `self(0) != 0`.
  pub fn real_roots_by_sign(&self) -> (usize, usize) {
    assert!(!self.eval(&Scalar::zero()).is_zero(), "zero root must be split off first");
    let p = self.squarefree_part();
    let chain = sturm_chain(&p);
    let at_zero = sign_changes(chain.iter().map(|q| q.eval(&Scalar::zero())));
    let at_pos_inf = sign_changes(chain.iter().map(Poly::lead));
    let at_neg_inf = sign_changes(chain.iter().map(|q| {
      let l = q.lead();
      if q.degree().unwrap_or(0) % 2 == 1 { -l } else { l }
    }));
    (at_zero - at_pos_inf, at_neg_inf - at_zero)
  }
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
  let mut chain = vec![p.clone(), p.derivative()];
  loop {
    let n = chain.len();
    if chain[n - 1].is_zero() {
      chain.pop();
      break;
    }
    let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
    if r.is_zero() {
      break;
    }
    chain.push(Poly::new(r.0.into_iter().map(|c| -c).collect()));
  }
  chain
}

fn sign_changes(values: impl Iterator<Item = Scalar>) -> usize {
  let signs: Vec<bool> = values.filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
  signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `det(tI - M)` by the Faddeev-LeVerrier recursion, exact over `Q`.
pub fn characteristic_polynomial(m: &Matrix) -> Poly {
  assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
  let n = m.rows();
  let mut coeffs = vec![Scalar::zero(); n + 1];
  coeffs[n] = Scalar::one();
  let mut mk = Matrix::zeros(n, n);
  for k in 1..=n {
    let mut next = m * &mk;
    for i in 0..n {
      next[(i, i)] += &coeffs[n - k + 1];
    }
    coeffs[n - k] = -(m * &next).trace() / scalar::int(k as i64);
    mk = next;
  }
  Poly::new(coeffs)
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::scalar::int;

  fn p(c: &[i64]) -> Poly { Poly::new(c.iter().map(|&v| int(v)).collect()) }

  #[test]
  fn charpoly_small() {
    let m = Matrix::from_i64(&[&[0, -1], &[1, 0]]);
    assert_eq!(characteristic_polynomial(&m), p(&[1, 0, 1]));
    let m = Matrix::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
    // (t-2)^2 (t-3) = t^3 - 7t^2 + 16t - 12
    assert_eq!(characteristic_polynomial(&m), p(&[-12, 16, -7, 1]));
  }

  #[test]
  fn squarefree() {
    assert!(p(&[-1, 0, 1]).is_squarefree());
    assert!(!p(&[0, 0, 1]).is_squarefree());
    assert!(!p(&[1, 2, 1]).is_squarefree());
    assert_eq!(p(&[1, 2, 1]).squarefree_part(), p(&[1, 1]));
  }

  #[test]
  fn sturm_counts() {
    // (x-1)(x-4)(x+2)(x^2+1)
    let f = Poly::new(
      [p(&[-1, 1]), p(&[-4, 1]), p(&[2, 1]), p(&[1, 0, 1])]
        .iter()
        .fold(p(&[1]), |acc, q| mul(&acc, q))
        .0,
    );
    assert_eq!(f.real_roots_by_sign(), (2, 1));
  }

  fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Scalar::zero(); a.0.len() + b.0.len() - 1];
    for (i, x) in a.0.iter().enumerate() {
      for (j, y) in b.0.iter().enumerate() {
        out[i + j] += x * y;
      }
    }
    Poly::new(out)
  }
}
