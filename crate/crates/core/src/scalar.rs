//! Exact rational scalars.
//!
//! Everything in this crate computes over `Q` with arbitrary-precision
//! numerators and denominators. `BigRational` keeps itself in lowest terms
//! with a positive denominator after every operation, which is the canonical
//! form the JSON surface relies on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::LabError;

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar { BigRational::from_integer(BigInt::from(v)) }

pub fn frac(p: i64, q: i64) -> Scalar { BigRational::new(BigInt::from(p), BigInt::from(q)) }

pub fn zero() -> Scalar { Scalar::zero() }

pub fn one() -> Scalar { Scalar::one() }

/// Parses `"p/q"`, `"p"` or a bare JSON integer into a canonical rational.
pub fn parse(text: &str) -> Result<Scalar, LabError> {
  let t = text.trim();
  let bad = || LabError::Parse(format!("not a rational: {text:?}"));
  match t.split_once('/') {
    Some((p, q)) => {
      let p: BigInt = p.trim().parse().map_err(|_| bad())?;
      let q: BigInt = q.trim().parse().map_err(|_| bad())?;
      if q.is_zero() {
        return Err(LabError::Parse(format!("zero denominator in {text:?}")));
      }
      Ok(BigRational::new(p, q))
    },
    None => {
      let p: BigInt = t.parse().map_err(|_| bad())?;
      Ok(BigRational::from_integer(p))
    },
  }
}

/// Canonical textual form: `"p"` for integers, `"p/q"` otherwise.
pub fn format(v: &Scalar) -> String { v.to_string() }

pub fn to_f64(v: &Scalar) -> f64 {
  use num_traits::ToPrimitive;
  v.to_f64().unwrap_or(f64::NAN)
}

pub fn is_integer(v: &Scalar) -> bool { v.denom().is_one() }

pub fn abs(v: &Scalar) -> Scalar { v.abs() }

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn parse_canonicalizes() {
    assert_eq!(parse("4/6").unwrap(), frac(2, 3));
    assert_eq!(parse("3/-6").unwrap(), frac(-1, 2));
    assert_eq!(format(&parse("-10/5").unwrap()), "-2");
    assert_eq!(format(&frac(6, -4)), "-3/2");
  }

  #[test]
  fn parse_rejects_garbage() {
    assert!(parse("1/0").is_err());
    assert!(parse("x").is_err());
    assert!(parse("").is_err());
  }
}
