//! Serializable records: canonical rational strings, CSV rows for dimension
//! tables, and seeded per-sample algebra checks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::cohomology::{CohomologyReport, HodgeReport};
use crate::error::Result;
use crate::forms::{self, quotient_form};
use crate::lie::{self, AlgebraContext, SpectralType};
use crate::scalar::{self, Scalar};

pub fn ser_scalar<S: Serializer>(v: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
  s.serialize_str(&scalar::format(v))
}

pub fn ser_opt_scalar<S: Serializer>(v: &Option<Scalar>, s: S) -> std::result::Result<S::Ok, S::Error> {
  match v {
    Some(v) => s.serialize_some(&scalar::format(v)),
    None => s.serialize_none(),
  }
}

pub fn ser_vector_lists<S: Serializer>(v: &[Vec<Vec<Scalar>>], s: S) -> std::result::Result<S::Ok, S::Error> {
  let mut seq = s.serialize_seq(Some(v.len()))?;
  for list in v {
    let strings: Vec<Vec<String>> = list.iter().map(|vec| vec.iter().map(scalar::format).collect()).collect();
    seq.serialize_element(&strings)?;
  }
  seq.end()
}

/// One line of the dimension table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CsvRow {
  pub model:     String,
  pub theory:    String,
  pub degree:    usize,
  pub dimension: usize,
  pub windowed:  bool,
}

/// Rows for each report, followed by `hodge` rows carrying `dim ker D`.
pub fn csv_rows(reports: &[CohomologyReport], hodge: Option<&HodgeReport>) -> Vec<CsvRow> {
  let mut rows: Vec<CsvRow> = reports
    .iter()
    .flat_map(|r| {
      r.dims.iter().enumerate().map(move |(k, &dim)| CsvRow {
        model:     r.model.clone(),
        theory:    r.theory.code().to_string(),
        degree:    k,
        dimension: dim,
        windowed:  r.windowed,
      })
    })
    .collect();
  if let Some(h) = hodge {
    rows.extend(h.degrees.iter().map(|d| CsvRow {
      model:     h.model.clone(),
      theory:    "hodge".into(),
      degree:    d.degree,
      dimension: d.kernel_dim,
      windowed:  false,
    }));
  }
  rows
}

/// Checks run on each sampled regular element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraCheck {
  RankKernel,
  Potential,
  Quotient,
  Spectral,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum SampleRecord {
  RankKernel {
    element:                   Vec<String>,
    regular:                   bool,
    rank:                      usize,
    kernel_dim:                usize,
    kernel_abelian:            bool,
    kernel_equals_centralizer: bool,
  },
  Potential {
    element:   Vec<String>,
    closed:    bool,
    roundtrip: bool,
  },
  Quotient {
    element:       Vec<String>,
    #[serde(serialize_with = "ser_scalar")]
    determinant:   Scalar,
    nondegenerate: bool,
  },
  Spectral {
    element:  Vec<String>,
    spectral: SpectralType,
  },
}

impl SampleRecord {
  /// Whether the sample satisfies the property the check is about.
  pub fn passed(&self, n: usize) -> bool {
    match self {
      SampleRecord::RankKernel { regular, rank, kernel_dim, kernel_abelian, kernel_equals_centralizer, .. } =>
        *regular && *rank == 2 * n * n && *kernel_dim == n && *kernel_abelian && *kernel_equals_centralizer,
      SampleRecord::Potential { closed, roundtrip, .. } => *closed && *roundtrip,
      SampleRecord::Quotient { nondegenerate, .. } => *nondegenerate,
      SampleRecord::Spectral { spectral, .. } => spectral.regular && !spectral.defective,
    }
  }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraBatch {
  pub n:       usize,
  pub seed:    u64,
  pub samples: Vec<SampleRecord>,
  pub passed:  bool,
}

/// Draws `samples` regular elements from a ChaCha stream seeded with `seed`
/// and runs `check` on each.
pub fn algebra_batch(n: usize, check: AlgebraCheck, samples: usize, seed: u64) -> Result<AlgebraBatch> {
  let ctx = AlgebraContext::standard(n)?;
  let mut rng = ChaCha8Rng::seed_from_u64(seed);
  let mut records = Vec::with_capacity(samples);
  for _ in 0..samples {
    let a = lie::random_regular(&ctx, &mut rng);
    let element: Vec<String> = a.coords().iter().map(scalar::format).collect();
    records.push(match check {
      AlgebraCheck::RankKernel => {
        let w = forms::omega_from_element(&a);
        let kernel = forms::form_kernel(&w);
        SampleRecord::RankKernel {
          element,
          regular: lie::is_regular(&a),
          rank: forms::form_rank(&w),
          kernel_dim: kernel.dim(),
          kernel_abelian: lie::is_abelian(&kernel),
          kernel_equals_centralizer: kernel == lie::centralizer(&a),
        }
      },
      AlgebraCheck::Potential => {
        let w = forms::omega_from_element(&a);
        let closed = forms::is_closed_2form(&w);
        let roundtrip = forms::potential_element(&w).is_ok_and(|p| p == a);
        SampleRecord::Potential { element, closed, roundtrip }
      },
      AlgebraCheck::Quotient => {
        let q = quotient_form(&a)?;
        SampleRecord::Quotient { element, nondegenerate: q.is_nondegenerate(), determinant: q.determinant }
      },
      AlgebraCheck::Spectral => SampleRecord::Spectral { element, spectral: lie::spectral_type(&a) },
    });
  }
  let passed = records.iter().all(|r| r.passed(n));
  Ok(AlgebraBatch { n, seed, samples: records, passed })
}
