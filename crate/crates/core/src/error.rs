use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
  #[error("shape mismatch in {op}: {detail}")]
  Shape { op: &'static str, detail: String },

  #[error("elements belong to different algebra contexts")]
  ContextMismatch,

  #[error("precondition failed in {op}: {reason}")]
  Precondition { op: &'static str, reason: String },

  #[error("{op} is not supported here: {reason}")]
  Unsupported { op: &'static str, reason: String },

  #[error("degree {degree} out of range 0..={top}")]
  DegreeOutOfRange { degree: i64, top: usize },

  #[error("parse error: {0}")]
  Parse(String),
}

impl LabError {
  pub fn precondition(op: &'static str, reason: impl Into<String>) -> Self {
    LabError::Precondition { op, reason: reason.into() }
  }

  pub fn shape(op: &'static str, detail: impl Into<String>) -> Self {
    LabError::Shape { op, detail: detail.into() }
  }

  pub fn unsupported(op: &'static str, reason: impl Into<String>) -> Self {
    LabError::Unsupported { op, reason: reason.into() }
  }

  /// Operation name for machine-readable error records.
  pub fn op(&self) -> &'static str {
    match self {
      LabError::Shape { op, .. } | LabError::Precondition { op, .. } | LabError::Unsupported { op, .. } =>
        op,
      LabError::ContextMismatch => "context",
      LabError::DegreeOutOfRange { .. } => "degree",
      LabError::Parse(_) => "parse",
    }
  }
}

pub type Result<T> = std::result::Result<T, LabError>;
