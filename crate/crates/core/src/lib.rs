//! Exact-arithmetic laboratory for invariant 2-forms on `sp(2n, R)` and for
//! the symplectic cohomologies `H_{d+d^Lambda}` and `H_{dd^Lambda}` of finite
//! cochain models.
//!
//! - [`lie`] and [`forms`]: the algebra, its Killing form, and the 2-forms
//!   `omega_A(x, y) = B(A, [x, y])` with their kernels and quotients.
//! - [`models`]: constant-coefficient torus forms, truncated polynomial forms
//!   on `R^2n`, and the invariant Fourier complex of a suspension foliation.
//! - [`cohomology`]: de Rham and symplectic cohomology dimensions, the
//!   reduction constant, and a finite Hodge operator check.

pub mod cohomology;
pub mod error;
pub mod exterior;
pub mod forms;
pub mod lie;
pub mod matrix;
pub mod models;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod suite;

pub use error::{LabError, Result};
pub use matrix::Matrix;
pub use scalar::Scalar;
