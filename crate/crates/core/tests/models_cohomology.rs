use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symplab_core::cohomology::{self, Theory};
use symplab_core::matrix::Matrix;
use symplab_core::models::{
  alpha_form, build_polynomial_model, build_suspension_model, build_torus_model, omega_power_form, ComplexModel,
  FormVector, ModelKind,
};
use symplab_core::scalar::{self, frac, int, Scalar};
use symplab_core::LabError;

fn dims(model: &ComplexModel, theory: Theory) -> Vec<usize> { cohomology::cohomology(model, theory, false).unwrap().dims }

fn windowed(model: &ComplexModel, theory: Theory) -> Vec<usize> {
  cohomology::cohomology(model, theory, true).unwrap().dims
}

fn binomial(n: usize, k: usize) -> i64 { (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1)) }

#[test]
fn torus_reports() {
  let m = build_torus_model(1).unwrap();
  for t in Theory::ALL {
    assert_eq!(dims(&m, t), [1, 2, 1]);
  }
  let m = build_torus_model(2).unwrap();
  for t in Theory::ALL {
    assert_eq!(dims(&m, t), [1, 4, 6, 4, 1]);
  }
}

#[test]
fn suspension_dims_scale_with_cutoff() {
  for n in 1..=8 {
    let m = build_suspension_model(n).unwrap();
    let w = 2 * n + 1;
    assert_eq!(m.dims(), [w, w, w], "N={n}");
    assert_eq!(dims(&m, Theory::DeRham), [1, 1, w], "N={n}");
    assert_eq!(dims(&m, Theory::DPlusDLambda), [1, w, 1], "N={n}");
    assert_eq!(dims(&m, Theory::DdLambda), [w, 1, w], "N={n}");
  }
}

#[test]
fn suspension_model_is_invariant_subcomplex() {
  for n in [1, 3] {
    let m = build_suspension_model(n).unwrap();
    let data = m.suspension_data().unwrap();
    assert!(data.pullback_commutes_with_d());
    assert!(data.omega_invariant());
    assert!(m.identities_hold());
  }
}

#[test]
fn polynomial_windowed_reports_are_stable() {
  let expected = [(Theory::DeRham, [1, 0, 0]), (Theory::DPlusDLambda, [1, 0, 1]), (Theory::DdLambda, [0, 1, 0])];
  for d in [4, 6, 8] {
    let m = build_polynomial_model(1, d).unwrap();
    for (t, want) in expected {
      assert_eq!(windowed(&m, t), want, "D={d} {t:?}");
    }
  }
}

#[test]
fn windowed_report_needs_a_window() {
  let m = build_torus_model(1).unwrap();
  assert!(matches!(cohomology::cohomology(&m, Theory::DeRham, true), Err(LabError::Precondition { .. })));
}

#[test]
fn representatives_are_independent_modulo_denominator() {
  let m = build_suspension_model(2).unwrap();
  let r = cohomology::cohomology(&m, Theory::DPlusDLambda, false).unwrap();
  for (k, reps) in r.representatives.iter().enumerate() {
    assert_eq!(reps.len(), r.dims[k]);
    for v in reps {
      let x = FormVector::new(k, v.clone());
      assert!(m.d_apply(&x).unwrap().is_zero() && m.d_lambda_apply(&x).unwrap().is_zero());
    }
  }
}

/// Columns spanning the windowed even cocycles of degree `k`.
fn windowed_cocycles(m: &ComplexModel, k: usize) -> Vec<FormVector> {
  let cols = &m.window().unwrap()[k];
  let stacked = Matrix::vstack(&[m.d().block(k), m.d_lambda().block(k)]).unwrap().select_columns(cols);
  stacked
    .nullspace()
    .into_iter()
    .map(|v| {
      let mut x = FormVector::zero(m, k);
      for (c, value) in cols.iter().zip(v) {
        x.coords[*c] = value;
      }
      x
    })
    .collect()
}

fn in_image(op: &Matrix, v: &[Scalar]) -> bool {
  let rhs = Matrix::from_columns(v.len(), &[v.to_vec()]);
  op.solve(&rhs).unwrap().is_some()
}

#[test]
fn reduction_constant_detects_exactness() {
  let m = build_polynomial_model(1, 6).unwrap();
  let p = m.dd_lambda();
  for k in [0, 2] {
    let basis = windowed_cocycles(&m, k);
    assert!(!basis.is_empty());
    let mut exact = 0;
    for x in &basis {
      let c = cohomology::reduction_constant(&m, x).unwrap();
      let is_exact = in_image(p.block(k), &x.coords);
      assert_eq!(c == scalar::zero(), is_exact, "degree {k}");
      exact += usize::from(is_exact);
    }
    // degree 0 holds the constants and degree 2 only omega
    assert_eq!((basis.len(), exact), (1, 0), "degree {k}");
  }
}

#[test]
fn reduction_of_constants_and_omega() {
  let m = build_polynomial_model(1, 4).unwrap();
  assert_eq!(cohomology::reduction_constant(&m, &omega_power_form(&m, 0).unwrap()).unwrap(), int(1));
  assert_eq!(cohomology::reduction_constant(&m, &omega_power_form(&m, 1).unwrap()).unwrap(), int(-1));
  let odd = FormVector::zero(&m, 1);
  assert!(matches!(cohomology::reduction_constant(&m, &odd), Err(LabError::Precondition { .. })));
  let mut not_closed = FormVector::zero(&m, 2);
  let idx = m.labels(2).iter().position(|l| l.starts_with("x1 ")).unwrap();
  not_closed.coords[idx] = int(1);
  assert!(matches!(cohomology::reduction_constant(&m, &not_closed), Err(LabError::Precondition { .. })));
}

#[test]
fn omega_power_constants() {
  // c(omega^k) = (-1)^k C(n, k)
  for n in 1..=3 {
    let m = build_polynomial_model(n, 2).unwrap();
    for k in 1..=n {
      let c = cohomology::reduction_constant(&m, &omega_power_form(&m, k).unwrap()).unwrap();
      let sign = if k % 2 == 0 { 1 } else { -1 };
      assert_eq!(c, int(sign * binomial(n, k)), "n={n} k={k}");
    }
  }
}

#[test]
fn alpha_normalizations_and_ratios() {
  for n in 1..=3 {
    let m = build_polynomial_model(n, 2).unwrap();
    for k in 1..=n {
      let a = alpha_form(&m, k).unwrap();
      assert_eq!(a.normalization, frac(1, 2 * k as i64), "n={n} k={k}");
      let ratio = frac(-((n - k + 1) as i64), k as i64);
      assert_eq!(a.star_ratio, Some(ratio.clone()), "n={n} k={k}");
      assert_eq!(a.dlambda_ratio, Some(ratio), "n={n} k={k}");
      assert_eq!(m.d_apply(&a.form).unwrap(), omega_power_form(&m, k).unwrap());
    }
  }
}

#[test]
fn reduction_constant_ignores_exact_perturbations() {
  let mut rng = ChaCha8Rng::seed_from_u64(23);
  let cases = [(build_polynomial_model(1, 6).unwrap(), 1), (build_polynomial_model(2, 4).unwrap(), 2)];
  for (m, k) in &cases {
    let x = omega_power_form(m, *k).unwrap();
    let base = cohomology::reduction_constant(m, &x).unwrap();
    for _ in 0..5 {
      let mut w = FormVector::zero(m, 2 * k - 2);
      let layout = m.polynomial_layout().unwrap();
      for i in 0..w.coords.len() {
        if layout.coefficient_degree(2 * k - 2, i) <= 1 && rng.gen_bool(0.5) {
          w.coords[i] = int(rng.gen_range(-5..=5));
        }
      }
      let trace = cohomology::reduction_trace(m, &x, Some(&w)).unwrap();
      assert_eq!(trace.constant, base);
    }
  }
}

#[test]
fn exact_cocycles_reduce_to_zero_with_witness() {
  let mut rng = ChaCha8Rng::seed_from_u64(31);
  let m = build_polynomial_model(1, 6).unwrap();
  let window = &m.window().unwrap()[2];
  for _ in 0..10 {
    let mut z = FormVector::zero(&m, 2);
    for &i in window {
      z.coords[i] = int(rng.gen_range(-9..=9));
    }
    let x = m.d_apply(&m.d_lambda_apply(&z).unwrap()).unwrap();
    let trace = cohomology::reduction_trace(&m, &x, None).unwrap();
    assert_eq!(trace.constant, scalar::zero());
    let w = trace.witness.expect("exact input has a witness");
    assert_eq!(m.d_apply(&m.d_lambda_apply(&w).unwrap()).unwrap(), x);
  }
}

/// Rebuilds `model` with one entry of a `d` block changed.
fn corrupted(model: &ComplexModel, degree: usize, row: usize, col: usize) -> ComplexModel {
  let mut d_blocks = model.d().blocks().to_vec();
  d_blocks[degree][(row, col)] += int(1);
  let top = model.top_degree();
  ComplexModel::from_parts(
    "corrupted",
    model.half_dim(),
    ModelKind::Custom,
    (0..=top).map(|k| model.labels(k).to_vec()).collect(),
    d_blocks,
    model.star().blocks().to_vec(),
    model.inner().map(<[Matrix]>::to_vec),
    None,
  )
  .unwrap()
}

#[test]
fn corrupted_differential_is_reported() {
  let clean = build_polynomial_model(1, 2).unwrap();
  // d(1) picks up x dy, and d^L(x dy) is a nonzero constant
  let row = clean.labels(1).iter().position(|l| l == "x1 dy1").unwrap();
  let bad = corrupted(&clean, 0, row, 0);
  let failing: Vec<_> = bad.verify_identities().into_iter().filter(|c| !c.holds).collect();
  assert!(failing.iter().any(|c| c.identity == "d d^L + d^L d = 0"), "{failing:?}");
  assert!(!bad.identities_hold());
  assert!(clean.identities_hold());
}

#[test]
fn malformed_parts_are_rejected() {
  let m = build_torus_model(1).unwrap();
  let mut d_blocks = m.d().blocks().to_vec();
  d_blocks[0] = Matrix::zeros(3, 1);
  let labels = (0..=2).map(|k| m.labels(k).to_vec()).collect();
  let r = ComplexModel::from_parts("bad", 1, ModelKind::Custom, labels, d_blocks, m.star().blocks().to_vec(), None, None);
  assert!(matches!(r, Err(LabError::Shape { .. })));
}

#[test]
fn subspace_sanity_on_every_model() {
  let models = [
    build_torus_model(1).unwrap(),
    build_torus_model(2).unwrap(),
    build_polynomial_model(1, 4).unwrap(),
    build_polynomial_model(2, 3).unwrap(),
    build_suspension_model(2).unwrap(),
  ];
  for m in &models {
    assert!(m.identities_hold(), "{}", m.name());
    for (k, (first, second)) in cohomology::subspace_sanity(m).into_iter().enumerate() {
      assert!(first && second, "{} degree {k}", m.name());
    }
  }
}

#[test]
fn hodge_kernels_match_cohomology() {
  for m in [build_torus_model(2).unwrap(), build_suspension_model(3).unwrap(), build_suspension_model(2).unwrap()] {
    let h = cohomology::hodge_check(&m).unwrap();
    assert!(h.all_hold(), "{}", m.name());
    assert_eq!(h.kernel_dims(), dims(&m, Theory::DPlusDLambda));
    for deg in &h.degrees {
      assert_eq!(deg.total, m.dim(deg.degree));
      assert_eq!(deg.kernel_dim + deg.exact_rank + deg.coexact_rank, deg.total);
    }
  }
  let h = cohomology::hodge_check(&build_suspension_model(2).unwrap()).unwrap();
  assert_eq!(h.kernel_dims(), [1, 5, 1]);
  let h = cohomology::hodge_check(&build_torus_model(1).unwrap()).unwrap();
  assert_eq!(h.kernel_dims(), [1, 2, 1]);
}

#[test]
fn hodge_needs_inner_product() {
  let m = build_polynomial_model(1, 3).unwrap();
  assert!(matches!(cohomology::hodge_check(&m), Err(LabError::Unsupported { .. })));
}

#[test]
fn inequality_examples() {
  let m = build_suspension_model(2).unwrap();
  let reports: Vec<_> = Theory::ALL.iter().map(|t| cohomology::cohomology(&m, *t, false).unwrap()).collect();
  assert_eq!((reports[0].dims[2], reports[1].dims[2], reports[2].dims[2]), (5, 1, 5));
  assert_eq!(cohomology::inequality_check(&reports[0], &reports[1], &reports[2]).unwrap(), [true; 3]);

  let t = build_torus_model(1).unwrap();
  let r: Vec<_> = Theory::ALL.iter().map(|th| cohomology::cohomology(&t, *th, false).unwrap()).collect();
  assert_eq!(cohomology::inequality_check(&r[0], &r[1], &r[2]).unwrap(), [true; 3]);

  let p = build_polynomial_model(1, 6).unwrap();
  let r: Vec<_> = Theory::ALL.iter().map(|th| cohomology::cohomology(&p, *th, true).unwrap()).collect();
  assert_eq!((r[0].dims[0], r[1].dims[0], r[2].dims[0]), (1, 1, 0));
  assert_eq!(cohomology::inequality_check(&r[0], &r[1], &r[2]).unwrap(), [true; 3]);

  // reports from different models or in the wrong order are rejected
  assert!(cohomology::inequality_check(&reports[0], &r[1], &r[2]).is_err());
  assert!(cohomology::inequality_check(&r[1], &r[0], &r[2]).is_err());
}


