//! End-to-end acceptance run: one line per criterion, nonzero exit on any
//! failure.

use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symplab_core::cohomology::{self, Theory};
use symplab_core::forms;
use symplab_core::lie::{self, AlgebraContext, AlgebraElement, SpectralLabel};
use symplab_core::models::{
  build_polynomial_model, build_suspension_model, build_torus_model, omega_power_form, ComplexModel, FormVector,
};
use symplab_core::scalar::{self, int};
use symplab_core::Result;

const SAMPLES: usize = 50;
const SEED: u64 = 4_157;

type Check = Result<(bool, String)>;

fn regular_samples(n: usize, salt: u64) -> Result<Vec<AlgebraElement>> {
  let ctx = AlgebraContext::standard(n)?;
  let mut rng = ChaCha8Rng::seed_from_u64(SEED + salt * 10 + n as u64);
  Ok((0..SAMPLES).map(|_| lie::random_regular(&ctx, &mut rng)).collect())
}

fn rank_and_kernel() -> Check {
  let mut bad = 0;
  for n in [1, 2, 3] {
    for a in regular_samples(n, 1)? {
      let w = forms::omega_from_element(&a);
      let kernel = forms::form_kernel(&w);
      let ok = forms::form_rank(&w) == 2 * n * n
        && kernel.dim() == n
        && kernel == lie::centralizer(&a)
        && lie::is_abelian(&kernel);
      bad += usize::from(!ok);
    }
  }
  Ok((bad == 0, format!("{} of {} samples", 3 * SAMPLES - bad, 3 * SAMPLES)))
}

fn closed_forms() -> Check {
  let mut detail = Vec::new();
  let mut ok = true;
  for n in [1, 2] {
    let ctx = AlgebraContext::standard(n)?;
    let dim = forms::closed_two_form_dimension(&ctx);
    let expected = [3, 10][n - 1];
    let mut round_trips = 0;
    for a in regular_samples(n, 2)? {
      let w = forms::omega_from_element(&a);
      let back = forms::potential_element(&w)?;
      let theta = forms::potential_one_form(&w)?;
      round_trips += usize::from(back == a && forms::ce_d1(&theta).gram() == w.gram());
    }
    ok &= dim == expected && round_trips == SAMPLES;
    detail.push(format!("n={n}: dim {dim}, {round_trips}/{SAMPLES} potentials"));
  }
  Ok((ok, detail.join(", ")))
}

fn quotients() -> Check {
  let mut bad = 0;
  let mut alternates = 0;
  for n in [1, 2, 3] {
    for (i, a) in regular_samples(n, 3)?.into_iter().enumerate() {
      let q = forms::quotient_form(&a)?;
      bad += usize::from(!q.is_nondegenerate());
      if i < 5 {
        // shift every complement vector by a kernel vector
        let k = q.kernel.elements();
        let shifted: Vec<AlgebraElement> =
          q.complement.iter().enumerate().map(|(j, c)| c.add(&k[j % k.len()])).collect::<Result<_>>()?;
        let alt = forms::quotient_form_on(&a, shifted)?;
        alternates += usize::from(alt.is_nondegenerate());
      }
    }
  }
  let ok = bad == 0 && alternates == 15;
  Ok((ok, format!("{} nondegenerate of {}, alternate complements {alternates}/15", 3 * SAMPLES - bad, 3 * SAMPLES)))
}

fn spectral() -> Check {
  let ctx = AlgebraContext::standard(1)?;
  let j = lie::spectral_type(&AlgebraElement::j(&ctx));
  let h = lie::spectral_type(&AlgebraElement::basis_vector(&ctx, 0));
  let e = lie::spectral_type(&AlgebraElement::basis_vector(&ctx, 1));
  let ok = j.label == SpectralLabel::Elliptic
    && h.label == SpectralLabel::Hyperbolic
    && e.label == SpectralLabel::ParabolicDefective
    && e.defective;
  Ok((ok, format!("J {:?}, H {:?}, E {:?}", j.label, h.label, e.label)))
}

fn identity_models() -> Result<Vec<ComplexModel>> {
  Ok(vec![
    build_torus_model(1)?,
    build_torus_model(2)?,
    build_polynomial_model(1, 4)?,
    build_polynomial_model(1, 6)?,
    build_polynomial_model(1, 8)?,
    build_suspension_model(2)?,
    build_suspension_model(4)?,
    build_suspension_model(8)?,
  ])
}

fn identities() -> Check {
  let models = identity_models()?;
  let failing: Vec<String> = models
    .iter()
    .flat_map(|m| m.verify_identities().into_iter().filter(|c| !c.holds).map(move |c| format!("{} {}", m.name(), c.identity)))
    .collect();
  Ok((failing.is_empty(), if failing.is_empty() { format!("{} models", models.len()) } else { failing.join("; ") }))
}

fn windowed(m: &ComplexModel, t: Theory) -> Result<Vec<usize>> { Ok(cohomology::cohomology(m, t, true)?.dims) }

fn polynomial() -> Check {
  let mut ok = true;
  let mut detail = Vec::new();
  for d in [4, 6, 8] {
    let m = build_polynomial_model(1, d)?;
    let (p, q) = (windowed(&m, Theory::DPlusDLambda)?, windowed(&m, Theory::DdLambda)?);
    ok &= p == [1, 0, 1] && q == [0, 1, 0];
    detail.push(format!("D={d}: {p:?} {q:?}"));
  }
  Ok((ok, detail.join(", ")))
}

fn reduction() -> Check {
  let m1 = build_polynomial_model(1, 4)?;
  let c1 = cohomology::reduction_constant(&m1, &omega_power_form(&m1, 1)?)?;
  let m2 = build_polynomial_model(2, 4)?;
  let c2 = cohomology::reduction_constant(&m2, &omega_power_form(&m2, 2)?)?;
  let m = build_polynomial_model(1, 6)?;
  let mut rng = ChaCha8Rng::seed_from_u64(SEED);
  let mut zeros = 0;
  for _ in 0..10 {
    let z: FormVector = symplab_core::suite::random_window_form(&m, 2, &mut rng);
    let x = m.d_apply(&m.d_lambda_apply(&z)?)?;
    zeros += usize::from(cohomology::reduction_constant(&m, &x)? == scalar::zero());
  }
  let ok = c1 == int(-1) && c2 == int(1) && zeros == 10;
  Ok((ok, format!("c(omega) = {c1}, c(omega^2) = {c2}, exact inputs {zeros}/10")))
}

fn suspension() -> Check {
  let mut ok = true;
  let mut detail = Vec::new();
  for n in [2, 4, 8] {
    let m = build_suspension_model(n)?;
    let w = 2 * n + 1;
    let got: Vec<Vec<usize>> =
      Theory::ALL.iter().map(|t| cohomology::cohomology(&m, *t, false).map(|r| r.dims)).collect::<Result<_>>()?;
    ok &= got == [vec![1, 1, w], vec![1, w, 1], vec![w, 1, w]];
    detail.push(format!("N={n}: {got:?}"));
  }
  Ok((ok, detail.join(", ")))
}

fn hodge() -> Check {
  let mut ok = true;
  let mut detail = Vec::new();
  let expected = [vec![1, 5, 1], vec![1, 9, 1], vec![1, 2, 1]];
  let models = [build_suspension_model(2)?, build_suspension_model(4)?, build_torus_model(1)?];
  for (m, want) in models.iter().zip(&expected) {
    let h = cohomology::hodge_check(m)?;
    let kernels = h.kernel_dims();
    let exhaustive = h.degrees.iter().all(|d| d.exhaustive && d.kernel_dim + d.exact_rank + d.coexact_rank == d.total);
    ok &= kernels == *want && h.all_hold() && exhaustive;
    detail.push(format!("{}: {kernels:?}", m.name()));
  }
  Ok((ok, detail.join(", ")))
}

fn inequality() -> Check {
  let mut checked = 0;
  let mut failing = Vec::new();
  let mut cases = Vec::new();
  for d in [4, 6, 8] {
    cases.push((build_polynomial_model(1, d)?, true));
  }
  for n in [2, 4, 8] {
    cases.push((build_suspension_model(n)?, false));
  }
  for (m, window) in &cases {
    let r: Vec<_> = Theory::ALL.iter().map(|t| cohomology::cohomology(m, *t, *window)).collect::<Result<_>>()?;
    for (k, holds) in cohomology::inequality_check(&r[0], &r[1], &r[2])?.into_iter().enumerate() {
      checked += 1;
      if !holds {
        failing.push(format!("{} degree {k}", m.name()));
      }
    }
  }
  Ok((failing.is_empty(), if failing.is_empty() { format!("{checked} degrees") } else { failing.join(", ") }))
}

fn kahler() -> Check {
  let mut ok = true;
  let mut detail = Vec::new();
  for (n, want) in [(1, vec![1, 2, 1]), (2, vec![1, 4, 6, 4, 1])] {
    let m = build_torus_model(n)?;
    for t in Theory::ALL {
      ok &= cohomology::cohomology(&m, t, false)?.dims == want;
    }
    detail.push(format!("n={n}: {want:?}"));
  }
  Ok((ok, detail.join(", ")))
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
  let criteria: [Criterion; 11] = [
    ("rank and kernel of omega_A", rank_and_kernel),
    ("closed 2-forms and potentials", closed_forms),
    ("quotient nondegeneracy", quotients),
    ("spectral types in sp(2)", spectral),
    ("operator identities", identities),
    ("polynomial model cohomology", polynomial),
    ("reduction constants", reduction),
    ("suspension model cohomology", suspension),
    ("finite Hodge check", hodge),
    ("foliated inequality", inequality),
    ("Kahler sanity", kahler),
  ];
  let mut failures = 0;
  for (i, (name, run)) in criteria.iter().enumerate() {
    let start = Instant::now();
    let (passed, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
    let secs = start.elapsed().as_secs_f64();
    println!("criterion {:>2}: {} {name} ({detail}; {secs:.1}s)", i + 1, if passed { "PASS" } else { "FAIL" });
    failures += usize::from(!passed);
  }
  println!("{}/{} criteria passed", criteria.len() - failures, criteria.len());
  if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
