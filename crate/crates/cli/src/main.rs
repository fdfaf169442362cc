use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use symplab_core::cohomology::{self, CohomologyReport, HodgeReport, Theory};
use symplab_core::forms;
use symplab_core::lie::{AlgebraContext, AlgebraElement};
use symplab_core::matrix::parse_matrix_json;
use symplab_core::models::{build_polynomial_model, build_suspension_model, build_torus_model, ComplexModel};
use symplab_core::report::{algebra_batch, csv_rows, AlgebraCheck};
use symplab_core::suite;
use symplab_core::LabError;

const OUTPUT_DIR_VAR: &str = "LAB_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "lab", version, about = "Exact checks for invariant 2-forms on sp(2n,R) and symplectic cohomology")]
struct Cli {
  #[command(subcommand)]
  command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
  /// Seeded per-sample checks on random regular elements.
  Algebra {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=6))]
    n:       u64,
    #[arg(long, value_enum)]
    check:   Check,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed:    u64,
    #[arg(long)]
    output:  Option<PathBuf>,
  },
  /// Report on the 2-form omega_A of one element given as a JSON matrix.
  Omega {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=6))]
    n:       u64,
    /// Rows of strings or integers, e.g. '[["1","0"],["0","-1"]]'.
    #[arg(long)]
    element: String,
    #[arg(long)]
    output:  Option<PathBuf>,
  },
  /// Cohomology dimensions of a finite model.
  Cohomology {
    #[arg(long, value_enum)]
    model:    ModelChoice,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=4))]
    n:        u64,
    /// Coefficient-degree cutoff (polynomial) or Fourier cutoff (suspension).
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    cutoff:   u64,
    #[arg(long, value_enum, value_delimiter = ',', required = true, num_args = 1..)]
    theories: Vec<TheoryChoice>,
    /// Use the whole truncated space instead of the window.
    #[arg(long)]
    full:     bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format:   Format,
    #[arg(long)]
    output:   Option<PathBuf>,
  },
  /// Run every acceptance check and print expected against computed.
  Suite {
    #[arg(long, value_enum, default_value_t = SuiteFormat::Table)]
    format: SuiteFormat,
    #[arg(long)]
    output: Option<PathBuf>,
  },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Check {
  RankKernel,
  Potential,
  Quotient,
  Spectral,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelChoice {
  Torus,
  Polynomial,
  Suspension,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TheoryChoice {
  Dr,
  Dpl,
  Ddl,
  Hodge,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
  Json,
  Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteFormat {
  Table,
  Json,
}

#[derive(Debug)]
enum Failure {
  Lab(LabError),
  Io(String),
  /// The suite ran but some check failed.
  Checks,
}

impl From<LabError> for Failure {
  fn from(e: LabError) -> Self { Failure::Lab(e) }
}

impl From<io::Error> for Failure {
  fn from(e: io::Error) -> Self { Failure::Io(e.to_string()) }
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
  op:     &'a str,
  reason: String,
}

#[derive(Serialize)]
struct CohomologyOutput<'a> {
  model:      &'a str,
  dims:       Vec<usize>,
  reports:    Vec<CohomologyReport>,
  hodge:      Option<HodgeReport>,
  /// Present when all three theories were computed.
  inequality: Option<Vec<bool>>,
}

fn main() -> ExitCode {
  let cli = Cli::parse();
  match run(cli.command) {
    Ok(()) => ExitCode::SUCCESS,
    Err(Failure::Checks) => ExitCode::from(1),
    Err(failure) => {
      let record = match &failure {
        Failure::Lab(LabError::Precondition { op, reason } | LabError::Unsupported { op, reason }) =>
          ErrorRecord { op, reason: reason.clone() },
        Failure::Lab(e) => ErrorRecord { op: e.op(), reason: e.to_string() },
        Failure::Io(reason) => ErrorRecord { op: "io", reason: reason.clone() },
        Failure::Checks => unreachable!(),
      };
      eprintln!("{}", serde_json::to_string(&record).expect("error record serializes"));
      ExitCode::from(1)
    },
  }
}

fn run(command: Command) -> Result<(), Failure> {
  match command {
    Command::Algebra { n, check, samples, seed, output } => {
      let check = match check {
        Check::RankKernel => AlgebraCheck::RankKernel,
        Check::Potential => AlgebraCheck::Potential,
        Check::Quotient => AlgebraCheck::Quotient,
        Check::Spectral => AlgebraCheck::Spectral,
      };
      let batch = algebra_batch(n as usize, check, samples, seed)?;
      emit(output, "algebra.json", &to_json(&batch))
    },
    Command::Omega { n, element, output } => {
      let ctx = AlgebraContext::standard(n as usize)?;
      let a = AlgebraElement::from_matrix(&ctx, &parse_matrix_json(&element)?)?;
      let report = forms::form_report(&forms::omega_from_element(&a));
      emit(output, "omega.json", &to_json(&report))
    },
    Command::Cohomology { model, n, cutoff, theories, full, format, output } => {
      let (n, cutoff) = (n as usize, cutoff as usize);
      let model = match model {
        ModelChoice::Torus => build_torus_model(n)?,
        ModelChoice::Polynomial => build_polynomial_model(n, cutoff)?,
        ModelChoice::Suspension => build_suspension_model(cutoff)?,
      };
      let text = cohomology_output(&model, &theories, !full && model.window().is_some(), format)?;
      let name = match format {
        Format::Json => "cohomology.json",
        Format::Csv => "cohomology.csv",
      };
      emit(output, name, &text)
    },
    Command::Suite { format, output } => {
      let results = suite::run_suite();
      let text = match format {
        SuiteFormat::Json => to_json(&results),
        SuiteFormat::Table => suite_table(&results),
      };
      emit(output, "suite.txt", &text)?;
      if results.iter().all(|r| r.passed) { Ok(()) } else { Err(Failure::Checks) }
    },
  }
}

fn cohomology_output(model: &ComplexModel, theories: &[TheoryChoice], windowed: bool, format: Format) -> Result<String, Failure> {
  let mut reports = Vec::new();
  let mut hodge = None;
  for choice in dedup(theories) {
    let theory = match choice {
      TheoryChoice::Dr => Theory::DeRham,
      TheoryChoice::Dpl => Theory::DPlusDLambda,
      TheoryChoice::Ddl => Theory::DdLambda,
      TheoryChoice::Hodge => {
        hodge = Some(cohomology::hodge_check(model)?);
        continue;
      },
    };
    reports.push(cohomology::cohomology(model, theory, windowed)?);
  }
  Ok(match format {
    Format::Csv => {
      let mut writer = csv::Writer::from_writer(Vec::new());
      for row in csv_rows(&reports, hodge.as_ref()) {
        writer.serialize(row).map_err(|e| Failure::Io(e.to_string()))?;
      }
      String::from_utf8(writer.into_inner().map_err(|e| Failure::Io(e.to_string()))?).expect("csv output is utf-8")
    },
    Format::Json => {
      let find = |t: Theory| reports.iter().find(|r| r.theory == t);
      let inequality = match (find(Theory::DeRham), find(Theory::DPlusDLambda), find(Theory::DdLambda)) {
        (Some(a), Some(b), Some(c)) => Some(cohomology::inequality_check(a, b, c)?),
        _ => None,
      };
      to_json(&CohomologyOutput { model: model.name(), dims: model.dims(), reports, hodge, inequality })
    },
  })
}

fn dedup(theories: &[TheoryChoice]) -> Vec<TheoryChoice> {
  let mut out = Vec::new();
  for t in theories {
    if !out.contains(t) {
      out.push(*t);
    }
  }
  out
}

fn suite_table(results: &[suite::CriterionResult]) -> String {
  let mut out = String::new();
  for r in results {
    out.push_str(&format!("{:>2} {:<4} {}\n", r.id, if r.passed { "pass" } else { "FAIL" }, r.name));
    out.push_str(&format!("     expected: {}\n     computed: {}\n", r.expected, r.computed));
  }
  let passed = results.iter().filter(|r| r.passed).count();
  out.push_str(&format!("{passed}/{} checks passed\n", results.len()));
  out
}

fn to_json<T: Serialize>(value: &T) -> String {
  let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
  text.push('\n');
  text
}

/// Writes to `--output`, or into `LAB_OUTPUT_DIR` when it is set (keeping the
/// file name), or to stdout.
fn emit(output: Option<PathBuf>, default_name: &str, text: &str) -> Result<(), Failure> {
  let target = match (std::env::var_os(OUTPUT_DIR_VAR), output) {
    (Some(dir), Some(path)) => {
      let name = path.file_name().map(PathBuf::from).unwrap_or_else(|| default_name.into());
      Some(PathBuf::from(dir).join(name))
    },
    (Some(dir), None) => Some(PathBuf::from(dir).join(default_name)),
    (None, path) => path,
  };
  match target {
    Some(path) => {
      if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
      }
      fs::write(&path, text)?;
    },
    None => io::stdout().write_all(text.as_bytes())?,
  }
  Ok(())
}
