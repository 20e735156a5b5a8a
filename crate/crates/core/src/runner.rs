//! Command implementations behind the CLI: load a run spec, build the
//! problem and schedule, solve, and emit trace/summary/report files.
//! Output files are written atomically (temp file + rename).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::config::{
    InitSpec, LpSource, LsL1Source, ProblemSpec, RunSpec, ScheduleKindSpec, ScheduleSpec,
};
use crate::diagnostics::{certify, convergence_summary};
use crate::error::Error;
use crate::gallery::{LpProblem, LsL1Problem, MarkowitzProblem, MatrixGameProblem, ToyProblem};
use crate::matrixio::{read_matrix, read_vector};
use crate::problem::{random_feasible_init, SaddleProblem, WithReferenceValue};
use crate::projection::SymMatrix;
use crate::schedule::StepSchedule;
use crate::solver::{solve, RunResult, SolverConfig};
use crate::space::{PrimalDualPoint, Vector};

/// Failures mapped to process exit codes: invalid config → 2, numerical
/// abort → 3, I/O → 4, failed certificate check → 5.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Io(String),
    ChecksFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
            CliError::ChecksFailed => 5,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "invalid configuration: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical abort: {msg}"),
            CliError::Io(msg) => write!(f, "i/o failure: {msg}"),
            CliError::ChecksFailed => write!(f, "one or more certificate checks failed"),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub iters: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

fn config_err(e: Error) -> CliError {
    CliError::Config(e.to_string())
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Apply `--out DIR`: keep the configured file name, redirect into DIR.
fn out_path(base: &Path, configured: &Path, out_dir: &Option<PathBuf>) -> PathBuf {
    match out_dir {
        Some(dir) => {
            let name = configured.file_name().unwrap_or_else(|| "out.csv".as_ref());
            dir.join(name)
        }
        None => resolve(base, configured),
    }
}

fn atomic_write(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents).map_err(|e| CliError::Io(e.to_string()))?;
    std::fs::rename(&tmp, path).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

pub fn build_problem(
    spec: &ProblemSpec,
    reference_value: Option<f64>,
    base: &Path,
) -> Result<Box<dyn SaddleProblem>, CliError> {
    let problem: Box<dyn SaddleProblem> = match spec {
        ProblemSpec::Toy => Box::new(ToyProblem),
        ProblemSpec::Lp { source } => match source {
            LpSource::Files { a, b, c } => {
                let a = read_matrix(&resolve(base, a)).map_err(config_err)?;
                let b = read_vector(&resolve(base, b)).map_err(config_err)?;
                let c = read_vector(&resolve(base, c)).map_err(config_err)?;
                Box::new(LpProblem::new(a, b, c).map_err(config_err)?)
            }
            LpSource::Random { m, n, seed } => Box::new(LpProblem::random(*m, *n, *seed)),
        },
        ProblemSpec::LsL1 { source, gamma } => match source {
            LsL1Source::Files { a, b } => {
                let a = read_matrix(&resolve(base, a)).map_err(config_err)?;
                let b = read_vector(&resolve(base, b)).map_err(config_err)?;
                Box::new(LsL1Problem::new(a, b, *gamma).map_err(config_err)?)
            }
            LsL1Source::Random { m, n, seed } => {
                Box::new(LsL1Problem::random(*m, *n, *gamma, *seed).map_err(config_err)?)
            }
        },
        ProblemSpec::MatrixGame { payoff } => match payoff {
            Some(path) => {
                let c = read_matrix(&resolve(base, path)).map_err(config_err)?;
                Box::new(MatrixGameProblem::new(c))
            }
            None => Box::new(MatrixGameProblem::canonical_2x2()),
        },
        ProblemSpec::Markowitz { files, eta, gamma } => match files {
            Some(f) => {
                let mu = read_vector(&resolve(base, &f.mu)).map_err(config_err)?;
                let sigma_m = read_matrix(&resolve(base, &f.sigma)).map_err(config_err)?;
                if sigma_m.rows() != sigma_m.cols() {
                    return Err(CliError::Config("sigma must be square".into()));
                }
                let sigma =
                    SymMatrix::from_flat(sigma_m.rows(), sigma_m.data()).map_err(config_err)?;
                let rho = read_vector(&resolve(base, &f.rho)).map_err(config_err)?;
                Box::new(MarkowitzProblem::new(mu, sigma, rho, *eta, *gamma).map_err(config_err)?)
            }
            None => {
                if (*eta, *gamma) != (0.5, 1.0) {
                    let synthetic = MarkowitzProblem::synthetic2();
                    Box::new(
                        MarkowitzProblem::new(
                            synthetic.mu_bar().clone(),
                            synthetic.sigma_bar().clone(),
                            synthetic.rho().clone(),
                            *eta,
                            *gamma,
                        )
                        .map_err(config_err)?,
                    )
                } else {
                    Box::new(MarkowitzProblem::synthetic2())
                }
            }
        },
    };
    Ok(match reference_value {
        Some(v) => Box::new(WithReferenceValue::new(problem, v)),
        None => problem,
    })
}

pub fn build_schedule(spec: &ScheduleSpec, iters: usize) -> Result<StepSchedule, CliError> {
    let schedule = match &spec.kind {
        ScheduleKindSpec::Constant { alpha } => {
            StepSchedule::constant(*alpha).map_err(config_err)?
        }
        ScheduleKindSpec::ReversedHarmonic { horizon } => {
            let horizon = horizon.unwrap_or(iters);
            if horizon < iters {
                return Err(CliError::Config(format!(
                    "schedule horizon {horizon} is shorter than the run ({iters} iterations)"
                )));
            }
            StepSchedule::reversed_harmonic(horizon)
        }
        ScheduleKindSpec::Harmonic => StepSchedule::harmonic(),
        ScheduleKindSpec::Custom { steps } => {
            if steps.len() < iters + 1 {
                return Err(CliError::Config(format!(
                    "custom schedule has {} steps but the run needs {}",
                    steps.len(),
                    iters + 1
                )));
            }
            StepSchedule::custom(steps.clone()).map_err(config_err)?
        }
    };
    schedule.with_reversed(spec.reverse).map_err(config_err)
}

/// Short filesystem-safe label for per-schedule trace files.
pub fn schedule_label(spec: &ScheduleSpec) -> String {
    let mut label = match &spec.kind {
        ScheduleKindSpec::Constant { alpha } => format!("constant_{alpha}"),
        ScheduleKindSpec::ReversedHarmonic { horizon } => match horizon {
            Some(h) => format!("reversed_harmonic_{h}"),
            None => "reversed_harmonic".to_string(),
        },
        ScheduleKindSpec::Harmonic => "harmonic".to_string(),
        ScheduleKindSpec::Custom { steps } => format!("custom_{}", steps.len()),
    };
    if spec.reverse {
        label.push_str("_rev");
    }
    label
}

fn build_init(
    spec: &RunSpec,
    problem: &dyn SaddleProblem,
    seed: u64,
    base: &Path,
) -> Result<PrimalDualPoint, CliError> {
    let (n_x, n_y) = problem.dims();
    match &spec.init {
        InitSpec::Zero => Ok(PrimalDualPoint::zeros(n_x, n_y)),
        InitSpec::Random { radius } => Ok(random_feasible_init(problem, *radius, seed)),
        InitSpec::File { path } => {
            let v = read_vector(&resolve(base, path)).map_err(config_err)?;
            if v.len() != n_x + n_y {
                return Err(CliError::Config(format!(
                    "init file has {} entries, problem needs {}",
                    v.len(),
                    n_x + n_y
                )));
            }
            let x = Vector::from_slice(&v.as_slice()[..n_x]).map_err(config_err)?;
            let y = Vector::from_slice(&v.as_slice()[n_x..]).map_err(config_err)?;
            Ok(PrimalDualPoint::new(x, y))
        }
    }
}

fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub const TRACE_HEADER: &str = "k,t_k,f_iter,f_weighted,f_avg_point,subgrad_norm,dist_to_ref";

pub fn trace_csv(run: &RunResult) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for r in &run.trace {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.k,
            fmt_float(r.t_k),
            fmt_float(r.f_iter),
            fmt_float(r.f_weighted),
            fmt_float(r.f_avg_point),
            fmt_float(r.subgrad_norm),
            r.dist_to_ref.map(fmt_float).unwrap_or_default(),
        );
    }
    out
}

fn load_spec(config_path: &Path, overrides: &Overrides) -> Result<(RunSpec, PathBuf), CliError> {
    let (mut spec, base) = RunSpec::parse_file(config_path).map_err(|e| match e {
        Error::Io(io) => CliError::Io(io.to_string()),
        other => CliError::Config(other.to_string()),
    })?;
    if let Some(seed) = overrides.seed {
        spec.seed = seed;
    }
    if let Some(iters) = overrides.iters {
        if iters < 1 {
            return Err(CliError::Config("iters override must be >= 1".into()));
        }
        spec.iters = iters;
    }
    Ok((spec, base))
}

fn solve_spec(
    spec: &RunSpec,
    problem: &dyn SaddleProblem,
    schedule: StepSchedule,
    init: PrimalDualPoint,
) -> Result<RunResult, CliError> {
    let cfg = SolverConfig {
        max_iters: spec.iters,
        schedule,
        init,
        record_every: spec.record_every,
        rng_seed: spec.seed,
        store_iterates: spec.diagnostics,
    };
    solve(problem, &cfg).map_err(|e| CliError::Numerical(e.to_string()))
}

fn print_final_metrics(run: &RunResult, problem: &dyn SaddleProblem) {
    let last = run.final_record();
    println!(
        "k = {}: f_iter = {:.9}, f_weighted = {:.9}, f_avg_point = {:.9}",
        last.k, last.f_iter, last.f_weighted, last.f_avg_point
    );
    if let Some(r) = problem.reference() {
        println!(
            "reference = {:.9}: |f_iter - f*| = {:.3e}, |f_weighted - f*| = {:.3e}, |f_avg_point - f*| = {:.3e}",
            r.value,
            (last.f_iter - r.value).abs(),
            (last.f_weighted - r.value).abs(),
            (last.f_avg_point - r.value).abs()
        );
    }
}

/// `run <spec>`: solve once, write the trace CSV (and a certificate
/// report when diagnostics are on), print the final metrics.
pub fn cmd_run(config_path: &Path, overrides: &Overrides) -> Result<(), CliError> {
    let (spec, base) = load_spec(config_path, overrides)?;
    if spec.schedules.len() != 1 {
        return Err(CliError::Config(format!(
            "run expects exactly one [schedule] section, found {}",
            spec.schedules.len()
        )));
    }
    let problem = build_problem(&spec.problem, spec.reference_value, &base)?;
    let schedule = build_schedule(&spec.schedules[0], spec.iters)?;
    let init = build_init(&spec, &problem, spec.seed, &base)?;
    let run = solve_spec(&spec, &problem, schedule, init)?;

    let trace_path = out_path(&base, &spec.output.trace, &overrides.out_dir);
    atomic_write(&trace_path, &trace_csv(&run))?;
    println!("trace written to {}", trace_path.display());

    if spec.diagnostics {
        let report = certify(&run, &problem).map_err(|e| CliError::Numerical(e.to_string()))?;
        let report_path = out_path(&base, &spec.output.report, &overrides.out_dir);
        atomic_write(&report_path, &report.to_csv())?;
        print!("{}", report.render_table());
        println!("report written to {}", report_path.display());
    }

    print_final_metrics(&run, &problem);
    Ok(())
}

pub const SUMMARY_HEADER: &str = "schedule,status,final_err_f_iter,final_err_f_weighted,final_err_f_avg_point,k_eps_f_iter,k_eps_f_weighted,k_eps_f_avg_point";

/// `compare <spec>`: run every schedule from the same initial point and
/// seed, write one trace per schedule plus a summary CSV. Schedules that
/// abort numerically are recorded with status `aborted`; the comparison
/// itself still succeeds.
pub fn cmd_compare(config_path: &Path, overrides: &Overrides) -> Result<(), CliError> {
    let (spec, base) = load_spec(config_path, overrides)?;
    if spec.schedules.len() < 2 {
        return Err(CliError::Config(format!(
            "compare needs at least two [schedule] sections, found {}",
            spec.schedules.len()
        )));
    }
    // validate everything before writing anything
    let problem = build_problem(&spec.problem, spec.reference_value, &base)?;
    let schedules: Vec<(String, StepSchedule)> = spec
        .schedules
        .iter()
        .map(|s| Ok((schedule_label(s), build_schedule(s, spec.iters)?)))
        .collect::<Result<_, CliError>>()?;
    let init = build_init(&spec, &problem, spec.seed, &base)?;
    let f_star = problem.reference().map(|r| r.value);

    let trace_path = out_path(&base, &spec.output.trace, &overrides.out_dir);
    let stem = trace_path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("trace")
        .to_string();
    let ext = trace_path
        .extension()
        .and_then(|s| s.to_str())
        .unwrap_or("csv")
        .to_string();

    let mut summary = String::from(SUMMARY_HEADER);
    summary.push('\n');
    for (label, schedule) in &schedules {
        match solve_spec(&spec, &problem, schedule.clone(), init.clone()) {
            Ok(run) => {
                let path = trace_path.with_file_name(format!("{stem}_{label}.{ext}"));
                atomic_write(&path, &trace_csv(&run))?;
                println!("trace for {label} written to {}", path.display());
                let last = run.final_record();
                let errs = match f_star {
                    Some(f) => (
                        fmt_float((last.f_iter - f).abs()),
                        fmt_float((last.f_weighted - f).abs()),
                        fmt_float((last.f_avg_point - f).abs()),
                    ),
                    None => (String::new(), String::new(), String::new()),
                };
                let keps = convergence_summary(&run, &problem, spec.eps);
                let opt = |k: Option<usize>| k.map(|v| v.to_string()).unwrap_or_default();
                let (k_iter, k_weighted, k_avg) = match keps {
                    Some(s) => (opt(s.k_eps_iter), opt(s.k_eps_weighted), opt(s.k_eps_avg)),
                    None => (String::new(), String::new(), String::new()),
                };
                let _ = writeln!(
                    summary,
                    "{label},ok,{},{},{},{k_iter},{k_weighted},{k_avg}",
                    errs.0, errs.1, errs.2
                );
            }
            Err(CliError::Numerical(msg)) => {
                println!("schedule {label} aborted: {msg}");
                let _ = writeln!(summary, "{label},aborted,,,,,,");
            }
            Err(other) => return Err(other),
        }
    }

    let summary_path = out_path(&base, &spec.output.summary, &overrides.out_dir);
    atomic_write(&summary_path, &summary)?;
    println!("summary written to {}", summary_path.display());
    Ok(())
}

/// `certify <spec>`: run with full iterate storage, evaluate every
/// certificate check, write the report. Exit code 5 when any applicable
/// check fails (the report is still written).
pub fn cmd_certify(config_path: &Path, overrides: &Overrides) -> Result<(), CliError> {
    let (mut spec, base) = load_spec(config_path, overrides)?;
    if spec.schedules.len() != 1 {
        return Err(CliError::Config(format!(
            "certify expects exactly one [schedule] section, found {}",
            spec.schedules.len()
        )));
    }
    spec.diagnostics = true;
    let problem = build_problem(&spec.problem, spec.reference_value, &base)?;
    let schedule = build_schedule(&spec.schedules[0], spec.iters)?;
    let init = build_init(&spec, &problem, spec.seed, &base)?;
    let run = solve_spec(&spec, &problem, schedule, init)?;

    let report = certify(&run, &problem).map_err(|e| CliError::Numerical(e.to_string()))?;
    let report_path = out_path(&base, &spec.output.report, &overrides.out_dir);
    atomic_write(&report_path, &report.to_csv())?;
    print!("{}", report.render_table());
    println!("report written to {}", report_path.display());

    if report.all_pass() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
        let path = dir.join(name);
        std::fs::write(&path, body).unwrap();
        path
    }

    #[test]
    fn run_writes_trace_with_exact_header_and_rows() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(
            dir.path(),
            "toy.cfg",
            "[problem]\nkind = toy\n\n[schedule]\nkind = reversed_harmonic\n\n[run]\niters = 500\nseed = 3\n\n[init]\nkind = random\nradius = 5\n",
        );
        cmd_run(&cfg, &Overrides::default()).unwrap();
        let text = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
        let lines: Vec<&str> = text.trim_end().lines().collect();
        assert_eq!(lines[0], TRACE_HEADER);
        assert_eq!(lines.len(), 1 + 501);
        // toy has a reference point, so dist_to_ref must be populated
        assert!(!lines[1].ends_with(','));
    }

    #[test]
    fn rerun_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(
            dir.path(),
            "toy.cfg",
            "[problem]\nkind = toy\n\n[schedule]\nkind = reversed_harmonic\n\n[run]\niters = 100\nseed = 11\n\n[init]\nkind = random\nradius = 5\n",
        );
        cmd_run(&cfg, &Overrides::default()).unwrap();
        let first = std::fs::read(dir.path().join("trace.csv")).unwrap();
        cmd_run(&cfg, &Overrides::default()).unwrap();
        let second = std::fs::read(dir.path().join("trace.csv")).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn record_every_row_count() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(
            dir.path(),
            "toy.cfg",
            "[problem]\nkind = toy\n\n[schedule]\nkind = reversed_harmonic\n\n[run]\niters = 10\nrecord_every = 4\n",
        );
        cmd_run(&cfg, &Overrides::default()).unwrap();
        let text = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
        // k = 0, 4, 8 and the endpoint 10
        assert_eq!(text.trim_end().lines().count(), 1 + 4);
    }

    #[test]
    fn compare_validates_before_writing() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(
            dir.path(),
            "bad.cfg",
            "[problem]\nkind = toy\n\n[schedule]\nkind = constant\nalpha = 0.1\n\n[schedule]\nkind = constant\nalpha = -1\n\n[run]\niters = 50\n",
        );
        let err = cmd_compare(&cfg, &Overrides::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(!dir.path().join("summary.csv").exists());
        assert!(
            std::fs::read_dir(dir.path()).unwrap().count() == 1,
            "nothing written"
        );
    }

    #[test]
    fn compare_writes_summary_and_per_schedule_traces() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(
            dir.path(),
            "cmp.cfg",
            "[problem]\nkind = toy\n\n[schedule]\nkind = constant\nalpha = 0.1\n\n[schedule]\nkind = reversed_harmonic\n\n[run]\niters = 200\nseed = 5\n\n[init]\nkind = random\nradius = 5\n",
        );
        cmd_compare(&cfg, &Overrides::default()).unwrap();
        let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
        let lines: Vec<&str> = summary.trim_end().lines().collect();
        assert_eq!(lines[0], SUMMARY_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(dir.path().join("trace_constant_0.1.csv").exists());
        assert!(dir.path().join("trace_reversed_harmonic.csv").exists());
    }

    #[test]
    fn compare_identical_schedules_produce_identical_traces() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(
            dir.path(),
            "cmp.cfg",
            "[problem]\nkind = toy\n\n[schedule]\nkind = constant\nalpha = 0.05\n\n[schedule]\nkind = constant\nalpha = 0.05\n\n[run]\niters = 80\nseed = 2\n\n[init]\nkind = random\nradius = 3\n",
        );
        cmd_compare(&cfg, &Overrides::default()).unwrap();
        // identical labels collide on purpose: the second run overwrote the
        // first file with identical bytes, and the summary carries two rows
        let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
        let lines: Vec<&str> = summary.trim_end().lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], lines[2]);
    }

    #[test]
    fn compare_survives_divergent_schedule() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(
            dir.path(),
            "cmp.cfg",
            "[problem]\nkind = toy\n\n[schedule]\nkind = constant\nalpha = 1\n\n[schedule]\nkind = reversed_harmonic\n\n[run]\niters = 200\nseed = 1\n\n[init]\nkind = random\nradius = 5\n",
        );
        cmd_compare(&cfg, &Overrides::default()).unwrap();
        let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
        assert!(summary.contains("constant_1,aborted"));
        assert!(summary.contains("reversed_harmonic,ok"));
    }

    #[test]
    fn certify_toy_passes_and_writes_report() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(
            dir.path(),
            "cert.cfg",
            "[problem]\nkind = toy\n\n[schedule]\nkind = reversed_harmonic\n\n[run]\niters = 300\nseed = 4\ndiagnostics = on\n\n[init]\nkind = random\nradius = 5\n",
        );
        cmd_certify(&cfg, &Overrides::default()).unwrap();
        let report = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
        assert!(report.starts_with("check,applicable,"));
        assert!(report.contains("per_iterate_lemma,true"));
        assert!(
            !report.contains("false,"),
            "no failing checks expected:\n{report}"
        );
    }

    #[test]
    fn out_dir_override_redirects_files() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("elsewhere");
        let cfg = write_config(
            dir.path(),
            "toy.cfg",
            "[problem]\nkind = toy\n\n[schedule]\nkind = constant\nalpha = 0.01\n\n[run]\niters = 20\n",
        );
        let ov = Overrides {
            out_dir: Some(out.clone()),
            ..Default::default()
        };
        cmd_run(&cfg, &ov).unwrap();
        assert!(out.join("trace.csv").exists());
        assert!(!dir.path().join("trace.csv").exists());
    }

    #[test]
    fn overrides_change_seed_and_iters() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(
            dir.path(),
            "toy.cfg",
            "[problem]\nkind = toy\n\n[schedule]\nkind = constant\nalpha = 0.01\n\n[run]\niters = 50\nseed = 1\n\n[init]\nkind = random\nradius = 2\n",
        );
        let ov = Overrides {
            seed: Some(9),
            iters: Some(10),
            ..Default::default()
        };
        cmd_run(&cfg, &ov).unwrap();
        let text = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
        assert_eq!(text.trim_end().lines().count(), 1 + 11);
    }

    #[test]
    fn missing_config_is_io_error() {
        let err = cmd_run(Path::new("/nonexistent/nope.cfg"), &Overrides::default()).unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn run_rejects_multiple_schedules() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(
            dir.path(),
            "two.cfg",
            "[problem]\nkind = toy\n\n[schedule]\nkind = harmonic\n\n[schedule]\nkind = harmonic\n\n[run]\niters = 5\n",
        );
        let err = cmd_run(&cfg, &Overrides::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn custom_schedule_too_short_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(
            dir.path(),
            "short.cfg",
            "[problem]\nkind = toy\n\n[schedule]\nkind = custom\nsteps = 0.1 0.1\n\n[run]\niters = 5\n",
        );
        let err = cmd_run(&cfg, &Overrides::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
