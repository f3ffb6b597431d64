//! Command-line front end: JSON configs in, JSON manifests and CSV traces out.
//!
//! Every subcommand reads the same [`ProblemConfig`] schema and uses the
//! parts relevant to it. Exit codes: 0 success, 1 failed checks, 2 malformed
//! input or unusable paths, 3 numerical failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::atoms::{
    make_constant_atom, make_haar_atom, make_moment_atom, moment_order, validate_atom, PAtom,
};
use crate::error::Error;
use crate::hilbert::{hilbert_pv, CircleSample};
use crate::quadrature::{build_circle_grid, CircleGrid, TWO_PI};
use crate::schwarz::{
    boundary_recovery, pde_residual, solve_higher, test_battery, CheckConfig, SchwarzProblem,
};
use crate::sources::SourceTerm;
use crate::vekua::{apply, Kernel, OperatorConfig};
use crate::verify::{
    digest, random_atom, run_suite, seeded_points, Verdict, VerificationReport, VerifyConfig,
};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "VEKUA_THREADS";

pub const EXIT_CHECKS_FAILED: u8 = 1;
pub const EXIT_BAD_INPUT: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "vekua",
    version,
    about = "Vekua operators, atomic boundary data and Schwarz problems on the unit disk"
)]
pub struct Cli {
    /// JSON problem configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for random point sets and atoms.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Multiplier applied to every grid resolution.
    #[arg(long, global = true)]
    pub resolution: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a Schwarz problem; writes solution.json and trace.csv.
    Solve,
    /// Run a check suite; writes report.json.
    Verify {
        /// vekua, atoms, hardy, hilbert, schwarz or all.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Hilbert transform of equispaced circle samples; writes hilbert.csv.
    Hilbert {
        /// CSV with a header row and columns theta, re and optionally im.
        #[arg(long)]
        input: PathBuf,
    },
    /// Build and validate atoms; writes atoms.json.
    Atoms,
    /// Sample T(f) or T~(f) on circles; writes trace.csv.
    Trace,
}

/// Operator resolution before the global multiplier is applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSettings {
    pub near_field_radius: f64,
    pub n_rho: usize,
    pub n_phi: usize,
    pub far_n_r: usize,
    pub far_n_theta: usize,
}

impl Default for GridSettings {
    fn default() -> Self {
        GridSettings {
            near_field_radius: 0.1,
            n_rho: 10,
            n_phi: 10,
            far_n_r: 32,
            far_n_theta: 64,
        }
    }
}

impl GridSettings {
    pub fn operator(&self, resolution: f64) -> crate::Result<OperatorConfig> {
        OperatorConfig::new(
            self.near_field_radius,
            self.n_rho,
            self.n_phi,
            self.far_n_r,
            self.far_n_theta,
        )?
        .scaled(resolution)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceSettings {
    pub radii: Vec<f64>,
    pub n_theta: usize,
    pub kernel: Kernel,
}

impl Default for TraceSettings {
    fn default() -> Self {
        TraceSettings {
            radii: vec![0.5, 0.9, 0.99],
            n_theta: 64,
            kernel: Kernel::T,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AtomSpec {
    Haar {
        p: f64,
        center: f64,
        length: f64,
    },
    /// Vanishing moments up to the order required by `p`.
    Moment {
        p: f64,
        center: f64,
        length: f64,
    },
    Constant {
        p: f64,
        value: f64,
    },
    /// `count` atoms with random supports drawn from the seed.
    Random {
        p: f64,
        count: usize,
    },
}

/// Shared configuration schema for all subcommands.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem: Option<SchwarzProblem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceTerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atoms: Vec<AtomSpec>,
    #[serde(default)]
    pub grid: GridSettings,
    #[serde(default)]
    pub trace: TraceSettings,
    /// Radii for boundary pairings in the solve checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ladder_radii: Option<Vec<f64>>,
    /// Overrides every check tolerance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    /// Source catalog for `verify`; the built-in catalog when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<Vec<SourceTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<f64>,
}

/// Configuration after command-line flags have been applied.
#[derive(Debug, Clone, Serialize)]
struct Effective {
    command: &'static str,
    config: ProblemConfig,
    seed: u64,
    resolution: f64,
}

impl Effective {
    fn digest(&self) -> String {
        digest(self)
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_BAD_INPUT,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Numerical(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NumericalFailure { .. } | Error::ConstructionFailure(_) => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses arguments, runs the command and maps the outcome to an exit code.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_BAD_INPUT } else { 0 });
        }
    };
    match configure_threads().and_then(|()| run(&cli)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        CliError::Input(format!(
            "{THREADS_ENV} must be a positive integer, got {raw:?}"
        ))
    })?;
    // A pool may already exist when called more than once in a process.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

/// Runs a parsed command. Returns 0 or [`EXIT_CHECKS_FAILED`].
pub fn run(cli: &Cli) -> CliResult<u8> {
    let config = match &cli.config {
        Some(path) => load_config(path)?,
        None => ProblemConfig::default(),
    };
    let out = cli
        .out
        .clone()
        .or_else(|| config.out.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    let command = match cli.command {
        Command::Solve => "solve",
        Command::Verify { .. } => "verify",
        Command::Hilbert { .. } => "hilbert",
        Command::Atoms => "atoms",
        Command::Trace => "trace",
    };
    let eff = Effective {
        command,
        seed: cli
            .seed
            .or(config.seed)
            .unwrap_or(VerifyConfig::default().seed),
        resolution: cli.resolution.or(config.resolution).unwrap_or(1.0),
        config,
    };
    if !(eff.resolution > 0.0 && eff.resolution.is_finite()) {
        return Err(CliError::Input(format!(
            "resolution multiplier must be positive, got {}",
            eff.resolution
        )));
    }
    match &cli.command {
        Command::Solve => cmd_solve(&eff, &out),
        Command::Verify { suite } => cmd_verify(&eff, suite.as_deref(), &out),
        Command::Hilbert { input } => cmd_hilbert(input, &out),
        Command::Atoms => cmd_atoms(&eff, &out),
        Command::Trace => cmd_trace(&eff, &out),
    }
}

pub fn load_config(path: &Path) -> CliResult<ProblemConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn create_out(out: &Path) -> CliResult<()> {
    fs::create_dir_all(out).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(input_err)?;
    text.push('\n');
    write_file(path, text.as_bytes())
}

/// CSV with a digest comment line and the columns `r, theta, re, im`.
fn write_trace_csv(path: &Path, comment: &str, rows: &[(f64, f64, Complex64)]) -> CliResult<()> {
    let mut buf = Vec::new();
    writeln!(buf, "# {comment}").map_err(input_err)?;
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(["r", "theta", "re", "im"])
            .map_err(input_err)?;
        for (r, t, v) in rows {
            w.serialize((r, t, v.re, v.im)).map_err(input_err)?;
        }
        w.flush().map_err(input_err)?;
    }
    write_file(path, &buf)
}

fn circle_rows<F>(
    radii: &[f64],
    grid: &CircleGrid,
    eval: F,
) -> CliResult<Vec<(f64, f64, Complex64)>>
where
    F: Fn(Complex64) -> crate::Result<Complex64> + Sync,
{
    use rayon::prelude::*;
    let points: Vec<(f64, f64)> = radii
        .iter()
        .flat_map(|r| grid.angles.iter().map(move |t| (*r, *t)))
        .collect();
    let rows: crate::Result<Vec<_>> = points
        .par_iter()
        .map(|(r, t)| Ok((*r, *t, eval(Complex64::from_polar(*r, *t))?)))
        .collect();
    Ok(rows?)
}

fn check_radii(radii: &[f64], upper: f64, closed: bool) -> CliResult<()> {
    for r in radii {
        let ok = *r >= 0.0 && if closed { *r <= upper } else { *r < upper };
        if !ok {
            let bracket = if closed { "]" } else { ")" };
            return Err(CliError::Input(format!(
                "trace radius {r} outside [0, {upper}{bracket}"
            )));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SolveManifest<'a> {
    config_digest: String,
    problem: &'a SchwarzProblem,
    seed: u64,
    resolution: f64,
    trace_file: &'a str,
    tail_defects: &'a [f64],
    reports: Vec<VerificationReport>,
}

fn cmd_solve(eff: &Effective, out: &Path) -> CliResult<u8> {
    let problem =
        eff.config.problem.as_ref().ok_or_else(|| {
            CliError::Input("solve needs a \"problem\" entry in the config".into())
        })?;
    let settings = &eff.config.trace;
    check_radii(&settings.radii, 1.0, false)?;
    let grid = build_circle_grid(settings.n_theta)?;
    let op = eff.config.grid.operator(eff.resolution)?;
    let sol = solve_higher(problem, &op)?;

    let mut check = CheckConfig::default();
    if let Some(radii) = &eff.config.ladder_radii {
        check.ladder_radii = radii.clone();
    }
    if let Some(t) = eff.config.tolerance {
        check.fd_tolerance = t;
        check.pairing_tolerance = t;
    }
    let scale = |n: usize| (((n as f64 * eff.resolution) / 2.0).round() as usize * 2).max(8);
    check.fine_circle = scale(check.fine_circle);
    check.coarse_circle = scale(check.coarse_circle);
    let mut rng = ChaCha8Rng::seed_from_u64(eff.seed);
    let points = seeded_points(&mut rng, 6, 0.85);
    let reports = vec![
        pde_residual(&sol, &points, &check)?,
        boundary_recovery(&sol, &test_battery(), &check)?,
    ];

    let rows = circle_rows(&settings.radii, &grid, |z| sol.eval(z))?;
    let config_digest = eff.digest();
    create_out(out)?;
    write_trace_csv(
        &out.join("trace.csv"),
        &format!("vekua solve w; config_digest={config_digest}"),
        &rows,
    )?;
    let failed = reports.iter().any(|r| r.failed());
    write_json(
        &out.join("solution.json"),
        &SolveManifest {
            config_digest,
            problem,
            seed: eff.seed,
            resolution: eff.resolution,
            trace_file: "trace.csv",
            tail_defects: &sol.tail_defects,
            reports,
        },
    )?;
    Ok(if failed { EXIT_CHECKS_FAILED } else { 0 })
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    config_digest: String,
    suite: &'a str,
    config: &'a VerifyConfig,
    passed: usize,
    failed: usize,
    diagnostic: usize,
    reports: &'a [VerificationReport],
}

fn cmd_verify(eff: &Effective, suite_flag: Option<&str>, out: &Path) -> CliResult<u8> {
    let suite = suite_flag.or(eff.config.suite.as_deref()).unwrap_or("all");
    let defaults = VerifyConfig::default();
    let cfg = VerifyConfig {
        seed: eff.seed,
        resolution: eff.resolution,
        tolerance: eff.config.tolerance,
        catalog: eff.config.catalog.clone().unwrap_or(defaults.catalog),
    };
    let reports = run_suite(suite, &cfg)?;
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let output = VerifyOutput {
        config_digest: eff.digest(),
        suite,
        config: &cfg,
        passed: count(Verdict::Pass),
        failed: count(Verdict::Fail),
        diagnostic: count(Verdict::Diagnostic),
        reports: &reports,
    };
    create_out(out)?;
    write_json(&out.join("report.json"), &output)?;
    for r in &reports {
        let tag = match r.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Diagnostic => "DIAG",
        };
        if r.measured.is_empty() {
            println!("{tag} {}", r.check_id);
        } else {
            println!("{tag} {}  worst = {:.3e}", r.check_id, r.worst());
        }
    }
    println!(
        "{} passed, {} failed, {} diagnostic; config digest {}",
        output.passed, output.failed, output.diagnostic, output.config_digest
    );
    Ok(if output.failed > 0 {
        EXIT_CHECKS_FAILED
    } else {
        0
    })
}

/// Reads `theta, re[, im]` columns; the angles must be `2πj/N` for even `N`.
pub fn read_circle_csv(path: &Path) -> CliResult<CircleSample> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let headers = reader.headers().map_err(input_err)?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (Some(t_col), Some(re_col)) = (col("theta"), col("re")) else {
        return Err(CliError::Input(format!(
            "{}: need theta and re columns",
            path.display()
        )));
    };
    let im_col = col("im");
    let mut thetas = Vec::new();
    let mut values = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(input_err)?;
        let field = |i: usize| -> CliResult<f64> {
            record
                .get(i)
                .and_then(|s| s.parse::<f64>().ok())
                .filter(|x| x.is_finite())
                .ok_or_else(|| {
                    CliError::Input(format!(
                        "{}: bad number in data row {}",
                        path.display(),
                        line + 1
                    ))
                })
        };
        thetas.push(field(t_col)?);
        let im = match im_col {
            Some(i) => field(i)?,
            None => 0.0,
        };
        values.push(Complex64::new(field(re_col)?, im));
    }
    let n = values.len();
    if n < 8 || n % 2 == 1 {
        return Err(CliError::Input(format!(
            "need an even number of samples, at least 8; got {n}"
        )));
    }
    let grid = build_circle_grid(n)?;
    for (j, (t, expected)) in thetas.iter().zip(&grid.angles).enumerate() {
        if (t - expected).abs() > 1e-9 * TWO_PI {
            return Err(CliError::Input(format!(
                "sample {j}: theta {t} is not 2π·{j}/{n}"
            )));
        }
    }
    Ok(CircleSample::new(grid, values)?)
}

fn cmd_hilbert(input: &Path, out: &Path) -> CliResult<u8> {
    let u = read_circle_csv(input)?;
    let hu = hilbert_pv(&u)?;
    let rows: Vec<(f64, f64, Complex64)> = hu
        .grid
        .angles
        .iter()
        .zip(&hu.values)
        .map(|(t, v)| (1.0, *t, *v))
        .collect();
    let input_digest = digest(&u.values.iter().map(|v| (v.re, v.im)).collect::<Vec<_>>());
    create_out(out)?;
    write_trace_csv(
        &out.join("hilbert.csv"),
        &format!("vekua hilbert; input_digest={input_digest}"),
        &rows,
    )?;
    Ok(0)
}

#[derive(Serialize)]
struct AtomsOutput {
    config_digest: String,
    atoms: Vec<PAtom>,
    reports: Vec<VerificationReport>,
}

pub fn build_atoms(specs: &[AtomSpec], seed: u64) -> crate::Result<Vec<PAtom>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut atoms = Vec::new();
    for spec in specs {
        match spec {
            AtomSpec::Haar { p, center, length } => {
                atoms.push(make_haar_atom(*p, *center, *length)?)
            }
            AtomSpec::Moment { p, center, length } => {
                atoms.push(make_moment_atom(*p, moment_order(*p), *center, *length)?)
            }
            AtomSpec::Constant { p, value } => atoms.push(make_constant_atom(*p, *value)?),
            AtomSpec::Random { p, count } => {
                for _ in 0..*count {
                    atoms.push(random_atom(&mut rng, *p)?);
                }
            }
        }
    }
    Ok(atoms)
}

fn cmd_atoms(eff: &Effective, out: &Path) -> CliResult<u8> {
    if eff.config.atoms.is_empty() {
        return Err(CliError::Input(
            "atoms needs a non-empty \"atoms\" list in the config".into(),
        ));
    }
    let atoms = build_atoms(&eff.config.atoms, eff.seed)?;
    let tol = eff.config.tolerance.unwrap_or(1e-12);
    let reports: Vec<VerificationReport> = atoms.iter().map(|a| validate_atom(a, tol)).collect();
    let failed = reports.iter().any(|r| r.failed());
    create_out(out)?;
    write_json(
        &out.join("atoms.json"),
        &AtomsOutput {
            config_digest: eff.digest(),
            atoms,
            reports,
        },
    )?;
    Ok(if failed { EXIT_CHECKS_FAILED } else { 0 })
}

fn cmd_trace(eff: &Effective, out: &Path) -> CliResult<u8> {
    let f =
        eff.config.source.as_ref().ok_or_else(|| {
            CliError::Input("trace needs a \"source\" entry in the config".into())
        })?;
    f.validate()?;
    let settings = &eff.config.trace;
    check_radii(&settings.radii, 1.0, true)?;
    let grid = build_circle_grid(settings.n_theta)?;
    let op = eff.config.grid.operator(eff.resolution)?;
    let rows = circle_rows(&settings.radii, &grid, |z| {
        apply(settings.kernel, f, z, &op)
    })?;
    let kernel = match settings.kernel {
        Kernel::T => "T",
        Kernel::TTilde => "T~",
    };
    create_out(out)?;
    write_trace_csv(
        &out.join("trace.csv"),
        &format!("vekua trace {kernel}(f); config_digest={}", eff.digest()),
        &rows,
    )?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CliResult<u8> {
        let cli =
            Cli::try_parse_from(std::iter::once("vekua").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn read_rows(path: &Path) -> Vec<[f64; 4]> {
        let mut r = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_path(path)
            .unwrap();
        assert_eq!(
            r.headers().unwrap().iter().collect::<Vec<_>>(),
            ["r", "theta", "re", "im"]
        );
        r.deserialize().map(|row| row.unwrap()).collect()
    }

    #[test]
    fn config_schema_rejects_unknown_fields() {
        assert!(serde_json::from_str::<ProblemConfig>(r#"{"bogus": 1}"#).is_err());
        let c: ProblemConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(c, ProblemConfig::default());
    }

    #[test]
    fn error_classes_map_to_exit_codes() {
        assert_eq!(
            CliError::from(Error::invalid("x")).exit_code(),
            EXIT_BAD_INPUT
        );
        assert_eq!(
            CliError::from(Error::numerical("x")).exit_code(),
            EXIT_NUMERICAL
        );
        assert_eq!(
            CliError::from(Error::UnsupportedOrder { order: 9, max: 8 }).exit_code(),
            EXIT_BAD_INPUT
        );
    }

    #[test]
    fn trace_of_unit_source_on_the_circle() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write(
            dir.path(),
            "c.json",
            r#"{"source": {"kind": "monomial", "a": 0, "b": 0}, "trace": {"radii": [1.0], "n_theta": 16, "kernel": "t"}}"#,
        );
        let code = run_args(&[
            "trace",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code.unwrap(), 0);
        for [r, t, re, im] in read_rows(&dir.path().join("trace.csv")) {
            assert_eq!(r, 1.0);
            assert!((re - t.cos()).abs() < 1e-9 && (im + t.sin()).abs() < 1e-9);
        }
    }

    #[test]
    fn hilbert_of_cosine_samples() {
        let dir = tempfile::tempdir().unwrap();
        let n = 64;
        let mut text = String::from("theta,re\n");
        for j in 0..n {
            let t = TWO_PI * j as f64 / n as f64;
            text.push_str(&format!("{t},{}\n", (3.0 * t).cos()));
        }
        let input = write(dir.path(), "u.csv", &text);
        let code = run_args(&[
            "hilbert",
            "--input",
            input.to_str().unwrap(),
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code.unwrap(), 0);
        for [_, t, re, im] in read_rows(&dir.path().join("hilbert.csv")) {
            assert!((re - (3.0 * t).sin()).abs() < 1e-12 && im.abs() < 1e-15);
        }
        let bad = write(dir.path(), "bad.csv", "theta,re\n0,1\n0.5,2\n");
        let err = run_args(&["hilbert", "--input", bad.to_str().unwrap()]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_BAD_INPUT);
    }

    #[test]
    fn atoms_command() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write(
            dir.path(),
            "a.json",
            r#"{"atoms": [{"kind": "haar", "p": 1.0, "center": 0.5, "length": 1.0}, {"kind": "random", "p": 0.3, "count": 2}]}"#,
        );
        let code = run_args(&[
            "atoms",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code.unwrap(), 0);
        let v: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("atoms.json")).unwrap())
                .unwrap();
        assert_eq!(v["atoms"].as_array().unwrap().len(), 3);
        let bad = write(
            dir.path(),
            "b.json",
            r#"{"atoms": [{"kind": "haar", "p": 0.4, "center": 0.0, "length": 1.0}]}"#,
        );
        assert_eq!(
            run_args(&["atoms", "--config", bad.to_str().unwrap()])
                .unwrap_err()
                .exit_code(),
            EXIT_BAD_INPUT
        );
    }

    #[test]
    fn solve_requires_a_problem_and_interior_radii() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write(dir.path(), "e.json", "{}");
        assert_eq!(
            run_args(&["solve", "--config", cfg.to_str().unwrap()])
                .unwrap_err()
                .exit_code(),
            EXIT_BAD_INPUT
        );
        let cfg = write(
            dir.path(),
            "r.json",
            r#"{"problem": {"order": 1, "f": {"kind": "zero"}, "boundary_data": [{"kind": "atomic", "terms": []}]},
                "trace": {"radii": [1.0], "n_theta": 8, "kernel": "t"}}"#,
        );
        assert_eq!(
            run_args(&["solve", "--config", cfg.to_str().unwrap()])
                .unwrap_err()
                .exit_code(),
            EXIT_BAD_INPUT
        );
    }
}
