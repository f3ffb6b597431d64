//! Verification reports and the check suites that produce them.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::atoms::{
    make_constant_atom, make_moment_atom, moment_order, validate_atom, AtomicDistribution, PAtom,
};
use crate::error::{Error, Result};
use crate::hardy::{
    boundary_pair_battery, hardy_extension, hp_norm, poisson_kernels, radial_maximal_lp,
    BoundaryData, RadialLadder, TrigPolynomial, STABLE_CONTRACTION,
};
use crate::hilbert::{
    boundary_trace, continuity_experiment, hilbert_pv, BoundaryValueDecomposition, CircleSample,
};
use crate::quadrature::{build_circle_grid, TWO_PI};
use crate::schwarz::{
    atomic_condition_check, boundary_recovery, pde_residual, solve_first, solve_higher,
    test_battery, CheckConfig, SchwarzProblem,
};
use crate::sources::{lq_norm, SourceTerm};
use crate::vekua::{apply, wirtinger_dzbar, Kernel, OperatorConfig};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Measurement only; never asserts that a statement holds.
    Diagnostic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub name: String,
    pub value: f64,
}

impl Measurement {
    pub fn new(name: impl Into<String>, value: f64) -> Self {
        Measurement {
            name: name.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub theorem_tag: String,
    /// Hex SHA-256 of the canonical JSON serialization of the inputs.
    pub inputs_digest: String,
    pub measured: Vec<Measurement>,
    /// Absent for diagnostic reports.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// SHA-256 of the JSON serialization. Struct fields serialize in declaration
/// order, so equal values give equal digests.
pub fn digest<T: Serialize + ?Sized>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).unwrap_or_default();
    hex::encode(Sha256::digest(&bytes))
}

impl VerificationReport {
    /// Pass iff every residual is `≤ tolerance` (NaN residuals fail).
    pub fn from_residuals<T: Serialize + ?Sized>(
        check_id: impl Into<String>,
        theorem_tag: impl Into<String>,
        inputs: &T,
        measured: Vec<Measurement>,
        tolerance: f64,
    ) -> Self {
        let pass = measured.iter().all(|m| m.value <= tolerance);
        VerificationReport {
            check_id: check_id.into(),
            theorem_tag: theorem_tag.into(),
            inputs_digest: digest(inputs),
            measured,
            tolerance: Some(tolerance),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            notes: Vec::new(),
        }
    }

    pub fn diagnostic<T: Serialize + ?Sized>(
        check_id: impl Into<String>,
        theorem_tag: impl Into<String>,
        inputs: &T,
        measured: Vec<Measurement>,
    ) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            theorem_tag: theorem_tag.into(),
            inputs_digest: digest(inputs),
            measured,
            tolerance: None,
            verdict: Verdict::Diagnostic,
            notes: Vec::new(),
        }
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> Self {
        self.notes.extend(notes);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn worst(&self) -> f64 {
        self.measured.iter().map(|m| m.value).fold(0.0, f64::max)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.measured
            .iter()
            .find(|m| m.name == name)
            .map(|m| m.value)
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

pub const SUITES: [&str; 6] = ["vekua", "atoms", "hardy", "hilbert", "schwarz", "all"];

/// Tolerance classes and their defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tol {
    /// Quadrature against a closed form.
    ClosedForm,
    /// Difference-stencil residuals.
    FiniteDifference,
    /// Extrapolated boundary pairings.
    Pairing,
    /// Exact polynomial integration.
    Exact,
    /// Trapezoid sums of smooth periodic functions.
    Spectral,
    /// Hilbert multiplier on resolvable modes.
    Multiplier,
    /// Allowed increase in a sequence that should be non-increasing.
    Monotone,
}

impl Tol {
    pub fn default_value(self) -> f64 {
        match self {
            Tol::ClosedForm => 1e-3,
            Tol::FiniteDifference => 1e-2,
            Tol::Pairing => 5e-2,
            Tol::Exact => 1e-12,
            Tol::Spectral => 1e-10,
            Tol::Multiplier => 1e-6,
            Tol::Monotone => 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Multiplier on every grid resolution.
    pub resolution: f64,
    /// Replaces every default tolerance when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub catalog: Vec<SourceTerm>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 20240611,
            resolution: 1.0,
            tolerance: None,
            catalog: default_catalog(),
        }
    }
}

impl VerifyConfig {
    pub fn tol(&self, class: Tol) -> f64 {
        self.tolerance.unwrap_or_else(|| class.default_value())
    }

    pub fn operator(&self) -> Result<OperatorConfig> {
        OperatorConfig::default().scaled(self.resolution)
    }

    /// `n` scaled by the resolution multiplier, rounded to an even count.
    pub fn nodes(&self, n: usize) -> usize {
        (((n as f64 * self.resolution) / 2.0).round() as usize * 2).max(8)
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn validate(&self) -> Result<()> {
        if !(self.resolution > 0.0 && self.resolution.is_finite()) {
            return Err(Error::invalid(format!(
                "resolution multiplier {} must be positive",
                self.resolution
            )));
        }
        if let Some(t) = self.tolerance {
            if !(t >= 0.0) {
                return Err(Error::invalid(format!(
                    "tolerance {t} must be non-negative"
                )));
            }
        }
        for f in &self.catalog {
            f.validate()?;
        }
        Ok(())
    }
}

/// Sources exercised by the suites.
pub fn default_catalog() -> Vec<SourceTerm> {
    vec![
        SourceTerm::one(),
        SourceTerm::monomial(1, 0),
        SourceTerm::monomial(0, 1),
        SourceTerm::monomial(2, 1),
        SourceTerm::radial_power(0.4),
        SourceTerm::radial_power(1.0),
        SourceTerm::arc_bump(1.0, 0.8, 1.0),
        SourceTerm::combination([
            (Complex64::new(0.5, -1.0), SourceTerm::monomial(1, 1)),
            (Complex64::new(0.0, 2.0), SourceTerm::radial_power(0.4)),
        ]),
    ]
}

/// Short identifier used in check ids.
pub fn source_label(f: &SourceTerm) -> String {
    match f {
        SourceTerm::Zero => "zero".into(),
        SourceTerm::Monomial { a, b } => format!("monomial_{a}_{b}"),
        SourceTerm::RadialPower { beta } => format!("radial_power_{beta}"),
        SourceTerm::ArcBump { center, width, .. } => format!("arc_bump_{center}_{width}"),
        SourceTerm::LinearCombination { terms } => {
            format!("combination_{}_{}", terms.len(), &digest(f)[..8])
        }
    }
}

/// Circle-norm exponent for sources in `L^q`: the midpoint of
/// `(1, q/(2-q))` capped at 2, and 2 for `q ≥ 2`.
pub fn gamma_for(q: f64) -> f64 {
    if q >= 2.0 {
        2.0
    } else {
        (0.5 * (1.0 + q / (2.0 - q))).min(2.0)
    }
}

/// Points uniformly distributed (by area) in the disk of radius `rmax`.
pub fn seeded_points(rng: &mut impl Rng, n: usize, rmax: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let r = rmax * rng.gen::<f64>().sqrt();
            let t = TWO_PI * rng.gen::<f64>();
            Complex64::from_polar(r, t)
        })
        .collect()
}

/// `‖T(f)(r·)‖_{L^γ}` on an `n`-node circle at each radius.
pub fn circle_norms(
    kernel: Kernel,
    f: &SourceTerm,
    gamma: f64,
    radii: &[f64],
    n: usize,
    cfg: &OperatorConfig,
) -> Result<Vec<f64>> {
    let grid = build_circle_grid(n)?;
    radii
        .iter()
        .map(|r| {
            let vals = trace(kernel, f, *r, &grid, cfg)?;
            Ok(grid.lp_norm(&vals, gamma))
        })
        .collect()
}

fn trace(
    kernel: Kernel,
    f: &SourceTerm,
    r: f64,
    grid: &crate::quadrature::CircleGrid,
    cfg: &OperatorConfig,
) -> Result<Vec<Complex64>> {
    grid.angles
        .par_iter()
        .map(|t| apply(kernel, f, Complex64::from_polar(r, *t), cfg))
        .collect()
}

/// `‖T(f)(r·) - T(f)(r_ref·)‖_{L^γ}` for each `r`.
pub fn circle_distances(
    f: &SourceTerm,
    gamma: f64,
    radii: &[f64],
    r_ref: f64,
    n: usize,
    cfg: &OperatorConfig,
) -> Result<Vec<f64>> {
    let grid = build_circle_grid(n)?;
    let reference = trace(Kernel::T, f, r_ref, &grid, cfg)?;
    radii
        .iter()
        .map(|r| {
            let vals = trace(Kernel::T, f, *r, &grid, cfg)?;
            let diff: Vec<Complex64> = vals.iter().zip(&reference).map(|(a, b)| a - b).collect();
            Ok(grid.lp_norm(&diff, gamma))
        })
        .collect()
}

/// Largest increase along a sequence that should be non-increasing.
pub fn monotonicity_violation(seq: &[f64]) -> f64 {
    seq.windows(2)
        .map(|w| (w[1] - w[0]).max(0.0))
        .fold(0.0, f64::max)
}

/// Largest `|T(f)(z₁) - T(f)(z₂)| / |z₁ - z₂|^α` over seeded pairs drawn
/// from a pool of points in the closed disk.
pub fn holder_quotient(
    f: &SourceTerm,
    alpha: f64,
    pool: &[Complex64],
    pairs: &[(usize, usize)],
    cfg: &OperatorConfig,
) -> Result<f64> {
    let values: Vec<Complex64> = pool
        .par_iter()
        .map(|z| apply(Kernel::T, f, *z, cfg))
        .collect::<Result<_>>()?;
    Ok(pairs
        .iter()
        .filter(|(i, j)| pool[*i] != pool[*j])
        .map(|(i, j)| (values[*i] - values[*j]).norm() / (pool[*i] - pool[*j]).norm().powf(alpha))
        .fold(0.0, f64::max))
}

/// Pool of points in `D̄` (a tenth of them on the unit circle) and random
/// index pairs into it.
pub fn holder_sample(
    rng: &mut impl Rng,
    pool_size: usize,
    n_pairs: usize,
) -> (Vec<Complex64>, Vec<(usize, usize)>) {
    let mut pool = seeded_points(rng, pool_size - pool_size / 10, 1.0);
    for _ in 0..pool_size / 10 {
        pool.push(Complex64::from_polar(1.0, TWO_PI * rng.gen::<f64>()));
    }
    let pairs = (0..n_pairs)
        .map(|_| (rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len())))
        .collect();
    (pool, pairs)
}

/// A random valid atom with exponent `p`.
pub fn random_atom(rng: &mut impl Rng, p: f64) -> Result<PAtom> {
    let center = TWO_PI * rng.gen::<f64>();
    let length = 0.2 + 1.8 * rng.gen::<f64>();
    make_moment_atom(p, moment_order(p), center, length)
}

/// Random finite atomic sum with real coefficients.
pub fn random_atomic(rng: &mut impl Rng, p: f64, max_terms: usize) -> Result<AtomicDistribution> {
    let mut d = AtomicDistribution::new();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let c = rng.gen_range(-1.0..1.0);
        d.push(Complex64::new(c, 0.0), random_atom(rng, p)?);
    }
    Ok(d)
}

/// Random samples `Σcₙaₙ + Σ dᵢ T(fᵢ)_b` built from precomputed boundary
/// traces of the pool sources. Every fifth sample has no atomic part and
/// every seventh no error part.
pub fn random_decompositions(
    rng: &mut impl Rng,
    count: usize,
    pool: &[CircleSample],
    p_choices: &[f64],
    gamma: f64,
) -> Result<Vec<BoundaryValueDecomposition>> {
    let grid = pool
        .first()
        .map(|s| s.grid.clone())
        .ok_or_else(|| Error::invalid("continuity samples need at least one pool trace"))?;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let p = p_choices[rng.gen_range(0..p_choices.len())];
        let atomic_part = if i % 5 == 4 {
            AtomicDistribution::new()
        } else {
            random_atomic(rng, p, 3)?
        };
        let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
        if i % 7 != 6 {
            for trace in pool {
                let d = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                for (v, t) in values.iter_mut().zip(&trace.values) {
                    *v += d * t;
                }
            }
        }
        out.push(BoundaryValueDecomposition {
            atomic_part,
            error_part: CircleSample::new(grid.clone(), values)?,
            p,
            gamma,
        });
    }
    Ok(out)
}

/// Runs the named suite. Reports are sorted by check id.
pub fn run_suite(suite: &str, cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    if !SUITES.contains(&suite) {
        return Err(Error::invalid(format!(
            "unknown suite {suite:?}; expected one of {SUITES:?}"
        )));
    }
    cfg.validate()?;
    if cfg.catalog.is_empty() {
        return Ok(Vec::new());
    }
    type SuiteFn = fn(&VerifyConfig) -> Result<Vec<VerificationReport>>;
    let runners: [(&str, SuiteFn); 5] = [
        ("vekua", vekua_suite),
        ("atoms", atoms_suite),
        ("hardy", hardy_suite),
        ("hilbert", hilbert_suite),
        ("schwarz", schwarz_suite),
    ];
    let selected: Vec<SuiteFn> = runners
        .iter()
        .filter(|(name, _)| suite == "all" || suite == *name)
        .map(|(_, run)| *run)
        .collect();
    let batches: Vec<Vec<VerificationReport>> = selected
        .par_iter()
        .map(|run| run(cfg))
        .collect::<Result<_>>()?;
    let mut reports: Vec<VerificationReport> = batches.into_iter().flatten().collect();
    let seed_note = format!("seed {}", cfg.seed);
    for r in &mut reports {
        r.notes.push(seed_note.clone());
    }
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(reports)
}

fn vekua_suite(cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    let op = cfg.operator()?;
    let mut rng = cfg.rng(1);
    let mut out = Vec::new();
    let points = seeded_points(&mut rng, 20, 0.95);
    let fd_points = seeded_points(&mut rng, 8, 0.9);
    let circle = cfg.nodes(32);

    for f in &cfg.catalog {
        let label = source_label(f);
        if f.closed_form_t(Complex64::new(0.5, 0.0)).is_some() {
            let mut t_err: f64 = 0.0;
            let mut tt_err: f64 = 0.0;
            for z in points.iter().filter(|z| !f.singular_points().contains(z)) {
                if let (Some(a), Some(b)) = (f.closed_form_t(*z), f.closed_form_t_tilde(*z)) {
                    t_err = t_err.max((apply(Kernel::T, f, *z, &op)? - a).norm());
                    tt_err = tt_err.max((apply(Kernel::TTilde, f, *z, &op)? - b).norm());
                }
            }
            out.push(VerificationReport::from_residuals(
                format!("vekua.closed_form.{label}"),
                "T and T~ against closed forms",
                &(f, &op.resolution().n_rho, cfg.resolution),
                vec![
                    Measurement::new("max_err_T", t_err),
                    Measurement::new("max_err_T_tilde", tt_err),
                ],
                cfg.tol(Tol::ClosedForm),
            ));
        }
        if f.is_smooth() {
            let mut t_res: f64 = 0.0;
            let mut tt_res: f64 = 0.0;
            for z in &fd_points {
                let target = f.sample(*z);
                t_res = t_res.max(
                    (wirtinger_dzbar(|p| apply(Kernel::T, f, p, &op), *z, 1e-3)? - target).norm(),
                );
                tt_res = tt_res.max(
                    (wirtinger_dzbar(|p| apply(Kernel::TTilde, f, p, &op), *z, 1e-3)? - target)
                        .norm(),
                );
            }
            out.push(VerificationReport::from_residuals(
                format!("vekua.right_inverse.{label}"),
                "dT(f)/dzbar = f and dT~(f)/dzbar = f",
                &(f, cfg.resolution),
                vec![
                    Measurement::new("max_residual_T", t_res),
                    Measurement::new("max_residual_T_tilde", tt_res),
                ],
                cfg.tol(Tol::FiniteDifference),
            ));
        }
        // Boundary imaginarity along the ladder and on the circle itself.
        let radii = [0.9, 0.99, 0.999];
        let grid = build_circle_grid(circle)?;
        let mut maxima = Vec::new();
        for r in radii.iter().chain([1.0].iter()) {
            let vals = trace(Kernel::TTilde, f, *r, &grid, &op)?;
            maxima.push(vals.iter().map(|v| v.re.abs()).fold(0.0, f64::max));
        }
        out.push(VerificationReport::from_residuals(
            format!("vekua.boundary_imaginarity.{label}"),
            "Re T~(f) vanishes on the unit circle",
            &(f, cfg.resolution, circle),
            vec![
                Measurement::new("max_re_at_0.999", maxima[2]),
                Measurement::new("max_re_at_1", maxima[3]),
                Measurement::new(
                    "ladder_increase",
                    (monotonicity_violation(&maxima[..3]) - Tol::Monotone.default_value()).max(0.0),
                ),
            ],
            cfg.tol(Tol::Pairing),
        ));
        // Boundary convergence for q in (1, 2].
        let q = f.default_q();
        if q > 1.0 && q <= 2.0 {
            let gamma = gamma_for(q);
            let d = circle_distances(
                f,
                gamma,
                &[0.5, 0.75, 0.9, 0.99, 0.999],
                0.9999,
                circle,
                &op,
            )?;
            let mut measured = vec![Measurement::new(
                "monotonicity_violation",
                monotonicity_violation(&d),
            )];
            measured.push(Measurement::new("distance_at_0.999", d[4]));
            out.push(VerificationReport::from_residuals(
                format!("vekua.boundary_convergence.{label}"),
                "L^gamma distance between circle traces of T(f) decreases toward the boundary",
                &(f, gamma, cfg.resolution),
                measured,
                cfg.tol(Tol::Pairing),
            ));
        }
    }

    // Circle-norm uniformity: measured only.
    let radii = [0.5, 0.9, 0.99, 0.999];
    let disk = crate::quadrature::build_disk_grid(cfg.nodes(200), cfg.nodes(400))?;
    let mut measured = Vec::new();
    for f in &cfg.catalog {
        let q = f.default_q();
        let gamma = gamma_for(q);
        let norms = circle_norms(Kernel::T, f, gamma, &radii, circle, &op)?;
        let lq = lq_norm(f, q, &disk);
        let label = source_label(f);
        let sup = norms.iter().cloned().fold(0.0, f64::max);
        if lq > 0.0 {
            measured.push(Measurement::new(format!("{label}.sup_over_lq"), sup / lq));
        }
        if norms[3] > 0.0 {
            measured.push(Measurement::new(
                format!("{label}.variation_0.9_0.999"),
                (norms[1] - norms[3]).abs() / norms[3],
            ));
        }
    }
    out.push(VerificationReport::diagnostic(
        "vekua.circle_norms",
        "circle L^gamma norms of T(f) bounded by C ||f||_q independently of r and f",
        &(&cfg.catalog, cfg.resolution),
        measured,
    ));

    // Hölder quotients with α = (q-2)/q at q = 4.
    let (pool, pairs) = holder_sample(&mut rng, 40, 400);
    let mut measured = Vec::new();
    for f in [SourceTerm::one(), SourceTerm::radial_power(0.4)] {
        measured.push(Measurement::new(
            format!("{}.holder_quotient", source_label(&f)),
            holder_quotient(&f, 0.5, &pool, &pairs, &op)?,
        ));
    }
    out.push(VerificationReport::diagnostic(
        "vekua.holder",
        "T(f) is Hoelder continuous with exponent (q-2)/q for q > 2",
        &(cfg.seed, cfg.resolution),
        measured,
    ));
    Ok(out)
}

fn atoms_suite(cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    let mut rng = cfg.rng(2);
    let mut out = Vec::new();
    let ladder = RadialLadder::with_nodes(cfg.nodes(4096))?;
    let mut atoms = Vec::new();
    for p in [1.0, 0.75, 0.5, 0.4, 0.3, 0.2] {
        atoms.push(random_atom(&mut rng, p)?);
    }
    atoms.push(make_constant_atom(1.0, 1.0)?);
    for (i, a) in atoms.iter().enumerate() {
        let mut r = validate_atom(a, cfg.tol(Tol::Exact));
        r.check_id = format!("atoms.validate.{i}");
        out.push(r);
        let d = AtomicDistribution::single(Complex64::new(1.0, 0.0), a.clone());
        let prof = hp_norm(&|z| hardy_extension(&d, z), a.p, &ladder)?;
        out.push(
            VerificationReport::from_residuals(
                format!("atoms.hp_membership.{i}"),
                "Hardy extension of a p-atom lies in H^p",
                &(a, ladder.circle.len()),
                vec![
                    Measurement::new(
                        "contraction_excess",
                        (prof.contraction - STABLE_CONTRACTION).max(0.0),
                    ),
                    Measurement::new("growing", if prof.growing { f64::INFINITY } else { 0.0 }),
                ],
                0.0,
            )
            .with_note(format!(
                "last relative change {:.3e}, contraction {:.3e}",
                prof.last_relative_change, prof.contraction
            ))
            .with_note(format!("hp profile {:?}", prof.per_radius)),
        );
    }
    Ok(out)
}

fn hardy_suite(cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    let mut rng = cfg.rng(3);
    let mut out = Vec::new();
    // Trapezoid sums of the kernels converge like r^N; resolving r = 0.99
    // to the spectral tolerance needs a fixed node count.
    let n = 4096;
    let grid = build_circle_grid(n)?;
    let mut measured = Vec::new();
    for r in [0.5, 0.9, 0.99] {
        let sp = grid.integrate_real(|t| poisson_kernels(r, t).map(|k| k.p).unwrap_or(f64::NAN))
            / TWO_PI;
        let sq = grid.integrate_real(|t| poisson_kernels(r, t).map(|k| k.q).unwrap_or(f64::NAN));
        measured.push(Measurement::new(
            format!("p_mass_err_r{r}"),
            (sp - 1.0).abs(),
        ));
        measured.push(Measurement::new(format!("q_mass_r{r}"), sq.abs()));
    }
    out.push(VerificationReport::from_residuals(
        "hardy.kernel_normalization",
        "(1/2pi) int P_r = 1 and int Q_r = 0",
        &n,
        measured,
        cfg.tol(Tol::Spectral),
    ));

    let cos = BoundaryData::Trig(TrigPolynomial::cos(1));
    let pts = seeded_points(&mut rng, 10, 0.95);
    let mut err: f64 = 0.0;
    for z in &pts {
        err = err.max((cos.hardy_extension(*z)? - z).norm());
    }
    out.push(VerificationReport::from_residuals(
        "hardy.extension_of_cosine",
        "extension of cos(theta) is z",
        &cos,
        vec![Measurement::new("max_err", err)],
        cfg.tol(Tol::ClosedForm),
    ));

    let d = random_atomic(&mut rng, 0.75, 3)?;
    let fd_pts = seeded_points(&mut rng, 8, 0.85);
    let mut holo: f64 = 0.0;
    for z in &fd_pts {
        holo = holo.max(wirtinger_dzbar(|p| hardy_extension(&d, p), *z, 1e-3)?.norm());
    }
    out.push(VerificationReport::from_residuals(
        "hardy.holomorphy",
        "extensions of atomic sums are holomorphic",
        &d,
        vec![Measurement::new("max_dzbar", holo)],
        cfg.tol(Tol::FiniteDifference),
    ));

    let h = BoundaryData::Atomic(d.clone());
    let battery = test_battery();
    let ladder = RadialLadder::new(vec![0.9, 0.99, 0.999], cfg.nodes(8192))?;
    let pairings = boundary_pair_battery(
        &|z| Ok(Complex64::new(h.hardy_extension(z)?.re, 0.0)),
        &battery,
        &ladder,
    )?;
    let measured = battery
        .iter()
        .zip(&pairings)
        .enumerate()
        .map(|(j, (phi, p))| Measurement::new(format!("phi{j}"), (p.limit - h.pairing(phi)).norm()))
        .collect();
    out.push(VerificationReport::from_residuals(
        "hardy.real_part_recovery",
        "Re of the extension has boundary value h",
        &(&h, ladder.circle.len()),
        measured,
        cfg.tol(Tol::Pairing),
    ));

    let small = RadialLadder::with_nodes(64)?;
    let coarse = radial_maximal_lp(&d, 0.75, &small, &build_circle_grid(cfg.nodes(512))?)?;
    let fine = radial_maximal_lp(&d, 0.75, &small, &build_circle_grid(cfg.nodes(1024))?)?;
    out.push(VerificationReport::diagnostic(
        "hardy.radial_maximal",
        "radial maximal function of the Poisson integral is in L^p",
        &(&d, cfg.resolution),
        vec![
            Measurement::new("integral", fine),
            Measurement::new(
                "relative_change_under_doubling",
                (fine - coarse).abs() / fine,
            ),
        ],
    ));
    Ok(out)
}

fn hilbert_suite(cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    let mut rng = cfg.rng(4);
    let mut out = Vec::new();
    let n = 1024;
    let grid = build_circle_grid(n)?;
    let mut worst: f64 = 0.0;
    for k in 1..=n / 4 {
        let kf = k as f64;
        let u = CircleSample::from_fn(&grid, |t| Complex64::new((kf * t).cos(), 0.0))?;
        let hu = hilbert_pv(&u)?;
        for (t, v) in grid.angles.iter().zip(&hu.values) {
            worst = worst.max((v - Complex64::new((kf * t).sin(), 0.0)).norm());
        }
    }
    let one = hilbert_pv(&CircleSample::from_fn(&grid, |_| Complex64::new(1.0, 0.0))?)?.max_abs();
    out.push(VerificationReport::from_residuals(
        "hilbert.multiplier",
        "H(cos n theta) = sin n theta",
        &n,
        vec![Measurement::new("max_err_modes_to_n_over_4", worst)],
        cfg.tol(Tol::Multiplier),
    ));
    out.push(VerificationReport::from_residuals(
        "hilbert.constants",
        "H(1) = 0",
        &n,
        vec![Measurement::new("max_abs", one)],
        cfg.tol(Tol::Spectral),
    ));

    let op = cfg.operator()?;
    let pool_sources = [
        SourceTerm::one(),
        SourceTerm::monomial(1, 1),
        SourceTerm::radial_power(0.4),
    ];
    let q = pool_sources
        .iter()
        .map(|f| f.default_q())
        .fold(f64::INFINITY, f64::min);
    let gamma = gamma_for(q);
    let ladder = RadialLadder::with_nodes(64)?;
    let mut maxima = Vec::new();
    let seed_rng = rng.gen::<u64>();
    for n in [cfg.nodes(128), cfg.nodes(256)] {
        let g = build_circle_grid(n)?;
        let pool = pool_sources
            .iter()
            .map(|f| boundary_trace(Kernel::T, f, &g, &op))
            .collect::<Result<Vec<_>>>()?;
        let mut sample_rng = ChaCha8Rng::seed_from_u64(seed_rng);
        let samples = random_decompositions(&mut sample_rng, 12, &pool, &[1.0, 0.75], gamma)?;
        let report = continuity_experiment(&samples, &ladder)?;
        maxima.push(report.max_ratio.unwrap_or(f64::NAN));
    }
    out.push(VerificationReport::diagnostic(
        "hilbert.continuity",
        "Hilbert transform is continuous on boundary values of the solution class",
        &(cfg.seed, cfg.resolution, gamma),
        vec![
            Measurement::new("max_ratio", maxima[1]),
            Measurement::new(
                "relative_change_under_doubling",
                (maxima[1] - maxima[0]).abs() / maxima[1],
            ),
        ],
    ));
    Ok(out)
}

fn schwarz_suite(cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    let mut rng = cfg.rng(5);
    let op = cfg.operator()?;
    let check = CheckConfig {
        fine_circle: cfg.nodes(4096),
        coarse_circle: cfg.nodes(32),
        fd_tolerance: cfg.tol(Tol::FiniteDifference),
        pairing_tolerance: cfg.tol(Tol::Pairing),
        ..CheckConfig::default()
    };
    let battery = test_battery();
    let points = seeded_points(&mut rng, 6, 0.85);
    let mut out = Vec::new();
    let h = BoundaryData::Atomic(random_atomic(&mut rng, 0.75, 2)?);
    let problems = [
        (
            "unit_source",
            SchwarzProblem::first(SourceTerm::one(), BoundaryData::zero()),
        ),
        (
            "atomic_data",
            SchwarzProblem::first(SourceTerm::monomial(0, 1), h.clone()),
        ),
        (
            "second_order",
            SchwarzProblem::higher(
                SourceTerm::one(),
                vec![BoundaryData::Trig(TrigPolynomial::cos(1)), h.clone()],
            ),
        ),
    ];
    for (name, problem) in problems {
        let sol = solve_higher(&problem, &op)?;
        let mut r = pde_residual(&sol, &points, &check)?;
        r.check_id = format!("schwarz.pde_residual.{name}");
        out.push(r);
        let mut r = boundary_recovery(&sol, &battery, &check)?;
        r.check_id = format!("schwarz.boundary_recovery.{name}");
        out.push(r);
        if !sol.tail_defects.is_empty() {
            out.push(VerificationReport::from_residuals(
                format!("schwarz.stage_identity.{name}"),
                "materialized tails agree with direct evaluation off the grid",
                &problem,
                sol.tail_defects
                    .iter()
                    .enumerate()
                    .map(|(k, d)| Measurement::new(format!("tail_{}_defect", k + 1), *d))
                    .collect(),
                cfg.tol(Tol::FiniteDifference),
            ));
        }
    }
    for (name, h, f) in [
        ("zero", BoundaryData::zero(), SourceTerm::Zero),
        ("unit_source", BoundaryData::zero(), SourceTerm::one()),
        ("atomic_data", h, SourceTerm::Zero),
    ] {
        let r = atomic_condition_check(&h, &f, &op, &check)?;
        let pass = r.verdict == Verdict::Pass;
        let mut d = VerificationReport::diagnostic(
            format!("schwarz.atomic_condition.{name}"),
            r.theorem_tag.clone(),
            &(&h, &f),
            r.measured,
        )
        .with_notes(r.notes);
        d.notes.push(format!(
            "hypothesis {} at tolerance {}",
            if pass { "holds" } else { "fails" },
            check.pairing_tolerance
        ));
        out.push(d);
    }
    // Exercise the first-order entry point with a trig datum as well.
    let sol = solve_first(
        &SourceTerm::Zero,
        &BoundaryData::Trig(TrigPolynomial::cos(1)),
        &op,
    )?;
    let z = Complex64::from_polar(0.7, 0.3 * PI);
    out.push(VerificationReport::from_residuals(
        "schwarz.cosine_data",
        "f = 0 with h = cos(theta) gives w = z",
        &(),
        vec![Measurement::new("err", (sol.eval(z)? - z).norm())],
        cfg.tol(Tol::ClosedForm),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_verdicts() {
        let r =
            VerificationReport::from_residuals("x", "t", &1, vec![Measurement::new("a", 0.5)], 1.0);
        assert_eq!(r.verdict, Verdict::Pass);
        let r = VerificationReport::from_residuals(
            "x",
            "t",
            &1,
            vec![Measurement::new("a", f64::NAN)],
            1.0,
        );
        assert!(r.failed());
        let r = VerificationReport::diagnostic("x", "t", &1, vec![Measurement::new("a", 9.0)]);
        assert!(!r.failed());
        assert_eq!(r.value("a"), Some(9.0));
        let json = serde_json::to_string(&r).unwrap();
        assert!(!json.contains("tolerance"));
    }

    #[test]
    fn digests_are_stable() {
        assert_eq!(digest(&(1, "a")), digest(&(1, "a")));
        assert_ne!(digest(&(1, "a")), digest(&(2, "a")));
        assert_eq!(digest(&0).len(), 64);
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_for(4.0), 2.0);
        assert_eq!(gamma_for(2.0), 2.0);
        // q = 1.5: q/(2-q) = 3, midpoint of (1, 3) is 2.
        assert_eq!(gamma_for(1.5), 2.0);
        // q = 1.2: q/(2-q) = 1.5, midpoint 1.25.
        assert!((gamma_for(1.2) - 1.25).abs() < 1e-15);
    }

    #[test]
    fn monotonicity_examples() {
        assert_eq!(monotonicity_violation(&[3.0, 2.0, 2.0, 1.0]), 0.0);
        assert_eq!(monotonicity_violation(&[3.0, 2.0, 2.5, 1.0]), 0.5);
        assert_eq!(monotonicity_violation(&[]), 0.0);
    }

    #[test]
    fn unknown_suite_and_empty_catalog() {
        assert!(matches!(
            run_suite("nope", &VerifyConfig::default()),
            Err(Error::InvalidArgument(_))
        ));
        let cfg = VerifyConfig {
            catalog: Vec::new(),
            ..VerifyConfig::default()
        };
        assert!(run_suite("all", &cfg).unwrap().is_empty());
        let cfg = VerifyConfig {
            resolution: 0.0,
            ..VerifyConfig::default()
        };
        assert!(run_suite("hardy", &cfg).is_err());
    }

    #[test]
    fn hardy_suite_is_deterministic_and_sorted() {
        let cfg = VerifyConfig::default();
        let a = run_suite("hardy", &cfg).unwrap();
        let b = run_suite("hardy", &cfg).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(a.windows(2).all(|w| w[0].check_id <= w[1].check_id));
        assert!(a.iter().all(|r| !r.failed()), "{a:?}");
    }

    #[test]
    fn tolerance_override_applies_to_every_class() {
        let cfg = VerifyConfig {
            tolerance: Some(0.0),
            ..VerifyConfig::default()
        };
        assert_eq!(cfg.tol(Tol::Pairing), 0.0);
        let reports = run_suite("hilbert", &cfg).unwrap();
        assert!(reports.iter().any(|r| r.failed()));
    }

    #[test]
    fn config_round_trips() {
        let cfg = VerifyConfig::default();
        let back: VerifyConfig =
            serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(cfg, back);
    }
}
