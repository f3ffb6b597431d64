//! Schwarz problems for `∂ⁿw/∂z̄ⁿ = f` with `Re{(∂ᵏw/∂z̄ᵏ)_b} = g_k`.
//!
//! Solutions are built in stages from the innermost one outward:
//!
//! ```text
//! u_{n-1} = H_{n-1} + T̃(f),   u_k = H_k + T̃(u_{k+1}),   w = u_0,
//! ```
//!
//! where `H_k` is the holomorphic extension of `g_k`. Writing
//! `t_k = T̃(u_{k+1})`, the recursion becomes `t_k = T̃(H_{k+1}) + T̃(t_{k+1})`.
//! `T̃` of a holomorphic function is known in closed form, so only the tails
//! `t_1, …, t_{n-1}` are materialized on the operator's disk grid. They stay
//! bounded up to the circle even when the `H_k` blow up at atom endpoints.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::{
    boundary_pair_battery, hp_norm, BoundaryData, HpProfile, Pairing, RadialLadder, TrigPolynomial,
};
use crate::sources::SourceTerm;
use crate::vekua::{
    apply, materialize, wirtinger_dzbar, wirtinger_dzbar_k, with_stage, FieldSample, Kernel,
    OperatorConfig, MAX_ORDER,
};
use crate::verify::{Measurement, VerificationReport};

/// Highest derivative order checked by nested difference stencils.
pub const MAX_STENCIL_ORDER: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwarzProblem {
    pub order: usize,
    pub f: SourceTerm,
    /// Integrability exponent of `f`; defaults to [`SourceTerm::default_q`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    /// `g_0, …, g_{n-1}`.
    pub boundary_data: Vec<BoundaryData>,
}

impl SchwarzProblem {
    pub fn first(f: SourceTerm, h: BoundaryData) -> Self {
        SchwarzProblem {
            order: 1,
            f,
            q: None,
            boundary_data: vec![h],
        }
    }

    pub fn higher(f: SourceTerm, boundary_data: Vec<BoundaryData>) -> Self {
        SchwarzProblem {
            order: boundary_data.len(),
            f,
            q: None,
            boundary_data,
        }
    }

    pub fn q_label(&self) -> f64 {
        self.q.unwrap_or_else(|| self.f.default_q())
    }

    /// Smallest atom exponent among the boundary data (1 if there are no
    /// atoms).
    pub fn p_label(&self) -> f64 {
        self.boundary_data
            .iter()
            .filter_map(|g| match g {
                BoundaryData::Atomic(d) => {
                    Some(d.terms.iter().map(|t| t.atom.p).fold(1.0, f64::min))
                }
                BoundaryData::Trig(_) => None,
            })
            .fold(1.0, f64::min)
    }

    pub fn validate(&self) -> Result<()> {
        if self.order == 0 || self.order > MAX_ORDER {
            return Err(Error::UnsupportedOrder {
                order: self.order,
                max: MAX_ORDER,
            });
        }
        if self.boundary_data.len() != self.order {
            return Err(Error::invalid(format!(
                "order {} needs {} boundary data, got {}",
                self.order,
                self.order,
                self.boundary_data.len()
            )));
        }
        self.f.validate()?;
        let q = self.q_label();
        if !(q > 1.0) || !self.f.in_lq(q) {
            return Err(Error::invalid(format!(
                "source is not in L^q for the label q = {q} (q > 1 required)"
            )));
        }
        let p_min = if self.order == 1 { 0.0 } else { 0.5 };
        for (k, g) in self.boundary_data.iter().enumerate() {
            if !g.is_real() {
                return Err(Error::invalid(format!("boundary datum g_{k} must be real")));
            }
            if let BoundaryData::Atomic(d) = g {
                for t in &d.terms {
                    if !(t.atom.p > p_min && t.atom.p <= 1.0) {
                        return Err(Error::invalid(format!(
                            "atom exponent p = {} in g_{k} outside ({p_min}, 1]",
                            t.atom.p
                        )));
                    }
                }
                d.common_p()?;
                d.validate(1e-12)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SchwarzSolution {
    pub problem: SchwarzProblem,
    /// Materialized tails `t_1, …, t_{n-1}`.
    pub tail_fields: Vec<FieldSample>,
    /// Per materialized tail: largest gap between the grid interpolant and
    /// the direct evaluation at off-grid probe points.
    pub tail_defects: Vec<f64>,
    pub config: OperatorConfig,
}

fn probe_points() -> [Complex64; 5] {
    [
        Complex64::new(0.021, -0.013),
        Complex64::new(0.33, 0.29),
        Complex64::new(-0.47, -0.19),
        Complex64::new(-0.05, -0.77),
        Complex64::new(0.58, -0.63),
    ]
}

impl SchwarzSolution {
    pub fn order(&self) -> usize {
        self.problem.order
    }

    /// `H_k(z)`.
    pub fn holomorphic_part(&self, k: usize, z: Complex64) -> Result<Complex64> {
        self.problem.boundary_data[k].hardy_extension(z)
    }

    /// `t_k(z) = T̃(u_{k+1})(z)` with `u_n = f`.
    pub fn tail(&self, k: usize, z: Complex64) -> Result<Complex64> {
        if k >= self.order() {
            return Err(Error::invalid(format!(
                "stage {k} of an order-{} solution",
                self.order()
            )));
        }
        let next = (k + 1 < self.order()).then(|| &self.tail_fields[k]);
        tail_value(&self.problem, k, next, z, &self.config)
    }

    /// `u_k(z) = ∂ᵏw/∂z̄ᵏ (z)`.
    pub fn eval_stage(&self, k: usize, z: Complex64) -> Result<Complex64> {
        Ok(self.holomorphic_part(k, z)? + self.tail(k, z)?)
    }

    /// `w(z)`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.eval_stage(0, z)
    }

    /// `u_k` sampled on the nodes of the operator's disk grid.
    pub fn materialize_stage(&self, k: usize) -> Result<FieldSample> {
        materialize(&self.config.far_grid, |z| self.eval_stage(k, z)).map_err(|e| with_stage(e, k))
    }
}

/// `w = H + T̃(f)`.
pub fn solve_first(
    f: &SourceTerm,
    h: &BoundaryData,
    cfg: &OperatorConfig,
) -> Result<SchwarzSolution> {
    solve_higher(&SchwarzProblem::first(f.clone(), h.clone()), cfg)
}

/// Staged construction `u_k = H_k + T̃(u_{k+1})`, innermost stage first.
pub fn solve_higher(problem: &SchwarzProblem, cfg: &OperatorConfig) -> Result<SchwarzSolution> {
    problem.validate()?;
    let n = problem.order;
    // Built innermost first: t_{n-1}, …, t_1.
    let mut built: Vec<FieldSample> = Vec::with_capacity(n - 1);
    let mut defects = Vec::with_capacity(n - 1);
    for k in (1..n).rev() {
        let tail = |z| tail_value(problem, k, built.last(), z, cfg);
        let field = materialize(&cfg.far_grid, tail).map_err(|e| with_stage(e, k))?;
        let mut defect: f64 = 0.0;
        for p in probe_points() {
            let direct = tail(p).map_err(|e| with_stage(e, k))?;
            defect = defect.max((direct - field.interpolate(p)).norm());
        }
        defects.push(defect);
        built.push(field);
    }
    built.reverse();
    defects.reverse();
    Ok(SchwarzSolution {
        problem: problem.clone(),
        tail_fields: built,
        tail_defects: defects,
        config: cfg.clone(),
    })
}

/// `t_k(z)` given the materialized `t_{k+1}` (absent for the innermost
/// stage).
fn tail_value(
    problem: &SchwarzProblem,
    k: usize,
    next: Option<&FieldSample>,
    z: Complex64,
    cfg: &OperatorConfig,
) -> Result<Complex64> {
    match next {
        None => apply(Kernel::TTilde, &problem.f, z, cfg),
        Some(t) => Ok(problem.boundary_data[k + 1].t_tilde_of_extension(z)?
            + apply(Kernel::TTilde, t, z, cfg)?),
    }
}

/// Resolution and tolerances for the solution checks.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    /// Radii for boundary pairings; the limit is extrapolated from the last
    /// two.
    pub ladder_radii: Vec<f64>,
    /// Circle nodes for the holomorphic part, which sharpens toward the
    /// boundary.
    pub fine_circle: usize,
    /// Circle nodes for the `T̃` part.
    pub coarse_circle: usize,
    pub fd_step: f64,
    pub fd_tolerance: f64,
    pub pairing_tolerance: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            ladder_radii: vec![0.9, 0.99, 0.999],
            fine_circle: 8192,
            coarse_circle: 64,
            fd_step: 1e-3,
            fd_tolerance: 1e-2,
            pairing_tolerance: 5e-2,
        }
    }
}

impl CheckConfig {
    fn fine(&self) -> Result<RadialLadder> {
        RadialLadder::new(self.ladder_radii.clone(), self.fine_circle)
    }

    fn coarse(&self) -> Result<RadialLadder> {
        RadialLadder::new(self.ladder_radii.clone(), self.coarse_circle)
    }
}

/// Eight real trigonometric test functions.
pub fn test_battery() -> Vec<TrigPolynomial> {
    vec![
        TrigPolynomial::constant(1.0),
        TrigPolynomial::cos(1),
        TrigPolynomial::sin(1),
        TrigPolynomial::cos(2),
        TrigPolynomial::sin(2),
        TrigPolynomial::cos(3),
        TrigPolynomial::sin(3),
        TrigPolynomial::cos(5).plus(&TrigPolynomial::sin(4).scaled(Complex64::new(0.5, 0.0))),
    ]
}

/// Finite-difference check of `∂ᵏw/∂z̄ᵏ = u_k` (with `u_n = f`) for
/// `k ≤ 3`, and of the one-step identity `∂u_k/∂z̄ = u_{k+1}` for every
/// stage.
pub fn pde_residual(
    sol: &SchwarzSolution,
    points: &[Complex64],
    check: &CheckConfig,
) -> Result<VerificationReport> {
    let n = sol.order();
    let target = |k: usize, z: Complex64| -> Result<Complex64> {
        if k == n {
            Ok(sol.problem.f.sample(z))
        } else {
            sol.eval_stage(k, z)
        }
    };
    let mut measured = Vec::new();
    let w = |z: Complex64| sol.eval(z);
    for k in 1..=n.min(MAX_STENCIL_ORDER) {
        // Nested stencils amplify quadrature noise by h^{-k}; widen the step
        // with the order.
        let h = (check.fd_step * 10f64.powi(k as i32 - 1)).min(crate::vekua::MAX_STEP);
        let mut worst: f64 = 0.0;
        for z in points {
            let d = wirtinger_dzbar_k(&w, *z, h, k)?;
            worst = worst.max((d - target(k, *z)?).norm());
        }
        measured.push(Measurement::new(format!("dzbar{k}_w_minus_u{k}"), worst));
    }
    for k in 0..n {
        let mut worst: f64 = 0.0;
        for z in points {
            let d = wirtinger_dzbar(|p| sol.eval_stage(k, p), *z, check.fd_step)?;
            worst = worst.max((d - target(k + 1, *z)?).norm());
        }
        measured.push(Measurement::new(
            format!("dzbar_u{k}_minus_u{}", k + 1),
            worst,
        ));
    }
    Ok(VerificationReport::from_residuals(
        "schwarz.pde_residual",
        "iterated right inverse: d^k w/dzbar^k = u_k, d^n w/dzbar^n = f",
        &(&sol.problem, points_digest(points)),
        measured,
        check.fd_tolerance,
    ))
}

fn points_digest(points: &[Complex64]) -> Vec<(f64, f64)> {
    points.iter().map(|z| (z.re, z.im)).collect()
}

/// Pairings of `Re u_k` against each test function along the ladder, split
/// into the holomorphic part (fine circle) and the `T̃` tail (coarse circle).
pub fn stage_pairings(
    sol: &SchwarzSolution,
    k: usize,
    battery: &[TrigPolynomial],
    check: &CheckConfig,
) -> Result<Vec<Pairing>> {
    let h = boundary_pair_battery(
        &|z| Ok(Complex64::new(sol.holomorphic_part(k, z)?.re, 0.0)),
        battery,
        &check.fine()?,
    )?;
    let t = boundary_pair_battery(
        &|z| Ok(Complex64::new(sol.tail(k, z)?.re, 0.0)),
        battery,
        &check.coarse()?,
    )?;
    h.iter().zip(&t).map(|(a, b)| a.plus(b)).collect()
}

/// `|lim ⟨Re u_k(r·), φ⟩ - ⟨g_k, φ⟩|` for every stage and test function.
pub fn boundary_recovery(
    sol: &SchwarzSolution,
    battery: &[TrigPolynomial],
    check: &CheckConfig,
) -> Result<VerificationReport> {
    let mut measured = Vec::new();
    let mut notes = Vec::new();
    for k in 0..sol.order() {
        let pairings = stage_pairings(sol, k, battery, check)?;
        for (j, (phi, pairing)) in battery.iter().zip(&pairings).enumerate() {
            let expected = sol.problem.boundary_data[k].pairing(phi);
            measured.push(Measurement::new(
                format!("g{k}_phi{j}"),
                (pairing.limit - expected).norm(),
            ));
            notes.push(format!(
                "g{k}_phi{j}: cauchy residual {:.3e}",
                pairing.cauchy_residual
            ));
        }
    }
    Ok(VerificationReport::from_residuals(
        "schwarz.boundary_recovery",
        "Re of the k-th derivative has boundary value g_k as a distribution",
        &(&sol.problem, battery, &check.ladder_radii),
        measured,
        check.pairing_tolerance,
    )
    .with_notes(notes))
}

/// Whether the boundary value of `i·(conjugate-Poisson integral of h) + T̃(f)`
/// vanishes when paired with the battery.
pub fn atomic_condition_check(
    h: &BoundaryData,
    f: &SourceTerm,
    cfg: &OperatorConfig,
    check: &CheckConfig,
) -> Result<VerificationReport> {
    let battery = test_battery();
    let conj = boundary_pair_battery(
        &|z| Ok(Complex64::new(0.0, h.hardy_extension(z)?.im)),
        &battery,
        &check.fine()?,
    )?;
    let tail = boundary_pair_battery(
        &|z| apply(Kernel::TTilde, f, z, cfg),
        &battery,
        &check.coarse()?,
    )?;
    let mut measured = Vec::new();
    for (j, (a, b)) in conj.iter().zip(&tail).enumerate() {
        measured.push(Measurement::new(format!("phi{j}"), a.plus(b)?.limit.norm()));
    }
    Ok(VerificationReport::from_residuals(
        "schwarz.atomic_condition",
        "boundary value of i*Q[h] + T~(f) vanishes, so w_b = h has an atomic decomposition",
        &(h, f, &check.ladder_radii),
        measured,
        check.pairing_tolerance,
    )
    .with_note("hypothesis read as: boundary value of i * (conjugate-Poisson integral of h) + T~(f) vanishes"))
}

#[derive(Debug, Clone)]
pub struct SecondKind {
    /// `Φ = w - T(f)` or `w - T̃(f)` on the grid of `w`.
    pub phi: FieldSample,
    /// Largest `|∂Φ/∂z̄|` at the probe points.
    pub holomorphy_residual: f64,
    pub hp: HpProfile,
}

/// Splits `w` into a holomorphic part plus `T(f)` or `T̃(f)`.
pub fn decompose_second_kind(
    w: &FieldSample,
    f: &SourceTerm,
    kernel: Kernel,
    p: f64,
    cfg: &OperatorConfig,
    check: &CheckConfig,
) -> Result<SecondKind> {
    let grid = w.grid.clone();
    let particular = materialize(&grid, |z| apply(kernel, f, z, cfg))?;
    let phi = FieldSample::new(
        grid,
        w.values
            .iter()
            .zip(&particular.values)
            .map(|(a, b)| a - b)
            .collect(),
    )?;
    // The interpolant is only piecewise smooth; a wide stencil keeps the
    // cell-switching jumps small relative to the step.
    let mut holomorphy_residual: f64 = 0.0;
    for z in probe_points() {
        let d = wirtinger_dzbar(|q| Ok(phi.interpolate(q)), z, crate::vekua::MAX_STEP)?;
        holomorphy_residual = holomorphy_residual.max(d.norm());
    }
    let ladder = RadialLadder::new(check.ladder_radii.clone(), 256)?;
    let hp = hp_norm(&|z| Ok(phi.interpolate(z)), p, &ladder)?;
    Ok(SecondKind {
        phi,
        holomorphy_residual,
        hp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::{make_haar_atom, AtomicDistribution};
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn small_cfg() -> OperatorConfig {
        OperatorConfig::new(0.1, 8, 8, 16, 32).unwrap()
    }

    fn pts() -> Vec<Complex64> {
        vec![c(0.1, 0.2), c(-0.4, 0.3), c(0.5, -0.5)]
    }

    #[test]
    fn zero_problem_gives_zero() {
        let sol = solve_first(&SourceTerm::Zero, &BoundaryData::zero(), &small_cfg()).unwrap();
        assert_eq!(sol.eval(c(0.3, 0.1)).unwrap(), c(0.0, 0.0));
        assert!(sol.tail_fields.is_empty());
        let sol = solve_higher(
            &SchwarzProblem::higher(SourceTerm::Zero, vec![BoundaryData::zero(); 2]),
            &small_cfg(),
        )
        .unwrap();
        assert_eq!(sol.tail_fields.len(), 1);
        assert!(sol.tail_fields[0].max_abs() == 0.0);
        assert_eq!(sol.eval(c(-0.2, 0.5)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn first_order_with_unit_source() {
        let sol = solve_first(&SourceTerm::one(), &BoundaryData::zero(), &small_cfg()).unwrap();
        for z in pts() {
            assert!((sol.eval(z).unwrap() - (z.conj() - z)).norm() < 1e-9);
        }
        let r = pde_residual(&sol, &pts(), &CheckConfig::default()).unwrap();
        assert!(!r.failed(), "{:?}", r.measured);
        for t in [0.0, 1.0, 2.5] {
            assert!(sol.eval(Complex64::from_polar(0.9999, t)).unwrap().re.abs() < 1e-3);
        }
    }

    #[test]
    fn first_order_with_cosine_data() {
        let sol = solve_first(
            &SourceTerm::Zero,
            &BoundaryData::Trig(TrigPolynomial::cos(1)),
            &small_cfg(),
        )
        .unwrap();
        let z = c(0.3, -0.6);
        assert!((sol.eval(z).unwrap() - z).norm() < 1e-14);
    }

    #[test]
    fn order_one_agrees_with_first_order_solver() {
        let h = BoundaryData::Atomic(AtomicDistribution::single(
            c(0.5, 0.0),
            make_haar_atom(1.0, 1.0, 1.0).unwrap(),
        ));
        let a = solve_first(&SourceTerm::monomial(0, 1), &h, &small_cfg()).unwrap();
        let b = solve_higher(
            &SchwarzProblem::higher(SourceTerm::monomial(0, 1), vec![h]),
            &small_cfg(),
        )
        .unwrap();
        let z = c(0.2, 0.3);
        assert_eq!(a.eval(z).unwrap(), b.eval(z).unwrap());
    }

    #[test]
    fn second_order_with_unit_source() {
        let cfg = OperatorConfig::new(0.1, 8, 8, 24, 48).unwrap();
        let sol = solve_higher(
            &SchwarzProblem::higher(SourceTerm::one(), vec![BoundaryData::zero(); 2]),
            &cfg,
        )
        .unwrap();
        // u_1 = z̄ - z and w = T̃(z̄ - z); T̃(ζ̄) - T̃(ζ) in closed form.
        let oracle = |z: Complex64| {
            SourceTerm::monomial(0, 1).closed_form_t_tilde(z).unwrap()
                - SourceTerm::monomial(1, 0).closed_form_t_tilde(z).unwrap()
        };
        for z in pts() {
            assert!((sol.eval_stage(1, z).unwrap() - (z.conj() - z)).norm() < 1e-9);
            assert!((sol.eval(z).unwrap() - oracle(z)).norm() < 1e-4, "{z}");
        }
        assert!(
            sol.tail_defects.iter().all(|d| *d < 1e-3),
            "{:?}",
            sol.tail_defects
        );
        let r = pde_residual(&sol, &pts(), &CheckConfig::default()).unwrap();
        assert!(!r.failed(), "{:?}", r.measured);
        let check = CheckConfig {
            fine_circle: 256,
            coarse_circle: 32,
            ..CheckConfig::default()
        };
        let r = boundary_recovery(&sol, &test_battery()[..3], &check).unwrap();
        assert!(!r.failed(), "{:?}", r.measured);
    }

    #[test]
    fn invalid_problems() {
        let p = SchwarzProblem::higher(SourceTerm::Zero, vec![BoundaryData::zero(); 9]);
        assert!(matches!(p.validate(), Err(Error::UnsupportedOrder { .. })));
        let mut p = SchwarzProblem::first(SourceTerm::Zero, BoundaryData::zero());
        p.order = 2;
        assert!(p.validate().is_err());
        let mut p = SchwarzProblem::first(SourceTerm::radial_power(1.0), BoundaryData::zero());
        p.q = Some(2.5);
        assert!(p.validate().is_err());
        p.q = Some(1.0);
        assert!(p.validate().is_err());
        let p = SchwarzProblem::first(SourceTerm::Zero, BoundaryData::Trig(TrigPolynomial::exp(1)));
        assert!(p.validate().is_err());
        let tiny = crate::atoms::make_moment_atom(0.4, 1, 0.0, 1.0).unwrap();
        let g = BoundaryData::Atomic(AtomicDistribution::single(c(1.0, 0.0), tiny));
        assert!(SchwarzProblem::first(SourceTerm::Zero, g.clone())
            .validate()
            .is_ok());
        assert!(
            SchwarzProblem::higher(SourceTerm::Zero, vec![g, BoundaryData::zero()])
                .validate()
                .is_err()
        );
    }

    #[test]
    fn atomic_condition_examples() {
        let cfg = small_cfg();
        let check = CheckConfig {
            fine_circle: 512,
            coarse_circle: 32,
            ..CheckConfig::default()
        };
        let r =
            atomic_condition_check(&BoundaryData::zero(), &SourceTerm::Zero, &cfg, &check).unwrap();
        assert!(!r.failed());
        let r = atomic_condition_check(&BoundaryData::zero(), &SourceTerm::one(), &cfg, &check)
            .unwrap();
        assert!(r.failed());
        // Paired with sin θ, -2i sin θ gives -2πi.
        assert!(
            (r.value("phi2").unwrap() - 2.0 * PI).abs() < 1e-3,
            "{:?}",
            r.measured
        );
    }

    #[test]
    fn second_kind_decomposition() {
        let cfg = small_cfg();
        let check = CheckConfig::default();
        let grid = cfg.far_grid.clone();
        let tf = materialize(&grid, |z| apply(Kernel::T, &SourceTerm::one(), z, &cfg)).unwrap();
        let d =
            decompose_second_kind(&tf, &SourceTerm::one(), Kernel::T, 1.0, &cfg, &check).unwrap();
        assert!(d.phi.max_abs() < 1e-12);
        let w = FieldSample::new(
            grid.clone(),
            tf.values
                .iter()
                .zip(&grid.node_points)
                .map(|(v, z)| v + z)
                .collect(),
        )
        .unwrap();
        let d =
            decompose_second_kind(&w, &SourceTerm::one(), Kernel::T, 1.0, &cfg, &check).unwrap();
        for (v, z) in d.phi.values.iter().zip(&grid.node_points) {
            assert!((v - z).norm() < 1e-12);
        }
        assert!(d.holomorphy_residual < 1e-3);
        let h = BoundaryData::Atomic(AtomicDistribution::single(
            c(1.0, 0.0),
            make_haar_atom(1.0, 3.0, 1.0).unwrap(),
        ));
        let sol = solve_first(&SourceTerm::one(), &h, &cfg).unwrap();
        let d = decompose_second_kind(
            &sol.materialize_stage(0).unwrap(),
            &SourceTerm::one(),
            Kernel::TTilde,
            1.0,
            &cfg,
            &check,
        )
        .unwrap();
        for (v, z) in d.phi.values.iter().zip(&Arc::clone(&grid).node_points) {
            assert!((v - h.hardy_extension(*z).unwrap()).norm() < 1e-12);
        }
    }
}
