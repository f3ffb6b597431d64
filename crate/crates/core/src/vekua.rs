//! The Vekua operators `T` and `T̃`, their iterates, and the Wirtinger
//! difference stencil used to check that they invert `∂/∂z̄`.
//!
//! ```text
//! T(f)(z)  = -(1/π) ∬_D f(ζ)/(ζ - z) dξ dη
//! T̃(f)(z) = -(1/π) ∬_D [ f(ζ)/(ζ - z) + z conj(f(ζ))/(1 - ζ̄ z) ] dξ dη
//! ```
//!
//! Both are evaluated on a [`KernelCenteredGrid`] around `z`. Integrands are
//! anything implementing [`Integrand`]: catalog sources, materialized
//! [`FieldSample`]s, or closures.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::{
    build_disk_grid, CenteredResolution, DiskGrid, KernelCenteredGrid, TWO_PI,
};
use crate::sources::SourceTerm;

/// Largest supported iterate `T^k` and Schwarz order.
pub const MAX_ORDER: usize = 8;

/// A complex field on the disk that can be sampled anywhere in `D̄`.
pub trait Integrand: Sync {
    fn sample(&self, z: Complex64) -> Complex64;

    /// Points where the field is unbounded; quadrature grades toward them.
    fn singular_points(&self) -> Vec<Complex64> {
        Vec::new()
    }

    /// Decomposition `Σ c_j f_j`, when the field is a linear combination that
    /// is better integrated term by term.
    fn components(&self) -> Option<Vec<(Complex64, &dyn Integrand)>> {
        None
    }
}

impl Integrand for SourceTerm {
    fn sample(&self, z: Complex64) -> Complex64 {
        SourceTerm::sample(self, z)
    }

    fn singular_points(&self) -> Vec<Complex64> {
        SourceTerm::singular_points(self)
    }

    fn components(&self) -> Option<Vec<(Complex64, &dyn Integrand)>> {
        match self {
            SourceTerm::LinearCombination { terms } => Some(
                terms
                    .iter()
                    .map(|t| (t.coef, &t.source as &dyn Integrand))
                    .collect(),
            ),
            _ => None,
        }
    }
}

impl<I: Integrand + ?Sized> Integrand for &I {
    fn sample(&self, z: Complex64) -> Complex64 {
        (**self).sample(z)
    }

    fn singular_points(&self) -> Vec<Complex64> {
        (**self).singular_points()
    }

    fn components(&self) -> Option<Vec<(Complex64, &dyn Integrand)>> {
        (**self).components()
    }
}

impl<I: Integrand + ?Sized + Send> Integrand for Box<I> {
    fn sample(&self, z: Complex64) -> Complex64 {
        (**self).sample(z)
    }

    fn singular_points(&self) -> Vec<Complex64> {
        (**self).singular_points()
    }

    fn components(&self) -> Option<Vec<(Complex64, &dyn Integrand)>> {
        (**self).components()
    }
}

/// Wraps a closure as an [`Integrand`].
pub struct FnField<F>(pub F);

impl<F: Fn(Complex64) -> Complex64 + Sync> Integrand for FnField<F> {
    fn sample(&self, z: Complex64) -> Complex64 {
        (self.0)(z)
    }
}

/// Sum of two integrands.
pub struct SumField<A, B>(pub A, pub B);

impl<A: Integrand, B: Integrand> Integrand for SumField<A, B> {
    fn sample(&self, z: Complex64) -> Complex64 {
        self.0.sample(z) + self.1.sample(z)
    }

    fn singular_points(&self) -> Vec<Complex64> {
        let mut s = self.0.singular_points();
        for p in self.1.singular_points() {
            if !s.contains(&p) {
                s.push(p);
            }
        }
        s
    }
}

/// A field materialized on the nodes of a [`DiskGrid`], sampled off-grid by
/// local bicubic Lagrange interpolation in `(r, θ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    pub grid: Arc<DiskGrid>,
    pub values: Vec<Complex64>,
}

impl FieldSample {
    pub fn new(grid: Arc<DiskGrid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "field has {} values for {} grid nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values
            .iter()
            .position(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::numerical(format!(
                "non-finite field value at node {i}"
            )));
        }
        Ok(FieldSample { grid, values })
    }

    pub fn grid_ref(&self) -> String {
        self.grid.id()
    }

    pub fn interpolate(&self, z: Complex64) -> Complex64 {
        let g = &*self.grid;
        let (n_r, n_t) = (g.n_r(), g.n_theta());
        let r = z.norm();
        let theta = if r > 0.0 {
            z.arg().rem_euclid(TWO_PI)
        } else {
            0.0
        };

        let u = r / g.dr() - 0.5;
        let i0 = ((u.floor() as isize) - 1).clamp(0, n_r as isize - 4) as usize;
        let wr = lagrange4(u - i0 as f64);

        let v = theta / g.dtheta() - 0.5;
        let j0 = v.floor() as isize - 1;
        let wt = lagrange4(v - j0 as f64);

        let mut acc = Complex64::new(0.0, 0.0);
        for (a, wa) in wr.iter().enumerate() {
            let row = (i0 + a) * n_t;
            let mut inner = Complex64::new(0.0, 0.0);
            for (b, wb) in wt.iter().enumerate() {
                let j = (j0 + b as isize).rem_euclid(n_t as isize) as usize;
                inner += self.values[row + j] * *wb;
            }
            acc += inner * *wa;
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

impl Integrand for FieldSample {
    fn sample(&self, z: Complex64) -> Complex64 {
        self.interpolate(z)
    }
}

/// Lagrange weights for nodes `0, 1, 2, 3` at `x`.
fn lagrange4(x: f64) -> [f64; 4] {
    [
        -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0,
        x * (x - 2.0) * (x - 3.0) / 2.0,
        -x * (x - 1.0) * (x - 3.0) / 2.0,
        x * (x - 1.0) * (x - 2.0) / 6.0,
    ]
}

/// Samples `f` at every node of `grid`.
pub fn materialize<F>(grid: &Arc<DiskGrid>, f: F) -> Result<FieldSample>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let values: Result<Vec<Complex64>> = grid.node_points.par_iter().map(|z| f(*z)).collect();
    FieldSample::new(grid.clone(), values?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorConfig {
    pub near_field_radius: f64,
    pub n_rho: usize,
    pub n_phi: usize,
    pub phi_panels: usize,
    /// Longest radial panel before grading.
    pub max_rho_panel: f64,
    pub far_grid: Arc<DiskGrid>,
}

impl Default for OperatorConfig {
    fn default() -> Self {
        OperatorConfig::new(0.1, 10, 10, 32, 64).expect("default operator config is valid")
    }
}

impl OperatorConfig {
    pub fn new(
        near_field_radius: f64,
        n_rho: usize,
        n_phi: usize,
        far_n_r: usize,
        far_n_theta: usize,
    ) -> Result<Self> {
        if !(near_field_radius > 0.0 && near_field_radius < 1.0) {
            return Err(Error::invalid(format!(
                "near-field radius {near_field_radius} outside (0, 1)"
            )));
        }
        if n_rho < 2 || n_phi < 2 {
            return Err(Error::invalid(
                "kernel-centered quadrature needs at least 2 nodes per panel",
            ));
        }
        Ok(OperatorConfig {
            near_field_radius,
            n_rho,
            n_phi,
            phi_panels: 8,
            max_rho_panel: 0.5,
            far_grid: Arc::new(build_disk_grid(far_n_r, far_n_theta)?),
        })
    }

    /// Refines (`factor > 1`) or coarsens the panels and the far grid by
    /// `factor`. The Gauss order per panel is kept.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::invalid(format!(
                "resolution factor {factor} must be positive"
            )));
        }
        let s = |n: usize, min: usize| ((n as f64 * factor).round() as usize).max(min);
        let mut cfg = OperatorConfig::new(
            self.near_field_radius,
            self.n_rho,
            self.n_phi,
            s(self.far_grid.n_r(), 4),
            s(self.far_grid.n_theta(), 8),
        )?;
        cfg.phi_panels = s(self.phi_panels, 2);
        cfg.max_rho_panel = (self.max_rho_panel / factor).min(2.0);
        Ok(cfg)
    }

    pub fn resolution(&self) -> CenteredResolution {
        CenteredResolution {
            n_rho: self.n_rho,
            n_phi: self.n_phi,
            phi_panels: self.phi_panels,
            max_rho_panel: self.max_rho_panel,
            near_field_radius: self.near_field_radius,
            ..CenteredResolution::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// Cauchy kernel only.
    T,
    /// Cauchy kernel plus the reflection term `z conj(f)/(1 - ζ̄ z)`.
    TTilde,
}

/// Evaluates `T(f)(z)` or `T̃(f)(z)` for `|z| ≤ 1`.
///
/// Linear combinations are integrated term by term. `T̃` conjugates `f` in its
/// reflected part, so `T̃(cf) = c̄·T̃(f) + 2i·Im(c)·T(f)`.
pub fn apply(
    kernel: Kernel,
    f: &dyn Integrand,
    z: Complex64,
    cfg: &OperatorConfig,
) -> Result<Complex64> {
    let m = z.norm();
    if !(m <= 1.0 + 1e-12) {
        return Err(Error::domain(format!(
            "operator evaluated outside the closed disk at {z}"
        )));
    }
    if let Some(parts) = f.components() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, part) in parts {
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            match kernel {
                Kernel::T => acc += c * apply(Kernel::T, part, z, cfg)?,
                Kernel::TTilde => {
                    acc += c.conj() * apply(Kernel::TTilde, part, z, cfg)?;
                    if c.im != 0.0 {
                        acc += Complex64::new(0.0, 2.0 * c.im) * apply(Kernel::T, part, z, cfg)?;
                    }
                }
            }
        }
        return Ok(acc);
    }
    let singular = f.singular_points();
    if let Some(s) = singular.iter().find(|s| (**s - z).norm() < 1e-12) {
        return Err(Error::domain(format!(
            "operator evaluated at the source singularity {s}; the integral exists only almost everywhere"
        )));
    }
    let grid = KernelCenteredGrid::build(z, &cfg.resolution(), &singular)?;
    let gap = ((1.0 - m) * (1.0 + m)).max(0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for node in &grid.nodes {
        let v = f.sample(node.point);
        let mut k = v / node.offset;
        if kernel == Kernel::TTilde {
            let denom = gap - node.offset.conj() * z;
            k += z * v.conj() / denom;
        }
        acc += k * node.weight;
    }
    let value = -acc / std::f64::consts::PI;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NumericalFailure {
            message: format!("non-finite quadrature sum at z = {z}"),
            stage: None,
            partial: vec![
                ("nodes".into(), grid.len() as f64),
                ("weight_sum".into(), grid.weight_sum()),
            ],
        });
    }
    Ok(value)
}

pub fn eval_t(f: &dyn Integrand, z: Complex64, cfg: &OperatorConfig) -> Result<Complex64> {
    apply(Kernel::T, f, z, cfg)
}

pub fn eval_t_tilde(f: &dyn Integrand, z: Complex64, cfg: &OperatorConfig) -> Result<Complex64> {
    apply(Kernel::TTilde, f, z, cfg)
}

/// Materialized iterates `T(f), T²(f), …` on the far grid.
#[derive(Debug, Clone)]
pub struct Iterates {
    pub stages: Vec<FieldSample>,
    /// Per stage: largest gap between the interpolated stage and a direct
    /// evaluation at off-grid probe points.
    pub materialization_defect: Vec<f64>,
}

fn probe_points() -> [Complex64; 5] {
    [
        Complex64::new(0.013, 0.021),
        Complex64::new(0.31, -0.27),
        Complex64::new(-0.52, 0.11),
        Complex64::new(0.07, 0.74),
        Complex64::new(-0.61, -0.62),
    ]
}

/// Materializes `T(f), …, T^{k-1}(f)`; the last iterate is left to the caller
/// so it can be evaluated directly at arbitrary points.
pub fn materialize_iterates(
    kernel: Kernel,
    f: &dyn Integrand,
    k: usize,
    cfg: &OperatorConfig,
) -> Result<Iterates> {
    if k == 0 || k > MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            order: k,
            max: MAX_ORDER,
        });
    }
    let mut stages: Vec<FieldSample> = Vec::with_capacity(k.saturating_sub(1));
    let mut defects = Vec::new();
    for stage in 0..k - 1 {
        let prev: &dyn Integrand = match stages.last() {
            Some(s) => s,
            None => f,
        };
        let field = materialize(&cfg.far_grid, |z| apply(kernel, prev, z, cfg))
            .map_err(|e| with_stage(e, stage))?;
        let mut defect: f64 = 0.0;
        for p in probe_points() {
            let direct = apply(kernel, prev, p, cfg).map_err(|e| with_stage(e, stage))?;
            defect = defect.max((direct - field.interpolate(p)).norm());
        }
        defects.push(defect);
        stages.push(field);
    }
    Ok(Iterates {
        stages,
        materialization_defect: defects,
    })
}

pub(crate) fn with_stage(e: Error, stage: usize) -> Error {
    match e {
        Error::NumericalFailure {
            message, partial, ..
        } => Error::NumericalFailure {
            message,
            stage: Some(stage),
            partial,
        },
        other => other,
    }
}

/// `T^k(f)(z)`, with intermediate iterates materialized on `cfg.far_grid`.
pub fn eval_t_iterated(
    f: &dyn Integrand,
    k: usize,
    z: Complex64,
    cfg: &OperatorConfig,
) -> Result<Complex64> {
    let it = materialize_iterates(Kernel::T, f, k, cfg)?;
    match it.stages.last() {
        Some(last) => eval_t(last, z, cfg),
        None => eval_t(f, z, cfg),
    }
}

pub const MIN_STEP: f64 = 1e-6;
pub const MAX_STEP: f64 = 1e-2;

/// Central-difference `∂/∂z̄ = ½(∂/∂x + i ∂/∂y)` on the four-point stencil
/// `z ± h`, `z ± ih`.
pub fn wirtinger_dzbar<F>(w: F, z: Complex64, h: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(MIN_STEP..=MAX_STEP).contains(&h) {
        return Err(Error::invalid(format!(
            "difference step {h} outside [1e-6, 1e-2]"
        )));
    }
    let hx = Complex64::new(h, 0.0);
    let hy = Complex64::new(0.0, h);
    if [z + hx, z - hx, z + hy, z - hy]
        .iter()
        .any(|p| p.norm() >= 1.0)
    {
        return Err(Error::domain(format!(
            "difference stencil around {z} leaves the disk"
        )));
    }
    let dx = (w(z + hx)? - w(z - hx)?) / (2.0 * h);
    let dy = (w(z + hy)? - w(z - hy)?) / (2.0 * h);
    Ok(0.5 * (dx + Complex64::i() * dy))
}

/// `∂^k/∂z̄^k` by nested central stencils; reliable for `k ≤ 3`.
pub fn wirtinger_dzbar_k(
    w: &dyn Fn(Complex64) -> Result<Complex64>,
    z: Complex64,
    h: f64,
    k: usize,
) -> Result<Complex64> {
    match k {
        0 => w(z),
        1 => wirtinger_dzbar(w, z, h),
        _ => wirtinger_dzbar(|p| wirtinger_dzbar_k(w, p, h, k - 1), z, h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_source_gives_zero() {
        let cfg = OperatorConfig::default();
        for z in [c(0.0, 0.0), c(0.4, -0.2), c(0.0, 1.0)] {
            assert_eq!(eval_t(&SourceTerm::Zero, z, &cfg).unwrap(), c(0.0, 0.0));
            assert_eq!(
                eval_t_tilde(&SourceTerm::Zero, z, &cfg).unwrap(),
                c(0.0, 0.0)
            );
        }
    }

    #[test]
    fn t_of_one_is_conjugate() {
        let cfg = OperatorConfig::default();
        let z = c(0.3, 0.4);
        let v = eval_t(&SourceTerm::one(), z, &cfg).unwrap();
        assert!((v - z.conj()).norm() < 1e-10, "{v}");
    }

    #[test]
    fn t_of_zeta() {
        let cfg = OperatorConfig::default();
        for z in [c(0.3, 0.4), c(-0.9, 0.1), c(0.0, 0.0)] {
            let v = eval_t(&SourceTerm::monomial(1, 0), z, &cfg).unwrap();
            assert!((v - (z.norm_sqr() - 1.0)).norm() < 1e-10, "{z}: {v}");
        }
    }

    #[test]
    fn t_tilde_of_one_and_zeta() {
        let cfg = OperatorConfig::default();
        for z in [c(0.3, 0.4), c(0.0, -0.95), c(0.6, 0.79)] {
            let v = eval_t_tilde(&SourceTerm::one(), z, &cfg).unwrap();
            assert!((v - (z.conj() - z)).norm() < 1e-9, "{z}: {v}");
            let v = eval_t_tilde(&SourceTerm::monomial(1, 0), z, &cfg).unwrap();
            assert!((v - (z.norm_sqr() - 1.0)).norm() < 1e-9, "{z}: {v}");
        }
    }

    #[test]
    fn operators_reject_points_outside_the_disk() {
        let cfg = OperatorConfig::default();
        assert!(matches!(
            eval_t(&SourceTerm::one(), c(1.1, 0.0), &cfg),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_t(&SourceTerm::radial_power(1.0), c(0.0, 0.0), &cfg),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn nonfinite_sum_is_a_numerical_failure() {
        let cfg = OperatorConfig::default();
        let bad = FnField(|_| c(f64::NAN, 0.0));
        match eval_t(&bad, c(0.1, 0.1), &cfg) {
            Err(Error::NumericalFailure { partial, .. }) => assert!(!partial.is_empty()),
            other => panic!("expected numerical failure, got {other:?}"),
        }
    }

    #[test]
    fn wirtinger_stencil_on_simple_fields() {
        let z = c(0.2, -0.3);
        let h = 1e-3;
        let d = wirtinger_dzbar(|p| Ok(p.conj()), z, h).unwrap();
        assert!((d - 1.0).norm() < 1e-10);
        let d = wirtinger_dzbar(Ok, z, h).unwrap();
        assert!(d.norm() < 1e-10);
        let d = wirtinger_dzbar(|p| Ok(c(p.norm_sqr(), 0.0)), z, h).unwrap();
        assert!((d - z).norm() < 1e-8);
        assert!(matches!(
            wirtinger_dzbar(Ok, c(0.9995, 0.0), 1e-3),
            Err(Error::Domain(_))
        ));
        assert!(wirtinger_dzbar(Ok, z, 0.1).is_err());
    }

    #[test]
    fn field_sample_interpolation_is_accurate_for_smooth_fields() {
        let grid = Arc::new(build_disk_grid(32, 64).unwrap());
        let f = |z: Complex64| z.conj() * z * z + 0.5 * z.conj();
        let s = materialize(&grid, |z| Ok(f(z))).unwrap();
        for z in [
            c(0.0, 0.0),
            c(0.01, 0.0),
            c(0.5, 0.5),
            c(-0.99, 0.0),
            c(0.3, -0.2),
        ] {
            assert!((s.interpolate(z) - f(z)).norm() < 1e-5, "{z}");
        }
        assert!(FieldSample::new(grid.clone(), vec![c(0.0, 0.0); 3]).is_err());
    }

    #[test]
    fn iterated_order_limits() {
        let cfg = OperatorConfig::default();
        assert!(matches!(
            eval_t_iterated(&SourceTerm::one(), 9, c(0.1, 0.0), &cfg),
            Err(Error::UnsupportedOrder { .. })
        ));
        assert!(matches!(
            eval_t_iterated(&SourceTerm::one(), 0, c(0.1, 0.0), &cfg),
            Err(Error::UnsupportedOrder { .. })
        ));
    }
}
