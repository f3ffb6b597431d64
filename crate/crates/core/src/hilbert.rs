//! Principal-value Hilbert transform on the circle and the continuity
//! experiment on boundary values `Σ cₙ aₙ + T(f)_b`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::atoms::{quasinorm_upper, AtomicDistribution};
use crate::error::{Error, Result};
use crate::hardy::{maximal_lp, Extension, RadialLadder};
use crate::quadrature::CircleGrid;
use crate::vekua::{apply, Integrand, Kernel, OperatorConfig};

/// Samples of a function on an equispaced circle grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleSample {
    pub grid: CircleGrid,
    pub values: Vec<Complex64>,
}

impl CircleSample {
    pub fn new(grid: CircleGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "{} samples for a circle grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if values
            .iter()
            .any(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::invalid("circle sample contains non-finite values"));
        }
        Ok(CircleSample { grid, values })
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(grid: &CircleGrid, f: F) -> Result<Self> {
        let values = grid.angles.iter().map(|t| f(*t)).collect();
        CircleSample::new(grid.clone(), values)
    }

    pub fn zeros(grid: &CircleGrid) -> Self {
        CircleSample {
            grid: grid.clone(),
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn lp_norm(&self, p: f64) -> f64 {
        self.grid.lp_norm(&self.values, p)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// `(1/π) PV ∫ u(θ - t) / (2 tan(t/2)) dt` on the sample grid.
///
/// The principal value is discretized by summing over nodes at odd offsets
/// from the target with doubled weight. The kernel is odd, so every pair of
/// offsets `±t` enters as a difference, and the rule reproduces the Fourier
/// multiplier `-i sgn(n)` exactly for `|n| < N/2`.
pub fn hilbert_pv(u: &CircleSample) -> Result<CircleSample> {
    let n = u.grid.len();
    if !n.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "hilbert_pv needs an even node count, got {n}"
        )));
    }
    let h = u.grid.spacing;
    // Odd offsets k ≤ n/2, each paired with -k.
    let offsets: Vec<(usize, f64)> = (1..n / 2 + 1)
        .step_by(2)
        .map(|k| (k, h / (PI * (0.5 * k as f64 * h).tan())))
        .collect();
    let values: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, w) in &offsets {
                if 2 * k == n {
                    // cot(π/2) = 0
                    continue;
                }
                let minus = u.values[(j + n - k) % n];
                let plus = u.values[(j + k) % n];
                acc += (minus - plus) * *w;
            }
            acc
        })
        .collect();
    CircleSample::new(u.grid.clone(), values)
}

/// Boundary value split as atomic part plus a sampled `T(f)_b` error part.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryValueDecomposition {
    pub atomic_part: AtomicDistribution,
    pub error_part: CircleSample,
    pub p: f64,
    pub gamma: f64,
}

impl BoundaryValueDecomposition {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 1.0) {
            return Err(Error::invalid(format!("γ = {} must exceed 1", self.gamma)));
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::invalid(format!("p = {} outside (0, 1]", self.p)));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.atomic_part
            .terms
            .iter()
            .all(|t| t.coef == Complex64::new(0.0, 0.0))
            && self
                .error_part
                .values
                .iter()
                .all(|v| *v == Complex64::new(0.0, 0.0))
    }
}

/// `quasinorm_upper(atomic_part, p) + ‖error_part‖_{L^γ(∂D)}`.
pub fn composite_quasinorm(d: &BoundaryValueDecomposition) -> Result<f64> {
    d.validate()?;
    Ok(quasinorm_upper(&d.atomic_part, d.p)? + d.error_part.lp_norm(d.gamma))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityRow {
    pub index: usize,
    /// Maximal-function quasi-norm of the conjugate-Poisson extension of the
    /// atomic part.
    pub transformed_atomic: f64,
    /// `‖hilbert_pv(error_part)‖_γ`.
    pub transformed_error: f64,
    pub denominator: f64,
    /// `None` for samples with vanishing denominator.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityReport {
    pub rows: Vec<ContinuityRow>,
    pub skipped: usize,
    pub max_ratio: Option<f64>,
    pub notes: Vec<String>,
}

/// Measures `‖H(w_b)‖ / ‖w_b‖` for each sample, transforming the atomic and
/// error parts separately.
///
/// The atomic numerator is `(∫ sup_r |Q_r * Σcₙaₙ|^p dθ)^{1/p}` with the
/// supremum over the ladder radii and the integral on the sample's circle
/// grid; the conjugate-Poisson integral is the harmonic extension of
/// `H(Σcₙaₙ)`.
pub fn continuity_experiment(
    samples: &[BoundaryValueDecomposition],
    ladder: &RadialLadder,
) -> Result<ContinuityReport> {
    let mut rows = Vec::new();
    let mut skipped = 0;
    for (index, d) in samples.iter().enumerate() {
        d.validate()?;
        if d.is_zero() {
            skipped += 1;
            continue;
        }
        let grid = &d.error_part.grid;
        let transformed_atomic = if d.atomic_part.is_empty() {
            0.0
        } else {
            maximal_lp(
                &d.atomic_part,
                d.p,
                ladder,
                grid,
                Extension::ConjugatePoisson,
            )?
            .powf(1.0 / d.p)
        };
        let transformed_error = hilbert_pv(&d.error_part)?.lp_norm(d.gamma);
        let denominator = composite_quasinorm(d)?;
        let ratio =
            (denominator > 0.0).then(|| (transformed_atomic + transformed_error) / denominator);
        if ratio.is_none() {
            skipped += 1;
        }
        rows.push(ContinuityRow {
            index,
            transformed_atomic,
            transformed_error,
            denominator,
            ratio,
        });
    }
    let max_ratio = rows.iter().filter_map(|r| r.ratio).reduce(f64::max);
    Ok(ContinuityReport {
        rows,
        skipped,
        max_ratio,
        notes: vec![
            "denominator uses the representation-specific upper bound for the atomic quasi-norm"
                .into(),
        ],
    })
}

/// `T(f)` or `T̃(f)` sampled on the unit circle.
pub fn boundary_trace(
    kernel: Kernel,
    f: &dyn Integrand,
    grid: &CircleGrid,
    cfg: &OperatorConfig,
) -> Result<CircleSample> {
    let values = grid
        .angles
        .par_iter()
        .map(|t| apply(kernel, f, Complex64::from_polar(1.0, *t), cfg))
        .collect::<Result<Vec<_>>>()?;
    CircleSample::new(grid.clone(), values)
}
