//! Poisson and conjugate-Poisson extension of boundary data into the disk,
//! Hardy-space norms along a radial ladder, and distributional boundary
//! pairings.
//!
//! The extension of a density `h` is
//! `H(z) = (1/2π) ∫ h(t) (e^{it} + z)/(e^{it} - z) dt`, whose real and
//! imaginary parts are the Poisson and conjugate-Poisson integrals.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atoms::{AtomicDistribution, PAtom, Piece};
use crate::error::{Error, Result};
use crate::quadrature::{
    build_circle_grid, graded_breakpoints, wrap_angle, CircleGrid, GaussLegendre, Hint, TWO_PI,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPair {
    pub r: f64,
    pub theta: f64,
    pub p: f64,
    pub q: f64,
}

/// `P_r(θ) = (1-r²)/(1-2r cos θ+r²)` and `Q_r(θ) = 2r sin θ/(1-2r cos θ+r²)`.
pub fn poisson_kernels(r: f64, theta: f64) -> Result<KernelPair> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::domain(format!(
            "Poisson kernel radius {r} outside [0, 1)"
        )));
    }
    let denom = 1.0 - 2.0 * r * theta.cos() + r * r;
    Ok(KernelPair {
        r,
        theta,
        p: (1.0 - r) * (1.0 + r) / denom,
        q: 2.0 * r * theta.sin() / denom,
    })
}

/// Trigonometric polynomial `Σ c_n e^{inθ}`, used both as boundary density
/// and as test function.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrigPolynomial {
    /// `(n, c_n)` pairs; repeated frequencies add.
    pub modes: Vec<(i64, Complex64)>,
}

impl TrigPolynomial {
    pub fn constant(c: f64) -> Self {
        TrigPolynomial {
            modes: vec![(0, Complex64::new(c, 0.0))],
        }
    }

    pub fn exp(n: i64) -> Self {
        TrigPolynomial {
            modes: vec![(n, Complex64::new(1.0, 0.0))],
        }
    }

    pub fn cos(n: i64) -> Self {
        TrigPolynomial {
            modes: vec![
                (n, Complex64::new(0.5, 0.0)),
                (-n, Complex64::new(0.5, 0.0)),
            ],
        }
    }

    pub fn sin(n: i64) -> Self {
        TrigPolynomial {
            modes: vec![
                (n, Complex64::new(0.0, -0.5)),
                (-n, Complex64::new(0.0, 0.5)),
            ],
        }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        TrigPolynomial {
            modes: self.modes.iter().map(|(n, c)| (*n, c * s)).collect(),
        }
    }

    pub fn plus(&self, other: &TrigPolynomial) -> Self {
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        TrigPolynomial { modes }
    }

    pub fn degree(&self) -> u64 {
        self.modes
            .iter()
            .map(|(n, _)| n.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Combined coefficient of `e^{inθ}`.
    pub fn coefficient(&self, n: i64) -> Complex64 {
        self.modes
            .iter()
            .filter(|(m, _)| *m == n)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.modes
            .iter()
            .map(|(n, c)| c * Complex64::from_polar(1.0, *n as f64 * theta))
            .sum()
    }

    pub fn is_real(&self) -> bool {
        let tol = 1e-14 * self.modes.iter().map(|(_, c)| c.norm()).fold(1.0, f64::max);
        (0..=self.degree() as i64)
            .all(|n| (self.coefficient(n) - self.coefficient(-n).conj()).norm() <= tol)
    }

    /// `c_0 + 2 Σ_{n>0} c_n z^n`.
    pub fn hardy_extension(&self, z: Complex64) -> Complex64 {
        self.modes
            .iter()
            .map(|(n, c)| match n {
                0 => *c,
                n if *n > 0 => 2.0 * c * z.powi(*n as i32),
                _ => Complex64::new(0.0, 0.0),
            })
            .sum()
    }
}

/// Boundary data for the Schwarz problems: a finite atomic sum or a
/// trigonometric density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryData {
    Atomic(AtomicDistribution),
    Trig(TrigPolynomial),
}

impl Default for BoundaryData {
    fn default() -> Self {
        BoundaryData::Atomic(AtomicDistribution::default())
    }
}

impl BoundaryData {
    pub fn zero() -> Self {
        BoundaryData::default()
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        match self {
            BoundaryData::Atomic(d) => crate::atoms::eval_atomic(d, theta),
            BoundaryData::Trig(t) => t.eval(theta),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            BoundaryData::Atomic(d) => d.is_real(),
            BoundaryData::Trig(t) => t.is_real(),
        }
    }

    pub fn hardy_extension(&self, z: Complex64) -> Result<Complex64> {
        check_interior(z)?;
        Ok(match self {
            BoundaryData::Atomic(d) => atomic_extension(d, z),
            BoundaryData::Trig(t) => t.hardy_extension(z),
        })
    }

    /// `(1/2π) ∫ h(θ) e^{-inθ} dθ`.
    pub fn fourier_coefficient(&self, n: i64) -> Complex64 {
        match self {
            BoundaryData::Atomic(d) => d
                .terms
                .iter()
                .map(|t| t.coef * t.atom.fourier_coefficient(n))
                .sum(),
            BoundaryData::Trig(t) => t.coefficient(n),
        }
    }

    /// `T̃(H)(z)` for the extension `H`, in closed form:
    /// `z̄H(z) - (H(z) - H(0))/z - z·conj(H(0))`. On the circle the first two
    /// terms cancel.
    pub fn t_tilde_of_extension(&self, z: Complex64) -> Result<Complex64> {
        let m = z.norm();
        if m > 1.0 + 1e-12 {
            return Err(Error::domain(format!(
                "T~ evaluated outside the closed disk at |z| = {m}"
            )));
        }
        let h0 = self.fourier_coefficient(0);
        if m >= 1.0 {
            return Ok(h0 / z - h0.conj() * z);
        }
        let hz = self.hardy_extension(z)?;
        let quotient = if m < 1e-5 {
            // H(z) = c₀ + 2Σ cₙzⁿ.
            2.0 * (self.fourier_coefficient(1) + self.fourier_coefficient(2) * z)
        } else {
            (hz - h0) / z
        };
        Ok(z.conj() * hz - quotient - h0.conj() * z)
    }

    /// `⟨h, φ⟩ = ∫ h(θ) φ(θ) dθ`, exact for both kinds of data.
    pub fn pairing(&self, phi: &TrigPolynomial) -> Complex64 {
        phi.modes
            .iter()
            .map(|(n, c)| TWO_PI * c * self.fourier_coefficient(-n))
            .sum()
    }
}

fn check_interior(z: Complex64) -> Result<()> {
    if !(z.norm() < 1.0) {
        return Err(Error::domain(format!(
            "hardy extension needs |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    Ok(())
}

/// `(1/2π) ∫ h(t) (e^{it}+z)/(e^{it}-z) dt` for a finite atomic sum.
pub fn hardy_extension(h: &AtomicDistribution, z: Complex64) -> Result<Complex64> {
    check_interior(z)?;
    Ok(atomic_extension(h, z))
}

fn atomic_extension(h: &AtomicDistribution, z: Complex64) -> Complex64 {
    h.terms
        .iter()
        .map(|t| t.coef * atom_extension(&t.atom, z))
        .sum()
}

/// Extension of a single (real) atom; the real part is its Poisson integral
/// and the imaginary part its conjugate-Poisson integral.
pub fn atom_extension(a: &PAtom, z: Complex64) -> Complex64 {
    if let Some(c) = a.constant {
        return Complex64::new(c, 0.0);
    }
    a.profile
        .iter()
        .map(|piece| piece_integral(a.arc_center, piece, z))
        .sum::<Complex64>()
        / TWO_PI
}

fn kernel(t: f64, z: Complex64) -> Complex64 {
    let u = Complex64::from_polar(1.0, t);
    (u + z) / (u - z)
}

/// `∫_α^β (e^{it}+z)/(e^{it}-z) dt = -(β-α) - 2i [log(e^{it}-z)]_α^β`
/// along the continuous branch.
fn constant_piece_integral(alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    // arg(e^{it} - z) increases with t; on sub-arcs of length ≤ π/2 it grows
    // by less than 5π/4, which pins the branch of each increment.
    let n = ((beta - alpha) / (0.5 * PI)).ceil().max(1.0) as usize;
    let mut log_change = Complex64::new(0.0, 0.0);
    let mut prev = Complex64::from_polar(1.0, alpha) - z;
    for k in 1..=n {
        let t = if k == n {
            beta
        } else {
            alpha + (beta - alpha) * k as f64 / n as f64
        };
        let next = Complex64::from_polar(1.0, t) - z;
        let mut darg = (next / prev).arg();
        if darg < -0.5 * PI {
            darg += TWO_PI;
        }
        log_change += Complex64::new((next.norm() / prev.norm()).ln(), darg);
        prev = next;
    }
    Complex64::new(-(beta - alpha), 0.0) - 2.0 * Complex64::i() * log_change
}

fn piece_integral(center: f64, piece: &Piece, z: Complex64) -> Complex64 {
    let (a, b) = (center + piece.start, center + piece.end);
    if piece.is_constant() {
        let c = piece.coeffs.first().copied().unwrap_or(0.0);
        return c * constant_piece_integral(a, b, z);
    }
    // Subtract the value at the point of the piece nearest to z so that the
    // remainder vanishes where the kernel peaks.
    let s_star = wrap_angle(z.arg() - center, -PI).clamp(piece.start, piece.end);
    let p_star = piece.eval(s_star);
    let mut total = p_star * constant_piece_integral(a, b, z);
    let gl = GaussLegendre::new(16);
    let scale = (1.0 - z.norm()).max(1e-14);
    let breaks = graded_breakpoints(piece.start, piece.end, 4, &[Hint::new(s_star, scale)], 0.15);
    let (nodes, weights) = gl.composite(&breaks);
    for (s, w) in nodes.iter().zip(&weights) {
        total += (piece.eval(*s) - p_star) * kernel(center + s, z) * *w;
    }
    total
}

/// Increasing radii in `(0, 1)` with the circle grid used on each of them.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialLadder {
    pub radii: Vec<f64>,
    pub circle: CircleGrid,
}

pub const DEFAULT_LADDER: [f64; 5] = [0.5, 0.75, 0.9, 0.99, 0.999];

impl RadialLadder {
    pub fn new(radii: Vec<f64>, circle_nodes: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::invalid("radial ladder needs at least one radius"));
        }
        if radii.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid("ladder radii must be strictly increasing"));
        }
        if !(radii[0] > 0.0 && radii[radii.len() - 1] < 1.0) {
            return Err(Error::invalid("ladder radii must lie in (0, 1)"));
        }
        Ok(RadialLadder {
            radii,
            circle: build_circle_grid(circle_nodes)?,
        })
    }

    pub fn with_nodes(circle_nodes: usize) -> Result<Self> {
        RadialLadder::new(DEFAULT_LADDER.to_vec(), circle_nodes)
    }

    /// Field values on every ladder circle, radius-major.
    pub fn sample<F>(&self, field: &F) -> Result<Vec<Vec<Complex64>>>
    where
        F: Fn(Complex64) -> Result<Complex64> + Sync,
    {
        self.radii
            .iter()
            .map(|r| {
                self.circle
                    .angles
                    .par_iter()
                    .map(|t| field(Complex64::from_polar(*r, *t)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect()
    }
}

impl Default for RadialLadder {
    fn default() -> Self {
        RadialLadder::with_nodes(4096).expect("default ladder is valid")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HpProfile {
    /// Maximum over the ladder.
    pub value: f64,
    /// `(r, ((1/2π) ∫ |w(re^{iθ})|^p dθ)^{1/p})` per radius.
    pub per_radius: Vec<(f64, f64)>,
    /// Relative change between the last two radii.
    pub last_relative_change: f64,
    /// `|Δ_last| / |Δ_prev|` for the increments over the last three radii.
    /// On decade-spaced radii a convergent profile contracts, while
    /// logarithmic growth keeps the ratio near 1.
    pub contraction: f64,
    /// Growth that does not slow down toward the boundary.
    pub growing: bool,
}

/// Largest contraction accepted as ladder-stable.
pub const STABLE_CONTRACTION: f64 = 0.5;

impl HpProfile {
    pub fn is_stable(&self) -> bool {
        !self.growing && self.contraction <= STABLE_CONTRACTION
    }
}

/// Ladder approximation of `sup_r ((1/2π) ∫ |w(re^{iθ})|^p dθ)^{1/p}`.
pub fn hp_norm<F>(field: &F, p: f64, ladder: &RadialLadder) -> Result<HpProfile>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    if !(p > 0.0) {
        return Err(Error::invalid(format!("hp_norm needs p > 0, got {p}")));
    }
    let samples = ladder.sample(field)?;
    let per_radius: Vec<(f64, f64)> = ladder
        .radii
        .iter()
        .zip(&samples)
        .map(|(r, vals)| (*r, ladder.circle.lp_norm(vals, p) / TWO_PI.powf(1.0 / p)))
        .collect();
    let value = per_radius.iter().map(|(_, v)| *v).fold(0.0, f64::max);
    let n = per_radius.len();
    let delta = |i: usize| per_radius[i].1 - per_radius[i - 1].1;
    let (last_relative_change, growing) = if n >= 2 {
        let last = delta(n - 1);
        let rel = last.abs() / per_radius[n - 1].1.abs().max(f64::MIN_POSITIVE);
        let growing = n >= 3 && last > 0.0 && last >= delta(n - 2);
        (rel, growing)
    } else {
        (0.0, false)
    };
    let contraction = if n >= 3 {
        let (last, prev) = (delta(n - 1).abs(), delta(n - 2).abs());
        if last == 0.0 {
            0.0
        } else if prev == 0.0 {
            f64::INFINITY
        } else {
            last / prev
        }
    } else {
        0.0
    };
    Ok(HpProfile {
        value,
        per_radius,
        last_relative_change,
        contraction,
        growing,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pairing {
    /// `(r, ∫ w(re^{iθ}) φ(θ) dθ)` per ladder radius.
    pub sequence: Vec<(f64, Complex64)>,
    /// Linear extrapolation in `1 - r` through the last two radii.
    pub limit: Complex64,
    /// Distance between the last two terms of the sequence.
    pub cauchy_residual: f64,
}

impl Pairing {
    pub fn from_sequence(sequence: Vec<(f64, Complex64)>) -> Self {
        let n = sequence.len();
        let (limit, cauchy_residual) = match n {
            0 => (Complex64::new(0.0, 0.0), f64::INFINITY),
            1 => (sequence[0].1, f64::INFINITY),
            _ => {
                let (r1, i1) = sequence[n - 2];
                let (r2, i2) = sequence[n - 1];
                let limit = i2 + (i2 - i1) * ((1.0 - r2) / (r2 - r1));
                (limit, (i2 - i1).norm())
            }
        };
        Pairing {
            sequence,
            limit,
            cauchy_residual,
        }
    }

    pub fn plus(&self, other: &Pairing) -> Result<Pairing> {
        if self.sequence.len() != other.sequence.len()
            || self
                .sequence
                .iter()
                .zip(&other.sequence)
                .any(|(a, b)| a.0 != b.0)
        {
            return Err(Error::invalid(
                "pairings on different ladders cannot be added",
            ));
        }
        Ok(Pairing::from_sequence(
            self.sequence
                .iter()
                .zip(&other.sequence)
                .map(|(a, b)| (a.0, a.1 + b.1))
                .collect(),
        ))
    }
}

/// `∫ w(re^{iθ}) φ(θ) dθ` along the ladder (no normalization, no
/// conjugation) with an extrapolated limit.
pub fn boundary_pair<F>(field: &F, phi: &TrigPolynomial, ladder: &RadialLadder) -> Result<Pairing>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let mut out = boundary_pair_battery(field, std::slice::from_ref(phi), ladder)?;
    Ok(out.remove(0))
}

/// [`boundary_pair`] for several test functions, sampling the field once.
pub fn boundary_pair_battery<F>(
    field: &F,
    battery: &[TrigPolynomial],
    ladder: &RadialLadder,
) -> Result<Vec<Pairing>>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    if battery
        .iter()
        .any(|phi| 2 * phi.degree() as usize >= ladder.circle.len())
    {
        return Err(Error::invalid(
            "test function degree exceeds the circle grid Nyquist limit",
        ));
    }
    let samples = ladder.sample(field)?;
    Ok(battery
        .iter()
        .map(|phi| {
            let weights: Vec<Complex64> =
                ladder.circle.angles.iter().map(|t| phi.eval(*t)).collect();
            let sequence = ladder
                .radii
                .iter()
                .zip(&samples)
                .map(|(r, vals)| {
                    let s: Complex64 = vals.iter().zip(&weights).map(|(v, w)| v * w).sum();
                    (*r, s * ladder.circle.spacing)
                })
                .collect();
            Pairing::from_sequence(sequence)
        })
        .collect())
}

/// Which harmonic extension the maximal function is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    Poisson,
    ConjugatePoisson,
}

/// `Σ cₙ · (Poisson or conjugate-Poisson integral of aₙ)(z)`.
pub fn harmonic_extension(h: &AtomicDistribution, z: Complex64, which: Extension) -> Complex64 {
    h.terms
        .iter()
        .map(|t| {
            let e = atom_extension(&t.atom, z);
            let part = match which {
                Extension::Poisson => e.re,
                Extension::ConjugatePoisson => e.im,
            };
            t.coef * part
        })
        .sum()
}

/// `∫ (max over ladder radii of |Poisson integral of h|)^p dθ`.
pub fn radial_maximal_lp(
    h: &AtomicDistribution,
    p: f64,
    ladder: &RadialLadder,
    circle: &CircleGrid,
) -> Result<f64> {
    maximal_lp(h, p, ladder, circle, Extension::Poisson)
}

/// As [`radial_maximal_lp`] for the chosen harmonic extension.
pub fn maximal_lp(
    h: &AtomicDistribution,
    p: f64,
    ladder: &RadialLadder,
    circle: &CircleGrid,
    which: Extension,
) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::invalid(format!("p = {p} outside (0, 1]")));
    }
    let maxima: Vec<f64> = circle
        .angles
        .par_iter()
        .map(|t| {
            ladder
                .radii
                .iter()
                .map(|r| harmonic_extension(h, Complex64::from_polar(*r, *t), which).norm())
                .fold(0.0, f64::max)
        })
        .collect();
    Ok(maxima.iter().map(|m| m.powf(p)).sum::<f64>() * circle.spacing)
}
