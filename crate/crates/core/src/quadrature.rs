//! Quadrature grids on the unit disk and the unit circle.
//!
//! Three families live here:
//!
//! * [`DiskGrid`]: tensor-product midpoint rule in polar coordinates about
//!   the origin. It carries materialized fields and area integrals of
//!   bounded integrands.
//! * [`CircleGrid`]: equispaced trapezoid rule on `[0, 2π)`.
//! * [`KernelCenteredGrid`]: polar rule centered at an evaluation point `z`.
//!   Rays are clipped exactly at the unit circle, so the grid covers the disk
//!   without any far-field complement, and the Jacobian `ρ` cancels the
//!   `1/(ζ - z)` singularity of the Cauchy kernel.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const TWO_PI: f64 = 2.0 * PI;

/// Smallest admissible disk grid resolution.
pub const MIN_RADIAL_NODES: usize = 4;
pub const MIN_ANGULAR_NODES: usize = 8;
pub const MIN_CIRCLE_NODES: usize = 8;

/// Finest angular panel used when grading toward a point singularity.
const ANGULAR_FLOOR: f64 = 1e-9;
/// Finest radial panel used when grading along a ray.
const RADIAL_FLOOR: f64 = 1e-13;

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on the Legendre recurrence, started from the
    /// Chebyshev-like asymptotic guess.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Appends the nodes and weights of this rule mapped onto `[a, b]`.
    pub fn push_mapped(&self, a: f64, b: f64, nodes: &mut Vec<f64>, weights: &mut Vec<f64>) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    }

    /// Composite rule over consecutive breakpoints.
    pub fn composite(&self, breakpoints: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let cap = breakpoints.len().saturating_sub(1) * self.len();
        let mut nodes = Vec::with_capacity(cap);
        let mut weights = Vec::with_capacity(cap);
        for pair in breakpoints.windows(2) {
            self.push_mapped(pair[0], pair[1], &mut nodes, &mut weights);
        }
        (nodes, weights)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A point where an integrand is singular or nearly so, together with the
/// length scale on which it varies there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hint {
    pub at: f64,
    pub scale: f64,
}

impl Hint {
    pub fn new(at: f64, scale: f64) -> Self {
        Hint { at, scale }
    }
}

/// Breakpoints for a composite rule on `[a, b]`: `base_panels` uniform
/// panels, refined geometrically (factor `ratio`) toward every hint until the
/// panel next to the hint is no longer than the hint's scale.
pub fn graded_breakpoints(
    a: f64,
    b: f64,
    base_panels: usize,
    hints: &[Hint],
    ratio: f64,
) -> Vec<f64> {
    debug_assert!(b > a);
    debug_assert!(ratio > 0.0 && ratio < 1.0);
    let base_panels = base_panels.max(1);
    let mut pts: Vec<f64> = (0..=base_panels)
        .map(|k| a + (b - a) * k as f64 / base_panels as f64)
        .collect();
    pts[base_panels] = b;
    for h in hints {
        if !(h.at >= a && h.at <= b) || !h.scale.is_finite() {
            continue;
        }
        let scale = h.scale.max(f64::MIN_POSITIVE);
        if h.at > a && h.at < b {
            pts.push(h.at);
        }
        for (side, reach) in [(-1.0, h.at - a), (1.0, b - h.at)] {
            if reach <= scale {
                continue;
            }
            let mut d = reach;
            loop {
                d *= ratio;
                if d < scale {
                    pts.push(h.at + side * scale);
                    break;
                }
                pts.push(h.at + side * d);
            }
        }
    }
    pts.retain(|x| *x >= a && *x <= b);
    pts.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
    pts.dedup();
    pts
}

/// Tensor-product midpoint rule in polar coordinates about the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGrid {
    pub radial_nodes: Vec<f64>,
    pub angular_nodes: Vec<f64>,
    /// Area weights `r Δr Δθ`, indexed like [`DiskGrid::node_points`].
    pub weights: Vec<f64>,
    /// Nodes in radial-major order: index `i * n_theta + j`.
    pub node_points: Vec<Complex64>,
}

impl DiskGrid {
    pub fn n_r(&self) -> usize {
        self.radial_nodes.len()
    }

    pub fn n_theta(&self) -> usize {
        self.angular_nodes.len()
    }

    pub fn len(&self) -> usize {
        self.node_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_points.is_empty()
    }

    pub fn dr(&self) -> f64 {
        1.0 / self.n_r() as f64
    }

    pub fn dtheta(&self) -> f64 {
        TWO_PI / self.n_theta() as f64
    }

    /// Stable identifier, used to tie field samples to the grid they live on.
    pub fn id(&self) -> String {
        format!("disk:{}x{}", self.n_r(), self.n_theta())
    }

    pub fn integrate<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        self.node_points
            .iter()
            .zip(&self.weights)
            .map(|(z, w)| f(*z) * *w)
            .sum()
    }

    pub fn integrate_real<F: Fn(Complex64) -> f64>(&self, f: F) -> f64 {
        self.node_points
            .iter()
            .zip(&self.weights)
            .map(|(z, w)| f(*z) * *w)
            .sum()
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

pub fn build_disk_grid(n_r: usize, n_theta: usize) -> Result<DiskGrid> {
    if n_r < MIN_RADIAL_NODES || n_theta < MIN_ANGULAR_NODES {
        return Err(Error::invalid(format!(
            "disk grid {n_r}x{n_theta} below minimum {MIN_RADIAL_NODES}x{MIN_ANGULAR_NODES}"
        )));
    }
    let dr = 1.0 / n_r as f64;
    let dt = TWO_PI / n_theta as f64;
    let radial_nodes: Vec<f64> = (0..n_r).map(|i| (i as f64 + 0.5) * dr).collect();
    let angular_nodes: Vec<f64> = (0..n_theta).map(|j| (j as f64 + 0.5) * dt).collect();
    let mut weights = Vec::with_capacity(n_r * n_theta);
    let mut node_points = Vec::with_capacity(n_r * n_theta);
    for &r in &radial_nodes {
        for &t in &angular_nodes {
            weights.push(r * dr * dt);
            node_points.push(Complex64::from_polar(r, t));
        }
    }
    Ok(DiskGrid {
        radial_nodes,
        angular_nodes,
        weights,
        node_points,
    })
}

/// Equispaced nodes on the circle with the trapezoid rule.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleGrid {
    pub angles: Vec<f64>,
    pub spacing: f64,
}

impl CircleGrid {
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn id(&self) -> String {
        format!("circle:{}", self.len())
    }

    /// Points `r e^{iθ_j}`.
    pub fn points(&self, r: f64) -> Vec<Complex64> {
        self.angles
            .iter()
            .map(|t| Complex64::from_polar(r, *t))
            .collect()
    }

    /// Trapezoid rule `Σ v_j Δθ`.
    pub fn sum(&self, values: &[Complex64]) -> Complex64 {
        values.iter().sum::<Complex64>() * self.spacing
    }

    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        self.angles.iter().map(|t| f(*t)).sum::<Complex64>() * self.spacing
    }

    pub fn integrate_real<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.angles.iter().map(|t| f(*t)).sum::<f64>() * self.spacing
    }

    /// Discrete `L^γ(dθ)` norm of samples on this grid.
    pub fn lp_norm(&self, values: &[Complex64], p: f64) -> f64 {
        let s: f64 = values.iter().map(|v| v.norm().powf(p)).sum();
        (s * self.spacing).powf(1.0 / p)
    }
}

pub fn build_circle_grid(n: usize) -> Result<CircleGrid> {
    if n < MIN_CIRCLE_NODES {
        return Err(Error::invalid(format!(
            "circle grid needs at least {MIN_CIRCLE_NODES} nodes, got {n}"
        )));
    }
    let spacing = TWO_PI / n as f64;
    Ok(CircleGrid {
        angles: (0..n).map(|j| j as f64 * spacing).collect(),
        spacing,
    })
}

/// One node of a kernel-centered grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenteredNode {
    /// `ζ = z + ρ e^{iφ}`.
    pub point: Complex64,
    /// `ρ e^{iφ}`, kept separately so `ζ - z` carries full relative
    /// precision when `ρ` is tiny.
    pub offset: Complex64,
    /// Area weight including the polar Jacobian `ρ`.
    pub weight: f64,
}

/// Resolution of a kernel-centered grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenteredResolution {
    /// Gauss nodes per radial panel.
    pub n_rho: usize,
    /// Gauss nodes per angular panel.
    pub n_phi: usize,
    /// Uniform angular panels before grading.
    pub phi_panels: usize,
    /// Longest radial panel before grading.
    pub max_rho_panel: f64,
    /// Radius of the near-field panel `[0, r_nf]` on every ray.
    pub near_field_radius: f64,
    /// Geometric grading factor.
    pub ratio: f64,
}

impl Default for CenteredResolution {
    fn default() -> Self {
        CenteredResolution {
            n_rho: 10,
            n_phi: 10,
            phi_panels: 8,
            max_rho_panel: 0.5,
            near_field_radius: 0.1,
            ratio: 0.15,
        }
    }
}

/// Polar quadrature around `center`, clipped along each ray at the unit
/// circle.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCenteredGrid {
    pub center: Complex64,
    pub nodes: Vec<CenteredNode>,
}

impl KernelCenteredGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.nodes.iter().map(|n| n.weight).sum()
    }

    /// Builds the grid for a center in the closed disk, grading the angular
    /// and radial panels toward the geometric features of the clipped rays
    /// and toward the given integrand singularities.
    pub fn build(
        center: Complex64,
        res: &CenteredResolution,
        singular_points: &[Complex64],
    ) -> Result<Self> {
        let m2 = center.norm_sqr();
        if !(m2 <= 1.0 + 1e-12) || !m2.is_finite() {
            return Err(Error::domain(format!(
                "kernel center {center} lies outside the closed unit disk"
            )));
        }
        let gauss_phi = GaussLegendre::new(res.n_phi);
        let gauss_rho = GaussLegendre::new(res.n_rho);
        let modulus = m2.sqrt();
        let gap = (1.0 - m2).max(0.0);
        let phi_c = if modulus > 0.0 { center.arg() } else { 0.0 };

        // Angular breakpoints, measured relative to the outward direction.
        let on_circle = gap < 1e-14;
        let (lo, hi) = if on_circle {
            (0.5 * PI, 1.5 * PI)
        } else {
            (-PI, PI)
        };
        let mut hints = Vec::new();
        if !on_circle && modulus > 0.0 {
            let tangent = 0.5 * gap.sqrt();
            hints.push(Hint::new(-0.5 * PI, tangent));
            hints.push(Hint::new(0.5 * PI, tangent));
            hints.push(Hint::new(0.0, 0.5 * (1.0 - modulus)));
        }
        for s in singular_points {
            let d = *s - center;
            if d.norm() < 1e-300 {
                continue;
            }
            let rel = wrap_angle(d.arg() - phi_c, lo);
            hints.push(Hint::new(rel, ANGULAR_FLOOR));
            // The angular interval is periodic: grade on both sides of a seam.
            hints.push(Hint::new(rel + TWO_PI, ANGULAR_FLOOR));
            hints.push(Hint::new(rel - TWO_PI, ANGULAR_FLOOR));
        }
        let panels = if on_circle {
            res.phi_panels.div_ceil(2)
        } else {
            res.phi_panels
        };
        let phi_breaks = graded_breakpoints(lo, hi, panels, &hints, res.ratio);
        let (phis, wphis) = gauss_phi.composite(&phi_breaks);

        let mut nodes = Vec::with_capacity(phis.len() * 4 * res.n_rho);
        let mut rho_hints = Vec::new();
        let mut rho_nodes = Vec::new();
        let mut rho_weights = Vec::new();
        for (rel, wphi) in phis.iter().zip(&wphis) {
            let phi = phi_c + rel;
            let dir = Complex64::from_polar(1.0, phi);
            let b = (center * dir.conj()).re;
            let disc = (b * b + gap).sqrt();
            let rho_max = if b > 0.0 { gap / (b + disc) } else { disc - b };
            if !(rho_max > 0.0) {
                continue;
            }
            rho_hints.clear();
            if gap < 0.1 {
                rho_hints.push(Hint::new(0.0, gap.max(RADIAL_FLOOR)));
            }
            for s in singular_points {
                let rel_s = (*s - center) * dir.conj();
                let foot = rel_s.re.clamp(0.0, rho_max);
                let dist = (rel_s - foot).norm().max(RADIAL_FLOOR);
                rho_hints.push(Hint::new(foot, dist));
            }
            let base = (rho_max / res.max_rho_panel).ceil().max(1.0) as usize;
            let mut breaks = graded_breakpoints(0.0, rho_max, base, &rho_hints, res.ratio);
            if res.near_field_radius < rho_max {
                breaks.push(res.near_field_radius);
                breaks.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
                breaks.dedup();
            }
            rho_nodes.clear();
            rho_weights.clear();
            for pair in breaks.windows(2) {
                gauss_rho.push_mapped(pair[0], pair[1], &mut rho_nodes, &mut rho_weights);
            }
            for (rho, wrho) in rho_nodes.iter().zip(&rho_weights) {
                let offset = dir * *rho;
                nodes.push(CenteredNode {
                    point: center + offset,
                    offset,
                    weight: wphi * wrho * rho,
                });
            }
        }
        Ok(KernelCenteredGrid { center, nodes })
    }
}

/// Public constructor with default grading: `n_rho` and `n_phi` are the
/// Gauss nodes per radial and angular panel.
pub fn build_kernel_centered_grid(
    z: Complex64,
    n_rho: usize,
    n_phi: usize,
) -> Result<KernelCenteredGrid> {
    if !(z.norm() < 1.0 - 1e-9) {
        return Err(Error::domain(format!(
            "kernel-centered grid needs |z| < 1 - 1e-9, got |z| = {}",
            z.norm()
        )));
    }
    if n_rho == 0 || n_phi == 0 {
        return Err(Error::invalid(
            "kernel-centered grid needs positive node counts",
        ));
    }
    let res = CenteredResolution {
        n_rho,
        n_phi,
        ..CenteredResolution::default()
    };
    KernelCenteredGrid::build(z, &res, &[])
}

/// Maps `angle` into `[lo, lo + 2π)`.
pub fn wrap_angle(angle: f64, lo: f64) -> f64 {
    let mut a = (angle - lo).rem_euclid(TWO_PI) + lo;
    if a >= lo + TWO_PI {
        a -= TWO_PI;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let g = GaussLegendre::new(6);
        for k in 0..12 {
            let exact = if k % 2 == 1 {
                0.0
            } else {
                2.0 / (k as f64 + 1.0)
            };
            let got: f64 = g
                .nodes
                .iter()
                .zip(&g.weights)
                .map(|(x, w)| w * x.powi(k))
                .sum();
            assert_abs_diff_eq!(got, exact, epsilon = 1e-14);
        }
    }

    #[test]
    fn graded_breakpoints_reach_the_scale() {
        let b = graded_breakpoints(0.0, 1.0, 2, &[Hint::new(0.3, 1e-6)], 0.2);
        assert!(b.windows(2).all(|w| w[1] > w[0]));
        let nearest = b
            .iter()
            .filter(|x| **x != 0.3)
            .map(|x| (x - 0.3).abs())
            .fold(f64::INFINITY, f64::min);
        assert!(nearest <= 1e-6 * 1.0001);
        assert!(b.contains(&0.3));
    }

    #[test]
    fn disk_grid_small() {
        let g = build_disk_grid(4, 8).unwrap();
        assert_eq!(g.len(), 32);
        assert!(g.node_points.iter().all(|z| z.norm() < 1.0));
        assert!(g.weights.iter().all(|w| *w > 0.0));
    }

    #[test]
    fn disk_grid_area_and_second_moment() {
        let g = build_disk_grid(64, 128).unwrap();
        assert!((g.weight_sum() - PI).abs() < 0.01);
        let g = build_disk_grid(200, 400).unwrap();
        let m2 = g.integrate_real(|z| z.norm_sqr());
        assert!((m2 - PI / 2.0).abs() < 1e-3);
    }

    #[test]
    fn disk_grid_rejects_low_resolution() {
        assert!(matches!(
            build_disk_grid(3, 8),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            build_disk_grid(4, 7),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn circle_grid_basics() {
        let c = build_circle_grid(8).unwrap();
        for (j, t) in c.angles.iter().enumerate() {
            assert_abs_diff_eq!(*t, j as f64 * PI / 4.0, epsilon = 1e-15);
        }
        let c = build_circle_grid(64).unwrap();
        assert_abs_diff_eq!(c.integrate_real(|t| (3.0 * t).cos()), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.integrate_real(|_| 1.0), TWO_PI, epsilon = 1e-12);
        assert!(matches!(
            build_circle_grid(7),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn kernel_centered_grid_covers_disk() {
        for z in [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(-0.3, 0.6),
            Complex64::new(0.9, 0.0),
            Complex64::new(0.0, -0.999),
        ] {
            let g = build_kernel_centered_grid(z, 8, 8).unwrap();
            assert!(g.nodes.iter().all(|n| n.point.norm() < 1.0), "z = {z}");
            assert!(g.nodes.iter().all(|n| n.weight > 0.0));
            assert!(
                (g.weight_sum() - PI).abs() < 1e-2,
                "z = {z}: {}",
                g.weight_sum()
            );
            let m1: Complex64 = g.nodes.iter().map(|n| n.point * n.weight).sum();
            assert!(m1.norm() < 1e-8);
            let m2: f64 = g.nodes.iter().map(|n| n.point.norm_sqr() * n.weight).sum();
            assert!((m2 - PI / 2.0).abs() < 1e-8);
        }
        assert!(matches!(
            build_kernel_centered_grid(Complex64::new(1.0, 0.0), 8, 8),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn kernel_centered_grid_at_origin_is_polar_about_origin() {
        let g = build_kernel_centered_grid(Complex64::new(0.0, 0.0), 6, 6).unwrap();
        for n in &g.nodes {
            assert!((n.point - n.offset).norm() == 0.0);
        }
    }
}
