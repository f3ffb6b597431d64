//! p-atoms on arcs of the circle and finite atomic distributions `Σ cₙ aₙ`.
//!
//! Atom profiles are piecewise polynomials in the lifted angle, so support,
//! size and moment conditions are checked by exact polynomial integration.
//! An arc `J` is described by its center and length; points of `J` are
//! parametrized by the continuous branch `θ = center + s`, `|s| ≤ |J|/2`,
//! which may leave `[0, 2π)` when the arc wraps around `θ = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{wrap_angle, TWO_PI};
use crate::verify::{Measurement, Verdict, VerificationReport};

/// A polynomial piece `Σ coeffs[k] s^k` on `s ∈ [start, end]`, where `s` is
/// the offset from the arc center.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    pub coeffs: Vec<f64>,
}

impl Piece {
    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| *c == 0.0)
    }

    /// `max |p|` on the piece from the endpoints and a dense interior scan
    /// (profiles are low degree).
    pub fn sup_abs(&self) -> f64 {
        let mut best = self.eval(self.start).abs().max(self.eval(self.end).abs());
        let n = 64 * self.coeffs.len().max(1);
        let h = (self.end - self.start) / n as f64;
        for i in 1..n {
            best = best.max(self.eval(self.start + i as f64 * h).abs());
        }
        best
    }
}

/// A p-atom: piecewise-polynomial profile on an arc, or the exceptional
/// constant atom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PAtom {
    pub p: f64,
    pub arc_center: f64,
    pub arc_length: f64,
    pub profile: Vec<Piece>,
    /// `Some(c)` for the constant atom `a ≡ c`, `|c| ≤ 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<f64>,
}

/// Highest moment order `k` with `k ≤ 1/p - 1`.
pub fn moment_order(p: f64) -> usize {
    (1.0 / p - 1.0 + 1e-12).floor().max(0.0) as usize
}

fn check_arc(p: f64, arc_length: f64) -> Result<()> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::invalid(format!("p = {p} outside (0, 1]")));
    }
    if !(arc_length > 0.0 && arc_length <= TWO_PI + 1e-12) {
        return Err(Error::invalid(format!(
            "arc length {arc_length} outside (0, 2π]"
        )));
    }
    Ok(())
}

/// `+|J|^{-1/p}` on the first half of the arc, `-|J|^{-1/p}` on the second.
pub fn make_haar_atom(p: f64, arc_center: f64, arc_length: f64) -> Result<PAtom> {
    check_arc(p, arc_length)?;
    if p <= 0.5 {
        return Err(Error::MomentOrderUnsupported {
            p,
            k_max: moment_order(p),
        });
    }
    let amp = arc_length.powf(-1.0 / p);
    let half = 0.5 * arc_length;
    Ok(PAtom {
        p,
        arc_center: arc_center.rem_euclid(TWO_PI),
        arc_length,
        profile: vec![
            Piece {
                start: -half,
                end: 0.0,
                coeffs: vec![amp],
            },
            Piece {
                start: 0.0,
                end: half,
                coeffs: vec![-amp],
            },
        ],
        constant: None,
    })
}

/// Atom with vanishing moments of orders `0..=k_max`.
///
/// For `k_max = 0` this is the Haar atom. Otherwise the profile is the
/// Legendre polynomial `P_{k_max+1}` in the rescaled arc variable, which is
/// orthogonal to every polynomial of degree `≤ k_max` on the arc. The
/// Legendre coefficients come from the three-term recurrence, and the
/// orthogonality is re-verified by exact integration before returning.
pub fn make_moment_atom(p: f64, k_max: usize, arc_center: f64, arc_length: f64) -> Result<PAtom> {
    check_arc(p, arc_length)?;
    if k_max != moment_order(p) {
        return Err(Error::invalid(format!(
            "k_max = {k_max} but p = {p} requires k_max = {}",
            moment_order(p)
        )));
    }
    if k_max == 0 {
        return make_haar_atom(p, arc_center, arc_length);
    }
    let degree = k_max + 1;
    let legendre = legendre_coeffs(degree);
    // P_n(2s/L): scale monomial coefficients.
    let half = 0.5 * arc_length;
    let amp = arc_length.powf(-1.0 / p);
    let coeffs: Vec<f64> = legendre
        .iter()
        .enumerate()
        .map(|(k, c)| amp * c / half.powi(k as i32))
        .collect();
    let atom = PAtom {
        p,
        arc_center: arc_center.rem_euclid(TWO_PI),
        arc_length,
        profile: vec![Piece {
            start: -half,
            end: half,
            coeffs,
        }],
        constant: None,
    };
    let report = validate_atom(&atom, 1e-12);
    if report.verdict != Verdict::Pass {
        return Err(Error::ConstructionFailure(format!(
            "moment atom failed validation: {:?}",
            report.measured
        )));
    }
    Ok(atom)
}

/// The constant atom `a ≡ c`.
pub fn make_constant_atom(p: f64, c: f64) -> Result<PAtom> {
    check_arc(p, TWO_PI)?;
    if !(c.abs() <= 1.0) {
        return Err(Error::invalid(format!(
            "constant atom value {c} exceeds 1 in modulus"
        )));
    }
    Ok(PAtom {
        p,
        arc_center: PI,
        arc_length: TWO_PI,
        profile: vec![Piece {
            start: -PI,
            end: PI,
            coeffs: vec![c],
        }],
        constant: Some(c),
    })
}

/// Monomial coefficients of the Legendre polynomial `P_n`.
fn legendre_coeffs(n: usize) -> Vec<f64> {
    let mut p0 = vec![1.0];
    if n == 0 {
        return p0;
    }
    let mut p1 = vec![0.0, 1.0];
    for k in 1..n {
        let k = k as f64;
        let mut next = vec![0.0; p1.len() + 1];
        for (i, c) in p1.iter().enumerate() {
            next[i + 1] += (2.0 * k + 1.0) * c / (k + 1.0);
        }
        for (i, c) in p0.iter().enumerate() {
            next[i] -= k * c / (k + 1.0);
        }
        p0 = p1;
        p1 = next;
    }
    p1
}

/// `∫_a^b x^k dx` without the cancellation of `b^{k+1} - a^{k+1}`.
fn monomial_integral(a: f64, b: f64, k: usize) -> f64 {
    // (b^{k+1} - a^{k+1})/(k+1) = (b - a) Σ_{i=0}^{k} b^i a^{k-i} / (k+1)
    let mut sum = 0.0;
    for i in 0..=k {
        sum += b.powi(i as i32) * a.powi((k - i) as i32);
    }
    (b - a) * sum / (k as f64 + 1.0)
}

impl PAtom {
    pub fn is_constant(&self) -> bool {
        self.constant.is_some()
    }

    /// Offset of `θ` from the arc center, if `θ` lies on the arc.
    pub fn arc_offset(&self, theta: f64) -> Option<f64> {
        let s = wrap_angle(theta - self.arc_center, -PI);
        if self.arc_length >= TWO_PI - 1e-12 || s.abs() <= 0.5 * self.arc_length {
            Some(s)
        } else {
            None
        }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        if let Some(c) = self.constant {
            return c;
        }
        let Some(s) = self.arc_offset(theta) else {
            return 0.0;
        };
        // Half-open pieces so that a jump point belongs to exactly one side.
        let last = self.profile.len().saturating_sub(1);
        for (i, piece) in self.profile.iter().enumerate() {
            if s >= piece.start && (s < piece.end || (i == last && s <= piece.end)) {
                return piece.eval(s);
            }
        }
        0.0
    }

    /// Size bound `|J|^{-1/p}` (or 1 for the constant atom).
    pub fn size_bound(&self) -> f64 {
        if self.is_constant() {
            1.0
        } else {
            self.arc_length.powf(-1.0 / self.p)
        }
    }

    pub fn sup_abs(&self) -> f64 {
        self.profile.iter().map(Piece::sup_abs).fold(0.0, f64::max)
    }

    /// Literal moment `∫ a(θ) θ^k dθ` over the lifted arc, computed exactly
    /// as `Σ_j binom(k, j) center^{k-j} ∫ p(s) s^j ds` so that short arcs far
    /// from the origin do not lose precision.
    pub fn moment(&self, k: usize) -> f64 {
        let c = self.arc_center;
        let mut total = 0.0;
        let mut binom = 1.0;
        for j in 0..=k {
            if j > 0 {
                binom = binom * (k - j + 1) as f64 / j as f64;
            }
            let local: f64 = self
                .profile
                .iter()
                .map(|piece| {
                    piece
                        .coeffs
                        .iter()
                        .enumerate()
                        .map(|(i, ci)| ci * monomial_integral(piece.start, piece.end, i + j))
                        .sum::<f64>()
                })
                .sum();
            total += binom * c.powi((k - j) as i32) * local;
        }
        total
    }

    /// Scale for moment residuals: `∫ |a(θ)| |θ|^k dθ` bounded by
    /// `sup|a| · ∫ |θ|^k`.
    fn moment_scale(&self, k: usize) -> f64 {
        let a = self.arc_center - 0.5 * self.arc_length;
        let b = self.arc_center + 0.5 * self.arc_length;
        let abs_int = if a >= 0.0 {
            monomial_integral(a, b, k)
        } else {
            monomial_integral(0.0, -a, k) + monomial_integral(0.0, b, k)
        };
        self.sup_abs() * abs_int
    }

    /// `(1/2π) ∫ a(t) e^{-int} dt` by Gauss-Legendre on each piece (exact up
    /// to rounding for the polynomial degrees used here once enough nodes are
    /// taken).
    pub fn fourier_coefficient(&self, n: i64) -> Complex64 {
        let g = crate::quadrature::GaussLegendre::new(24);
        let mut acc = Complex64::new(0.0, 0.0);
        for piece in &self.profile {
            let len = piece.end - piece.start;
            let panels = ((len * (n.unsigned_abs() as f64 + 1.0)) / 2.0)
                .ceil()
                .max(1.0) as usize;
            for k in 0..panels {
                let a = piece.start + len * k as f64 / panels as f64;
                let b = piece.start + len * (k + 1) as f64 / panels as f64;
                let (half, mid) = (0.5 * (b - a), 0.5 * (a + b));
                for (x, w) in g.nodes.iter().zip(&g.weights) {
                    let s = mid + half * x;
                    let t = self.arc_center + s;
                    acc += piece.eval(s) * Complex64::from_polar(1.0, -(n as f64) * t) * (half * w);
                }
            }
        }
        acc / TWO_PI
    }
}

/// Checks support, size and every required moment.
pub fn validate_atom(a: &PAtom, tol: f64) -> VerificationReport {
    let mut measured = Vec::new();
    let mut notes = vec!["moments use θ^k on the continuous branch of θ along the arc".to_string()];
    if let Some(c) = a.constant {
        measured.push(Measurement::new("size_excess", (c.abs() - 1.0).max(0.0)));
        notes.push("constant atom: moment conditions do not apply".into());
    } else {
        let half = 0.5 * a.arc_length;
        let support = a
            .profile
            .iter()
            .map(|p| (p.start.abs() - half).max(0.0).max(p.end.abs() - half))
            .fold(0.0, f64::max);
        measured.push(Measurement::new("support_excess", support));
        let bound = a.size_bound();
        measured.push(Measurement::new(
            "size_excess",
            ((a.sup_abs() - bound) / bound).max(0.0),
        ));
        for k in 0..=moment_order(a.p) {
            let scale = a.moment_scale(k).max(f64::MIN_POSITIVE);
            measured.push(Measurement::new(
                format!("moment_{k}"),
                a.moment(k).abs() / scale,
            ));
        }
    }
    VerificationReport::from_residuals(
        "atoms.validate",
        "p-atom conditions: support, |a| ≤ |J|^{-1/p}, vanishing θ^k moments",
        &a,
        measured,
        tol,
    )
    .with_notes(notes)
}

/// Finite atomic sum `Σ cₙ aₙ`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AtomicDistribution {
    pub terms: Vec<AtomicTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomicTerm {
    pub coef: Complex64,
    pub atom: PAtom,
}

impl AtomicDistribution {
    pub fn new() -> Self {
        AtomicDistribution::default()
    }

    pub fn single(coef: Complex64, atom: PAtom) -> Self {
        AtomicDistribution {
            terms: vec![AtomicTerm { coef, atom }],
        }
    }

    pub fn push(&mut self, coef: Complex64, atom: PAtom) {
        self.terms.push(AtomicTerm { coef, atom });
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common `p` of the atoms, or an error if they disagree.
    pub fn common_p(&self) -> Result<Option<f64>> {
        let mut p = None;
        for t in &self.terms {
            match p {
                None => p = Some(t.atom.p),
                Some(q) if (q - t.atom.p).abs() > 1e-12 => {
                    return Err(Error::invalid(format!(
                        "mixed p-labels {q} and {}",
                        t.atom.p
                    )))
                }
                _ => {}
            }
        }
        Ok(p)
    }

    /// `Σ |cₙ|^p`, recorded for the ℓ^p condition.
    pub fn coefficient_lp_sum(&self, p: f64) -> f64 {
        self.terms.iter().map(|t| t.coef.norm().powf(p)).sum()
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.coef.im == 0.0)
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        AtomicDistribution {
            terms: self
                .terms
                .iter()
                .map(|t| AtomicTerm {
                    coef: t.coef * s,
                    atom: t.atom.clone(),
                })
                .collect(),
        }
    }

    /// Validates every atom at `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        for (i, t) in self.terms.iter().enumerate() {
            if !(t.coef.re.is_finite() && t.coef.im.is_finite()) {
                return Err(Error::invalid(format!(
                    "non-finite coefficient in term {i}"
                )));
            }
            let r = validate_atom(&t.atom, tol);
            if r.verdict != Verdict::Pass {
                return Err(Error::invalid(format!(
                    "term {i} is not a p-atom: {:?}",
                    r.measured
                )));
            }
        }
        Ok(())
    }
}

/// `(Σ |cₙ|^p)^{1/p}` for this particular representation: an upper bound for
/// the infimum over equivalent decompositions.
pub fn quasinorm_upper(d: &AtomicDistribution, p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::invalid(format!("p = {p} outside (0, 1]")));
    }
    if let Some(q) = d.common_p()? {
        if (q - p).abs() > 1e-12 {
            return Err(Error::invalid(format!(
                "distribution has p = {q}, asked for {p}"
            )));
        }
    }
    Ok(d.coefficient_lp_sum(p).powf(1.0 / p))
}

/// Pointwise value `Σ cₙ aₙ(θ)`.
pub fn eval_atomic(d: &AtomicDistribution, theta: f64) -> Complex64 {
    d.terms.iter().map(|t| t.coef * t.atom.eval(theta)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn haar_full_circle() {
        let a = make_haar_atom(1.0, 0.0, TWO_PI).unwrap();
        assert_abs_diff_eq!(a.moment(0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.sup_abs(), 1.0 / TWO_PI, epsilon = 1e-15);
        assert_eq!(validate_atom(&a, 1e-12).verdict, Verdict::Pass);
    }

    #[test]
    fn haar_size_is_tight() {
        let a = make_haar_atom(1.0, PI, PI / 2.0).unwrap();
        assert_abs_diff_eq!(a.sup_abs(), 2.0 / PI, epsilon = 1e-15);
        assert_abs_diff_eq!(a.sup_abs(), a.size_bound(), epsilon = 1e-15);
    }

    #[test]
    fn haar_three_quarters() {
        let a = make_haar_atom(0.75, 0.0, 1.0).unwrap();
        assert_eq!(moment_order(0.75), 0);
        assert_abs_diff_eq!(a.moment(0), 0.0, epsilon = 1e-15);
        assert_eq!(validate_atom(&a, 1e-12).verdict, Verdict::Pass);
    }

    #[test]
    fn haar_rejects_small_p() {
        assert!(matches!(
            make_haar_atom(0.5, 0.0, 1.0),
            Err(Error::MomentOrderUnsupported { .. })
        ));
        assert!(make_haar_atom(1.0, 0.0, 0.0).is_err());
        assert!(make_haar_atom(1.0, 0.0, 7.0).is_err());
    }

    #[test]
    fn moment_atom_with_two_moments() {
        assert_eq!(moment_order(0.4), 1);
        let a = make_moment_atom(0.4, 1, 2.0, 0.8).unwrap();
        let r = validate_atom(&a, 1e-12);
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.measured);
        // Moments against θ^0 and θ^1 computed independently by dense
        // Simpson quadrature.
        let n = 20000;
        let (lo, hi) = (2.0 - 0.4, 2.0 + 0.4);
        let h = (hi - lo) / n as f64;
        for k in 0..2 {
            let mut s = 0.0;
            for i in 0..=n {
                let t = lo + i as f64 * h;
                let w = if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                s += w * a.eval(t) * t.powi(k);
            }
            assert!((s * h / 3.0).abs() < 1e-9);
        }
        assert!(make_moment_atom(0.4, 0, 2.0, 0.8).is_err());
        assert_eq!(
            make_moment_atom(1.0, 0, 1.0, 1.0).unwrap(),
            make_haar_atom(1.0, 1.0, 1.0).unwrap()
        );
    }

    #[test]
    fn tiny_arcs_stay_valid() {
        for len in [1e-1, 1e-2, 1e-3] {
            let a = make_moment_atom(0.3, moment_order(0.3), 6.0, len).unwrap();
            assert!(a.size_bound() > 1.0);
            assert_eq!(validate_atom(&a, 1e-12).verdict, Verdict::Pass);
        }
    }

    #[test]
    fn wrapping_arc_uses_continuous_branch() {
        let a = make_moment_atom(0.4, 1, 0.1, 1.0).unwrap();
        assert_eq!(validate_atom(&a, 1e-12).verdict, Verdict::Pass);
        assert!(a.eval(6.2) != 0.0);
        assert_eq!(a.eval(3.0), 0.0);
    }

    #[test]
    fn doubled_amplitude_is_a_size_violation() {
        let mut a = make_haar_atom(1.0, 1.0, 1.0).unwrap();
        for piece in &mut a.profile {
            piece.coeffs[0] *= 2.0;
        }
        let r = validate_atom(&a, 1e-12);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r
            .measured
            .iter()
            .any(|m| m.name == "size_excess" && m.value > 0.5));
    }

    #[test]
    fn constant_atom() {
        let a = make_constant_atom(1.0, 1.0).unwrap();
        assert_eq!(validate_atom(&a, 1e-12).verdict, Verdict::Pass);
        assert_eq!(a.eval(4.0), 1.0);
        assert!(make_constant_atom(1.0, 1.5).is_err());
    }

    #[test]
    fn quasinorm_examples() {
        let a = make_haar_atom(1.0, 0.0, 1.0).unwrap();
        let d = AtomicDistribution::single(Complex64::new(1.0, 0.0), a.clone());
        assert_abs_diff_eq!(quasinorm_upper(&d, 1.0).unwrap(), 1.0);
        let mut d = AtomicDistribution::new();
        d.push(Complex64::new(3.0, 0.0), a.clone());
        d.push(Complex64::new(0.0, 4.0), a);
        assert_abs_diff_eq!(quasinorm_upper(&d, 1.0).unwrap(), 7.0, epsilon = 1e-12);

        let b = make_moment_atom(0.5, 1, 0.0, 1.0).unwrap();
        let mut d = AtomicDistribution::new();
        d.push(Complex64::new(3.0, 0.0), b.clone());
        d.push(Complex64::new(4.0, 0.0), b);
        let expected = (3f64.sqrt() + 2.0).powi(2);
        assert_abs_diff_eq!(quasinorm_upper(&d, 0.5).unwrap(), expected, epsilon = 1e-12);
        assert!((expected - 13.93).abs() < 5e-3);

        let mut mixed = d.clone();
        mixed.push(
            Complex64::new(1.0, 0.0),
            make_haar_atom(1.0, 0.0, 1.0).unwrap(),
        );
        assert!(quasinorm_upper(&mixed, 0.5).is_err());
    }

    #[test]
    fn pointwise_evaluation() {
        assert_eq!(
            eval_atomic(&AtomicDistribution::new(), 1.0),
            Complex64::new(0.0, 0.0)
        );
        let a = make_haar_atom(1.0, 1.0, 0.5).unwrap();
        let d = AtomicDistribution::single(Complex64::new(2.0, 0.0), a);
        assert_abs_diff_eq!(eval_atomic(&d, 0.9).re, 2.0 * 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eval_atomic(&d, 1.1).re, -4.0, epsilon = 1e-12);
        assert_eq!(eval_atomic(&d, 3.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn fourier_coefficients_of_haar_atom() {
        // a = 1 on (-1, 0), -1 on (0, 1) around center 0 with p = 1 and |J| = 2
        // has amplitude 1/2; its n-th coefficient is (1/2π)(1/2)(2i(1 - cos n)/n).
        let a = make_haar_atom(1.0, 0.0, 2.0).unwrap();
        for n in [1i64, 2, 5, -3] {
            let nf = n as f64;
            let expected = Complex64::new(0.0, (1.0 - nf.cos()) / nf) / TWO_PI;
            assert!(
                (a.fourier_coefficient(n) - expected).norm() < 1e-13,
                "n = {n}"
            );
        }
        assert!(a.fourier_coefficient(0).norm() < 1e-15);
    }
}
