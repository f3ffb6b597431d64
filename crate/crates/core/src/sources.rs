//! Catalog of right-hand sides `f` for `∂w/∂z̄ = f`.
//!
//! The catalog is closed: every source knows the exponents `q` for which it
//! lies in `L^q(D)`, and the polynomial and radial members carry closed forms
//! for `T(f)` and `T̃(f)` that serve as test oracles.
//!
//! JSON encoding (internally tagged by `kind`):
//!
//! ```json
//! {"kind": "zero"}
//! {"kind": "monomial", "a": 1, "b": 0}
//! {"kind": "radial_power", "beta": 0.5}
//! {"kind": "arc_bump", "center": 0.0, "width": 1.0, "amplitude": 2.0}
//! {"kind": "linear_combination", "terms": [{"coef": [1.0, 0.0], "source": {"kind": "zero"}}]}
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::DiskGrid;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceTerm {
    Zero,
    /// `ζ^a ζ̄^b`.
    Monomial {
        a: u32,
        b: u32,
    },
    /// `|ζ|^{-β}`, `0 ≤ β < 2`.
    RadialPower {
        beta: f64,
    },
    /// `amplitude · |ζ|² · ψ((arg ζ - center)/width)` with the smooth bump
    /// `ψ(s) = exp(1 - 1/(1 - s²))` on `|s| < 1`.
    ArcBump {
        center: f64,
        width: f64,
        amplitude: f64,
    },
    LinearCombination {
        terms: Vec<Term>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: Complex64,
    pub source: SourceTerm,
}

impl SourceTerm {
    pub fn one() -> Self {
        SourceTerm::Monomial { a: 0, b: 0 }
    }

    pub fn monomial(a: u32, b: u32) -> Self {
        SourceTerm::Monomial { a, b }
    }

    pub fn radial_power(beta: f64) -> Self {
        SourceTerm::RadialPower { beta }
    }

    pub fn arc_bump(center: f64, width: f64, amplitude: f64) -> Self {
        SourceTerm::ArcBump {
            center,
            width,
            amplitude,
        }
    }

    pub fn combination<I: IntoIterator<Item = (Complex64, SourceTerm)>>(terms: I) -> Self {
        SourceTerm::LinearCombination {
            terms: terms
                .into_iter()
                .map(|(coef, source)| Term { coef, source })
                .collect(),
        }
    }

    /// `c · self`, as a one-term combination.
    pub fn scaled(&self, c: Complex64) -> Self {
        SourceTerm::combination([(c, self.clone())])
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SourceTerm::Zero | SourceTerm::Monomial { .. } => Ok(()),
            SourceTerm::RadialPower { beta } => {
                if !(0.0..2.0).contains(beta) {
                    return Err(Error::invalid(format!(
                        "radial power exponent {beta} outside [0, 2)"
                    )));
                }
                Ok(())
            }
            SourceTerm::ArcBump {
                center,
                width,
                amplitude,
            } => {
                if !(center.is_finite() && amplitude.is_finite()) {
                    return Err(Error::invalid("arc bump parameters must be finite"));
                }
                if !(*width > 0.0 && *width <= PI) {
                    return Err(Error::invalid(format!(
                        "arc bump width {width} outside (0, π]"
                    )));
                }
                Ok(())
            }
            SourceTerm::LinearCombination { terms } => {
                for t in terms {
                    if !(t.coef.re.is_finite() && t.coef.im.is_finite()) {
                        return Err(Error::invalid("non-finite combination coefficient"));
                    }
                    t.source.validate()?;
                }
                Ok(())
            }
        }
    }

    /// Supremum of the exponents `q` with `f ∈ L^q(D)` (exclusive for
    /// radial powers, `∞` for bounded sources).
    pub fn max_q(&self) -> f64 {
        match self {
            SourceTerm::RadialPower { beta } if *beta > 0.0 => 2.0 / beta,
            SourceTerm::LinearCombination { terms } => terms
                .iter()
                .filter(|t| t.coef != Complex64::new(0.0, 0.0))
                .map(|t| t.source.max_q())
                .fold(f64::INFINITY, f64::min),
            _ => f64::INFINITY,
        }
    }

    /// Exponent label used when none is given: 2 for bounded sources,
    /// otherwise `min(2, 0.9 · max_q)`.
    pub fn default_q(&self) -> f64 {
        let m = self.max_q();
        if m.is_infinite() {
            2.0
        } else {
            (0.9 * m).min(2.0)
        }
    }

    /// Whether `f ∈ L^q(D)`.
    pub fn in_lq(&self, q: f64) -> bool {
        let m = self.max_q();
        q >= 1.0 && (m.is_infinite() || q < m)
    }

    /// Points of `D̄` where the source is unbounded.
    pub fn singular_points(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        self.collect_singular(&mut out);
        out
    }

    fn collect_singular(&self, out: &mut Vec<Complex64>) {
        match self {
            SourceTerm::RadialPower { beta } if *beta > 0.0 => {
                let origin = Complex64::new(0.0, 0.0);
                if !out.contains(&origin) {
                    out.push(origin);
                }
            }
            SourceTerm::LinearCombination { terms } => {
                for t in terms {
                    t.source.collect_singular(out);
                }
            }
            _ => {}
        }
    }

    /// True when the source is continuous on `D̄`.
    pub fn is_smooth(&self) -> bool {
        self.singular_points().is_empty()
    }

    /// Point value without domain checks; `∞`/NaN at a singular point.
    pub fn sample(&self, z: Complex64) -> Complex64 {
        match self {
            SourceTerm::Zero => Complex64::new(0.0, 0.0),
            SourceTerm::Monomial { a, b } => z.powu(*a) * z.conj().powu(*b),
            SourceTerm::RadialPower { beta } => {
                if *beta == 0.0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(z.norm().powf(-beta), 0.0)
                }
            }
            SourceTerm::ArcBump {
                center,
                width,
                amplitude,
            } => {
                let r2 = z.norm_sqr();
                if r2 == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let s = crate::quadrature::wrap_angle(z.arg() - center, -PI) / width;
                if s.abs() >= 1.0 {
                    return Complex64::new(0.0, 0.0);
                }
                Complex64::new(amplitude * r2 * (1.0 - 1.0 / (1.0 - s * s)).exp(), 0.0)
            }
            SourceTerm::LinearCombination { terms } => {
                terms.iter().map(|t| t.coef * t.source.sample(z)).sum()
            }
        }
    }

    /// Closed form of `T(f)(z)` for polynomial and radial members.
    ///
    /// `T(ζ^a ζ̄^b) = (z^a z̄^{b+1} - [a > b] z^{a-b-1}) / (b+1)` and
    /// `T(|ζ|^{-β}) = 2 z̄ |z|^{-β} / (2 - β)`, both from expanding the
    /// Cauchy kernel in angular Fourier modes.
    pub fn closed_form_t(&self, z: Complex64) -> Option<Complex64> {
        match self {
            SourceTerm::Zero => Some(Complex64::new(0.0, 0.0)),
            SourceTerm::Monomial { a, b } => {
                let (a, b) = (*a, *b);
                let mut v = z.powu(a) * z.conj().powu(b + 1);
                if a > b {
                    v -= z.powu(a - b - 1);
                }
                Some(v / (b as f64 + 1.0))
            }
            SourceTerm::RadialPower { beta } => {
                if *beta == 0.0 {
                    return Some(z.conj());
                }
                let m = z.norm();
                if m == 0.0 {
                    return if *beta < 1.0 {
                        Some(Complex64::new(0.0, 0.0))
                    } else {
                        None
                    };
                }
                Some(2.0 * z.conj() * m.powf(-beta) / (2.0 - beta))
            }
            SourceTerm::ArcBump { .. } => None,
            SourceTerm::LinearCombination { terms } => terms
                .iter()
                .map(|t| t.source.closed_form_t(z).map(|v| t.coef * v))
                .sum(),
        }
    }

    /// Closed form of `T̃(f)(z)`: `T(f)` plus the reflection correction
    /// `-(1/π) ∬ z conj(f)/(1 - ζ̄ z)`, which for `ζ^a ζ̄^b` keeps only the
    /// series term `n = b - a` and equals `-[b ≥ a] z^{b-a+1}/(b+1)`.
    pub fn closed_form_t_tilde(&self, z: Complex64) -> Option<Complex64> {
        match self {
            SourceTerm::Zero => Some(Complex64::new(0.0, 0.0)),
            SourceTerm::Monomial { a, b } => {
                let t = self.closed_form_t(z)?;
                if b >= a {
                    Some(t - z.powu(b - a + 1) / (*b as f64 + 1.0))
                } else {
                    Some(t)
                }
            }
            SourceTerm::RadialPower { beta } => {
                let t = self.closed_form_t(z)?;
                Some(t - 2.0 * z / (2.0 - beta))
            }
            SourceTerm::ArcBump { .. } => None,
            SourceTerm::LinearCombination { terms } => terms
                .iter()
                .map(|t| {
                    t.source.closed_form_t_tilde(z).map(|v| {
                        // conj(c f) = conj(c) conj(f): the reflection part is
                        // antilinear in the coefficient.
                        let tt = t.source.closed_form_t(z).expect("closed form exists");
                        t.coef * tt + t.coef.conj() * (v - tt)
                    })
                })
                .sum(),
        }
    }
}

/// Pointwise value of `f` with domain checks.
pub fn eval_source(f: &SourceTerm, z: Complex64) -> Result<Complex64> {
    if !(z.norm() <= 1.0 + 1e-12) {
        return Err(Error::domain(format!(
            "source evaluated outside the disk at {z}"
        )));
    }
    if f.singular_points().contains(&z) {
        return Err(Error::domain(format!(
            "source evaluated at its singular point {z}"
        )));
    }
    Ok(f.sample(z))
}

/// Discrete `L^q(D)` norm on a disk grid. Divergence shows up as growth
/// under refinement, not as an error.
pub fn lq_norm(f: &SourceTerm, q: f64, grid: &DiskGrid) -> f64 {
    let s = grid.integrate_real(|z| f.sample(z).norm().powf(q));
    s.powf(1.0 / q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::build_disk_grid;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pointwise_values() {
        assert_eq!(
            eval_source(&SourceTerm::Zero, c(0.1, 0.2)).unwrap(),
            c(0.0, 0.0)
        );
        assert_eq!(
            eval_source(&SourceTerm::monomial(1, 0), c(0.3, 0.4)).unwrap(),
            c(0.3, 0.4)
        );
        let v = eval_source(&SourceTerm::radial_power(0.5), c(0.0, 0.25)).unwrap();
        assert_abs_diff_eq!(v.re, 2.0, epsilon = 1e-14);
        assert!(matches!(
            eval_source(&SourceTerm::radial_power(0.5), c(0.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(eval_source(&SourceTerm::one(), c(1.5, 0.0)).is_err());
    }

    #[test]
    fn arc_bump_is_supported_on_its_wedge() {
        let f = SourceTerm::arc_bump(0.0, 0.5, 3.0);
        assert_abs_diff_eq!(f.sample(c(0.5, 0.0)).re, 0.75, epsilon = 1e-14);
        assert_eq!(f.sample(c(0.0, 0.5)), c(0.0, 0.0));
        assert_eq!(f.sample(c(0.0, 0.0)), c(0.0, 0.0));
        let wrapped = SourceTerm::arc_bump(6.2, 0.5, 1.0);
        assert!(wrapped.sample(Complex64::from_polar(0.5, 0.05)).re > 0.0);
    }

    #[test]
    fn validation() {
        assert!(SourceTerm::radial_power(2.0).validate().is_err());
        assert!(SourceTerm::radial_power(-0.1).validate().is_err());
        assert!(SourceTerm::arc_bump(0.0, 0.0, 1.0).validate().is_err());
        let nested = SourceTerm::combination([(c(1.0, 0.0), SourceTerm::radial_power(3.0))]);
        assert!(nested.validate().is_err());
    }

    #[test]
    fn json_schema() {
        let f: SourceTerm = serde_json::from_str(r#"{"kind":"monomial","a":1,"b":0}"#).unwrap();
        assert_eq!(f, SourceTerm::monomial(1, 0));
        let g: SourceTerm = serde_json::from_str(
            r#"{"kind":"linear_combination","terms":[{"coef":[2.0,0.5],"source":{"kind":"radial_power","beta":0.5}}]}"#,
        )
        .unwrap();
        assert_eq!(g.singular_points(), vec![c(0.0, 0.0)]);
        assert!(serde_json::from_str::<SourceTerm>(r#"{"kind":"spline"}"#).is_err());
    }

    #[test]
    fn lq_norm_of_constant() {
        let g = build_disk_grid(32, 64).unwrap();
        let n = lq_norm(&SourceTerm::one(), 2.0, &g);
        assert!((n - PI.sqrt()).abs() < 0.01 * PI.sqrt());
    }

    #[test]
    fn lq_norm_membership_along_ladder() {
        let f = SourceTerm::radial_power(1.0);
        let norms = |q: f64| -> Vec<f64> {
            [32usize, 64, 128, 256]
                .iter()
                .map(|&n| lq_norm(&f, q, &build_disk_grid(n, 16).unwrap()))
                .collect()
        };
        // β q = 1.5: converges; exact value (2π ∫ r^{-1/2} dr)^{2/3} = (4π)^{2/3}.
        let conv = norms(1.5);
        let exact = (4.0 * PI).powf(1.0 / 1.5);
        let errs: Vec<f64> = conv.iter().map(|v| (v - exact).abs()).collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]));
        assert!(errs[3] < 0.05 * exact);
        // β q = 2.5: diverges like n^{1/2}.
        let div = norms(2.5);
        assert!(div.windows(2).all(|w| w[1] > 1.1 * w[0]));
        assert!(f.in_lq(1.5) && !f.in_lq(2.5));
    }

    #[test]
    fn closed_forms_at_known_points() {
        let z = c(0.3, 0.4);
        assert_abs_diff_eq!(
            (SourceTerm::one().closed_form_t(z).unwrap() - z.conj()).norm(),
            0.0
        );
        let t = SourceTerm::monomial(1, 0).closed_form_t(z).unwrap();
        assert_abs_diff_eq!(
            (t - c(z.norm_sqr() - 1.0, 0.0)).norm(),
            0.0,
            epsilon = 1e-15
        );
        let tt = SourceTerm::one().closed_form_t_tilde(z).unwrap();
        assert_abs_diff_eq!((tt - (z.conj() - z)).norm(), 0.0, epsilon = 1e-15);
        // T of the radial power with β = 0 agrees with T(1).
        let r = SourceTerm::radial_power(0.0)
            .closed_form_t_tilde(z)
            .unwrap();
        assert_abs_diff_eq!((r - tt).norm(), 0.0, epsilon = 1e-15);
    }
}
