//! Scalar potential families on the line and their vacuum structure.
//!
//! Three families cover the metastable setups of interest:
//!
//! ```text
//! quartic double well   V = (lambda/4) (phi^2 - a^2)^2 - tilt * phi
//! driven sine-Gordon    V = c_a (1 - cos phi) + c_b (phi - phi_c)^2 - tilt * phi
//! quartic Taylor form   V = c0 (phi - phi0)^2 + c1 (phi - phi0)^4
//! ```
//!
//! The linear tilt models a weak applied field. It breaks the vacuum
//! degeneracy and opens the energy gap between the metastable (false) and
//! global (true) minima; [`PotentialSpec::find_minima`] locates the two
//! lowest wells in a bracket and reports that gap, and [`gap_to_stiffness`]
//! converts the gap into the Gaussian stiffness used by the wavefunctional
//! module.

use thiserror::Error;

const SCAN_POINTS: usize = 4096;
const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 100;
/// Wells whose depths differ by less than this relative amount count as tied.
const DEGENERACY_REL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum PotentialError {
    #[error("potential parameter {field} = {value} must be {needs}")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        needs: &'static str,
    },
    #[error("derivative order {0} is not supported; analytic orders are 1 through 4")]
    UnsupportedOrder(u32),
    #[error("found {found} local minima in [{lo}, {hi}], need at least two")]
    TooFewMinima { lo: f64, hi: f64, found: usize },
    #[error("stationary point refinement stalled near phi = {near} after {max_iter} iterations")]
    NoConvergence { near: f64, max_iter: usize },
    #[error("energy gap must be positive and finite to define a stiffness, got {0}")]
    NonPositiveGap(f64),
    #[error("bracket must be finite with lo < hi, got [{lo}, {hi}]")]
    BadBracket { lo: f64, hi: f64 },
}

/// One of the three supported potential families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialSpec {
    QuarticDoubleWell {
        lambda: f64,
        a: f64,
        tilt: f64,
    },
    DrivenSineGordon {
        c_a: f64,
        c_b: f64,
        phi_c: f64,
        tilt: f64,
    },
    TaylorQuartic {
        phi0: f64,
        c0: f64,
        c1: f64,
    },
}

/// The two lowest wells found in a bracket, labelled by depth.
///
/// `phi_false` is the shallower (metastable) well and `phi_true` the deeper
/// one; `gap = v_false - v_true >= 0`. Tied wells get `gap = 0` with the
/// smaller field value labelled false, so degenerate results are stable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumPair {
    pub phi_false: f64,
    pub phi_true: f64,
    pub v_false: f64,
    pub v_true: f64,
    pub gap: f64,
}

impl PotentialSpec {
    pub fn validate(&self) -> Result<(), PotentialError> {
        match *self {
            Self::QuarticDoubleWell { lambda, a, tilt } => {
                check("lambda", lambda, lambda > 0.0, "positive")?;
                check("a", a, a > 0.0, "positive")?;
                check("tilt", tilt, tilt >= 0.0, "nonnegative")
            }
            Self::DrivenSineGordon {
                c_a,
                c_b,
                phi_c,
                tilt,
            } => {
                check("c_a", c_a, c_a > 0.0, "positive")?;
                check("c_b", c_b, true, "finite")?;
                check("phi_c", phi_c, true, "finite")?;
                check("tilt", tilt, tilt >= 0.0, "nonnegative")
            }
            Self::TaylorQuartic { phi0, c0, c1 } => {
                check("phi0", phi0, true, "finite")?;
                check("c0", c0, c0 >= 0.0, "nonnegative")?;
                check("c1", c1, true, "finite")
            }
        }
    }

    /// Potential energy density at `phi`.
    pub fn eval(&self, phi: f64) -> f64 {
        match *self {
            Self::QuarticDoubleWell { lambda, a, tilt } => {
                let d = phi * phi - a * a;
                0.25 * lambda * d * d - tilt * phi
            }
            Self::DrivenSineGordon {
                c_a,
                c_b,
                phi_c,
                tilt,
            } => {
                let d = phi - phi_c;
                c_a * (1.0 - phi.cos()) + c_b * d * d - tilt * phi
            }
            Self::TaylorQuartic { phi0, c0, c1 } => {
                let u2 = (phi - phi0) * (phi - phi0);
                c0 * u2 + c1 * u2 * u2
            }
        }
    }

    /// Analytic derivative of order 1 through 4.
    pub fn deriv(&self, phi: f64, order: u32) -> Result<f64, PotentialError> {
        if !(1..=4).contains(&order) {
            return Err(PotentialError::UnsupportedOrder(order));
        }
        Ok(self.derivative(phi, order))
    }

    pub(crate) fn derivative(&self, phi: f64, order: u32) -> f64 {
        match *self {
            Self::QuarticDoubleWell { lambda, a, tilt } => match order {
                1 => lambda * phi * (phi * phi - a * a) - tilt,
                2 => lambda * (3.0 * phi * phi - a * a),
                3 => 6.0 * lambda * phi,
                _ => 6.0 * lambda,
            },
            Self::DrivenSineGordon {
                c_a,
                c_b,
                phi_c,
                tilt,
            } => match order {
                1 => c_a * phi.sin() + 2.0 * c_b * (phi - phi_c) - tilt,
                2 => c_a * phi.cos() + 2.0 * c_b,
                3 => -c_a * phi.sin(),
                _ => -c_a * phi.cos(),
            },
            Self::TaylorQuartic { phi0, c0, c1 } => {
                let u = phi - phi0;
                match order {
                    1 => 2.0 * c0 * u + 4.0 * c1 * u * u * u,
                    2 => 2.0 * c0 + 12.0 * c1 * u * u,
                    3 => 24.0 * c1 * u,
                    _ => 24.0 * c1,
                }
            }
        }
    }

    /// Taylor coefficients of orders 0 through 4 about `phi0`:
    /// `[V, V', V''/2!, V'''/3!, V''''/4!]`.
    pub fn taylor_coefficients(&self, phi0: f64) -> [f64; 5] {
        [
            self.eval(phi0),
            self.derivative(phi0, 1),
            self.derivative(phi0, 2) / 2.0,
            self.derivative(phi0, 3) / 6.0,
            self.derivative(phi0, 4) / 24.0,
        ]
    }

    /// Search interval covering the family's standard pair of wells.
    pub fn default_bracket(&self) -> (f64, f64) {
        match *self {
            Self::QuarticDoubleWell { a, .. } => (-2.0 * a, 2.0 * a),
            // Wells live near 0 and 2 pi for small confinement and tilt.
            Self::DrivenSineGordon { .. } => (-std::f64::consts::PI, 3.0 * std::f64::consts::PI),
            Self::TaylorQuartic { phi0, .. } => (phi0 - 2.0, phi0 + 2.0),
        }
    }

    /// Locates the two lowest local minima in `[lo, hi]` and labels them.
    ///
    /// The bracket is scanned on a uniform mesh for sign changes of `V'`,
    /// each candidate is refined by bracketed Newton iteration to
    /// `|V'| <= 1e-12`, and only points with `V'' > 0` survive.
    pub fn find_minima(&self, lo: f64, hi: f64) -> Result<VacuumPair, PotentialError> {
        self.validate()?;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(PotentialError::BadBracket { lo, hi });
        }
        let span = hi - lo;
        let step = span / (SCAN_POINTS - 1) as f64;
        let node = |i: usize| lo + i as f64 * step;
        let slopes: Vec<f64> = (0..SCAN_POINTS)
            .map(|i| self.derivative(node(i), 1))
            .collect();

        let mut minima: Vec<(f64, f64)> = Vec::new();
        for i in 0..SCAN_POINTS {
            if slopes[i] == 0.0 {
                self.keep_if_minimum(node(i), span, &mut minima);
            } else if i + 1 < SCAN_POINTS
                && slopes[i + 1] != 0.0
                && slopes[i].signum() != slopes[i + 1].signum()
            {
                let root = self.refine_stationary(node(i), node(i + 1), slopes[i])?;
                self.keep_if_minimum(root, span, &mut minima);
            }
        }
        if minima.len() < 2 {
            return Err(PotentialError::TooFewMinima {
                lo,
                hi,
                found: minima.len(),
            });
        }
        minima.sort_by(|m, n| m.1.total_cmp(&n.1));
        let (phi_deep, v_deep) = minima[0];
        let (phi_shallow, v_shallow) = minima[1];

        let scale = v_deep.abs().max(v_shallow.abs()).max(1.0);
        if (v_shallow - v_deep).abs() <= DEGENERACY_REL * scale {
            let (pf, vf, pt, vt) = if phi_deep < phi_shallow {
                (phi_deep, v_deep, phi_shallow, v_shallow)
            } else {
                (phi_shallow, v_shallow, phi_deep, v_deep)
            };
            return Ok(VacuumPair {
                phi_false: pf,
                phi_true: pt,
                v_false: vf,
                v_true: vt,
                gap: 0.0,
            });
        }
        Ok(VacuumPair {
            phi_false: phi_shallow,
            phi_true: phi_deep,
            v_false: v_shallow,
            v_true: v_deep,
            gap: v_shallow - v_deep,
        })
    }

    fn keep_if_minimum(&self, phi: f64, span: f64, minima: &mut Vec<(f64, f64)>) {
        if self.derivative(phi, 2) <= 0.0 {
            return;
        }
        if minima.iter().any(|(p, _)| (p - phi).abs() <= 1e-8 * span) {
            return;
        }
        minima.push((phi, self.eval(phi)));
    }

    /// Newton iteration on `V'` kept inside a sign-changing bracket, with
    /// bisection whenever the Newton step leaves the bracket.
    fn refine_stationary(&self, mut a: f64, mut b: f64, mut fa: f64) -> Result<f64, PotentialError> {
        let mut x = 0.5 * (a + b);
        for _ in 0..NEWTON_MAX_ITER {
            let fx = self.derivative(x, 1);
            if fx.abs() <= NEWTON_TOL {
                return Ok(x);
            }
            if fx.signum() == fa.signum() {
                a = x;
                fa = fx;
            } else {
                b = x;
            }
            let curvature = self.derivative(x, 2);
            let newton = x - fx / curvature;
            x = if curvature != 0.0 && newton > a && newton < b {
                newton
            } else {
                0.5 * (a + b)
            };
        }
        Err(PotentialError::NoConvergence {
            near: x,
            max_iter: NEWTON_MAX_ITER,
        })
    }
}

/// Gaussian stiffness from the vacuum energy gap: `alpha = 1 / gap`.
pub fn gap_to_stiffness(gap: f64) -> Result<f64, PotentialError> {
    if !(gap.is_finite() && gap > 0.0) {
        return Err(PotentialError::NonPositiveGap(gap));
    }
    Ok(1.0 / gap)
}

fn check(field: &'static str, value: f64, ok: bool, needs: &'static str) -> Result<(), PotentialError> {
    if value.is_finite() && ok {
        Ok(())
    } else {
        Err(PotentialError::InvalidParameter { field, value, needs })
    }
}
