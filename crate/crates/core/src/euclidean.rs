//! Euclidean energy and action functionals on one space dimension, plus the
//! instantaneous-nucleation reduction and a quadratic Lagrangian lower bound.
//!
//! The full action lives on a (tau, x) rectangle. When the field does not
//! depend on tau the tau integral collapses to a prefactor, which is the
//! content of [`reduced_action`]: `S = t_p * E[phi]` for a nucleation slice
//! of duration `t_p`. [`euclidean_action_2d`] exists so that collapse can be
//! checked against the genuine two-dimensional quadrature instead of being
//! assumed.

use thiserror::Error;

use crate::io::JsonValue;
use crate::lattice::{gradient_into, trapezoid_sum, FieldConfig, Grid, LatticeError};
use crate::potentials::{PotentialError, PotentialSpec};

/// Slack in the `lagrangian_value >= q_term + quadratic_term` comparison.
const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum EuclideanError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error("nucleation duration must be positive and finite, got {0}")]
    NonPositiveDuration(f64),
    #[error("spacetime array has {got} values but the grids span {expected} nodes")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("charge magnitude must be finite and nonnegative, got {0}")]
    BadChargeMagnitude(f64),
}

/// A field on a (tau, x) rectangle, stored row-major: one row per tau node.
#[derive(Debug, Clone)]
pub struct SpacetimeConfig {
    tau_grid: Grid,
    x_grid: Grid,
    values: Vec<f64>,
}

impl SpacetimeConfig {
    pub fn new(tau_grid: Grid, x_grid: Grid, values: Vec<f64>) -> Result<Self, EuclideanError> {
        let expected = tau_grid.n_nodes() * x_grid.n_nodes();
        if values.len() != expected {
            return Err(EuclideanError::ShapeMismatch {
                expected,
                got: values.len(),
            });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(LatticeError::NonFinite { index, value }.into());
        }
        Ok(Self {
            tau_grid,
            x_grid,
            values,
        })
    }

    /// Replicates a spatial profile across every tau node.
    pub fn tau_independent(tau_grid: Grid, profile: &FieldConfig) -> Self {
        let row = profile.values();
        let mut values = Vec::with_capacity(tau_grid.n_nodes() * row.len());
        for _ in 0..tau_grid.n_nodes() {
            values.extend_from_slice(row);
        }
        Self {
            tau_grid,
            x_grid: *profile.grid(),
            values,
        }
    }

    pub fn tau_grid(&self) -> &Grid {
        &self.tau_grid
    }

    pub fn x_grid(&self) -> &Grid {
        &self.x_grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Decomposed Euclidean energy or action.
///
/// `total = gradient_term + potential_term` always; `t_p` is nonzero and
/// `reduced` set only for [`reduced_action`] outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionReport {
    pub gradient_term: f64,
    pub potential_term: f64,
    pub total: f64,
    pub t_p: f64,
    pub reduced: bool,
}

impl ActionReport {
    pub fn to_json(&self) -> JsonValue {
        JsonValue::object([
            (
                "gradient_term".to_string(),
                JsonValue::Float(self.gradient_term),
            ),
            (
                "potential_term".to_string(),
                JsonValue::Float(self.potential_term),
            ),
            ("total".to_string(), JsonValue::Float(self.total)),
            ("t_p".to_string(), JsonValue::Float(self.t_p)),
            ("reduced".to_string(), JsonValue::Bool(self.reduced)),
        ])
    }
}

/// Outcome of the quadratic Lagrangian lower-bound comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub lagrangian_value: f64,
    pub q_term: f64,
    pub quadratic_term: f64,
    pub satisfied: bool,
}

impl BoundReport {
    pub fn to_json(&self) -> JsonValue {
        JsonValue::object([
            (
                "lagrangian_value".to_string(),
                JsonValue::Float(self.lagrangian_value),
            ),
            ("q_term".to_string(), JsonValue::Float(self.q_term)),
            (
                "quadratic_term".to_string(),
                JsonValue::Float(self.quadratic_term),
            ),
            ("satisfied".to_string(), JsonValue::Bool(self.satisfied)),
        ])
    }
}

/// Static energy `E = integral of (1/2)(d phi/dx)^2 + V(phi)`.
pub fn energy_functional(spec: &PotentialSpec, profile: &FieldConfig) -> ActionReport {
    let gradient_term = expansion_base_term(profile);
    let pot: Vec<f64> = profile.values().iter().map(|&phi| spec.eval(phi)).collect();
    let potential_term = trapezoid_sum(profile.grid().spacing(), &pot);
    ActionReport {
        gradient_term,
        potential_term,
        total: gradient_term + potential_term,
        t_p: 0.0,
        reduced: false,
    }
}

/// Action of a nucleation slice of duration `t_p`: the tau integral of a
/// tau-independent field collapses to `t_p` times the static energy.
///
/// At `t_p = 1` every field reproduces [`energy_functional`] bit for bit.
pub fn reduced_action(
    spec: &PotentialSpec,
    profile: &FieldConfig,
    t_p: f64,
) -> Result<ActionReport, EuclideanError> {
    if !(t_p > 0.0 && t_p.is_finite()) {
        return Err(EuclideanError::NonPositiveDuration(t_p));
    }
    let base = energy_functional(spec, profile);
    let gradient_term = t_p * base.gradient_term;
    let potential_term = t_p * base.potential_term;
    Ok(ActionReport {
        gradient_term,
        potential_term,
        total: gradient_term + potential_term,
        t_p,
        reduced: true,
    })
}

/// Full action on the (tau, x) rectangle by tensor-product trapezoid rule.
///
/// The gradient term carries both derivative directions; both use the same
/// finite-difference stencil as the one-dimensional functionals.
pub fn euclidean_action_2d(spec: &PotentialSpec, config: &SpacetimeConfig) -> ActionReport {
    let n_tau = config.tau_grid.n_nodes();
    let n_x = config.x_grid.n_nodes();
    let d_tau = config.tau_grid.spacing();
    let dx = config.x_grid.spacing();
    let values = &config.values;

    let mut grad_density = vec![0.0; values.len()];
    let mut gx_row = vec![0.0; n_x];
    for i in 0..n_tau {
        let row = &values[i * n_x..(i + 1) * n_x];
        gradient_into(dx, row, &mut gx_row);
        for (slot, g) in grad_density[i * n_x..(i + 1) * n_x].iter_mut().zip(&gx_row) {
            *slot = 0.5 * (g * g);
        }
    }
    let mut column = vec![0.0; n_tau];
    let mut gt_column = vec![0.0; n_tau];
    for j in 0..n_x {
        for i in 0..n_tau {
            column[i] = values[i * n_x + j];
        }
        gradient_into(d_tau, &column, &mut gt_column);
        for (i, g) in gt_column.iter().enumerate() {
            grad_density[i * n_x + j] += 0.5 * (g * g);
        }
    }
    let pot_density: Vec<f64> = values.iter().map(|&phi| spec.eval(phi)).collect();

    let integrate_2d = |density: &[f64]| {
        let row_sums: Vec<f64> = (0..n_tau)
            .map(|i| trapezoid_sum(dx, &density[i * n_x..(i + 1) * n_x]))
            .collect();
        trapezoid_sum(d_tau, &row_sums)
    };
    let gradient_term = integrate_2d(&grad_density);
    let potential_term = integrate_2d(&pot_density);
    ActionReport {
        gradient_term,
        potential_term,
        total: gradient_term + potential_term,
        t_p: 0.0,
        reduced: false,
    }
}

/// Gradient energy `integral of (1/2)(d phi/dx)^2` of a reference profile.
///
/// This is the zeroth term of the expansion around a background: compare it
/// against the full action to decide whether the background is negligible.
pub fn expansion_base_term(profile: &FieldConfig) -> f64 {
    let gradient = profile.gradient();
    let density: Vec<f64> = gradient.values().iter().map(|g| 0.5 * (g * g)).collect();
    trapezoid_sum(profile.grid().spacing(), &density)
}

/// Checks `L >= q_abs + integral of (1/2)(phi - phi_F)^2 * 2 * gap`.
///
/// The potential is shifted so it vanishes at the false vacuum before the
/// Lagrangian value is formed; with that anchoring, `phi == phi_F` and
/// `q_abs = 0` is an exact equality. A degenerate pair (zero gap) makes the
/// quadratic side vanish and is reported, not rejected.
pub fn lagrangian_bound(
    spec: &PotentialSpec,
    profile: &FieldConfig,
    q_abs: f64,
) -> Result<BoundReport, EuclideanError> {
    if !(q_abs >= 0.0 && q_abs.is_finite()) {
        return Err(EuclideanError::BadChargeMagnitude(q_abs));
    }
    let (lo, hi) = spec.default_bracket();
    let vacua = spec.find_minima(lo, hi)?;
    let dx = profile.grid().spacing();

    let gradient_term = expansion_base_term(profile);
    let shifted: Vec<f64> = profile
        .values()
        .iter()
        .map(|&phi| spec.eval(phi) - vacua.v_false)
        .collect();
    let lagrangian_value = gradient_term + trapezoid_sum(dx, &shifted);

    let doubled_gap = 2.0 * vacua.gap;
    let quad: Vec<f64> = profile
        .values()
        .iter()
        .map(|&phi| {
            let d = phi - vacua.phi_false;
            0.5 * (d * d) * doubled_gap
        })
        .collect();
    let quadratic_term = trapezoid_sum(dx, &quad);

    Ok(BoundReport {
        lagrangian_value,
        q_term: q_abs,
        quadratic_term,
        satisfied: lagrangian_value >= q_abs + quadratic_term - BOUND_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn quartic() -> PotentialSpec {
        PotentialSpec::QuarticDoubleWell {
            lambda: 2.0,
            a: 1.0,
            tilt: 0.0,
        }
    }

    fn tilted_sine_gordon(c_b: f64, tilt: f64) -> PotentialSpec {
        PotentialSpec::DrivenSineGordon {
            c_a: 1.0,
            c_b,
            phi_c: 0.0,
            tilt,
        }
    }

    #[test]
    fn vacuum_profile_has_zero_energy() {
        let profile = Grid::new(-10.0, 10.0, 101)
            .unwrap()
            .sample(|_| 1.0)
            .unwrap();
        let report = energy_functional(&quartic(), &profile);
        assert_abs_diff_eq!(report.total, 0.0, epsilon = 1e-12);
        assert_eq!(report.t_p, 0.0);
        assert!(!report.reduced);
    }

    #[test]
    fn tanh_kink_splits_energy_evenly() {
        let profile = Grid::new(-10.0, 10.0, 4001)
            .unwrap()
            .sample(f64::tanh)
            .unwrap();
        let report = energy_functional(&quartic(), &profile);
        assert_relative_eq!(report.total, 4.0 / 3.0, max_relative = 1e-5);
        assert_relative_eq!(report.gradient_term, 2.0 / 3.0, max_relative = 1e-5);
        assert_relative_eq!(report.potential_term, 2.0 / 3.0, max_relative = 1e-5);
        assert_eq!(
            report.total,
            report.gradient_term + report.potential_term
        );
    }

    #[test]
    fn constant_base_term_vanishes() {
        let profile = Grid::new(-3.0, 3.0, 601).unwrap().sample(|_| 0.7).unwrap();
        assert!(expansion_base_term(&profile).abs() <= 1e-20);
    }

    #[test]
    fn ramp_base_term_is_half_slope_squared_times_length() {
        let profile = Grid::new(0.0, 0.5, 51)
            .unwrap()
            .sample(|x| 1.5 * x)
            .unwrap();
        let base = expansion_base_term(&profile);
        assert_abs_diff_eq!(base, 1.5 * 1.5 * 0.5 / 2.0, epsilon = 1e-8);
        let report = energy_functional(&quartic(), &profile);
        assert_eq!(report.gradient_term, base);
    }

    #[test]
    fn reduction_at_unit_duration_is_identical() {
        let profile = Grid::new(-10.0, 10.0, 801)
            .unwrap()
            .sample(f64::tanh)
            .unwrap();
        let spec = quartic();
        let energy = energy_functional(&spec, &profile);
        let reduced = reduced_action(&spec, &profile, 1.0).unwrap();
        assert_eq!(reduced.total, energy.total);
        assert_eq!(reduced.gradient_term, energy.gradient_term);
        assert_eq!(reduced.potential_term, energy.potential_term);
        assert_eq!(reduced.t_p, 1.0);
        assert!(reduced.reduced);
    }

    #[test]
    fn reduction_is_linear_in_duration() {
        let profile = Grid::new(-10.0, 10.0, 801)
            .unwrap()
            .sample(f64::tanh)
            .unwrap();
        let spec = quartic();
        let energy = energy_functional(&spec, &profile);
        let doubled = reduced_action(&spec, &profile, 2.0).unwrap();
        assert_eq!(doubled.total, 2.0 * energy.total);
        let scaled = reduced_action(&spec, &profile, 2.5).unwrap();
        assert_relative_eq!(scaled.total, 2.5 * energy.total, max_relative = 1e-14);
    }

    #[test]
    fn reduction_rejects_bad_durations() {
        let profile = Grid::new(-1.0, 1.0, 11).unwrap().sample(|_| 1.0).unwrap();
        for bad in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                reduced_action(&quartic(), &profile, bad),
                Err(EuclideanError::NonPositiveDuration(_))
            ));
        }
    }

    #[test]
    fn tau_independent_action_collapses_to_duration_times_energy() {
        let profile = Grid::new(-10.0, 10.0, 401)
            .unwrap()
            .sample(f64::tanh)
            .unwrap();
        let spec = quartic();
        let tau_grid = Grid::new(0.0, 2.0, 51).unwrap();
        let config = SpacetimeConfig::tau_independent(tau_grid, &profile);
        let action = euclidean_action_2d(&spec, &config);
        let energy = energy_functional(&spec, &profile);
        assert_relative_eq!(action.total, 2.0 * energy.total, max_relative = 1e-12);
        assert_relative_eq!(
            action.gradient_term,
            2.0 * energy.gradient_term,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            action.potential_term,
            2.0 * energy.potential_term,
            max_relative = 1e-12
        );
    }

    #[test]
    fn vacuum_spacetime_has_zero_action() {
        let tau_grid = Grid::new(0.0, 1.0, 21).unwrap();
        let x_grid = Grid::new(-5.0, 5.0, 31).unwrap();
        let config = SpacetimeConfig::new(tau_grid, x_grid, vec![1.0; 21 * 31]).unwrap();
        let action = euclidean_action_2d(&quartic(), &config);
        assert_abs_diff_eq!(action.total, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn spacetime_shape_and_finiteness_are_checked() {
        let tau_grid = Grid::new(0.0, 1.0, 5).unwrap();
        let x_grid = Grid::new(-1.0, 1.0, 7).unwrap();
        assert!(matches!(
            SpacetimeConfig::new(tau_grid, x_grid, vec![0.0; 34]),
            Err(EuclideanError::ShapeMismatch {
                expected: 35,
                got: 34
            })
        ));
        let mut values = vec![0.0; 35];
        values[17] = f64::NAN;
        assert!(matches!(
            SpacetimeConfig::new(tau_grid, x_grid, values),
            Err(EuclideanError::Lattice(LatticeError::NonFinite {
                index: 17,
                ..
            }))
        ));
    }

    #[test]
    fn bound_is_exact_equality_at_the_false_vacuum() {
        let spec = tilted_sine_gordon(0.01, 0.01);
        let (lo, hi) = spec.default_bracket();
        let vacua = spec.find_minima(lo, hi).unwrap();
        let profile = Grid::new(-10.0, 10.0, 501)
            .unwrap()
            .sample(|_| vacua.phi_false)
            .unwrap();
        let report = lagrangian_bound(&spec, &profile, 0.0).unwrap();
        // The shifted potential vanishes identically; only boundary-stencil
        // roundoff on the constant profile survives in the gradient term.
        assert!(report.lagrangian_value.abs() <= 1e-25);
        assert_eq!(report.quadratic_term, 0.0);
        assert_eq!(report.q_term, 0.0);
        assert!(report.satisfied);

        let loaded = lagrangian_bound(&spec, &profile, 0.5).unwrap();
        assert_eq!(loaded.q_term, 0.5);
        assert!(!loaded.satisfied);
    }

    #[test]
    fn small_fluctuations_satisfy_the_bound() {
        let spec = tilted_sine_gordon(0.01, 0.01);
        let (lo, hi) = spec.default_bracket();
        let vacua = spec.find_minima(lo, hi).unwrap();
        let profile = Grid::new(-10.0, 10.0, 2001)
            .unwrap()
            .sample(|x| vacua.phi_false + 0.4 * (0.3 * x).sin())
            .unwrap();
        let report = lagrangian_bound(&spec, &profile, 0.0).unwrap();
        assert!(report.quadratic_term >= 0.0);
        assert!(
            report.satisfied,
            "L = {}, quadratic side = {}",
            report.lagrangian_value, report.quadratic_term
        );
    }

    #[test]
    fn degenerate_vacua_make_the_quadratic_side_vanish() {
        let profile = Grid::new(-10.0, 10.0, 501)
            .unwrap()
            .sample(f64::tanh)
            .unwrap();
        let report = lagrangian_bound(&quartic(), &profile, 0.0).unwrap();
        assert_eq!(report.quadratic_term, 0.0);
        assert!(report.satisfied);
    }

    #[test]
    fn bound_rejects_bad_charge_magnitudes() {
        let profile = Grid::new(-1.0, 1.0, 11).unwrap().sample(|_| 0.0).unwrap();
        let spec = tilted_sine_gordon(0.0, 0.01);
        for bad in [-1.0, f64::NAN] {
            assert!(matches!(
                lagrangian_bound(&spec, &profile, bad),
                Err(EuclideanError::BadChargeMagnitude(_))
            ));
        }
    }

    #[test]
    fn reports_serialize_with_stable_field_names() {
        let action = ActionReport {
            gradient_term: 0.5,
            potential_term: 0.25,
            total: 0.75,
            t_p: 0.0,
            reduced: false,
        };
        let rendered = action.to_json().render();
        for key in ["gradient_term", "potential_term", "total", "t_p", "reduced"] {
            assert!(rendered.contains(&format!("\"{key}\"")), "missing {key}");
        }
        assert!(rendered.contains("\"reduced\": false"));

        let bound = BoundReport {
            lagrangian_value: 1.0,
            q_term: 0.0,
            quadratic_term: 0.5,
            satisfied: true,
        };
        let rendered = bound.to_json().render();
        for key in ["lagrangian_value", "q_term", "quadratic_term", "satisfied"] {
            assert!(rendered.contains(&format!("\"{key}\"")), "missing {key}");
        }
        assert!(rendered.contains("\"satisfied\": true"));
    }
}
