//! Uniform one-dimensional grids, sampled field configurations, and the
//! Gaussian delta-sequence wall pair.
//!
//! The delta sequence is
//!
//! ```text
//! delta_N(u) = N / (2 sqrt(pi)) * exp(-u^2 N^2 / 4),
//! ```
//!
//! which integrates to one for every width parameter `N`. A wall pair places
//! one positive and one negative member at `+L/2` and `-L/2`; treating that
//! difference as a field gradient gives the gradient energy
//!
//! ```text
//! (1/2) Int (delta_N(x - L/2) - delta_N(x + L/2))^2 dx
//!     = N / (2 sqrt(2 pi)) * (1 - exp(-N^2 L^2 / 8)),
//! ```
//! exposed in closed form by [`wall_energy_closed_form`].

use std::f64::consts::PI;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("grid needs at least 3 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("grid bounds must be finite with x_min < x_max, got [{0}, {1}]")]
    BadBounds(f64, f64),
    #[error("field has {values} values but the grid has {nodes} nodes")]
    LengthMismatch { values: usize, nodes: usize },
    #[error("non-finite field value {value} at node {index}")]
    NonFinite { index: usize, value: f64 },
    #[error("delta-pair parameters must be positive and finite, got N = {n_param}, L = {l_sep}")]
    BadDeltaParams { n_param: f64, l_sep: f64 },
    #[error("grid spacing {dx} is coarser than 0.2/N = {max_dx}; refine the grid")]
    SpacingTooCoarse { dx: f64, max_dx: f64 },
    #[error(
        "wall centers at +-{half_sep} need at least 6/N = {clearance} of clearance from the grid boundary"
    )]
    ClearanceTooSmall { half_sep: f64, clearance: f64 },
}

/// Uniform grid on `[x_min, x_max]` with `n >= 3` nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self, LatticeError> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(LatticeError::BadBounds(x_min, x_max));
        }
        if n < 3 {
            return Err(LatticeError::TooFewNodes(n));
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_nodes(&self) -> usize {
        self.n
    }

    pub fn extent(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn position(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.spacing()
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.position(j))
    }

    /// Trapezoid quadrature weights: `dx/2` at the ends, `dx` inside.
    pub fn trapezoid_weights(&self) -> Vec<f64> {
        let dx = self.spacing();
        let mut w = vec![dx; self.n];
        w[0] = 0.5 * dx;
        w[self.n - 1] = 0.5 * dx;
        w
    }

    /// Samples `f` at every node; rejects non-finite samples.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Result<FieldConfig, LatticeError> {
        let values: Vec<f64> = self.positions().map(&f).collect();
        FieldConfig::new(*self, values)
    }
}

/// Field values attached to the nodes of a [`Grid`]. All values are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldConfig {
    grid: Grid,
    values: Vec<f64>,
}

impl FieldConfig {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self, LatticeError> {
        if values.len() != grid.n_nodes() {
            return Err(LatticeError::LengthMismatch {
                values: values.len(),
                nodes: grid.n_nodes(),
            });
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(LatticeError::NonFinite { index, value });
            }
        }
        Ok(Self { grid, values })
    }

    /// Constructor for values already known to be finite and sized to the grid.
    pub(crate) fn from_parts(grid: Grid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.n_nodes());
        debug_assert!(values.iter().all(|v| v.is_finite()));
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// First derivative: central differences inside, second-order one-sided
    /// stencils at the two boundary nodes. Exact for affine fields.
    pub fn gradient(&self) -> FieldConfig {
        let mut g = vec![0.0; self.values.len()];
        gradient_into(self.grid.spacing(), &self.values, &mut g);
        FieldConfig {
            grid: self.grid,
            values: g,
        }
    }

    /// Trapezoid quadrature of the field over the grid.
    pub fn integrate(&self) -> f64 {
        trapezoid_sum(self.grid.spacing(), &self.values)
    }
}

/// Second-order first-derivative stencil shared by 1-D and 2-D differencing.
pub(crate) fn gradient_into(dx: f64, v: &[f64], out: &mut [f64]) {
    let n = v.len();
    debug_assert!(n >= 3 && out.len() == n);
    out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * dx);
    for j in 1..n - 1 {
        out[j] = (v[j + 1] - v[j - 1]) / (2.0 * dx);
    }
    out[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * dx);
}

/// Trapezoid rule with a fixed left-to-right accumulation order, so every
/// caller integrating the same values gets the same bits back.
pub(crate) fn trapezoid_sum(dx: f64, values: &[f64]) -> f64 {
    let n = values.len();
    let mut acc = 0.5 * dx * values[0];
    for &v in &values[1..n - 1] {
        acc += dx * v;
    }
    acc + 0.5 * dx * values[n - 1]
}

/// Gaussian wall pair: members of the delta sequence centered at `+-l_sep/2`.
///
/// Construction enforces the grid adequacy rule `dx <= 0.2/N` and a boundary
/// clearance of at least `6/N` on both sides, so the sampled walls are
/// resolved and their tails fit inside the box.
#[derive(Debug, Clone, Copy)]
pub struct DeltaPair {
    n_param: f64,
    l_sep: f64,
    grid: Grid,
}

impl DeltaPair {
    pub fn new(n_param: f64, l_sep: f64, grid: Grid) -> Result<Self, LatticeError> {
        if !(n_param.is_finite() && l_sep.is_finite() && n_param > 0.0 && l_sep > 0.0) {
            return Err(LatticeError::BadDeltaParams { n_param, l_sep });
        }
        let dx = grid.spacing();
        let max_dx = 0.2 / n_param;
        if dx > max_dx {
            return Err(LatticeError::SpacingTooCoarse { dx, max_dx });
        }
        let clearance = 6.0 / n_param;
        let half_sep = 0.5 * l_sep;
        if grid.x_min() > -half_sep - clearance || grid.x_max() < half_sep + clearance {
            return Err(LatticeError::ClearanceTooSmall {
                half_sep,
                clearance,
            });
        }
        Ok(Self {
            n_param,
            l_sep,
            grid,
        })
    }

    pub fn n_param(&self) -> f64 {
        self.n_param
    }

    pub fn l_sep(&self) -> f64 {
        self.l_sep
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// One member of the delta sequence, centered at `center`.
    pub fn delta_n(&self, center: f64) -> FieldConfig {
        let norm = self.n_param / (2.0 * PI.sqrt());
        let n2 = self.n_param * self.n_param;
        let values = self
            .grid
            .positions()
            .map(|x| {
                let u = x - center;
                norm * (-u * u * n2 / 4.0).exp()
            })
            .collect();
        FieldConfig {
            grid: self.grid,
            values,
        }
    }

    /// Field gradient of a bubble bounded by a wall at `+L/2` and an
    /// anti-wall at `-L/2`: `delta_N(x - L/2) - delta_N(x + L/2)`.
    pub fn wall_gradient_config(&self) -> FieldConfig {
        let half = 0.5 * self.l_sep;
        let up = self.delta_n(half);
        let down = self.delta_n(-half);
        let values = up
            .values
            .iter()
            .zip(&down.values)
            .map(|(u, d)| u - d)
            .collect();
        FieldConfig {
            grid: self.grid,
            values,
        }
    }

    /// Gradient energy `(1/2) Int (wall pair)^2 dx` by trapezoid quadrature.
    pub fn wall_gradient_energy(&self) -> f64 {
        let config = self.wall_gradient_config();
        let squared: Vec<f64> = config.values.iter().map(|g| 0.5 * (g * g)).collect();
        trapezoid_sum(self.grid.spacing(), &squared)
    }
}

/// Closed form of the wall-pair gradient energy at finite width parameter.
pub fn wall_energy_closed_form(n_param: f64, l_sep: f64) -> f64 {
    let tail = (-n_param * n_param * l_sep * l_sep / 8.0).exp();
    n_param / (2.0 * (2.0 * PI).sqrt()) * (1.0 - tail)
}
