//! Gaussian wavefunctionals over lattice field configurations.
//!
//! A functional is a product of site Gaussians under the lattice measure
//! `prod_j dphi_j` with trapezoid weights `w_j` folded into each exponent:
//!
//! ```text
//! log Psi[phi] = log_norm - sum_j w_j alpha_j (phi_j - center_j)^2.
//! ```
//!
//! Folding the weights in keeps norms and overlaps stable under grid
//! refinement. Normalization constants are fixed in closed form, and the
//! false->true vacuum overlap has a per-site closed form evaluated in log
//! space so it survives grids long enough to underflow the product.

use thiserror::Error;

use crate::lattice::{FieldConfig, Grid, LatticeError};
use crate::potentials::{gap_to_stiffness, PotentialError, PotentialSpec};

#[derive(Debug, Error)]
pub enum WavefunctionalError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error("stiffness must be positive and finite, got {value} at site {index}")]
    BadStiffness { index: usize, value: f64 },
    #[error("stiffness array has {values} values but the grid has {nodes} nodes")]
    StiffnessLength { values: usize, nodes: usize },
    #[error("field configuration lives on a different grid than the functional")]
    GridMismatch,
    #[error("vacuum wavefunctionals need the sine-Gordon family")]
    UnsupportedFamily,
    #[error("vacuum pair is degenerate: the energy gap must be positive")]
    DegenerateVacua,
}

/// Site-wise width parameter for [`make_functional`].
#[derive(Debug, Clone)]
pub enum Stiffness {
    Uniform(f64),
    PerSite(Vec<f64>),
}

/// A normalized Gaussian wavefunctional. Construct with [`make_functional`].
#[derive(Debug, Clone)]
pub struct GaussianWavefunctional {
    center: FieldConfig,
    stiffness: Vec<f64>,
    log_norm: f64,
}

/// `sum_j ln(pi / (2 alpha_j w_j))`: the log of the product of per-site
/// Gaussian normalization integrals. Both the stored `log_norm` and
/// [`GaussianWavefunctional::norm_check`] go through this one routine so the
/// normalization identity holds exactly, not merely to roundoff.
fn log_measure_sum(stiffness: &[f64], weights: &[f64]) -> f64 {
    stiffness
        .iter()
        .zip(weights)
        .map(|(alpha, w)| (std::f64::consts::PI / (2.0 * alpha * w)).ln())
        .sum()
}

/// Builds the normalized functional centered on `center`.
pub fn make_functional(
    center: FieldConfig,
    stiffness: Stiffness,
) -> Result<GaussianWavefunctional, WavefunctionalError> {
    let n = center.grid().n_nodes();
    let stiffness = match stiffness {
        Stiffness::Uniform(alpha) => vec![alpha; n],
        Stiffness::PerSite(values) => {
            if values.len() != n {
                return Err(WavefunctionalError::StiffnessLength {
                    values: values.len(),
                    nodes: n,
                });
            }
            values
        }
    };
    if let Some((index, &value)) = stiffness
        .iter()
        .enumerate()
        .find(|(_, a)| !(a.is_finite() && **a > 0.0))
    {
        return Err(WavefunctionalError::BadStiffness { index, value });
    }
    let weights = center.grid().trapezoid_weights();
    let log_norm = -0.25 * log_measure_sum(&stiffness, &weights);
    Ok(GaussianWavefunctional {
        center,
        stiffness,
        log_norm,
    })
}

impl GaussianWavefunctional {
    pub fn center(&self) -> &FieldConfig {
        &self.center
    }

    pub fn stiffness(&self) -> &[f64] {
        &self.stiffness
    }

    pub fn log_norm(&self) -> f64 {
        self.log_norm
    }

    fn check_grid(&self, other: &Grid) -> Result<(), WavefunctionalError> {
        if self.center.grid() == other {
            Ok(())
        } else {
            Err(WavefunctionalError::GridMismatch)
        }
    }

    /// `log Psi[phi]`; maximal at `phi = center` where it equals `log_norm`.
    pub fn evaluate_log(&self, phi: &FieldConfig) -> Result<f64, WavefunctionalError> {
        self.check_grid(phi.grid())?;
        let weights = self.center.grid().trapezoid_weights();
        let mut exponent = 0.0;
        for ((&alpha, w), (&p, &c)) in self
            .stiffness
            .iter()
            .zip(&weights)
            .zip(phi.values().iter().zip(self.center.values()))
        {
            let d = p - c;
            exponent += w * alpha * (d * d);
        }
        Ok(self.log_norm - exponent)
    }

    /// Squared lattice-measure norm; 1 for every constructed functional.
    pub fn norm_check(&self) -> f64 {
        let weights = self.center.grid().trapezoid_weights();
        let log_measure = log_measure_sum(&self.stiffness, &weights);
        (2.0 * self.log_norm + 0.5 * log_measure).exp()
    }

    /// Log of the normalized overlap; 0 for identical functionals, clamped
    /// to nonpositive values so `exp` of it stays in `[0, 1]`.
    pub fn log_overlap(&self, other: &Self) -> Result<f64, WavefunctionalError> {
        self.check_grid(other.center.grid())?;
        let weights = self.center.grid().trapezoid_weights();
        let mut sum = 0.0;
        for j in 0..weights.len() {
            let p = self.stiffness[j] * weights[j];
            let q = other.stiffness[j] * weights[j];
            let s = p + q;
            let d = self.center.values()[j] - other.center.values()[j];
            sum += 0.25 * (4.0 * (p * q)).ln() - 0.5 * s.ln() - (p * q) * (d * d) / s;
        }
        Ok(sum.min(0.0))
    }

    /// Normalized overlap in `[0, 1]`.
    pub fn overlap(&self, other: &Self) -> Result<f64, WavefunctionalError> {
        Ok(self.log_overlap(other)?.exp())
    }
}

/// The false- and true-vacuum functionals of a tilted sine-Gordon spec:
/// constant centers at the two minima, uniform stiffness `1 / gap`.
pub fn vacuum_states(
    spec: &PotentialSpec,
    grid: Grid,
) -> Result<(GaussianWavefunctional, GaussianWavefunctional), WavefunctionalError> {
    if !matches!(spec, PotentialSpec::DrivenSineGordon { .. }) {
        return Err(WavefunctionalError::UnsupportedFamily);
    }
    let (lo, hi) = spec.default_bracket();
    let vacua = spec.find_minima(lo, hi)?;
    if vacua.gap <= 0.0 {
        return Err(WavefunctionalError::DegenerateVacua);
    }
    let alpha = gap_to_stiffness(vacua.gap)?;
    let psi_initial = make_functional(
        grid.sample(|_| vacua.phi_false)?,
        Stiffness::Uniform(alpha),
    )?;
    let psi_final = make_functional(grid.sample(|_| vacua.phi_true)?, Stiffness::Uniform(alpha))?;
    Ok((psi_initial, psi_final))
}
