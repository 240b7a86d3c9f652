//! Numerical toolkit for one-dimensional false-vacuum decay.
//!
//! The crate covers the pieces needed to study a metastable scalar field on a
//! line: tilted double-well and driven sine-Gordon potentials with their
//! vacuum structure, uniform lattices with Gaussian wall-pair profiles, BPS
//! kink solutions with masses and topological charges, Euclidean action
//! functionals under the instantaneous-nucleation reduction, and Gaussian
//! wavefunctionals over lattice field configurations with closed-form
//! overlaps.
//!
//! All quadrature is trapezoidal on uniform grids and all derivative stencils
//! are second order, so results are deterministic for a given grid.

pub mod euclidean;
pub mod io;
pub mod lattice;
pub mod potentials;
pub mod solitons;
pub mod wavefunctional;

pub use euclidean::{ActionReport, BoundReport, EuclideanError, SpacetimeConfig};
pub use lattice::{DeltaPair, FieldConfig, Grid, LatticeError};
pub use potentials::{PotentialError, PotentialSpec, VacuumPair};
pub use solitons::{KinkSolution, SolitonError};
pub use wavefunctional::{GaussianWavefunctional, Stiffness, WavefunctionalError};
