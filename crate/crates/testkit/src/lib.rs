//! Test-only helpers for the workspace: independent quadrature oracles,
//! closed-form reference profiles, and seeded random profile generators.
//!
//! Everything here exists to check the main crate from the outside. The
//! oracles deliberately use different quadrature (Gauss-Legendre tensors,
//! Simpson) than the trapezoid rules under test, and the only main-crate
//! code they call is construction plus `evaluate_log`.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tiltwell::potentials::PotentialSpec;
use tiltwell::wavefunctional::GaussianWavefunctional;
use tiltwell::{FieldConfig, Grid, SpacetimeConfig};

/// Deterministic RNG used by every randomized suite in the workspace.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// three-term Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least two quadrature points");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_deriv(n, x);
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_deriv(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * (dp * dp));
    }
    (nodes, weights)
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut cur = x;
    for k in 2..=n {
        let k = k as f64;
        let next = ((2.0 * k - 1.0) * x * cur - (k - 1.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    let dp = n as f64 * (x * cur - prev) / (x * x - 1.0);
    (cur, dp)
}

/// Gauss-Legendre integral of `f` over `[lo, hi]` with `points` nodes.
pub fn gl_integrate(lo: f64, hi: f64, points: usize, f: impl Fn(f64) -> f64) -> f64 {
    let (nodes, weights) = gauss_legendre(points);
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    nodes
        .iter()
        .zip(&weights)
        .map(|(x, w)| w * h * f(c + h * x))
        .sum()
}

fn tensor_quadrature<F: FnMut(&[f64]) -> f64>(
    bounds: &[(f64, f64)],
    points: usize,
    mut f: F,
) -> f64 {
    let (nodes, weights) = gauss_legendre(points);
    let mut phi = Vec::with_capacity(bounds.len());
    recurse(bounds, &nodes, &weights, &mut phi, &mut f)
}

fn recurse<F: FnMut(&[f64]) -> f64>(
    bounds: &[(f64, f64)],
    nodes: &[f64],
    weights: &[f64],
    phi: &mut Vec<f64>,
    f: &mut F,
) -> f64 {
    let level = phi.len();
    if level == bounds.len() {
        return f(phi);
    }
    let (lo, hi) = bounds[level];
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let mut sum = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        phi.push(c + h * x);
        sum += w * h * recurse(bounds, nodes, weights, phi, f);
        phi.pop();
    }
    sum
}

/// Squared norm of a functional by dense tensor quadrature over every site,
/// 41 Gauss-Legendre points per axis spanning eight standard deviations.
/// Intended for lattices of at most four sites.
pub fn brute_force_norm_sq(psi: &GaussianWavefunctional) -> f64 {
    let grid = *psi.center().grid();
    let weights = grid.trapezoid_weights();
    let bounds: Vec<(f64, f64)> = psi
        .center()
        .values()
        .iter()
        .zip(psi.stiffness().iter().zip(&weights))
        .map(|(&c, (&alpha, &w))| {
            let sigma = 1.0 / (2.0 * (alpha * w).sqrt());
            (c - 8.0 * sigma, c + 8.0 * sigma)
        })
        .collect();
    tensor_quadrature(&bounds, 41, |site_values| {
        let config = FieldConfig::new(grid, site_values.to_vec()).unwrap();
        (2.0 * psi.evaluate_log(&config).unwrap()).exp()
    })
}

/// Overlap of two functionals by the same dense tensor quadrature, with each
/// axis centered on the product-Gaussian mean.
pub fn brute_force_overlap(
    psi_i: &GaussianWavefunctional,
    psi_f: &GaussianWavefunctional,
) -> f64 {
    let grid = *psi_i.center().grid();
    assert_eq!(grid, *psi_f.center().grid(), "functionals on different grids");
    let weights = grid.trapezoid_weights();
    let n = grid.n_nodes();
    let bounds: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let p = psi_i.stiffness()[j] * weights[j];
            let q = psi_f.stiffness()[j] * weights[j];
            let a = psi_i.center().values()[j];
            let b = psi_f.center().values()[j];
            let mean = (p * a + q * b) / (p + q);
            let sigma = 1.0 / (2.0 * (p + q)).sqrt();
            (mean - 8.0 * sigma, mean + 8.0 * sigma)
        })
        .collect();
    tensor_quadrature(&bounds, 41, |site_values| {
        let config = FieldConfig::new(grid, site_values.to_vec()).unwrap();
        (psi_i.evaluate_log(&config).unwrap() + psi_f.evaluate_log(&config).unwrap()).exp()
    })
}

/// Composite Simpson rule; requires an odd number of values.
pub fn simpson_sum(dx: f64, values: &[f64]) -> f64 {
    assert!(
        values.len() >= 3 && values.len() % 2 == 1,
        "Simpson needs an odd number of nodes, got {}",
        values.len()
    );
    let mut sum = values[0] + values[values.len() - 1];
    for (j, v) in values.iter().enumerate().skip(1).take(values.len() - 2) {
        sum += if j % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    dx / 3.0 * sum
}

/// Second-order finite-difference derivative: one-sided at the ends,
/// central inside. Independent implementation for oracle use.
pub fn central_diff(dx: f64, values: &[f64]) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 3);
    let mut out = vec![0.0; n];
    out[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * dx);
    for j in 1..n - 1 {
        out[j] = (values[j + 1] - values[j - 1]) / (2.0 * dx);
    }
    out[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * dx);
    out
}

/// Euclidean action of a spacetime config by Simpson quadrature on both
/// axes; both grid sizes must be odd.
pub fn simpson_action_2d(spec: &PotentialSpec, config: &SpacetimeConfig) -> f64 {
    let n_tau = config.tau_grid().n_nodes();
    let n_x = config.x_grid().n_nodes();
    let d_tau = config.tau_grid().spacing();
    let dx = config.x_grid().spacing();
    let values = config.values();

    let mut density = vec![0.0; values.len()];
    for i in 0..n_tau {
        let row = &values[i * n_x..(i + 1) * n_x];
        let gx = central_diff(dx, row);
        for (j, g) in gx.iter().enumerate() {
            density[i * n_x + j] = 0.5 * (g * g) + spec.eval(row[j]);
        }
    }
    for j in 0..n_x {
        let column: Vec<f64> = (0..n_tau).map(|i| values[i * n_x + j]).collect();
        let gt = central_diff(d_tau, &column);
        for (i, g) in gt.iter().enumerate() {
            density[i * n_x + j] += 0.5 * (g * g);
        }
    }
    let row_sums: Vec<f64> = (0..n_tau)
        .map(|i| simpson_sum(dx, &density[i * n_x..(i + 1) * n_x]))
        .collect();
    simpson_sum(d_tau, &row_sums)
}

/// Running trapezoid antiderivative, zero at the first node.
pub fn cumulative_trapezoid(dx: f64, values: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; values.len()];
    for j in 1..values.len() {
        out[j] = out[j - 1] + 0.5 * dx * (values[j - 1] + values[j]);
    }
    out
}

/// Exact kink of the symmetric quartic well, `a tanh(sqrt(lambda/2) a x)`.
pub fn tanh_kink(grid: Grid, lambda: f64, a: f64) -> FieldConfig {
    let m = (lambda / 2.0).sqrt() * a;
    grid.sample(|x| a * (m * x).tanh()).unwrap()
}

/// Exact sine-Gordon kink, `4 arctan(exp(sqrt(c_a) x))`.
pub fn sine_gordon_kink(grid: Grid, c_a: f64) -> FieldConfig {
    let m = c_a.sqrt();
    grid.sample(|x| 4.0 * (m * x).exp().atan()).unwrap()
}

/// Smooth profile running from `phi_start` at the left edge to `phi_end` at
/// the right edge: a quintic smoothstep ramp plus a few random sine modes
/// that vanish at both ends. Mode amplitudes sum to at most 0.4.
pub fn random_interpolating_profile(
    rng: &mut impl Rng,
    grid: Grid,
    phi_start: f64,
    phi_end: f64,
) -> FieldConfig {
    let n_modes = rng.gen_range(1..=4);
    let modes: Vec<(f64, f64)> = (1..=n_modes)
        .map(|k| {
            let amp = rng.gen_range(0.05..0.4 / n_modes as f64);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            (k as f64, sign * amp)
        })
        .collect();
    let x_min = grid.position(0);
    let span = grid.position(grid.n_nodes() - 1) - x_min;
    grid.sample(|x| {
        let t = (x - x_min) / span;
        let s = t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
        let mut v = phi_start + (phi_end - phi_start) * s;
        for (k, amp) in &modes {
            v += amp * (k * PI * t).sin();
        }
        v
    })
    .unwrap()
}

/// Bounded random wiggle about a constant: random sine modes with amplitudes
/// summing to at most `max_amp`, so the profile stays in
/// `[center - max_amp, center + max_amp]`.
pub fn random_fluctuation_profile(
    rng: &mut impl Rng,
    grid: Grid,
    center: f64,
    max_amp: f64,
) -> FieldConfig {
    let n_modes = rng.gen_range(1..=5);
    let budget = rng.gen_range(0.2..1.0) * max_amp;
    let raw: Vec<(f64, f64, f64)> = (1..=n_modes)
        .map(|k| {
            (
                k as f64,
                rng.gen_range(-1.0..1.0_f64),
                rng.gen_range(0.0..2.0 * PI),
            )
        })
        .collect();
    let raw_sum: f64 = raw.iter().map(|(_, a, _)| a.abs()).sum();
    let scale = if raw_sum > 0.0 { budget / raw_sum } else { 0.0 };
    let x_min = grid.position(0);
    let span = grid.position(grid.n_nodes() - 1) - x_min;
    grid.sample(|x| {
        let t = (x - x_min) / span;
        let mut v = center;
        for (k, amp, phase) in &raw {
            v += scale * amp * (k * PI * t + phase).sin();
        }
        v
    })
    .unwrap()
}
