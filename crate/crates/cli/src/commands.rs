//! Command implementations. Every command reads its inputs from the merged
//! [`Config`], writes deterministic CSV/JSON artifacts, and reports created
//! paths on stdout. JSON documents echo the resolved configuration under a
//! `config` key.

use std::f64::consts::PI;
use std::path::Path;

use rayon::prelude::*;

use tiltwell::euclidean::{energy_functional, euclidean_action_2d, reduced_action};
use tiltwell::io::{fmt_f64_csv, read_field_csv, write_field_csv, JsonValue};
use tiltwell::lattice::wall_energy_closed_form;
use tiltwell::potentials::PotentialSpec;
use tiltwell::solitons::solve_kink;
use tiltwell::wavefunctional::vacuum_states;
use tiltwell::{DeltaPair, Grid, SpacetimeConfig};

use crate::config::{CliError, Config};

const POTENTIAL_KEYS: &[&str] = &[
    "potential.family",
    "potential.lambda",
    "potential.a",
    "potential.tilt",
    "potential.c_a",
    "potential.c_b",
    "potential.phi_c",
    "potential.phi0",
    "potential.c0",
    "potential.c1",
];
const GRID_KEYS: &[&str] = &["grid.x_min", "grid.x_max", "grid.n"];

pub fn run(config: &Config) -> Result<(), CliError> {
    match config.command.as_str() {
        "kink" => kink(config),
        "minima" => minima(config),
        "action" => action(config),
        "overlap" => overlap(config),
        "delta-demo" => delta_demo(config),
        "sweep" => sweep(config),
        other => Err(CliError::config(format!("unknown command `{other}`"))),
    }
}

fn allowed(groups: &[&[&'static str]]) -> Vec<&'static str> {
    groups.iter().flat_map(|g| g.iter().copied()).collect()
}

/// Attaches the config echo and writes the document with a trailing newline.
fn write_json(path: &str, doc: JsonValue, config: &Config) -> Result<(), CliError> {
    let mut doc = doc;
    if let JsonValue::Object(map) = &mut doc {
        map.insert("config".to_string(), config.echo_json());
    }
    std::fs::write(path, format!("{}\n", doc.render()))?;
    println!("wrote {path}");
    Ok(())
}

fn write_text(path: &str, text: String) -> Result<(), CliError> {
    std::fs::write(path, text)?;
    println!("wrote {path}");
    Ok(())
}

fn kink(config: &Config) -> Result<(), CliError> {
    config.check_allowed(&allowed(&[
        POTENTIAL_KEYS,
        GRID_KEYS,
        &["output.profile_csv", "output.summary_json"],
    ]))?;
    let spec = config.potential()?;
    let grid = config.grid()?;
    let profile_path = config.require("output.profile_csv")?;
    let summary_path = config.require("output.summary_json")?;

    let solution = solve_kink(&spec, grid)?;
    write_field_csv(Path::new(profile_path), &solution.profile)?;
    println!("wrote {profile_path}");
    write_json(summary_path, solution.summary_json(), config)
}

fn minima(config: &Config) -> Result<(), CliError> {
    config.check_allowed(&allowed(&[
        POTENTIAL_KEYS,
        &["bracket.lo", "bracket.hi", "output.json"],
    ]))?;
    let spec = config.potential()?;
    let (default_lo, default_hi) = spec.default_bracket();
    let lo = config.optional_f64("bracket.lo", default_lo)?;
    let hi = config.optional_f64("bracket.hi", default_hi)?;
    let out = config.require("output.json")?;

    let vacua = spec.find_minima(lo, hi)?;
    let doc = JsonValue::object([
        ("phi_false".to_string(), JsonValue::Float(vacua.phi_false)),
        ("phi_true".to_string(), JsonValue::Float(vacua.phi_true)),
        ("v_false".to_string(), JsonValue::Float(vacua.v_false)),
        ("v_true".to_string(), JsonValue::Float(vacua.v_true)),
        ("gap".to_string(), JsonValue::Float(vacua.gap)),
    ]);
    write_json(out, doc, config)
}

fn action(config: &Config) -> Result<(), CliError> {
    config.check_allowed(&allowed(&[
        POTENTIAL_KEYS,
        GRID_KEYS,
        &[
            "action.mode",
            "action.t_p",
            "profile.source",
            "profile.csv",
            "tau.min",
            "tau.max",
            "tau.n",
            "output.json",
        ],
    ]))?;
    let spec = config.potential()?;
    let out = config.require("output.json")?;

    let profile = match config.require("profile.source")? {
        "csv" => {
            for key in GRID_KEYS {
                config.forbid(key, "the profile grid comes from the csv file")?;
            }
            read_field_csv(Path::new(config.require("profile.csv")?))?
        }
        "kink" => {
            config.forbid("profile.csv", "profile.source = kink builds the profile")?;
            solve_kink(&spec, config.grid()?)?.profile
        }
        "false_vacuum" => {
            config.forbid("profile.csv", "profile.source = false_vacuum builds the profile")?;
            let grid = config.grid()?;
            let (lo, hi) = spec.default_bracket();
            let vacua = spec.find_minima(lo, hi)?;
            grid.sample(|_| vacua.phi_false)?
        }
        other => {
            return Err(CliError::config(format!(
                "key `profile.source`: unknown source `{other}` \
                 (expected csv, kink, or false_vacuum)"
            )))
        }
    };

    let report = match config.require("action.mode")? {
        "energy" => {
            config.forbid("action.t_p", "action.mode = energy takes no duration")?;
            for key in ["tau.min", "tau.max", "tau.n"] {
                config.forbid(key, "action.mode = energy has no time axis")?;
            }
            energy_functional(&spec, &profile)
        }
        "reduced" => {
            for key in ["tau.min", "tau.max", "tau.n"] {
                config.forbid(key, "action.mode = reduced has no time axis")?;
            }
            reduced_action(&spec, &profile, config.require_f64("action.t_p")?)?
        }
        "spacetime" => {
            config.forbid("action.t_p", "action.mode = spacetime integrates over tau")?;
            let tau_grid = Grid::new(
                config.require_f64("tau.min")?,
                config.require_f64("tau.max")?,
                config.require_usize("tau.n")?,
            )?;
            let spacetime = SpacetimeConfig::tau_independent(tau_grid, &profile);
            euclidean_action_2d(&spec, &spacetime)
        }
        other => {
            return Err(CliError::config(format!(
                "key `action.mode`: unknown mode `{other}` \
                 (expected energy, reduced, or spacetime)"
            )))
        }
    };
    write_json(out, report.to_json(), config)
}

fn overlap(config: &Config) -> Result<(), CliError> {
    config.check_allowed(&allowed(&[POTENTIAL_KEYS, GRID_KEYS, &["output.json"]]))?;
    let spec = config.potential()?;
    let grid = config.grid()?;
    let out = config.require("output.json")?;

    let (lo, hi) = spec.default_bracket();
    let vacua = spec.find_minima(lo, hi)?;
    let (psi_initial, psi_final) = vacuum_states(&spec, grid)?;
    let log_overlap = psi_initial.log_overlap(&psi_final)?;

    let doc = JsonValue::object([
        ("phi_F".to_string(), JsonValue::Float(vacua.phi_false)),
        ("phi_T".to_string(), JsonValue::Float(vacua.phi_true)),
        ("gap".to_string(), JsonValue::Float(vacua.gap)),
        (
            "alpha".to_string(),
            JsonValue::Float(psi_initial.stiffness()[0]),
        ),
        ("overlap".to_string(), JsonValue::Float(log_overlap.exp())),
        ("log_overlap".to_string(), JsonValue::Float(log_overlap)),
    ]);
    write_json(out, doc, config)
}

fn delta_demo(config: &Config) -> Result<(), CliError> {
    config.check_allowed(&allowed(&[&[
        "delta.n_min",
        "delta.n_max",
        "delta.count",
        "delta.l_sep",
        "output.csv",
    ]]))?;
    let n_min = config.require_f64("delta.n_min")?;
    let n_max = config.require_f64("delta.n_max")?;
    let count = config.require_usize("delta.count")?;
    let l_sep = config.optional_f64("delta.l_sep", 10.0)?;
    let out = config.require("output.csv")?;
    if !(n_min > 0.0 && n_max >= n_min) {
        return Err(CliError::config(format!(
            "keys `delta.n_min`/`delta.n_max`: need 0 < n_min <= n_max, got {n_min} and {n_max}"
        )));
    }
    if count < 1 {
        return Err(CliError::config(
            "key `delta.count`: need at least one sample".to_string(),
        ));
    }

    // The demo range always carries the reference width N = 2 sqrt(pi),
    // where the closed form evaluates to 1/sqrt(2) for well-separated walls.
    let reference_n = 2.0 * PI.sqrt();
    let mut widths: Vec<f64> = (0..count)
        .map(|k| {
            if count == 1 {
                n_min
            } else {
                n_min + (n_max - n_min) * k as f64 / (count - 1) as f64
            }
        })
        .collect();
    if !widths.iter().any(|&n| n == reference_n) {
        widths.push(reference_n);
    }
    widths.sort_by(f64::total_cmp);

    let mut csv = String::from("N,computed,closed_form,paper_value_flag\n");
    for n_param in widths {
        let half = 0.5 * l_sep + 14.0 / n_param;
        let dx = 0.1 / n_param;
        let nodes = (2.0 * half / dx).ceil() as usize + 1;
        let grid = Grid::new(-half, half, nodes)?;
        let pair = DeltaPair::new(n_param, l_sep, grid)?;
        let computed = pair.wall_gradient_energy();
        let closed = wall_energy_closed_form(n_param, l_sep);
        let flag = if n_param == reference_n { 1 } else { 0 };
        csv.push_str(&format!(
            "{},{},{},{flag}\n",
            fmt_f64_csv(n_param),
            fmt_f64_csv(computed),
            fmt_f64_csv(closed),
        ));
    }
    write_text(out, csv)
}

fn sweep(config: &Config) -> Result<(), CliError> {
    config.check_allowed(&allowed(&[
        POTENTIAL_KEYS,
        GRID_KEYS,
        &["sweep.tilt_min", "sweep.tilt_max", "sweep.tilt_step", "output.csv"],
    ]))?;
    config.forbid("potential.tilt", "the sweep sets the tilt itself")?;
    let spec = config.potential()?;
    let PotentialSpec::DrivenSineGordon { c_a, c_b, phi_c, .. } = spec else {
        return Err(CliError::config(
            "key `potential.family`: sweep requires the sine_gordon family".to_string(),
        ));
    };
    let grid = config.grid()?;
    let tilt_min = config.require_f64("sweep.tilt_min")?;
    let tilt_max = config.require_f64("sweep.tilt_max")?;
    let tilt_step = config.require_f64("sweep.tilt_step")?;
    let out = config.require("output.csv")?;
    if !(tilt_min > 0.0 && tilt_max >= tilt_min && tilt_step > 0.0) {
        return Err(CliError::config(format!(
            "keys `sweep.tilt_*`: need 0 < tilt_min <= tilt_max and tilt_step > 0, \
             got min {tilt_min}, max {tilt_max}, step {tilt_step}"
        )));
    }

    let count = ((tilt_max - tilt_min) / tilt_step + 1e-9).floor() as usize + 1;
    let tilts: Vec<f64> = (0..count).map(|k| tilt_min + k as f64 * tilt_step).collect();

    // Sweep points are independent; the indexed collect keeps ascending
    // tilt order regardless of how the pool schedules them.
    let rows: Vec<String> = tilts
        .par_iter()
        .map(|&tilt| -> Result<String, CliError> {
            let spec = PotentialSpec::DrivenSineGordon { c_a, c_b, phi_c, tilt };
            let (lo, hi) = spec.default_bracket();
            let vacua = spec.find_minima(lo, hi)?;
            let (psi_initial, psi_final) = vacuum_states(&spec, grid)?;
            let log_overlap = psi_initial.log_overlap(&psi_final)?;
            Ok(format!(
                "{},{},{},{},{},{}",
                fmt_f64_csv(tilt),
                fmt_f64_csv(vacua.phi_false),
                fmt_f64_csv(vacua.phi_true),
                fmt_f64_csv(vacua.gap),
                fmt_f64_csv(psi_initial.stiffness()[0]),
                fmt_f64_csv(log_overlap),
            ))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut csv = String::from("epsilon,phi_F,phi_T,gap,alpha,log_overlap\n");
    for row in rows {
        csv.push_str(&row);
        csv.push('\n');
    }
    write_text(out, csv)
}
