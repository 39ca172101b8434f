//! WebAssembly bindings for the static page in `www/`.
//!
//! Each exported function returns a flat `Float64Array`; row layouts are
//! documented per function. Spins and projections cross the boundary as
//! doubled integers (2s, 2m) so half-integers stay exact.

use spin_brach::{evolution, metric, FieldSpec, HalfInt, TransferProblem};
use wasm_bindgen::prelude::*;

/// Columns per [`trajectory`] row.
pub const TRAJECTORY_STRIDE: usize = 5;
/// Columns per [`tilt_sweep`] row.
pub const SWEEP_STRIDE: usize = 4;

/// Rows `[t, theta, phi, residency_fidelity, phase_beta]` for |m⟩ evolving
/// under H = ω S·n′ over `steps` evenly spaced times in [0, t_end].
pub fn trajectory_rows(
    twice_s: i32,
    twice_m: i32,
    field_theta: f64,
    field_phi: f64,
    omega: f64,
    t_end: f64,
    steps: u32,
) -> Result<Vec<f64>, String> {
    if steps < 2 {
        return Err(format!("need at least 2 steps, got {steps}"));
    }
    let field = FieldSpec::new(omega, field_theta, field_phi).map_err(|e| e.to_string())?;
    let times: Vec<f64> = (0..steps).map(|k| t_end * k as f64 / (steps - 1) as f64).collect();
    let samples = evolution::trace(
        HalfInt::from_twice(twice_s.into()),
        HalfInt::from_twice(twice_m.into()),
        &field,
        &times,
    )
    .map_err(|e| e.to_string())?;
    Ok(samples
        .iter()
        .flat_map(|x| {
            [
                x.t,
                x.predicted_theta,
                x.predicted_phi,
                x.residency_fidelity,
                x.phase_beta,
            ]
        })
        .collect())
}

/// Rows `[theta_prime, time, speed, path_length]` over reachable tilts up to π/2.
pub fn tilt_sweep_rows(
    twice_s: i32,
    twice_m: i32,
    theta_f: f64,
    omega: f64,
    gamma: f64,
    grid: u32,
) -> Result<Vec<f64>, String> {
    let problem = TransferProblem::new(
        HalfInt::from_twice(twice_s.into()),
        HalfInt::from_twice(twice_m.into()),
        theta_f,
        0.0,
        omega,
        gamma,
    )
    .map_err(|e| e.to_string())?;
    let rows = spin_brach::sweep_tilt(&problem, grid as usize).map_err(|e| e.to_string())?;
    Ok(rows
        .iter()
        .flat_map(|r| [r.theta_prime, r.time, r.speed, r.path_length])
        .collect())
}

/// Manifold radius for every projection m = s, s−1, …, −s.
pub fn radii_by_projection(twice_s: i32, gamma: f64) -> Result<Vec<f64>, String> {
    let s = HalfInt::from_twice(twice_s.into());
    let spin = spin_brach::Spin::new(s).map_err(|e| e.to_string())?;
    spin.projections()
        .map(|m| metric::manifold_radius(s, m, gamma).map_err(|e| e.to_string()))
        .collect()
}

#[wasm_bindgen]
pub fn trajectory(
    twice_s: i32,
    twice_m: i32,
    field_theta: f64,
    field_phi: f64,
    omega: f64,
    t_end: f64,
    steps: u32,
) -> Result<Vec<f64>, JsError> {
    trajectory_rows(twice_s, twice_m, field_theta, field_phi, omega, t_end, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn tilt_sweep(
    twice_s: i32,
    twice_m: i32,
    theta_f: f64,
    omega: f64,
    gamma: f64,
    grid: u32,
) -> Result<Vec<f64>, JsError> {
    tilt_sweep_rows(twice_s, twice_m, theta_f, omega, gamma, grid).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn manifold_radii(twice_s: i32, gamma: f64) -> Result<Vec<f64>, JsError> {
    radii_by_projection(twice_s, gamma).map_err(|e| JsError::new(&e))
}
