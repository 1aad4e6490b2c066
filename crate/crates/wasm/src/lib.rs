//! Browser-facing bindings for the qubit-qutrit negativity simulator.
//!
//! Every export takes and returns JSON strings, so the demo page stays a
//! single static file with no generated glue types, and failures come back
//! in-band as `{"error": "..."}` instead of thrown exceptions. Under the
//! `#[wasm_bindgen]` attribute these are still ordinary Rust functions, which
//! lets the whole crate compile and test natively alongside the core library.

use qqsim::config::{ResolvedRun, RunConfig};
use qqsim::dynamics::Propagator;
use qqsim::entanglement::{negativity_trace, reference_stats_grid};
use qqsim::linalg::hermitian_eig;
use qqsim::model::build_hamiltonian;
use qqsim::run::apply_sweep_value;
use qqsim::states::build_initial_state;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Simulates the run described by `config_json` (same schema as the CLI
/// configuration; `outputs` is ignored) and returns
/// `{"times": [...], "values": [...], "stats": {...}}`.
///
/// The statistics summarize exactly the returned samples. That keeps slider
/// interaction cheap; request `"grid": {"t_start": 0, "t_end": 200, "step":
/// 0.005}` to reproduce the CLI's headline numbers.
#[wasm_bindgen]
pub fn simulate(config_json: &str) -> String {
    wrap(simulate_value(config_json))
}

/// Returns the Hamiltonian for the model in `config_json` together with its
/// spectrum: `{"eigenvalues": [...], "hamiltonian": [[[re, im], ...], ...]}`
/// with the eigenvalues ascending.
#[wasm_bindgen]
pub fn spectrum(config_json: &str) -> String {
    wrap(spectrum_value(config_json))
}

/// Re-runs the model once per entry of `values_json` (a JSON array of
/// numbers) with `param` overridden, returning `{"param": ..., "rows":
/// [{"value": ..., "min": ..., "max": ..., "time_average": ...}, ...]}`.
///
/// Each row's statistics use the same long reference window as the CLI
/// sweep, so rows match `qqsim sweep` output but cost a noticeable fraction
/// of a second per value.
#[wasm_bindgen]
pub fn sweep(config_json: &str, param: &str, values_json: &str) -> String {
    wrap(sweep_rows(config_json, param, values_json))
}

fn wrap(result: Result<Value, String>) -> String {
    match result {
        Ok(value) => value.to_string(),
        Err(message) => json!({ "error": message }).to_string(),
    }
}

fn parse_config(config_json: &str) -> Result<ResolvedRun, String> {
    RunConfig::from_json(config_json)
        .map_err(|e| e.to_string())?
        .resolve()
        .map_err(|e| e.to_string())
}

fn simulate_value(config_json: &str) -> Result<Value, String> {
    let run = parse_config(config_json)?;
    let propagator = Propagator::new(&run.params).map_err(|e| e.to_string())?;
    let trace = negativity_trace(&propagator, &run.state, &run.grid, run.side);
    Ok(json!({
        "times": trace.times(),
        "values": trace.values(),
        "stats": trace.stats(),
    }))
}

fn spectrum_value(config_json: &str) -> Result<Value, String> {
    let run = parse_config(config_json)?;
    let hamiltonian = build_hamiltonian(&run.params).map_err(|e| e.to_string())?;
    let eigen = hermitian_eig(&hamiltonian).map_err(|e| e.to_string())?;
    let entries: Vec<Vec<[f64; 2]>> = (0..hamiltonian.rows())
        .map(|i| {
            (0..hamiltonian.cols())
                .map(|j| {
                    let z = hamiltonian[(i, j)];
                    [z.re, z.im]
                })
                .collect()
        })
        .collect();
    Ok(json!({
        "eigenvalues": eigen.values(),
        "hamiltonian": entries,
    }))
}

fn sweep_rows(config_json: &str, param: &str, values_json: &str) -> Result<Value, String> {
    let run = parse_config(config_json)?;
    let values: Vec<f64> = serde_json::from_str(values_json)
        .map_err(|e| format!("values must be a JSON array of numbers: {e}"))?;
    let grid = reference_stats_grid();
    let mut rows = Vec::with_capacity(values.len());
    for &value in &values {
        let (params, spec) = apply_sweep_value(run.params, run.state_spec, param, value)
            .map_err(|e| e.to_string())?;
        let state = build_initial_state(&spec).map_err(|e| e.to_string())?;
        let propagator = Propagator::new(&params).map_err(|e| e.to_string())?;
        let stats = *negativity_trace(&propagator, &state, &grid, run.side).stats();
        rows.push(json!({
            "value": value,
            "min": stats.min,
            "max": stats.max,
            "time_average": stats.time_average,
        }));
    }
    Ok(json!({ "param": param, "rows": rows }))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Empty object: isotropic unit couplings, antipodal reference state.
    const DEFAULT_CONFIG: &str = "{}";

    #[test]
    fn simulate_returns_aligned_arrays_and_stats() {
        let raw = simulate(r#"{"grid": {"t_start": 0.0, "t_end": 2.0, "step": 0.01}}"#);
        let response: Value = serde_json::from_str(&raw).unwrap();
        assert!(response.get("error").is_none(), "unexpected error: {raw}");
        let times = response["times"].as_array().unwrap();
        let values = response["values"].as_array().unwrap();
        assert_eq!(times.len(), 201);
        assert_eq!(values.len(), 201);
        assert!((values[0].as_f64().unwrap() - 0.5).abs() < 1e-12);
        assert!((response["stats"]["max"].as_f64().unwrap() - 0.5).abs() < 1e-9);
        assert_eq!(response["stats"]["argmax_t"].as_f64().unwrap(), 0.0);
    }

    #[test]
    fn bad_config_reports_error_in_band() {
        let response: Value = serde_json::from_str(&simulate(r#"{"model": {"j_q": 1}}"#)).unwrap();
        let message = response["error"].as_str().unwrap();
        assert!(message.contains("j_q"), "unexpected message: {message}");
    }

    #[test]
    fn spectrum_exposes_matrix_and_ascending_eigenvalues() {
        let response: Value = serde_json::from_str(&spectrum(DEFAULT_CONFIG)).unwrap();
        let eigen: Vec<f64> = response["eigenvalues"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_f64().unwrap())
            .collect();
        assert_eq!(eigen.len(), 6);
        assert!(eigen.windows(2).all(|w| w[0] <= w[1]));
        // At the isotropic unit point the qubit-up, qutrit-(m=+1) level
        // decouples and sits at b_qb/2 + b_qt + j_z/2 = 2.
        assert!(eigen.iter().any(|&e| (e - 2.0).abs() < 1e-12));
        let matrix = response["hamiltonian"].as_array().unwrap();
        assert_eq!(matrix.len(), 6);
        let hop = &matrix[1].as_array().unwrap()[3];
        let expected = 0.5_f64.sqrt();
        assert!((hop[0].as_f64().unwrap() - expected).abs() < 1e-12);
        assert!((hop[1].as_f64().unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn sweep_rows_follow_requested_values() {
        let response: Value =
            serde_json::from_str(&sweep(DEFAULT_CONFIG, "d_z", "[1, 2]")).unwrap();
        assert_eq!(response["param"].as_str().unwrap(), "d_z");
        let rows = response["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0]["value"].as_f64().unwrap(), 1.0);
        assert_eq!(rows[1]["value"].as_f64().unwrap(), 2.0);
        let avg_weak = rows[0]["time_average"].as_f64().unwrap();
        let avg_strong = rows[1]["time_average"].as_f64().unwrap();
        assert!(
            avg_weak > avg_strong,
            "stronger z-axis DM should lower the average: {avg_weak} vs {avg_strong}"
        );
    }

    #[test]
    fn sweep_rejects_unknown_parameter() {
        let response: Value =
            serde_json::from_str(&sweep(DEFAULT_CONFIG, "coupling", "[1]")).unwrap();
        let message = response["error"].as_str().unwrap();
        assert!(
            message.contains("coupling"),
            "unexpected message: {message}"
        );
    }
}
