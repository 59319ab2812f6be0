//! `polar2d repro`: recompute the reference tables and report PASS/FAIL.

use polar2d_core::angular::{angular_spectrum, critical_xi, CRITICAL_XI_TOL};
use polar2d_core::floquet::characteristic_values;
use polar2d_core::golden;

const TABLE_REL_TOL: f64 = 1e-7;
const CRITICAL_ABS_TOL: f64 = 5e-9;

fn relative_error(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

fn report(name: &str, outcome: Result<f64, String>, limit: f64) -> bool {
    match outcome {
        Ok(err) if err <= limit => {
            println!("PASS {name}: worst error {err:.3e} (limit {limit:.0e})");
            true
        }
        Ok(err) => {
            println!("FAIL {name}: worst error {err:.3e} (limit {limit:.0e})");
            false
        }
        Err(msg) => {
            println!("FAIL {name}: {msg}");
            false
        }
    }
}

fn angular_table() -> Result<f64, String> {
    let levels = angular_spectrum(golden::ANGULAR_REF_XI, 7, 1e-12).map_err(|e| e.to_string())?;
    Ok(levels
        .iter()
        .zip(golden::ANGULAR_REF_TWO_LAMBDA)
        .map(|(l, want)| relative_error(l.two_lambda, want))
        .fold(0.0, f64::max))
}

fn mathieu_table() -> Result<f64, String> {
    let mut worst = 0.0f64;
    for (row, &nu) in golden::MATHIEU_REF_NU.iter().enumerate() {
        let points = characteristic_values(nu, golden::MATHIEU_REF_Q, 5, 1e-12).map_err(|e| e.to_string())?;
        for (p, want) in points.iter().zip(golden::MATHIEU_REF_A[row]) {
            worst = worst.max(relative_error(p.a, want));
        }
    }
    Ok(worst)
}

fn critical_table() -> Result<f64, String> {
    let mut worst = 0.0f64;
    for (m, want) in golden::CRITICAL_XI.iter().enumerate() {
        let got = critical_xi(m, CRITICAL_XI_TOL).map_err(|e| e.to_string())?;
        worst = worst.max((got - want).abs());
    }
    Ok(worst)
}

/// Prints one line per table; true when all pass.
pub fn run() -> bool {
    let results = [
        report("angular levels (2 lambda at xi = 0.1018484)", angular_table(), TABLE_REL_TOL),
        report("Mathieu values (q = 0.8147872, nu = 1..4)", mathieu_table(), TABLE_REL_TOL),
        report("critical couplings (m = 0..2)", critical_table(), CRITICAL_ABS_TOL),
    ];
    results.iter().all(|&ok| ok)
}
