//! Mathieu characteristic values `a(nu, q)` for real Floquet exponent `nu`.
//!
//! Convention: `y'' + (a - 2 q cos 2z) y = 0` with `y = e^{i nu z} v(z)` and
//! `v` pi-periodic. In the basis `e^{2ijz}` the problem is the symmetric
//! tridiagonal matrix with diagonal `(nu + 2j)^2` and couplings `q`.
//!
//! Setting `theta = 2z` in the angular equation gives `a = 8 lambda`,
//! `q = 4 xi`; exponents `nu = 0, 2, ...` recover the 2pi-periodic angular
//! spectrum.

use crate::eigen::{solve_adaptive, SymmetricTridiagonal, TruncationReport};
use crate::error::{Error, Result};

/// Equation form the characteristic values refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MathieuConvention {
    /// `y'' + (a - 2 q cos 2z) y = 0`.
    #[default]
    StandardTwoQ,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FloquetPoint {
    pub nu: f64,
    pub q: f64,
    /// Position in ascending order of `a` at this `(nu, q)`.
    pub band: usize,
    pub a: f64,
    pub convention: MathieuConvention,
    pub report: TruncationReport,
}

/// One row of a band-structure table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandRow {
    pub nu: f64,
    pub band: usize,
    pub lambda: f64,
}

/// Angular coupling `xi` to Mathieu `q`.
pub fn q_from_xi(xi: f64) -> f64 {
    4.0 * xi
}

/// Mathieu characteristic value to angular eigenvalue.
pub fn lambda_from_a(a: f64) -> f64 {
    a / 8.0
}

/// Reduces `nu` into `[0, 2)` using `a(nu) = a(nu + 2)`.
pub fn wrap_exponent(nu: f64) -> f64 {
    let w = nu.rem_euclid(2.0);
    if w >= 2.0 {
        0.0
    } else {
        w
    }
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Input(format!("{name} must be finite, got {v}")))
    }
}

/// Matrix over `j = -half_width..=half_width` with diagonal `(nu + 2j)^2`
/// and constant coupling `q`. `nu` is used as given (no wrapping).
pub fn build_floquet_matrix(nu: f64, q: f64, half_width: usize) -> Result<SymmetricTridiagonal> {
    check_finite("nu", nu)?;
    check_finite("q", q)?;
    if half_width < 2 {
        return Err(Error::Input(format!("half width must be at least 2, got {half_width}")));
    }
    let hw = half_width as i64;
    let diag = (-hw..=hw)
        .map(|j| {
            let k = nu + 2.0 * j as f64;
            k * k
        })
        .collect();
    SymmetricTridiagonal::new(diag, vec![q; 2 * half_width])
}

/// The `count` lowest characteristic values at `(nu, q)`, ascending.
///
/// `nu` is wrapped into `[0, 2)` first, so exponents differing by an even
/// integer give identical output.
pub fn characteristic_values(nu: f64, q: f64, count: usize, tol: f64) -> Result<Vec<FloquetPoint>> {
    check_finite("nu", nu)?;
    check_finite("q", q)?;
    if count == 0 {
        return Err(Error::Input("count must be at least 1".into()));
    }
    let wrapped = wrap_exponent(nu);
    // Sizes are 2J + 1; the doubling in solve_adaptive maps n -> J = n / 2.
    let n0 = (count + 8).max(16);
    let (values, report) = solve_adaptive(
        |n| build_floquet_matrix(wrapped, q, (n / 2).max(2)),
        count,
        tol,
        n0,
    )?;
    let report = TruncationReport {
        final_size: 2 * (report.final_size / 2).max(2) + 1,
        ..report
    };
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(band, a)| FloquetPoint {
            nu,
            q,
            band,
            a,
            convention: MathieuConvention::StandardTwoQ,
            report,
        })
        .collect())
}

/// Angular eigenvalues `lambda_m(nu) = a(nu, 4 xi) / 8`.
pub fn lambda_band(nu: f64, xi: f64, count: usize) -> Result<Vec<f64>> {
    lambda_band_tol(nu, xi, count, 1e-12)
}

pub fn lambda_band_tol(nu: f64, xi: f64, count: usize, tol: f64) -> Result<Vec<f64>> {
    check_finite("xi", xi)?;
    // a carries a factor 8 relative to lambda.
    Ok(characteristic_values(nu, q_from_xi(xi), count, 8.0 * tol)?
        .into_iter()
        .map(|p| lambda_from_a(p.a))
        .collect())
}

/// Band table over a grid of exponents in `[0, 2]`: one row per `(nu, band)`,
/// grid-major. Bands are labelled by sorted order at each `nu`; the grid is
/// evaluated in parallel but rows follow the input order.
pub fn band_sweep(nu_grid: &[f64], xi: f64, count: usize) -> Result<Vec<BandRow>> {
    use rayon::prelude::*;
    if nu_grid.is_empty() {
        return Err(Error::Input("exponent grid must not be empty".into()));
    }
    if let Some(bad) = nu_grid.iter().find(|nu| !(0.0..=2.0).contains(*nu)) {
        return Err(Error::Input(format!("exponent {bad} outside [0, 2]")));
    }
    let per_point: Vec<Vec<f64>> = nu_grid
        .par_iter()
        .map(|&nu| lambda_band(nu, xi, count))
        .collect::<Result<_>>()?;
    Ok(nu_grid
        .iter()
        .zip(per_point)
        .flat_map(|(&nu, bands)| {
            bands
                .into_iter()
                .enumerate()
                .map(move |(band, lambda)| BandRow { nu, band, lambda })
        })
        .collect())
}

/// Smallest gap between two adjacent bands over a sweep, with its exponent.
pub fn minimum_gap(rows: &[BandRow], lower: usize) -> Option<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    let mut lo_val: Option<(f64, f64)> = None;
    for row in rows {
        if row.band == lower {
            lo_val = Some((row.nu, row.lambda));
        } else if row.band == lower + 1 {
            if let Some((nu, l0)) = lo_val {
                if nu == row.nu {
                    let gap = row.lambda - l0;
                    if best.map_or(true, |(_, g)| gap < g) {
                        best = Some((nu, gap));
                    }
                }
            }
        }
    }
    best
}

/// `n` evenly spaced exponents covering `[0, 2]` inclusive.
pub fn uniform_exponent_grid(points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::Input(format!("need at least 2 grid points, got {points}")));
    }
    let last = (points - 1) as f64;
    Ok((0..points).map(|i| 2.0 * i as f64 / last).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q_TABLE: f64 = 0.8147872;

    fn a_values(nu: f64, q: f64, count: usize) -> Vec<f64> {
        characteristic_values(nu, q, count, 1e-12)
            .unwrap()
            .into_iter()
            .map(|p| p.a)
            .collect()
    }

    #[test]
    fn free_matrix_eigenvalues() {
        let t = build_floquet_matrix(1.0, 0.0, 2).unwrap();
        let ev = t.lowest_eigenvalues(3, 1e-12).unwrap();
        for (a, b) in ev.iter().zip([1.0, 1.0, 9.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(build_floquet_matrix(1.0, 0.0, 1).is_err());
        assert!(build_floquet_matrix(f64::NAN, 0.0, 3).is_err());
    }

    #[test]
    fn free_case_quarter_exponent() {
        let a = a_values(0.5, 0.0, 3);
        for (x, y) in a.iter().zip([0.25, 2.25, 6.25]) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn odd_exponent_rows_identical() {
        assert_eq!(a_values(1.0, Q_TABLE, 5), a_values(3.0, Q_TABLE, 5));
        assert_eq!(a_values(2.0, Q_TABLE, 5), a_values(4.0, Q_TABLE, 5));
    }

    #[test]
    fn wraps_exponent() {
        assert_eq!(wrap_exponent(3.0), 1.0);
        assert_eq!(wrap_exponent(4.0), 0.0);
        assert_eq!(wrap_exponent(-0.5), 1.5);
        assert_eq!(wrap_exponent(2.0), 0.0);
    }

    #[test]
    fn small_q_ground_value() {
        for &q in &[0.02, 0.05, 0.1] {
            let a = a_values(2.0, q, 1)[0];
            assert!((a + 0.5 * q * q).abs() < q.powi(4), "q={q} a={a}");
        }
    }

    #[test]
    fn lambda_band_periodic_in_exponent() {
        let xi = Q_TABLE / 8.0;
        let l0 = lambda_band(0.0, xi, 7).unwrap();
        let l2 = lambda_band(2.0, xi, 7).unwrap();
        for (a, b) in l0.iter().zip(&l2) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn avoided_crossing_gap_positive() {
        let l = lambda_band(1.0, Q_TABLE / 8.0, 2).unwrap();
        assert!(l[1] - l[0] > 0.0);
    }

    #[test]
    fn band_sweep_shapes() {
        let rows = band_sweep(&[0.0, 1.0, 2.0], Q_TABLE / 8.0, 2).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].nu, 0.0);
        assert_eq!(rows[5].nu, 2.0);
        assert!((rows[0].lambda - rows[4].lambda).abs() < 1e-10);
        assert!(band_sweep(&[], 0.1, 2).is_err());
        assert!(band_sweep(&[2.5], 0.1, 2).is_err());
    }

    #[test]
    fn free_band_zero_traces_parabolas() {
        let grid = uniform_exponent_grid(41).unwrap();
        let rows = band_sweep(&grid, 0.0, 1).unwrap();
        for row in rows {
            let nu = row.nu;
            let expect = if nu <= 1.0 { nu * nu } else { (nu - 2.0) * (nu - 2.0) } / 8.0;
            assert!((row.lambda - expect).abs() < 1e-12, "nu={nu}");
        }
    }

    #[test]
    fn grid_construction() {
        assert_eq!(uniform_exponent_grid(3).unwrap(), vec![0.0, 1.0, 2.0]);
        assert!(uniform_exponent_grid(1).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn lowest(nu: f64, q: f64) -> Vec<f64> {
            build_floquet_matrix(nu, q, 20).unwrap().lowest_eigenvalues(6, 1e-13).unwrap()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn spectrum_invariant_under_shift_and_reflection(nu in -1.0..1.0f64, q in 0.0..3.0f64) {
                let base = lowest(nu, q);
                for other in [lowest(nu + 2.0, q), lowest(-nu, q)] {
                    for (a, b) in base.iter().zip(&other) {
                        prop_assert!((a - b).abs() < 1e-10, "{} vs {}", a, b);
                    }
                }
            }

            #[test]
            fn free_spectrum_exact(nu in 0.0..2.0f64) {
                let a = a_values(nu, 0.0, 4);
                let mut expect: Vec<f64> = (-5i32..=5).map(|j| (nu + 2.0 * j as f64).powi(2)).collect();
                expect.sort_by(|x, y| x.partial_cmp(y).unwrap());
                for (x, y) in a.iter().zip(&expect) {
                    prop_assert!((x - y).abs() < 1e-11);
                }
            }
        }
    }
}
