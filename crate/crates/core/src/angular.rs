//! Periodic angular eigenproblem `(-1/2 d^2/dtheta^2 + xi cos theta) g = lambda g`,
//! `g(theta + 2 pi) = g(theta)`.
//!
//! Even solutions are cosine series `sum a_j cos(j theta)`, odd ones sine
//! series `sum b_j sin(j theta)`. Substituting gives three-term recurrences
//! whose eigenvalue is `2 lambda`:
//!
//! ```text
//! 2l a0 - xi a1 = 0
//! (2l - 1) a1 - xi (2 a0 + a2) = 0
//! (2l - n^2) a_n - xi (a_{n-1} + a_{n+1}) = 0,   n >= 2
//! (2l - n^2) b_n - xi (b_{n-1} + b_{n+1}) = 0,   n >= 1, b_0 = 0
//! ```
//!
//! They are solved two ways: as truncated symmetric tridiagonal matrices
//! (rescaling `a0 -> sqrt(2) a0` symmetrizes the even system), and through
//! the sign of the terminating coefficient `a_N(lambda)` / `b_N(lambda)`.

use std::fmt;

use crate::eigen::{solve_adaptive, SymmetricTridiagonal, TruncationReport};
use crate::error::{Error, Result};

/// Default width of the final bisection bracket in `critical_xi`.
pub const CRITICAL_XI_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    /// Cosine series.
    Even,
    /// Sine series.
    Odd,
}

impl Parity {
    pub fn letter(self) -> char {
        match self {
            Parity::Even => 'E',
            Parity::Odd => 'O',
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// One periodic angular level.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularLevel {
    /// Global index in ascending order of `lambda` (even before odd on ties).
    pub m: usize,
    pub parity: Parity,
    pub lambda: f64,
    /// `2 lambda`, the convention of the reference tables.
    pub two_lambda: f64,
    pub report: TruncationReport,
}

/// `gp = 2 xi`: coupling in the doubled convention.
pub fn gp_from_xi(xi: f64) -> f64 {
    2.0 * xi
}

/// Inverse of [`gp_from_xi`].
pub fn xi_from_gp(gp: f64) -> f64 {
    0.5 * gp
}

fn check_xi(xi: f64) -> Result<()> {
    if !xi.is_finite() {
        return Err(Error::Input(format!("xi must be finite, got {xi}")));
    }
    if xi < 0.0 {
        // xi < 0 maps to xi > 0 under theta -> theta + pi.
        return Err(Error::Domain(format!(
            "xi = {xi} is negative; use |xi| (theta -> theta + pi gives the same spectrum)"
        )));
    }
    Ok(())
}

/// Symmetrized even-parity recurrence matrix of size `n`; its eigenvalues are
/// `2 lambda`. Diagonal `j^2` for `j = 0..n`, couplings `sqrt(2) xi, xi, xi, ...`.
pub fn build_even_matrix(xi: f64, n: usize) -> Result<SymmetricTridiagonal> {
    check_xi(xi)?;
    if n < 3 {
        return Err(Error::Input(format!("basis size must be at least 3, got {n}")));
    }
    let diag = (0..n).map(|j| (j * j) as f64).collect();
    let offdiag = (0..n - 1)
        .map(|j| if j == 0 { std::f64::consts::SQRT_2 * xi } else { xi })
        .collect();
    SymmetricTridiagonal::new(diag, offdiag)
}

/// Odd-parity recurrence matrix of size `n`: diagonal `j^2` for `j = 1..=n`,
/// couplings `xi`.
pub fn build_odd_matrix(xi: f64, n: usize) -> Result<SymmetricTridiagonal> {
    check_xi(xi)?;
    if n < 3 {
        return Err(Error::Input(format!("basis size must be at least 3, got {n}")));
    }
    let diag = (1..=n).map(|j| (j * j) as f64).collect();
    SymmetricTridiagonal::new(diag, vec![xi; n - 1])
}

fn build(parity: Parity, xi: f64, n: usize) -> Result<SymmetricTridiagonal> {
    match parity {
        Parity::Even => build_even_matrix(xi, n),
        Parity::Odd => build_odd_matrix(xi, n),
    }
}

/// Initial basis size for `count` requested levels.
pub fn initial_basis_size(count: usize) -> usize {
    16.max(count + 8)
}

/// Lowest `count` eigenvalues of one parity, as `2 lambda`.
pub fn parity_spectrum(xi: f64, parity: Parity, count: usize, tol: f64) -> Result<(Vec<f64>, TruncationReport)> {
    check_xi(xi)?;
    solve_adaptive(|n| build(parity, xi, n), count, tol, initial_basis_size(count))
}

/// The `count` lowest periodic angular levels, merged over both parities.
///
/// `tol` bounds the truncation drift of `2 lambda`.
pub fn angular_spectrum(xi: f64, count: usize, tol: f64) -> Result<Vec<AngularLevel>> {
    if count == 0 {
        return Err(Error::Input("count must be at least 1".into()));
    }
    let (even, even_report) = parity_spectrum(xi, Parity::Even, count, tol)?;
    let (odd, odd_report) = parity_spectrum(xi, Parity::Odd, count, tol)?;

    let mut levels = Vec::with_capacity(count);
    let (mut i, mut j) = (0, 0);
    while levels.len() < count {
        let take_even = j >= odd.len() || (i < even.len() && even[i] <= odd[j]);
        let (value, parity, report) = if take_even {
            i += 1;
            (even[i - 1], Parity::Even, even_report)
        } else {
            j += 1;
            (odd[j - 1], Parity::Odd, odd_report)
        };
        levels.push(AngularLevel {
            m: levels.len(),
            parity,
            lambda: 0.5 * value,
            two_lambda: value,
            report,
        });
    }
    Ok(levels)
}

/// Runs [`angular_spectrum`] over a grid of couplings in parallel; output
/// order follows `xis`.
pub fn angular_sweep(xis: &[f64], count: usize, tol: f64) -> Result<Vec<Vec<AngularLevel>>> {
    use rayon::prelude::*;
    xis.par_iter().map(|&xi| angular_spectrum(xi, count, tol)).collect()
}

/// Large-coupling estimate `lambda_m ~ -xi + sqrt(xi) (m + 1/2)`, off by O(1).
pub fn asymptotic_lambda(m: usize, xi: f64) -> f64 {
    -xi + xi.sqrt() * (m as f64 + 0.5)
}

/// Terminating coefficient of the forward recurrence, evaluated at `lambda`.
///
/// Starting from `a_0 = 1` (even) or `b_1 = 1` (odd), `n` recurrence rows
/// fix the next coefficient; it vanishes exactly when `2 lambda` is an
/// eigenvalue of the size-`n` truncation. The recurrence is multiplied
/// through by `xi^k` so it stays finite at `xi = 0`, and the running pair is
/// renormalized by its larger magnitude at every step. Only the sign and the
/// zeros of the returned value are meaningful: the forward recurrence is
/// unstable, so away from a root the value saturates at `+-1` almost
/// immediately.
pub fn termination_determinant(lambda: f64, xi: f64, n: usize, parity: Parity) -> Result<f64> {
    if !lambda.is_finite() {
        return Err(Error::Input(format!("lambda must be finite, got {lambda}")));
    }
    check_xi(xi)?;
    if n < 3 {
        return Err(Error::Input(format!("recurrence length must be at least 3, got {n}")));
    }
    Ok(scaled_termination(lambda, xi, n, parity))
}

fn scaled_termination(lambda: f64, xi: f64, n: usize, parity: Parity) -> f64 {
    let two_l = 2.0 * lambda;
    let xi2 = xi * xi;
    // (prev, cur) = (c_{k-1}, c_k) with c_k = xi^k * a_k (or b).
    let (mut prev, mut cur, first) = match parity {
        Parity::Even => {
            // c_0 = 1, c_1 = 2l; row 1 carries the doubled a_0.
            let c2 = (two_l - 1.0) * two_l - 2.0 * xi2;
            (two_l, c2, 2)
        }
        Parity::Odd => (1.0, two_l - 1.0, 1),
    };
    for k in first..n {
        let kk = match parity {
            Parity::Even => k,
            Parity::Odd => k + 1,
        } as f64;
        let next = (two_l - kk * kk) * cur - xi2 * prev;
        prev = cur;
        cur = next;
        let big = cur.abs().max(prev.abs());
        if big > 0.0 {
            prev /= big;
            cur /= big;
        }
    }
    cur
}

/// Raw (unsymmetrized, unscaled) recurrence coefficients for `xi != 0`,
/// `a_0..=a_n` or `b_1..=b_{n+1}`. Negative `xi` is allowed here.
#[cfg(test)]
pub(crate) fn raw_recurrence(lambda: f64, xi: f64, n: usize, parity: Parity) -> Vec<f64> {
    let two_l = 2.0 * lambda;
    let mut c = Vec::with_capacity(n + 1);
    match parity {
        Parity::Even => {
            c.push(1.0);
            c.push(two_l / xi);
            c.push(((two_l - 1.0) * c[1] - 2.0 * xi * c[0]) / xi);
            for k in 2..n {
                let kk = (k * k) as f64;
                let next = ((two_l - kk) * c[k] - xi * c[k - 1]) / xi;
                c.push(next);
            }
        }
        Parity::Odd => {
            c.push(1.0);
            c.push((two_l - 1.0) / xi);
            for k in 1..n {
                let kk = ((k + 1) * (k + 1)) as f64;
                let next = ((two_l - kk) * c[k] - xi * c[k - 1]) / xi;
                c.push(next);
            }
        }
    }
    c
}

/// Roots in `lambda` of [`termination_determinant`] below `lambda_max`,
/// located by a sign scan and bisected to floating-point resolution.
pub fn termination_roots(xi: f64, parity: Parity, n: usize, lambda_max: f64) -> Result<Vec<f64>> {
    let matrix = build(parity, xi, n)?;
    let (glo, _) = matrix.gershgorin_bounds();
    let start = 0.5 * glo - 0.5;
    if !(lambda_max > start) {
        return Ok(Vec::new());
    }
    let step = 0.01;
    let f = |l: f64| scaled_termination(l, xi, n, parity);
    let mut roots = Vec::new();
    let mut a = start;
    let mut fa = f(a);
    while a < lambda_max {
        let b = (a + step).min(lambda_max);
        let fb = f(b);
        if fb == 0.0 {
            roots.push(b);
        } else if fa != 0.0 && (fa < 0.0) != (fb < 0.0) {
            roots.push(bisect_sign(&f, a, b, fa));
        }
        a = b;
        fa = fb;
    }
    Ok(roots)
}

fn bisect_sign<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, flo: f64) -> f64 {
    let neg_lo = flo < 0.0;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Coupling `xi_m` at which `lambda_m(xi)` crosses zero (`xi_0 = 0`).
///
/// The number of negative levels is bracketed by Sturm counts at
/// `lambda = 0`; the crossing is then bisected on the sign of the
/// terminating coefficient at `lambda = 0` for the parity whose count
/// changes, down to a bracket of width `tol`. The search covers
/// `(0, 50 (m+1)^2]`.
pub fn critical_xi(m: usize, tol: f64) -> Result<f64> {
    if m == 0 {
        return Ok(0.0);
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Input(format!("tolerance must be positive, got {tol}")));
    }
    let xi_max = 50.0 * ((m + 1) * (m + 1)) as f64;
    let n = critical_basis_size(m, xi_max)?;

    let negatives = |xi: f64| -> Result<(usize, usize)> {
        Ok((
            build_even_matrix(xi, n)?.sturm_count(0.0)?,
            build_odd_matrix(xi, n)?.sturm_count(0.0)?,
        ))
    };

    let step = 0.25;
    let mut lo = 0.0;
    let mut lo_counts = negatives(lo)?;
    let mut hi;
    let mut hi_counts;
    loop {
        hi = (lo + step).min(xi_max);
        hi_counts = negatives(hi)?;
        if hi_counts.0 + hi_counts.1 > m {
            break;
        }
        if hi >= xi_max {
            return Err(Error::Search(format!(
                "lambda_{m} does not cross zero for xi in (0, {xi_max}]"
            )));
        }
        lo = hi;
        lo_counts = hi_counts;
    }

    // Narrow until exactly one parity gains exactly one negative level.
    while !(lo_counts.0 + lo_counts.1 == m && hi_counts.0 + hi_counts.1 == m + 1) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::Search(format!("could not isolate the crossing of lambda_{m}")));
        }
        let c = negatives(mid)?;
        if c.0 + c.1 > m {
            hi = mid;
            hi_counts = c;
        } else {
            lo = mid;
            lo_counts = c;
        }
    }
    let parity = if hi_counts.0 > lo_counts.0 { Parity::Even } else { Parity::Odd };

    let sign_at = |xi: f64| scaled_termination(0.0, xi, n, parity) < 0.0;
    let lo_sign = sign_at(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sign_at(mid) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn critical_basis_size(m: usize, xi_max: f64) -> Result<usize> {
    let k = m + 2;
    let (_, even) = parity_spectrum(xi_max, Parity::Even, k, 1e-12)?;
    let (_, odd) = parity_spectrum(xi_max, Parity::Odd, k, 1e-12)?;
    Ok(2 * even.final_size.max(odd.final_size))
}

/// Fourier coefficients of one angular eigenfunction, normalized so that
/// `int_0^{2 pi} g^2 dtheta = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficients {
    pub parity: Parity,
    /// `a_0, a_1, ...` for even parity, `b_1, b_2, ...` for odd.
    pub coeffs: Vec<f64>,
}

impl FourierCoefficients {
    /// `int_0^{2 pi} g(theta)^2 dtheta`.
    pub fn l2_norm_squared(&self) -> f64 {
        let pi = std::f64::consts::PI;
        match self.parity {
            Parity::Even => {
                let head = self.coeffs.first().copied().unwrap_or(0.0);
                2.0 * pi * head * head + pi * self.coeffs.iter().skip(1).map(|c| c * c).sum::<f64>()
            }
            Parity::Odd => pi * self.coeffs.iter().map(|c| c * c).sum::<f64>(),
        }
    }

    /// Residual of each recurrence row at the given eigenvalue, with
    /// coefficients beyond the stored range taken as zero.
    pub fn recurrence_residuals(&self, xi: f64, lambda: f64) -> Vec<f64> {
        let c = &self.coeffs;
        let at = |i: isize| -> f64 {
            if i < 0 {
                0.0
            } else {
                c.get(i as usize).copied().unwrap_or(0.0)
            }
        };
        let two_l = 2.0 * lambda;
        (0..c.len() as isize)
            .map(|i| match self.parity {
                Parity::Even => match i {
                    0 => two_l * at(0) - xi * at(1),
                    1 => (two_l - 1.0) * at(1) - xi * (2.0 * at(0) + at(2)),
                    _ => (two_l - (i * i) as f64) * at(i) - xi * (at(i - 1) + at(i + 1)),
                },
                Parity::Odd => {
                    let n = (i + 1) as f64;
                    (two_l - n * n) * at(i) - xi * (at(i - 1) + at(i + 1))
                }
            })
            .collect()
    }
}

/// Fourier coefficients for a level returned by [`angular_spectrum`] at the
/// same `xi`.
pub fn fourier_coefficients(xi: f64, level: &AngularLevel) -> Result<FourierCoefficients> {
    let n = (2 * level.report.final_size).max(32);
    let matrix = build(level.parity, xi, n)?;
    let v = matrix.eigenvector(level.two_lambda)?;
    let root_pi = std::f64::consts::PI.sqrt();
    let coeffs = match level.parity {
        Parity::Even => v
            .iter()
            .enumerate()
            .map(|(j, x)| if j == 0 { x / (std::f64::consts::SQRT_2 * root_pi) } else { x / root_pi })
            .collect(),
        Parity::Odd => v.iter().map(|x| x / root_pi).collect(),
    };
    Ok(FourierCoefficients {
        parity: level.parity,
        coeffs,
    })
}
