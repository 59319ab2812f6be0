//! Real symmetric tridiagonal eigenvalues by Sturm-sequence bisection.
//!
//! Every eigenproblem in this crate (angular recurrences, shifted Fourier
//! bases, finite-volume radial operators) reduces to a truncated symmetric
//! tridiagonal matrix of which only a handful of the lowest eigenvalues are
//! needed. Bisection on Sturm counts gives exactly that, deterministically
//! and to a requested absolute width.

use crate::error::{Error, Result};

/// Default replacement for an exactly-zero pivot in the Sturm recursion.
pub const DEFAULT_PIVOT_GUARD: f64 = 1e-300;

/// Default cap on the matrix size reached by [`solve_adaptive`].
pub const DEFAULT_MAX_SIZE: usize = 1 << 14;

/// A real symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTridiagonal {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl SymmetricTridiagonal {
    /// Validates lengths (`offdiag.len() + 1 == diag.len()`, non-empty) and
    /// finiteness of every entry.
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Input("tridiagonal matrix must be non-empty".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::Input(format!(
                "off-diagonal length {} does not match diagonal length {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(offdiag.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Input("tridiagonal matrix has non-finite entries".into()));
        }
        Ok(Self { diag, offdiag })
    }

    /// A diagonal matrix (all couplings zero).
    pub fn diagonal(diag: Vec<f64>) -> Result<Self> {
        let n = diag.len().saturating_sub(1);
        Self::new(diag, vec![0.0; n])
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Leading principal `n x n` submatrix.
    pub fn leading(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(Error::Size {
                requested: n,
                available: self.len(),
            });
        }
        Ok(Self {
            diag: self.diag[..n].to_vec(),
            offdiag: self.offdiag[..n - 1].to_vec(),
        })
    }

    /// Interval containing the whole spectrum, from Gershgorin discs.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            let r = left + right;
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> Result<usize> {
        self.sturm_count_with_guard(x, DEFAULT_PIVOT_GUARD)
    }

    /// [`Self::sturm_count`] with an explicit zero-pivot guard.
    pub fn sturm_count_with_guard(&self, x: f64, guard: f64) -> Result<usize> {
        if !x.is_finite() {
            return Err(Error::Input(format!("Sturm shift must be finite, got {x}")));
        }
        Ok(self.count_below(x, guard))
    }

    fn count_below(&self, x: f64, guard: f64) -> usize {
        let mut count = 0;
        let mut pivot = self.diag[0] - x;
        if pivot < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            // A zero pivot means x sits on an eigenvalue of the leading minor;
            // nudging it positive keeps the count "strictly below".
            let safe = if pivot == 0.0 {
                guard
            } else if pivot.abs() < guard {
                guard.copysign(pivot)
            } else {
                pivot
            };
            let e = self.offdiag[i - 1];
            pivot = (self.diag[i] - x) - e * e / safe;
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k` smallest eigenvalues in ascending order, each located to an
    /// absolute width of at most `tol`.
    ///
    /// Bisection starts from a symmetric power-of-two bracket covering the
    /// Gershgorin interval, so every eigenvalue ends in the aligned dyadic
    /// cell of width `2^floor(log2 tol)` that contains it. The result does
    /// not depend on the rest of the matrix: equal eigenvalues of different
    /// matrices come back bit-identical.
    pub fn lowest_eigenvalues(&self, k: usize, tol: f64) -> Result<Vec<f64>> {
        if k == 0 || k > self.len() {
            return Err(Error::Size {
                requested: k,
                available: self.len(),
            });
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Input(format!("tolerance must be positive, got {tol}")));
        }
        let (lo, hi) = self.gershgorin_bounds();
        let half = dyadic_cover(lo.abs().max(hi.abs()).max(tol));
        Ok((0..k).map(|i| self.bisect_index(i, -half, half, tol)).collect())
    }

    fn bisect_index(&self, index: usize, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
        // Invariant: count(lo) <= index < count(hi).
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid, DEFAULT_PIVOT_GUARD) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        // The eigenvalue lies in [lo, hi); the lower edge is exact whenever
        // the eigenvalue is itself a grid point.
        lo
    }

    /// Unit eigenvector for an (already converged) eigenvalue, by inverse
    /// iteration. The sign is fixed so the largest-magnitude component is
    /// positive.
    pub fn eigenvector(&self, eigenvalue: f64) -> Result<Vec<f64>> {
        if !eigenvalue.is_finite() {
            return Err(Error::Input("eigenvalue must be finite".into()));
        }
        let n = self.len();
        if n == 1 {
            return Ok(vec![1.0]);
        }
        let (glo, ghi) = self.gershgorin_bounds();
        let scale = glo.abs().max(ghi.abs()).max(1.0);
        // Shift slightly off the eigenvalue so the factorization is not
        // exactly singular.
        let shift = eigenvalue + scale * 1e-14;
        let lu = TridiagonalLu::factor(self, shift);
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 1e-3 * (i as f64 % 7.0)).collect();
        normalize(&mut v);
        for _ in 0..4 {
            lu.solve_in_place(&mut v);
            normalize(&mut v);
        }
        let (imax, _) = v
            .iter()
            .enumerate()
            .fold((0, 0.0_f64), |acc, (i, x)| if x.abs() > acc.1 { (i, x.abs()) } else { acc });
        if v[imax] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        Ok(v)
    }
}

/// Smallest power of two `>= x` (for `x > 0`).
fn dyadic_cover(x: f64) -> f64 {
    let mut p = 1.0_f64;
    while p < x {
        p *= 2.0;
    }
    while p * 0.5 >= x {
        p *= 0.5;
    }
    p
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 && norm.is_finite() {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

/// LU factorization of `T - shift*I` with partial pivoting (upper factor has
/// two superdiagonals).
struct TridiagonalLu {
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    fn factor(t: &SymmetricTridiagonal, shift: f64) -> Self {
        let n = t.len();
        let tiny = f64::EPSILON * t.diag.iter().fold(1.0_f64, |m, d| m.max(d.abs()));
        let mut d: Vec<f64> = t.diag.iter().map(|x| x - shift).collect();
        let mut du: Vec<f64> = t.offdiag.clone();
        let dl = &t.offdiag;
        let mut u2 = vec![0.0; n.saturating_sub(2)];
        let mut mult = vec![0.0; n - 1];
        let mut swapped = vec![false; n - 1];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                let piv = if d[i] == 0.0 { tiny } else { d[i] };
                d[i] = piv;
                let m = dl[i] / piv;
                mult[i] = m;
                d[i + 1] -= m * du[i];
            } else {
                swapped[i] = true;
                let m = d[i] / dl[i];
                mult[i] = m;
                d[i] = dl[i];
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - m * d[i + 1];
                if i + 2 < n {
                    u2[i] = t.offdiag[i + 1];
                    // row i+1 loses its superdiagonal entry to row i
                    let next = t.offdiag[i + 1];
                    du[i + 1] = -m * next;
                }
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        Self {
            u0: d,
            u1: du,
            u2,
            mult,
            swapped,
        }
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                b.swap(i, i + 1);
                b[i + 1] -= self.mult[i] * b[i];
            } else {
                b[i + 1] -= self.mult[i] * b[i];
            }
        }
        b[n - 1] /= self.u0[n - 1];
        if n >= 2 {
            b[n - 2] = (b[n - 2] - self.u1[n - 2] * b[n - 1]) / self.u0[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.u1[i] * b[i + 1] - self.u2[i] * b[i + 2]) / self.u0[i];
        }
    }
}

/// Outcome of an adaptive truncation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationReport {
    /// Size of the matrix whose eigenvalues are returned.
    pub final_size: usize,
    /// Largest eigenvalue change between `final_size` and `2 * final_size`.
    pub eigenvalue_shift_at_last_doubling: f64,
    pub converged: bool,
}

/// Grows the truncation by doubling until the `k` lowest eigenvalues move by
/// less than `tol` between consecutive sizes.
///
/// `builder(n)` must return the `n x n` truncation of one underlying
/// operator. The eigenvalues of the smaller matrix of the first agreeing
/// pair are returned, so a matrix that is already exact converges at `n0`.
pub fn solve_adaptive<F>(builder: F, k: usize, tol: f64, n0: usize) -> Result<(Vec<f64>, TruncationReport)>
where
    F: Fn(usize) -> Result<SymmetricTridiagonal>,
{
    solve_adaptive_capped(builder, k, tol, n0, DEFAULT_MAX_SIZE)
}

/// [`solve_adaptive`] with an explicit maximum matrix size.
pub fn solve_adaptive_capped<F>(
    builder: F,
    k: usize,
    tol: f64,
    n0: usize,
    max_size: usize,
) -> Result<(Vec<f64>, TruncationReport)>
where
    F: Fn(usize) -> Result<SymmetricTridiagonal>,
{
    if k == 0 {
        return Err(Error::Input("at least one eigenvalue must be requested".into()));
    }
    if n0 < k + 2 {
        return Err(Error::Input(format!("initial size {n0} must be at least k + 2 = {}", k + 2)));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Input(format!("tolerance must be positive, got {tol}")));
    }
    let inner_tol = tol / 16.0;
    let mut size = n0;
    let mut current = builder(size)?.lowest_eigenvalues(k, inner_tol)?;
    loop {
        let next_size = size * 2;
        if next_size > max_size {
            return Err(Error::Convergence {
                report: TruncationReport {
                    final_size: size,
                    eigenvalue_shift_at_last_doubling: f64::INFINITY,
                    converged: false,
                },
                what: format!("{k} lowest eigenvalues did not settle below size {max_size}"),
            });
        }
        let next = builder(next_size)?.lowest_eigenvalues(k, inner_tol)?;
        let shift = current
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0_f64, f64::max);
        if shift < tol {
            let report = TruncationReport {
                final_size: size,
                eigenvalue_shift_at_last_doubling: shift,
                converged: true,
            };
            return Ok((current, report));
        }
        size = next_size;
        current = next;
    }
}
