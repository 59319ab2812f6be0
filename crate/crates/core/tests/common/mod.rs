//! Test-only oracles, independent of the library's solvers.

#![allow(dead_code)]

/// Outward shooting for `f` in `t = ln rho`:
/// `f_tt = 2 (-rho + lambda + A rho^2 exp(-a^2 rho^2) - E rho^2) f`.
///
/// The regular branch `f ~ rho^sqrt(2 lambda)` is started at `rho = 1e-8`
/// and integrated with RK4 to `rho_max`; returns the number of sign changes
/// of `f` on `(0, rho_max]`.
pub fn shooting_nodes(lambda: f64, cap: f64, inv_width: f64, energy: f64, rho_max: f64, dt: f64) -> usize {
    let s = (2.0 * lambda).sqrt();
    let t0 = 1e-8f64.ln();
    let t1 = rho_max.ln();
    let rhs = |t: f64, f: f64| {
        let rho = t.exp();
        let a2 = inv_width * inv_width;
        2.0 * (-rho + lambda + cap * rho * rho * (-a2 * rho * rho).exp() - energy * rho * rho) * f
    };
    let mut f = 1.0;
    let mut g = if s > 0.0 { s } else { -2.0 * t0.exp() };
    let mut t = t0;
    let steps = ((t1 - t0) / dt).ceil() as usize;
    let h = (t1 - t0) / steps as f64;
    let mut nodes = 0;
    for _ in 0..steps {
        let (k1f, k1g) = (g, rhs(t, f));
        let (k2f, k2g) = (g + 0.5 * h * k1g, rhs(t + 0.5 * h, f + 0.5 * h * k1f));
        let (k3f, k3g) = (g + 0.5 * h * k2g, rhs(t + 0.5 * h, f + 0.5 * h * k2f));
        let (k4f, k4g) = (g + h * k3g, rhs(t + h, f + h * k3f));
        let nf = f + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
        let ng = g + h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
        if (nf < 0.0) != (f < 0.0) {
            nodes += 1;
        }
        f = nf;
        g = ng;
        t += h;
        let big = f.abs().max(g.abs());
        if big > 1e100 {
            f /= big;
            g /= big;
        }
    }
    nodes
}

/// Dirichlet eigenvalue `E_n` at `rho_max` by bisection on the node count.
pub fn shooting_energy(lambda: f64, cap: f64, inv_width: f64, n: usize, rho_max: f64, dt: f64) -> f64 {
    let (mut lo, mut hi) = (-10.0, -1e-6);
    assert!(shooting_nodes(lambda, cap, inv_width, lo, rho_max, dt) <= n);
    while hi - lo > 1e-11 {
        let mid = 0.5 * (lo + hi);
        if shooting_nodes(lambda, cap, inv_width, mid, rho_max, dt) > n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Closed-form 2D Coulomb energy `-1 / (2 (n + sqrt(2 lambda) + 1/2)^2)`.
pub fn coulomb(n: usize, lambda: f64) -> f64 {
    let d = n as f64 + (2.0 * lambda).sqrt() + 0.5;
    -0.5 / (d * d)
}
