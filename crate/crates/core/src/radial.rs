//! Radial bound states of
//!
//! ```text
//! (-(1/2rho) d/drho rho d/drho - 1/rho + lambda/rho^2 + A exp(-a^2 rho^2)) f = E f
//! ```
//!
//! for `lambda >= 0` and `E < 0`. With `f = u / sqrt(rho)` this reads
//! `u'' = (V_u(rho) - 2E) u` where
//! `V_u = -2/rho + 2A exp(-a^2 rho^2) + (2 lambda - 1/4) / rho^2`.
//!
//! The operator is discretized by finite volumes on cells
//! `[F_i, F_{i+1}]` of `[rho_min, rho_max]`. The symmetrized unknown
//! `sqrt(w_i) f_i`, `w_i = int rho drho` over the cell, is the discrete
//! `u`. The inner face carries zero radial flux `rho f' = 0`, which picks
//! the regular solution `u ~ rho^{1/2 + sqrt(2 lambda)}` also at
//! `lambda = 0`, where both branches of `u` vanish at the origin. The
//! outer face is a Dirichlet wall.

use crate::eigen::SymmetricTridiagonal;
use crate::error::{Error, Result};

/// Default inner face.
pub const DEFAULT_RHO_MIN: f64 = 1e-10;
pub const DEFAULT_RHO_MAX: f64 = 40.0;
pub const DEFAULT_POINTS: usize = 2000;
/// `exp(-sqrt(-2E) rho_max)` must fall below this for every returned level.
pub const TAIL_THRESHOLD: f64 = 1e-12;
/// Upper bound on cells reached by grid refinement.
pub const MAX_POINTS: usize = 1 << 21;
const MAX_RHO: f64 = 1e5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GridSpacing {
    #[default]
    Uniform,
    /// Geometric faces. Cell sizes near the origin shrink with `rho_min`,
    /// which inflates the matrix norm; keep `rho_min` around `1e-3`.
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub rho_min: f64,
    pub rho_max: f64,
    /// Number of cells.
    pub points: usize,
    pub spacing: GridSpacing,
}

impl Default for RadialGrid {
    fn default() -> Self {
        Self {
            rho_min: DEFAULT_RHO_MIN,
            rho_max: DEFAULT_RHO_MAX,
            points: DEFAULT_POINTS,
            spacing: GridSpacing::Uniform,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialProblem {
    /// Angular eigenvalue.
    pub lambda: f64,
    /// Gaussian cap height `A`.
    pub cap: f64,
    /// Inverse Gaussian width `a`.
    pub inverse_width: f64,
    pub grid: RadialGrid,
}

impl RadialProblem {
    pub fn new(lambda: f64, cap: f64, inverse_width: f64) -> Self {
        Self {
            lambda,
            cap,
            inverse_width,
            grid: RadialGrid::default(),
        }
    }

    pub fn with_grid(mut self, grid: RadialGrid) -> Self {
        self.grid = grid;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("lambda", self.lambda),
            ("A", self.cap),
            ("a", self.inverse_width),
            ("rho_min", self.grid.rho_min),
            ("rho_max", self.grid.rho_max),
        ] {
            if !v.is_finite() {
                return Err(Error::Input(format!("{name} must be finite, got {v}")));
            }
        }
        if self.lambda < 0.0 {
            return Err(Error::SelfAdjointExtensionRequired { lambda: self.lambda });
        }
        if self.inverse_width < 0.0 {
            return Err(Error::Domain(format!("a must be non-negative, got {}", self.inverse_width)));
        }
        let g = &self.grid;
        if !(g.rho_min > 0.0 && g.rho_min < g.rho_max) {
            return Err(Error::Domain(format!(
                "grid needs 0 < rho_min < rho_max, got [{}, {}]",
                g.rho_min, g.rho_max
            )));
        }
        if g.points < 100 {
            return Err(Error::Domain(format!("grid needs at least 100 points, got {}", g.points)));
        }
        Ok(())
    }

    /// `V_f = -1/rho + lambda/rho^2 + A exp(-a^2 rho^2)`.
    fn potential_f(&self, rho: f64) -> f64 {
        let a2 = self.inverse_width * self.inverse_width;
        -1.0 / rho + self.lambda / (rho * rho) + self.cap * (-a2 * rho * rho).exp()
    }
}

/// `V_u(rho)` such that `u'' = (V_u - 2E) u`; the Gaussian decays.
pub fn radial_potential_u(rho: f64, p: &RadialProblem) -> Result<f64> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::Domain(format!("rho must be positive and finite, got {rho}")));
    }
    let a2 = p.inverse_width * p.inverse_width;
    Ok(-2.0 / rho + 2.0 * p.cap * (-a2 * rho * rho).exp() + (2.0 * p.lambda - 0.25) / (rho * rho))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialLevel {
    /// Radial quantum number: sign changes of `u` on the grid.
    pub n: usize,
    pub energy: f64,
    /// Whether the last grid doubling moved every energy by less than the
    /// requested tolerance.
    pub grid_converged: bool,
    /// Grid the energy was computed on.
    pub rho_max: f64,
    pub points: usize,
}

/// Discretized operator on a fixed grid.
pub struct RadialOperator {
    pub matrix: SymmetricTridiagonal,
    pub centers: Vec<f64>,
}

/// Assembles the finite-volume matrix on `[rho_min, rho_max]` with `points`
/// cells.
pub fn assemble(p: &RadialProblem, rho_max: f64, points: usize) -> Result<RadialOperator> {
    let rho_min = p.grid.rho_min;
    let faces: Vec<f64> = match p.grid.spacing {
        GridSpacing::Uniform => {
            let h = (rho_max - rho_min) / points as f64;
            (0..=points).map(|i| rho_min + h * i as f64).collect()
        }
        GridSpacing::Log => {
            let ratio = (rho_max / rho_min).ln() / points as f64;
            (0..=points).map(|i| rho_min * (ratio * i as f64).exp()).collect()
        }
    };
    let centers: Vec<f64> = faces
        .windows(2)
        .map(|f| match p.grid.spacing {
            GridSpacing::Uniform => 0.5 * (f[0] + f[1]),
            GridSpacing::Log => (f[0] * f[1]).sqrt(),
        })
        .collect();
    let weights: Vec<f64> = faces.windows(2).map(|f| 0.5 * (f[1] * f[1] - f[0] * f[0])).collect();

    // Face conductances: zero flux inside, Dirichlet outside.
    let mut k = vec![0.0; points + 1];
    for i in 1..points {
        k[i] = 0.5 * faces[i] / (centers[i] - centers[i - 1]);
    }
    k[points] = 0.5 * faces[points] / (faces[points] - centers[points - 1]);

    let diag = (0..points)
        .map(|i| (k[i] + k[i + 1]) / weights[i] + p.potential_f(centers[i]))
        .collect();
    let offdiag = (0..points - 1)
        .map(|i| -k[i + 1] / (weights[i] * weights[i + 1]).sqrt())
        .collect();
    Ok(RadialOperator {
        matrix: SymmetricTridiagonal::new(diag, offdiag)?,
        centers,
    })
}

/// Negative eigenvalues (at most `count`) on one grid.
fn negative_levels(op: &RadialOperator, count: usize, tol: f64) -> Result<Vec<f64>> {
    let available = op.matrix.sturm_count(0.0)?.min(count);
    if available == 0 {
        return Ok(Vec::new());
    }
    op.matrix.lowest_eigenvalues(available, tol)
}

fn required_rho_max(energy: f64) -> f64 {
    let kappa = (-2.0 * energy).sqrt();
    -TAIL_THRESHOLD.ln() / kappa
}

/// The `count` lowest bound states (fewer if the discretized operator has
/// fewer negative eigenvalues; none is an empty list, not an error).
///
/// `rho_max` grows until the shallowest level's tail `exp(-sqrt(-2E) rho)`
/// is below `1e-12` at the wall (cell size held fixed), then the number of
/// cells doubles until no energy moves by `tol` or more. Energies come from
/// the finer grid of the last pair.
pub fn bound_states(p: &RadialProblem, count: usize, tol: f64) -> Result<Vec<RadialLevel>> {
    p.validate()?;
    if count == 0 {
        return Err(Error::Input("count must be at least 1".into()));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Input(format!("tolerance must be positive, got {tol}")));
    }
    let inner_tol = tol / 64.0;
    let mut rho_max = p.grid.rho_max;
    let mut points = p.grid.points;

    let mut energies = loop {
        let op = assemble(p, rho_max, points)?;
        let energies = negative_levels(&op, count, inner_tol)?;
        let Some(&shallowest) = energies.last() else {
            return Ok(Vec::new());
        };
        let needed = required_rho_max(shallowest);
        if needed <= rho_max {
            break energies;
        }
        let grown = (1.1 * needed).max(1.5 * rho_max);
        if grown > MAX_RHO {
            return Err(Error::Convergence {
                report: crate::eigen::TruncationReport {
                    final_size: points,
                    eigenvalue_shift_at_last_doubling: f64::INFINITY,
                    converged: false,
                },
                what: format!("bound-state tail needs rho_max beyond {MAX_RHO}"),
            });
        }
        points = ((points as f64) * grown / rho_max).ceil() as usize;
        rho_max = grown;
    };

    let mut converged = false;
    while 2 * points <= MAX_POINTS {
        let finer = negative_levels(&assemble(p, rho_max, 2 * points)?, energies.len(), inner_tol)?;
        let shift = energies
            .iter()
            .zip(&finer)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0_f64, f64::max);
        let same_len = finer.len() == energies.len();
        points *= 2;
        energies = finer;
        if same_len && shift < tol {
            converged = true;
            break;
        }
    }

    let op = assemble(p, rho_max, points)?;
    energies
        .into_iter()
        .map(|energy| {
            let u = op.matrix.eigenvector(energy)?;
            Ok(RadialLevel {
                n: count_nodes(&u),
                energy,
                grid_converged: converged,
                rho_max,
                points,
            })
        })
        .collect()
}

/// Discrete `u` for a level on the grid it was computed on, as
/// `(cell centres, values)` with unit Euclidean norm.
pub fn level_wavefunction(p: &RadialProblem, level: &RadialLevel) -> Result<(Vec<f64>, Vec<f64>)> {
    p.validate()?;
    let op = assemble(p, level.rho_max, level.points)?;
    let u = op.matrix.eigenvector(level.energy)?;
    Ok((op.centers, u))
}

/// Sign changes, ignoring entries below `1e-8` of the peak (tail noise).
pub fn count_nodes(u: &[f64]) -> usize {
    let peak = u.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let floor = 1e-8 * peak;
    let mut last_sign: Option<bool> = None;
    let mut nodes = 0;
    for &x in u {
        if x.abs() <= floor {
            continue;
        }
        let s = x > 0.0;
        if let Some(prev) = last_sign {
            if prev != s {
                nodes += 1;
            }
        }
        last_sign = Some(s);
    }
    nodes
}

/// Closed-form Coulomb energies (`A = 0`): `-1 / (2 (n + sqrt(2 lambda) + 1/2)^2)`.
pub fn coulomb_energy(n: usize, lambda: f64) -> f64 {
    let s = (2.0 * lambda).sqrt();
    let d = n as f64 + s + 0.5;
    -0.5 / (d * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_examples() {
        let p = RadialProblem::new(0.125, 0.0, 1.0);
        assert_eq!(radial_potential_u(1.0, &p).unwrap(), -2.0);
        let p = RadialProblem::new(0.0, 0.0, 1.0);
        assert_eq!(radial_potential_u(2.0, &p).unwrap(), -1.0625);
        let p = RadialProblem::new(0.0, 1.0, 1.0);
        let v = radial_potential_u(1.0, &p).unwrap();
        assert!((v - (-2.0 + 2.0 * (-1.0f64).exp() - 0.25)).abs() < 1e-15);
        assert!(radial_potential_u(0.0, &p).is_err());
        assert!(radial_potential_u(-1.0, &p).is_err());
    }

    #[test]
    fn negative_lambda_needs_extension() {
        let p = RadialProblem::new(-0.1, 0.0, 1.0);
        assert!(matches!(
            bound_states(&p, 1, 1e-4),
            Err(Error::SelfAdjointExtensionRequired { .. })
        ));
    }

    #[test]
    fn grid_validation() {
        let bad = RadialProblem::new(0.0, 0.0, 1.0).with_grid(RadialGrid {
            points: 50,
            ..RadialGrid::default()
        });
        assert!(matches!(bad.validate(), Err(Error::Domain(_))));
        let bad = RadialProblem::new(0.0, 0.0, 1.0).with_grid(RadialGrid {
            rho_min: 5.0,
            rho_max: 1.0,
            ..RadialGrid::default()
        });
        assert!(bad.validate().is_err());
        assert!(RadialProblem::new(0.0, 0.0, -1.0).validate().is_err());
    }

    #[test]
    fn hydrogen_ground_state() {
        let levels = bound_states(&RadialProblem::new(0.0, 0.0, 1.0), 1, 1e-5).unwrap();
        assert!((levels[0].energy + 2.0).abs() < 1e-3);
        assert_eq!(levels[0].n, 0);
        assert!(levels[0].grid_converged);
    }

    #[test]
    fn hydrogen_first_angular_excitation() {
        let levels = bound_states(&RadialProblem::new(0.5, 0.0, 1.0), 1, 1e-6).unwrap();
        assert!((levels[0].energy + 2.0 / 9.0).abs() < 1e-4);
    }

    #[test]
    fn rho_max_is_extended_for_shallow_levels() {
        let p = RadialProblem::new(0.0, 0.0, 1.0).with_grid(RadialGrid {
            rho_max: 10.0,
            points: 500,
            ..RadialGrid::default()
        });
        let levels = bound_states(&p, 2, 1e-5).unwrap();
        let shallow = levels[1].energy;
        assert!((-(-2.0 * shallow).sqrt() * levels[1].rho_max).exp() < TAIL_THRESHOLD);
        assert!((shallow - coulomb_energy(1, 0.0)).abs() < 1e-3);
        assert_eq!(levels[1].n, 1);
    }

    #[test]
    fn node_counter() {
        assert_eq!(count_nodes(&[1.0, 2.0, -1.0, -2.0, 0.5]), 2);
        assert_eq!(count_nodes(&[1.0, 1e-12, -1e-12, 1.0]), 0);
        assert_eq!(count_nodes(&[]), 0);
    }

    #[test]
    fn coulomb_formula() {
        assert_eq!(coulomb_energy(0, 0.0), -2.0);
        assert!((coulomb_energy(0, 0.5) + 2.0 / 9.0).abs() < 1e-15);
        assert!((coulomb_energy(1, 0.0) + 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn log_grid_escape_hatch() {
        let p = RadialProblem::new(0.5, 0.0, 1.0).with_grid(RadialGrid {
            rho_min: 1e-3,
            rho_max: 45.0,
            points: 1000,
            spacing: GridSpacing::Log,
        });
        let op = assemble(&p, 45.0, 1000).unwrap();
        let e = op.matrix.lowest_eigenvalues(1, 1e-10).unwrap()[0];
        assert!((e + 2.0 / 9.0).abs() < 1e-4, "{e}");
    }
}
