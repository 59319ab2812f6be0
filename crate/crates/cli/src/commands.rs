use polar2d_core::angular::{self, CRITICAL_XI_TOL};
use polar2d_core::floquet::{self, minimum_gap, uniform_exponent_grid};
use polar2d_core::model::{self, Action, Charge, DipoleMoment, Energy, Length, Mass, Permittivity, PhysicalParams};
use polar2d_core::radial::{self, GridSpacing, RadialGrid, RadialProblem};
use polar2d_core::{Error, Result};
use serde_json::json;

use crate::table::{Cell, Table};
use crate::{AngularArgs, BandsArgs, CriticalArgs, MathieuArgs, ModelArgs, RadialArgs};

const LOG_GRID_RHO_MIN: f64 = 1e-3;

pub fn angular(args: &AngularArgs) -> Result<Table> {
    let levels = angular::angular_spectrum(args.xi, args.count, args.tol)?;
    let mut t = Table::new("angular", vec!["m", "parity", "lambda", "two_lambda"]);
    t.meta("xi", args.xi);
    t.meta("tol", args.tol);
    if let Some(worst) = levels.iter().map(|l| l.report).max_by_key(|r| r.final_size) {
        t.meta("basis_size", worst.final_size);
        t.meta("last_shift", worst.eigenvalue_shift_at_last_doubling);
    }
    for l in &levels {
        let parity = l.parity.letter().to_string();
        t.push(vec![l.m.into(), Cell::Text(parity), l.lambda.into(), l.two_lambda.into()]);
    }
    Ok(t)
}

pub fn mathieu(args: &MathieuArgs) -> Result<Table> {
    let mut t = Table::new("mathieu", vec!["nu", "band", "a"]);
    t.meta("q", args.q);
    t.meta("tol", args.tol);
    t.meta("convention", "y'' + (a - 2q cos 2z) y = 0");
    let mut sizes = Vec::new();
    for &nu in &args.nu {
        let points = floquet::characteristic_values(nu, args.q, args.count, args.tol)?;
        if let Some(p) = points.first() {
            sizes.push(p.report.final_size);
        }
        for p in points {
            t.push(vec![nu.into(), p.band.into(), p.a.into()]);
        }
    }
    t.meta("basis_sizes", sizes);
    Ok(t)
}

pub fn bands(args: &BandsArgs) -> Result<Table> {
    let grid = uniform_exponent_grid(args.points)?;
    if args.gap && args.count < 2 {
        return Err(Error::Input("--gap needs --count of at least 2".into()));
    }
    let rows = floquet::band_sweep(&grid, args.xi, args.count)?;
    if args.gap {
        let (nu, gap) = minimum_gap(&rows, 0)
            .ok_or_else(|| Error::Search("no band pair to compare".into()))?;
        let mut t = Table::new("bands", vec!["nu", "gap"]);
        t.meta("xi", args.xi);
        t.meta("points", args.points);
        t.meta("bands", "0-1");
        t.push(vec![nu.into(), gap.into()]);
        return Ok(t);
    }
    let mut t = Table::new("bands", vec!["nu", "band", "lambda"]);
    t.meta("xi", args.xi);
    t.meta("points", args.points);
    for r in rows {
        t.push(vec![r.nu.into(), r.band.into(), r.lambda.into()]);
    }
    Ok(t)
}

pub fn critical(args: &CriticalArgs) -> Result<Table> {
    let mut t = Table::new("critical", vec!["m", "xi_critical"]);
    t.meta("tol", args.tol);
    t.meta("default_tol", CRITICAL_XI_TOL);
    for m in 0..=args.m_max {
        let xi = angular::critical_xi(m, args.tol)?;
        eprintln!("m = {m}: xi_critical = {xi}");
        t.push(vec![m.into(), xi.into()]);
    }
    Ok(t)
}

pub fn radial(args: &RadialArgs) -> Result<Table> {
    let lambda = match (args.lambda, args.xi, args.m) {
        (Some(l), _, _) => l,
        (None, Some(xi), Some(m)) => {
            let levels = angular::angular_spectrum(xi, m + 1, 1e-12)?;
            levels[m].lambda
        }
        _ => return Err(Error::Input("give --lambda, or both --xi and --m".into())),
    };
    let spacing = if args.log_grid { GridSpacing::Log } else { GridSpacing::Uniform };
    let rho_min = args.rho_min.unwrap_or(if args.log_grid {
        LOG_GRID_RHO_MIN
    } else {
        radial::DEFAULT_RHO_MIN
    });
    let grid = RadialGrid {
        rho_min,
        rho_max: args.rho_max,
        points: args.points,
        spacing,
    };
    let problem = RadialProblem::new(lambda, args.cap, args.inverse_width).with_grid(grid);
    let levels = radial::bound_states(&problem, args.count, args.tol)?;
    if levels.len() < args.count {
        eprintln!("warning: only {} bound state(s) found", levels.len());
    }
    let mut t = Table::new("radial", vec!["n", "energy"]);
    t.meta("lambda", lambda);
    t.meta("A", args.cap);
    t.meta("a", args.inverse_width);
    t.meta("tol", args.tol);
    t.meta("rho_min", rho_min);
    t.meta("spacing", if args.log_grid { "log" } else { "uniform" });
    if let Some(l) = levels.first() {
        t.meta("rho_max", l.rho_max);
        t.meta("points", l.points);
        t.meta("grid_converged", levels.iter().all(|l| l.grid_converged));
    }
    for l in &levels {
        if !l.grid_converged {
            eprintln!("warning: level {} not converged to tol {}", l.n, args.tol);
        }
        t.push(vec![l.n.into(), l.energy.into()]);
    }
    Ok(t)
}

pub fn model(args: &ModelArgs) -> Result<Table> {
    let params = PhysicalParams {
        m_eff: Mass::new(args.mass)?,
        e_charge: Charge::new(args.charge)?,
        z: args.z,
        dipole: DipoleMoment::new(args.dipole)?,
        b: Energy::new(args.cap)?,
        sigma: Length::new(args.sigma)?,
        r0: [Length::new(args.r0x)?, Length::new(args.r0y)?],
        hbar: Action::new(args.hbar)?,
        eps0: Permittivity::new(args.eps0)?,
    };
    let d = model::nondimensionalize(&params)?;
    d.require_separable()?;
    let mut t = Table::new("model", vec!["quantity", "value", "unit"]);
    t.meta("inputs", json!({
        "z": args.z, "dipole": args.dipole, "b": args.cap, "sigma": args.sigma,
        "mass": args.mass, "hbar": args.hbar, "eps0": args.eps0, "charge": args.charge,
    }));
    let rows: [(&str, f64, &str); 6] = [
        ("length_scale", d.length_scale.value(), Length::UNIT),
        ("energy_scale", d.energy_scale.value(), Energy::UNIT),
        ("xi", d.xi, ""),
        ("xi_angular", d.angular_xi(), ""),
        ("A", d.cap, ""),
        ("a", d.inverse_width, ""),
    ];
    for (name, value, unit) in rows {
        t.push(vec![name.into(), value.into(), unit.into()]);
    }
    Ok(t)
}
