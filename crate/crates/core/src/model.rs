//! Physical constants to dimensionless couplings and back.
//!
//! With `r = L rho` and `L = -4 pi eps0 hbar^2 / (m q Q)`:
//!
//! ```text
//! xi = m q D / (4 pi eps0 hbar^2)    A = m L^2 B / hbar^2
//! a  = L / sigma                     rho0 = r0 / L
//! E  = (hbar^2 / (m L^2)) * calE
//! ```
//!
//! The electron charge is `q = -e` and the particle charge `Q = Z e`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

macro_rules! quantity {
    ($(#[$doc:meta])* $name:ident, $unit:literal) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
        pub struct $name(f64);

        impl $name {
            pub const UNIT: &'static str = $unit;

            /// Rejects non-finite values.
            pub fn new(value: f64) -> Result<Self> {
                if value.is_finite() {
                    Ok(Self(value))
                } else {
                    Err(Error::Input(format!(
                        "{} must be finite, got {value} {}",
                        stringify!($name),
                        $unit
                    )))
                }
            }

            pub fn value(self) -> f64 {
                self.0
            }
        }
    };
}

quantity!(/// Kilograms.
    Mass, "kg");
quantity!(/// Coulombs.
    Charge, "C");
quantity!(/// Coulomb metres.
    DipoleMoment, "C m");
quantity!(/// Joules.
    Energy, "J");
quantity!(/// Metres.
    Length, "m");
quantity!(/// Joule seconds.
    Action, "J s");
quantity!(/// Farads per metre.
    Permittivity, "F/m");

/// CODATA 2018 reduced Planck constant.
pub const HBAR: f64 = 1.054_571_817e-34;
/// CODATA 2018 vacuum permittivity.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// CODATA 2018 elementary charge.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// CODATA 2018 electron mass.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub m_eff: Mass,
    /// Magnitude of the elementary charge.
    pub e_charge: Charge,
    /// Particle charge number, `Q = Z e`.
    pub z: u32,
    pub dipole: DipoleMoment,
    /// Height of the Gaussian cap.
    pub b: Energy,
    pub sigma: Length,
    /// Dipole position. Only `[0, 0]` separates.
    pub r0: [Length; 2],
    pub hbar: Action,
    pub eps0: Permittivity,
}

impl PhysicalParams {
    /// Electron-mass defaults with CODATA constants; dipole, cap and width
    /// must be supplied.
    pub fn with_codata(z: u32, dipole: DipoleMoment, b: Energy, sigma: Length) -> Self {
        Self {
            m_eff: Mass(ELECTRON_MASS),
            e_charge: Charge(ELEMENTARY_CHARGE),
            z,
            dipole,
            b,
            sigma,
            r0: [Length(0.0); 2],
            hbar: Action(HBAR),
            eps0: Permittivity(EPSILON_0),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m_eff.0 <= 0.0 {
            return Err(Error::Domain("effective mass must be positive".into()));
        }
        if self.sigma.0 <= 0.0 {
            return Err(Error::Domain("Gaussian width sigma must be positive".into()));
        }
        if self.hbar.0 <= 0.0 || self.eps0.0 <= 0.0 {
            return Err(Error::Domain("hbar and eps0 must be positive".into()));
        }
        // q Q = -Z e^2 must be negative (attraction).
        if self.z == 0 || self.e_charge.0 == 0.0 {
            return Err(Error::Domain(
                "charge product q Q must be negative (attractive); got Z = 0 or e = 0".into(),
            ));
        }
        Ok(())
    }

    /// Electron charge `q = -e`.
    pub fn q(&self) -> f64 {
        -self.e_charge.0.abs()
    }

    /// Particle charge `Q = Z e`.
    pub fn big_q(&self) -> f64 {
        self.z as f64 * self.e_charge.0.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    pub length_scale: Length,
    /// Signed dipole coupling; carries the sign of `q D`.
    pub xi: f64,
    pub cap: f64,
    pub inverse_width: f64,
    pub rho0: [f64; 2],
    /// `hbar^2 / (m L^2)`.
    pub energy_scale: Energy,
}

impl DimensionlessParams {
    /// Coupling passed to the angular solvers. A negative `xi` is the same
    /// problem after `theta -> theta + pi`.
    pub fn angular_xi(&self) -> f64 {
        self.xi.abs()
    }

    /// Fails unless the dipole sits at the origin.
    pub fn require_separable(&self) -> Result<()> {
        if self.rho0 == [0.0, 0.0] {
            Ok(())
        } else {
            Err(Error::NonSeparable(self.rho0))
        }
    }
}

pub fn nondimensionalize(p: &PhysicalParams) -> Result<DimensionlessParams> {
    p.validate()?;
    let m = p.m_eff.0;
    let hbar2 = p.hbar.0 * p.hbar.0;
    let four_pi_eps0 = 4.0 * PI * p.eps0.0;
    let qq = p.q() * p.big_q();
    let l = -four_pi_eps0 * hbar2 / (m * qq);
    let xi = m * p.q() * p.dipole.0 / (four_pi_eps0 * hbar2);
    let cap = m * l * l * p.b.0 / hbar2;
    Ok(DimensionlessParams {
        length_scale: Length(l),
        xi,
        cap,
        inverse_width: l / p.sigma.0,
        rho0: [p.r0[0].0 / l, p.r0[1].0 / l],
        energy_scale: Energy(hbar2 / (m * l * l)),
    })
}

/// `E = calE * hbar^2 / (m L^2)`.
pub fn energy_to_physical(e_dimless: f64, d: &DimensionlessParams) -> Energy {
    Energy(e_dimless * d.energy_scale.0)
}

/// `calE = E m L^2 / hbar^2`.
pub fn energy_to_dimensionless(e: Energy, d: &DimensionlessParams) -> f64 {
    e.0 / d.energy_scale.0
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Round-number constants: hbar = m = e = 4 pi eps0 = 1.
    fn unit_params(z: u32, d: f64, b: f64, sigma: f64) -> PhysicalParams {
        PhysicalParams {
            m_eff: Mass::new(1.0).unwrap(),
            e_charge: Charge::new(1.0).unwrap(),
            z,
            dipole: DipoleMoment::new(d).unwrap(),
            b: Energy::new(b).unwrap(),
            sigma: Length::new(sigma).unwrap(),
            r0: [Length::new(0.0).unwrap(); 2],
            hbar: Action::new(1.0).unwrap(),
            eps0: Permittivity::new(1.0 / (4.0 * PI)).unwrap(),
        }
    }

    #[test]
    fn zero_dipole_and_cap() {
        let d = nondimensionalize(&unit_params(1, 0.0, 0.0, 1.0)).unwrap();
        assert_eq!(d.xi, 0.0);
        assert_eq!(d.cap, 0.0);
        assert_eq!(d.length_scale.value(), 1.0);
        assert_eq!(d.energy_scale.value(), 1.0);
    }

    #[test]
    fn unit_system_formulas() {
        let d = nondimensionalize(&unit_params(2, 0.3, 5.0, 0.25)).unwrap();
        // L = 1/Z, xi = -D, A = B/Z^2, a = L/sigma.
        assert!((d.length_scale.value() - 0.5).abs() < 1e-15);
        assert!((d.xi + 0.3).abs() < 1e-15);
        assert!((d.cap - 1.25).abs() < 1e-15);
        assert!((d.inverse_width - 2.0).abs() < 1e-15);
        assert!((d.angular_xi() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn coupling_of_the_gaas_trimer() {
        // 4 gp = 0.8147872 with gp = 2 xi.
        let gp = 0.8147872 / 4.0;
        let target = crate::angular::xi_from_gp(gp);
        let d = nondimensionalize(&unit_params(1, target, 0.0, 1.0)).unwrap();
        assert!((d.angular_xi() - 0.10184840).abs() < 1e-12);
    }

    #[test]
    fn codata_scales() {
        let p = PhysicalParams::with_codata(
            1,
            DipoleMoment::new(1e-30).unwrap(),
            Energy::new(0.0).unwrap(),
            Length::new(1e-9).unwrap(),
        );
        let d = nondimensionalize(&p).unwrap();
        // Bohr radius and twice the Rydberg energy.
        assert!((d.length_scale.value() - 5.291_772_109e-11).abs() < 1e-19);
        assert!((d.energy_scale.value() - 4.359_744_722e-18).abs() < 1e-26);
        assert!(d.xi < 0.0);
    }

    #[test]
    fn energy_conversions() {
        let d = nondimensionalize(&unit_params(3, 0.1, 0.0, 1.0)).unwrap();
        assert_eq!(energy_to_physical(0.0, &d).value(), 0.0);
        assert_eq!(energy_to_physical(-2.0, &d).value(), -2.0 * d.energy_scale.value());
        let e = Energy::new(-1.7e-19).unwrap();
        let back = energy_to_physical(energy_to_dimensionless(e, &d), &d);
        assert!((back.value() - e.value()).abs() <= 1e-15 * e.value().abs());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(nondimensionalize(&unit_params(0, 0.1, 0.0, 1.0)).is_err());
        assert!(nondimensionalize(&unit_params(1, 0.1, 0.0, 0.0)).is_err());
        let mut p = unit_params(1, 0.1, 0.0, 1.0);
        p.m_eff = Mass::new(-1.0).unwrap();
        assert!(nondimensionalize(&p).is_err());
        assert!(Mass::new(f64::NAN).is_err());
    }

    #[test]
    fn off_centre_dipole_not_separable() {
        let mut p = unit_params(1, 0.1, 0.0, 1.0);
        p.r0 = [Length::new(0.5).unwrap(), Length::new(0.0).unwrap()];
        let d = nondimensionalize(&p).unwrap();
        assert_eq!(d.rho0, [0.5, 0.0]);
        assert!(matches!(d.require_separable(), Err(Error::NonSeparable(_))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn xi_invariant_under_charge_dipole_rescaling(
                d in 1e-3..10.0f64, c in 0.1..10.0f64, m in 0.1..5.0f64, hbar in 0.5..2.0f64
            ) {
                let mut p = unit_params(1, d, 0.0, 1.0);
                p.m_eff = Mass::new(m).unwrap();
                p.hbar = Action::new(hbar).unwrap();
                let base = nondimensionalize(&p).unwrap();
                p.dipole = DipoleMoment::new(c * d).unwrap();
                p.e_charge = Charge::new(1.0 / c).unwrap();
                let scaled = nondimensionalize(&p).unwrap();
                prop_assert!((base.xi - scaled.xi).abs() <= 1e-12 * base.xi.abs());
            }

            #[test]
            fn energy_round_trip(e in -1e-17..1e-17f64, z in 1u32..10) {
                let p = PhysicalParams::with_codata(
                    z,
                    DipoleMoment::new(1e-29).unwrap(),
                    Energy::new(1e-20).unwrap(),
                    Length::new(1e-9).unwrap(),
                );
                let d = nondimensionalize(&p).unwrap();
                let back = energy_to_physical(energy_to_dimensionless(Energy::new(e).unwrap(), &d), &d);
                prop_assert!((back.value() - e).abs() <= 4.0 * f64::EPSILON * e.abs());
            }

            #[test]
            fn length_scale_inverse_in_charge_number(z in 1u32..50, m in 0.1..5.0f64) {
                let mut p = unit_params(z, 0.2, 1.0, 1.0);
                p.m_eff = Mass::new(m).unwrap();
                let d = nondimensionalize(&p).unwrap();
                prop_assert!((d.length_scale.value() * z as f64 * m - 1.0).abs() < 1e-12);
                // A = m L^2 B / hbar^2 and energy scale hbar^2 / (m L^2) are reciprocal for B = 1.
                prop_assert!((d.cap * d.energy_scale.value() - 1.0).abs() < 1e-12);
            }
        }
    }
}
