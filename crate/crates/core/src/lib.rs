//! Eigenvalue solvers for an electron bound to a charged, polar
//! nanoparticle in two dimensions.
//!
//! After scaling lengths by `L = -4 pi eps0 hbar^2 / (m q Q)` the
//! Hamiltonian separates in polar coordinates (dipole at the origin) into
//!
//! * an angular problem `(-1/2 d^2/dtheta^2 + xi cos theta) g = lambda g`
//!   with `g` 2pi-periodic ([`angular`]), which is a Mathieu equation in
//!   `z = theta / 2` ([`floquet`]), and
//! * a radial problem for `u = sqrt(rho) f` with centrifugal term
//!   `(2 lambda - 1/4) / rho^2` ([`radial`]).
//!
//! All truncated problems reduce to symmetric tridiagonal matrices solved
//! by Sturm bisection ([`eigen`]). Physical constants map to the
//! dimensionless couplings through [`model`].

pub mod angular;
pub mod eigen;
pub mod error;
pub mod floquet;
pub mod golden;
pub mod model;
pub mod radial;

pub use angular::{angular_spectrum, critical_xi, AngularLevel, Parity};
pub use eigen::{solve_adaptive, SymmetricTridiagonal, TruncationReport};
pub use error::{Error, Result};
pub use floquet::{band_sweep, characteristic_values, lambda_band, FloquetPoint};
pub use radial::{bound_states, RadialLevel, RadialProblem};
