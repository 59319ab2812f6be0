//! Reference values used by the regression checks and the
//! `repro` command.

/// Angular coupling at which [`ANGULAR_REF_TWO_LAMBDA`] was tabulated.
pub const ANGULAR_REF_XI: f64 = 0.8147872 / 8.0;

/// `2 lambda_m`, m = 0..=6, periodic angular levels at [`ANGULAR_REF_XI`].
pub const ANGULAR_REF_TWO_LAMBDA: [f64; 7] = [
    -0.02038332,
    0.9965447876,
    1.016922136,
    4.001380556,
    4.001386528,
    9.000592776,
    9.000592776,
];

/// Mathieu parameter of [`MATHIEU_REF_A`].
pub const MATHIEU_REF_Q: f64 = 0.8147872;

/// Floquet exponents heading the rows of [`MATHIEU_REF_A`].
pub const MATHIEU_REF_NU: [f64; 4] = [1.0, 2.0, 3.0, 4.0];

/// Five lowest characteristic values `a(nu, q)` per exponent.
pub const MATHIEU_REF_A: [[f64; 5]; 4] = [
    [0.1103083812, 1.723195887, 9.033407277, 9.050089309, 25.01383463],
    [-0.3109361980, 3.944835174, 4.255390446, 16.02196863, 16.02234952],
    [0.1103083812, 1.723195887, 9.033407277, 9.050089309, 25.01383463],
    [-0.3109361980, 3.944835174, 4.255390446, 16.02196863, 16.02234952],
];

/// `(row, band)` cells of [`MATHIEU_REF_A`] reported in an older convention,
/// one per row. Informational only: they mark where that convention picked
/// a non-lowest band, and are not a contract.
pub const MATHIEU_REF_LEGACY_PICKS: [(usize, usize); 4] = [(0, 1), (1, 2), (2, 3), (3, 4)];

/// Couplings where `lambda_m` crosses zero, m = 0, 1, 2.
pub const CRITICAL_XI: [f64; 3] = [0.0, 1.894922593, 5.324657803];
