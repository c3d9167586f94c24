//! Test functions, smeared fields and two-point functions.

pub mod energy;
pub mod mobius;
pub mod quadrature;
pub mod smear;
pub mod testfn;
pub mod twopoint;

pub use energy::{energy_bound_fit, zeroth_order_certificate, EnergyBound, EnergyFit};
pub use mobius::{beta_derivative_check, mobius_action, mobius_cocycles_check, mobius_suite, MobiusElement, MobiusWord};
pub use quadrature::{integrate, integrate_half_line, Quad, QuadOptions};
pub use smear::{
    basis_states, quarter_arcs, rotation_covariance_check, smear, smear_bounded, wightman_locality_check,
    Field, HilbertSpace, LocalityOptions,
};
pub use testfn::{make_bump, Arc, BumpProfile, TestFunction, Twist};
pub use twopoint::{
    bw_check, bw_continuation, bw_value, real_line_transform, seeded_bump_pair, series_integral_check, two_point_integral,
    two_point_series, BwTolerances, SeriesValue, TwoPointSetup,
};
