//! Multi-elliptical channel model simulator.
//!
//! Computes the power angle spectrum (PAS) and angle-of-arrival statistics of
//! a multipath radio channel as a function of directional antenna patterns and
//! their orientations. Delayed scatterers sit on confocal ellipses sized by a
//! power delay profile; local scattering follows a von Mises law; Gaussian
//! main-lobe patterns shape both the departure angles and the received path
//! powers.
//!
//! All azimuths share one frame whose zero axis points from the receiver
//! toward the transmitter; see [`angle`].

pub mod angle;
pub mod antenna;
pub mod config;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod numerics;
pub mod output;
pub mod pdp;
pub mod sampling;
pub mod validate;

pub use angle::{wrap_angle, WrappedAngle};
pub use antenna::{aod_norm_const, AntennaPattern, AodDensity};
pub use engine::{
    angular_spread, compute_pas, estimate_aoa_pdf, estimate_aor_pdf, generate_paths,
    orientation_sweep, AngleGrid, CurveKind, PasCurve, PasScale, Path, PathCounts, PathSet,
    Scenario, SweepCell,
};
pub use error::{McmError, Result};
pub use geometry::{
    aoa_from_aod, aoa_jacobian, aod_from_aoa, eccentricity, Ellipse, SPEED_OF_LIGHT,
};
pub use pdp::{normalize_power, parse_pdp_csv, rms_delay_spread, scale_delays, Pdp, PdpMode};
pub use sampling::{
    bessel_i0, sample_aod, sample_cluster_powers, sample_local_aoa, sample_local_powers,
    von_mises_pdf, RngStream, VonMisesParams,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
