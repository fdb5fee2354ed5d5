//! Gaussian main-lobe antenna patterns and the transmit-side departure-angle
//! density.
//!
//! The gain is `g(phi) = exp(-4 ln 2 * D^2 / hpbw^2)` with `D` the wrapped
//! offset from boresight, so `g` is 1 on boresight and exactly 0.5 at half a
//! beamwidth off. Side and back lobes are the Gaussian tail; there is no
//! floor. Note that the departure density and the receive power weight both
//! square `g`, so the applied power weight at the half-power offset is 0.25.
//! That follows the printed model as-is; no field-vs-power reinterpretation is
//! attempted.

use std::f64::consts::PI;

use crate::angle::WrappedAngle;
use crate::error::{McmError, Result};
use crate::numerics::adaptive_simpson;

/// A main-lobe antenna pattern: Gaussian around a boresight, or ideal omni.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AntennaPattern {
    Gaussian { boresight: WrappedAngle, hpbw: f64 },
    /// Unit gain in every direction (the hpbw -> 2*pi limit taken exactly).
    Omni,
}

impl AntennaPattern {
    pub fn gaussian(boresight: WrappedAngle, hpbw: f64) -> Result<Self> {
        if !(hpbw > 0.0 && hpbw <= 2.0 * PI) {
            return Err(McmError::InvalidHpbw(hpbw));
        }
        Ok(Self::Gaussian { boresight, hpbw })
    }

    /// Gain toward `phi`, in (0, 1].
    pub fn gain(&self, phi: WrappedAngle) -> f64 {
        match *self {
            Self::Omni => 1.0,
            Self::Gaussian { boresight, hpbw } => {
                let delta = phi.difference(boresight).radians();
                (-4.0 * std::f64::consts::LN_2 * delta * delta / (hpbw * hpbw)).exp()
            }
        }
    }

    /// Gaussian-equivalent standard deviation of g^2, hpbw / (4 sqrt(ln 2)).
    pub fn sigma(&self) -> Option<f64> {
        match *self {
            Self::Omni => None,
            Self::Gaussian { hpbw, .. } => Some(hpbw / (4.0 * std::f64::consts::LN_2.sqrt())),
        }
    }

    pub fn boresight(&self) -> WrappedAngle {
        match *self {
            Self::Omni => WrappedAngle::new(0.0).expect("0 is finite"),
            Self::Gaussian { boresight, .. } => boresight,
        }
    }
}

/// The departure-angle probability density `C_T * g_T^2(phi)`.
#[derive(Debug, Clone, Copy)]
pub struct AodDensity {
    pattern: AntennaPattern,
    norm_const: f64,
}

impl AodDensity {
    pub fn new(pattern: AntennaPattern) -> Self {
        Self {
            pattern,
            norm_const: aod_norm_const(&pattern),
        }
    }

    pub fn pattern(&self) -> &AntennaPattern {
        &self.pattern
    }

    /// The normalizing constant C_T, 1/radians.
    pub fn norm_const(&self) -> f64 {
        self.norm_const
    }

    /// Density value at `phi_t`, strictly positive, integrates to 1.
    pub fn pdf(&self, phi_t: WrappedAngle) -> f64 {
        let g = self.pattern.gain(phi_t);
        self.norm_const * g * g
    }
}

/// Normalizing constant of the departure density: 1 / integral of g^2 over a
/// full turn of boresight offsets. Adaptive quadrature to 1e-12 absolute.
pub fn aod_norm_const(pattern: &AntennaPattern) -> f64 {
    match *pattern {
        AntennaPattern::Omni => 1.0 / (2.0 * PI),
        AntennaPattern::Gaussian { hpbw, .. } => {
            let g2 = move |d: f64| (-8.0 * std::f64::consts::LN_2 * d * d / (hpbw * hpbw)).exp();
            1.0 / adaptive_simpson(&g2, -PI, PI, 1e-12)
        }
    }
}
