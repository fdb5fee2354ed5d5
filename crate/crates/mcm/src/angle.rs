//! Azimuth angles wrapped to the interval (-pi, pi].
//!
//! Every angle in the model lives in one common azimuth frame whose zero axis
//! points from the receiver toward the transmitter. The transmit boresight,
//! receive boresight, departure angles and arrival angles all share this frame;
//! "antennas directed at themselves" is boresight 180 deg at the transmitter
//! and 0 deg at the receiver. The frame is inferred from the fixed points of
//! the ellipse mapping (0 maps to 0, 180 deg maps to 180 deg) rather than read
//! off a drawing, so treat the absolute reference as a library convention.

use std::f64::consts::PI;

use crate::error::{McmError, Result};

/// An azimuth in radians, always in (-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct WrappedAngle(f64);

impl WrappedAngle {
    /// Wrap an arbitrary finite angle into (-pi, pi].
    pub fn new(radians: f64) -> Result<Self> {
        if !radians.is_finite() {
            return Err(McmError::NonFiniteAngle(radians));
        }
        Ok(Self(wrap_raw(radians)))
    }

    pub fn from_degrees(deg: f64) -> Result<Self> {
        Self::new(deg.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    /// Wrapped difference `self - other`, again in (-pi, pi].
    pub fn difference(self, other: WrappedAngle) -> WrappedAngle {
        WrappedAngle(wrap_raw(self.0 - other.0))
    }

    pub fn negated(self) -> WrappedAngle {
        WrappedAngle(wrap_raw(-self.0))
    }
}

/// Reduce modulo 2*pi into (-pi, pi]. The -pi boundary maps to +pi.
fn wrap_raw(x: f64) -> f64 {
    let tau = 2.0 * PI;
    let mut r = x.rem_euclid(tau); // [0, tau)
    if r > PI {
        r -= tau;
    }
    if r <= -PI {
        // rem_euclid rounding can land exactly on -pi for inputs like -pi - 2^-52
        r = PI;
    }
    r
}

/// Wrap a finite angle (radians) into (-pi, pi].
pub fn wrap_angle(x: f64) -> Result<WrappedAngle> {
    WrappedAngle::new(x)
}
