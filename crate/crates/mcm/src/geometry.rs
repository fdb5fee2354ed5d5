//! Ellipse geometry of the multi-elliptical channel model.
//!
//! Delayed scatterers sit on confocal ellipses with the transmitter and
//! receiver at the foci. A cluster delay fixes the ellipse eccentricity, and
//! the eccentricity fixes an exact mapping from departure azimuth at the
//! transmitter to arrival azimuth at the receiver.

use crate::angle::WrappedAngle;
use crate::error::{McmError, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// One delayed-cluster ellipse: index, excess delay and eccentricity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub index: usize,
    pub delay_s: f64,
    pub eccentricity: f64,
}

impl Ellipse {
    pub fn new(index: usize, distance_m: f64, delay_s: f64) -> Result<Self> {
        if index == 0 {
            return Err(McmError::InvalidScenario(
                "ellipse index starts at 1; cluster 0 is the local cluster".into(),
            ));
        }
        if delay_s <= 0.0 {
            return Err(McmError::NegativeDelay(delay_s));
        }
        Ok(Self {
            index,
            delay_s,
            eccentricity: eccentricity(distance_m, delay_s)?,
        })
    }
}

/// Eccentricity of the ellipse with excess delay `tau_s` for Tx-Rx distance
/// `d_m`: d / (d + c*tau). Equals 1 only at zero delay.
pub fn eccentricity(d_m: f64, tau_s: f64) -> Result<f64> {
    if !(d_m > 0.0) {
        return Err(McmError::NonPositiveDistance(d_m));
    }
    if tau_s < 0.0 || !tau_s.is_finite() {
        return Err(McmError::NegativeDelay(tau_s));
    }
    Ok(d_m / (d_m + SPEED_OF_LIGHT * tau_s))
}

fn check_ecc(e: f64, allow_one: bool) -> Result<()> {
    let ok = e > 0.0 && (e < 1.0 || (allow_one && e == 1.0));
    if ok {
        Ok(())
    } else {
        Err(McmError::InvalidEccentricity(
            e,
            if allow_one { "(0, 1]" } else { "(0, 1)" },
        ))
    }
}

/// Arrival azimuth for a departure azimuth on the ellipse with eccentricity
/// `e`:
///
/// `phi_R = sgn(phi_T) * arccos[(2e + (1+e^2) cos phi_T) / (1 + e^2 + 2e cos phi_T)]`
///
/// with sgn(0) = 0 and phi_T = pi mapping to +pi. The arccos argument is
/// clamped to [-1, 1] to absorb rounding near the fixed points. `e = 1`
/// (zero delay) is accepted and gives the pointwise limit: 0 for |phi_T| < pi,
/// pi at phi_T = pi.
pub fn aoa_from_aod(phi_t: WrappedAngle, e: f64) -> Result<WrappedAngle> {
    check_ecc(e, true)?;
    let t = phi_t.radians();
    let ct = t.cos();
    let num = 2.0 * e + (1.0 + e * e) * ct;
    let den = 1.0 + e * e + 2.0 * e * ct;
    // den = (1-e)^2 + 2e(1+cos t) > 0 for e < 1; at e = 1, den = 0 only at t = pi
    let cr = if den == 0.0 {
        -1.0
    } else {
        (num / den).clamp(-1.0, 1.0)
    };
    let mag = cr.acos();
    let signed = if t == std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        t.signum() * mag * if t == 0.0 { 0.0 } else { 1.0 }
    };
    WrappedAngle::new(signed)
}

/// Inverse of [`aoa_from_aod`]: the departure azimuth that lands at `phi_r`.
/// Closed form from solving the mapping for cos phi_T:
///
/// `cos phi_T = ((1+e^2) cos phi_R - 2e) / ((1+e^2) - 2e cos phi_R)`
pub fn aod_from_aoa(phi_r: WrappedAngle, e: f64) -> Result<WrappedAngle> {
    check_ecc(e, false)?;
    let r = phi_r.radians();
    let cr = r.cos();
    let ct = (((1.0 + e * e) * cr - 2.0 * e) / ((1.0 + e * e) - 2.0 * e * cr)).clamp(-1.0, 1.0);
    let mag = ct.acos();
    let signed = if r == std::f64::consts::PI {
        std::f64::consts::PI
    } else if r == 0.0 {
        0.0
    } else {
        r.signum() * mag
    };
    WrappedAngle::new(signed)
}

/// Derivative magnitude |d phi_R / d phi_T| of the ellipse mapping.
///
/// Closed form: the mapped cosine has derivative (1-e^2)^2 / den^2 in
/// cos phi_T, which gives
///
/// `|d phi_R / d phi_T| = (1-e^2)^2 sin phi_T / (den^2 sqrt(1 - cos^2 phi_R))`
///
/// valid for phi_T strictly inside (0, pi); the endpoints are 0/0 limits.
pub fn aoa_jacobian(phi_t: WrappedAngle, e: f64) -> Result<f64> {
    check_ecc(e, false)?;
    let t = phi_t.radians().abs();
    if t == 0.0 || t == std::f64::consts::PI {
        return Err(McmError::InvalidScenario(
            "Jacobian endpoints phi_T = 0 and pi are one-sided limits".into(),
        ));
    }
    let ct = t.cos();
    let den = 1.0 + e * e + 2.0 * e * ct;
    let num = 2.0 * e + (1.0 + e * e) * ct;
    let cr = (num / den).clamp(-1.0, 1.0);
    let sr = (1.0 - cr * cr).sqrt();
    let omes = 1.0 - e * e;
    Ok(omes * omes * t.sin() / (den * den * sr))
}
