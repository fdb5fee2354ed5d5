//! Seedable random generation of departure angles, local-scattering arrival
//! angles, and per-path powers.
//!
//! Reproducibility contract: a run is a pure function of (seed, config). Each
//! cluster owns its own ChaCha12 sub-stream (stream id = cluster index), so
//! samples do not depend on cluster evaluation order or worker scheduling.
//! The OS entropy source is never used.

use std::f64::consts::PI;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};

use crate::angle::WrappedAngle;
use crate::antenna::{AntennaPattern, AodDensity};
use crate::error::{McmError, Result};

/// Iteration cap for a single rejection-sampled draw.
const REJECTION_BUDGET: u64 = 1_000_000;

/// A counter-based random sub-stream keyed by (seed, stream_id).
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha12Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self { rng }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }
    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// Modified Bessel function of the first kind, order zero.
///
/// All-positive power series sum_k (x/2)^(2k) / (k!)^2; no cancellation, so
/// the truncated sum is accurate to roundoff for any argument that fits in
/// f64 (overflow near x ~ 713).
pub fn bessel_i0(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(McmError::NegativeBesselArg(x));
    }
    let q = x * x / 4.0;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 1..1000 {
        term *= q / ((k * k) as f64);
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    Ok(sum)
}

/// Von Mises local-scattering law with mean direction fixed at 0.
#[derive(Debug, Clone, Copy)]
pub struct VonMisesParams {
    concentration: f64,
    norm: f64, // 2*pi*I0(mu)
}

impl VonMisesParams {
    pub fn new(concentration: f64) -> Result<Self> {
        if !(concentration >= 0.0) || !concentration.is_finite() {
            return Err(McmError::InvalidConcentration(concentration));
        }
        Ok(Self {
            concentration,
            norm: 2.0 * PI * bessel_i0(concentration)?,
        })
    }

    pub fn concentration(&self) -> f64 {
        self.concentration
    }

    /// Density exp(mu cos phi) / (2 pi I0(mu)); mu = 0 is uniform 1/(2 pi).
    pub fn pdf(&self, phi: WrappedAngle) -> f64 {
        (self.concentration * phi.radians().cos()).exp() / self.norm
    }
}

pub fn von_mises_pdf(params: &VonMisesParams, phi: WrappedAngle) -> f64 {
    params.pdf(phi)
}

/// Draw `n` departure angles from the squared-pattern density.
///
/// A Gaussian boresight-offset draw with sigma = hpbw / (4 sqrt(ln 2)),
/// rejected outside (-pi, pi], then shifted by the boresight and wrapped, is
/// exactly the truncated-and-renormalized density under the wrapped-offset
/// pattern definition. An omni pattern short-circuits to uniform.
pub fn sample_aod(density: &AodDensity, rng: &mut RngStream, n: usize) -> Result<Vec<WrappedAngle>> {
    if n == 0 {
        return Err(McmError::ZeroPathCount);
    }
    match *density.pattern() {
        AntennaPattern::Omni => Ok((0..n)
            .map(|_| WrappedAngle::new(rng.gen_range(-PI..PI)).expect("finite"))
            .collect()),
        AntennaPattern::Gaussian { boresight, .. } => {
            let sigma = density.pattern().sigma().expect("gaussian");
            let normal = Normal::new(0.0, sigma).expect("sigma > 0");
            let mut out = Vec::with_capacity(n);
            for _ in 0..n {
                let mut accepted = None;
                for _ in 0..REJECTION_BUDGET {
                    let z = normal.sample(rng);
                    if z.abs() <= PI {
                        accepted = Some(z);
                        break;
                    }
                }
                let z = accepted.ok_or(McmError::RejectionBudgetExceeded(REJECTION_BUDGET))?;
                out.push(WrappedAngle::new(boresight.radians() + z)?);
            }
            Ok(out)
        }
    }
}

/// Draw `n` local-scattering arrival angles by Best-Fisher rejection with a
/// wrapped-Cauchy envelope. mu = 0 short-circuits to uniform.
pub fn sample_local_aoa(
    params: &VonMisesParams,
    rng: &mut RngStream,
    n: usize,
) -> Result<Vec<WrappedAngle>> {
    if n == 0 {
        return Err(McmError::ZeroPathCount);
    }
    let mu = params.concentration();
    if mu == 0.0 {
        return Ok((0..n)
            .map(|_| WrappedAngle::new(rng.gen_range(-PI..PI)).expect("finite"))
            .collect());
    }
    // Best & Fisher (1979) envelope constants
    let tau = 1.0 + (1.0 + 4.0 * mu * mu).sqrt();
    let rho = (tau - (2.0 * tau).sqrt()) / (2.0 * mu);
    let r = (1.0 + rho * rho) / (2.0 * rho);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut accepted = None;
        for _ in 0..REJECTION_BUDGET {
            let u1: f64 = rng.gen();
            let u2: f64 = rng.gen();
            let z = (PI * u1).cos();
            let f = (1.0 + r * z) / (r + z);
            let c = mu * (r - f);
            if c * (2.0 - c) - u2 > 0.0 || (c / u2).ln() + 1.0 - c >= 0.0 {
                let u3: f64 = rng.gen();
                let sign = if u3 < 0.5 { -1.0 } else { 1.0 };
                accepted = Some(sign * f.clamp(-1.0, 1.0).acos());
                break;
            }
        }
        let theta = accepted.ok_or(McmError::RejectionBudgetExceeded(REJECTION_BUDGET))?;
        out.push(WrappedAngle::new(theta)?);
    }
    Ok(out)
}

/// Draw the `m` path powers of a delayed cluster with total power `p_total`:
/// i.i.d. Uniform(0, 2 p_total / m), so the draws sum to `p_total` in
/// expectation.
pub fn sample_cluster_powers(p_total: f64, m: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    if !(p_total > 0.0) {
        return Err(McmError::NonPositivePower(p_total));
    }
    if m == 0 {
        return Err(McmError::ZeroPathCount);
    }
    let hi = 2.0 * p_total / m as f64;
    Ok((0..m).map(|_| rng.gen_range(0.0..hi)).collect())
}

/// Draw the `m` local-scattering path powers of cluster 0: i.i.d.
/// Uniform(0, 2 P0 / ((1+kappa) m)). The deterministic direct-path power
/// kappa P0 / (1+kappa) is not drawn here; the engine adds it separately.
pub fn sample_local_powers(
    p0: f64,
    kappa: f64,
    m: usize,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    if !(p0 > 0.0) {
        return Err(McmError::NonPositivePower(p0));
    }
    if !(kappa >= 0.0) {
        return Err(McmError::NegativeRicianFactor(kappa));
    }
    if m == 0 {
        return Err(McmError::ZeroPathCount);
    }
    let hi = 2.0 * p0 / ((1.0 + kappa) * m as f64);
    Ok((0..m).map(|_| rng.gen_range(0.0..hi)).collect())
}
