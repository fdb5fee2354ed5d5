use thiserror::Error;

/// Errors produced by the model library.
#[derive(Debug, Error)]
pub enum McmError {
    #[error("angle must be finite, got {0}")]
    NonFiniteAngle(f64),
    #[error("distance must be positive, got {0} m")]
    NonPositiveDistance(f64),
    #[error("delay must be non-negative, got {0} s")]
    NegativeDelay(f64),
    #[error("eccentricity {0} outside the valid range {1}")]
    InvalidEccentricity(f64, &'static str),
    #[error("half-power beamwidth must be in (0, 2*pi], got {0} rad")]
    InvalidHpbw(f64),
    #[error("von Mises concentration must be non-negative and finite, got {0}")]
    InvalidConcentration(f64),
    #[error("Bessel I0 argument must be non-negative, got {0}")]
    NegativeBesselArg(f64),
    #[error("cluster power must be positive, got {0}")]
    NonPositivePower(f64),
    #[error("path count must be at least 1")]
    ZeroPathCount,
    #[error("Rician factor must be non-negative, got {0}")]
    NegativeRicianFactor(f64),
    #[error("rejection sampler exceeded {0} iterations for a single draw")]
    RejectionBudgetExceeded(u64),
    #[error("PDP parse error at line {line}: {reason}")]
    PdpParse { line: usize, reason: String },
    #[error("PDP must start with a zero-delay cluster (earliest delay is {0} s)")]
    MissingZeroDelayCluster(f64),
    #[error("PDP needs at least 2 clusters, got {0}")]
    TooFewClusters(usize),
    #[error("delay spread must be positive, got {0} s")]
    NonPositiveDelaySpread(f64),
    #[error("bin width {0} deg must divide 360 into a whole number of bins")]
    InvalidBinWidth(f64),
    #[error("all path output powers are zero; receiver pattern rejects every sampled angle")]
    DegenerateOutputPower,
    #[error("curve has no mass")]
    ZeroMassCurve,
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

pub type Result<T> = std::result::Result<T, McmError>;
