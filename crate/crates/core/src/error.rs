use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("color count mismatch: expected {expected}, found {found}")]
    ColorMismatch { expected: usize, found: usize },
    #[error("region is unbounded or has non-finite parameters")]
    UnboundedRegion,
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("lattice basis is singular")]
    SingularBasis,
    #[error("acceptance window is empty")]
    EmptyWindow,
    #[error("substitution matrix is not primitive")]
    NonPrimitive,
    #[error("illegal fixed-point seed: {0}")]
    IllegalSeed(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("fewer than two points in the scan region")]
    InsufficientPoints,
    #[error("scan region contains no anchor points")]
    ScanTooSmall,
    #[error("patch region too small to decide membership")]
    PatchTooSmall,
    #[error("window diameter {diam} is not below the separation {eta}")]
    WindowTooWide { diam: f64, eta: f64 },
    #[error("cluster enumeration incomplete: {small} classes at half scan, {large} at full scan")]
    IncompleteEnumeration { small: usize, large: usize },
    #[error("kernel support {support} exceeds the autocorrelation radius {radius}")]
    KernelExceedsRadius { support: f64, radius: f64 },
    #[error("quadrature step {step} is coarser than the kernel allows ({max})")]
    QuadratureTooCoarse { step: f64, max: f64 },
    #[error("van Hove schedule needs at least {0} entries")]
    EmptySchedule(usize),
    #[error("cluster is empty")]
    EmptyCluster,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("window query outside the patch region")]
    OutsidePatch,
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
