use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    #[error("Farey order must be at least 1")]
    ZeroOrder,
    #[error("Farey order {n} exceeds the supported maximum {max}")]
    OrderTooLarge { n: u32, max: u32 },
    #[error("cannot parse {0:?} as a fraction p/q")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("point {0} lies outside [0, 1]")]
    Domain(f64),
    #[error("invalid kernel parameter: {0}")]
    Parameter(String),
    #[error("unknown kernel identifier {0:?}")]
    UnknownId(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("invalid quadrature configuration: {0}")]
    Config(&'static str),
    #[error("interval [{a}, {b}] is reversed")]
    Reversed { a: f64, b: f64 },
    #[error("integrand is not finite at x = {0}")]
    NonFinite(f64),
    #[error("subdivision depth {max_depth} reached on [{a}, {b}] before meeting tolerance")]
    MaxDepth { a: f64, b: f64, max_depth: u32 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MmdError {
    #[error("point set is empty")]
    Empty,
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("points are not sorted ascending at index {0}")]
    Unsorted(usize),
    #[error("kernel {0} has no linear-time summation")]
    Unsupported(String),
    #[error("squared MMD {0:e} is negative beyond rounding tolerance")]
    Negative(f64),
    #[error("closed-form precondition failed: {0}")]
    Precondition(&'static str),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("need at least 3 points to fit a rate, got {0}")]
    TooFewPoints(usize),
    #[error("invalid fit window [{lo}, {hi}]")]
    Window { lo: u32, hi: u32 },
    #[error("value {value} at n = {n} is not positive")]
    NonPositive { n: u32, value: f64 },
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error(transparent)]
    Mmd(#[from] MmdError),
}

impl From<KernelError> for AnalysisError {
    fn from(e: KernelError) -> Self {
        AnalysisError::Mmd(MmdError::Kernel(e))
    }
}
