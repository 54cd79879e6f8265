use thiserror::Error;

/// Errors produced anywhere in the implicitization pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unsupported function `{0}` (only sin and cos are recognised)")]
    UnsupportedFunction(String),

    #[error("parameter `{0}` appears both bare and inside a trigonometric function")]
    MixedTrigonometric(String),

    #[error("invalid parameterization: {0}")]
    InvalidMap(String),

    #[error("denominator of coordinate {0} vanishes at the evaluation point")]
    DenominatorZero(usize),

    #[error("the zero polynomial has no Newton polytope")]
    ZeroPolynomial,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("enumeration of {volume} candidate lattice points exceeds the cap of {cap}")]
    CapExceeded { volume: u128, cap: u128 },

    #[error("invalid polytope file: {0}")]
    PolytopeFormat(String),

    #[error("sample budget exhausted after {0} attempts without finding a generic point")]
    SamplingExhausted(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "interpolation matrix has trivial kernel: the predicted polytope does not contain a \
         translate of the implicit polytope; try a larger support"
    )]
    EmptyKernel,

    #[error("kernels computed from two independent samplings disagree (non-generic sampling)")]
    NonGenericSampling,

    #[error("query point has a zero coordinate at index {0}")]
    ZeroCoordinate(usize),

    #[error("query point coincides with the image of sample row {0}")]
    CoincidesWithSampleRow(usize),

    #[error("query point lies on the hypersurface")]
    OnSurface,

    #[error("operation requires a corank-1 frozen matrix (observed corank {0})")]
    NotCorank1(usize),

    #[error("the ray lies inside the hypersurface")]
    DegenerateRay,

    #[error("this operation only supports curves (one parameter), got {0} parameters")]
    NotACurve(usize),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnsupportedFunction(_) => "unsupported_function",
            Error::MixedTrigonometric(_) => "mixed_trigonometric",
            Error::InvalidMap(_) => "invalid_map",
            Error::DenominatorZero(_) => "denominator_zero",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::PolytopeFormat(_) => "polytope_format",
            Error::SamplingExhausted(_) => "sampling_exhausted",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::EmptyKernel => "empty_kernel",
            Error::NonGenericSampling => "non_generic_sampling",
            Error::ZeroCoordinate(_) => "zero_coordinate",
            Error::CoincidesWithSampleRow(_) => "coincides_with_sample_row",
            Error::OnSurface => "on_surface",
            Error::NotCorank1(_) => "not_corank1",
            Error::DegenerateRay => "degenerate_ray",
            Error::NotACurve(_) => "not_a_curve",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
