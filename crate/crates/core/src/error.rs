use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature did not converge after {subdivisions} subdivisions (estimate {estimate:e}, error {error:e})")]
    QuadratureNotConverged {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("ODE step size collapsed at x = {x} (h = {h:e}); the solution needs a log-scaled formulation")]
    StepSizeCollapse { x: f64, h: f64 },

    #[error("grid has {len} points, the stencil needs at least {needed}")]
    TooFewPoints { len: usize, needed: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid spacing {spacing} is too coarse for ladder differentiation (max {max})")]
    GridTooCoarse { spacing: f64, max: f64 },

    #[error("unit scale components must be finite and strictly positive")]
    InvalidUnitScale,

    #[error("asymptotic series is undefined at z = 0")]
    SeriesAtOrigin,

    #[error("|q| = {q} exceeds the plain floating-point range {limit}")]
    OutOfPlainRange { q: f64, limit: f64 },

    #[error("q = {q} lies outside the tabulated range [{lo}, {hi}]")]
    OutOfRange { q: f64, lo: f64, hi: f64 },

    #[error("{0} is not an energy eigenstate")]
    NotEigenstate(String),

    #[error("parity undetermined: every sample sits at a zero of the mode")]
    ParityUndetermined,

    #[error("divergence classification needs at least {needed} strictly increasing positive cutoffs, got {got:?}")]
    BadCutoffs { needed: usize, got: Vec<f64> },

    #[error("ill-conditioned fit: {0}")]
    IllConditionedFit(String),

    #[error("state has {got} components, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("domain [0, {r}] is shorter than the required {min}")]
    DomainTooShort { r: f64, min: f64 },

    #[error("tail estimate {tail:e} beyond r = {r} exceeds {bound:e}")]
    TailTooLarge { tail: f64, r: f64, bound: f64 },

    #[error("inner products drift by {drift:e} between sampled times (bound {bound:e})")]
    TimeDependent { drift: f64, bound: f64 },

    #[error("a block-diagonal assembly needs at least one level")]
    NoLevels,

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
