use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong while setting up or advancing a run.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A caller-supplied argument is outside its documented range.
    InvalidArgument(&'static str),
    /// An initial-data function produced a non-finite cell average.
    InputFunction { cell: usize, value: f64 },
    /// A model function returned a non-finite value.
    ModelDomain { u: f64, v: f64 },
    /// The model does not satisfy `0 < β₀ ≤ ∂v R` where it must.
    Hypothesis { u: f64, v: f64, dv_source: f64 },
    /// A step size violates a stability precondition of the chosen solver.
    StepSize(&'static str),
    /// A field entry became NaN or infinite during time stepping.
    NonFinite { step: u64, cell: usize },
    /// Kinetic densities went negative beyond round-off.
    Realizability { cell: usize, value: f64 },
    /// Density went non-positive.
    Positivity { cell: usize, value: f64 },
    /// Fine and coarse fields cannot be compared cell-by-cell.
    IncompatibleResolutions { fine: usize, coarse: usize },
    /// A runtime invariant check failed in a strict run.
    Invariant {
        step: u64,
        what: &'static str,
        value: f64,
        limit: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::InputFunction { cell, value } => {
                write!(f, "initial data is not finite in cell {cell} (average {value})")
            }
            Error::ModelDomain { u, v } => {
                write!(f, "model evaluation is not finite at (u, v) = ({u}, {v})")
            }
            Error::Hypothesis { u, v, dv_source } => write!(
                f,
                "source derivative ∂v R = {dv_source} is not positive at (u, v) = ({u}, {v})"
            ),
            Error::StepSize(msg) => write!(f, "step size: {msg}"),
            Error::NonFinite { step, cell } => {
                write!(f, "non-finite value in cell {cell} at step {step}")
            }
            Error::Realizability { cell, value } => {
                write!(f, "negative kinetic density {value} in cell {cell}")
            }
            Error::Positivity { cell, value } => {
                write!(f, "non-positive density {value} in cell {cell}")
            }
            Error::IncompatibleResolutions { fine, coarse } => write!(
                f,
                "fine grid must have exactly twice the cells of the coarse grid ({fine} vs {coarse})"
            ),
            Error::Invariant { step, what, value, limit } => {
                write!(f, "invariant `{what}` violated at step {step}: {value} > {limit}")
            }
        }
    }
}

impl core::error::Error for Error {}
