use thiserror::Error;

/// Failures surfaced by the moment-space routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The moment vector is on the boundary of, or outside, the moment space.
    #[error("moment vector is not strictly interior (canonical moment p{index} = {value})")]
    BoundaryOrOutside { index: usize, value: f64 },

    /// A representation was requested for a point that is not interior.
    #[error("moment vector is not interior to the moment space")]
    NotInterior,

    /// Newton polishing did not reach the residual tolerance.
    #[error("solver did not converge: residual {residual:e} after {iterations} iterations")]
    ConvergenceFailure { residual: f64, iterations: usize },

    /// The prescribed node collides with another node of the solved measure.
    #[error("prescribed node {tstar} collides with a node of the representation")]
    NodeCollision { tstar: f64 },

    /// Argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(&'static str),

    /// Argument lengths do not match the requested kind.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Invalid discrete measure (ordering, weights, or support).
    #[error("invalid measure: {0}")]
    InvalidMeasure(&'static str),

    /// Too many per-draw solver failures in a Monte-Carlo experiment.
    #[error("solver failures {failures} of {draws} draws exceed the budget")]
    SolverFailureBudgetExceeded { failures: u64, draws: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;
