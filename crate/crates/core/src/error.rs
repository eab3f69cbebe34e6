use thiserror::Error;

/// Errors raised by the gasket library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GasketError {
    #[error("{what} index {index} out of range")]
    IndexOutOfRange { what: &'static str, index: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dense dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("power iteration did not converge after {iterations} iterations (achieved tolerance {achieved:e})")]
    NonConvergence { iterations: usize, achieved: f64 },

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },

    #[error("invalid level {requested} for an element of level {level}")]
    InvalidLevel { level: usize, requested: usize },

    #[error("matrix is not in the approximation algebra (residual {residual:e})")]
    NotInAlgebra { residual: f64 },

    #[error("parameter {name} = {value} out of range")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("chain inconsistent at level {level}: restriction residual {residual:e}")]
    ChainInconsistent { level: usize, residual: f64 },

    #[error("renormalized energy decreases at level {level} by {drop:e}")]
    NotMonotone { level: usize, drop: f64 },

    #[error("state factor {factor} is not unital (value on identity {value})")]
    NotUnital { factor: usize, value: f64 },

    #[error("state factor {factor} is not positive (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { factor: usize, min_eigenvalue: f64 },

    #[error("fiber minimization supports levels 0 and 1 only, got {0}")]
    UnsupportedLevel(usize),

    #[error("fiber minimizer deviates from the harmonic extension by {deviation:e}")]
    FiberMismatch { deviation: f64 },

    #[error("geometric tail not certified (relative ratio deviation {deviation:e})")]
    TailNotCertified { deviation: f64 },

    #[error("zeta series diverges at s = {s} (abscissa {abscissa})")]
    Divergent { s: f64, abscissa: f64 },

    #[error("chain does not have a stationary renormalized energy")]
    NotFiniteEnergy,

    #[error("invalid measure weights: {0}")]
    InvalidWeights(String),

    #[error("malformed vertex label: {0}")]
    MalformedLabel(String),
}

pub type Result<T> = std::result::Result<T, GasketError>;
