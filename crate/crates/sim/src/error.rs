use proptime_core::Error as CoreError;
use serde::Serialize;

/// Failure of a run. Each variant has a stable exit code.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("{0}")]
    Config(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Numerical(String),
}

impl SimError {
    pub fn exit_code(&self) -> i32 {
        match self {
            SimError::Config(_) => 2,
            SimError::Io { .. } => 3,
            SimError::Resource(_) => 4,
            SimError::Numerical(_) => 5,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SimError::Config(_) => "config",
            SimError::Io { .. } => "io",
            SimError::Resource(_) => "resource",
            SimError::Numerical(_) => "numerical",
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>, err: std::io::Error) -> Self {
        SimError::Io { path: path.as_ref().display().to_string(), message: err.to_string() }
    }

    pub fn report(&self, scenario: Option<&str>) -> ErrorReport {
        ErrorReport {
            schema: "proptime-sim/error",
            schema_version: 1,
            scenario: scenario.map(str::to_string),
            kind: self.kind(),
            exit_code: self.exit_code(),
            message: self.to_string(),
        }
    }
}

impl From<CoreError> for SimError {
    fn from(e: CoreError) -> Self {
        let message = e.to_string();
        match e {
            CoreError::DimensionLimit { .. } => SimError::Resource(message),
            CoreError::Spacelike { .. }
            | CoreError::GridMismatch
            | CoreError::InvalidGrid(_)
            | CoreError::OffLattice { .. }
            | CoreError::OutOfRange { .. }
            | CoreError::BadIndex { .. }
            | CoreError::TemporalDerivative
            | CoreError::ComplexData
            | CoreError::Representation(_)
            | CoreError::CutoffTooLarge { .. }
            | CoreError::PartialModeSet
            | CoreError::NonInvertible { .. } => SimError::Config(message),
            CoreError::NotLocalized { .. }
            | CoreError::NonDifferentiable { .. }
            | CoreError::Undersampled { .. }
            | CoreError::BoxTooSmall { .. }
            | CoreError::NoConvergence(_) => SimError::Numerical(message),
        }
    }
}

/// Machine-readable failure, printed to stderr and left as error.json.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub schema: &'static str,
    pub schema_version: u32,
    pub scenario: Option<String>,
    pub kind: &'static str,
    pub exit_code: i32,
    pub message: String,
}
