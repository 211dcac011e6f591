use thiserror::Error;

/// Errors from the core solver. Numeric payloads are reported as f64
/// regardless of the working scalar type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The recurrence and G-function are defined only for 0 < g < omega/2.
    #[error("coupling g = {g} outside the open interval (0, {omega}/2)")]
    CouplingOutOfRange { g: f64, omega: f64 },

    /// Trial energy hit a baseline pole E = beta (k + m).
    #[error("energy {energy} within pole guard of baseline index {index} at {baseline}")]
    BaselineCollision {
        index: usize,
        baseline: f64,
        energy: f64,
    },

    #[error("degenerate decay-rate window: {0}")]
    DegenerateWindow(String),

    /// The closed-form coefficient c_M is undefined in the decoupled limit.
    #[error("isolated eigenstate undefined at epsilon = 0")]
    DecoupledState,
}

pub type Result<T> = std::result::Result<T, CoreError>;
