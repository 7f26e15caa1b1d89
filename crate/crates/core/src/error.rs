use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate domain: x_max ({x_max}) must exceed x_min ({x_min})")]
    DegenerateDomain { x_min: f64, x_max: f64 },
    #[error("M = {m} too small: stencils span offsets -2..=2, need M >= 4")]
    GridTooSmall { m: usize },
    #[error("invalid time stepping: tau = {tau}, steps = {steps}")]
    InvalidTimeStepping { tau: f64, steps: usize },
    #[error("unknown profile name: {0}")]
    UnknownProfile(String),
    #[error("node ({i}, {j}) is missing a stencil neighbor along axis {axis}")]
    MissingNeighbor { i: usize, j: usize, axis: usize },
    #[error("non-finite value at node {node} (step {step})")]
    NonFinite { node: usize, step: usize },
    #[error("non-positive diagonal {value} at node {node}")]
    BadDiagonal { node: usize, value: f64 },
    #[error("singular matrix in direct solve (pivot {pivot} at column {col})")]
    Singular { col: usize, pivot: f64 },
    #[error("system of {n} unknowns exceeds direct-solve limit {limit}")]
    TooLargeForDirect { n: usize, limit: usize },
    #[error("unknown scheme id: {0}")]
    UnknownScheme(String),
    #[error("implicit stencil at node ({i}, {j}) references a point outside the domain")]
    ImplicitGhost { i: usize, j: usize },
    #[error("grid sequence is not a doubling sequence: M = {prev} followed by M = {next}")]
    NotDoubling { prev: usize, next: usize },
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
