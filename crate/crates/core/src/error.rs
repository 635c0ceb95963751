use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("coupling {name} = {value} outside the band-structure window (-1/4, 0)")]
    CouplingWindow { name: &'static str, value: f64 },

    #[error("integrator step-size failure near x = {x}")]
    StepSize { x: f64 },

    #[error("no root of the discriminant in [{lo}, {hi}] for target {target}")]
    Bracket { lo: f64, hi: f64, target: f64 },

    #[error("truncation edge {lambda} disagrees with the oracle discriminant (|Δ| - 1 = {defect:e})")]
    OracleMismatch { lambda: f64, defect: f64 },

    #[error("probe x = {x} is too close to a node of the wavefunction")]
    ProbeAtNode { x: f64 },

    #[error("grid too coarse: {points} interior points, need at least {required}")]
    GridTooCoarse { points: usize, required: usize },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
