//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in GF({p})")]
    DivisionByZero { p: u32 },

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("integration obstructed: exponent {exponent} of variable {var} satisfies exponent + 1 = 0 mod {p}")]
    CharacteristicObstruction { var: String, exponent: u32, p: u32 },

    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("expected a homogeneous ideal: generator `{0}` is not homogeneous")]
    NonHomogeneous(String),

    #[error("resource budget exceeded during {phase}: {detail}")]
    ResourceExceeded { phase: &'static str, detail: String },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("degenerate random coordinates for seed {seed}: {detail}; retry with a different seed")]
    DegenerateSeed { seed: u64, detail: String },

    #[error("chart variable {var} vanishes at the given point")]
    InvalidChart { var: String },

    #[error("point does not lie on the variety")]
    PointNotOnVariety,

    #[error("ideal is not generated in degree {expected}: found generator of degree {found}")]
    NotGeneratedInDegree { expected: u32, found: u32 },

    #[error("secant level k must be >= 1 (got {0})")]
    InvalidSecantLevel(u32),

    #[error("Betti table is incomplete; pass an explicit bound acknowledgment to proceed")]
    IncompleteTable,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
