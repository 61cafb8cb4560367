use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which fan axiom an [`crate::fanpoly::AugmentedFan`] violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanViolation {
    TooFewRays(usize),
    ZeroRay(usize),
    RepeatedDirection(usize, usize),
    NotComplete,
    WrongDimension { ray: usize, expected: usize, got: usize },
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanViolation::TooFewRays(n) => write!(f, "fan needs at least 3 rays, got {n}"),
            FanViolation::ZeroRay(i) => write!(f, "ray {i} is zero"),
            FanViolation::RepeatedDirection(i, j) => {
                write!(f, "rays {i} and {j} point in the same direction")
            }
            FanViolation::NotComplete => write!(f, "fan not complete"),
            FanViolation::WrongDimension { ray, expected, got } => {
                write!(f, "ray {ray} has {got} coordinates, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("invalid fan: {0}")]
    InvalidFan(FanViolation),
    #[error("only surfaces (n = 2) are supported, got n = {0}")]
    UnsupportedDimension(usize),
    #[error("support function has {got} values for {expected} rays")]
    SupportLength { expected: usize, got: usize },
    #[error("fan is not Fano (-k is not strictly upper convex)")]
    NotFano,
    #[error("degenerate polytope: {0}")]
    DegeneratePolytope(String),
    #[error("support value on facet {0} is not an integer")]
    NonIntegralSupport(usize),
    #[error("weight matrix is degenerate (a k x k minor vanishes)")]
    DegenerateWeights,
    #[error("weight matrix is not admissible")]
    Inadmissible,
    #[error("weight matrix has shape {rows}x{cols}, expected k x (k+2)")]
    WrongShape { rows: usize, cols: usize },
    #[error("invalid isotropy data: {0}")]
    InvalidIsotropy(String),
    #[error("isotropy data is not in strictly convex position (no ASD Einstein metric)")]
    NotAsdEinstein,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("non-spin with b2 = 0 would be the Wu manifold, which has torsion H2")]
    TorsionExcluded,
    #[error("Futaki invariant does not vanish: only a Kähler-Ricci soliton exists")]
    NotEinstein,
    #[error("marked fan Δ*({k},{p}) fails validation: {reason}")]
    FamilyInvalid { k: i64, p: i64, reason: String },
    #[error("invalid join: {0}")]
    InvalidJoin(String),
    #[error("point lies outside the open polytope")]
    OutsideInterior,
    #[error("Newton iteration did not converge after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
}

impl Error {
    /// Numeric failures (as opposed to violated mathematical preconditions).
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NoConvergence { .. })
    }
}
