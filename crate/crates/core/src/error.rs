//! Error types shared across the crate.

use thiserror::Error;

/// An axiom of a complete residuated lattice that failed during validation.
///
/// Witnesses are reported by element name so they can be printed as-is.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("malformed lattice spec: {0}")]
    Malformed(String),

    #[error("not a lattice order: {reason} (witness {a}, {b})")]
    NotALatticeOrder { reason: String, a: String, b: String },

    #[error("tensor is not commutative: {a} * {b} != {b} * {a}")]
    NonCommutative { a: String, b: String },

    #[error("tensor is not associative: ({a} * {b}) * {c} != {a} * ({b} * {c})")]
    NonAssociative { a: String, b: String, c: String },

    #[error("top is not the unit of the tensor: {a} * 1 != {a}")]
    UnitNotTop { a: String },

    /// `joined` empty means the empty join: `a * 0 != 0`.
    #[error("tensor does not distribute over joins: {a} * join[{}] != join of the products", joined.join(", "))]
    JoinDistributivity { a: String, joined: Vec<String> },

    #[error("residuum violates the adjunction at ({a}, {b}, {c}): {a} * {b} <= {c} but not {a} <= {b} -> {c}, or conversely")]
    Adjunction { a: String, b: String, c: String },

    #[error("supplied residuum table disagrees with the derived one at {a} -> {b}")]
    ResiduumMismatch { a: String, b: String },
}

impl LatticeError {
    /// Stable short code, one per failure kind.
    pub fn code(&self) -> &'static str {
        match self {
            LatticeError::Malformed(_) => "malformed",
            LatticeError::NotALatticeOrder { .. } => "not-a-lattice-order",
            LatticeError::NonCommutative { .. } => "non-commutative",
            LatticeError::NonAssociative { .. } => "non-associative",
            LatticeError::UnitNotTop { .. } => "unit-not-top",
            LatticeError::JoinDistributivity { .. } => "join-distributivity",
            LatticeError::Adjunction { .. } => "adjunction",
            LatticeError::ResiduumMismatch { .. } => "residuum-mismatch",
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] LatticeError),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("element index {index} out of range for a lattice with {size} elements")]
    ElementOutOfRange { index: usize, size: usize },

    #[error("ragged matrix: row `{row}` has {found} entries, expected {expected}")]
    RaggedMatrix { row: String, expected: usize, found: usize },

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("carrier mismatch: expected an L-subset of length {expected}, found {found}")]
    CarrierMismatch { expected: usize, found: usize },

    #[error("selector index {index} out of range (carrier size {size})")]
    SelectorOutOfRange { index: usize, size: usize },

    #[error("budget exceeded: {bound} exceeds the budget of {budget}")]
    BudgetExceeded { bound: String, budget: u64 },

    #[error("not an infomorphism: phi({x}, g({b})) != psi(f({x}), {b})")]
    NotAnInfomorphism { x: String, b: String },

    #[error("map index {index} out of range (codomain size {size})")]
    MapOutOfRange { index: usize, size: usize },

    #[error("input is not a concept of the {0} lattice")]
    NotAConcept(&'static str),

    #[error("comparison map {tag} does not belong to {mode} mode")]
    TagModeMismatch { tag: String, mode: String },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
