use std::fmt;

use serde::Serialize;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A single violated group axiom, with the offending elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum GroupAxiom {
    NotSquare { rows: usize, row: usize, len: usize },
    EntryOutOfRange { row: usize, col: usize, value: usize },
    NotLatinSquare { line: String, index: usize },
    NoIdentity,
    NotAssociative { a: usize, b: usize, c: usize },
}

impl fmt::Display for GroupAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupAxiom::NotSquare { rows, row, len } => {
                write!(f, "table has {rows} rows but row {row} has length {len}")
            }
            GroupAxiom::EntryOutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} is out of range")
            }
            GroupAxiom::NotLatinSquare { line, index } => {
                write!(f, "{line} {index} repeats an entry")
            }
            GroupAxiom::NoIdentity => write!(f, "no identity element"),
            GroupAxiom::NotAssociative { a, b, c } => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid group: {}", join(.0))]
    InvalidGroup(Vec<GroupAxiom>),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("subgroup {subgroup:?} is not normal")]
    NotNormal { subgroup: Vec<usize> },
    #[error("cocycle value f({a},{b}) is zero")]
    ZeroCocycleValue { a: usize, b: usize },
    #[error("cocycle identity fails on triples (a,b,c): {triples:?}")]
    CocycleViolation { triples: Vec<(usize, usize, usize)> },
    #[error("cocycle is not normalized at the identity: {hint}")]
    NotNormalized { hint: String },
    #[error("invalid component {component}: {reason}")]
    InvalidComponent { component: usize, reason: String },
    #[error("instance failed validation: {0}")]
    Validation(String),
    #[error("declared radical (dim {declared}) disagrees with trace-form radical (dim {oracle})")]
    MismatchWithDeclaredRadical { declared: usize, oracle: usize },
    #[error("cannot split component {component} into simple algebras: {reason}")]
    UnsupportedSplit { component: usize, reason: String },
    #[error("witness extraction failed: {0}")]
    WitnessExtractionFailed(String),
    #[error("e-stop at cut {position} for g = {g} is undetermined: {reason}")]
    PeirceUndetermined { g: usize, position: usize, reason: String },
    #[error("census violation: {0}")]
    CensusViolation(String),
    #[error("inequality violated: exp_conj = {lhs} > |G|^2 exp(A_e) = {rhs}")]
    InequalityViolated { lhs: usize, rhs: usize },
    #[error("codimension matrix for n = {n}, dim = {dim} has {rows} x {cols} entries, over budget {budget}")]
    BudgetExceeded {
        n: usize,
        dim: usize,
        rows: usize,
        cols: usize,
        budget: usize,
    },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    /// An error tied to a location in an instance file.
    #[error("at {path}: {source}")]
    AtPath {
        path: String,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn at(self, path: impl Into<String>) -> Error {
        Error::AtPath {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, past any path wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtPath { source, .. } => source.root(),
            e => e,
        }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
