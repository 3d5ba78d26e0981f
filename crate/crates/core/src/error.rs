use thiserror::Error;

/// Errors raised while building or analysing left regular bands.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LrbError {
    #[error("multiplication table is not square or has out-of-range entries: {0}")]
    MalformedTable(String),
    #[error("element {identity} is not a two-sided identity (fails at {witness})")]
    BadIdentity { identity: usize, witness: usize },
    #[error("not associative: ({x}{y}){z} != {x}({y}{z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("not idempotent: element {x} squared is not {x}")]
    NotIdempotent { x: usize },
    #[error("not left regular: {x}{y}{x} != {x}{y}")]
    NotLeftRegular { x: usize, y: usize },
    #[error("lattice elements {x} and {y} are not comparable as required")]
    NotComparable { x: usize, y: usize },
    #[error("lattice elements {x} < {y} required")]
    NotStrictlyComparable { x: usize, y: usize },
    #[error("the monoid is trivial")]
    TrivialMonoid,
    #[error("{what} has {size} elements, cap is {cap}")]
    TooLarge {
        what: String,
        size: usize,
        cap: usize,
    },
    #[error("alphabet of {letters} letters gives more than {cap} elements")]
    AlphabetTooLarge { letters: usize, cap: usize },
    #[error("{hyperplanes} hyperplanes exceed the enumeration cap of {cap}")]
    TooManyHyperplanes { hyperplanes: usize, cap: usize },
    #[error("complex has {vertices} vertices, cap is {cap}")]
    TooManyVertices { vertices: usize, cap: usize },
    #[error("more than {cap} maximal cliques")]
    TooManyCliques { cap: usize },
    #[error("sign vectors are not closed under composition: {left} * {right}")]
    NotClosed { left: String, right: String },
    #[error("sign vector list lacks the all-zero vector")]
    MissingIdentity,
    #[error("generators do not generate the lattice under meet")]
    NotGenerating,
    #[error("quiver has a directed cycle")]
    NotAcyclic,
    #[error("vertex order violates arrow {arrow}")]
    BadOrder { arrow: String },
    #[error("monoid is not right hereditary: element {element} has {covers} upper covers")]
    NotRightHereditary { element: usize, covers: usize },
    #[error("monoid is not geometric: {b} and {c} above {a} do not commute")]
    NotGeometric { a: usize, b: usize, c: usize },
    #[error("elements {witness:?} have a common lower bound but no meet")]
    MeetHypothesisFails { witness: Vec<usize> },
    #[error("idempotent verification failed: {0}")]
    VerificationFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl LrbError {
    /// Stable machine-readable tag for the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            LrbError::MalformedTable(_) => "MalformedTable",
            LrbError::BadIdentity { .. } => "BadIdentity",
            LrbError::NotAssociative { .. } => "NotAssociative",
            LrbError::NotIdempotent { .. } => "NotIdempotent",
            LrbError::NotLeftRegular { .. } => "NotLeftRegular",
            LrbError::NotComparable { .. } => "NotComparable",
            LrbError::NotStrictlyComparable { .. } => "NotStrictlyComparable",
            LrbError::TrivialMonoid => "TrivialMonoid",
            LrbError::TooLarge { .. } => "TooLarge",
            LrbError::AlphabetTooLarge { .. } => "AlphabetTooLarge",
            LrbError::TooManyHyperplanes { .. } => "TooManyHyperplanes",
            LrbError::TooManyVertices { .. } => "TooManyVertices",
            LrbError::TooManyCliques { .. } => "TooManyCliques",
            LrbError::NotClosed { .. } => "NotClosed",
            LrbError::MissingIdentity => "MissingIdentity",
            LrbError::NotGenerating => "NotGenerating",
            LrbError::NotAcyclic => "NotAcyclic",
            LrbError::BadOrder { .. } => "BadOrder",
            LrbError::NotRightHereditary { .. } => "NotRightHereditary",
            LrbError::NotGeometric { .. } => "NotGeometric",
            LrbError::MeetHypothesisFails { .. } => "MeetHypothesisFails",
            LrbError::VerificationFailed(_) => "VerificationFailed",
            LrbError::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True for errors caused by a size cap or budget rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            LrbError::TooLarge { .. }
                | LrbError::AlphabetTooLarge { .. }
                | LrbError::TooManyHyperplanes { .. }
                | LrbError::TooManyVertices { .. }
                | LrbError::TooManyCliques { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, LrbError>;
