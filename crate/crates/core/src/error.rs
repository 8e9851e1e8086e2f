use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("object `{0}` has no identity morphism")]
    MissingIdentity(String),
    #[error("composite {g} o {f} is not in the table")]
    MissingComposite { g: String, f: String },
    #[error("ill-typed composite {g} o {f}: {reason}")]
    IllTypedComposite {
        g: String,
        f: String,
        reason: String,
    },
    #[error("composition is not associative at ({h}, {g}, {f})")]
    NonAssociative { h: String, g: String, f: String },
    #[error("functor violation: {0}")]
    NotFunctorial(String),
    #[error("simplicial identity {identity} fails at level {level} on `{simplex}`")]
    SimplicialIdentityViolation {
        identity: String,
        level: usize,
        simplex: String,
    },
    #[error("malformed simplicial table: {0}")]
    MalformedTable(String),
    #[error("truncation caps differ: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error("requested degree {requested} needs cap > {requested}, have cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("map does not commute with {0}")]
    NotSimplicial(String),
    #[error("transformation is not natural at `{0}`")]
    NotNatural(String),
    #[error("enriched category axiom fails: {0}")]
    EnrichmentViolation(String),
    #[error("bimodule axiom fails: {0}")]
    BimoduleAxiomViolation(String),
    #[error("witness invalid: {0}")]
    WitnessInvalid(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("construction too large: {0}")]
    TooLarge(String),
    #[error("dangling reference to {kind} `{id}`")]
    DanglingReference { kind: String, id: String },
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("document error: {0}")]
    Document(String),
}
