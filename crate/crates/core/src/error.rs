use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("generator `{name}` has degree {degree}, but degrees must be at least 1")]
    InvalidDegree { name: String, degree: i64 },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("operands belong to different algebras")]
    MismatchedAlgebra,

    #[error("element is not homogeneous")]
    Inhomogeneous,

    #[error("degree mismatch for `{context}`: expected {expected}, found {found}")]
    DegreeMismatch { context: String, expected: i64, found: i64 },

    #[error("no image assigned to `{0}`")]
    MissingImage(String),

    #[error("monomial `{0}` does not factor over the base")]
    NotFactorable(String),

    #[error("d∘d is nonzero on generator `{0}`")]
    NotSquareZero(String),

    #[error("differential ideal is not closed: d({0}) leaves the ideal")]
    NotClosed(String),

    #[error("conflicting data for shared generator `{0}`")]
    ConflictingGenerator(String),

    #[error("`{map}` is not a chain map on generator `{generator}`")]
    NotChainMap { map: String, generator: String },

    #[error("`{map}` is not a section on generator `{generator}`")]
    NotSection { map: String, generator: String },

    #[error("model is not pure: generator `{0}` violates the purity condition")]
    NotPure(String),

    #[error("model is not {k}-connected: generator `{generator}` has degree {degree}")]
    NotConnected { k: i64, generator: String, degree: i64 },

    #[error("no solution in degree {degree}: {reason}")]
    NoSolution { degree: i64, reason: String },

    #[error("differential of `{0}` depends cyclically on itself, so the model is not a Sullivan algebra")]
    NotSullivan(String),

    #[error("series for d({0}) did not terminate")]
    SeriesDiverged(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("the Hom differential of `{map}` is nonzero on `{monomial}`")]
    NotHomCocycle { map: String, monomial: String },

    #[error("element is not a cocycle")]
    NotCocycle,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
