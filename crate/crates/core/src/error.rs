use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("composition parts must be positive, got {0:?}")]
    NonPositivePart(Vec<usize>),

    #[error("element {element} is outside [{bound}] for degree {degree}")]
    InvalidSubset {
        degree: usize,
        element: usize,
        bound: usize,
    },

    #[error("degree {degree} exceeds the configured maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("operation requires the {expected} basis, element is in the {found} basis")]
    BasisMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("permutations share the letter {0}")]
    NotDisjoint(u32),

    #[error("permutation repeats the letter {0}")]
    RepeatedLetter(u32),

    #[error("relation {relation} joins {from} and {to}, which are not {statistic}-equivalent")]
    RelationUnsound {
        relation: String,
        statistic: String,
        from: String,
        to: String,
    },

    #[error("statistic {0} is not supported by this operation")]
    UnsupportedStatistic(String),

    #[error("({subset}, {k}) is not a member of the index set {region} at degree {degree}")]
    NotInRegion {
        region: String,
        subset: String,
        k: usize,
        degree: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown check {0}")]
    UnknownCheck(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
