use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("generator `{name}` has degree 0; degrees must be positive")]
    ZeroDegree { name: String },

    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),

    #[error("duplicate generator rank {0}")]
    DuplicateRank(i64),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("operands belong to different alphabets")]
    AlphabetMismatch,

    #[error("operands live over different fields (F_{0} vs F_{1})")]
    FieldMismatch(u32, u32),

    #[error("leading term of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("relation is a nonzero constant; the ideal is the whole algebra")]
    ConstantRelation,

    #[error("unorderable relation: right-hand word {word} is not below left-hand word {lhs}")]
    Unorderable { lhs: String, word: String },

    #[error("completion exceeded the cap of {cap} rules (reached {reached})")]
    CapExceeded { cap: usize, reached: usize },

    #[error("degree bound {bound} is below the largest left-hand degree {needed}")]
    BoundTooSmall { bound: u32, needed: u32 },

    #[error("restriction hypothesis violated: rule {rule} has a right-hand word outside the subalphabet")]
    HypothesisViolated { rule: String },

    #[error("alphabet too small: {lhs} -> {coeff}*{target} needs exponent {exponent} > bound {bound}; raise the bound or use p^l - 1")]
    AlphabetTooSmall {
        lhs: String,
        coeff: u32,
        target: String,
        exponent: u32,
        bound: u32,
    },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("rewriting system is not complete: {0}")]
    NotComplete(String),

    #[error("rewriting system is not reduced: {0}")]
    NotReduced(String),

    #[error("level {0} is outside the supported range")]
    BadLevel(i32),

    #[error("element is not a cycle: d_{level} leaves residue {residue}")]
    NotACycle { level: i32, residue: String },

    #[error("lift failed at level {level}: {reason}")]
    LiftFailed { level: i32, reason: String },

    #[error("complex check failed: {0}")]
    NotAComplex(String),

    #[error("degree {degree} exceeds the safe bound {bound}")]
    DegreeBeyondSafe { degree: u32, bound: u32 },

    #[error("parse error: {0}")]
    Parse(#[from] crate::parse::ParseError),

    #[error("presentation mismatch: {0}")]
    PresentationMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
