use thiserror::Error;

/// Every domain rejection the library can produce.
///
/// The variant name doubles as the machine-readable error kind emitted by
/// the CLI and the C ABI (see [`Error::kind`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // algebra
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires characteristic zero, field has characteristic {0}")]
    PositiveCharacteristic(u64),
    #[error("series has the wrong constant term for {0}")]
    WrongConstantTerm(&'static str),
    #[error("exact division failed: {0}")]
    InexactDivision(String),
    #[error("cannot parse {what}: {detail}")]
    Parse { what: String, detail: String },

    // trees
    #[error("node {node} has two children with weight {weight}")]
    DuplicateChildWeight { node: u64, weight: String },
    #[error("tree has {0} root candidates, expected exactly one")]
    MultipleRoots(usize),
    #[error("parent links contain a cycle through node {0}")]
    Cycle(u64),
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("transition g_{i}{j} extends across the origin")]
    SeparatednessViolation { i: usize, j: usize },

    // surfaces
    #[error("Q(0,y) is identically zero")]
    ZeroFiberPolynomial,
    #[error("Q(0,y) does not split into linear factors over the field")]
    NotSplit,
    #[error("Q(0,y) has the multiple root {y0}")]
    MultipleRoot { y0: String },
    #[error("invalid standard form: {0}")]
    InvalidStandardForm(String),
    #[error("tree is not a rake")]
    NotARake,
    #[error("leaves sit at different levels {0:?}")]
    LeavesAtMixedLevels(Vec<usize>),
    #[error("two chains share the level-1 weight {0}")]
    ConstantTermCollision(String),
    #[error("P_{level} has a root at zero")]
    RootAtZero { level: usize },
    #[error("P_{level} is not monic")]
    NonMonic { level: usize },
    #[error("P_{level} has a multiple root")]
    CombMultipleRoot { level: usize },
    #[error("P_{level} does not split over the field")]
    CombNotSplit { level: usize },
    #[error("P_{level} is constant (no leaves at level {})", level + 1)]
    EmptyCombLevel { level: usize },
    #[error("comb is not normalized: {0}")]
    CombNotNormalized(String),
    #[error("equation {equation} has nonzero residual {residual}")]
    IdentityFailure { equation: usize, residual: String },

    // autos
    #[error("datum gives different c(x) for charts {i} and {j}")]
    DatumInconsistent { i: usize, j: usize },
    #[error("malformed datum: {0}")]
    MalformedDatum(String),
    #[error("valid datum violates the structure lemma: {0}")]
    LemmaViolation(String),
    #[error("expected exact division by x^{h}: {context}")]
    DivisibilityFailure { h: u32, context: String },
    #[error("series order {order} is below h = {h}")]
    PrecisionTooLow { order: usize, h: u32 },
    #[error("h = {0} is too small for this criterion (need h >= 2)")]
    HTooSmall(u32),
    #[error("singular locus is not finite over this field")]
    InfiniteSingularLocus,
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::PositiveCharacteristic(_) => "PositiveCharacteristic",
            Error::WrongConstantTerm(_) => "WrongConstantTerm",
            Error::InexactDivision(_) => "InexactDivision",
            Error::Parse { .. } => "Parse",
            Error::DuplicateChildWeight { .. } => "DuplicateChildWeight",
            Error::MultipleRoots(_) => "MultipleRoots",
            Error::Cycle(_) => "Cycle",
            Error::MalformedTree(_) => "MalformedTree",
            Error::SeparatednessViolation { .. } => "SeparatednessViolation",
            Error::ZeroFiberPolynomial => "ZeroFiberPolynomial",
            Error::NotSplit => "NotSplit",
            Error::MultipleRoot { .. } => "MultipleRoot",
            Error::InvalidStandardForm(_) => "InvalidStandardForm",
            Error::NotARake => "NotARake",
            Error::LeavesAtMixedLevels(_) => "LeavesAtMixedLevels",
            Error::ConstantTermCollision(_) => "ConstantTermCollision",
            Error::RootAtZero { .. } => "RootAtZero",
            Error::NonMonic { .. } => "NonMonic",
            Error::CombMultipleRoot { .. } => "MultipleRoot",
            Error::CombNotSplit { .. } => "NotSplit",
            Error::EmptyCombLevel { .. } => "EmptyCombLevel",
            Error::CombNotNormalized(_) => "CombNotNormalized",
            Error::IdentityFailure { .. } => "IdentityFailure",
            Error::DatumInconsistent { .. } => "DatumInconsistent",
            Error::MalformedDatum(_) => "MalformedDatum",
            Error::LemmaViolation(_) => "LemmaViolation",
            Error::DivisibilityFailure { .. } => "DivisibilityFailure",
            Error::PrecisionTooLow { .. } => "PrecisionTooLow",
            Error::HTooSmall(_) => "HTooSmall",
            Error::InfiniteSingularLocus => "InfiniteSingularLocus",
        }
    }

    pub(crate) fn parse(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Parse {
            what: what.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
