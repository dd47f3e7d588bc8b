use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{n} is too large")]
    FieldTooLarge { p: u32, n: u32 },
    #[error("no built-in modulus for p={p} n={n}; supply one")]
    NoDefaultModulus { p: u32, n: u32 },
    #[error("modulus must have {expected} coefficients, got {found}")]
    ModulusLength { expected: usize, found: usize },
    #[error("modulus is not monic")]
    ModulusNotMonic,
    #[error("modulus coefficient {0} is not reduced mod p")]
    ModulusCoefficient(u32),
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("element code {code} is outside the field of order {q}")]
    CodeOutOfRange { code: u64, q: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    DivisionByZero,
    #[error("homogeneous coordinates are all zero")]
    ZeroTriple,
    #[error("homogeneous coordinates are not normalized")]
    NotNormalized,
    #[error("the two lines coincide")]
    EqualLines,
    #[error("the two points coincide")]
    EqualPoints,
    #[error("curve parameters must be pairwise distinct")]
    RepeatedParameters,
    #[error("construction needs characteristic {expected}, field has {found}")]
    WrongCharacteristic { expected: &'static str, found: u32 },
    #[error("construction needs q >= 4")]
    FieldTooSmall,
    #[error("the field has no primitive cube root of unity")]
    NoCubeRootOfUnity,
    #[error("duplicate line for labels {0} and {1}")]
    DuplicateLine(i64, i64),
    #[error("duplicate label {0}")]
    DuplicateLabel(i64),
    #[error("an arrangement needs at least {0} lines")]
    TooFewLines(usize),
    #[error("the cubic form is zero")]
    ZeroForm,
    #[error("label {0} is not in the ground set")]
    UnknownLabel(i64),
    #[error("triple {0:?} is malformed: {1}")]
    BadTriple([i64; 3], &'static str),
    #[error("ground set needs at least 3 labels, has {0}")]
    GroundTooSmall(usize),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
