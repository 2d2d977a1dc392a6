use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("kind mismatch: cannot combine {0} with {1}")]
    KindMismatch(&'static str, &'static str),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported exponent: {0}")]
    UnsupportedExponent(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("non-Reinhardt usage at line {line}, column {col}: z{index} used outside |.| or log|.|")]
    NonReinhardt { line: usize, col: usize, index: usize },
    #[error("unknown coordinate z{index} (domain has n = {n})")]
    UnknownCoordinate { index: usize, n: usize },
    #[error("mixed model: modulus and log-modulus atoms cannot be combined")]
    MixedModel,
    #[error("odd modulus power in modulus model (not smooth in |z|^2): {0}")]
    OddModulusPower(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty region")]
    EmptyRegion,
    #[error("{0} requires a modulus-model germ")]
    NeedsModulusModel(&'static str),
    #[error("the origin cannot be a boundary point of a smoothly bounded Reinhardt domain (p cannot be the origin)")]
    OriginPoint,
    #[error("point is not on the boundary: rho(p) = {0}")]
    NotOnBoundary(String),
    #[error("degenerate boundary: every candidate normal derivative vanishes at p")]
    DegenerateBoundary,
    #[error("log chart requires |p_j| = 1 for coordinate z{0}")]
    LogChartModulus(usize),
    #[error("chart error: log|z{0}| composed with a component vanishing at 0")]
    Chart(usize),
    #[error("germ is not based at 0: {0}")]
    NotBased(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("precondition violated: v(r o phi) = {composed}, v(phi) = {disc}")]
    Precondition { composed: String, disc: String },
    #[error("genericity failure: slice draws disagree ({0})")]
    Genericity(String),
    #[error("inconsistency: oracle lower bound {oracle} exceeds regular type {regular} (oracle witness {oracle_witness}, regular witness {regular_witness})")]
    Inconsistency {
        oracle: String,
        regular: String,
        oracle_witness: String,
        regular_witness: String,
    },
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("domain file error at line {line}: {msg}")]
    DomainFile { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
