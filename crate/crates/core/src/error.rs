use thiserror::Error;

/// Errors shared across the exact-arithmetic kernel and the modules built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZeroPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at evaluation point")]
    Pole,

    #[error("divergent at q=1")]
    DivergentAtOne,

    /// Exact evaluation of an element with a nonzero log-part is only defined
    /// at q = 1, where the L factor takes its limit value 1.
    #[error("transcendental value: exact evaluation requires q = 1")]
    TranscendentalEval,

    /// Product of two L-extension elements that both carry a log-part; the
    /// rank-2 module has no such product.
    #[error("product of two log-part-bearing elements is not defined")]
    LogPartProduct,

    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },

    #[error("invalid evaluation point: {0}")]
    InvalidEvalPoint(String),

    #[error("substitution would need fractional powers in the current base (base {base}, requested denominator {requested})")]
    FractionalPower { base: u32, requested: u32 },

    #[error("distribution requires odd d")]
    EvenDistributionIndex,

    #[error("character modulus must be odd, got {0}")]
    EvenModulus(u64),

    #[error("no character with index {index} modulo {modulus}")]
    NoSuchCharacter { modulus: u64, index: u64 },

    #[error("p-adic log requires a 1-unit argument")]
    PadicLogDomain,

    #[error("p-adic operands use different primes: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    #[error("p-adic precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("series undefined at x=0")]
    SeriesUndefinedAtZero,

    #[error("tolerance unreachable within term budget (partial value {re}+{im}i)")]
    ToleranceUnreachable { re: f64, im: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
