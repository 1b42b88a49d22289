use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is not irreducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("residue field extension is not separable")]
    InseparableResidue,
    #[error("size limit exceeded: {0}")]
    Limit(String),
    #[error("valuation of zero undefined")]
    ZeroValuation,
    #[error("place is not a monic irreducible polynomial of degree <= {max_degree}")]
    InvalidPlace { max_degree: usize },
    #[error("divisors live on different ring models: {left} vs {right}")]
    MixedModels { left: String, right: String },
    #[error("divisor has support outside the local place of {model}")]
    ForeignSupport { model: String },
    #[error("cannot factor over {0}; use a local model or a finite coefficient field")]
    Unsupported(String),
    #[error("level mismatch: map at e = {map}, element at e = {element}")]
    LevelMismatch { map: u32, element: u32 },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("Δ undefined for the zero map")]
    ZeroMap,
    #[error("twisting by zero is not allowed")]
    ZeroTwist,
    #[error("ramification index {n} is divisible by p = {p}; the extension is not tame")]
    NotTame { n: u32, p: u32 },
    #[error("{n} does not divide {p}^{e} - 1; the smallest valid level is e = {minimal}")]
    LevelNotDivisible { n: u32, p: u32, e: u32, minimal: u32 },
    #[error("element {0} is not a unit of the local ring")]
    NotUnit(String),
    #[error("element {0} does not lie in the ring")]
    NotIntegral(String),
    #[error("parse error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("basis tag {0} is out of range")]
    BadTag(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
