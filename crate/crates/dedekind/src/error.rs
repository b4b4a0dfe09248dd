use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported range (p < 2^31)")]
    ModulusTooLarge(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial has zero discriminant (not squarefree)")]
    ZeroDiscriminant,
    #[error("no irreducibility certificate found for {0} (no prime p <= 200 with f irreducible mod p)")]
    NoIrreducibilityCertificate(String),
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("invalid quadratic radicand d = {0} (need squarefree, not 0 or 1)")]
    BadRadicand(i64),
    #[error("cyclotomic conductor must be >= 3, got {0}")]
    BadConductor(u64),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamentalDiscriminant(i64),
    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(u64, u64),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("splitting of {0} is indeterminate (divides the discriminant)")]
    IndeterminateSplitting(u64),
    #[error("ideal-count table is partial (unresolved bad primes)")]
    PartialTable,
    #[error("cannot parse polynomial {input:?}: {reason}")]
    PolyParse { input: String, reason: String },
    #[error("config error at line {line}: {reason}")]
    Config { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
