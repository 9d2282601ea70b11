use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{d} exceeds the supported bound 2^40")]
    FieldTooLarge { p: u64, d: usize },
    #[error("element {0} does not belong to the field")]
    NotInField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("coefficient {coeff} is not an element of F_{q}")]
    CoefficientOutOfField { coeff: String, q: u64 },
    #[error("modulus must be a power of x, got {0}")]
    ModulusNotPowerOfX(String),
    #[error("Kummer degree {n} does not divide q - 1 = {}", q - 1)]
    DegreeNotDividing { n: u64, q: u64 },
    #[error("h is a {n_prime}-th power, so T^n - h is reducible")]
    ProperPower { n_prime: u64 },
    #[error("h is a {n_prime}-th power over the algebraic closure; the curve has a larger constant field")]
    ConstantFieldExtension { n_prime: u64 },
    #[error("curve is not of the form y^(q-1) = lambda (v^q - v)^n: {0}")]
    NotCanonical(String),
    #[error("ramification pattern incompatible with the characterization: {0}")]
    Incompatible(String),
    #[error("automorphism set is not closed under composition")]
    GroupNotClosed,
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("budget exceeded: {what} ({size} > {limit})")]
    Budget { what: &'static str, size: u128, limit: u128 },
}

impl Error {
    /// Budget errors map to a distinct CLI exit status.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
