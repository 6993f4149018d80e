use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A coefficient matrix failed the skew-symmetry requirement.
    #[error("matrix is not skew-symmetric at entry ({0}, {1})")]
    NotSkew(usize, usize),

    /// Matrix dimensions do not line up for the requested operation.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A polynomial has an irreducible factor of degree three or more,
    /// outside the supported class (linear and quadratic primes only).
    #[error("irreducible factor of degree >= 3 is unsupported: {0}")]
    IrreducibleFactorTooLarge(String),

    /// Quadratic extension elements with different moduli were mixed.
    #[error("quadratic extension modulus mismatch")]
    ModulusMismatch,

    /// An elementary divisor of a skew pencil occurred with odd total
    /// multiplicity; divisors of skew pencils always pair up.
    #[error("elementary divisor {divisor} has odd multiplicity {multiplicity}")]
    PairingViolation {
        divisor: String,
        multiplicity: usize,
    },

    /// Divisor pairs and minimal indices do not account for the pencil size.
    #[error("size identity violated: n = {n} but blocks account for {accounted}")]
    SizeIdentityViolation { n: usize, accounted: usize },

    /// A canonical block specification with out-of-range parameters.
    #[error("invalid block specification: {0}")]
    InvalidSpec(String),

    /// An invariant specification that no rational canonical pencil realizes.
    #[error("unrealizable invariant specification: {0}")]
    UnrealizableSpec(String),

    /// The coefficient matrices span less than two dimensions, so the
    /// commutator ideal of the associated algebra is not 2-dimensional.
    #[error("commutator dimension below 2: {0}")]
    GenusTooLow(String),

    /// Malformed textual input (rationals, JSON payload contents).
    #[error("parse error: {0}")]
    Parse(String),
}
