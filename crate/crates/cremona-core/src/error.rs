//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Errors produced by the library.
///
/// Every error carries enough context to be reported verbatim; none of them
/// is recoverable short of changing the offending input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Text did not match the scalar grammar; carries the offending token.
    ScalarParse(String),
    /// Text did not match the polynomial grammar.
    PolyParse(String),
    /// A scalar denominator was zero.
    ZeroDenominator,
    /// Division of polynomials that is not exact.
    InexactDivision,
    /// gcd of two identically zero polynomials.
    GcdOfZeros,
    /// Rational function with identically zero denominator.
    ZeroDenominatorPoly,
    /// The family constraint `(gamma1, gamma2) != (0, 0)` was violated.
    GammaConstraint,
    /// An operation that needs a birational map was given a non-birational
    /// tuple; carries the violated clauses of the birationality lemma.
    NotBirational(alloc::vec::Vec<String>),
    /// All three components of a composition vanished identically.
    DegenerateComposition,
    /// A projective point was fed to a map whose components all vanish there.
    IndeterminatePoint(String),
    /// A Moebius map with zero determinant (or a constant `h`).
    DegenerateMoebius,
    /// `z^2 - gamma0*z - beta0` has a double root; the split-root data does
    /// not exist and the degenerate branch applies instead.
    DoubleRoot,
    /// Degree-sequence fit cannot stabilize on the sample provided.
    InconclusiveFit,
    /// The parameter tuple is non-degenerate; classification is out of scope.
    NonDegenerate,
    /// No normal form is stated for this case.
    UnsupportedCase(String),
    /// Mismatched variable spaces in an arithmetic operation.
    VariableMismatch,
    /// Component polynomials are not homogeneous of equal degree.
    NotHomogeneous,
    /// Invalid argument described by the message.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ScalarParse(tok) => write!(f, "malformed scalar near `{tok}`"),
            Error::PolyParse(tok) => write!(f, "malformed polynomial near `{tok}`"),
            Error::ZeroDenominator => write!(f, "zero denominator in scalar"),
            Error::InexactDivision => write!(f, "polynomial division is not exact"),
            Error::GcdOfZeros => write!(f, "gcd of two zero polynomials"),
            Error::ZeroDenominatorPoly => write!(f, "denominator polynomial is identically zero"),
            Error::GammaConstraint => {
                write!(f, "family constraint violated: (gamma1, gamma2) = (0, 0)")
            }
            Error::NotBirational(clauses) => {
                write!(f, "map is not birational; violated: {}", clauses.join("; "))
            }
            Error::DegenerateComposition => {
                write!(f, "composition degenerates: all components vanish")
            }
            Error::IndeterminatePoint(p) => {
                write!(f, "point {p} is an indeterminacy point of the map")
            }
            Error::DegenerateMoebius => write!(f, "degenerate Moebius map (zero determinant)"),
            Error::DoubleRoot => write!(f, "characteristic roots coincide (double root case)"),
            Error::InconclusiveFit => {
                write!(f, "sequence too short: fit order would exceed half the sample")
            }
            Error::NonDegenerate => {
                write!(f, "tuple is non-degenerate: both brackets (ac)12 and (bc)12 are nonzero")
            }
            Error::UnsupportedCase(c) => write!(f, "no normal form is stated for case {c}"),
            Error::VariableMismatch => write!(f, "operands live in different variable spaces"),
            Error::NotHomogeneous => {
                write!(f, "components are not homogeneous of equal degree")
            }
            Error::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
