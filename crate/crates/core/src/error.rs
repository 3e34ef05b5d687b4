use alloc::string::String;
use alloc::vec::Vec;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus {0} is not supported")]
    UnsupportedModulus(u32),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("division by zero")]
    ZeroDivision,

    #[error("residue {residue} is not coprime to {modulus}")]
    NonCoprime { residue: i64, modulus: u32 },

    #[error("interval refinement reached the precision cap without deciding the sign")]
    PrecisionExhausted,

    #[error("element is not fixed by complex conjugation")]
    NotRealElement,

    #[error("element is not a unit")]
    NotUnit,

    #[error("element does not lie in the subfield of modulus {0}")]
    NotInSubfield(u32),

    #[error("monodromy datum needs at least 3 branch points, got {0}")]
    TooFewBranchPoints(usize),

    #[error("inertia entry {index} is divisible by the degree")]
    ZeroInertia { index: usize },

    #[error("inertia sum {sum} is not divisible by {modulus}")]
    UnbalancedInertia { sum: i64, modulus: u32 },

    #[error("cover is disconnected: gcd of inertia and degree is {gcd}")]
    DisconnectedCover { gcd: u32 },

    #[error("no admissible degeneration of compact type")]
    NonCompactType,

    #[error("component {triple:?} has complex multiplication by a non-maximal order (divisors {divisors:?})")]
    NonMaximalOrder { triple: Vec<u32>, divisors: Vec<u32> },

    #[error("signature value {value} at residue {residue} is not in {{0, 1}}")]
    SignatureNotBinary { residue: u32, value: u32 },

    #[error("invalid CM-type: {0}")]
    InvalidCmType(String),

    #[error("sign pattern is not reachable by units (cokernel dimension {cokernel_dim})")]
    Unsatisfiable { cokernel_dim: usize },

    #[error("equivalence cannot be decided without units of independent signs")]
    Indeterminate,

    #[error("form is not integral at entry ({row}, {col})")]
    NonIntegralForm { row: usize, col: usize },

    #[error("block structure mismatch: {0}")]
    BlockMismatch(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("internal check failed: {0}")]
    Assertion(String),
}

pub type Result<T> = core::result::Result<T, Error>;
