use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix has non-real entries")]
    NotReal,

    #[error("structure constants are not antisymmetric at (i={i}, j={j}, k={k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("d^2 != 0: d(d g{generator}) = {value}")]
    DSquaredNonzero { generator: usize, value: String },

    #[error("differential image of g{generator} is not of pure degree 2")]
    NotDegreeTwo { generator: usize },

    #[error("filtration stalls at step {step}: dimension {dim} of {total}")]
    FiltrationStalled { step: usize, dim: usize, total: usize },

    #[error("ordered 1-forms do not span the generator space (rank {rank} of {total})")]
    NonSpanningBasis { rank: usize, total: usize },

    #[error("basis is not minimal: d of element {index} leaves the subalgebra on earlier elements")]
    NonMinimalBasis { index: usize },

    #[error("undefined Massey product: {0}")]
    UndefinedMassey(String),

    #[error("twist H is not closed: dH = {0}")]
    TwistNotClosed(String),

    #[error("twist H must be a real 3-form")]
    TwistNotReal3Form,

    #[error("i-eigenspace has dimension {found}, expected {expected}")]
    EigenspaceDimension { found: usize, expected: usize },

    #[error("invalid generalized complex structure: {0}")]
    InvalidStructure(String),

    #[error("joint kernel of the Clifford action has dimension {0}, expected 1")]
    SpinorLineDimension(usize),

    #[error("form is not decomposable")]
    NotDecomposable,

    #[error("subspaces do not form a direct sum of the ambient space: {0}")]
    NotDirectSum(String),

    #[error("not integrable: {0}")]
    NotIntegrable(String),

    #[error("canonical line is not d_H-closed")]
    NotHolomorphicallyTrivial,

    #[error("identity failed: {0}")]
    IdentityFailed(String),

    #[error("invalid generalized Kähler pair: {0}")]
    InvalidPair(String),

    #[error("J2 restriction not integrable on L1: {0}")]
    StrayBidegree(String),

    #[error("unknown catalog entry `{name}`; available: {available}")]
    UnknownEntry { name: String, available: String },

    #[error("parse error: {0}")]
    Parse(String),
}
