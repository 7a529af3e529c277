use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::hypertoric::MonomialGen;
use crate::Int;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Enumeration stopped before completion.
///
/// Carries whatever was found so far; the result is known to be incomplete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub reason: String,
    pub partial: Vec<MonomialGen>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows have differing lengths")]
    RaggedRows,
    #[error("matrix is not injective: rank {rank} < {expected}")]
    NotInjective { rank: usize, expected: usize },
    #[error("cokernel has torsion: invariant factors {factors:?}")]
    TorsionCokernel { factors: Vec<Int> },
    #[error("row {0} is zero or not primitive")]
    NonPrimitiveRow(usize),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("hyperplane {0} duplicates an earlier one")]
    DuplicateHyperplane(usize),
    #[error("component {0} has zero multiplicity")]
    ZeroMultiplicity(usize),
    #[error("normals {0} and {1} are parallel")]
    ParallelWalls(usize, usize),
    #[error("budget exceeded: {}", .0.reason)]
    BudgetExceeded(Box<BudgetExceeded>),
    #[error("entry does not fit the enumeration word size")]
    EntryOverflow,
    #[error("shift constants {0} and {1} coincide")]
    DuplicateShift(usize, usize),
    #[error("expected {expected} entries, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("rows {0:?} do not form a Z-basis")]
    NotABasis(Vec<usize>),
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("multiplicity must be at least 1")]
    InvalidMultiplicity,
    #[error("case rejected: {0}")]
    CaseRejected(String),
}

impl Error {
    /// Stable machine-readable identifier, used in CLI reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::RaggedRows => "ragged_rows",
            Error::NotInjective { .. } => "not_injective",
            Error::TorsionCokernel { .. } => "torsion_cokernel",
            Error::NonPrimitiveRow(_) => "non_primitive_row",
            Error::NotUnimodular => "not_unimodular",
            Error::DuplicateHyperplane(_) => "duplicate_hyperplane",
            Error::ZeroMultiplicity(_) => "zero_multiplicity",
            Error::ParallelWalls(..) => "parallel_walls",
            Error::BudgetExceeded(_) => "budget_exceeded",
            Error::EntryOverflow => "entry_overflow",
            Error::DuplicateShift(..) => "duplicate_shift",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::NotABasis(_) => "not_a_basis",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::InvalidMultiplicity => "invalid_multiplicity",
            Error::CaseRejected(_) => "case_rejected",
        }
    }

    pub(crate) fn budget(reason: String, partial: Vec<MonomialGen>) -> Self {
        Error::BudgetExceeded(Box::new(BudgetExceeded { reason, partial }))
    }
}
