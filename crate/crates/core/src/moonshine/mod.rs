//! The numerical side of monstrous moonshine.
//!
//! The monster group is never constructed. It enters only through published
//! data: its order, its smallest irreducible dimensions and a few counts.

mod data;
mod knz;
mod mckay;

pub use data::{CoeffTable, IrrepDims, Provenance};
pub use knz::{knz_verify, knz_verify_table, knz_verify_with, required_index, ConstantTerm, KnzOutcome};
pub use mckay::{
    decompose_bounded, graded_dimension_check, label_exponent, mckay_identity_check, Decomposition,
    IdentityReport, IdentityStatus, DEFAULT_NODE_BUDGET, THOMPSON_IDENTITIES,
};

use num_bigint::BigUint;
use num_traits::{One, Pow};
use thiserror::Error;

use crate::modular::ModularError;
use crate::qseries::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoonshineError {
    #[error("dataset line {line}: {message}")]
    Dataset { line: usize, message: String },
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("need c(n) through n = {needed}, table stops at {available}")]
    InsufficientCoefficients { needed: i64, available: i64 },
    #[error("decomposition search exceeded {0} nodes")]
    SearchSpaceTooLarge(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Modular(#[from] ModularError),
}

/// Published constants about the monster.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonsterFacts;

impl MonsterFacts {
    /// Prime factorization of the order, `(prime, exponent)`.
    pub const ORDER_FACTORIZATION: [(u32, u32); 15] = [
        (2, 46),
        (3, 20),
        (5, 9),
        (7, 6),
        (11, 2),
        (13, 3),
        (17, 1),
        (19, 1),
        (23, 1),
        (29, 1),
        (31, 1),
        (41, 1),
        (47, 1),
        (59, 1),
        (71, 1),
    ];
    pub const CONJUGACY_CLASSES: u32 = 194;
    /// Distinct McKay–Thompson series (classes `g` and `g^-1` share one).
    pub const DISTINCT_MCKAY_THOMPSON_SERIES: u32 = 172;
    /// Dimension of the span of those series.
    pub const MCKAY_THOMPSON_SPAN_DIMENSION: u32 = 163;
}

/// The order of the monster, the product of its embedded factorization.
pub fn monster_order() -> BigUint {
    MonsterFacts::ORDER_FACTORIZATION
        .iter()
        .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
}
