use thiserror::Error;

use crate::analysis::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("point {point} lies in {count} blocks, expected {expected}")]
    NotRegular {
        point: usize,
        count: usize,
        expected: usize,
    },

    #[error("points {pair:?} lie together in {count} blocks, expected {expected}")]
    NotPairBalanced {
        pair: (usize, usize),
        count: usize,
        expected: usize,
    },

    #[error("base block {base:?} is not a difference set modulo {modulus}")]
    NotADifferenceSet { modulus: usize, base: Vec<usize> },

    #[error("no catalog design with (v, b, r, k, lambda) = {0:?}")]
    NotInCatalog((usize, usize, usize, usize, usize)),

    #[error("unknown catalog identifier {0:?}")]
    UnknownCatalogId(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(usize),

    #[error("no irreducible polynomial is tabulated for GF({0})")]
    UnsupportedFieldOrder(usize),

    #[error("row {row} repeats a symbol")]
    RepeatedSymbolInRow { row: usize },

    #[error("columns {columns:?}: ordered pair {pair:?} occurs {count} times, expected {expected}")]
    PairCountMismatch {
        columns: (usize, usize),
        pair: (usize, usize),
        count: usize,
        expected: usize,
    },

    #[error("design violates {} SBBD condition(s); first: {}", .0.len(), .0[0])]
    ViolatedConditions(Vec<Violation>),

    #[error("information matrix is not double completely symmetric")]
    MissingDcs,

    #[error("every eigenvalue of the information matrix is zero")]
    DegenerateDesign,

    #[error("basic contrasts are not estimable (alpha = {alpha})")]
    ContrastsNotEstimable { alpha: i64 },

    #[error("block {block} does not span: {detail}")]
    SpanningViolation { block: usize, detail: String },
}
