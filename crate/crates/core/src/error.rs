use thiserror::Error;

use crate::group::Subgroup;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group must have at least one cyclic factor")]
    EmptyGroup,
    #[error("cyclic factor {index} has order {order}, expected at least 2")]
    FactorTooSmall { index: usize, order: usize },
    #[error("group order overflows usize")]
    GroupTooLarge,
    #[error("element {coords:?} does not belong to group {orders:?}")]
    ElementMismatch {
        coords: Vec<usize>,
        orders: Vec<usize>,
    },
    #[error("groups {left:?} and {right:?} differ")]
    SpecMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("group of order {order} exceeds the exhaustive limit {limit}")]
    GuardExceeded { order: usize, limit: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("multiset has empty support")]
    EmptySupport,
    #[error("state norm {norm} deviates from 1")]
    NotNormalized { norm: f64 },
    #[error("state has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("post-oracle state is not parallel to the input (residual {residual:e})")]
    NotEigenvector { residual: f64 },
    #[error("registers are entangled; cannot discard the second register (residual {residual:e})")]
    Entangled { residual: f64 },
    #[error("codomain of order {codomain} cannot label {cosets} cosets injectively")]
    CodomainTooSmall { cosets: usize, codomain: usize },
    #[error("oracle table is not a valid hidden subgroup instance: {0}")]
    InvalidHspInstance(String),
    #[error("round budget of {rounds} exhausted before the stopping rule fired")]
    BudgetExhausted {
        rounds: usize,
        partial: Box<Subgroup>,
    },
    #[error("subgroup order {sub} does not divide {order}")]
    NotDivisor { sub: usize, order: usize },
    #[error("oracle table is not an FBI function")]
    NotFbi,
    #[error("marker candidates exhausted before termination (|<C>| = {span}, |B| = {balancing}, |H| = {codomain})")]
    CandidatesExhausted {
        span: usize,
        balancing: usize,
        codomain: usize,
    },
    #[error("marker ledger has not terminated")]
    NotTerminated,
    #[error("invalid candidate order: {0}")]
    InvalidCandidateOrder(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("malformed oracle table: {0}")]
    MalformedTable(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
