use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chain size {0} is not supported (expected 1..={max})", max = crate::transform::MAX_CHAIN)]
    ChainSize(usize),
    #[error("point {point} lies outside the chain 1..={n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("domain point {0} is assigned twice")]
    DuplicatePoint(usize),
    #[error("chain sizes differ ({0} vs {1})")]
    ChainMismatch(usize, usize),
    #[error("cannot parse `{0}` as a partial transformation")]
    Parse(String),
    #[error("the empty map has no kernel decomposition")]
    EmptyMap,
    #[error("{0} is not a contraction")]
    NotContraction(String),
    #[error("{0} is not regular")]
    NotRegular(String),
    #[error("{element} is not a member of {family}")]
    NotMember { element: String, family: String },
    #[error("height {height} is outside the scope of this predicate (needs at least {min})")]
    HeightOutOfScope { height: usize, min: usize },
    #[error("point sets must be nonempty and disjoint")]
    BadPointSets,
    #[error("not a transversal: {0}")]
    NotTransversal(String),
    #[error("enumeration of n = {0} is outside the guard range 1..=8")]
    EnumerationGuard(usize),
    #[error("unknown {kind} `{value}`")]
    UnknownName { kind: &'static str, value: String },
}
