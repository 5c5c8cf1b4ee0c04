use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a partial order needs at least one element")]
    EmptyOrder,
    #[error("index {index} out of range for {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cannot compare element {0} with itself")]
    SelfComparison(usize),
    #[error("recording {lo} < {hi} contradicts the known relation {hi} < {lo}")]
    Contradiction { lo: usize, hi: usize },
    #[error("the partial order is not total")]
    NotTotal,
    #[error("the partial order is already total, no pair left to compare")]
    AlreadyTotal,
    #[error("elements {0} and {1} hold equal values")]
    DuplicateValues(usize, usize),
    #[error("input list is empty")]
    EmptyInput,
    #[error("input has {n} elements, the limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("more than {0} linear extensions")]
    ExtensionBudget(usize),
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("need at least two elements, got {0}")]
    TooShort(usize),
    #[error("invalid sorter spec: {0}")]
    InvalidSpec(String),
    #[error("sorter finished with an unsorted result")]
    Unsorted,
}
