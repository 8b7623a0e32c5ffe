use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(&'static str),
    #[error("partition of {partition} does not match permutation size {size}")]
    PartitionSize { partition: usize, size: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(&'static str),
    #[error("empty sample")]
    EmptySample,
    #[error("duplicate coordinate in point sample; resample the offending point")]
    DuplicateCoordinate,
    #[error("NaN in sample")]
    NotANumber,
    #[error("unsupported statistic for {0}")]
    Unsupported(&'static str),
    #[error("degenerate variance (std_dev must be > 0)")]
    DegenerateVariance,
    #[error("truncation window needs A_n up to n = {needed}, only {available} values supplied")]
    WindowExceedsRange { needed: usize, available: usize },
    #[error("ratio condition A_n (1 + c/n^delta) >= A_(n+1) fails at n = {0}")]
    RatioConditionViolated(usize),
    #[error("cannot compare two analytic laws without an evaluation grid")]
    NeedsGrid,
}
