use thiserror::Error;

use crate::bundles::Space;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight {coords:?} is not dominant for {group}")]
    NotDominant { group: String, coords: Vec<i64> },
    #[error("weight has {got} coordinates, expected {expected}")]
    WrongRank { expected: usize, got: usize },
    #[error("levi weight {coords:?} is not dominant on {space}")]
    NotLeviDominant { space: Space, coords: Vec<i64> },
    #[error("objects live on different spaces ({0} and {1})")]
    SpaceMismatch(Space, Space),
    #[error("{0} is a total space; use total_space_cohomology")]
    TotalSpace(Space),
    #[error("{0} is not a total space")]
    NotTotalSpace(Space),
    #[error("unsupported plethysm: {0}")]
    UnsupportedPlethysm(String),
    #[error("exterior power of a rank {0} class that is not a line bundle")]
    UnsupportedWedge(u64),
    #[error("zero slope family with a regular weight")]
    ZeroSlope,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown atom `{atom}` on {space}")]
    UnknownAtom { atom: String, space: Space },
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error("index {index} out of range for a collection of length {len}")]
    BadIndex { index: usize, len: usize },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("label {0} is outside the supported window")]
    OutsideWindow(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
