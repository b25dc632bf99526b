use alloc::string::String;

use crate::triple::Triple;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("triple index {index} out of range for n = {n}")]
    IndexOutOfRange { index: u64, n: u32 },
    #[error("duplicate face {0}")]
    DuplicateFace(Triple),
    #[error("edge {u}{v} is not in the complex")]
    UnknownEdge { u: u32, v: u32 },
    #[error("edge function has length {got}, complex has {expected} edges")]
    LengthMismatch { expected: usize, got: usize },
    /// The exhaustive search would exceed its configured budget. This is
    /// distinct from "searched everything and found nothing".
    #[error("search space of dimension {dimension} exceeds budget {budget}")]
    CapacityExceeded { dimension: usize, budget: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
