use thiserror::Error;

use crate::arrangement::Hyperplane;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid arrangement: n = {n}, r = {r} (both must be at least 1)")]
    InvalidSpec { n: usize, r: u32 },

    #[error("invalid window for x{}-x{}: ({}, {})", .i + 1, .j + 1, fmt_bound(*.lo, "-inf"), fmt_bound(*.hi, "+inf"))]
    InvalidWindow {
        i: usize,
        j: usize,
        lo: Option<i64>,
        hi: Option<i64>,
    },

    #[error("window assignment is not feasible")]
    InfeasibleRegion,

    #[error("point lies on hyperplane {0}")]
    OnHyperplane(Hyperplane),

    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("column {} has two equal minimal positive entries", .column + 1)]
    TieOnMinimum { column: usize },

    #[error("operation requires a {expected} region")]
    WrongKind { expected: &'static str },

    #[error("v{} must have exactly {expected} distinct fathers in O and V", .vertex + 1)]
    WrongDegree { vertex: usize, expected: u32 },

    #[error("father relation has a cycle through {}", fmt_chain(.chain))]
    Cyclic { chain: Vec<usize> },

    #[error("father set of v{} has no vertex sharing r-1 fathers with it", .vertex + 1)]
    BadClique { vertex: usize },

    #[error("no region realises v{} with the required minimal positive entry", .vertex + 1)]
    EmptyFiber { vertex: usize },

    #[error("height sequence is not nondecreasing at position {}", .index + 1)]
    NotMonotone { index: usize },

    #[error("height h{} = {height} is outside [0, {bound}]", .index + 1)]
    HeightBound {
        index: usize,
        height: i64,
        bound: i64,
    },

    #[error("sequence is not an r-parking function")]
    NotParking,

    #[error("no embedded count for n = {n}, r = {r}")]
    NoTableEntry { n: usize, r: u32 },

    #[error("{0}")]
    Parse(String),
}

fn fmt_bound(b: Option<i64>, inf: &str) -> String {
    b.map_or_else(|| inf.to_string(), |v| v.to_string())
}

fn fmt_chain(chain: &[usize]) -> String {
    chain
        .iter()
        .map(|v| format!("v{}", v + 1))
        .collect::<Vec<_>>()
        .join(" -> ")
}
