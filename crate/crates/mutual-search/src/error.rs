use thiserror::Error;

/// Errors reported by protocol constructors, cost evaluators and oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("need at least {min} sites, got n={n}")]
    TooFewSites { n: usize, min: usize },

    #[error("site {site} out of range for n={n}")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("sites must be distinct (got {a} and {b})")]
    SitesNotDistinct { a: usize, b: usize },

    #[error("({from},{to}) is not an edge of this tournament")]
    UnknownEdge { from: usize, to: usize },

    #[error("edge ({from},{to}) is already retired")]
    AlreadyRetired { from: usize, to: usize },

    #[error("algorithm is saturated; extension would raise its cost")]
    Saturated,

    #[error("no feasible group split exists for n={n}")]
    InfeasibleSplit { n: usize },

    #[error("{op}: size {value} exceeds the guard of {limit}{hint}")]
    GuardExceeded {
        op: &'static str,
        limit: u64,
        value: u64,
        hint: &'static str,
    },

    #[error("invalid structure: {0}")]
    InvalidStructure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
