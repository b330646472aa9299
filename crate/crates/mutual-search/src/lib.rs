//! Mutual search: agents placed on distinct sites locate one another by
//! asking "anybody at site i?", and the cost of a protocol is the worst
//! number of queries until first contact.
//!
//! A synchronous two-agent protocol is an ordered tournament: one
//! directed edge per site pair saying who queries whom, plus a total
//! temporal order saying when. This crate provides:
//!
//! - the data model and cost semantics ([`tournament`], [`ordered`]),
//! - backward-in-time refinement with the optimal greedy scheduler
//!   ([`refine`]),
//! - all the named constructions, from the simple round-robin families
//!   to the two-group smooth-retiring protocol and its asynchronous and
//!   randomized variants ([`generators`]),
//! - the asynchronous and randomized cost models ([`asynchronous`],
//!   [`randomized`]),
//! - closed-form lower/upper bounds with exact integer ceiling checks
//!   ([`bounds`]),
//! - exhaustive small-instance oracles certifying optimality
//!   ([`oracle`]),
//! - the multi-agent RingSegments protocol ([`multiagent`]).

pub mod asynchronous;
pub mod bounds;
pub mod error;
pub mod generators;
pub mod multiagent;
pub mod oracle;
pub mod ordered;
pub mod randomized;
pub mod refine;
pub mod tournament;

pub use asynchronous::RowOrderedAlgorithm;
pub use error::{Error, Result};
pub use generators::{RowLayout, SrParams};
pub use ordered::{OrderedAlgorithm, Transcript};
pub use refine::{greedy_refine, greedy_refine_with, PartialAlgorithm, TieBreak};
pub use tournament::{Edge, Tournament};
