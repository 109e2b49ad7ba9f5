//! Lazy evaluation of minimal-interval semantics.
//!
//! A query over a document denotes an antichain of intervals (its
//! *witnesses*). This crate provides pull-based operators over such
//! antichains that read as little input as possible per emitted interval:
//!
//! * [`ops::Or`] and [`ops::And`], driven by an [`queue::IndirectQueue`];
//! * the greedy [`ops::Block`], [`ops::OrderedAnd`], [`ops::LowPass`] and
//!   [`ops::Difference`].
//!
//! [`stream::profile`] measures how many elements each operator reads from
//! every input list before each output, and [`oracle`] holds brute-force
//! reference semantics together with the per-operator read bounds.

pub mod interval;
pub mod ops;
pub mod oracle;
pub mod queue;
pub mod stream;

pub use interval::{Interval, Position};
pub use ops::{OperatorKind, Options};
pub use stream::{BoxStream, IntervalStream, RhoProfile};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty interval [{left}..{right}]")]
    EmptyInterval { left: Position, right: Position },
    #[error("positions not strictly increasing at index {index}: {previous} then {current}")]
    UnsortedPositions { index: usize, previous: i64, current: i64 },
    #[error("antichain order violated at output {index}: {previous} then {current}")]
    OrderViolation {
        index: usize,
        previous: Interval,
        current: Interval,
    },
    #[error("queue is empty")]
    EmptyQueue,
    #[error("{target} is not produced by the operator on these inputs")]
    NotProducible { target: Interval },
}
